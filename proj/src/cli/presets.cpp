#include "qladder/cli/presets.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qladder::cli {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// Barnett-Radmore beta = 0.5 and beta = 3 settings on a unit ladder.
Preset beta_sweep(const std::string& name, double v) {
  Preset p{name, 25.0, 2000, {}};
  const double delta = 1.0;
  for (double a : {0.1, 1.0, 5.0, 20.0}) {
    const ModelParams mp = ModelParams::make(v, delta, a, 0.0);
    p.panels.push_back({name + "-a" + fmt(a),
                        "a=" + fmt(a),
                        mp,
                        {RabiLimit{0.0, v}, BjLimit{v, delta, 0.0}, WwLimit{mp.big_gamma()}}});
  }
  return p;
}

// Fixed continuum (Gamma, gamma), shrinking spacing.
Preset continuum_sweep(const std::string& name, double big_gamma, double gamma) {
  Preset p{name, 6.0, 2000, {}};
  const double w = std::sqrt(big_gamma * gamma / 2.0);
  for (double delta : {0.5, 0.1, 0.05, 0.01}) {
    p.panels.push_back({name + "-d" + fmt(delta),
                        "delta=" + fmt(delta),
                        ModelParams::from_continuum(big_gamma, gamma, delta),
                        {WwLimit{big_gamma}, FanoLimit{w, gamma, 0.0}}});
  }
  return p;
}

// Gamma = 3, gamma = 0.5 (W ~ 0.86) reached from four widths; delta = gamma/a
// and v rounded to two digits, so Gamma drifts to 2.77 at a = 5.
Preset intermediate() {
  Preset p{"intermediate", 10.0, 2000, {}};
  const double big_gamma = 3.0;
  const double gamma = 0.5;
  const double w = std::sqrt(big_gamma * gamma / 2.0);
  const double as[] = {0.5, 0.71, 1.25, 5.0};
  const double vs[] = {0.69, 0.57, 0.43, 0.21};
  for (int i = 0; i < 4; ++i) {
    p.panels.push_back({"intermediate-a" + fmt(as[i]),
                        "a=" + fmt(as[i]) + " v=" + fmt(vs[i]),
                        ModelParams::make(vs[i], gamma / as[i], as[i], 0.0),
                        {WwLimit{big_gamma}, FanoLimit{w, gamma, 0.0}}});
  }
  return p;
}

// delta = 0.005 throughout; W = 1 fixed while gamma shrinks, so the
// continuum curve tends to cos^2(W t).
Preset rabi_continuum() {
  Preset p{"rabi-continuum", 15.0, 2000, {}};
  const double delta = 0.005;
  const double w = 1.0;
  for (double gamma : {1.0, 0.5, 0.2, 0.1}) {
    const double big_gamma = 2.0 * w * w / gamma;
    p.panels.push_back({"rabi-continuum-g" + fmt(gamma),
                        "gamma=" + fmt(gamma),
                        ModelParams::from_continuum(big_gamma, gamma, delta),
                        {RabiLimit{0.0, w}, FanoLimit{w, gamma, 0.0}}});
  }
  return p;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"beta05",       "beta3",        "overdamped",
                                                 "underdamped",  "intermediate", "rabi-continuum"};
  return names;
}

Preset resolve_preset(const std::string& name) {
  if (name == "beta05") return beta_sweep(name, 0.16);
  if (name == "beta3") return beta_sweep(name, 0.39);
  if (name == "overdamped") return continuum_sweep(name, 0.5, 300.0);
  if (name == "underdamped") return continuum_sweep(name, 12.25, 0.5);
  if (name == "intermediate") return intermediate();
  if (name == "rabi-continuum") return rabi_continuum();
  throw std::out_of_range("unknown preset '" + name + "'");
}

std::pair<Preset, Panel> resolve_panel(const std::string& id) {
  for (const std::string& name : preset_names()) {
    Preset p = resolve_preset(name);
    for (const Panel& panel : p.panels) {
      if (panel.id == id) return {p, panel};
    }
  }
  throw std::out_of_range("unknown preset panel '" + id + "'");
}

}  // namespace qladder::cli
