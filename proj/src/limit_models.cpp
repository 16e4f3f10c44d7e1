#include "qladder/limit_models.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "qladder/compensated_sum.hpp"
#include "qladder/errors.hpp"
#include "qladder/special_sums.hpp"

namespace qladder {
namespace {

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << what << " must be positive, got " << x;
    throw DomainError(msg.str());
  }
}

}  // namespace

RabiEigenvalues rabi_eigenvalues(double e1, double v) {
  const double half = 0.5 * e1;
  const double root = std::hypot(half, v);
  return {half + root, half - root};
}

std::array<double, 2> rabi_eigenvector(double e_pm, double v) {
  const double norm = std::hypot(e_pm, v);
  if (norm == 0.0) throw DegenerateError("rabi_eigenvector: eigenvalue and coupling both zero");
  return {e_pm / norm, v / norm};
}

double rabi_survival(double e_phi, double v, double t) {
  require_time(t);
  const double omega_sq = e_phi * e_phi + 4.0 * v * v;
  if (omega_sq == 0.0) return 1.0;
  const double s = std::sin(0.5 * std::sqrt(omega_sq) * t);
  return 1.0 - 4.0 * v * v / omega_sq * s * s;
}

Spectrum bj_spectrum(double v, double delta, double e_phi, Window window) {
  require_positive(delta, "ladder spacing delta");
  if (!(window.lo < window.hi)) throw DomainError("window must satisfy lo < hi");
  const double strength = kPi * v * v / (delta * delta);  // (pi v^2/delta)/delta
  const double shift = e_phi / delta;
  const double half_gamma = kPi * v * v / delta;
  auto h = [&](double eps) {
    const double r = eps - std::nearbyint(eps);
    return strength * std::cos(kPi * r) / std::sin(kPi * r) - (eps - shift);
  };

  Spectrum s;
  s.params = ModelParams{v, delta, std::numeric_limits<double>::infinity(), e_phi};
  s.window = window;
  const auto n_lo = static_cast<long long>(std::floor(window.lo));
  const auto n_hi = static_cast<long long>(std::ceil(window.hi)) - 1;
  NeumaierSum total;
  for (long long n = n_lo; n <= n_hi; ++n) {
    // h falls monotonically from +inf to -inf across (n, n+1).
    double lo = n + 1e-9;
    double hi = n + 1.0 - 1e-9;
    for (double off = 1e-12; h(lo) <= 0.0 && off > 1e-15; off *= 1e-3) lo = n + off;
    for (double off = 1e-12; h(hi) > 0.0 && off > 1e-15; off *= 1e-3) hi = n + 1.0 - off;
    if (h(lo) <= 0.0 || h(hi) > 0.0) {
      ++s.unresolved;
      continue;
    }
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        h, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    const double eps = 0.5 * (a + b);
    if (eps < window.lo || eps > window.hi) continue;
    const double de = (eps - shift) * delta;
    const double w = v * v / (v * v + half_gamma * half_gamma + de * de);
    s.pairs.push_back({eps, w, n, h(eps), LadderPoint::split(eps)});
    total += w;
  }
  s.norm_deficit = std::max(0.0, 1.0 - total.value());
  return s;
}

double ww_survival(double big_gamma, double t) {
  require_positive(big_gamma, "decay rate");
  require_time(t);
  return std::exp(-big_gamma * t);
}

double fano_F(double e, double w, double gamma) {
  require_positive(gamma, "resonance width gamma");
  return w * w * e / (e * e + gamma * gamma);
}

double fano_alpha_sq(double e, double w, double gamma, double e_phi) {
  require_positive(gamma, "resonance width gamma");
  const double d = e - e_phi;
  const double q = e * d - w * w;
  return (w * w * gamma / kPi) / (q * q + gamma * gamma * d * d);
}

FanoPoles fano_poles(double w, double gamma) {
  require_positive(w, "continuum coupling W");
  require_positive(gamma, "resonance width gamma");
  const std::complex<double> root = std::sqrt(std::complex<double>(4.0 * w * w - gamma * gamma));
  const std::complex<double> damping{0.0, -gamma};
  return {(damping + root) / 2.0, (damping - root) / 2.0, std::abs(gamma - 2.0 * w) < 1e-9};
}

double fano_survival(double w, double gamma, double t) {
  require_time(t);
  const FanoPoles poles = fano_poles(w, gamma);
  if (poles.degenerate) throw DegenerateError("fano_survival: double pole at gamma = 2W");
  const double w2 = w * w;
  auto term = [&](std::complex<double> e) {
    return std::exp(std::complex<double>(0.0, -1.0) * e * t) /
           (e * (2.0 * (e * e - w2) + gamma * gamma));
  };
  const std::complex<double> sum = term(poles.plus) + term(poles.minus);
  return w2 * w2 * gamma * gamma * std::norm(sum);
}

const char* limit_name(const LimitSpec& spec) {
  static constexpr const char* kNames[] = {"rabi", "bj", "ww", "fano"};
  return kNames[spec.index()];
}

void validate(const LimitSpec& spec) {
  if (const auto* bj = std::get_if<BjLimit>(&spec)) require_positive(bj->delta, "ladder spacing delta");
  if (const auto* ww = std::get_if<WwLimit>(&spec)) require_positive(ww->big_gamma, "decay rate");
  if (const auto* fano = std::get_if<FanoLimit>(&spec)) {
    require_positive(fano->gamma, "resonance width gamma");
    require_positive(fano->w, "continuum coupling W");
    if (fano->e_phi != 0.0)
      throw DomainError("fano survival curve is available for e_phi = 0 only");
  }
}

TimeSeries limit_series(const LimitSpec& spec, double t_max, int n_steps,
                        long long bj_half_width) {
  validate(spec);
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  if (n_steps < 1) throw DomainError("n_steps must be positive");
  if (const auto* bj = std::get_if<BjLimit>(&spec)) {
    const double edge = static_cast<double>(bj_half_width) + 0.5;
    return survival_series(bj_spectrum(bj->v, bj->delta, bj->e_phi, {-edge, edge}), t_max,
                           n_steps);
  }
  TimeSeries ts;
  ts.times.resize(static_cast<std::size_t>(n_steps) + 1);
  ts.probs.resize(ts.times.size());
  for (std::size_t j = 0; j < ts.times.size(); ++j) {
    const double t = static_cast<double>(j) * t_max / n_steps;
    ts.times[j] = t;
    ts.probs[j] = std::visit(
        [t](const auto& m) -> double {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, RabiLimit>) return rabi_survival(m.e1, m.v, t);
          if constexpr (std::is_same_v<M, WwLimit>) return ww_survival(m.big_gamma, t);
          if constexpr (std::is_same_v<M, FanoLimit>) return fano_survival(m.w, m.gamma, t);
          return 0.0;
        },
        spec);
  }
  return ts;
}

}  // namespace qladder
