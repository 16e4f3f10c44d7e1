#include "qladder/cli/app.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qladder/cli/output.hpp"
#include "qladder/cli/presets.hpp"
#include "qladder/cli/validate.hpp"
#include "qladder/dense_oracle.hpp"
#include "qladder/dynamics.hpp"
#include "qladder/errors.hpp"
#include "qladder/limit_models.hpp"
#include "qladder/parallel.hpp"
#include "qladder/spectral_solver.hpp"

namespace qladder::cli {
namespace {

// Bad or missing flags after parsing succeeded.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelFlags {
  std::optional<double> v;
  double delta = 1.0;
  std::optional<double> a;
  double e_phi = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--v", v, "coupling strength v");
    cmd->add_option("--delta", delta, "ladder spacing delta")->capture_default_str();
    cmd->add_option("--a", a, "Lorentzian half-width in units of delta");
    cmd->add_option("--e-phi", e_phi, "discrete-state energy")->capture_default_str();
  }

  ModelParams resolve() const {
    if (!v) throw UsageError("--v is required");
    if (!a) throw UsageError("--a is required");
    if (*v == 0.0) throw UsageError("coupling must be nonzero");
    try {
      return ModelParams::make(*v, delta, *a, e_phi);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
};

struct Output {
  std::string path;
  std::string format = "csv";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out", path, "output file (stdout when omitted)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }

  void emit(const Table& t, std::ostream& out) const {
    const std::string text = format == "json" ? to_json(t) : to_csv(t);
    if (path.empty()) {
      out << text;
    } else {
      write_file(path, text);
    }
  }
};

void echo_params(Table& t, const ModelParams& p) {
  t.meta.emplace_back("v", format_number(p.v));
  t.meta.emplace_back("delta", format_number(p.delta));
  t.meta.emplace_back("a", format_number(p.a));
  t.meta.emplace_back("e_phi", format_number(p.e_phi));
}

std::string describe(const LimitSpec& spec) {
  std::ostringstream o;
  o << limit_name(spec) << '(';
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RabiLimit>) {
          o << "e1=" << format_number(m.e1) << ";v=" << format_number(m.v);
        } else if constexpr (std::is_same_v<M, BjLimit>) {
          o << "v=" << format_number(m.v) << ";delta=" << format_number(m.delta)
            << ";e_phi=" << format_number(m.e_phi);
        } else if constexpr (std::is_same_v<M, WwLimit>) {
          o << "Gamma=" << format_number(m.big_gamma);
        } else {
          o << "W=" << format_number(m.w) << ";gamma=" << format_number(m.gamma)
            << ";e_phi=" << format_number(m.e_phi);
        }
      },
      spec);
  o << ')';
  return o.str();
}

// ---- spectrum ------------------------------------------------------------

struct SpectrumCmd {
  ModelFlags model;
  Output output;
  std::optional<double> window_min;
  std::optional<double> window_max;
  double deficit_target = 1e-6;

  int run(std::ostream& out) const {
    const ModelParams p = model.resolve();
    Spectrum s;
    if (window_min || window_max) {
      if (!window_min || !window_max)
        throw UsageError("--window-min and --window-max must be given together");
      if (!(*window_min < *window_max)) throw UsageError("--window-min must be below --window-max");
      s = solve_spectrum(p, Window{*window_min, *window_max});
    } else {
      if (!(deficit_target > 0.0)) throw UsageError("--deficit-target must be positive");
      AdaptiveOptions o;
      o.deficit_target = deficit_target;
      s = solve_spectrum(p, o);
    }
    Table t;
    t.meta.emplace_back("command", "spectrum");
    echo_params(t, p);
    t.meta.emplace_back("window_min", format_number(s.window.lo));
    t.meta.emplace_back("window_max", format_number(s.window.hi));
    t.meta.emplace_back("norm_deficit", format_number(s.norm_deficit));
    t.meta.emplace_back("unresolved_roots", std::to_string(s.unresolved));
    t.columns = {"index", "eps", "energy", "weight", "interval_index", "residual"};
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
      const EigenPair& e = s.pairs[i];
      t.rows.push_back({Cell(static_cast<double>(i)), Cell(e.eps), Cell(e.energy(p)),
                        Cell(e.weight),
                        e.interval ? Cell(static_cast<double>(*e.interval)) : Cell(std::string()),
                        Cell(e.residual)});
    }
    output.emit(t, out);
    return kOk;
  }
};

// ---- dynamics ------------------------------------------------------------

struct DynamicsCmd {
  ModelFlags model;
  Output output;
  std::string preset;
  std::optional<double> t_max;
  int t_steps = 2000;
  long long n_cut = 300;
  std::string engine = "semi";
  bool renormalize = false;

  int run(std::ostream& out) const {
    ModelParams p;
    double horizon = 0.0;
    if (!preset.empty()) {
      if (model.v || model.a) throw UsageError("--preset cannot be combined with --v/--a");
      try {
        const auto [pr, panel] = resolve_panel(preset);
        p = panel.params;
        horizon = t_max.value_or(pr.t_max);
      } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
      }
    } else {
      if (!t_max) throw UsageError("--t-max is required");
      p = model.resolve();
      horizon = *t_max;
    }
    if (!(horizon > 0.0)) throw UsageError("--t-max must be positive");
    if (t_steps < 1) throw UsageError("--t-steps must be positive");
    if (n_cut < 1) throw UsageError("--n-cut must be positive");

    const bool semi = engine != "oracle";
    const bool oracle = engine != "semi";
    TimeSeries ts_semi, ts_oracle;
    Table t;
    t.meta.emplace_back("command", "dynamics");
    if (!preset.empty()) t.meta.emplace_back("preset", preset);
    echo_params(t, p);
    t.meta.emplace_back("t_max", format_number(horizon));
    t.meta.emplace_back("t_steps", std::to_string(t_steps));
    t.meta.emplace_back("engine", engine);
    if (semi) {
      const Spectrum s = solve_spectrum(p, AdaptiveOptions{});
      ts_semi = survival_series(s, horizon, t_steps, renormalize);
      t.meta.emplace_back("window_min", format_number(s.window.lo));
      t.meta.emplace_back("window_max", format_number(s.window.hi));
      t.meta.emplace_back("norm_deficit", format_number(s.norm_deficit));
      t.meta.emplace_back("renormalize", renormalize ? "true" : "false");
      t.columns.push_back("t");
      t.columns.push_back("p_semi");
    }
    if (oracle) {
      t.meta.emplace_back("n_cut", std::to_string(n_cut));
      ts_oracle = oracle_survival(p, n_cut, horizon, t_steps);
      if (!semi) t.columns.push_back("t");
      t.columns.push_back("p_oracle");
    }
    if (semi && oracle) t.columns.push_back("abs_diff");
    const TimeSeries& grid = semi ? ts_semi : ts_oracle;
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
      std::vector<Cell> row{Cell(grid.times[i])};
      if (semi) row.emplace_back(ts_semi.probs[i]);
      if (oracle) row.emplace_back(ts_oracle.probs[i]);
      if (semi && oracle) row.emplace_back(std::abs(ts_semi.probs[i] - ts_oracle.probs[i]));
      t.rows.push_back(std::move(row));
    }
    output.emit(t, out);
    return kOk;
  }
};

// ---- limits --------------------------------------------------------------

struct LimitsCmd {
  Output output;
  std::string kind;
  std::string preset;
  std::optional<double> v, delta, e_phi, big_gamma, gamma, w;
  std::optional<double> t_max;
  int t_steps = 2000;

  LimitSpec from_preset() const {
    Preset pr;
    try {
      pr = resolve_preset(preset);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    for (const LimitSpec& spec : pr.panels.front().overlays) {
      if (limit_name(spec) == kind) return spec;
    }
    throw UsageError("preset " + preset + " has no " + kind + " overlay");
  }

  LimitSpec from_flags() const {
    auto need = [&](const std::optional<double>& x, const char* flag) {
      if (!x) throw UsageError(std::string(flag) + " is required for --kind " + kind);
      return *x;
    };
    if (kind == "rabi") return RabiLimit{e_phi.value_or(0.0), need(v, "--v")};
    if (kind == "bj") return BjLimit{need(v, "--v"), delta.value_or(1.0), e_phi.value_or(0.0)};
    if (kind == "ww") return WwLimit{need(big_gamma, "--big-gamma")};
    return FanoLimit{need(w, "--w"), need(gamma, "--gamma"), e_phi.value_or(0.0)};
  }

  int run(std::ostream& out) const {
    const LimitSpec spec = preset.empty() ? from_flags() : from_preset();
    std::optional<double> t_end = t_max;
    if (!t_end && !preset.empty()) t_end = resolve_preset(preset).t_max;
    if (!t_end) throw UsageError("--t-max is required");
    if (!(*t_end > 0.0)) throw UsageError("--t-max must be positive");
    if (t_steps < 1) throw UsageError("--t-steps must be positive");
    try {
      validate(spec);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    const TimeSeries ts = limit_series(spec, *t_end, t_steps);
    Table t;
    t.meta.emplace_back("command", "limits");
    t.meta.emplace_back("model", describe(spec));
    t.meta.emplace_back("t_max", format_number(*t_end));
    t.meta.emplace_back("t_steps", std::to_string(t_steps));
    t.columns = {"t", "p"};
    for (std::size_t i = 0; i < ts.times.size(); ++i)
      t.rows.push_back({Cell(ts.times[i]), Cell(ts.probs[i])});
    output.emit(t, out);
    return kOk;
  }
};

// ---- compare -------------------------------------------------------------

struct CompareCmd {
  std::string preset;
  std::string out_dir;
  bool svg = false;
  std::optional<int> t_steps;

  int run(std::ostream& out) const {
    Preset pr;
    try {
      pr = resolve_preset(preset);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    if (t_steps) {
      if (*t_steps < 1) throw UsageError("--t-steps must be positive");
      pr.n_steps = *t_steps;
    }
    struct Result {
      TimeSeries general;
      std::vector<TimeSeries> overlays;
      double deficit = 0.0;
    };
    std::vector<Result> results(pr.panels.size());
    parallel_for(pr.panels.size(), [&](std::size_t i) {
      const Panel& panel = pr.panels[i];
      const Spectrum s = solve_spectrum(panel.params, AdaptiveOptions{});
      results[i].deficit = s.norm_deficit;
      results[i].general = survival_series(s, pr.t_max, pr.n_steps);
      for (const LimitSpec& spec : panel.overlays)
        results[i].overlays.push_back(limit_series(spec, pr.t_max, pr.n_steps));
    });

    const std::filesystem::path dir(out_dir);
    for (std::size_t i = 0; i < pr.panels.size(); ++i) {
      const Panel& panel = pr.panels[i];
      const Result& r = results[i];
      Table t;
      t.meta.emplace_back("command", "compare");
      t.meta.emplace_back("preset", pr.name);
      t.meta.emplace_back("panel", panel.id);
      echo_params(t, panel.params);
      t.meta.emplace_back("Gamma", format_number(panel.params.big_gamma()));
      t.meta.emplace_back("gamma", format_number(panel.params.gamma()));
      t.meta.emplace_back("W", format_number(panel.params.w()));
      t.meta.emplace_back("norm_deficit", format_number(r.deficit));
      t.columns = {"t", "p_general"};
      for (std::size_t k = 0; k < panel.overlays.size(); ++k) {
        const std::string col = "p_overlay_" + std::to_string(k + 1);
        t.meta.emplace_back("overlay_" + std::to_string(k + 1), describe(panel.overlays[k]));
        t.columns.push_back(col);
      }
      for (std::size_t j = 0; j < r.general.times.size(); ++j) {
        std::vector<Cell> row{Cell(r.general.times[j]), Cell(r.general.probs[j])};
        for (const TimeSeries& o : r.overlays) row.emplace_back(o.probs[j]);
        t.rows.push_back(std::move(row));
      }
      write_file(dir / (panel.id + ".csv"), to_csv(t));
      out << (dir / (panel.id + ".csv")).string() << '\n';
      if (svg) {
        std::vector<Series> series{{"general " + panel.label, r.general.times, r.general.probs}};
        for (std::size_t k = 0; k < panel.overlays.size(); ++k)
          series.push_back({limit_name(panel.overlays[k]), r.overlays[k].times,
                            r.overlays[k].probs});
        write_file(dir / (panel.id + ".svg"), to_svg(pr.name + ": " + panel.label, "t", series));
        out << (dir / (panel.id + ".svg")).string() << '\n';
      }
    }
    return kOk;
  }
};

// ---- validate ------------------------------------------------------------

struct ValidateCmd {
  Output output;
  double inject_alpha_fault = 0.0;
  bool quiet = false;

  int run(std::ostream& out, std::ostream& err) const {
    ValidateOptions opts;
    opts.alpha_shift = inject_alpha_fault;
    // Progress goes to stderr when the report itself is written to stdout.
    std::ostream& progress = output.path.empty() ? err : out;
    if (!quiet) {
      opts.on_result = [&progress](const CheckResult& r) {
        progress << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured="
                 << format_number(r.measured) << (r.at_least ? "  bound>=" : "  bound<=")
                 << format_number(r.bound) << '\n'
                 << std::flush;
      };
    }
    const auto start = std::chrono::steady_clock::now();
    const std::vector<CheckResult> results = run_validation(opts);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Table t;
    t.meta.emplace_back("command", "validate");
    t.meta.emplace_back("alpha_fault", format_number(inject_alpha_fault));
    t.columns = {"name", "measured", "bound", "relation", "pass"};
    std::size_t failed = 0;
    for (const CheckResult& r : results) {
      failed += r.pass ? 0 : 1;
      t.rows.push_back({Cell(r.name), Cell(r.measured), Cell(r.bound),
                        Cell(std::string(r.at_least ? ">=" : "<=")),
                        Cell(std::string(r.pass ? "true" : "false"))});
    }
    output.emit(t, out);
    progress << results.size() - failed << '/' << results.size() << " checks passed in "
             << std::fixed << std::setprecision(1) << seconds << " s\n";
    return failed == 0 ? kOk : kValidationFailed;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lorentzian-coupled ladder: spectra, survival dynamics and limit models",
               "qladder"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SpectrumCmd spectrum;
  CLI::App* c_spec = app.add_subcommand("spectrum", "eigenvalues and discrete-state weights");
  spectrum.model.add_to(c_spec);
  spectrum.output.add_to(c_spec);
  c_spec->add_option("--window-min", spectrum.window_min, "lower window edge (units of delta)");
  c_spec->add_option("--window-max", spectrum.window_max, "upper window edge (units of delta)");
  c_spec->add_option("--deficit-target", spectrum.deficit_target,
                     "weight deficit for the adaptive window")
      ->capture_default_str();

  DynamicsCmd dynamics;
  CLI::App* c_dyn = app.add_subcommand("dynamics", "survival probability of the discrete state");
  dynamics.model.add_to(c_dyn);
  dynamics.output.add_to(c_dyn);
  c_dyn->add_option("--preset", dynamics.preset, "figure panel id, e.g. beta05-a20");
  c_dyn->add_option("--t-max", dynamics.t_max, "end of the time grid");
  c_dyn->add_option("--t-steps", dynamics.t_steps, "number of time steps")->capture_default_str();
  c_dyn->add_option("--n-cut", dynamics.n_cut, "oracle ladder half-size")->capture_default_str();
  c_dyn->add_option("--engine", dynamics.engine, "semi, oracle or both")
      ->check(CLI::IsMember({"semi", "oracle", "both"}))
      ->capture_default_str();
  c_dyn->add_flag("--renormalize", dynamics.renormalize, "divide by the squared weight sum");

  LimitsCmd limits;
  CLI::App* c_lim = app.add_subcommand("limits", "reference-model survival curves");
  limits.output.add_to(c_lim);
  c_lim->add_option("--kind", limits.kind, "rabi, bj, ww or fano")
      ->required()
      ->check(CLI::IsMember({"rabi", "bj", "ww", "fano"}));
  c_lim->add_option("--preset", limits.preset, "take the overlay parameters from a preset");
  c_lim->add_option("--v", limits.v, "coupling (rabi, bj)");
  c_lim->add_option("--delta", limits.delta, "ladder spacing (bj)");
  c_lim->add_option("--e-phi,--e1", limits.e_phi, "discrete-state energy");
  c_lim->add_option("--big-gamma", limits.big_gamma, "golden-rule rate Gamma (ww)");
  c_lim->add_option("--gamma", limits.gamma, "Lorentzian half-width gamma (fano)");
  c_lim->add_option("--w", limits.w, "continuum coupling W (fano)");
  c_lim->add_option("--t-max", limits.t_max, "end of the time grid");
  c_lim->add_option("--t-steps", limits.t_steps, "number of time steps")->capture_default_str();

  CompareCmd compare;
  CLI::App* c_cmp = app.add_subcommand("compare", "figure preset: general model plus overlays");
  c_cmp->add_option("--preset", compare.preset, "preset name")->required();
  c_cmp->add_option("--out", compare.out_dir, "output directory")->required();
  c_cmp->add_flag("--svg", compare.svg, "also write one SVG plot per panel");
  c_cmp->add_option("--t-steps", compare.t_steps, "override the preset's time steps");

  ValidateCmd validate_cmd;
  CLI::App* c_val = app.add_subcommand("validate", "run the invariant suite");
  validate_cmd.output.add_to(c_val);
  c_val->add_option("--inject-alpha-fault", validate_cmd.inject_alpha_fault,
                    "perturb alpha(a) in the eigenvalue equation (mutation check)");
  c_val->add_flag("--quiet", validate_cmd.quiet, "no per-check progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(c_spec)) return spectrum.run(out);
    if (app.got_subcommand(c_dyn)) return dynamics.run(out);
    if (app.got_subcommand(c_lim)) return limits.run(out);
    if (app.got_subcommand(c_cmp)) return compare.run(out);
    if (app.got_subcommand(c_val)) return validate_cmd.run(out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateError& e) {
    err << "degenerate parameters: " << e.what() << '\n';
    return kDegenerate;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kUsage;
}

}  // namespace qladder::cli
