#include "qladder/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "qladder/compensated_sum.hpp"
#include "qladder/errors.hpp"
#include "qladder/parallel.hpp"
#include "qladder/special_sums.hpp"

namespace qladder {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinBracketWidth = 1e-13;
constexpr long long kChunk = 2048;

// g(eps) with the parameter-only factors hoisted.
struct Secular {
  explicit Secular(const ModelParams& p, double alpha_shift = 0.0)
      : scale(kPi * p.coupling_sq()),
        al(alpha(p.a) + alpha_shift),
        eps_phi(p.eps_phi()),
        inv_a(std::isinf(p.a) ? 0.0 : 1.0 / p.a) {}

  double operator()(LadderPoint p) const {
    const double eps = p.value();
    const double x = eps * inv_a;
    return eps_phi + scale * (cot_pi(p) + al * eps) / (1.0 + x * x) - eps;
  }

  double operator()(double eps) const { return (*this)(LadderPoint::split(eps)); }

  double scale;
  double al;
  double eps_phi;
  double inv_a;
};

// Secular function of the ladder truncated to k = -n_cut..n_cut.
struct TruncatedSecular {
  TruncatedSecular(const ModelParams& p, long long n_cut)
      : n_cut(n_cut), coupling_sq(p.coupling_sq()), eps_phi(p.eps_phi()), f(2 * n_cut + 1) {
    for (long long k = -n_cut; k <= n_cut; ++k) {
      const double r = static_cast<double>(k) / p.a;
      f[static_cast<std::size_t>(k + n_cut)] = 1.0 / (1.0 + r * r);
    }
  }

  double sum(LadderPoint x, int power) const {
    NeumaierSum s;
    for (long long k = -n_cut; k <= n_cut; ++k) {
      const double d = static_cast<double>(x.level - k) + x.offset;
      const double fk = f[static_cast<std::size_t>(k + n_cut)];
      s += power == 1 ? fk / d : fk / (d * d);
    }
    return s.value();
  }

  double operator()(LadderPoint x) const {
    return eps_phi + coupling_sq * sum(x, 1) - x.value();
  }
  double operator()(double eps) const { return (*this)(LadderPoint::split(eps)); }

  long long n_cut;
  double coupling_sq;
  double eps_phi;
  std::vector<double> f;
};

bool positive(double x) { return x > 0.0; }

double ulp_at(double x) {
  const double ax = std::abs(x);
  return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

// Brent's method on a bracket with f(a) and f(b) of opposite sign (or one of
// them zero). Returns the iterate with the smallest |f| seen at termination.
template <class F>
double brent(const F& f, double a, double b, double fa, double fb, double tol,
             double min_width = kMinBracketWidth) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (positive(fa) == positive(fb)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "root not bracketed: g(" << a << ") = " << fa << ", g(" << b << ") = " << fb;
    throw InvalidBracketError(msg.str());
  }
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a;
  double fc = fa;
  double d = c;
  bool bisected = true;
  for (int iter = 0; iter < 400; ++iter) {
    if (std::abs(fb) < tol) break;
    const double width = std::abs(b - a);
    if (width < min_width || width <= ulp_at(std::max(std::abs(a), std::abs(b)))) break;

    double s;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double lo = std::min((3.0 * a + b) / 4.0, b);
    const double hi = std::max((3.0 * a + b) / 4.0, b);
    const double min_step = 0.5 * min_width;
    const bool use_bisection = !(s > lo && s < hi) || !std::isfinite(s) ||
                               (bisected && std::abs(s - b) >= std::abs(b - c) / 2.0) ||
                               (!bisected && std::abs(s - b) >= std::abs(c - d) / 2.0) ||
                               (bisected && std::abs(b - c) < min_step) ||
                               (!bisected && std::abs(c - d) < min_step);
    if (use_bisection) {
      s = 0.5 * (a + b);
      bisected = true;
    } else {
      bisected = false;
    }
    if (s == a || s == b) break;
    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if (fs == 0.0) return s;
    if (positive(fa) != positive(fs)) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  return b;
}

// Sign-change bracket in offsets from `level`.
struct AnchoredBracket {
  long long level = 0;
  double lo = 0.0;
  double hi = 0.0;
};

// Roots hugging a pole: walk the offset toward the pole by factors of 1e3
// until g takes the sign it must have next to that pole. Offsets are exact,
// so this works equally far out on the ladder.
// `side` is +1 for the pole at the left end (g -> +inf) and -1 for the right.
template <class F>
std::optional<AnchoredBracket> pole_bracket(const F& g, long long pole, int side,
                                            double outer_offset, double min_offset) {
  double prev = outer_offset;
  double off = outer_offset * 1e-3;
  while (true) {
    off = std::max(off, min_offset);
    const double gx = g(LadderPoint{pole, side * off});
    const bool pole_sign_ok = side > 0 ? positive(gx) : !positive(gx);
    if (pole_sign_ok) {
      return side > 0 ? AnchoredBracket{pole, off, prev} : AnchoredBracket{pole, -prev, -off};
    }
    if (off <= min_offset) return std::nullopt;
    prev = off;
    off *= 1e-3;
  }
}

// Brackets for one unit interval (n, n+1). Samples sit at offsets t in
// [pole_offset, 1 - pole_offset] from n.
template <class F>
void scan_interval(const F& g, long long n, int samples, double pole_offset, double min_offset,
                   std::vector<AnchoredBracket>& out, std::size_t& unresolved) {
  auto at = [n](double t) {
    return t <= 0.5 ? LadderPoint{n, t} : LadderPoint{n + 1, t - 1.0};
  };
  std::vector<double> ts(static_cast<std::size_t>(samples));
  std::vector<double> gs(ts.size());
  for (int i = 0; i < samples; ++i) {
    ts[i] = i == samples - 1 ? 1.0 - pole_offset
                             : pole_offset + (1.0 - 2.0 * pole_offset) * i / (samples - 1);
    gs[i] = g(at(ts[i]));
  }
  if (!positive(gs.front())) {
    if (auto b = pole_bracket(g, n, +1, pole_offset, min_offset)) {
      out.push_back(*b);
    } else {
      ++unresolved;
    }
  }
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (positive(gs[i]) != positive(gs[i + 1])) out.push_back({n, ts[i], ts[i + 1]});
  }
  if (positive(gs.back())) {
    if (auto b = pole_bracket(g, n + 1, -1, pole_offset, min_offset)) {
      out.push_back(*b);
    } else {
      ++unresolved;
    }
  }
}

int samples_for(const ModelParams& p, int subsamples) {
  if (subsamples < 8) throw DomainError("subsamples must be at least 8");
  return monotonicity_certificate(p) ? 2 : subsamples;
}

double pole_guard_offset() { return 1.0001 * kPoleGuard; }

// Brent on the offset from the level nearest the bracket midpoint.
template <class F>
LadderPoint refine_anchored(const F& g, AnchoredBracket b, double tol) {
  if (b.lo + b.hi > 1.0) {
    b = {b.level + 1, b.lo - 1.0, b.hi - 1.0};
  } else if (b.lo + b.hi < -1.0) {
    b = {b.level - 1, b.lo + 1.0, b.hi + 1.0};
  }
  const long long m = b.level;
  auto f = [&](double s) { return g(LadderPoint{m, s}); };
  return {m, brent(f, b.lo, b.hi, f(b.lo), f(b.hi), tol, 0.0)};
}

AnchoredBracket anchor(Bracket b) {
  const double level = std::nearbyint(0.5 * (b.lo + b.hi));
  return {static_cast<long long>(level), b.lo - level, b.hi - level};
}

bool before(const EigenPair& x, const EigenPair& y) {
  const long long dl = x.point.level - y.point.level;
  if (dl > 1 || dl < -1) return dl < 0;
  return static_cast<double>(dl) + (x.point.offset - y.point.offset) < 0.0;
}

struct IntervalRoots {
  std::vector<EigenPair> pairs;
  std::size_t unresolved = 0;
};

// Refined eigenpairs for unit intervals n_lo..n_hi (inclusive), unfiltered.
IntervalRoots solve_intervals(const ModelParams& p, long long n_lo, long long n_hi,
                              const SolveOptions& opts) {
  IntervalRoots result;
  if (n_hi < n_lo) return result;
  const Secular g(p, opts.alpha_shift);
  const int samples = samples_for(p, opts.subsamples);
  const long long count = n_hi - n_lo + 1;
  const auto chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
  std::vector<IntervalRoots> per_chunk(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    IntervalRoots& slot = per_chunk[c];
    std::vector<AnchoredBracket> brackets;
    const long long begin = n_lo + static_cast<long long>(c) * kChunk;
    const long long end = std::min(n_hi, begin + kChunk - 1);
    for (long long n = begin; n <= end; ++n) {
      brackets.clear();
      scan_interval(g, n, samples, opts.pole_offset, pole_guard_offset(), brackets,
                    slot.unresolved);
      for (const AnchoredBracket& b : brackets) {
        const LadderPoint x = refine_anchored(g, b, opts.tol);
        slot.pairs.push_back({x.value(), discrete_weight(x, p), n, g(x), x});
      }
    }
  });
  for (auto& chunk : per_chunk) {
    result.unresolved += chunk.unresolved;
    result.pairs.insert(result.pairs.end(), chunk.pairs.begin(), chunk.pairs.end());
  }
  return result;
}

void finalize(Spectrum& s, double dedup) {
  auto& pairs = s.pairs;
  std::sort(pairs.begin(), pairs.end(), before);
  std::vector<EigenPair> unique;
  unique.reserve(pairs.size());
  for (const EigenPair& e : pairs) {
    // Only a second root from the same interval can be a duplicate.
    if (!unique.empty() && e.interval == unique.back().interval &&
        e.eps - unique.back().eps < dedup) {
      if (std::abs(e.residual) < std::abs(unique.back().residual)) unique.back() = e;
      continue;
    }
    unique.push_back(e);
  }
  pairs = std::move(unique);
  NeumaierSum total;
  for (const EigenPair& e : pairs) total += e.weight;
  s.norm_deficit = std::max(0.0, 1.0 - total.value());
}

long long first_interval(double lo) { return static_cast<long long>(std::floor(lo)); }
long long last_interval(double hi) { return static_cast<long long>(std::ceil(hi)) - 1; }

void require_window(Window w) {
  if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || !(w.lo < w.hi))
    throw DomainError("window must be a finite interval with lo < hi");
}

}  // namespace

double residual_g(double eps, const ModelParams& p) { return Secular(p)(eps); }

double residual_g(LadderPoint x, const ModelParams& p) { return Secular(p)(x); }

BracketScan bracket_roots(const ModelParams& p, Window window, int subsamples,
                          double pole_offset) {
  require_window(window);
  const Secular g(p);
  const int samples = samples_for(p, subsamples);
  BracketScan scan;
  std::vector<AnchoredBracket> found;
  for (long long n = first_interval(window.lo); n <= last_interval(window.hi); ++n) {
    found.clear();
    scan_interval(g, n, samples, pole_offset, pole_guard_offset(), found, scan.unresolved);
    for (const AnchoredBracket& b : found) {
      const double level = static_cast<double>(b.level);
      scan.brackets.push_back({level + b.lo, level + b.hi, n});
    }
  }
  return scan;
}

LadderPoint refine_root(Bracket bracket, const ModelParams& p, double tol) {
  return refine_anchored(Secular(p), anchor(bracket), tol);
}

Spectrum solve_spectrum(const ModelParams& p, Window window, const SolveOptions& opts) {
  require_window(window);
  IntervalRoots roots =
      solve_intervals(p, first_interval(window.lo), last_interval(window.hi), opts);
  Spectrum s{p, {}, window, 0.0, roots.unresolved};
  s.pairs.reserve(roots.pairs.size());
  for (const EigenPair& e : roots.pairs) {
    if (e.eps >= window.lo && e.eps <= window.hi) s.pairs.push_back(e);
  }
  finalize(s, opts.dedup);
  return s;
}

Spectrum solve_spectrum(const ModelParams& p, const AdaptiveOptions& opts) {
  if (opts.initial_half_width < 1 || opts.max_half_width < opts.initial_half_width)
    throw DomainError("adaptive window: need 1 <= initial_half_width <= max_half_width");
  const auto centre = static_cast<long long>(std::ceil(std::abs(p.eps_phi())));
  long long half = std::min(opts.max_half_width, opts.initial_half_width + centre);

  // Roots are kept per solved interval range; each doubling solves only the
  // two new shells.
  std::vector<EigenPair> all;
  std::size_t unresolved = 0;
  long long solved_lo = 0;
  long long solved_hi = -1;
  while (true) {
    const Window w{-static_cast<double>(half) - 0.5, static_cast<double>(half) + 0.5};
    const long long n_lo = first_interval(w.lo);
    const long long n_hi = last_interval(w.hi);
    auto absorb = [&](long long lo, long long hi) {
      IntervalRoots r = solve_intervals(p, lo, hi, opts.solve);
      all.insert(all.end(), r.pairs.begin(), r.pairs.end());
      unresolved += r.unresolved;
    };
    if (solved_hi < solved_lo) {
      absorb(n_lo, n_hi);
    } else {
      absorb(n_lo, solved_lo - 1);
      absorb(solved_hi + 1, n_hi);
    }
    solved_lo = n_lo;
    solved_hi = n_hi;

    Spectrum s{p, {}, w, 0.0, unresolved};
    for (const EigenPair& e : all) {
      if (e.eps >= w.lo && e.eps <= w.hi) s.pairs.push_back(e);
    }
    finalize(s, opts.solve.dedup);
    if (s.norm_deficit < opts.deficit_target || half >= opts.max_half_width) return s;
    half = std::min(opts.max_half_width, 2 * half);
  }
}

double discrete_weight(LadderPoint x, const ModelParams& p) {
  return 1.0 / (1.0 + p.coupling_sq() * s2_trig(x, p.a));
}

double discrete_weight(double eps, const ModelParams& p) {
  return discrete_weight(LadderPoint::split(eps), p);
}

double k_component(double eps, long long k, const ModelParams& p) {
  const double d = eps - static_cast<double>(k);
  if (std::abs(d) < kPoleGuard) throw PoleError("eigenvalue coincides with ladder level");
  return std::sqrt(discrete_weight(eps, p)) * p.v_k(k) / (p.delta * d);
}

double near_integer_shift(long long n, const ModelParams& p) {
  if (n == 0) throw DomainError("near_integer_shift needs n != 0");
  const double nd = static_cast<double>(n);
  const double ratio = p.coupling_sq();
  const double denom = nd - p.eps_phi() - ratio / nd;
  if (std::abs(denom) < 1e-14) throw DegenerateError("near_integer_shift: vanishing denominator");
  return ratio * p.a * p.a / (nd * nd) / denom;
}

bool monotonicity_certificate(const ModelParams& p) {
  if (std::isinf(p.a)) return true;
  return coth(kPi * p.a) <= kPi * p.a;
}

double truncated_residual(double eps, const ModelParams& p, long long n_cut) {
  return TruncatedSecular(p, n_cut)(eps);
}

double truncated_weight(double eps, const ModelParams& p, long long n_cut) {
  const TruncatedSecular g(p, n_cut);
  return 1.0 / (1.0 + g.coupling_sq * g.sum(LadderPoint::split(eps), 2));
}

Spectrum solve_truncated_spectrum(const ModelParams& p, long long n_cut, double tol) {
  if (n_cut < 1) throw DomainError("n_cut must be at least 1");
  const TruncatedSecular g(p, n_cut);
  Spectrum s{p, {}, {}, 0.0, 0};
  auto add = [&](AnchoredBracket b, std::optional<long long> interval) {
    const LadderPoint x = refine_anchored(g, b, tol);
    const double w = 1.0 / (1.0 + g.coupling_sq * g.sum(x, 2));
    s.pairs.push_back({x.value(), w, interval, g(x), x});
  };

  // Each term f_k/(eps - k) decreases between poles, so every gap between
  // neighbouring levels holds exactly one root.
  constexpr double kTiny = 1e-300;
  std::vector<AnchoredBracket> brackets;
  std::size_t unresolved = 0;
  for (long long n = -n_cut; n < n_cut; ++n) {
    brackets.clear();
    scan_interval(g, n, 2, 1e-9, kTiny, brackets, unresolved);
    for (const AnchoredBracket& b : brackets) add(b, n);
  }

  // Outer roots: g -> +inf as eps -> -inf and -> -inf as eps -> +inf, so
  // one root lies beyond each end level. `side` points away from the ladder.
  auto outer = [&](long long pole, int side) {
    auto away_sign_ok = [&](double gx) { return side > 0 ? !positive(gx) : positive(gx); };
    double reach = 1.0;
    while (!away_sign_ok(g(LadderPoint{pole, side * reach}))) {
      reach *= 2.0;
      if (reach > 1e300) throw ConvergenceError("outer root of truncated ladder not bracketed");
    }
    const double near = 1e-9;
    std::optional<AnchoredBracket> b;
    if (!away_sign_ok(g(LadderPoint{pole, side * near}))) {
      b = side > 0 ? AnchoredBracket{pole, near, reach} : AnchoredBracket{pole, -reach, -near};
    } else if (auto pb = pole_bracket(g, pole, side, near, kTiny)) {
      b = side > 0 ? AnchoredBracket{pole, pb->lo, reach} : AnchoredBracket{pole, -reach, pb->hi};
    }
    if (!b) {
      ++unresolved;
      return;
    }
    add(*b, std::nullopt);
  };
  outer(-n_cut, -1);
  outer(n_cut, +1);

  s.unresolved = unresolved;
  std::sort(s.pairs.begin(), s.pairs.end(), before);
  s.window = {s.pairs.front().eps, s.pairs.back().eps};
  NeumaierSum total;
  for (const EigenPair& e : s.pairs) total += e.weight;
  s.norm_deficit = std::max(0.0, 1.0 - total.value());
  return s;
}

}  // namespace qladder
