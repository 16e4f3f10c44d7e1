#include "qladder/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qladder/compensated_sum.hpp"
#include "qladder/errors.hpp"
#include "qladder/parallel.hpp"
#include "qladder/special_sums.hpp"

namespace qladder {
namespace {

constexpr std::size_t kPairsPerBlock = 4096;
constexpr int kReanchor = 64;

double total_weight(const Spectrum& s) {
  NeumaierSum w;
  for (const EigenPair& e : s.pairs) w += e.weight;
  return w.value();
}

}  // namespace

std::complex<double> survival_amplitude(const Spectrum& s, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
  NeumaierSum re;
  NeumaierSum im;
  for (const EigenPair& e : s.pairs) {
    const double phase = -e.eps * s.params.delta * t;
    re += e.weight * std::cos(phase);
    im += e.weight * std::sin(phase);
  }
  return {re.value(), im.value()};
}

TimeSeries survival_series(const Spectrum& s, double t_max, int n_steps, bool renormalize,
                           bool keep_amplitudes) {
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  if (n_steps < 1) throw DomainError("n_steps must be positive");
  const auto points = static_cast<std::size_t>(n_steps) + 1;
  const double dt = t_max / n_steps;

  TimeSeries ts;
  ts.params = s.params;
  ts.norm_deficit = s.norm_deficit;
  ts.renormalized = renormalize;
  ts.times.resize(points);
  for (std::size_t j = 0; j < points; ++j) ts.times[j] = static_cast<double>(j) * dt;

  // Fixed-size blocks of eigenpairs reduced in block order keep the result
  // independent of the thread count. Within a block the phase is advanced by
  // complex multiplication and re-anchored every kReanchor steps.
  const std::size_t blocks = (s.pairs.size() + kPairsPerBlock - 1) / kPairsPerBlock;
  std::vector<std::vector<std::complex<double>>> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    auto& acc = partial[b];
    acc.assign(points, {0.0, 0.0});
    const std::size_t end = std::min(s.pairs.size(), (b + 1) * kPairsPerBlock);
    for (std::size_t m = b * kPairsPerBlock; m < end; ++m) {
      const double energy = s.pairs[m].eps * s.params.delta;
      const double w = s.pairs[m].weight;
      const std::complex<double> step = std::polar(1.0, -energy * dt);
      std::complex<double> phase{1.0, 0.0};
      for (std::size_t j = 0; j < points; ++j) {
        if (j % kReanchor == 0) phase = std::polar(1.0, -energy * ts.times[j]);
        acc[j] += w * phase;
        phase *= step;
      }
    }
  });
  std::vector<std::complex<double>> amps(points, {0.0, 0.0});
  for (const auto& acc : partial) {
    for (std::size_t j = 0; j < points; ++j) amps[j] += acc[j];
  }

  const double norm = renormalize ? total_weight(s) : 1.0;
  ts.probs.resize(points);
  for (std::size_t j = 0; j < points; ++j) {
    ts.probs[j] = std::norm(amps[j]) / (norm * norm);
    if (renormalize) amps[j] /= norm;
  }
  if (keep_amplitudes) ts.amps = std::move(amps);
  return ts;
}

double moment(const Spectrum& s, int order) {
  if (order < 0 || order > 2) throw DomainError("moment order must be 0, 1 or 2");
  NeumaierSum m;
  for (const EigenPair& e : s.pairs) {
    double term = e.weight;
    for (int i = 0; i < order; ++i) term *= e.eps;
    m += term;
  }
  return m.value();
}

namespace {

// One side of the tail: levels k = first, first+1, ... in the direction
// `sign` (+1 upward, -1 downward), summed explicitly over kExplicit levels,
// then closed by the large-|k| integral of the summand.
//
// The eigenpair next to a far level k sits at eps = k + s with
//   s = c f_k / D,  D = k + s - eps_phi - c R,
// where c = (v/delta)^2, f_k = v_k^2/v^2 and R, R2 are the regular parts of
// S1 and S2 at k. Its weight times eps^order is then
//   c f_k (k + s)^order / (D^2 + c f_k (1 + c R2)).
double side_tail(const ModelParams& p, long long first, int sign, int order) {
  constexpr long long kExplicit = 2'000'000;
  constexpr double kPi = std::numbers::pi;
  const double c = p.coupling_sq();
  const double e = p.eps_phi();
  const double a = p.a;
  const double al = alpha(a);
  NeumaierSum sum;
  for (long long i = kExplicit - 1; i >= 0; --i) {
    const double k = static_cast<double>(sign * (first + i));
    const double r = k / a;
    const double h = 1.0 / (1.0 + r * r);
    const double h1 = -2.0 * k / (a * a) * h * h;
    const double h2 = -2.0 * h * h / (a * a) + 8.0 * k * k * h * h * h / (a * a * a * a);
    const double reg1 = kPi * al * k * h + h1;
    const double reg2 = kPi * kPi * h / 3.0 - 0.5 * h2 - kPi * al * (h + k * h1);
    double shift = 0.0;
    double d = k - e - c * reg1;
    for (int it = 0; it < 3; ++it) {
      shift = c * h / d;
      d = k + shift - e - c * reg1;
    }
    double term = c * h / (d * d + c * h * (1.0 + c * reg2));
    for (int o = 0; o < order; ++o) term *= k + shift;
    sum += term;
  }
  // Remainder beyond x = X for the level distance x = |k|, with s the
  // discrete energy seen from this side and the level repulsion c R ~ c pi a
  // coth(pi a)/x folded in to the same order.
  const double x = static_cast<double>(first + kExplicit) - 0.5;
  const double s = sign * e;
  const double q = (a / x) * (a / x);
  const double x3 = x * x * x;
  double rest = 0.0;
  if (order == 2) {
    rest = a * std::atan(a / x) + s * std::log1p(q) + s * s * a * a / x3 +
           2.0 * c * kPi * al * a * a * a * a / (3.0 * x3);
  }
  if (order == 1) rest = sign * 0.5 * std::log1p(q);
  if (order == 0) rest = a * a / (3.0 * x3);
  return sum.value() + c * rest;
}

}  // namespace

double moment_tail(const ModelParams& p, Window window, int order) {
  if (order < 0 || order > 2) throw DomainError("moment order must be 0, 1 or 2");
  // Flat coupling: the second moment diverges and the side tails of the first
  // only cancel pairwise.
  if (std::isinf(p.a)) throw DomainError("moment_tail needs a finite resonance width");
  const auto upper = static_cast<long long>(std::floor(window.hi)) + 1;
  const auto lower = static_cast<long long>(std::ceil(window.lo)) - 1;
  if (upper < 1 || lower > -1) throw DomainError("moment_tail: window must contain 0");
  return side_tail(p, upper, +1, order) + side_tail(p, -lower, -1, order);
}

}  // namespace qladder
