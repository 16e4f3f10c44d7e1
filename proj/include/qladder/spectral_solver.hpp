#pragma once

// Semi-analytic spectrum of the Lorentzian ladder model.
//
// Eigenvalues (in units of the ladder spacing) are the zeros of
//
//   g(eps) = eps_phi + (pi v^2/delta^2) [cot(pi eps) + alpha(a) eps] / (1 + (eps/a)^2) - eps,
//
// which runs from +inf to -inf across every unit interval (n, n+1). The
// discrete-state weight of an eigenvector is 1 / (1 + (v/delta)^2 S2(eps, a)).

#include <cstddef>
#include <optional>
#include <vector>

#include "qladder/model_params.hpp"
#include "qladder/special_sums.hpp"

namespace qladder {

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct EigenPair {
  double eps = 0.0;     ///< eigenvalue / delta
  double weight = 0.0;  ///< |<phi|psi>|^2, in (0, 1]
  /// n with eps in (n, n+1); empty for roots outside any unit interval
  /// (the two outer roots of a truncated ladder).
  std::optional<long long> interval;
  double residual = 0.0;  ///< g(eps) at the stored root
  /// The root as nearest level plus offset; eps is its rounded value.
  LadderPoint point;

  double energy(const ModelParams& p) const { return eps * p.delta; }
};

struct Spectrum {
  ModelParams params;
  std::vector<EigenPair> pairs;  ///< strictly increasing in eps
  Window window;
  double norm_deficit = 0.0;  ///< 1 - sum of weights, clamped at 0
  /// Roots that sit closer to a ladder level than the pole guard. Their
  /// weight is below double resolution; they are counted, not stored.
  std::size_t unresolved = 0;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  long long interval = 0;
};

struct BracketScan {
  std::vector<Bracket> brackets;
  std::size_t unresolved = 0;
};

struct SolveOptions {
  double tol = 1e-12;          ///< target |g| at refined roots
  int subsamples = 64;         ///< samples per unit interval without the certificate
  double pole_offset = 1e-9;   ///< sampling distance from each ladder pole
  double dedup = 1e-10;        ///< roots closer than this are merged
  /// Added to alpha(a) inside the eigenvalue equation. Zero in normal use;
  /// the validation suite sets it to check that the moment checks notice.
  double alpha_shift = 0.0;
};

struct AdaptiveOptions {
  double deficit_target = 1e-6;
  long long initial_half_width = 64;
  long long max_half_width = 1048576;
  SolveOptions solve;
};

double residual_g(double eps, const ModelParams& p);
double residual_g(LadderPoint x, const ModelParams& p);

/// Sign-change brackets of g in every unit interval meeting the window.
/// With the monotonicity certificate each interval yields exactly one
/// bracket and the two pole-adjacent samples suffice; otherwise g is sampled
/// at `subsamples` points per interval.
BracketScan bracket_roots(const ModelParams& p, Window window, int subsamples = 64,
                          double pole_offset = 1e-9);

/// Brent refinement inside a sign-change bracket, carried out on the offset
/// from the ladder level nearest the bracket. Stops at |g| < tol or once the
/// bracket collapses to adjacent doubles in that offset.
/// Throws InvalidBracketError if g(lo) * g(hi) > 0.
LadderPoint refine_root(Bracket bracket, const ModelParams& p, double tol = 1e-12);

/// All eigenpairs with eps in the window.
Spectrum solve_spectrum(const ModelParams& p, Window window, const SolveOptions& opts = {});

/// Symmetric window grown (by doubling) until the weight deficit drops below
/// the target or the half-width cap is reached.
Spectrum solve_spectrum(const ModelParams& p, const AdaptiveOptions& opts = {});

/// |<phi|psi>|^2 for an eigenvector with eigenvalue eps.
double discrete_weight(double eps, const ModelParams& p);
double discrete_weight(LadderPoint x, const ModelParams& p);

/// <k|psi> for the eigenvector with eigenvalue eps (phase: <phi|psi> > 0).
double k_component(double eps, long long k, const ModelParams& p);

/// Leading-order displacement of the eigenvalue next to level n != 0 for
/// small a; O(a^2).
double near_integer_shift(long long n, const ModelParams& p);

/// True iff coth(pi a) <= pi a, in which case g is strictly decreasing on
/// every unit interval and holds exactly one root there.
bool monotonicity_certificate(const ModelParams& p);

// Finite ladder k = -n_cut..n_cut: the same secular equation with the sums
// taken over the truncated ladder. Its 2*n_cut + 2 roots are the exact
// eigenvalues of the corresponding dense matrix.
double truncated_residual(double eps, const ModelParams& p, long long n_cut);
double truncated_weight(double eps, const ModelParams& p, long long n_cut);
Spectrum solve_truncated_spectrum(const ModelParams& p, long long n_cut, double tol = 1e-13);

}  // namespace qladder
