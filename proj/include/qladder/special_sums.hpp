#pragma once

// Closed forms of the ladder sums
//
//   S1(eps, a) = sum_k 1/(1 + (k/a)^2) * 1/(eps - k)
//   S2(eps, a) = sum_k 1/(1 + (k/a)^2) * 1/(eps - k)^2 = -dS1/deps
//
// together with the symmetric partial sum that serves as their brute-force
// reference. All functions are pure.

#include "qladder/model_params.hpp"

namespace qladder {

/// Points closer than this to an integer are treated as ladder poles.
inline constexpr double kPoleGuard = 1e-12;

/// coth(x) for x > 0, evaluated as 1 + 2/(e^{2x} - 1); exactly 1 past x = 19.
double coth(double x);

/// Distance from eps to the nearest integer (exact in floating point).
double pole_distance(double eps);

/// A point on the real line held as nearest ladder level plus offset. Roots
/// far out on the ladder can sit within 1e-9 of a level; storing the offset
/// separately keeps its full relative precision, which eps = level + offset
/// rounded to a double would lose.
struct LadderPoint {
  long long level = 0;
  double offset = 0.0;  ///< in [-1/2, 1/2]

  static LadderPoint split(double eps);
  double value() const { return static_cast<double>(level) + offset; }
};

/// cot(pi*eps) using the argument reduced to the nearest integer.
/// Throws PoleError within kPoleGuard of an integer.
double cot_pi(double eps);

/// csc^2(pi*eps); same pole guard as cot_pi.
double csc2_pi(double eps);

double cot_pi(LadderPoint x);
double csc2_pi(LadderPoint x);

/// alpha(a) = coth(pi a)/a. alpha(+inf) = 0.
double alpha(double a);

/// sum_k 1/(a^2 + k^2) = (pi/a) coth(pi a).
double lorentz_sum(double a);

/// Symmetric partial sum of S1 over k = -n_cut..n_cut.
double s1_partial(double eps, double a, long long n_cut);

double s1_closed(double eps, double a);
double s1_closed(LadderPoint x, double a);

/// S2 in its trigonometric form; strictly positive off the poles.
double s2_trig(double eps, double a);
double s2_trig(LadderPoint x, double a);

/// The value cot(pi*eps) takes on the solution set of the eigenvalue
/// equation, written as a rational function of eps. Off the solution set it
/// is just a rational function with no relation to cot.
double cot_rational(double eps, const ModelParams& p);

/// S2 with cot replaced by cot_rational. Agrees with s2_trig only at
/// eigenvalues.
double s2_rational(double eps, const ModelParams& p);

}  // namespace qladder
