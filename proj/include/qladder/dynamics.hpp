#pragma once

#include <complex>
#include <vector>

#include "qladder/spectral_solver.hpp"

namespace qladder {

/// Survival of the discrete state on a uniform time grid (hbar = 1).
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> probs;
  std::vector<std::complex<double>> amps;  ///< empty unless requested
  ModelParams params;
  double norm_deficit = 0.0;
  bool renormalized = false;
};

/// <phi|psi(t)> = sum_mu w_mu exp(-i E_mu t).
std::complex<double> survival_amplitude(const Spectrum& s, double t);

/// P(t) = |<phi|psi(t)>|^2 at t_j = j t_max / n_steps, j = 0..n_steps.
/// With `renormalize` the curve is divided by (sum of weights)^2, which hides
/// the truncation deficit; off by default.
TimeSeries survival_series(const Spectrum& s, double t_max, int n_steps = 2000,
                           bool renormalize = false, bool keep_amplitudes = false);

/// sum_mu w_mu eps_mu^order for order 0, 1 or 2.
double moment(const Spectrum& s, int order);

/// Contribution to moment(order) of the eigenpairs outside the window. Each
/// far ladder level k carries one eigenpair at k + O((v_k/delta)^2 / k); its
/// weight (v_k/delta)^2/(k - eps_phi)^2 is corrected for level repulsion to
/// the next order. The window must contain 0; finite a only.
double moment_tail(const ModelParams& p, Window window, int order);

}  // namespace qladder
