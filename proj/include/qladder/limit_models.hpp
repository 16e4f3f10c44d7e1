#pragma once

// Closed-form reference models the Lorentzian ladder reduces to:
//   rabi  two-level system {|phi>, |0>}            (a -> 0)
//   bj    flat coupling to the ladder              (a -> inf)
//   ww    flat coupling to a true continuum        (delta -> 0, a -> inf)
//   fano  Lorentzian coupling to a true continuum  (delta -> 0, gamma fixed)

#include <array>
#include <complex>
#include <variant>

#include "qladder/dynamics.hpp"
#include "qladder/spectral_solver.hpp"

namespace qladder {

struct RabiEigenvalues {
  double plus = 0.0;
  double minus = 0.0;
};

/// Eigenvalues of [[e1, v], [v, 0]].
RabiEigenvalues rabi_eigenvalues(double e1, double v);

/// Normalised eigenvector (E, v)/sqrt(E^2 + v^2) for eigenvalue E of
/// [[e1, v], [v, 0]]. Throws DegenerateError when E and v both vanish.
std::array<double, 2> rabi_eigenvector(double e_pm, double v);

/// Probability of remaining in the upper state of [[e_phi, v], [v, 0]].
double rabi_survival(double e_phi, double v, double t);

/// Flat-coupling ladder: roots of (pi v^2/delta) cot(pi E/delta) = E - e_phi
/// with weights v^2 / (v^2 + (Gamma/2)^2 + (E - e_phi)^2). Window in units of
/// delta. Solved with TOMS 748, independently of the general solver.
Spectrum bj_spectrum(double v, double delta, double e_phi, Window window);

/// exp(-Gamma t).
double ww_survival(double big_gamma, double t);

/// Level shift W^2 e / (e^2 + gamma^2) of the Lorentzian continuum.
double fano_F(double e, double w, double gamma);

/// Discrete-state spectral density of the Lorentzian continuum (1/energy).
double fano_alpha_sq(double e, double w, double gamma, double e_phi = 0.0);

struct FanoPoles {
  std::complex<double> plus;
  std::complex<double> minus;
  bool degenerate = false;  ///< gamma == 2W: double pole at -iW
};

/// E_pm = (-i gamma +- sqrt(4 W^2 - gamma^2)) / 2.
FanoPoles fano_poles(double w, double gamma);

/// Survival of the discrete state for the Lorentzian continuum with
/// e_phi = 0. Throws DegenerateError within 1e-9 of gamma = 2W.
double fano_survival(double w, double gamma, double t);

struct RabiLimit {
  double e1 = 0.0;
  double v = 0.0;
};
struct BjLimit {
  double v = 0.0;
  double delta = 1.0;
  double e_phi = 0.0;
};
struct WwLimit {
  double big_gamma = 0.0;
};
struct FanoLimit {
  double w = 0.0;
  double gamma = 0.0;
  double e_phi = 0.0;
};

using LimitSpec = std::variant<RabiLimit, BjLimit, WwLimit, FanoLimit>;

const char* limit_name(const LimitSpec& spec);

/// Validates the kind-specific invariants (positive delta, gamma, Gamma).
void validate(const LimitSpec& spec);

/// Reference survival curve on t_j = j t_max / n_steps. The BJ curve is
/// built from bj_spectrum over a window of +-bj_half_width levels.
TimeSeries limit_series(const LimitSpec& spec, double t_max, int n_steps = 2000,
                        long long bj_half_width = 20000);

}  // namespace qladder
