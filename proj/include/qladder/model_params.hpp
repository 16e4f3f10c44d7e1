#pragma once

#include <cmath>
#include <numbers>

namespace qladder {

/// Parameters of the Lorentzian-coupled ladder model.
///
/// The discrete state sits at `e_phi`; ladder level k sits at k*delta and
/// couples to the discrete state with v_k = v / sqrt(1 + (k/a)^2).
/// Energies are dimensionful (hbar = 1); `a` is the resonance width in units
/// of the ladder spacing. `a` may be +inf, which is the flat-coupling limit.
struct ModelParams {
  double v = 0.0;
  double delta = 1.0;
  double a = 1.0;
  double e_phi = 0.0;

  /// Validating constructor. Throws DomainError unless delta > 0, a > 0 and
  /// v, e_phi are finite.
  static ModelParams make(double v, double delta, double a, double e_phi = 0.0);

  /// Parameters from the continuum description: decay rate big_gamma,
  /// resonance width gamma (both energies) at spacing delta.
  static ModelParams from_continuum(double big_gamma, double gamma, double delta,
                                    double e_phi = 0.0);

  double eps_phi() const { return e_phi / delta; }
  double gamma() const { return a * delta; }
  double big_gamma() const { return 2.0 * std::numbers::pi * v * v / delta; }
  double w() const { return std::sqrt(big_gamma() * gamma() / 2.0); }
  /// (v/delta)^2, the dimensionless coupling strength.
  double coupling_sq() const { return (v / delta) * (v / delta); }
  /// Coupling to ladder level k.
  double v_k(long long k) const;
};

}  // namespace qladder
