#include "qladder/model_params.hpp"

#include <string>

#include "qladder/errors.hpp"

namespace qladder {

ModelParams ModelParams::make(double v, double delta, double a, double e_phi) {
  if (!std::isfinite(v)) throw DomainError("coupling v must be finite");
  if (!std::isfinite(e_phi)) throw DomainError("e_phi must be finite");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw DomainError("ladder spacing delta must be positive, got " + std::to_string(delta));
  if (!(a > 0.0)) throw DomainError("resonance width a must be positive, got " + std::to_string(a));
  return ModelParams{v, delta, a, e_phi};
}

ModelParams ModelParams::from_continuum(double big_gamma, double gamma, double delta,
                                        double e_phi) {
  if (!(big_gamma > 0.0)) throw DomainError("decay rate must be positive");
  if (!(gamma > 0.0)) throw DomainError("resonance width gamma must be positive");
  if (!(delta > 0.0)) throw DomainError("ladder spacing delta must be positive");
  const double v = std::sqrt(big_gamma * delta / (2.0 * std::numbers::pi));
  return make(v, delta, gamma / delta, e_phi);
}

double ModelParams::v_k(long long k) const {
  const double r = static_cast<double>(k) / a;
  return v / std::sqrt(1.0 + r * r);
}

}  // namespace qladder
