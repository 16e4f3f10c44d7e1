#include "qladder/special_sums.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qladder/compensated_sum.hpp"
#include "qladder/errors.hpp"

namespace qladder {
namespace {

constexpr double kPi = std::numbers::pi;

void require_width(double a) {
  if (!(a > 0.0)) {
    std::ostringstream msg;
    msg << "resonance width must be positive, got " << a;
    throw DomainError(msg.str());
  }
}

// Offset from the nearest level; throws inside the pole guard.
double reduced(LadderPoint x) {
  if (!(std::abs(x.offset) >= kPoleGuard)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "evaluation at ladder pole: level " << x.level << ", offset " << x.offset;
    throw PoleError(msg.str());
  }
  return x.offset;
}

double reduced(double eps) { return reduced(LadderPoint::split(eps)); }

}  // namespace

double coth(double x) {
  if (x > 19.0) return 1.0;
  return 1.0 + 2.0 / std::expm1(2.0 * x);
}

double pole_distance(double eps) { return std::abs(eps - std::nearbyint(eps)); }

LadderPoint LadderPoint::split(double eps) {
  if (!std::isfinite(eps)) throw DomainError("ladder point must be finite");
  const double m = std::nearbyint(eps);
  return {static_cast<long long>(m), eps - m};
}

double cot_pi(LadderPoint x) {
  const double r = reduced(x);
  return std::cos(kPi * r) / std::sin(kPi * r);
}

double csc2_pi(LadderPoint x) {
  const double s = std::sin(kPi * reduced(x));
  return 1.0 / (s * s);
}

double cot_pi(double eps) { return cot_pi(LadderPoint::split(eps)); }

double csc2_pi(double eps) { return csc2_pi(LadderPoint::split(eps)); }

double alpha(double a) {
  require_width(a);
  if (std::isinf(a)) return 0.0;
  return coth(kPi * a) / a;
}

double lorentz_sum(double a) { return kPi * alpha(a); }

double s1_partial(double eps, double a, long long n_cut) {
  require_width(a);
  if (n_cut < 1) throw DomainError("n_cut must be at least 1");
  reduced(eps);
  // Pair k with -k and add the small far terms first.
  NeumaierSum sum;
  for (long long k = n_cut; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    const double r = kd / a;
    const double f = 1.0 / (1.0 + r * r);
    sum += f * (1.0 / (eps - kd) + 1.0 / (eps + kd));
  }
  sum += 1.0 / eps;
  return sum.value();
}

double s1_closed(LadderPoint p, double a) {
  const double al = alpha(a);
  const double eps = p.value();
  const double x = eps / a;
  return kPi * (cot_pi(p) + eps * al) / (1.0 + x * x);
}

double s2_trig(LadderPoint p, double a) {
  const double al = alpha(a);
  const double eps = p.value();
  const double x = eps / a;
  const double q = 1.0 + x * x;
  const double cross = std::isinf(a) ? 0.0 : 2.0 * eps / (a * a) * (cot_pi(p) + al * eps) / q;
  return kPi / q * (kPi * csc2_pi(p) - al + cross);
}

double s1_closed(double eps, double a) { return s1_closed(LadderPoint::split(eps), a); }

double s2_trig(double eps, double a) { return s2_trig(LadderPoint::split(eps), a); }

double cot_rational(double eps, const ModelParams& p) {
  const double x = eps / p.a;
  const double scale = p.delta * p.delta / (kPi * p.v * p.v);
  return scale * (1.0 + x * x) * (eps - p.eps_phi()) - eps * alpha(p.a);
}

double s2_rational(double eps, const ModelParams& p) {
  const double c = cot_rational(eps, p);
  const double al = alpha(p.a);
  const double x = eps / p.a;
  const double q = 1.0 + x * x;
  const double cross = std::isinf(p.a) ? 0.0 : 2.0 * eps / (p.a * p.a) * (eps * al + c) / q;
  return kPi / q * (kPi * (1.0 + c * c) - al + cross);
}

}  // namespace qladder
