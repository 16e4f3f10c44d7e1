#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qladder/errors.hpp"
#include "qladder/limit_models.hpp"
#include "qladder/spectral_solver.hpp"

using namespace qladder;

TEST_CASE("two-level eigenpairs") {
  const RabiEigenvalues r0 = rabi_eigenvalues(0.0, 1.0);
  CHECK(r0.plus == 1.0);
  CHECK(r0.minus == -1.0);
  const RabiEigenvalues r1 = rabi_eigenvalues(3.0, 2.0);
  CHECK(r1.plus == doctest::Approx(4.0));
  CHECK(r1.minus == doctest::Approx(-1.0));
  const auto u = rabi_eigenvector(1.0, 1.0);
  CHECK(u[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(u[1] == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(rabi_eigenvector(0.0, 0.0), DegenerateError);

  // Against a library eigensolver, including the propagator.
  for (double e1 : {-0.7, 0.0, 0.3, 2.5}) {
    for (double v : {0.05, 0.16, 1.0}) {
      Eigen::Matrix2d h;
      h << e1, v, v, 0.0;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
      const RabiEigenvalues r = rabi_eigenvalues(e1, v);
      CHECK(r.minus == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-13).scale(1.0));
      CHECK(r.plus == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-13).scale(1.0));
      const auto vp = rabi_eigenvector(r.plus, v);
      CHECK(std::abs(vp[0] * es.eigenvectors()(0, 1) + vp[1] * es.eigenvectors()(1, 1)) ==
            doctest::Approx(1.0).epsilon(1e-12));
      for (double t : {0.0, 0.7, 3.3, 19.0}) {
        std::complex<double> amp{0.0, 0.0};
        for (int j = 0; j < 2; ++j) {
          const double c = es.eigenvectors()(0, j);
          amp += c * c * std::polar(1.0, -es.eigenvalues()(j) * t);
        }
        CHECK(rabi_survival(e1, v, t) == doctest::Approx(std::norm(amp)).epsilon(1e-12).scale(1.0));
      }
    }
  }
  CHECK(rabi_survival(0.0, 0.16, 2.0) == doctest::Approx(std::pow(std::cos(0.32), 2)));
  CHECK(rabi_survival(0.0, 0.16, std::numbers::pi / 0.32) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(rabi_survival(0.0, 0.16, -1.0), DomainError);
}

TEST_CASE("flat-coupling ladder") {
  const Spectrum s = bj_spectrum(0.39, 1.0, 0.3, Window{-20000.5, 20000.5});
  // Intervals -20001..20000 each hold one root inside the window.
  CHECK(s.pairs.size() == 40002);
  CHECK(s.unresolved == 0);
  double total = 0.0;
  for (const EigenPair& e : s.pairs) {
    CHECK(e.eps > static_cast<double>(*e.interval));
    CHECK(e.eps < static_cast<double>(*e.interval) + 1.0);
    total += e.weight;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-5));
  // Reference root in (0, 1) to 20 digits.
  const EigenPair* mid = nullptr;
  for (const EigenPair& e : s.pairs)
    if (*e.interval == 0) mid = &e;
  REQUIRE(mid);
  CHECK(mid->eps == doctest::Approx(0.42103412843608515878).epsilon(1e-13));
  CHECK(mid->weight == doctest::Approx(0.38498850103240815442).epsilon(1e-12));

  // The general solver approaches these roots and weights as a grows.
  const Spectrum g = solve_spectrum(ModelParams::make(0.39, 1.0, 1e4, 0.3), Window{-10.0, 10.0});
  const Spectrum b = bj_spectrum(0.39, 1.0, 0.3, Window{-10.0, 10.0});
  REQUIRE(g.pairs.size() == b.pairs.size());
  for (std::size_t i = 0; i < g.pairs.size(); ++i) {
    CHECK(g.pairs[i].eps == doctest::Approx(b.pairs[i].eps).epsilon(1e-4));
    CHECK(g.pairs[i].weight == doctest::Approx(b.pairs[i].weight).epsilon(1e-4).scale(1.0));
  }
  CHECK_THROWS_AS(bj_spectrum(0.39, 0.0, 0.3, Window{-1.0, 1.0}), DomainError);
}

TEST_CASE("exponential decay") {
  CHECK(ww_survival(0.5, 0.0) == 1.0);
  CHECK(ww_survival(0.5, 2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(ww_survival(0.5, std::log(2.0) / 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ww_survival(0.0, 1.0), DomainError);
}

TEST_CASE("Lorentzian continuum: shift, density and poles") {
  CHECK(fano_F(0.0, 2.0, 0.5) == 0.0);
  CHECK(fano_F(0.5, 2.0, 0.5) == doctest::Approx(4.0 / 1.0));
  CHECK(fano_F(1e7, 2.0, 0.5) * 1e7 == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(fano_F(-0.3, 2.0, 0.5) == -fano_F(0.3, 2.0, 0.5));

  const FanoPoles p = fano_poles(1.75, 0.5);
  CHECK(p.plus.real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(p.minus.real() == doctest::Approx(-std::sqrt(3.0)));
  CHECK(p.plus.imag() == doctest::Approx(-0.25));
  CHECK_FALSE(p.degenerate);
  const FanoPoles over = fano_poles(8.66, 300.0);
  CHECK(over.plus.real() == 0.0);
  CHECK(over.plus.imag() < 0.0);
  CHECK(over.minus.imag() < 0.0);
  CHECK(fano_poles(1.0, 2.0).degenerate);
  CHECK_THROWS_AS(fano_survival(1.0, 2.0, 1.0), DegenerateError);
  CHECK_THROWS_AS(fano_poles(1.0, 0.0), DomainError);
}

TEST_CASE("Lorentzian continuum survival is the Fourier transform of the density") {
  struct Case {
    double w, gamma;
  };
  for (const Case c : {Case{1.75, 0.5}, Case{std::sqrt(75.0), 300.0}, Case{0.86, 0.5}, Case{1.0, 0.3}}) {
    // Adaptive Gauss-Kronrod on the whole real line, split at the origin so
    // the overdamped peak sits at a panel edge.
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto integral = [](auto f) {
      const double inf = std::numeric_limits<double>::infinity();
      return GK::integrate(f, -inf, 0.0, 15, 1e-10) + GK::integrate(f, 0.0, inf, 15, 1e-10);
    };
    const double norm = integral([&](double e) { return fano_alpha_sq(e, c.w, c.gamma); });
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-4));
    for (int j = 0; j <= 20; ++j) {
      const double t = 0.3 * j;
      const double re = integral([&](double e) { return fano_alpha_sq(e, c.w, c.gamma) * std::cos(e * t); });
      const double im = integral([&](double e) { return fano_alpha_sq(e, c.w, c.gamma) * std::sin(e * t); });
      CHECK(fano_survival(c.w, c.gamma, t) == doctest::Approx(re * re + im * im).epsilon(1e-4).scale(1.0));
    }
    CHECK(fano_survival(c.w, c.gamma, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("limit dispatch") {
  CHECK(std::string(limit_name(WwLimit{1.0})) == "ww");
  CHECK(std::string(limit_name(FanoLimit{1.0, 0.5})) == "fano");
  const TimeSeries ww = limit_series(WwLimit{0.5}, 4.0, 8);
  CHECK(ww.probs[4] == doctest::Approx(std::exp(-1.0)));
  const TimeSeries bj = limit_series(BjLimit{0.16, 1.0, 0.0}, 2.0, 4, 2000);
  CHECK(bj.probs[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(limit_series(FanoLimit{1.0, 0.5, 0.2}, 1.0, 4), DomainError);
  CHECK_THROWS_AS(limit_series(WwLimit{-1.0}, 1.0, 4), DomainError);
  CHECK_THROWS_AS(limit_series(RabiLimit{0.0, 1.0}, 0.0, 4), DomainError);
}
