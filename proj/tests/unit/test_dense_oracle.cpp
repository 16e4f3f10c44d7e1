#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qladder/dense_oracle.hpp"
#include "qladder/errors.hpp"
#include "qladder/spectral_solver.hpp"

using namespace qladder;

TEST_CASE("matrix layout") {
  const DenseSystem d = build_hamiltonian(ModelParams::make(0.16, 1.0, 20.0, 0.1), 300);
  CHECK(d.dim == 602);
  CHECK(d(0, 0) == 0.1);
  CHECK(d.level(1) == -300);
  CHECK(d.level(601) == 300);
  CHECK(d(301, 301) == 0.0);
  CHECK(d(1, 1) == -300.0);
  CHECK(d(0, 301) == doctest::Approx(0.16));
  CHECK(d(0, 321) == doctest::Approx(0.16 / std::sqrt(2.0)));
  CHECK(d(5, 7) == 0.0);
  const DenseSystem flat = build_hamiltonian(ModelParams::make(0.16, 1.0, 1e9), 300);
  for (std::size_t i = 1; i < flat.dim; ++i) CHECK(flat(0, i) == doctest::Approx(0.16).epsilon(1e-12));
  CHECK_THROWS_AS(build_hamiltonian(ModelParams::make(0.16, 1.0, 1.0), 0), DomainError);
}

TEST_CASE("small and trivial matrices") {
  const std::vector<double> two{0.0, 0.3, 0.3, 0.0};
  const Eigensystem es = jacobi_eigen(two, 2);
  CHECK(es.values[0] == doctest::Approx(-0.3));
  CHECK(es.values[1] == doctest::Approx(0.3));
  CHECK(std::abs(es.vector(1)[0]) == doctest::Approx(std::sqrt(0.5)));

  const DenseSystem d = build_hamiltonian(ModelParams::make(0.0, 1.0, 1.0, 0.25), 5);
  const Eigensystem z = diagonalize(d);
  CHECK(z.sweeps == 0);
  for (std::size_t j = 0; j < z.dim; ++j) {
    const auto vec = z.vector(j);
    CHECK(std::count(vec.begin(), vec.end(), 0.0) == static_cast<long>(z.dim - 1));
  }
  CHECK(z.values[5] == -0.0);
  CHECK(z.values[6] == 0.25);

  CHECK_THROWS_AS(jacobi_eigen(std::vector<double>{0.0, 1.0, 2.0, 0.0}, 2), DomainError);
  CHECK_THROWS_AS(jacobi_eigen(two, 3), DomainError);
  CHECK_THROWS_AS(diagonalize(d, 0.0), DomainError);
  const DenseSystem big = build_hamiltonian(ModelParams::make(0.5, 1.0, 3.0), 20);
  CHECK_THROWS_AS(diagonalize(big, 1e-15, 0), ConvergenceError);
}

TEST_CASE("agrees with a library eigensolver; orthonormal; reconstructs H") {
  const DenseSystem d = build_hamiltonian(ModelParams::make(0.39, 1.0, 1.25, 0.3), 60);
  const Eigensystem es = diagonalize(d);
  const auto n = static_cast<Eigen::Index>(d.dim);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> h(
      d.matrix.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(h);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> vt(
      es.vectors.data(), n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CHECK(es.values[j] == doctest::Approx(ref.eigenvalues()(j)).epsilon(1e-12).scale(1.0));
    CHECK(std::abs(vt.row(j).dot(ref.eigenvectors().col(j))) == doctest::Approx(1.0).epsilon(1e-9));
  }
  const Eigen::MatrixXd q = vt.transpose();
  const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(es.values.data(), n);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((q * lam.asDiagonal() * q.transpose() - h).cwiseAbs().maxCoeff() < 1e-10 * h.cwiseAbs().maxCoeff());
}

TEST_CASE("full ladder: 602 states, complete basis, unitary evolution") {
  const ModelParams p = ModelParams::make(0.16, 1.0, 20.0);
  const DenseSystem d = build_hamiltonian(p, 300);
  const Eigensystem es = diagonalize(d);
  const TimeSeries ts = oracle_survival(d, es, 20.0, 40);
  CHECK(ts.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (double t : {0.0, 1.0, 7.5, 20.0}) {
    double total = 0.0;
    for (double x : oracle_populations(es, t)) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
  // Its eigenvalues are the roots of the truncated secular equation, and every
  // unit interval well inside the ladder holds exactly one.
  const Spectrum tr = solve_truncated_spectrum(p, 300);
  REQUIRE(tr.pairs.size() == es.dim);
  for (std::size_t j = 0; j < es.dim; ++j) CHECK(es.values[j] == doctest::Approx(tr.pairs[j].eps).epsilon(1e-9).scale(1.0));
  for (long long n = -200; n < 200; ++n) {
    const auto in = std::count_if(es.values.begin(), es.values.end(),
                                  [n](double x) { return x > n && x < n + 1; });
    CHECK(in == 1);
  }
  CHECK_THROWS_AS(oracle_survival(d, es, 0.0, 10), DomainError);
}

TEST_CASE("interior eigenvalues barely move when the ladder doubles") {
  // Figure presets with a finite ladder, N = 150 against N = 300. The
  // truncated secular roots coincide with the dense eigenvalues (above), so
  // they stand in for the two diagonalisations.
  for (double v : {0.16, 0.39}) {
    for (double a : {0.1, 1.0, 5.0, 20.0}) {
      const ModelParams p = ModelParams::make(v, 1.0, a);
      const Spectrum s150 = solve_truncated_spectrum(p, 150);
      const Spectrum s300 = solve_truncated_spectrum(p, 300);
      double drift = 0.0;
      for (const EigenPair& e : s150.pairs) {
        if (std::abs(e.eps) > 50.0) continue;
        double best = INFINITY;
        for (const EigenPair& f : s300.pairs) best = std::min(best, std::abs(f.eps - e.eps));
        drift = std::max(drift, best);
      }
      INFO("v = " << v << ", a = " << a << ", drift = " << drift);
      CHECK(drift < 1e-6);
    }
  }
}
