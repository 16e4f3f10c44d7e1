#include "qladder/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "qladder/errors.hpp"

namespace qladder {

DenseSystem build_hamiltonian(const ModelParams& p, long long n_cut) {
  if (n_cut < 1) throw DomainError("n_cut must be at least 1");
  DenseSystem d;
  d.params = p;
  d.n_cut = n_cut;
  d.dim = static_cast<std::size_t>(2 * n_cut + 2);
  d.matrix.assign(d.dim * d.dim, 0.0);
  d.matrix[0] = p.e_phi;
  for (std::size_t i = 1; i < d.dim; ++i) {
    const long long k = d.level(i);
    const double vk = p.v_k(k);
    d.matrix[i * d.dim + i] = static_cast<double>(k) * p.delta;
    d.matrix[i] = vk;
    d.matrix[i * d.dim] = vk;
  }
  return d;
}

Eigensystem jacobi_eigen(std::span<const double> symmetric, std::size_t n, double off_tol,
                         int max_sweeps) {
  if (symmetric.size() != n * n) throw DomainError("jacobi_eigen: matrix size mismatch");
  std::vector<double> a(symmetric.begin(), symmetric.end());
  double norm_sq = 0.0;
  for (double x : a) norm_sq += x * x;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-12 * std::sqrt(norm_sq))
        throw DomainError("jacobi_eigen: matrix is not symmetric");
    }
  }

  std::vector<double> vt(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;

  auto rotate_rows = [n](std::vector<double>& m, std::size_t p, std::size_t q, double c,
                         double s) {
    double* rp = m.data() + p * n;
    double* rq = m.data() + q * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = rp[k];
      const double y = rq[k];
      rp[k] = c * x - s * y;
      rq[k] = s * x + c * y;
    }
  };

  const double threshold = off_tol * std::sqrt(norm_sq);
  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    }
    if (std::sqrt(2.0 * off) <= threshold) break;
    if (sweep >= max_sweeps) throw ConvergenceError("jacobi_eigen: sweep budget exhausted");

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
          a[p * n + q] = 0.0;
          a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        rotate_rows(a, p, q, c, s);
        for (std::size_t k = 0; k < n; ++k) {
          a[k * n + p] = a[p * n + k];
          a[k * n + q] = a[q * n + k];
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        rotate_rows(vt, p, q, c, s);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  Eigensystem es;
  es.dim = n;
  es.sweeps = sweep;
  es.values.resize(n);
  es.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    es.values[j] = a[order[j] * n + order[j]];
    std::copy_n(vt.begin() + static_cast<std::ptrdiff_t>(order[j] * n), n,
                es.vectors.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  return es;
}

Eigensystem diagonalize(const DenseSystem& d, double off_tol, int max_sweeps) {
  if (!(off_tol > 0.0)) throw DomainError("off_tol must be positive");
  return jacobi_eigen(d.matrix, d.dim, off_tol, max_sweeps);
}

TimeSeries oracle_survival(const DenseSystem& d, const Eigensystem& es, double t_max,
                           int n_steps) {
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  if (n_steps < 1) throw DomainError("n_steps must be positive");
  TimeSeries ts;
  ts.params = d.params;
  const auto points = static_cast<std::size_t>(n_steps) + 1;
  ts.times.resize(points);
  ts.probs.resize(points);
  std::vector<double> weights(es.dim);
  for (std::size_t j = 0; j < es.dim; ++j) {
    const double q0 = es.vectors[j * es.dim];
    weights[j] = q0 * q0;
  }
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) * t_max / n_steps;
    std::complex<double> amp{0.0, 0.0};
    for (std::size_t j = 0; j < es.dim; ++j) amp += weights[j] * std::polar(1.0, -es.values[j] * t);
    ts.times[i] = t;
    ts.probs[i] = std::norm(amp);
  }
  return ts;
}

TimeSeries oracle_survival(const ModelParams& p, long long n_cut, double t_max, int n_steps) {
  const DenseSystem d = build_hamiltonian(p, n_cut);
  return oracle_survival(d, diagonalize(d), t_max, n_steps);
}

std::vector<double> oracle_populations(const Eigensystem& es, double t) {
  const std::size_t n = es.dim;
  std::vector<std::complex<double>> psi(n, {0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    const auto vec = es.vector(j);
    const std::complex<double> coeff = vec[0] * std::polar(1.0, -es.values[j] * t);
    for (std::size_t i = 0; i < n; ++i) psi[i] += coeff * vec[i];
  }
  std::vector<double> pops(n);
  for (std::size_t i = 0; i < n; ++i) pops[i] = std::norm(psi[i]);
  return pops;
}

}  // namespace qladder
