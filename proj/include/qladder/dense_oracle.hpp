#pragma once

// Brute-force reference: the ladder truncated to k = -n_cut..n_cut as a dense
// (2 n_cut + 2)-dimensional symmetric matrix, diagonalised by cyclic Jacobi
// plane rotations.

#include <cstddef>
#include <span>
#include <vector>

#include "qladder/dynamics.hpp"
#include "qladder/model_params.hpp"

namespace qladder {

/// Basis order [phi, k = -n_cut, ..., n_cut]; row-major storage.
struct DenseSystem {
  ModelParams params;
  long long n_cut = 0;
  std::size_t dim = 0;
  std::vector<double> matrix;

  double operator()(std::size_t i, std::size_t j) const { return matrix[i * dim + j]; }
  /// Ladder index of basis row i >= 1.
  long long level(std::size_t i) const { return static_cast<long long>(i) - 1 - n_cut; }
};

DenseSystem build_hamiltonian(const ModelParams& p, long long n_cut);

struct Eigensystem {
  std::size_t dim = 0;
  std::vector<double> values;  ///< ascending
  /// vectors[j * dim + i] = component i of eigenvector j (one row per vector).
  std::vector<double> vectors;
  int sweeps = 0;

  std::span<const double> vector(std::size_t j) const {
    return {vectors.data() + j * dim, dim};
  }
};

/// Cyclic Jacobi on a symmetric row-major n x n matrix. Converges when the
/// off-diagonal Frobenius norm drops below off_tol times the matrix norm.
/// Throws ConvergenceError after max_sweeps.
Eigensystem jacobi_eigen(std::span<const double> symmetric, std::size_t n, double off_tol = 1e-15,
                         int max_sweeps = 100);

Eigensystem diagonalize(const DenseSystem& d, double off_tol = 1e-15, int max_sweeps = 100);

/// Survival of |phi> from the dense eigensystem, P(t) = |sum_j e^{-i l_j t} Q_0j^2|^2.
TimeSeries oracle_survival(const ModelParams& p, long long n_cut, double t_max, int n_steps = 2000);
TimeSeries oracle_survival(const DenseSystem& d, const Eigensystem& es, double t_max,
                           int n_steps = 2000);

/// |<basis i|psi(t)>|^2 for every basis state, starting from |phi>.
std::vector<double> oracle_populations(const Eigensystem& es, double t);

}  // namespace qladder
