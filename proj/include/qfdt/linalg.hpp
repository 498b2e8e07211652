// SPDX-License-Identifier: Apache-2.0
//
// Dense real symmetric linear algebra for small density operators:
// Jacobi eigendecomposition, matrix square root, partial trace,
// von Neumann entropy, and Uhlmann fidelity. Everything here is a pure
// function over value types and safe to call from multiple threads.
#pragma once

#include <cstddef>
#include <vector>

#include "qfdt/error.hpp"

namespace qfdt {

// Eigenvalues below this magnitude are treated as exact zeros (round-off
// floor for partial traces of projectors); anything below kPsdErrorFloor
// signals an upstream construction bug and raises NotPsd.
inline constexpr double kPsdClampFloor = -1e-10;
inline constexpr double kPsdErrorFloor = -1e-8;

/// Dense real symmetric matrix, row-major, symmetry enforced at construction.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);
  SymMatrix(std::size_t dim, std::vector<double> entries);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(const std::vector<double>& diag);

  std::size_t dim() const noexcept { return dim_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    entries_[i * dim_ + j] = v;
    entries_[j * dim_ + i] = v;
  }

  double trace() const noexcept;
  const std::vector<double>& data() const noexcept { return entries_; }

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

/// Unit-trace PSD refinement of SymMatrix. Construction checks the trace
/// (within 1e-9); positive semidefiniteness is enforced by the spectral
/// operations below and checkable explicitly via validate().
class DensityOperator {
 public:
  explicit DensityOperator(SymMatrix matrix);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  double at(std::size_t i, std::size_t j) const { return matrix_.at(i, j); }
  const SymMatrix& matrix() const noexcept { return matrix_; }

  /// Raises NotPsd if any eigenvalue is below the -1e-8 error floor.
  void validate() const;

 private:
  SymMatrix matrix_;
};

struct EighResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> vectors;      // row-major, column k = eigenvector of eigenvalues[k]
};

/// Cyclic Jacobi eigendecomposition. Converges when the off-diagonal
/// Frobenius norm drops below 1e-12 (at most 100 sweeps) -- plenty for the
/// tiny unit-trace matrices this toolkit produces.
EighResult eigh(const SymMatrix& m, bool want_vectors = true);

enum class Subsystem { X, Y };

/// Principal square root via eigendecomposition; eigenvalues in
/// [-1e-10, 0) are clamped to zero first.
SymMatrix matrix_sqrt(const DensityOperator& m);

/// Reduced operator of a bipartite state laid out |X_i Y_j> with j
/// fastest-varying; rho.dim() must equal dim_x * dim_y.
DensityOperator partial_trace(const DensityOperator& rho, std::size_t dim_x,
                              std::size_t dim_y, Subsystem keep);

/// Uhlmann fidelity tr sqrt(sqrt(a) b sqrt(a)), clamped into [0, 1].
double fidelity(const DensityOperator& a, const DensityOperator& b);

/// -sum_k lambda_k log2(lambda_k), in bits; eigenvalues below 1e-12 skipped.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace qfdt
