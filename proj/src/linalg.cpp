// SPDX-License-Identifier: Apache-2.0
#include "qfdt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qfdt {

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {
  if (dim == 0) raise(ErrorCode::InvalidArgument, "SymMatrix dimension must be >= 1");
}

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) raise(ErrorCode::InvalidArgument, "SymMatrix dimension must be >= 1");
  if (entries_.size() != dim * dim)
    raise(ErrorCode::DimensionMismatch,
          "SymMatrix entries size " + std::to_string(entries_.size()) +
              " does not match dim " + std::to_string(dim));
  // Make the symmetry exact; inputs may carry round-off skew.
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      double v = 0.5 * (entries_[i * dim_ + j] + entries_[j * dim_ + i]);
      entries_[i * dim_ + j] = v;
      entries_[j * dim_ + i] = v;
    }
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.entries_[i * diag.size() + i] = diag[i];
  return m;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

DensityOperator::DensityOperator(SymMatrix matrix) : matrix_(std::move(matrix)) {
  double tr = matrix_.trace();
  if (std::abs(tr - 1.0) > 1e-9)
    raise(ErrorCode::InvalidArgument,
          "density operator trace " + std::to_string(tr) + " is not 1");
}

void DensityOperator::validate() const {
  EighResult eig = eigh(matrix_, /*want_vectors=*/false);
  if (eig.eigenvalues.front() < kPsdErrorFloor)
    raise(ErrorCode::NotPsd, "density operator has eigenvalue " +
                                 std::to_string(eig.eigenvalues.front()));
}

EighResult eigh(const SymMatrix& m, bool want_vectors) {
  const std::size_t n = m.dim();
  std::vector<double> a = m.data();
  std::vector<double> v;
  if (want_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  auto off_frobenius = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 100;
  constexpr double kOffTol = 1e-12;
  for (int sweep = 0; sweep < kMaxSweeps && off_frobenius() >= kOffTol; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (apq == 0.0) continue;
        double theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double tau = s / (1.0 + c);

        double app = a[p * n + p], aqq = a[q * n + q];
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = akp - s * (akq + tau * akp);
          a[p * n + k] = a[k * n + p];
          a[k * n + q] = akq + s * (akp - tau * akq);
          a[q * n + k] = a[k * n + q];
        }
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            double vkp = v[k * n + p], vkq = v[k * n + q];
            v[k * n + p] = vkp - s * (vkq + tau * vkp);
            v[k * n + q] = vkq + s * (vkp - tau * vkq);
          }
        }
      }
    }
  }

  EighResult out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a[i * n + i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return out.eigenvalues[x] < out.eigenvalues[y];
  });
  std::vector<double> sorted_vals(n);
  for (std::size_t i = 0; i < n; ++i) sorted_vals[i] = out.eigenvalues[order[i]];
  out.eigenvalues = std::move(sorted_vals);
  if (want_vectors) {
    out.vectors.assign(n * n, 0.0);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t row = 0; row < n; ++row)
        out.vectors[row * n + col] = v[row * n + order[col]];
  }
  return out;
}

namespace {

// s * b * s. The intermediate s*b is not symmetric, so it lives in a raw
// buffer; the sandwich itself is, up to round-off absorbed by the ctor.
SymMatrix sandwich(const SymMatrix& s, const SymMatrix& b) {
  const std::size_t n = s.dim();
  std::vector<double> sb(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double sik = s.at(i, k);
      if (sik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) sb[i * n + j] += sik * b.at(k, j);
    }
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double v = sb[i * n + k];
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += v * s.at(k, j);
    }
  return SymMatrix(n, std::move(out));
}

// V f(D) V^T for the spectral decomposition of m.
SymMatrix spectral_apply(const EighResult& eig, std::size_t n,
                         double (*f)(double)) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double fv = f(eig.eigenvalues[k]);
    if (fv == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      double vik = eig.vectors[i * n + k];
      for (std::size_t j = i; j < n; ++j) {
        out[i * n + j] += fv * vik * eig.vectors[j * n + k];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out[i * n + j] = out[j * n + i];
  return SymMatrix(n, std::move(out));
}

void check_psd(const std::vector<double>& eigenvalues, const char* what) {
  if (!eigenvalues.empty() && eigenvalues.front() < kPsdErrorFloor)
    raise(ErrorCode::NotPsd, std::string(what) + ": eigenvalue " +
                                 std::to_string(eigenvalues.front()) +
                                 " below the -1e-8 floor");
}

// A zero eigenvalue computed as +1e-16 would square-root to 1e-8 and wreck
// the 1e-9 symmetry/accuracy budget; anything at round-off scale is an exact
// zero for root purposes.
constexpr double kEigenZeroFloor = 1e-14;

double clamped_sqrt(double x) { return x > kEigenZeroFloor ? std::sqrt(x) : 0.0; }

}  // namespace

SymMatrix matrix_sqrt(const DensityOperator& m) {
  EighResult eig = eigh(m.matrix());
  check_psd(eig.eigenvalues, "matrix_sqrt");
  return spectral_apply(eig, m.dim(), &clamped_sqrt);
}

DensityOperator partial_trace(const DensityOperator& rho, std::size_t dim_x,
                              std::size_t dim_y, Subsystem keep) {
  if (rho.dim() != dim_x * dim_y)
    raise(ErrorCode::DimensionMismatch,
          "partial_trace: operator dim " + std::to_string(rho.dim()) +
              " != " + std::to_string(dim_x) + "*" + std::to_string(dim_y));
  if (keep == Subsystem::X) {
    SymMatrix out(dim_x);
    for (std::size_t i = 0; i < dim_x; ++i)
      for (std::size_t ip = i; ip < dim_x; ++ip) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_y; ++j)
          s += rho.at(i * dim_y + j, ip * dim_y + j);
        out.set(i, ip, s);
      }
    return DensityOperator(std::move(out));
  }
  SymMatrix out(dim_y);
  for (std::size_t j = 0; j < dim_y; ++j)
    for (std::size_t jp = j; jp < dim_y; ++jp) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_x; ++i)
        s += rho.at(i * dim_y + j, i * dim_y + jp);
      out.set(j, jp, s);
    }
  return DensityOperator(std::move(out));
}

double fidelity(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim())
    raise(ErrorCode::DimensionMismatch, "fidelity dims " + std::to_string(a.dim()) +
                                            " vs " + std::to_string(b.dim()));
  SymMatrix root_a = matrix_sqrt(a);
  SymMatrix inner = sandwich(root_a, b.matrix());
  EighResult eig = eigh(inner, /*want_vectors=*/false);
  check_psd(eig.eigenvalues, "fidelity");
  double f = 0.0;
  for (double lambda : eig.eigenvalues) f += clamped_sqrt(lambda);
  // round-off may overshoot [0,1] by ~1e-9; clamp after the fact
  return std::clamp(f, 0.0, 1.0);
}

double von_neumann_entropy(const DensityOperator& rho) {
  EighResult eig = eigh(rho.matrix(), /*want_vectors=*/false);
  check_psd(eig.eigenvalues, "von_neumann_entropy");
  double s = 0.0;
  for (double lambda : eig.eigenvalues) {
    if (lambda < 1e-12) continue;  // 0*log0 := 0
    s -= lambda * std::log2(lambda);
  }
  return s < 0.0 ? 0.0 : s;
}

}  // namespace qfdt
