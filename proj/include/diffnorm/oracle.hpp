#pragma once

// Numeric cross-check of the closed forms: the Gram matrix A^T A of a
// difference matrix is diagonalised with cyclic Jacobi rotations, giving the
// squared singular values of A_x without reference to any formula.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "diffnorm/core.hpp"
#include "diffnorm/diffmatrix.hpp"
#include "diffnorm/sequences.hpp"
#include "diffnorm/spectral.hpp"

namespace diffnorm {

/// Symmetric matrix of doubles. Only the upper triangle is written through
/// set(); the lower one mirrors it, so symmetry is bit-exact.
class DenseSymMatrix {
 public:
  explicit DenseSymMatrix(std::size_t n, double scale = 1.0)
      : scale_(scale), data_(n, n, 0.0) {}

  std::size_t n() const noexcept { return data_.rows(); }
  double scale() const noexcept { return scale_; }

  double operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

  void set(std::size_t i, std::size_t j, double v) {
    data_(i, j) = v;
    data_(j, i) = v;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n(); ++i) t += data_(i, i);
    return t;
  }

  double frobenius() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
      for (std::size_t j = 0; j < n(); ++j) acc += data_(i, j) * data_(i, j);
    }
    return std::sqrt(acc);
  }

 private:
  double scale_;
  Matrix<double> data_;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // descending
  std::size_t sweeps_used = 0;
  double off_diag_residual = 0.0;
};

/// Largest difference magnitude accepted for conversion to double.
inline const BigInt kMaxFaithfulEntry = BigInt(1) << 52;

/// (A/scale)^T (A/scale) with scale = max(1, max |a_ij|).
inline DenseSymMatrix gram(const DifferenceMatrix& m) {
  const std::size_t n = m.n();
  const auto& a = m.entries();
  BigInt max_abs = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      max_abs = std::max(max_abs, BigInt(abs(a(i, j))));
    }
  }
  if (max_abs > kMaxFaithfulEntry) {
    throw PrecisionError("difference magnitude " + max_abs.str() +
                         " exceeds 2^52; no faithful double conversion");
  }
  const double scale = max_abs.convert_to<double>();

  Matrix<double> scaled(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      scaled(i, j) = a(i, j).convert_to<double>() / scale;
    }
  }
  DenseSymMatrix g(n, scale);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += scaled(k, i) * scaled(k, j);
      g.set(i, j, acc);
    }
  }
  return g;
}

inline constexpr double kDefaultJacobiTol = 1e-12;
inline constexpr std::size_t kDefaultMaxSweeps = 100;

/// Cyclic-by-row Jacobi. Converged when the off-diagonal Frobenius norm is at
/// most tol * ||S||_F.
inline EigenResult jacobi_eigen(const DenseSymMatrix& s,
                                double tol = kDefaultJacobiTol,
                                std::size_t max_sweeps = kDefaultMaxSweeps) {
  if (!(tol > 0.0)) throw RangeError("jacobi_eigen: tol must be positive");
  const std::size_t n = s.n();
  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = s(i, j);
  }

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) acc += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(acc);
  };

  const double target = tol * s.frobenius();
  double off = off_norm();
  std::size_t sweeps = 0;
  while (off > target) {
    if (sweeps == max_sweeps) {
      throw ConvergenceError("jacobi_eigen: no convergence after " +
                                 std::to_string(max_sweeps) + " sweeps",
                             off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    ++sweeps;
    off = off_norm();
  }

  EigenResult out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  out.sweeps_used = sweeps;
  out.off_diag_residual = off;
  return out;
}

/// scale * sqrt(lambda_max(gram)).
inline double numeric_spectral_norm(const DifferenceMatrix& m) {
  const auto g = gram(m);
  const auto eig = jacobi_eigen(g);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  return g.scale() * std::sqrt(std::max(0.0, top));
}

/// Gram spectrum equals {s^2, s^2, 0, ..., 0} within tol * max(1, s^2),
/// compared in the scaled units of the Gram matrix.
inline bool spectrum_check(const IntegerSequence& seq, double tol) {
  if (seq.size() < 2) throw DimensionError("spectrum_check needs n >= 2");
  const auto g = gram(build(seq));
  const auto eig = jacobi_eigen(g);
  const double s2 = pairwise_square_sum_closed(seq).convert_to<double>();
  const double scale2 = g.scale() * g.scale();
  const double expected_top = s2 / scale2;
  const double bound = tol * std::max(1.0, s2) / scale2;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double expected = k < 2 ? expected_top : 0.0;
    if (std::abs(eig.eigenvalues[k] - expected) > bound) return false;
  }
  return true;
}

}  // namespace diffnorm
