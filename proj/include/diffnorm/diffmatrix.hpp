#pragma once

// The difference matrix A_x = [x_i - x_j] and the exact machinery around its
// characteristic polynomial: row-difference transform, fraction-free rank and
// determinants, principal minors and their sums, and the trinomial
// lambda^n -+ s^2 lambda^(n-2).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diffnorm/core.hpp"
#include "diffnorm/sequences.hpp"

namespace diffnorm {

using IntMatrix = Matrix<BigInt>;

class DifferenceMatrix {
 public:
  explicit DifferenceMatrix(IntegerSequence source)
      : source_(std::move(source)), entries_(source_.size(), source_.size()) {
    const auto x = source_.terms();
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        entries_(i, j) = x[i] - x[j];
        entries_(j, i) = -entries_(i, j);
      }
    }
  }

  std::size_t n() const noexcept { return source_.size(); }
  const IntegerSequence& source() const noexcept { return source_; }
  const IntMatrix& entries() const noexcept { return entries_; }

  /// 1-based access, a_ij.
  const BigInt& entry(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > n() || j > n()) {
      throw IndexError("entry index outside [1, n]");
    }
    return entries_(i - 1, j - 1);
  }

 private:
  IntegerSequence source_;
  IntMatrix entries_;
};

inline DifferenceMatrix build(IntegerSequence seq) {
  return DifferenceMatrix(std::move(seq));
}

/// Strictly increasing 1-based indices i_1 < ... < i_k, validated against n.
class IndexSet {
 public:
  IndexSet(std::vector<std::size_t> indices, std::size_t n)
      : indices_(std::move(indices)) {
    for (std::size_t p = 0; p < indices_.size(); ++p) {
      if (indices_[p] < 1 || indices_[p] > n) {
        throw IndexError("index " + std::to_string(indices_[p]) +
                         " outside [1, " + std::to_string(n) + "]");
      }
      if (p > 0 && indices_[p] <= indices_[p - 1]) {
        throw IndexError("index set must be strictly increasing");
      }
    }
  }

  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Row i becomes row i minus row i-1, for i = n, ..., 2 (each step uses the
/// untouched previous row). For a difference matrix, rows 2..n come out
/// constant at x_i - x_{i-1}.
inline IntMatrix row_difference_transform(const DifferenceMatrix& m) {
  IntMatrix out = m.entries();
  for (std::size_t i = m.n(); i-- > 1;) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      out(i, j) -= out(i - 1, j);
    }
  }
  return out;
}

namespace detail {

// In-place fraction-free elimination. Pivots on the first nonzero entry at or
// below the current row; columns without a pivot are skipped. Returns the
// rank and, through sign, the parity of the row swaps performed.
template <typename T>
std::size_t bareiss_eliminate(Matrix<T>& a, int& sign) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  T prev = 1;
  std::size_t rank = 0;
  sign = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(rank, j));
      sign = -sign;
    }
    const T p = a(rank, col);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const T lead = a(i, col);
      for (std::size_t j = col + 1; j < cols; ++j) {
        a(i, j) = (p * a(i, j) - lead * a(rank, j)) / prev;
      }
      a(i, col) = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank over Q by fraction-free elimination; no floating point involved.
template <typename T>
std::size_t exact_rank(Matrix<T> m) {
  int sign = 1;
  return detail::bareiss_eliminate(m, sign);
}

/// Determinant of a square integer matrix (Bareiss).
template <typename T>
T exact_determinant(Matrix<T> m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T{1};
  int sign = 1;
  if (detail::bareiss_eliminate(m, sign) < n) return T{0};
  // With full rank and no column skips the last pivot is the determinant.
  return sign < 0 ? T(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

inline BigInt principal_minor(const DifferenceMatrix& m, const IndexSet& s) {
  const auto& idx = s.indices();
  for (auto i : idx) {
    if (i > m.n()) throw IndexError("index set exceeds matrix dimension");
  }
  IntMatrix sub(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) {
      sub(r, c) = m.entries()(idx[r] - 1, idx[c] - 1);
    }
  }
  return exact_determinant(std::move(sub));
}

/// Upper bound on C(n, k) for an exhaustive minor sweep. Covers every k for
/// n <= 16 and k <= 3 for n <= 64.
inline constexpr std::uint64_t kMaxMinorCount = std::uint64_t{1} << 16;

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

/// Visits every k-subset of {1..n} in lexicographic order.
template <typename Visitor>
void for_each_index_set(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k == 0 || k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t p = 0; p < k; ++p) idx[p] = p + 1;
  while (true) {
    visit(IndexSet(idx, n));
    std::size_t p = k;
    while (p > 0 && idx[p - 1] == n - k + p) --p;
    if (p == 0) return;
    ++idx[p - 1];
    for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

/// Sum of all principal k-minors of A_x (the real matrix, not iA_x).
inline BigInt sum_principal_minors(const DifferenceMatrix& m, std::size_t k) {
  if (k < 1 || k > m.n()) {
    throw IndexError("minor order " + std::to_string(k) + " outside [1, " +
                     std::to_string(m.n()) + "]");
  }
  if (binomial(m.n(), k) > kMaxMinorCount) {
    throw RangeError("C(" + std::to_string(m.n()) + ", " + std::to_string(k) +
                     ") principal minors exceed the enumeration cap");
  }
  const auto& a = m.entries();
  BigInt total = 0;
  if (k == 1) {
    for (std::size_t i = 0; i < m.n(); ++i) total += a(i, i);
    return total;
  }
  if (k == 2) {
    // det [[a_rr, a_rs], [a_sr, a_ss]] expanded directly.
    for (std::size_t r = 0; r < m.n(); ++r) {
      for (std::size_t s = r + 1; s < m.n(); ++s) {
        total += a(r, r) * a(s, s) - a(r, s) * a(s, r);
      }
    }
    return total;
  }
  for_each_index_set(m.n(), k, [&](const IndexSet& s) {
    total += principal_minor(m, s);
  });
  return total;
}

/// Trinomial characteristic polynomial of a rank <= 2 difference matrix.
/// For A_x it is lambda^n + s^2 lambda^(n-2); for the Hermitian iA_x the
/// 2-minors pick up i^2 and it becomes lambda^n - s^2 lambda^(n-2).
struct CharPoly {
  enum class Form { skew, hermitian };

  std::size_t n = 0;
  BigInt s_squared = 0;

  BigInt a1() const { return 0; }

  /// Coefficient of lambda^(n-2).
  BigInt a2(Form form) const {
    return form == Form::hermitian ? BigInt(-s_squared) : s_squared;
  }

  /// Coefficients from lambda^n down to lambda^0.
  std::vector<BigInt> coefficients(Form form) const {
    std::vector<BigInt> c(n + 1, BigInt(0));
    c[0] = 1;
    c[2] = a2(form);
    return c;
  }

  std::string render(Form form) const {
    std::string out = power(n);
    if (s_squared != 0) {
      out += form == Form::hermitian ? " - " : " + ";
      out += s_squared.str();
      if (n > 2) out += power(n - 2);
    }
    return out;
  }

 private:
  static std::string power(std::size_t e) {
    return e == 1 ? std::string("λ") : "λ^" + std::to_string(e);
  }
};

inline CharPoly char_poly(const IntegerSequence& seq) {
  if (seq.size() < 2) {
    throw DimensionError("char_poly needs n >= 2; a 1x1 difference matrix is [0]");
  }
  return CharPoly{seq.size(), sum_principal_minors(build(seq), 2)};
}

/// A^3 + s^2 A == 0, evaluated exactly as A (A^2 + s^2 I).
inline bool cubic_identity_holds(const DifferenceMatrix& m) {
  const BigInt s2 = m.n() >= 2 ? sum_principal_minors(m, 2) : BigInt(0);
  IntMatrix sq = m.entries() * m.entries();
  for (std::size_t i = 0; i < m.n(); ++i) sq(i, i) += s2;
  return (m.entries() * sq).is_zero();
}

}  // namespace diffnorm
