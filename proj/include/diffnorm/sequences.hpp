#pragma once

// Integer sequences feeding the difference matrix: literal lists, Fibonacci,
// Lucas and general constant-coefficient linear recurrences. Terms are exact
// and 1-indexed (term(1) is the first element).

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diffnorm/core.hpp"

namespace diffnorm {

class IntegerSequence {
 public:
  IntegerSequence(std::string label, std::vector<BigInt> terms)
      : label_(std::move(label)), terms_(std::move(terms)) {
    if (terms_.empty()) {
      throw InvalidSequence("sequence must contain at least one term");
    }
  }

  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::span<const BigInt> terms() const noexcept { return terms_; }

  /// 1-based access, x_k.
  const BigInt& term(std::size_t k) const {
    if (k < 1 || k > terms_.size()) {
      throw IndexError("term index " + std::to_string(k) + " outside [1, " +
                       std::to_string(terms_.size()) + "]");
    }
    return terms_[k - 1];
  }

  bool is_constant() const {
    for (const auto& t : terms_) {
      if (t != terms_.front()) return false;
    }
    return true;
  }

  /// Equality compares terms only; the label is presentation.
  friend bool operator==(const IntegerSequence& a, const IntegerSequence& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::string label_;
  std::vector<BigInt> terms_;
};

inline IntegerSequence from_literal(std::vector<BigInt> values,
                                    std::string label = "literal") {
  return IntegerSequence(std::move(label), std::move(values));
}

/// Terms 1..n of a_k = sum_j coeffs[j] * a_{k-j}, seeded with init.
inline IntegerSequence linear_recurrence(std::span<const BigInt> coeffs,
                                         std::span<const BigInt> init,
                                         std::size_t n,
                                         std::string label = "recurrence") {
  if (coeffs.empty() || coeffs.size() != init.size()) {
    throw InvalidRecurrence(
        "recurrence needs matching, nonempty coefficient and initial lists");
  }
  if (n == 0) throw InvalidSequence("sequence length must be positive");

  const std::size_t order = coeffs.size();
  std::vector<BigInt> terms;
  terms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k < order) {
      terms.push_back(init[k]);
      continue;
    }
    BigInt next = 0;
    for (std::size_t j = 0; j < order; ++j) {
      next += coeffs[j] * terms[k - 1 - j];
    }
    terms.push_back(std::move(next));
  }
  return IntegerSequence(std::move(label), std::move(terms));
}

namespace detail {

// Index 0..count-1 of the two-term recurrence with the given seeds.
inline std::vector<BigInt> two_term(BigInt a0, BigInt a1, std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(a0);
    BigInt next = a0 + a1;
    a0 = std::move(a1);
    a1 = std::move(next);
  }
  return out;
}

}  // namespace detail

/// F_k for k = 0..n (n + 1 values, F_0 = 0).
inline std::vector<BigInt> fibonacci_table(std::size_t n) {
  return detail::two_term(0, 1, n + 1);
}

/// L_k for k = 0..n (n + 1 values, L_0 = 2).
inline std::vector<BigInt> lucas_table(std::size_t n) {
  return detail::two_term(2, 1, n + 1);
}

/// F_1..F_n.
inline IntegerSequence fibonacci(std::size_t n) {
  if (n == 0) throw InvalidSequence("fibonacci: n must be at least 1");
  auto t = fibonacci_table(n);
  t.erase(t.begin());
  return IntegerSequence("fibonacci", std::move(t));
}

/// L_1..L_n.
inline IntegerSequence lucas(std::size_t n) {
  if (n == 0) throw InvalidSequence("lucas: n must be at least 1");
  auto t = lucas_table(n);
  t.erase(t.begin());
  return IntegerSequence("lucas", std::move(t));
}

struct BinetResidualReport {
  std::size_t index = 0;
  double fib_residual = 0.0;
  double lucas_residual = 0.0;
};

inline constexpr std::size_t kBinetMaxIndex = 70;

/// |F_n - (a^n - b^n)/(a - b)| and |L_n - (a^n + b^n)| in double precision,
/// with a, b = (1 +- sqrt 5)/2.
inline BinetResidualReport binet_residuals(std::size_t n) {
  if (n < 1 || n > kBinetMaxIndex) {
    throw RangeError("binet_residuals: n must lie in [1, 70]");
  }
  const double sqrt5 = std::sqrt(5.0);
  const double alpha = (1.0 + sqrt5) / 2.0;
  const double beta = (1.0 - sqrt5) / 2.0;
  const double an = std::pow(alpha, static_cast<double>(n));
  const double bn = std::pow(beta, static_cast<double>(n));

  const auto fib = fibonacci_table(n);
  const auto luc = lucas_table(n);
  const double f_exact = fib[n].convert_to<double>();
  const double l_exact = luc[n].convert_to<double>();

  return {n, std::abs(f_exact - (an - bn) / (alpha - beta)),
          std::abs(l_exact - (an + bn))};
}

/// L_n == F_{n-1} + F_{n+1}, exactly.
inline bool lucas_fib_identity_holds(std::size_t n) {
  if (n == 0) throw InvalidSequence("lucas_fib_identity_holds: n must be >= 1");
  const auto fib = fibonacci_table(n + 1);
  const auto luc = lucas_table(n);
  return luc[n] == fib[n - 1] + fib[n + 1];
}

}  // namespace diffnorm
