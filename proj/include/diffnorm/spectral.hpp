#pragma once

// Closed-form spectral norms of difference matrices and the Fibonacci/Lucas
// norm formulas, plus a comparator that confronts each printed variant of
// those formulas with brute-force ground truth.
//
// The nonzero eigenvalues of iA_x are +-sqrt(s^2) with
// s^2 = sum_{r<s} (x_r - x_s)^2, so the spectral norm is sqrt(s^2). The bare
// sum s^2 is kept alongside as paper_printed_value.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diffnorm/core.hpp"
#include "diffnorm/sequences.hpp"

namespace diffnorm {

inline BigInt pairwise_square_sum_bruteforce(const IntegerSequence& seq) {
  const auto x = seq.terms();
  BigInt total = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t s = r + 1; s < x.size(); ++s) {
      const BigInt d = x[r] - x[s];
      total += d * d;
    }
  }
  return total;
}

/// n * sum x_i^2 - (sum x_i)^2, O(n).
inline BigInt pairwise_square_sum_closed(const IntegerSequence& seq) {
  BigInt sum = 0;
  BigInt sum_sq = 0;
  for (const auto& v : seq.terms()) {
    sum += v;
    sum_sq += v * v;
  }
  return BigInt(seq.size()) * sum_sq - sum * sum;
}

struct SpectralSummary {
  std::size_t n = 0;
  BigInt s_squared = 0;
  double spectral_norm = 0.0;
  double frobenius_norm = 0.0;
  BigInt paper_printed_value = 0;
};

/// Brute force is cross-checked against the closed form up to this length.
inline constexpr std::size_t kBruteForceCheckLimit = 64;

inline SpectralSummary spectral_summary(const IntegerSequence& seq) {
  SpectralSummary out;
  out.n = seq.size();
  out.s_squared = pairwise_square_sum_closed(seq);
  if (seq.size() <= kBruteForceCheckLimit &&
      out.s_squared != pairwise_square_sum_bruteforce(seq)) {
    throw std::logic_error("closed-form pair sum disagrees with brute force");
  }
  const double s2 = out.s_squared.convert_to<double>();
  out.spectral_norm = std::sqrt(s2);
  out.frobenius_norm = std::sqrt(2.0 * s2);
  out.paper_printed_value = out.s_squared;
  return out;
}

namespace detail {

// sum_{1<=r<s<=n} v[r] * v[s] for a 0-indexed table where v[k] is term k.
inline BigInt pair_product_sum(const std::vector<BigInt>& v, std::size_t n) {
  BigInt total = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t s = r + 1; s <= n; ++s) total += v[r] * v[s];
  }
  return total;
}

// sum_{1<=r<s<=n} L_{r+s}; lucas must cover index 2n - 1.
inline BigInt lucas_index_sum(const std::vector<BigInt>& lucas, std::size_t n) {
  BigInt total = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t s = r + 1; s <= n; ++s) total += lucas[r + s];
  }
  return total;
}

// L_n - 2 for even n, L_n - 1 for odd n.
inline BigInt parity_term(const std::vector<BigInt>& lucas, std::size_t n) {
  return lucas[n] - (n % 2 == 0 ? 2 : 1);
}

inline std::size_t lucas_span(std::size_t n) { return 2 * n + 1; }

}  // namespace detail

/// (n-1) F_{n+1} F_n - 2 sum_{r<s} F_r F_s.
inline BigInt fibonacci_norm_direct(std::size_t n) {
  if (n == 0) throw InvalidSequence("fibonacci_norm_direct: n must be >= 1");
  const auto f = fibonacci_table(n + 1);
  return BigInt(n - 1) * f[n + 1] * f[n] - 2 * detail::pair_product_sum(f, n);
}

/// (n-1) F_{n+1} F_n - (2/5)(L_n - c + sum_{r<s} L_{r+s}), c = 2 (n even)
/// or 1 (n odd). Evaluated over Q.
inline BigRational fibonacci_norm_cased(std::size_t n) {
  if (n == 0) throw InvalidSequence("fibonacci_norm_cased: n must be >= 1");
  const auto f = fibonacci_table(n + 1);
  const auto l = lucas_table(detail::lucas_span(n));
  const BigRational inner =
      detail::parity_term(l, n) + detail::lucas_index_sum(l, n);
  return BigRational(BigInt(n - 1) * f[n + 1] * f[n]) -
         BigRational(2, 5) * inner;
}

/// (n-1)(L_{n+1} L_n - 2) - 2 sum_{r<s} L_r L_s.
inline BigInt lucas_norm_direct(std::size_t n) {
  if (n == 0) throw InvalidSequence("lucas_norm_direct: n must be >= 1");
  const auto l = lucas_table(n + 1);
  return BigInt(n - 1) * (l[n + 1] * l[n] - 2) -
         2 * detail::pair_product_sum(l, n);
}

enum class LucasVariant { as_printed, sign_corrected };

/// as_printed:     (n-1)(L_{n+1} L_n - 2) - 2(L_n - c + sum L_{r+s})
/// sign_corrected: (n-1)(L_{n+1} L_n - 2) - 2(sum L_{r+s} - (L_n - c))
inline BigInt lucas_norm_cased(std::size_t n, LucasVariant variant) {
  if (n == 0) throw InvalidSequence("lucas_norm_cased: n must be >= 1");
  const auto l = lucas_table(detail::lucas_span(n));
  const BigInt head = BigInt(n - 1) * (l[n + 1] * l[n] - 2);
  const BigInt parity = detail::parity_term(l, n);
  const BigInt index_sum = detail::lucas_index_sum(l, n);
  const BigInt inner = variant == LucasVariant::as_printed
                           ? BigInt(parity + index_sum)
                           : BigInt(index_sum - parity);
  return head - 2 * inner;
}

enum class Family { fibonacci, lucas };

inline std::string_view to_string(Family f) {
  return f == Family::fibonacci ? "fibonacci" : "lucas";
}

inline IntegerSequence family_sequence(Family f, std::size_t n) {
  return f == Family::fibonacci ? fibonacci(n) : lucas(n);
}

enum class Verdict { match, mismatch };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::match ? "match" : "mismatch";
}

struct ErratumRow {
  std::size_t n = 0;
  BigInt ground_truth = 0;
  BigInt direct_formula = 0;
  BigRational cased_formula_as_printed = 0;
  BigRational cased_formula_sign_corrected = 0;
  Verdict verdict_printed = Verdict::match;
  Verdict verdict_corrected = Verdict::match;

  bool direct_matches() const { return direct_formula == ground_truth; }
};

struct ErratumReport {
  Family family = Family::fibonacci;
  std::vector<ErratumRow> rows;

  bool all_match() const {
    for (const auto& r : rows) {
      if (r.verdict_printed != Verdict::match ||
          r.verdict_corrected != Verdict::match || !r.direct_matches()) {
        return false;
      }
    }
    return true;
  }
};

/// One row per n in [1, max_n], ascending. The Fibonacci cased formula has no
/// separate corrected variant, so both cased columns carry the printed one.
inline ErratumReport erratum_report(Family family, std::size_t max_n) {
  if (max_n == 0) throw InvalidSequence("erratum_report: max_n must be >= 1");
  ErratumReport report{family, {}};
  report.rows.reserve(max_n);
  auto verdict = [](const BigRational& value, const BigInt& truth) {
    return value == BigRational(truth) ? Verdict::match : Verdict::mismatch;
  };
  for (std::size_t n = 1; n <= max_n; ++n) {
    ErratumRow row;
    row.n = n;
    row.ground_truth = pairwise_square_sum_bruteforce(family_sequence(family, n));
    if (family == Family::fibonacci) {
      row.direct_formula = fibonacci_norm_direct(n);
      row.cased_formula_as_printed = fibonacci_norm_cased(n);
      row.cased_formula_sign_corrected = row.cased_formula_as_printed;
    } else {
      row.direct_formula = lucas_norm_direct(n);
      row.cased_formula_as_printed =
          BigRational(lucas_norm_cased(n, LucasVariant::as_printed));
      row.cased_formula_sign_corrected =
          BigRational(lucas_norm_cased(n, LucasVariant::sign_corrected));
    }
    row.verdict_printed = verdict(row.cased_formula_as_printed, row.ground_truth);
    row.verdict_corrected =
        verdict(row.cased_formula_sign_corrected, row.ground_truth);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace diffnorm
