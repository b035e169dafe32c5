#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "diffnorm/diffmatrix.hpp"
#include "diffnorm/sampling.hpp"
#include "diffnorm/spectral.hpp"
#include "oracles.hpp"

using namespace diffnorm;

namespace {

std::vector<BigInt> ints(std::initializer_list<long long> v) {
  return {v.begin(), v.end()};
}

DifferenceMatrix dm(std::initializer_list<long long> v) {
  return build(from_literal(ints(v)));
}

IntMatrix mat(std::size_t n, std::initializer_list<long long> rowmajor) {
  IntMatrix m(n, n);
  std::size_t k = 0;
  for (auto v : rowmajor) {
    m(k / n, k % n) = v;
    ++k;
  }
  return m;
}

reference::Grid to_grid(const IntMatrix& m) {
  reference::Grid g(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  }
  return g;
}

}  // namespace

TEST(DiffMatrix, Build) {
  EXPECT_TRUE(dm({4, 4, 4}).entries().is_zero());
  EXPECT_EQ(dm({1, 2}).entries(), mat(2, {0, -1, 1, 0}));
  EXPECT_EQ(dm({1, 1, 2}).entries(), mat(3, {0, 0, -1, 0, 0, -1, 1, 1, 0}));
  EXPECT_EQ(dm({1, 2}).entry(1, 2), -1);
  EXPECT_THROW(dm({1, 2}).entry(3, 1), IndexError);
}

TEST(DiffMatrix, SkewSymmetryProperty) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto m = build(random_sequence(rng, 1, 20, 1'000'000));
    for (std::size_t i = 1; i <= m.n(); ++i) {
      for (std::size_t j = 1; j <= m.n(); ++j) {
        ASSERT_EQ(m.entry(i, j) + m.entry(j, i), 0);
        ASSERT_EQ(m.entry(i, j), m.source().term(i) - m.source().term(j));
      }
    }
  }
}

TEST(DiffMatrix, RowDifferenceTransform) {
  EXPECT_TRUE(row_difference_transform(dm({3, 3, 3})).is_zero());
  EXPECT_EQ(row_difference_transform(dm({1, 2})), mat(2, {0, -1, 1, 1}));

  const auto b = row_difference_transform(dm({1, 2, 4}));
  EXPECT_EQ(b, mat(3, {0, -1, -3, 1, 1, 1, 2, 2, 2}));
}

TEST(DiffMatrix, TransformRowsAreConstantDifferences) {
  const auto seq = lucas(12);
  const auto b = row_difference_transform(build(seq));
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = 0; j < seq.size(); ++j) {
      ASSERT_EQ(b(i, j), seq.term(i + 1) - seq.term(i));
    }
  }
  for (std::size_t j = 0; j < seq.size(); ++j) {
    ASSERT_EQ(b(0, j), seq.term(1) - seq.term(j + 1));
  }
}

TEST(DiffMatrix, ExactRankExamples) {
  EXPECT_EQ(exact_rank(dm({5, 5, 5, 5}).entries()), 0u);
  EXPECT_EQ(exact_rank(dm({1, 2}).entries()), 2u);
  EXPECT_EQ(exact_rank(dm({1, 1, 2, 3, 5}).entries()), 2u);
  EXPECT_EQ(reference::rational_rank(to_grid(dm({1, 1, 2, 3, 5}).entries())), 2u);
}

TEST(DiffMatrix, ExactRankAgreesWithRationalElimination) {
  // General (not difference) integer matrices, including rank-deficient ones
  // whose pivots force column skips.
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto rows = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const auto cols = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    IntMatrix m(rows, cols);
    const auto zero_col = static_cast<std::size_t>(uniform_int(rng, 0, cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = j == zero_col ? 0 : uniform_int(rng, -3, 3);
      }
    }
    if (rows > 2) {
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) - 2 * m(1, j);
    }
    ASSERT_EQ(exact_rank(m), reference::rational_rank(to_grid(m)));
  }
}

TEST(DiffMatrix, DeterminantAgreesWithLaplace) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform_int(rng, -5, 5);
    }
    ASSERT_EQ(exact_determinant(m), reference::laplace_det(to_grid(m)));
  }
  EXPECT_EQ(exact_determinant(mat(2, {0, 1, 1, 0})), -1);
  EXPECT_THROW(exact_determinant(IntMatrix(2, 3)), DimensionError);
}

TEST(DiffMatrix, RankDichotomyAndTransformInvariance) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto seq = random_sequence(rng, 1, 24, 1'000'000);
    const auto m = build(seq);
    const auto r = exact_rank(m.entries());
    ASSERT_EQ(r, seq.is_constant() ? 0u : 2u);
    ASSERT_EQ(exact_rank(row_difference_transform(m)), r);
  }
  const auto c = build(from_literal(std::vector<BigInt>(9, BigInt(-4))));
  EXPECT_EQ(exact_rank(c.entries()), 0u);
  EXPECT_EQ(exact_rank(row_difference_transform(c)), 0u);
}

TEST(DiffMatrix, IndexSetValidation) {
  EXPECT_NO_THROW(IndexSet({1, 3}, 3));
  EXPECT_THROW(IndexSet({0, 2}, 3), IndexError);
  EXPECT_THROW(IndexSet({1, 4}, 3), IndexError);
  EXPECT_THROW(IndexSet({2, 2}, 3), IndexError);
  EXPECT_THROW(IndexSet({3, 1}, 3), IndexError);
}

TEST(DiffMatrix, PrincipalMinorExamples) {
  const auto m = dm({2, 7, -1, 4});
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(principal_minor(m, IndexSet({i}, 4)), 0);
  // det [[0, d], [-d, 0]] = d^2
  EXPECT_EQ(principal_minor(m, IndexSet({1, 2}, 4)), 25);
  EXPECT_EQ(principal_minor(m, IndexSet({2, 3}, 4)), 64);
  EXPECT_EQ(principal_minor(m, IndexSet({1, 2, 3}, 4)), 0);
  EXPECT_EQ(principal_minor(m, IndexSet({1, 2, 3, 4}, 4)), 0);
  EXPECT_THROW(principal_minor(dm({1, 2}), IndexSet({1, 3}, 3)), IndexError);
}

TEST(DiffMatrix, MinorVanishingExhaustive) {
  std::mt19937_64 rng(5);
  std::vector<IntegerSequence> inputs;
  for (std::size_t n = 1; n <= 7; ++n) {
    inputs.push_back(fibonacci(n));
    inputs.push_back(lucas(n));
  }
  for (int t = 0; t < 20; ++t) inputs.push_back(random_sequence(rng, 3, 7, 1000));

  for (const auto& seq : inputs) {
    const auto m = build(seq);
    const auto grid = reference::difference_grid({seq.terms().begin(), seq.terms().end()});
    for (std::size_t k = 1; k <= seq.size(); ++k) {
      for_each_index_set(seq.size(), k, [&](const IndexSet& s) {
        reference::Grid sub;
        for (auto r : s.indices()) {
          std::vector<BigInt> row;
          for (auto c : s.indices()) row.push_back(grid[r - 1][c - 1]);
          sub.push_back(row);
        }
        const BigInt minor = principal_minor(m, s);
        ASSERT_EQ(minor, reference::laplace_det(sub));
        if (k >= 3 || k == 1) ASSERT_EQ(minor, 0);
      });
    }
  }
}

TEST(DiffMatrix, IndexSetEnumerationIsLexicographic) {
  std::vector<std::vector<std::size_t>> seen;
  for_each_index_set(4, 2, [&](const IndexSet& s) { seen.push_back(s.indices()); });
  const std::vector<std::vector<std::size_t>> expected{
      {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  EXPECT_EQ(seen, expected);

  std::size_t count = 0;
  for_each_index_set(9, 4, [&](const IndexSet&) { ++count; });
  EXPECT_EQ(count, binomial(9, 4));
}

TEST(DiffMatrix, SumPrincipalMinors) {
  const auto m = dm({1, 2, 3});
  EXPECT_EQ(sum_principal_minors(m, 1), 0);
  EXPECT_EQ(sum_principal_minors(m, 2), 6);  // 1 + 4 + 1
  EXPECT_EQ(sum_principal_minors(m, 3), 0);
  EXPECT_THROW(sum_principal_minors(m, 0), IndexError);
  EXPECT_THROW(sum_principal_minors(m, 4), IndexError);

  const auto big = build(lucas(40));
  EXPECT_THROW(sum_principal_minors(big, 20), RangeError);
  EXPECT_NO_THROW(sum_principal_minors(build(fibonacci(16)), 8));
}

TEST(DiffMatrix, SecondMinorSumEqualsPairSum) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto seq = random_sequence(rng, 1, 40, 1'000'000);
    ASSERT_EQ(sum_principal_minors(build(seq), seq.size() >= 2 ? 2 : 1),
              seq.size() >= 2 ? pairwise_square_sum_bruteforce(seq) : BigInt(0));
  }
}

TEST(DiffMatrix, CharPoly) {
  const auto flat = char_poly(from_literal(ints({9, 9, 9, 9})));
  EXPECT_EQ(flat.s_squared, 0);
  EXPECT_EQ(flat.render(CharPoly::Form::hermitian), "λ^4");

  const auto p = char_poly(from_literal(ints({1, 2, 3})));
  EXPECT_EQ(p.s_squared, 6);
  EXPECT_EQ(p.render(CharPoly::Form::hermitian), "λ^3 - 6λ");
  EXPECT_EQ(p.render(CharPoly::Form::skew), "λ^3 + 6λ");

  const auto f = char_poly(fibonacci(4));
  EXPECT_EQ(f.s_squared, 11);  // 0 + 1 + 4 + 1 + 4 + 1
  EXPECT_EQ(f.render(CharPoly::Form::hermitian), "λ^4 - 11λ^2");
  EXPECT_EQ(f.a1(), 0);
  EXPECT_EQ(f.a2(CharPoly::Form::hermitian), -11);
  EXPECT_EQ(f.coefficients(CharPoly::Form::skew), ints({1, 0, 11, 0, 0}));

  EXPECT_EQ(char_poly(from_literal(ints({0, 1}))).render(CharPoly::Form::hermitian),
            "λ^2 - 1");
  EXPECT_THROW(char_poly(from_literal(ints({5}))), DimensionError);
}

TEST(DiffMatrix, CharPolyAnnihilatesMatrix) {
  // Cayley-Hamilton on the trinomial: A^n + s^2 A^(n-2) = 0, checked through
  // the independent grid product for small n.
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto seq = lucas(n);
    const auto cp = char_poly(seq);
    const auto a = reference::difference_grid({seq.terms().begin(), seq.terms().end()});
    reference::Grid pw(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) pw[i][i] = 1;
    reference::Grid pw_n2 = pw;
    for (std::size_t e = 1; e <= n; ++e) {
      pw = reference::grid_product(pw, a);
      if (e == n - 2) pw_n2 = pw;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_EQ(pw[i][j] + cp.s_squared * pw_n2[i][j], 0) << "n=" << n;
      }
    }
  }
}

TEST(DiffMatrix, CubicIdentity) {
  EXPECT_TRUE(cubic_identity_holds(dm({0, 0, 0})));
  EXPECT_TRUE(cubic_identity_holds(dm({1, 2})));
  EXPECT_TRUE(cubic_identity_holds(build(lucas(5))));
  EXPECT_TRUE(cubic_identity_holds(dm({42})));

  // A^3 = -A for (1,2), via the independent product.
  const auto a = reference::difference_grid(ints({1, 2}));
  const auto a3 = reference::grid_product(reference::grid_product(a, a), a);
  EXPECT_EQ(a3[0][1], 1);
  EXPECT_EQ(a3[1][0], -1);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    ASSERT_TRUE(cubic_identity_holds(build(random_sequence(rng, 2, 30, 1'000'000))));
  }
}

TEST(DiffMatrix, CubicIdentityDetectsNonDifferenceMatrix) {
  // Sanity check that the exact test is not vacuous: perturb one entry.
  const auto m = build(lucas(5));
  IntMatrix a = m.entries();
  a(0, 1) += 1;
  const BigInt s2 = sum_principal_minors(m, 2);
  IntMatrix sq = a * a;
  for (std::size_t i = 0; i < 5; ++i) sq(i, i) += s2;
  EXPECT_FALSE((a * sq).is_zero());
}
