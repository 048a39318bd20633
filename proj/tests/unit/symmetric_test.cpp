#include <covkit/symmetric.hpp>

#include <covkit/binomial.hpp>
#include <covkit/rng.hpp>
#include <covkit/wtransform.hpp>

#include <catch_amalgamated.hpp>

#include <bit>
#include <vector>

using covkit::BigRational;
using covkit::BinomialTable;
using covkit::SymmetricFunction;
using covkit::SymmetricWCoefficients;

namespace {

std::vector<BigRational> rationals(std::initializer_list<int> values) {
  std::vector<BigRational> out;
  for (int v : values) out.emplace_back(v);
  return out;
}

SymmetricFunction random_levels(covkit::SeededRng& rng, int m) {
  std::vector<BigRational> levels(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i) {
    levels[static_cast<std::size_t>(i)] = rng.signed_rational(9, 4);
  }
  return SymmetricFunction(m, std::move(levels));
}

}  // namespace

TEST_CASE("expansion fills every level and reads back") {
  const SymmetricFunction f(3, rationals({0, 1, 3, 3}));
  const covkit::DenseSetFunction dense = covkit::expand_symmetric(f);
  for (std::uint32_t bits = 0; bits < covkit::table_size(3); ++bits) {
    CHECK(dense.at_bits(bits) ==
          f.at_level(std::popcount(bits)));
  }
  const SymmetricFunction back = covkit::symmetric_levels_of(dense);
  CHECK(back.levels == f.levels);
}

TEST_CASE("level extraction rejects asymmetric functions") {
  covkit::DenseSetFunction f(2);
  f.set(covkit::SubsetMask::from_elements(2, {1}), BigRational(1));
  CHECK_THROWS_AS(covkit::symmetric_levels_of(f), std::invalid_argument);
}

TEST_CASE("expansion validation") {
  CHECK_THROWS_AS(SymmetricFunction(2, rationals({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(covkit::expand_symmetric(SymmetricFunction(1, rationals({5, 1}))),
                  std::invalid_argument);
  SymmetricFunction big(21, std::vector<BigRational>(22));
  CHECK_THROWS_AS(covkit::expand_symmetric(big), covkit::ResourceGuardError);
}

TEST_CASE("level coefficients match the dense transform on every set") {
  covkit::SeededRng rng(606);
  for (int m = 1; m <= 6; ++m) {
    const SymmetricFunction f = random_levels(rng, m);
    const SymmetricWCoefficients w_level = covkit::symmetric_forward_transform(f);
    const covkit::WCoefficients w_dense =
        covkit::forward_transform(covkit::expand_symmetric(f));
    for (std::uint32_t bits = 1; bits < covkit::table_size(m); ++bits) {
      REQUIRE(w_dense.at_bits(bits) == w_level.at_level(std::popcount(bits)));
    }
  }
}

TEST_CASE("level inversion matches the dense inverse on every level") {
  covkit::SeededRng rng(707);
  for (int m = 1; m <= 6; ++m) {
    SymmetricWCoefficients w(m);
    for (int j = 1; j <= m; ++j) {
      w.levels[static_cast<std::size_t>(j)] = rng.signed_rational(9, 4);
    }
    const SymmetricFunction f = covkit::symmetric_inverse_transform(w);

    covkit::WCoefficients w_dense(m);
    for (std::uint32_t bits = 1; bits < covkit::table_size(m); ++bits) {
      w_dense.set(covkit::SubsetMask(bits, m),
                  w.levels[static_cast<std::size_t>(std::popcount(bits))]);
    }
    const covkit::DenseSetFunction dense = covkit::inverse_transform(w_dense);
    const SymmetricFunction via_dense = covkit::symmetric_levels_of(dense);
    CHECK(f.levels == via_dense.levels);
  }
}

TEST_CASE("the two level transforms invert each other") {
  covkit::SeededRng rng(808);
  for (int m = 1; m <= 10; ++m) {
    SymmetricFunction f = random_levels(rng, m);
    const SymmetricFunction back =
        covkit::symmetric_inverse_transform(covkit::symmetric_forward_transform(f));
    CHECK(f.levels == back.levels);
  }
}

TEST_CASE("binomial-basis coefficients are forward differences") {
  const BinomialTable binomial(6);

  // p(j) = C(j, 2) picks out the single basis coefficient alpha_2 = 1.
  std::vector<BigRational> values;
  for (int j = 0; j <= 4; ++j) {
    values.emplace_back(binomial.at(j, 2));
  }
  const std::vector<BigRational> alpha = covkit::mahler_coefficients(values);
  CHECK(alpha == rationals({0, 0, 1, 0, 0}));

  covkit::SeededRng rng(909);
  std::vector<BigRational> p;
  for (int j = 0; j <= 6; ++j) p.push_back(rng.signed_rational(9, 4));
  const std::vector<BigRational> a = covkit::mahler_coefficients(p);
  for (int j = 0; j <= 6; ++j) {
    CHECK(covkit::mahler_evaluate(a, j, binomial) == p[static_cast<std::size_t>(j)]);
  }
}

TEST_CASE("zero counting on a negative-tail coefficient array") {
  const covkit::SymmetricZeroCount r =
      covkit::symmetric_zero_count(rationals({2, 0, -1, -1}), 1);
  CHECK(r.values == rationals({2, 2, 1, -2}));
  CHECK(r.zero_count == 0);

  const covkit::SymmetricZeroCount boundary =
      covkit::symmetric_zero_count(rationals({0, 0, -1}), 1);
  CHECK(boundary.values == rationals({0, 0, -1}));
  CHECK(boundary.zero_count == 2);  // meets the k + 1 ceiling exactly

  const covkit::SymmetricZeroCount one_zero =
      covkit::symmetric_zero_count(rationals({0, 1, -1}), 1);
  CHECK(one_zero.values == rationals({0, 1, 1}));
  CHECK(one_zero.zero_count == 1);
}

TEST_CASE("zero counting validates its inputs") {
  CHECK_THROWS_AS(covkit::symmetric_zero_count({}, 0), std::invalid_argument);
  CHECK_THROWS_AS(covkit::symmetric_zero_count(rationals({1, 1}), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(covkit::symmetric_zero_count(rationals({1, -1}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(covkit::symmetric_zero_count(rationals({1, -1}), -1),
                  std::invalid_argument);
}
