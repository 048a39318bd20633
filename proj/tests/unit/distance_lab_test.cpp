#include <covkit/distance_lab.hpp>

#include <covkit/adversarial.hpp>
#include <covkit/binomial.hpp>
#include <covkit/rng.hpp>

#include <catch_amalgamated.hpp>

#include <support/reference.hpp>

using covkit::BigInt;
using covkit::BigRational;
using covkit::DenseSetFunction;
using covkit::SubsetMask;

TEST_CASE("square values read off the inclusion-exclusion quadruple") {
  const covkit::SignNearValueFar lab = covkit::build_sign_near_value_far(3);
  const DenseSetFunction& f = lab.table;
  CHECK(f.at(SubsetMask::from_elements(3, {1})) == BigRational(1));
  CHECK(f.at(SubsetMask::from_elements(3, {1, 2})) == BigRational(3));
  CHECK(covkit::square_value(f, SubsetMask(0, 3), 1, 2) == BigRational(1));
  CHECK(covkit::square_value(f, SubsetMask::from_elements(3, {3}), 1, 2) ==
        BigRational(1));
}

TEST_CASE("square value validation") {
  const DenseSetFunction f(3);
  CHECK_THROWS_AS(covkit::square_value(f, SubsetMask(0, 3), 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(covkit::square_value(f, SubsetMask(0, 3), 0, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(covkit::square_value(f, SubsetMask(0, 3), 1, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      covkit::square_value(f, SubsetMask::from_elements(3, {1}), 1, 2),
      std::invalid_argument);
  CHECK_THROWS_AS(covkit::square_value(DenseSetFunction(2), SubsetMask(0, 3), 1, 2),
                  std::invalid_argument);
}

TEST_CASE("concentrated negatives: few sign flips, a quarter of values wrong") {
  const covkit::BinomialTable binomial(8);
  for (int m = 2; m <= 8; ++m) {
    const covkit::SignNearValueFar lab = covkit::build_sign_near_value_far(m);
    CHECK(lab.squares_all_one);
    CHECK(lab.monotone);
    CHECK(lab.nonnegative);
    CHECK(lab.sign_distance ==
          BigRational(binomial.at(m, 2), BigInt((BigInt(1) << m) - 1)));
    CHECK(lab.quadruple_bound == BigRational(1, 4));
    CHECK(lab.coefficients.negative_count() ==
          static_cast<std::size_t>(binomial.at(m, 2)));
  }
}

TEST_CASE("concentrated negatives reject out-of-range ground sizes") {
  CHECK_THROWS_AS(covkit::build_sign_near_value_far(1), std::invalid_argument);
  CHECK_THROWS_AS(covkit::build_sign_near_value_far(13), std::invalid_argument);
}

TEST_CASE("spread negatives: wide zero band, controlled coefficients") {
  const covkit::SignFarValueNear lab = covkit::build_sign_far_value_near(8);
  CHECK(lab.band_low == 3);
  CHECK(lab.band_high == 5);
  CHECK(lab.band_zero);
  CHECK(lab.middle_at_least_one);
  CHECK(lab.extremes_bounded);
  CHECK(lab.routes_consistent);

  CHECK(lab.w.at_level(3) == BigRational(3));
  CHECK(lab.w.at_level(4) == BigRational(1));
  CHECK(lab.w.at_level(5) == BigRational(3));
  for (int j = 3; j <= 7; ++j) {
    CHECK(lab.w.at_level(j) >= BigRational(1));
  }
  for (int j : {1, 2, 8}) {
    CHECK(lab.w.at_level(j) >= -lab.base_scale);
  }

  const BigRational floor_scale(5 * 40320);
  const BigRational top = lab.w.at_level(8);
  const BigRational top_abs = top.sign() < 0 ? -top : top;
  CHECK(lab.base_scale >= floor_scale);
  CHECK(lab.base_scale >= top_abs);
  CHECK((lab.base_scale == floor_scale || lab.base_scale == top_abs));

  // Positional count: levels outside the band, the empty level included.
  CHECK(lab.outside_band_fraction == BigRational(74, 256));
  CHECK(lab.outside_band_fraction == BigRational(37, 128));

  // Literal count: sets where the difference is actually nonzero. The empty
  // level is pinned to zero, so this sits one binomial slot lower.
  const covkit::BinomialTable binomial(8);
  BigInt nonzero_sets = 0;
  for (int i = 0; i <= 8; ++i) {
    if (!lab.delta.levels[static_cast<std::size_t>(i)].is_zero()) {
      nonzero_sets += binomial.at(8, i);
    }
  }
  CHECK(BigRational(nonzero_sets, BigInt(256)) == BigRational(73, 256));

  // The difference expands to a genuine set function.
  const DenseSetFunction dense = covkit::expand_symmetric(lab.delta);
  const covkit::WCoefficients w_dense = covkit::forward_transform(dense);
  for (std::uint32_t bits = 1; bits < covkit::table_size(8); ++bits) {
    REQUIRE(w_dense.at_bits(bits) == lab.w.at_level(std::popcount(bits)));
  }
}

TEST_CASE("spread negatives scale to the larger ground size") {
  const covkit::SignFarValueNear lab = covkit::build_sign_far_value_near(16);
  CHECK(lab.band_low == 6);
  CHECK(lab.band_high == 10);
  CHECK(lab.band_zero);
  CHECK(lab.middle_at_least_one);
  CHECK(lab.extremes_bounded);
  CHECK(lab.routes_consistent);
}

TEST_CASE("spread negatives reject other ground sizes") {
  CHECK_THROWS_AS(covkit::build_sign_far_value_near(4), std::invalid_argument);
  CHECK_THROWS_AS(covkit::build_sign_far_value_near(12), std::invalid_argument);
  CHECK_THROWS_AS(covkit::build_sign_far_value_near(24), std::invalid_argument);
}

TEST_CASE("exact distance: coverage tables sit at zero") {
  covkit::SeededRng rng(1313);
  const covkit::CoverageInstance inst = testsupport::random_instance(rng, 3, 4);
  CHECK(covkit::exact_usual_distance(inst.to_dense()) == BigRational(0));
  CHECK(covkit::exact_usual_distance(DenseSetFunction(2)) == BigRational(0));
}

TEST_CASE("exact distance: the adversarial function is a quarter away") {
  const covkit::AdversarialFunction fn(
      covkit::AdversarialParams(2, 1, BigRational(25)));
  DenseSetFunction f(2);
  f.set(SubsetMask::from_elements(2, {1}), fn.eval(SubsetMask::from_elements(2, {1})));
  f.set(SubsetMask::from_elements(2, {2}), fn.eval(SubsetMask::from_elements(2, {2})));
  f.set(SubsetMask::from_elements(2, {1, 2}),
        fn.eval(SubsetMask::from_elements(2, {1, 2})));
  CHECK(f.at(SubsetMask::from_elements(2, {1})) == BigRational(24));
  CHECK(f.at(SubsetMask::from_elements(2, {1, 2})) == BigRational(49));
  CHECK(covkit::exact_usual_distance(f) == BigRational(1, 4));
}

TEST_CASE("the quadruple bound never exceeds the exact distance") {
  const covkit::SignNearValueFar lab = covkit::build_sign_near_value_far(3);
  const BigRational exact = covkit::exact_usual_distance(lab.table);
  CHECK(lab.quadruple_bound <= exact);
  CHECK(exact >= BigRational(1, 4));
}

TEST_CASE("exact distance is guarded above m = 3") {
  CHECK_THROWS_AS(covkit::exact_usual_distance(DenseSetFunction(4)),
                  covkit::ResourceGuardError);
}
