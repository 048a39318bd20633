#include <covkit/set_function.hpp>

#include <catch_amalgamated.hpp>

using covkit::BigRational;
using covkit::CoverageInstance;
using covkit::DenseSetFunction;
using covkit::SubsetMask;
using covkit::WeightedElement;

TEST_CASE("a dense set function pins the empty set to zero") {
  DenseSetFunction f(2);
  CHECK(f.at(SubsetMask::empty_set(2)) == 0);
  f.set(SubsetMask::from_elements(2, {1}), BigRational(3, 2));
  CHECK(f.at_bits(0b01) == BigRational(3, 2));
  CHECK_THROWS_AS(f.set(SubsetMask::empty_set(2), BigRational(1)), std::invalid_argument);
  CHECK_THROWS_AS(DenseSetFunction(2, {BigRational(1), BigRational(0), BigRational(0),
                                       BigRational(0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DenseSetFunction(2, {BigRational(0), BigRational(1)}),
                  std::invalid_argument);
}

TEST_CASE("the dense guard rejects oversized ground sets") {
  CHECK_THROWS_AS(DenseSetFunction(covkit::kDefaultDenseLimit + 1),
                  covkit::ResourceGuardError);
  CHECK_THROWS_AS(covkit::check_dense_limit(10, 8), covkit::ResourceGuardError);
  CHECK_NOTHROW(covkit::check_dense_limit(8, 8));
  CHECK_THROWS_AS(covkit::check_dense_limit(covkit::kMaxGroundSize + 1, 64),
                  covkit::ResourceGuardError);
}

TEST_CASE("instances merge duplicate patterns and reject bad elements") {
  const auto inst = CoverageInstance::from_elements(
      3, {{SubsetMask::from_elements(3, {1, 2}), BigRational(1, 2)},
          {SubsetMask::from_elements(3, {3}), BigRational(2)},
          {SubsetMask::from_elements(3, {1, 2}), BigRational(1, 3)}});
  CHECK(inst.elements().size() == 2);
  CHECK(inst.elements()[0].membership == SubsetMask::from_elements(3, {1, 2}));
  CHECK(inst.elements()[0].weight == BigRational(5, 6));
  CHECK(inst.elements()[1].membership == SubsetMask::from_elements(3, {3}));
  CHECK(inst.elements()[1].weight == BigRational(2));

  CHECK_THROWS_AS(CoverageInstance::from_elements(
                      3, {{SubsetMask::empty_set(3), BigRational(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoverageInstance::from_elements(
                      3, {{SubsetMask::from_elements(3, {1}), BigRational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoverageInstance::from_elements(
                      3, {{SubsetMask::from_elements(3, {1}), BigRational(-1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoverageInstance::from_elements(
                      2, {{SubsetMask::from_elements(3, {1}), BigRational(1)}}),
                  std::invalid_argument);
}

TEST_CASE("instance evaluation sums the weights of patterns meeting the query") {
  const auto inst = CoverageInstance::from_elements(
      2, {{SubsetMask::from_elements(2, {1}), BigRational(2)},
          {SubsetMask::from_elements(2, {1, 2}), BigRational(1, 3)}});
  CHECK(inst.eval(SubsetMask::empty_set(2)) == 0);
  CHECK(inst.eval(SubsetMask::from_elements(2, {1})) == BigRational(7, 3));
  CHECK(inst.eval(SubsetMask::from_elements(2, {2})) == BigRational(1, 3));
  CHECK(inst.eval(SubsetMask::full_set(2)) == BigRational(7, 3));

  const DenseSetFunction dense = inst.to_dense();
  for (std::uint32_t bits = 0; bits < covkit::table_size(2); ++bits) {
    CHECK(dense.at_bits(bits) == inst.eval(SubsetMask(bits, 2)));
  }
}

TEST_CASE("instances compare structurally") {
  const auto a = CoverageInstance::from_elements(
      2, {{SubsetMask::from_elements(2, {1}), BigRational(1)}});
  const auto b = CoverageInstance::from_elements(
      2, {{SubsetMask::from_elements(2, {1}), BigRational(1)}});
  const auto c = CoverageInstance::from_elements(
      2, {{SubsetMask::from_elements(2, {1}), BigRational(2)}});
  CHECK(a == b);
  CHECK_FALSE(a == c);
}
