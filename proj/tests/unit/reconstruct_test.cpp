#include <covkit/reconstruct.hpp>

#include <covkit/adversarial.hpp>
#include <covkit/oracle.hpp>
#include <covkit/wtransform.hpp>

#include <catch_amalgamated.hpp>

#include <support/reference.hpp>

#include <bit>

using covkit::BigRational;
using covkit::CountingOracle;
using covkit::CoverageInstance;
using covkit::PartitionNode;
using covkit::ReconstructionVerdict;
using covkit::SubsetMask;

namespace {

CoverageInstance make_instance(
    int m, std::initializer_list<std::pair<std::initializer_list<int>, BigRational>>
               elements) {
  std::vector<covkit::WeightedElement> out;
  for (const auto& [elems, weight] : elements) {
    out.push_back({SubsetMask::from_elements(m, elems), weight});
  }
  return CoverageInstance::from_elements(m, out);
}

// The broken refinement semantics: corrects each branch difference by every
// previously processed node's branch weight, instead of only dominated
// (proper-subset) prefixes. Kept here as a foil; the regression below pins
// an instance where this produces a wrong answer.
std::vector<PartitionNode> refine_level_processing_order(
    const CountingOracle& oracle, std::vector<PartitionNode> nodes) {
  const int m = oracle.ground_size();
  const int level = nodes.front().prefix_length;
  const std::uint32_t level_mask =
      level == 0 ? 0u : (std::uint32_t{1} << level) - 1u;
  std::sort(nodes.begin(), nodes.end(), [](const PartitionNode& a, const PartitionNode& b) {
    const int ca = std::popcount(a.prefix_bits);
    const int cb = std::popcount(b.prefix_bits);
    return ca != cb ? ca < cb : a.prefix_bits < b.prefix_bits;
  });
  const std::uint32_t next_bit = std::uint32_t{1} << level;
  std::vector<BigRational> branch_weight(nodes.size());
  std::vector<PartitionNode> children;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::uint32_t x = nodes[i].prefix_bits;
    const std::uint32_t base = level_mask ^ x;
    BigRational delta =
        oracle.eval(SubsetMask(base | next_bit, m)) - oracle.eval(SubsetMask(base, m));
    for (std::size_t j = 0; j < i; ++j) delta -= branch_weight[j];
    if (delta.sign() < 0) {
      throw covkit::NegativeWeightError(x | next_bit, level + 1, std::move(delta));
    }
    BigRational remainder = nodes[i].weight - delta;
    if (remainder.sign() < 0) {
      throw covkit::NegativeWeightError(x, level + 1, std::move(remainder));
    }
    if (delta.sign() > 0) children.push_back({x | next_bit, level + 1, delta});
    if (remainder.sign() > 0) children.push_back({x, level + 1, std::move(remainder)});
    branch_weight[i] = std::move(delta);
  }
  return children;
}

}  // namespace

TEST_CASE("m = 2 refinement trace, level by level") {
  const BigRational a(2), b(3), c(5);
  const CoverageInstance inst =
      make_instance(2, {{{1}, a}, {{2}, b}, {{1, 2}, c}});
  const CountingOracle oracle{CoverageInstance(inst)};

  std::vector<PartitionNode> level0 = {{0u, 0, a + b + c}};
  const auto level1 = covkit::refine_level(oracle, level0);
  REQUIRE(level1.size() == 2);
  CHECK(level1[0].prefix_bits == 0b0u);  // outside {1}: weight b
  CHECK(level1[0].weight == b);
  CHECK(level1[1].prefix_bits == 0b1u);  // inside {1}: weight a + c
  CHECK(level1[1].weight == a + c);

  const auto level2 = covkit::refine_level(oracle, level1);
  REQUIRE(level2.size() == 3);
  CHECK(level2[0].prefix_bits == 0b01u);  // {1}
  CHECK(level2[0].weight == a);
  CHECK(level2[1].prefix_bits == 0b10u);  // {2}
  CHECK(level2[1].weight == b);
  CHECK(level2[2].prefix_bits == 0b11u);  // {1,2}
  CHECK(level2[2].weight == c);
}

TEST_CASE("recovery returns the exact instance within the query budget") {
  const CoverageInstance inst = make_instance(
      2, {{{1}, BigRational(2)}, {{2}, BigRational(3)}, {{1, 2}, BigRational(5)}});
  const CountingOracle oracle{CoverageInstance(inst)};
  const covkit::ReconstructionResult r = covkit::recover(oracle, 3);
  REQUIRE(r.verdict == ReconstructionVerdict::kCoverage);
  REQUIRE(r.instance.has_value());
  CHECK(*r.instance == inst);
  CHECK(r.queries_used == 7);  // 1 opening + 2 + 4
  CHECK(r.queries_used <= 2 * 2 * 3 + 1);
  CHECK(r.level_counts == std::vector<std::size_t>{2, 3});
}

TEST_CASE("incomparable prefixes must not be corrected against each other") {
  // Support {1}, {2}, {1,3}, {2,3}. At the third refinement the two live
  // prefixes {1} and {2} are incomparable, yet the processing-order variant
  // subtracts the {1}-branch weight from the {2}-branch difference and
  // finishes with a wrong instance; the dominance-order rule is exact.
  const CoverageInstance inst = make_instance(3, {{{1}, BigRational(1)},
                                                  {{2}, BigRational(1)},
                                                  {{1, 3}, BigRational(1)},
                                                  {{2, 3}, BigRational(3)}});
  const CountingOracle oracle{CoverageInstance(inst)};

  const covkit::ReconstructionResult good = covkit::recover(oracle, 4);
  REQUIRE(good.verdict == ReconstructionVerdict::kCoverage);
  CHECK(*good.instance == inst);

  std::vector<PartitionNode> live = {
      {0u, 0, oracle.eval(SubsetMask::full_set(3))}};
  for (int level = 0; level < 3; ++level) {
    live = refine_level_processing_order(oracle, live);
  }
  CoverageInstance broken = [&] {
    std::vector<covkit::WeightedElement> elements;
    for (const auto& node : live) {
      elements.push_back({SubsetMask(node.prefix_bits, 3), node.weight});
    }
    return CoverageInstance::from_elements(3, elements);
  }();
  CHECK_FALSE(broken == inst);

  // The wrong weights disagree with the definition-literal coefficients.
  const covkit::WCoefficients truth =
      testsupport::definition_forward(inst.to_dense());
  bool any_wrong = false;
  for (const auto& el : broken.elements()) {
    if (truth.at(el.membership) != el.weight) any_wrong = true;
  }
  CHECK(any_wrong);
  // Specifically: the {2,3} branch lost the {1,3} branch weight.
  for (const auto& el : broken.elements()) {
    if (el.membership == SubsetMask::from_elements(3, {2, 3})) {
      CHECK(el.weight == BigRational(2));
    }
    if (el.membership == SubsetMask::from_elements(3, {2})) {
      CHECK(el.weight == BigRational(2));
    }
  }
}

TEST_CASE("random instances come back identical, within budget") {
  covkit::SeededRng rng(808);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(7));
    const std::size_t n =
        1 + static_cast<std::size_t>(rng.below(std::min<std::uint64_t>(
                10, covkit::table_size(m) - 1)));
    const CoverageInstance inst = testsupport::random_instance(rng, m, n);
    const CountingOracle oracle{CoverageInstance(inst)};
    const covkit::ReconstructionResult r = covkit::recover(oracle, n);
    REQUIRE(r.verdict == ReconstructionVerdict::kCoverage);
    CHECK(*r.instance == inst);
    CHECK(r.queries_used <= 2 * static_cast<std::uint64_t>(m) * n + 1);
  }
}

TEST_CASE("non-coverage oracles are rejected with a located negative weight") {
  const CountingOracle oracle{covkit::AdversarialFunction(
      covkit::AdversarialParams(4, 1, BigRational(25)))};
  const covkit::ReconstructionResult r = covkit::recover(oracle, 1000);
  CHECK(r.verdict == ReconstructionVerdict::kNotCoverage);
  CHECK_FALSE(r.instance.has_value());
  REQUIRE(r.failure.has_value());
  CHECK(r.failure->weight.sign() < 0);
}

TEST_CASE("a tight support bound stops the sweep") {
  covkit::SeededRng rng(909);
  const CoverageInstance inst = testsupport::random_instance(rng, 4, 6);
  const CountingOracle oracle{CoverageInstance(inst)};
  const covkit::ReconstructionResult r = covkit::recover(oracle, 3);
  CHECK(r.verdict == ReconstructionVerdict::kSupportExceeded);
  CHECK_FALSE(r.instance.has_value());
}

TEST_CASE("the zero function reconstructs to an empty instance") {
  const CountingOracle oracle{covkit::DenseSetFunction(3)};
  const covkit::ReconstructionResult r = covkit::recover(oracle, 5);
  REQUIRE(r.verdict == ReconstructionVerdict::kCoverage);
  CHECK(r.instance->elements().empty());
  CHECK(r.queries_used == 1);
}

TEST_CASE("the tester draws ceil(2 / epsilon) samples and accepts coverage") {
  covkit::SeededRng draw(111);
  const CoverageInstance inst = testsupport::random_instance(draw, 4, 5);

  covkit::SeededRng rng1(1);
  const CountingOracle o1{CoverageInstance(inst)};
  const covkit::TesterResult full =
      covkit::test_coverage(o1, 5, BigRational(1), rng1);
  CHECK(full.accepted);
  CHECK(full.samples_drawn == 2);

  covkit::SeededRng rng2(2);
  const CountingOracle o2{CoverageInstance(inst)};
  const covkit::TesterResult quarter =
      covkit::test_coverage(o2, 5, BigRational(1, 4), rng2);
  CHECK(quarter.accepted);
  CHECK(quarter.samples_drawn == 8);
  CHECK_FALSE(quarter.mismatch.has_value());
}

TEST_CASE("the tester rejects a table corrupted beyond reconstruction") {
  const CountingOracle oracle{covkit::AdversarialFunction(
      covkit::AdversarialParams(5, 1, BigRational(41)))};
  covkit::SeededRng rng(3);
  const covkit::TesterResult t =
      covkit::test_coverage(oracle, 100, BigRational(1, 4), rng);
  CHECK_FALSE(t.accepted);
  CHECK_FALSE(t.reconstruction.succeeded());
}

TEST_CASE("epsilon outside (0, 1] is rejected") {
  const CountingOracle oracle{covkit::DenseSetFunction(2)};
  covkit::SeededRng rng(4);
  CHECK_THROWS_AS(covkit::test_coverage(oracle, 1, BigRational(0), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(covkit::test_coverage(oracle, 1, BigRational(3, 2), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(covkit::test_coverage(oracle, 1, BigRational(-1, 2), rng),
                  std::invalid_argument);
}
