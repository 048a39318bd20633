#pragma once

#include "covkit/oracle.hpp"
#include "covkit/rational.hpp"
#include "covkit/rng.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// One class of the level-k partition: all support sets whose intersection
// with {1, ..., k} equals the prefix, together with their total weight.
// Live nodes always carry strictly positive weight.
struct PartitionNode {
  std::uint32_t prefix_bits = 0;  // subset of {1, ..., prefix_length}
  int prefix_length = 0;
  BigRational weight;
};

// Raised when a refinement step derives a negative class weight, which no
// coverage function can produce. The offending child prefix rides along.
class NegativeWeightError : public std::runtime_error {
 public:
  NegativeWeightError(std::uint32_t prefix_bits, int prefix_length, BigRational weight)
      : std::runtime_error("derived a negative class weight at prefix length " +
                           std::to_string(prefix_length)),
        prefix_bits_(prefix_bits),
        prefix_length_(prefix_length),
        weight_(std::move(weight)) {}

  std::uint32_t prefix_bits() const { return prefix_bits_; }
  int prefix_length() const { return prefix_length_; }
  const BigRational& weight() const { return weight_; }

 private:
  std::uint32_t prefix_bits_;
  int prefix_length_;
  BigRational weight_;
};

// Splits every level-k class on membership of element k+1, using exactly two
// oracle queries per live node.
//
// For a node with prefix x, querying the complement of x inside {1, ..., k}
// with and without element k+1 gives
//   F1 - F0 = total weight of support sets S with S intersect [k] subset x
//             and k+1 in S,
// so the weight of the (x, with k+1) child is that difference minus the
// already-computed child weights of every live proper-subset prefix y of x.
// Nodes are processed in increasing popcount order (ties by ascending bit
// pattern), which guarantees all proper subsets are processed first. The
// correction runs over the dominance order, not over all previously
// processed nodes: incomparable prefixes must not be subtracted. Dropped
// (zero-weight) prefixes contribute nothing, so correcting over live
// predecessors only is exact.
//
// Children with weight zero are dropped; a negative child weight raises
// NegativeWeightError. Sum of child weights equals the sum of input weights.
inline std::vector<PartitionNode> refine_level(const CountingOracle& oracle,
                                               std::vector<PartitionNode> nodes) {
  if (nodes.empty()) return {};
  const int m = oracle.ground_size();
  const int level = nodes.front().prefix_length;
  if (level < 0 || level >= m) {
    throw std::invalid_argument("refine_level: prefix length out of range");
  }
  const std::uint32_t level_mask =
      level == 0 ? 0u : (std::uint32_t{1} << level) - 1u;
  for (const auto& node : nodes) {
    if (node.prefix_length != level) {
      throw std::invalid_argument("refine_level: mixed prefix lengths");
    }
    if ((node.prefix_bits & ~level_mask) != 0) {
      throw std::invalid_argument("refine_level: prefix bits outside the level");
    }
    if (node.weight.sign() <= 0) {
      throw std::invalid_argument("refine_level: live node with non-positive weight");
    }
  }

  std::sort(nodes.begin(), nodes.end(), [](const PartitionNode& a, const PartitionNode& b) {
    const int ca = std::popcount(a.prefix_bits);
    const int cb = std::popcount(b.prefix_bits);
    return ca != cb ? ca < cb : a.prefix_bits < b.prefix_bits;
  });

  const std::uint32_t next_bit = std::uint32_t{1} << level;
  std::vector<BigRational> branch_weight(nodes.size());
  std::vector<PartitionNode> children;
  children.reserve(2 * nodes.size());

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::uint32_t x = nodes[i].prefix_bits;
    const std::uint32_t base = level_mask ^ x;  // complement of x inside the level
    const BigRational f0 = oracle.eval(SubsetMask(base, m));
    const BigRational f1 = oracle.eval(SubsetMask(base | next_bit, m));
    BigRational delta = f1 - f0;
    for (std::size_t j = 0; j < i; ++j) {
      const std::uint32_t y = nodes[j].prefix_bits;
      if (y != x && (y & ~x) == 0) delta -= branch_weight[j];
    }
    if (delta.sign() < 0) {
      throw NegativeWeightError(x | next_bit, level + 1, std::move(delta));
    }
    BigRational remainder = nodes[i].weight - delta;
    if (remainder.sign() < 0) {
      throw NegativeWeightError(x, level + 1, std::move(remainder));
    }
    if (delta.sign() > 0) {
      children.push_back({x | next_bit, level + 1, delta});
    }
    if (remainder.sign() > 0) {
      children.push_back({x, level + 1, std::move(remainder)});
    }
    branch_weight[i] = std::move(delta);
  }

  std::sort(children.begin(), children.end(),
            [](const PartitionNode& a, const PartitionNode& b) {
              const int ca = std::popcount(a.prefix_bits);
              const int cb = std::popcount(b.prefix_bits);
              return ca != cb ? ca < cb : a.prefix_bits < b.prefix_bits;
            });
  return children;
}

enum class ReconstructionVerdict { kCoverage, kNotCoverage, kSupportExceeded };

inline const char* to_string(ReconstructionVerdict v) {
  switch (v) {
    case ReconstructionVerdict::kCoverage: return "coverage";
    case ReconstructionVerdict::kNotCoverage: return "not-coverage";
    case ReconstructionVerdict::kSupportExceeded: return "support-exceeded";
  }
  return "unknown";
}

struct NegativeWeightReport {
  std::uint32_t prefix_bits = 0;
  int prefix_length = 0;
  BigRational weight;
};

struct ReconstructionResult {
  ReconstructionVerdict verdict = ReconstructionVerdict::kNotCoverage;
  // Set exactly on a coverage verdict.
  std::optional<CoverageInstance> instance;
  std::uint64_t queries_used = 0;
  // Live class count after each completed refinement step.
  std::vector<std::size_t> level_counts;
  // Set exactly on a not-coverage verdict.
  std::optional<NegativeWeightReport> failure;

  bool succeeded() const { return verdict == ReconstructionVerdict::kCoverage; }
};

// Full reconstruction by m refinement sweeps. If the oracle is a coverage
// function with at most max_support universe elements, the result is its
// exact reduced instance and the query counter stays within
// 2 * m * max_support + 1 (each level holds at most max_support live nodes,
// two queries each, plus the opening total-mass query). A counting argument
// over succinct instances shows roughly m * n / log n queries are necessary,
// so the budget is within a log factor of optimal.
//
// A derived negative weight yields kNotCoverage; more than max_support live
// classes at any level yields kSupportExceeded. Either way the oracle is
// certified to not be a coverage function with max_support many elements.
inline ReconstructionResult recover(const CountingOracle& oracle,
                                    std::size_t max_support) {
  const int m = oracle.ground_size();
  const std::uint64_t start_queries = oracle.queries_made();
  ReconstructionResult result;

  BigRational total = oracle.eval(SubsetMask::full_set(m));
  if (total.sign() < 0) {
    result.verdict = ReconstructionVerdict::kNotCoverage;
    result.failure = NegativeWeightReport{0, 0, std::move(total)};
    result.queries_used = oracle.queries_made() - start_queries;
    return result;
  }

  std::vector<PartitionNode> live;
  if (total.sign() > 0) live.push_back({0, 0, std::move(total)});

  if (live.size() > max_support) {
    result.verdict = ReconstructionVerdict::kSupportExceeded;
    result.queries_used = oracle.queries_made() - start_queries;
    return result;
  }

  for (int level = 0; level < m; ++level) {
    try {
      live = refine_level(oracle, std::move(live));
    } catch (const NegativeWeightError& err) {
      result.verdict = ReconstructionVerdict::kNotCoverage;
      result.failure =
          NegativeWeightReport{err.prefix_bits(), err.prefix_length(), err.weight()};
      result.queries_used = oracle.queries_made() - start_queries;
      return result;
    }
    result.level_counts.push_back(live.size());
    if (live.size() > max_support) {
      result.verdict = ReconstructionVerdict::kSupportExceeded;
      result.queries_used = oracle.queries_made() - start_queries;
      return result;
    }
  }

  std::vector<WeightedElement> elements;
  elements.reserve(live.size());
  for (auto& node : live) {
    elements.push_back({SubsetMask(node.prefix_bits, m), std::move(node.weight)});
  }
  result.verdict = ReconstructionVerdict::kCoverage;
  result.instance = CoverageInstance::from_elements(m, elements);
  result.queries_used = oracle.queries_made() - start_queries;
  return result;
}

struct SampleMismatch {
  SubsetMask set;
  BigRational oracle_value;
  BigRational reconstructed_value;
};

struct TesterResult {
  bool accepted = false;
  ReconstructionResult reconstruction;
  std::uint64_t samples_drawn = 0;
  std::optional<SampleMismatch> mismatch;
  std::uint64_t queries_used = 0;
};

// One-sided coverage test. Reconstructs under the support bound, then
// compares the oracle against the reconstructed instance on
// s = ceil(2 / epsilon) uniformly random subsets. Always accepts a coverage
// function with at most max_support elements (everything is exact). For a
// function that differs from every such coverage function on at least an
// epsilon fraction of all subsets, each sample catches a disagreement with
// probability at least epsilon, so s samples miss with probability at most
// (1 - epsilon)^(2/epsilon) < e^-2.
inline TesterResult test_coverage(const CountingOracle& oracle, std::size_t max_support,
                                  const BigRational& epsilon, SeededRng& rng) {
  if (epsilon.sign() <= 0 || epsilon > 1) {
    throw std::invalid_argument("test_coverage: epsilon must lie in (0, 1]");
  }
  const int m = oracle.ground_size();
  const std::uint64_t start_queries = oracle.queries_made();
  TesterResult result;
  result.reconstruction = recover(oracle, max_support);
  if (!result.reconstruction.succeeded()) {
    result.accepted = false;
    result.queries_used = oracle.queries_made() - start_queries;
    return result;
  }
  const BigInt samples = ceil_rational(BigRational(2) / epsilon);
  const auto s = static_cast<std::uint64_t>(samples);
  const CoverageInstance& instance = *result.reconstruction.instance;
  result.accepted = true;
  for (std::uint64_t i = 0; i < s; ++i) {
    const SubsetMask t = rng.subset(m);
    ++result.samples_drawn;
    BigRational oracle_value = oracle.eval(t);
    BigRational reconstructed = instance.eval(t);
    if (oracle_value != reconstructed) {
      result.accepted = false;
      result.mismatch =
          SampleMismatch{t, std::move(oracle_value), std::move(reconstructed)};
      break;
    }
  }
  result.queries_used = oracle.queries_made() - start_queries;
  return result;
}

}  // namespace covkit
