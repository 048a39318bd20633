#pragma once

#include "covkit/adversarial.hpp"
#include "covkit/rational.hpp"
#include "covkit/rng.hpp"
#include "covkit/set_function.hpp"
#include "covkit/simplex.hpp"
#include "covkit/subset.hpp"
#include "covkit/wtransform.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// Observed values of a purported coverage function on some query sets.
// Sets are distinct, values non-negative, and the empty set (if present)
// must carry value 0. Entries are kept sorted by bit pattern.
class QueryLog {
 public:
  QueryLog(int m, std::vector<std::pair<SubsetMask, BigRational>> entries) : m_(m) {
    if (m < 0 || m > kMaxGroundSize) {
      throw std::invalid_argument("QueryLog: ground size out of range");
    }
    std::map<std::uint32_t, BigRational> sorted;
    for (auto& [set, value] : entries) {
      if (set.ground_size() != m) {
        throw std::invalid_argument("QueryLog: entry ground size mismatch");
      }
      if (value.sign() < 0) {
        throw std::invalid_argument(
            "QueryLog: coverage observations cannot be negative, got " +
            format_rational(value) + " on " + set.to_string());
      }
      if (set.is_empty() && !value.is_zero()) {
        throw std::invalid_argument("QueryLog: the empty set must log value 0");
      }
      if (!sorted.emplace(set.bits(), std::move(value)).second) {
        throw std::invalid_argument("QueryLog: duplicate entry for " + set.to_string());
      }
    }
    entries_.reserve(sorted.size());
    for (auto& [bits, value] : sorted) {
      entries_.emplace_back(SubsetMask(bits, m), std::move(value));
    }
  }

  int ground_size() const { return m_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<SubsetMask, BigRational>>& entries() const {
    return entries_;
  }

  bool contains(std::uint32_t bits) const {
    for (const auto& [set, value] : entries_) {
      if (set.bits() == bits) return true;
    }
    return false;
  }

 private:
  int m_;
  std::vector<std::pair<SubsetMask, BigRational>> entries_;
};

// Certificate that a log admits no coverage completion: one non-negative
// multiplier per nonempty constraint set S, combining the coefficient
// non-negativity constraints into an impossibility. Stored sparse; absent
// sets carry multiplier 0. Normalized so the multipliers sum to 1.
struct FarkasWitness {
  int m = 0;
  std::map<std::uint32_t, BigRational> alpha;
};

struct CompletionResult {
  bool feasible = false;
  std::optional<DenseSetFunction> completion;  // set exactly when feasible
  std::optional<FarkasWitness> witness;        // set exactly when infeasible
};

// The completion question asks for values f(T) >= 0 on the unlogged sets
// making every weight coefficient non-negative:
//   for all nonempty S:
//     sum_{T unlogged, S union T = [m]} (-1)^{|S intersect T| + 1} f(T)
//       >= b(S) := sum_{T logged, S union T = [m]} (-1)^{|S intersect T|} v(T).
// f(empty) is pinned to 0 rather than kept as a variable: its only
// appearance is in the S = [m] row with coefficient -1, so any feasible
// point can zero it, and a coverage function vanishes on the empty set by
// definition. Solved exactly; both outcomes carry their own proof object
// (a full completed table, or a checked Farkas witness).
inline constexpr int kCompletionGroundLimit = 8;

namespace detail {

inline BigRational completion_rhs(const QueryLog& log, const SubsetMask& s) {
  // b(S) over the logged part of the completion family of S.
  BigRational b;
  const std::uint32_t full = SubsetMask::full_set(s.ground_size()).bits();
  for (const auto& [t, value] : log.entries()) {
    if ((s.bits() | t.bits()) != full) continue;
    const int overlap = std::popcount(s.bits() & t.bits());
    if (overlap % 2 == 0) {
      b += value;
    } else {
      b -= value;
    }
  }
  return b;
}

}  // namespace detail

// True iff the witness is a valid infeasibility proof for the log: all
// multipliers non-negative, combined right-hand side positive, and the
// combined coefficient of every unlogged set non-positive.
inline bool check_farkas_witness(const QueryLog& log, const FarkasWitness& witness) {
  const int m = log.ground_size();
  if (witness.m != m) return false;
  const std::uint32_t full = SubsetMask::full_set(m).bits();

  BigRational combined_rhs;
  bool any_positive = false;
  for (const auto& [bits, value] : witness.alpha) {
    if (bits == 0 || bits > full) return false;
    if (value.sign() < 0) return false;
    if (value.sign() > 0) any_positive = true;
    combined_rhs += value * detail::completion_rhs(log, SubsetMask(bits, m));
  }
  if (!any_positive || combined_rhs.sign() <= 0) return false;

  const auto alpha_at = [&witness](std::uint32_t bits) -> const BigRational* {
    auto it = witness.alpha.find(bits);
    return it == witness.alpha.end() ? nullptr : &it->second;
  };

  for (std::uint32_t t = 0; t <= full; ++t) {
    if (log.contains(t)) continue;
    // Combined coefficient of f(T): sum over nonempty S = complement(T)
    // union Y, Y subset of T, sign (-1)^{|Y| + 1}.
    BigRational g;
    const std::uint32_t comp = full ^ t;
    std::uint32_t y = 0;
    while (true) {
      const std::uint32_t s = comp | y;
      if (s != 0) {
        if (const BigRational* av = alpha_at(s)) {
          if (std::popcount(y) % 2 == 1) {
            g += *av;
          } else {
            g -= *av;
          }
        }
      }
      if (y == t) break;
      y = (y - t) & t;
    }
    if (g.sign() > 0) return false;
  }
  return true;
}

inline CompletionResult completion_feasible(const QueryLog& log) {
  const int m = log.ground_size();
  if (m > kCompletionGroundLimit) {
    throw ResourceGuardError("completion feasibility enforces m <= " +
                             std::to_string(kCompletionGroundLimit));
  }
  if (m == 0) {
    // Only the empty set exists and it is pinned to 0.
    CompletionResult result;
    result.feasible = true;
    result.completion = DenseSetFunction(0);
    return result;
  }
  const std::uint32_t full = SubsetMask::full_set(m).bits();

  // Column per unlogged nonempty set, ascending bit pattern.
  std::vector<std::ptrdiff_t> col_of(table_size(m), -1);
  std::vector<std::uint32_t> col_set;
  for (std::uint32_t t = 1; t <= full; ++t) {
    if (!log.contains(t)) {
      col_of[t] = static_cast<std::ptrdiff_t>(col_set.size());
      col_set.push_back(t);
    }
  }

  // Row per nonempty S, ascending bit pattern.
  std::vector<LinearRow> rows;
  rows.reserve(table_size(m) - 1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    LinearRow row;
    row.coeffs.assign(col_set.size(), BigRational(0));
    row.sense = RowSense::kGreaterEqual;
    const std::uint32_t comp = full ^ s;
    std::uint32_t x = 0;
    while (true) {
      const std::uint32_t t = comp | x;
      const int sign = std::popcount(x) % 2 == 1 ? 1 : -1;
      if (t != 0 && col_of[t] >= 0) {
        row.coeffs[static_cast<std::size_t>(col_of[t])] = BigRational(sign);
      }
      if (x == s) break;
      x = (x - s) & s;
    }
    row.rhs = detail::completion_rhs(log, SubsetMask(s, m));
    rows.push_back(std::move(row));
  }

  FeasibilityOutcome outcome = solve_feasibility(col_set.size(), rows);
  CompletionResult result;
  if (auto* point = std::get_if<FeasiblePoint>(&outcome)) {
    DenseSetFunction completed(m);
    for (const auto& [set, value] : log.entries()) {
      completed.set(set, value);
    }
    for (std::size_t j = 0; j < col_set.size(); ++j) {
      completed.set(SubsetMask(col_set[j], m), point->x[j]);
    }
    // Self-check: the completed table must actually be coverage.
    if (!check_coverage(completed).is_coverage()) {
      throw std::logic_error("completion_feasible: completion fails the coverage check");
    }
    result.feasible = true;
    result.completion = std::move(completed);
    return result;
  }

  const auto& ray = std::get<FarkasRay>(outcome);
  FarkasWitness witness;
  witness.m = m;
  BigRational total;
  for (std::size_t i = 0; i < ray.multipliers.size(); ++i) {
    if (!ray.multipliers[i].is_zero()) total += ray.multipliers[i];
  }
  for (std::size_t i = 0; i < ray.multipliers.size(); ++i) {
    if (!ray.multipliers[i].is_zero()) {
      witness.alpha.emplace(static_cast<std::uint32_t>(i) + 1, ray.multipliers[i] / total);
    }
  }
  if (!check_farkas_witness(log, witness)) {
    throw std::logic_error("completion_feasible: produced witness fails its own check");
  }
  result.feasible = false;
  result.witness = std::move(witness);
  return result;
}

// The log family a single negative coefficient pins down: the full
// completion family of S with the purported function's values. Running the
// completion check on it must come back infeasible once the coefficient of
// S is forced negative.
inline QueryLog completion_family_log(const AdversarialFunction& fn, const SubsetMask& s) {
  std::vector<std::pair<SubsetMask, BigRational>> entries;
  const SubsetMask comp = s.complement();
  for_each_subset(s, [&](const SubsetMask& x) {
    SubsetMask t = comp.set_union(x);
    entries.emplace_back(t, fn.eval(t));
  });
  return QueryLog(fn.ground_size(), std::move(entries));
}

struct NoTesterCertificate {
  SubsetMask set;
  std::size_t log_size = 0;
  bool feasible = true;
  std::optional<FarkasWitness> witness;
};

struct NoTesterReport {
  int m = 0;
  int k = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t log_size = 0;  // per trial: 2^k - 1 random observations
  std::uint64_t feasible_trials = 0;
  std::uint64_t infeasible_trials = 0;
  std::optional<NoTesterCertificate> certificate;
};

// Desk experiment around the query lower bound: every log of at most
// 2^k - 1 values of the adversarial function is coverage-completable (so no
// tester with that few queries can reject it), while the completion family
// of any (k+1)-sized set, 2^{k+1} queries, is not. Trials draw logs of
// exactly 2^k - 1 distinct sets uniformly among all subsets.
inline NoTesterReport notester_experiment(int m, int k, std::uint64_t trials,
                                          std::uint64_t seed) {
  if (m > kCompletionGroundLimit) {
    throw ResourceGuardError("notester experiment enforces m <= " +
                             std::to_string(kCompletionGroundLimit));
  }
  AdversarialFunction fn(AdversarialParams(m, k));
  NoTesterReport report;
  report.m = m;
  report.k = k;
  report.trials = trials;
  report.seed = seed;
  report.log_size = (std::size_t{1} << k) - 1;

  SeededRng rng(seed);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<std::pair<SubsetMask, BigRational>> entries;
    for (const SubsetMask& t : rng.distinct_subsets(m, report.log_size)) {
      entries.emplace_back(t, fn.eval(t));
    }
    CompletionResult r = completion_feasible(QueryLog(m, std::move(entries)));
    if (r.feasible) {
      ++report.feasible_trials;
    } else {
      ++report.infeasible_trials;
    }
  }

  if (k + 1 <= m) {
    const SubsetMask s0 = SubsetMask((std::uint32_t{1} << (k + 1)) - 1, m);
    QueryLog family = completion_family_log(fn, s0);
    CompletionResult r = completion_feasible(family);
    NoTesterCertificate cert;
    cert.set = s0;
    cert.log_size = family.size();
    cert.feasible = r.feasible;
    cert.witness = std::move(r.witness);
    report.certificate = std::move(cert);
  }
  return report;
}

}  // namespace covkit
