#pragma once

#include "covkit/rational.hpp"
#include "covkit/subset.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// Dense tables hold 2^m rationals. The default guard keeps accidental
// m = 25+ allocations from taking the process down; callers that really
// want larger tables pass an explicit limit.
inline constexpr int kDefaultDenseLimit = 24;

struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_dense_limit(int m, int dense_limit = kDefaultDenseLimit) {
  if (m > kMaxGroundSize) {
    throw ResourceGuardError("ground size " + std::to_string(m) +
                             " exceeds hard cap " + std::to_string(kMaxGroundSize));
  }
  if (m > dense_limit) {
    throw ResourceGuardError("dense table for m = " + std::to_string(m) +
                             " exceeds limit m <= " + std::to_string(dense_limit));
  }
}

// A set function f : 2^[m] -> Q stored densely, indexed by bit pattern.
// Normalization f(empty) = 0 is a hard invariant: constructors and mutators
// reject anything else. Values are otherwise unconstrained (they may be
// negative; coverage status is a separate question).
class DenseSetFunction {
 public:
  explicit DenseSetFunction(int m, int dense_limit = kDefaultDenseLimit) : m_(m) {
    if (m < 0) throw std::invalid_argument("DenseSetFunction: negative ground size");
    check_dense_limit(m, dense_limit);
    values_.resize(table_size(m));
  }

  DenseSetFunction(int m, std::vector<BigRational> values,
                   int dense_limit = kDefaultDenseLimit)
      : m_(m), values_(std::move(values)) {
    if (m < 0) throw std::invalid_argument("DenseSetFunction: negative ground size");
    check_dense_limit(m, dense_limit);
    if (values_.size() != table_size(m)) {
      throw std::invalid_argument("DenseSetFunction: expected " +
                                  std::to_string(table_size(m)) + " values, got " +
                                  std::to_string(values_.size()));
    }
    if (!values_[0].is_zero()) {
      throw std::invalid_argument(
          "DenseSetFunction: f on the empty set must be 0, got " +
          format_rational(values_[0]));
    }
  }

  int ground_size() const { return m_; }
  std::size_t size() const { return values_.size(); }

  const BigRational& at(const SubsetMask& t) const {
    check_ground(t);
    return values_[t.bits()];
  }

  const BigRational& at_bits(std::uint32_t bits) const { return values_.at(bits); }

  void set(const SubsetMask& t, BigRational value) {
    check_ground(t);
    if (t.is_empty() && !value.is_zero()) {
      throw std::invalid_argument("DenseSetFunction: f on the empty set must stay 0");
    }
    values_[t.bits()] = std::move(value);
  }

  const std::vector<BigRational>& values() const { return values_; }

  friend bool operator==(const DenseSetFunction& a, const DenseSetFunction& b) {
    return a.m_ == b.m_ && a.values_ == b.values_;
  }

 private:
  void check_ground(const SubsetMask& t) const {
    if (t.ground_size() != m_) {
      throw std::invalid_argument("DenseSetFunction: ground size mismatch");
    }
  }

  int m_;
  std::vector<BigRational> values_;
};

// One weighted universe element of a coverage instance: the set of
// structure-subsets it belongs to (its membership pattern) and its weight.
struct WeightedElement {
  SubsetMask membership;
  BigRational weight;
};

// A coverage function in succinct form: a finite universe of weighted
// elements, f(T) = total weight of elements whose membership pattern meets T.
// Invariants: membership patterns are nonempty, distinct, sorted by bit
// pattern; every weight is strictly positive.
class CoverageInstance {
 public:
  explicit CoverageInstance(int m) : m_(m) {
    if (m < 0 || m > kMaxGroundSize) {
      throw std::invalid_argument("CoverageInstance: ground size out of range");
    }
  }

  // Merges duplicate membership patterns by adding weights. Rejects empty
  // patterns and non-positive input weights.
  static CoverageInstance from_elements(int m,
                                        const std::vector<WeightedElement>& elements) {
    CoverageInstance inst(m);
    std::map<std::uint32_t, BigRational> merged;
    for (const auto& el : elements) {
      if (el.membership.ground_size() != m) {
        throw std::invalid_argument("CoverageInstance: element ground size mismatch");
      }
      if (el.membership.is_empty()) {
        throw std::invalid_argument(
            "CoverageInstance: membership pattern must be nonempty");
      }
      if (el.weight.sign() <= 0) {
        throw std::invalid_argument("CoverageInstance: weight must be positive, got " +
                                    format_rational(el.weight));
      }
      merged[el.membership.bits()] += el.weight;
    }
    inst.elements_.reserve(merged.size());
    for (auto& [bits, weight] : merged) {
      inst.elements_.push_back({SubsetMask(bits, m), std::move(weight)});
    }
    return inst;
  }

  int ground_size() const { return m_; }
  std::size_t universe_size() const { return elements_.size(); }
  const std::vector<WeightedElement>& elements() const { return elements_; }

  // f(T): total weight of elements whose membership pattern intersects T.
  BigRational eval(const SubsetMask& t) const {
    if (t.ground_size() != m_) {
      throw std::invalid_argument("CoverageInstance: ground size mismatch in eval");
    }
    BigRational total;
    for (const auto& el : elements_) {
      if ((el.membership.bits() & t.bits()) != 0) total += el.weight;
    }
    return total;
  }

  DenseSetFunction to_dense(int dense_limit = kDefaultDenseLimit) const {
    check_dense_limit(m_, dense_limit);
    DenseSetFunction f(m_, dense_limit);
    for (std::uint32_t bits = 1; bits < table_size(m_); ++bits) {
      f.set(SubsetMask(bits, m_), eval(SubsetMask(bits, m_)));
    }
    return f;
  }

  friend bool operator==(const CoverageInstance& a, const CoverageInstance& b) {
    if (a.m_ != b.m_ || a.elements_.size() != b.elements_.size()) return false;
    for (std::size_t i = 0; i < a.elements_.size(); ++i) {
      if (a.elements_[i].membership.bits() != b.elements_[i].membership.bits() ||
          a.elements_[i].weight != b.elements_[i].weight) {
        return false;
      }
    }
    return true;
  }

 private:
  int m_;
  std::vector<WeightedElement> elements_;
};

inline BigRational eval_instance(const CoverageInstance& inst, const SubsetMask& t) {
  return inst.eval(t);
}

}  // namespace covkit
