#pragma once

#include "covkit/oracle.hpp"
#include "covkit/rational.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// The weight coefficients of a set function: one rational per nonempty
// subset of the ground set. A function is coverage exactly when all of them
// are non-negative, in which case they are the weights of a universe element
// per distinct membership pattern.
class WCoefficients {
 public:
  explicit WCoefficients(int m, int dense_limit = kDefaultDenseLimit) : m_(m) {
    if (m < 0) throw std::invalid_argument("WCoefficients: negative ground size");
    check_dense_limit(m, dense_limit);
    values_.resize(table_size(m));
  }

  int ground_size() const { return m_; }

  const BigRational& at(const SubsetMask& s) const {
    check_set(s);
    return values_[s.bits()];
  }

  const BigRational& at_bits(std::uint32_t bits) const { return values_.at(bits); }

  void set(const SubsetMask& s, BigRational value) {
    check_set(s);
    values_[s.bits()] = std::move(value);
  }

  std::size_t negative_count() const {
    std::size_t count = 0;
    for (std::uint32_t bits = 1; bits < values_.size(); ++bits) {
      if (values_[bits].sign() < 0) ++count;
    }
    return count;
  }

  // Fraction of nonempty sets carrying a negative coefficient.
  BigRational sign_distance() const {
    if (m_ == 0) return BigRational(0);
    return BigRational(BigInt(negative_count()), BigInt(values_.size() - 1));
  }

  // Sets with strictly positive coefficients, ascending by bit pattern.
  std::vector<WeightedElement> support() const {
    std::vector<WeightedElement> out;
    for (std::uint32_t bits = 1; bits < values_.size(); ++bits) {
      if (values_[bits].sign() > 0) {
        out.push_back({SubsetMask(bits, m_), values_[bits]});
      }
    }
    return out;
  }

  friend bool operator==(const WCoefficients& a, const WCoefficients& b) {
    return a.m_ == b.m_ && a.values_ == b.values_;
  }

 private:
  void check_set(const SubsetMask& s) const {
    if (s.ground_size() != m_) {
      throw std::invalid_argument("WCoefficients: ground size mismatch");
    }
    if (s.is_empty()) {
      throw std::invalid_argument("WCoefficients: the empty set carries no coefficient");
    }
  }

  int m_;
  std::vector<BigRational> values_;
};

// Forward transform. For nonempty S the sets T with S union T = [m] are
// exactly complement(S) union X over X subset of S, and |S intersect T| = |X|,
// so
//   w(S) = sum_{X subset S} (-1)^{|X| + 1} f(complement(S) union X).
// Total work is O(3^m) rational additions.
inline WCoefficients forward_transform(const DenseSetFunction& f,
                                       int dense_limit = kDefaultDenseLimit) {
  const int m = f.ground_size();
  WCoefficients w(m, dense_limit);
  const std::uint32_t full = SubsetMask::full_set(m).bits();
  for (std::uint32_t s = 1; s < table_size(m); ++s) {
    const std::uint32_t comp = full ^ s;
    BigRational acc;
    std::uint32_t x = 0;
    while (true) {
      const BigRational& term = f.at_bits(comp | x);
      if (std::popcount(x) % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
      if (x == s) break;
      x = (x - s) & s;
    }
    w.set(SubsetMask(s, m), std::move(acc));
  }
  return w;
}

// Inverse transform: f(T) = sum over S meeting T of w(S). Computed as
// total mass minus the subset-sum over complement(T), with subset sums from
// one zeta transform pass, O(m 2^m) additions. Forces f(empty) = 0.
inline DenseSetFunction inverse_transform(const WCoefficients& w,
                                          int dense_limit = kDefaultDenseLimit) {
  const int m = w.ground_size();
  std::vector<BigRational> zeta(table_size(m));
  for (std::uint32_t bits = 1; bits < table_size(m); ++bits) {
    zeta[bits] = w.at_bits(bits);
  }
  for (int i = 0; i < m; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    for (std::uint32_t mask = 0; mask < table_size(m); ++mask) {
      if (mask & bit) zeta[mask] += zeta[mask ^ bit];
    }
  }
  const std::uint32_t full = SubsetMask::full_set(m).bits();
  std::vector<BigRational> values(table_size(m));
  for (std::uint32_t t = 1; t < table_size(m); ++t) {
    values[t] = zeta[full] - zeta[full ^ t];
  }
  return DenseSetFunction(m, std::move(values), dense_limit);
}

struct NegativeCoefficientWitness {
  SubsetMask set;
  BigRational value;  // strictly negative
};

struct CoverageCheck {
  WCoefficients coefficients;
  // Set exactly when all coefficients are non-negative: the equivalent
  // succinct instance, one universe element per support set.
  std::optional<CoverageInstance> instance;
  // Otherwise the negative coefficient with the smallest bit pattern.
  std::optional<NegativeCoefficientWitness> witness;

  bool is_coverage() const { return instance.has_value(); }
};

inline CoverageCheck check_coverage(const DenseSetFunction& f,
                                    int dense_limit = kDefaultDenseLimit) {
  CoverageCheck result{forward_transform(f, dense_limit), std::nullopt, std::nullopt};
  const int m = f.ground_size();
  for (std::uint32_t bits = 1; bits < table_size(m); ++bits) {
    if (result.coefficients.at_bits(bits).sign() < 0) {
      result.witness = NegativeCoefficientWitness{SubsetMask(bits, m),
                                                  result.coefficients.at_bits(bits)};
      return result;
    }
  }
  result.instance = CoverageInstance::from_elements(m, result.coefficients.support());
  return result;
}

// One coefficient from query access alone: exactly 2^|S| oracle queries,
// each distinct set queried once, in ascending order of the X part.
inline BigRational probe_coefficient(const CountingOracle& oracle, const SubsetMask& s) {
  if (s.ground_size() != oracle.ground_size()) {
    throw std::invalid_argument("probe_coefficient: ground size mismatch");
  }
  if (s.is_empty()) {
    throw std::invalid_argument("probe_coefficient: the empty set carries no coefficient");
  }
  const SubsetMask comp = s.complement();
  BigRational acc;
  for_each_subset(s, [&](const SubsetMask& x) {
    const BigRational term = oracle.eval(comp.set_union(x));
    if (x.count() % 2 == 1) {
      acc += term;
    } else {
      acc -= term;
    }
  });
  return acc;
}

}  // namespace covkit
