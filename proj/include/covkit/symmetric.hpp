#pragma once

#include "covkit/binomial.hpp"
#include "covkit/rational.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// A set function constant on cardinality levels: levels[i] is the value on
// every set of size i.
struct SymmetricFunction {
  int m = 0;
  std::vector<BigRational> levels;  // size m + 1

  SymmetricFunction() = default;
  SymmetricFunction(int m_, std::vector<BigRational> levels_)
      : m(m_), levels(std::move(levels_)) {
    if (m < 0 || levels.size() != static_cast<std::size_t>(m) + 1) {
      throw std::invalid_argument("SymmetricFunction: need exactly m + 1 levels");
    }
  }

  const BigRational& at_level(int i) const { return levels.at(static_cast<std::size_t>(i)); }
};

// Weight coefficients of a symmetric function: levels[j] is the coefficient
// of every size-j set, j = 1..m. levels[0] is unused and stays zero.
struct SymmetricWCoefficients {
  int m = 0;
  std::vector<BigRational> levels;  // size m + 1, index 0 unused

  SymmetricWCoefficients() = default;
  explicit SymmetricWCoefficients(int m_) : m(m_) {
    if (m < 0) throw std::invalid_argument("SymmetricWCoefficients: negative m");
    levels.resize(static_cast<std::size_t>(m) + 1);
  }

  const BigRational& at_level(int j) const {
    if (j < 1 || j > m) {
      throw std::out_of_range("SymmetricWCoefficients: level out of range");
    }
    return levels[static_cast<std::size_t>(j)];
  }
};

// Dense expansion, f(T) = levels[|T|]. Requires levels[0] = 0 like any set
// function here. Guarded at m <= 20: the expansion is the only part of the
// symmetric toolkit that is exponential in m.
inline DenseSetFunction expand_symmetric(const SymmetricFunction& s) {
  constexpr int kExpandLimit = 20;
  check_dense_limit(s.m, kExpandLimit);
  if (!s.levels[0].is_zero()) {
    throw std::invalid_argument("expand_symmetric: level 0 must be 0 for a set function");
  }
  std::vector<BigRational> values(table_size(s.m));
  for (std::uint32_t bits = 0; bits < table_size(s.m); ++bits) {
    values[bits] = s.levels[static_cast<std::size_t>(std::popcount(bits))];
  }
  return DenseSetFunction(s.m, std::move(values), kExpandLimit);
}

// Reads the level values back off a dense function, verifying it really is
// constant on every cardinality level.
inline SymmetricFunction symmetric_levels_of(const DenseSetFunction& f) {
  const int m = f.ground_size();
  std::vector<BigRational> levels(static_cast<std::size_t>(m) + 1);
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (std::uint32_t bits = 0; bits < table_size(m); ++bits) {
    const auto level = static_cast<std::size_t>(std::popcount(bits));
    if (!seen[level]) {
      levels[level] = f.at_bits(bits);
      seen[level] = true;
    } else if (levels[level] != f.at_bits(bits)) {
      throw std::invalid_argument("symmetric_levels_of: function is not symmetric");
    }
  }
  return SymmetricFunction(m, std::move(levels));
}

// Weight coefficients of a symmetric function, one alternating sum per
// level:
//   w_hat(j) = sum_{i=0}^{j} C(j,i) (-1)^{i+j+1} f_hat(m-i).
// This is the forward transform specialized to level functions: for |S| = j
// the completion family hits cardinalities m-j, ..., m and the overlap size
// determines the sign.
inline SymmetricWCoefficients symmetric_forward_transform(const SymmetricFunction& f) {
  const int m = f.m;
  const BinomialTable binomial(m);
  SymmetricWCoefficients w(m);
  for (int j = 1; j <= m; ++j) {
    BigRational acc;
    for (int i = 0; i <= j; ++i) {
      BigRational term = BigRational(binomial.at(j, i)) *
                         f.levels[static_cast<std::size_t>(m - i)];
      if ((i + j + 1) % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    w.levels[static_cast<std::size_t>(j)] = std::move(acc);
  }
  return w;
}

// f_hat(t) = sum_j [C(m,j) - C(m-t,j)] w_hat(j): the number of size-j sets
// meeting a fixed size-t set, summed against the level coefficients.
inline SymmetricFunction symmetric_inverse_transform(const SymmetricWCoefficients& w) {
  const int m = w.m;
  const BinomialTable binomial(m);
  std::vector<BigRational> levels(static_cast<std::size_t>(m) + 1);
  for (int t = 0; t <= m; ++t) {
    BigRational acc;
    for (int j = 1; j <= m; ++j) {
      const BigInt meet = binomial.at(m, j) - binomial.at(m - t, j);
      if (!meet.is_zero()) {
        acc += BigRational(meet) * w.levels[static_cast<std::size_t>(j)];
      }
    }
    levels[static_cast<std::size_t>(t)] = std::move(acc);
  }
  return SymmetricFunction(m, std::move(levels));
}

// Coefficients in the binomial (Mahler) basis: alpha_i = i-th forward
// difference of p at 0, so that sum_i alpha_i C(j,i) = p(j) for j = 0..d
// where d+1 values are given.
inline std::vector<BigRational> mahler_coefficients(std::vector<BigRational> values) {
  const std::size_t n = values.size();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = n - 1; j >= i; --j) {
      values[j] -= values[j - 1];
    }
  }
  return values;
}

// sum_i alpha_i C(j, i), the Mahler-basis evaluation.
inline BigRational mahler_evaluate(const std::vector<BigRational>& alpha, int j,
                                   const BinomialTable& binomial) {
  BigRational acc;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (static_cast<int>(i) > j) break;
    if (!alpha[i].is_zero()) {
      acc += alpha[i] * BigRational(binomial.at(j, static_cast<int>(i)));
    }
  }
  return acc;
}

struct SymmetricZeroCount {
  std::vector<BigRational> values;  // g(0..m)
  std::size_t zero_count = 0;
};

// For level coefficients lambda_0..lambda_m with a strictly negative tail
// beyond index k, evaluates g(i) = sum_j lambda_j C(i,j) at i = 0..m and
// counts exact zeros. The symmetric zero-structure claim says the count
// never exceeds k + 1; this routine only measures, callers compare.
inline SymmetricZeroCount symmetric_zero_count(const std::vector<BigRational>& lambda,
                                               int k) {
  if (lambda.empty()) {
    throw std::invalid_argument("symmetric_zero_count: empty coefficient array");
  }
  const int m = static_cast<int>(lambda.size()) - 1;
  if (k < 0 || k > m) {
    throw std::invalid_argument("symmetric_zero_count: k out of range");
  }
  for (int j = k + 1; j <= m; ++j) {
    if (lambda[static_cast<std::size_t>(j)].sign() >= 0) {
      throw std::invalid_argument(
          "symmetric_zero_count: coefficient " + std::to_string(j) +
          " must be negative beyond index " + std::to_string(k));
    }
  }
  const BinomialTable binomial(m);
  SymmetricZeroCount result;
  result.values.resize(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    BigRational acc;
    for (int j = 0; j <= i; ++j) {
      if (!lambda[static_cast<std::size_t>(j)].is_zero()) {
        acc += lambda[static_cast<std::size_t>(j)] * BigRational(binomial.at(i, j));
      }
    }
    if (acc.is_zero()) ++result.zero_count;
    result.values[static_cast<std::size_t>(i)] = std::move(acc);
  }
  return result;
}

}  // namespace covkit
