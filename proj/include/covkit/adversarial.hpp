#pragma once

#include "covkit/binomial.hpp"
#include "covkit/rational.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace covkit {

// Parameters of the hard adversarial family: the weight coefficient is a
// large positive n on every nonempty set of size at most k and -1 on every
// larger set. With n big enough the restriction to any few levels looks
// perfectly coverage-like while the function is maximally far in coefficient
// sign pattern.
struct AdversarialParams {
  int m = 0;
  int k = 0;
  BigRational n;  // the large positive coefficient, default (2^m)! + 1

  AdversarialParams(int m_, int k_, BigRational n_) : m(m_), k(k_), n(std::move(n_)) {
    validate();
  }

  AdversarialParams(int m_, int k_) : m(m_), k(k_), n(default_coefficient(m_)) {
    validate();
  }

  // (2^m)! + 1. The factorial bound is what the feasibility analysis of
  // small query logs needs; anything at least as large works via the
  // explicit-n constructor. Guarded: beyond m = 16 the factorial's decimal
  // form becomes unwieldy, pass n explicitly instead.
  static BigRational default_coefficient(int m) {
    if (m < 0 || m > 16) {
      throw ResourceGuardError(
          "default adversarial coefficient limited to m <= 16; pass n explicitly");
    }
    return BigRational(factorial(std::uint64_t{1} << m) + 1);
  }

 private:
  void validate() const {
    if (m < 1 || m > kMaxGroundSize) {
      throw std::invalid_argument("AdversarialParams: ground size out of range");
    }
    if (k < 1 || k >= m) {
      throw std::invalid_argument("AdversarialParams: need 1 <= k < m");
    }
    if (n.sign() <= 0) {
      throw std::invalid_argument("AdversarialParams: n must be positive");
    }
  }
};

// The adversarial set function, evaluated in closed form. Point evaluation
// is O(m) after an O(m^2) table build, so it scales to any permitted m with
// no dense expansion.
class AdversarialFunction {
 public:
  explicit AdversarialFunction(AdversarialParams params)
      : params_(std::move(params)), binomial_(params_.m) {}

  const AdversarialParams& params() const { return params_; }
  int ground_size() const { return params_.m; }

  // Weight coefficient of a nonempty S: n for |S| <= k, -1 above.
  BigRational weight(const SubsetMask& s) const {
    check_ground(s);
    if (s.is_empty()) {
      throw std::invalid_argument("AdversarialFunction: weight of the empty set");
    }
    return s.count() <= params_.k ? params_.n : BigRational(-1);
  }

  // f(T) as the total coefficient mass over sets meeting T. Exactly
  // C(m, j) - C(m - t, j) sets of size j meet a fixed T of size t, which
  // collapses the sum to one pass over sizes:
  //   n * sum_{j<=k} [C(m,j) - C(m-t,j)]  -  sum_{j>k} [C(m,j) - C(m-t,j)].
  // Depends on |T| only.
  BigRational eval(const SubsetMask& t) const {
    check_ground(t);
    return eval_size(t.count());
  }

  BigRational eval_size(int t) const {
    const int m = params_.m;
    const int k = params_.k;
    if (t < 0 || t > m) {
      throw std::invalid_argument("AdversarialFunction: set size out of range");
    }
    BigInt low = 0, high = 0;
    for (int j = 1; j <= m; ++j) {
      const BigInt meet = binomial_.at(m, j) - binomial_.at(m - t, j);
      (j <= k ? low : high) += meet;
    }
    return params_.n * BigRational(low) - BigRational(high);
  }

  // Fraction of nonempty sets with a negative coefficient. Independent of n.
  BigRational sign_distance() const {
    const int m = params_.m;
    BigInt negatives = 0;
    for (int j = params_.k + 1; j <= m; ++j) negatives += binomial_.at(m, j);
    return BigRational(negatives, (BigInt(1) << m) - 1);
  }

 private:
  void check_ground(const SubsetMask& s) const {
    if (s.ground_size() != params_.m) {
      throw std::invalid_argument("AdversarialFunction: ground size mismatch");
    }
  }

  AdversarialParams params_;
  BinomialTable binomial_;
};

}  // namespace covkit
