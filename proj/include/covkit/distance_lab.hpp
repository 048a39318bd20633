#pragma once

#include "covkit/binomial.hpp"
#include "covkit/completion.hpp"
#include "covkit/rational.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"
#include "covkit/symmetric.hpp"
#include "covkit/wtransform.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// f(T+i+j) - f(T+i) - f(T+j) + f(T) for i, j outside T. Non-positive
// everywhere is submodularity; a positive value certifies a violation at
// this square.
inline BigRational square_value(const DenseSetFunction& f, const SubsetMask& t, int i,
                                int j) {
  const int m = f.ground_size();
  if (t.ground_size() != m) {
    throw std::invalid_argument("square_value: ground size mismatch");
  }
  if (i == j || i < 1 || j < 1 || i > m || j > m) {
    throw std::invalid_argument("square_value: need two distinct elements");
  }
  if (t.contains(i) || t.contains(j)) {
    throw std::invalid_argument("square_value: elements must lie outside the base set");
  }
  const SubsetMask ti = t.with(i);
  const SubsetMask tj = t.with(j);
  const SubsetMask tij = ti.with(j);
  return f.at(tij) - f.at(ti) - f.at(tj) + f.at(t);
}

// Partitions 2^[m] into quadruples {S, S+1, S+2, S+1+2} over S avoiding
// {1, 2} and counts squares violating submodularity. Each violating
// quadruple forces at least one table change to reach a coverage function
// (coverage functions are submodular), so
//   (violating quadruples) / 2^m
// is a certified lower bound on the fraction of entries that must change.
// The pairing fixes elements (1, 2) to keep the bound deterministic.
inline BigRational quadruple_distance_lower_bound(const DenseSetFunction& f) {
  const int m = f.ground_size();
  if (m < 2) {
    throw std::invalid_argument("quadruple_distance_lower_bound: need m >= 2");
  }
  std::uint64_t violations = 0;
  for (std::uint32_t bits = 0; bits < table_size(m); ++bits) {
    if ((bits & 0b11u) != 0) continue;
    if (square_value(f, SubsetMask(bits, m), 1, 2).sign() > 0) ++violations;
  }
  return BigRational(BigInt(violations), BigInt(1) << m);
}

// The concentrated-negative construction: coefficient m on every singleton,
// -1 on every pair, 0 above. Few sign flips (the pairs), yet every square
// evaluates to exactly +1, so a quarter of all subsets must change to reach
// coverage.
struct SignNearValueFar {
  WCoefficients coefficients;
  DenseSetFunction table;
  BigRational sign_distance;      // C(m,2) / (2^m - 1)
  bool squares_all_one;
  bool monotone;
  bool nonnegative;
  BigRational quadruple_bound;    // 1/4
};

inline SignNearValueFar build_sign_near_value_far(int m) {
  if (m < 2 || m > 12) {
    throw std::invalid_argument("build_sign_near_value_far: need 2 <= m <= 12");
  }
  WCoefficients w(m);
  for (std::uint32_t bits = 1; bits < table_size(m); ++bits) {
    const int size = std::popcount(bits);
    if (size == 1) {
      w.set(SubsetMask(bits, m), BigRational(m));
    } else if (size == 2) {
      w.set(SubsetMask(bits, m), BigRational(-1));
    }
  }
  DenseSetFunction f = inverse_transform(w);

  bool squares_all_one = true;
  for (std::uint32_t bits = 0; bits < table_size(m) && squares_all_one; ++bits) {
    const SubsetMask t(bits, m);
    for (int i = 1; i <= m && squares_all_one; ++i) {
      if (t.contains(i)) continue;
      for (int j = i + 1; j <= m; ++j) {
        if (t.contains(j)) continue;
        if (square_value(f, t, i, j) != 1) {
          squares_all_one = false;
          break;
        }
      }
    }
  }

  bool monotone = true;
  bool nonnegative = true;
  for (std::uint32_t bits = 0; bits < table_size(m); ++bits) {
    const SubsetMask t(bits, m);
    if (f.at(t).sign() < 0) nonnegative = false;
    for (int i = 1; i <= m; ++i) {
      if (t.contains(i)) continue;
      if (f.at(t.with(i)) < f.at(t)) monotone = false;
    }
  }

  BigRational sign_distance = w.sign_distance();
  BigRational quadruple = quadruple_distance_lower_bound(f);
  return SignNearValueFar{std::move(w),          std::move(f), std::move(sign_distance),
                          squares_all_one,       monotone,     nonnegative,
                          std::move(quadruple)};
}

// The spread-negative repair: a symmetric difference function that
// vanishes on a wide middle band of cardinalities while its level
// coefficients are at least +1 strictly between m/4 and m and at least -N
// at the extremes. Added to the function with coefficient N on levels up
// to m/4 and on [m] and -1 in between, it lifts every coefficient to
// nonnegative while changing values only outside the band. Built from two
// polynomials with half-integer roots, evaluated exactly and converted
// through the binomial basis.
struct SignFarValueNear {
  SymmetricFunction delta;        // the difference function, by level
  SymmetricWCoefficients w;       // its level coefficients
  BigRational base_scale;         // the target's extreme-level coefficient N
  int band_low;                   // forced-zero band, inclusive
  int band_high;
  bool band_zero;                 // delta vanishes on the band
  bool middle_at_least_one;       // w(j) >= 1 for m/4 < j < m
  bool extremes_bounded;          // w(j) >= -N for j <= m/4 and j = m
  bool routes_consistent;         // level transform of delta reproduces w
  BigRational outside_band_fraction;  // mass of levels where delta may differ
};

inline SignFarValueNear build_sign_far_value_near(int m) {
  if (m < 8 || m % 8 != 0 || m > 16) {
    throw std::invalid_argument(
        "build_sign_far_value_near: m must be a positive multiple of 8, at most 16");
  }
  const int quarter = m / 4;
  const int band_low = 3 * m / 8;
  const int band_high = 5 * m / 8;

  // h1(j) = 4 (-1)^{5m/8} prod_{k=m/4+1}^{5m/8-1} (j - k - 1/2), degree 3m/8 - 1.
  std::vector<BigRational> h1(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    BigRational value(band_high % 2 == 0 ? 4 : -4);
    for (int k = quarter + 1; k <= band_high - 1; ++k) {
      value *= BigRational(BigInt(2 * (j - k) - 1), BigInt(2));
    }
    h1[static_cast<std::size_t>(j)] = std::move(value);
  }

  // h2(j) = (20 m! + 4) (-1)^{m-1} j(j-1)...(j-5m/8)
  //         prod_{k=5m/8+1}^{m-2} (j - k - 1/2), degree m - 1,
  // vanishing at j = 0..5m/8.
  const BigRational lead =
      BigRational(20 * factorial(static_cast<std::uint64_t>(m)) + 4) *
      (m % 2 == 0 ? BigRational(-1) : BigRational(1));
  std::vector<BigRational> h2(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    BigRational value = lead;
    for (int r = 0; r <= band_high; ++r) value *= BigRational(j - r);
    for (int k = band_high + 1; k <= m - 2; ++k) {
      value *= BigRational(BigInt(2 * (j - k) - 1), BigInt(2));
    }
    h2[static_cast<std::size_t>(j)] = std::move(value);
  }

  // Binomial-basis coefficients. Degree bounds force the supports apart:
  // the h1 part lives below the band, the h2 part above it.
  const std::vector<BigRational> alpha1 = mahler_coefficients(h1);
  const std::vector<BigRational> alpha2 = mahler_coefficients(h2);
  for (int i = band_low; i <= m; ++i) {
    if (!alpha1[static_cast<std::size_t>(i)].is_zero()) {
      throw std::logic_error("build_sign_far_value_near: low part leaks past its degree");
    }
  }
  for (int i = 0; i <= band_high; ++i) {
    if (!alpha2[static_cast<std::size_t>(i)].is_zero()) {
      throw std::logic_error("build_sign_far_value_near: high part has a nonzero root");
    }
  }
  if (!alpha2[static_cast<std::size_t>(m)].is_zero()) {
    throw std::logic_error("build_sign_far_value_near: high part exceeds degree m - 1");
  }
  std::vector<BigRational> alpha(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    alpha[static_cast<std::size_t>(i)] =
        alpha1[static_cast<std::size_t>(i)] + alpha2[static_cast<std::size_t>(i)];
  }

  // delta(i) = (-1)^{m-i+1} alpha_{m-i}; the band in alpha maps onto the
  // same band in delta because band_low + band_high = m.
  std::vector<BigRational> delta_levels(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    const BigRational& a = alpha[static_cast<std::size_t>(m - i)];
    delta_levels[static_cast<std::size_t>(i)] = (m - i + 1) % 2 == 0 ? a : -a;
  }
  SymmetricFunction delta(m, std::move(delta_levels));

  SymmetricWCoefficients w(m);
  for (int j = 1; j <= m; ++j) {
    const BigRational sum =
        h1[static_cast<std::size_t>(j)] + h2[static_cast<std::size_t>(j)];
    w.levels[static_cast<std::size_t>(j)] = j % 2 == 0 ? sum : -sum;
  }

  // The base function's coefficient must absorb the deepest dip of w on the
  // low levels and at j = m. The top value w(m) is not controlled by the
  // low-level polynomial (the falling factorial in h2 does not vanish at m),
  // so the scale takes it in explicitly.
  BigRational base_scale = BigRational(5 * factorial(static_cast<std::uint64_t>(m)));
  const BigRational top = w.levels[static_cast<std::size_t>(m)];
  const BigRational top_abs = top.sign() < 0 ? -top : top;
  if (top_abs > base_scale) base_scale = top_abs;

  bool band_zero = true;
  for (int i = band_low; i <= band_high; ++i) {
    if (!delta.levels[static_cast<std::size_t>(i)].is_zero()) band_zero = false;
  }
  bool middle_at_least_one = true;
  for (int j = quarter + 1; j < m; ++j) {
    if (w.levels[static_cast<std::size_t>(j)] < 1) middle_at_least_one = false;
  }
  bool extremes_bounded = true;
  for (int j = 1; j <= m; ++j) {
    if (j > quarter && j != m) continue;
    if (w.levels[static_cast<std::size_t>(j)] < -base_scale) extremes_bounded = false;
  }

  const SymmetricWCoefficients recomputed = symmetric_forward_transform(delta);
  bool routes_consistent = true;
  for (int j = 1; j <= m; ++j) {
    if (recomputed.levels[static_cast<std::size_t>(j)] !=
        w.levels[static_cast<std::size_t>(j)]) {
      routes_consistent = false;
    }
  }

  const BinomialTable binomial(m);
  BigInt outside = 0;
  for (int i = 0; i <= m; ++i) {
    if (i < band_low || i > band_high) outside += binomial.at(m, i);
  }
  BigRational outside_band_fraction(outside, BigInt(1) << m);

  return SignFarValueNear{std::move(delta),
                          std::move(w),
                          std::move(base_scale),
                          band_low,
                          band_high,
                          band_zero,
                          middle_at_least_one,
                          extremes_bounded,
                          routes_consistent,
                          std::move(outside_band_fraction)};
}

// Exact usual distance to the coverage cone, m <= 3 only: search all subsets
// of table entries that could be kept, test coverage-completability of each
// kept partial log, and convert the largest keepable set into the smallest
// change fraction. Exponential in 2^m by nature, hence the guard.
inline BigRational exact_usual_distance(const DenseSetFunction& f) {
  const int m = f.ground_size();
  if (m > 3) {
    throw ResourceGuardError("exact_usual_distance enforces m <= 3");
  }
  const std::uint32_t entries = static_cast<std::uint32_t>(table_size(m));
  std::size_t best_kept = 1;  // the empty set always matches: both sides are 0
  const std::uint32_t nonempty = entries - 1;
  for (std::uint32_t keep = 0; keep < (std::uint32_t{1} << nonempty); ++keep) {
    const auto kept = static_cast<std::size_t>(std::popcount(keep));
    if (kept + 1 <= best_kept) continue;
    std::vector<std::pair<SubsetMask, BigRational>> log_entries;
    bool valid = true;
    for (std::uint32_t idx = 0; idx < nonempty; ++idx) {
      if (((keep >> idx) & 1u) == 0) continue;
      const SubsetMask t(idx + 1, m);
      if (f.at(t).sign() < 0) {
        valid = false;  // no coverage function matches a negative value
        break;
      }
      log_entries.emplace_back(t, f.at(t));
    }
    if (!valid) continue;
    if (completion_feasible(QueryLog(m, std::move(log_entries))).feasible) {
      best_kept = kept + 1;
    }
  }
  return BigRational(BigInt(entries - best_kept), BigInt(entries));
}

}  // namespace covkit
