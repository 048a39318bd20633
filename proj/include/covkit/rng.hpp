#pragma once

#include "covkit/rational.hpp"
#include "covkit/subset.hpp"

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace covkit {

// Deterministic seeded randomness. Every randomized routine in the library
// and CLI draws from one of these, so a fixed seed reproduces every report
// byte for byte on any platform.
//
// Algorithm (fixed, do not change without a format bump):
//   - engine: std::mt19937_64 seeded directly with the 64-bit seed. The
//     engine's output sequence is pinned by the C++ standard, unlike the
//     standard distributions, which is why all draws below are hand-rolled.
//   - raw64(): one engine step.
//   - below(n): rejection sampling on the low bit_width(n-1) bits of
//     successive raw64() outputs. Uniform on {0, ..., n-1}.
//   - subset(m): the low m bits of one raw64() output. Each element is
//     included independently with probability 1/2.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw64() { return engine_(); }

  // Uniform on {0, ..., n-1}. n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SeededRng::below: n must be positive");
    if (n == 1) return 0;
    const int bits = std::bit_width(n - 1);
    const std::uint64_t mask =
        bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    while (true) {
      const std::uint64_t v = engine_() & mask;
      if (v < n) return v;
    }
  }

  // Uniform over all 2^m subsets of {1, ..., m}.
  SubsetMask subset(int ground_size) {
    const std::uint64_t raw = engine_();
    const std::uint32_t mask =
        ground_size == 0
            ? 0u
            : static_cast<std::uint32_t>(raw) &
                  ((ground_size >= 32 ? ~std::uint32_t{0}
                                      : (std::uint32_t{1} << ground_size) - 1u));
    return SubsetMask(mask, ground_size);
  }

  // Uniform over nonempty subsets, by rejection.
  SubsetMask nonempty_subset(int ground_size) {
    if (ground_size == 0) {
      throw std::invalid_argument("SeededRng: no nonempty subset of an empty ground set");
    }
    while (true) {
      SubsetMask s = subset(ground_size);
      if (!s.is_empty()) return s;
    }
  }

  // k distinct subsets, drawn by rejection, in draw order.
  std::vector<SubsetMask> distinct_subsets(int ground_size, std::size_t k) {
    if (k > table_size(ground_size)) {
      throw std::invalid_argument("SeededRng: more distinct subsets than exist");
    }
    std::vector<SubsetMask> out;
    std::vector<bool> seen(table_size(ground_size), false);
    while (out.size() < k) {
      SubsetMask s = subset(ground_size);
      if (!seen[s.bits()]) {
        seen[s.bits()] = true;
        out.push_back(s);
      }
    }
    return out;
  }

  // k distinct nonempty subsets, drawn by rejection, in draw order.
  std::vector<SubsetMask> distinct_nonempty_subsets(int ground_size, std::size_t k) {
    if (k + 1 > table_size(ground_size)) {
      throw std::invalid_argument("SeededRng: more distinct nonempty subsets than exist");
    }
    std::vector<SubsetMask> out;
    std::vector<bool> seen(table_size(ground_size), false);
    while (out.size() < k) {
      SubsetMask s = subset(ground_size);
      if (!s.is_empty() && !seen[s.bits()]) {
        seen[s.bits()] = true;
        out.push_back(s);
      }
    }
    return out;
  }

  // Uniform over { 1/max_den, 2/max_den, ..., max_num * max_den / max_den }
  // numerators, i.e. (1 + below(max_num)) / (1 + below(max_den)). Strictly
  // positive, suitable for coverage weights.
  BigRational positive_rational(std::uint64_t max_num, std::uint64_t max_den) {
    const std::uint64_t num = 1 + below(max_num);
    const std::uint64_t den = 1 + below(max_den);
    return BigRational(BigInt(num), BigInt(den));
  }

  // Numerator uniform on {-range, ..., range}, denominator on {1, ..., max_den}.
  BigRational signed_rational(std::uint64_t range, std::uint64_t max_den) {
    const std::int64_t num =
        static_cast<std::int64_t>(below(2 * range + 1)) - static_cast<std::int64_t>(range);
    const std::uint64_t den = 1 + below(max_den);
    return BigRational(BigInt(num), BigInt(den));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace covkit
