#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace covkit {

// All core arithmetic is exact. Floating point is banned from the analysis
// paths; sign and zero tests below are exact integer comparisons.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const BigRational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator(const BigRational& r) {
  return boost::multiprecision::denominator(r);
}

inline int sign_of(const BigRational& r) { return r.sign(); }

// Canonical text form: "p/q" with q > 0 and gcd(p, q) = 1, or just "p" when
// the value is an integer. The backend keeps rationals canonical, so str()
// already produces exactly this.
inline std::string format_rational(const BigRational& r) { return r.str(); }

inline std::string format_int(const BigInt& n) { return n.str(); }

namespace detail {

inline bool parse_big_int(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  out = BigInt(std::string(text));
  return true;
}

}  // namespace detail

// Accepts "p", "p/q", optional leading sign on either part, arbitrary
// magnitude. Rejects q = 0, whitespace, and anything else. The result is
// canonicalized by the backend.
inline BigRational parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  BigInt num, den;
  if (slash == std::string_view::npos) {
    if (!detail::parse_big_int(text, num)) {
      throw std::invalid_argument("parse_rational: malformed rational: '" +
                                  std::string(text) + "'");
    }
    return BigRational(num);
  }
  if (!detail::parse_big_int(text.substr(0, slash), num) ||
      !detail::parse_big_int(text.substr(slash + 1), den)) {
    throw std::invalid_argument("parse_rational: malformed rational: '" +
                                std::string(text) + "'");
  }
  if (den.is_zero()) {
    throw std::invalid_argument("parse_rational: zero denominator: '" +
                                std::string(text) + "'");
  }
  return BigRational(num, den);
}

namespace detail {

inline BigInt product_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return BigInt(1);
  if (hi - lo < 8) {
    BigInt p = lo;
    for (std::uint64_t v = lo + 1; v <= hi; ++v) p *= v;
    return p;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return product_range(lo, mid) * product_range(mid + 1, hi);
}

}  // namespace detail

// n! by binary-split product; keeps even 2^16! and beyond tractable.
inline BigInt factorial(std::uint64_t n) {
  if (n < 2) return BigInt(1);
  return detail::product_range(2, n);
}

// Smallest integer >= r. Exact.
inline BigInt ceil_rational(const BigRational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (q * den != num && num > 0) ++q;
  return q;
}

}  // namespace covkit
