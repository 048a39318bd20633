#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace covkit {

// Hard cap on the ground-set size. Dense tables get a tighter default guard,
// see dense_limit.hpp.
inline constexpr int kMaxGroundSize = 30;

// A subset of the ground set {1, ..., m}, stored as a bitmask.
// Element i corresponds to bit (i - 1). The ground size travels with the
// value so that mixing subsets of different ground sets is a hard error
// instead of a silent wrong answer.
class SubsetMask {
 public:
  // Empty set over the empty ground set; placeholder value for report structs.
  SubsetMask() : bits_(0), m_(0) {}

  SubsetMask(std::uint32_t bits, int ground_size) : bits_(bits), m_(ground_size) {
    if (ground_size < 0 || ground_size > kMaxGroundSize) {
      throw std::invalid_argument("SubsetMask: ground size out of range [0, 30]: " +
                                  std::to_string(ground_size));
    }
    if (ground_size < 32 && (bits >> ground_size) != 0) {
      throw std::invalid_argument("SubsetMask: bits outside the ground set");
    }
  }

  static SubsetMask empty_set(int ground_size) { return SubsetMask(0, ground_size); }

  static SubsetMask full_set(int ground_size) {
    return SubsetMask(ground_size == 0 ? 0u : (std::uint32_t{1} << ground_size) - 1u,
                      ground_size);
  }

  // Elements are 1-based and must lie in {1, ..., ground_size}.
  static SubsetMask from_elements(int ground_size, std::initializer_list<int> elements) {
    std::uint32_t bits = 0;
    SubsetMask result(0, ground_size);
    for (int e : elements) {
      if (e < 1 || e > ground_size) {
        throw std::invalid_argument("SubsetMask: element " + std::to_string(e) +
                                    " outside ground set of size " +
                                    std::to_string(ground_size));
      }
      bits |= std::uint32_t{1} << (e - 1);
    }
    result.bits_ = bits;
    return result;
  }

  std::uint32_t bits() const { return bits_; }
  int ground_size() const { return m_; }
  int count() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_set(m_).bits_; }

  bool contains(int element) const {
    return element >= 1 && element <= m_ && ((bits_ >> (element - 1)) & 1u) != 0;
  }

  SubsetMask complement() const { return SubsetMask(bits_ ^ full_set(m_).bits_, m_); }

  SubsetMask with(int element) const {
    check_element(element);
    return SubsetMask(bits_ | (std::uint32_t{1} << (element - 1)), m_);
  }

  SubsetMask without(int element) const {
    check_element(element);
    return SubsetMask(bits_ & ~(std::uint32_t{1} << (element - 1)), m_);
  }

  bool subset_of(const SubsetMask& other) const {
    check_same_ground(other);
    return (bits_ & ~other.bits_) == 0;
  }

  bool proper_subset_of(const SubsetMask& other) const {
    return subset_of(other) && bits_ != other.bits_;
  }

  bool intersects(const SubsetMask& other) const {
    check_same_ground(other);
    return (bits_ & other.bits_) != 0;
  }

  SubsetMask set_union(const SubsetMask& other) const {
    check_same_ground(other);
    return SubsetMask(bits_ | other.bits_, m_);
  }

  SubsetMask set_intersection(const SubsetMask& other) const {
    check_same_ground(other);
    return SubsetMask(bits_ & other.bits_, m_);
  }

  // Sorted, 1-based.
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint32_t rest = bits_; rest != 0; rest &= rest - 1) {
      out.push_back(std::countr_zero(rest) + 1);
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    a.check_same_ground(b);
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const SubsetMask& a, const SubsetMask& b) { return !(a == b); }

  void check_same_ground(const SubsetMask& other) const {
    if (m_ != other.m_) {
      throw std::invalid_argument("SubsetMask: ground size mismatch (" +
                                  std::to_string(m_) + " vs " +
                                  std::to_string(other.m_) + ")");
    }
  }

 private:
  void check_element(int element) const {
    if (element < 1 || element > m_) {
      throw std::invalid_argument("SubsetMask: element out of range");
    }
  }

  std::uint32_t bits_;
  int m_;
};

// Visits every X with X subset of S, in ascending bit-pattern order, starting
// with the empty set and ending with S itself. The (x - s) & s step walks
// submasks in increasing numeric order.
template <typename Fn>
void for_each_subset(const SubsetMask& s, Fn&& fn) {
  const std::uint32_t sb = s.bits();
  std::uint32_t x = 0;
  while (true) {
    fn(SubsetMask(x, s.ground_size()));
    if (x == sb) break;
    x = (x - sb) & sb;
  }
}

// Ordered sequence of all 2^|S| subsets of S, ascending by bit pattern.
inline std::vector<SubsetMask> enumerate_subsets(const SubsetMask& s) {
  std::vector<SubsetMask> out;
  out.reserve(std::size_t{1} << s.count());
  for_each_subset(s, [&out](const SubsetMask& x) { out.push_back(x); });
  return out;
}

inline std::size_t table_size(int ground_size) {
  return std::size_t{1} << ground_size;
}

}  // namespace covkit
