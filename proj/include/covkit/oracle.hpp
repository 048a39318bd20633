#pragma once

#include "covkit/adversarial.hpp"
#include "covkit/rational.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>

namespace covkit {

// Query access to a set function with an exact access counter. Backends:
// a dense table (user-supplied table files load into this), a succinct
// coverage instance, or the closed-form adversarial family.
//
// Query complexity claims in this library are stated against this counter,
// so every eval() bumps it exactly once. The increment is atomic (relaxed),
// which keeps the count race-free if one oracle is shared across threads.
class CountingOracle {
 public:
  explicit CountingOracle(DenseSetFunction table) : backend_(std::move(table)) {}
  explicit CountingOracle(CoverageInstance instance) : backend_(std::move(instance)) {}
  explicit CountingOracle(AdversarialFunction fn) : backend_(std::move(fn)) {}

  CountingOracle(CountingOracle&& other) noexcept
      : backend_(std::move(other.backend_)),
        queries_(other.queries_.load(std::memory_order_relaxed)) {}

  CountingOracle(const CountingOracle&) = delete;
  CountingOracle& operator=(const CountingOracle&) = delete;

  int ground_size() const {
    return std::visit([](const auto& b) { return b.ground_size(); }, backend_);
  }

  BigRational eval(const SubsetMask& t) const {
    if (t.ground_size() != ground_size()) {
      throw std::invalid_argument("CountingOracle: ground size mismatch");
    }
    queries_.fetch_add(1, std::memory_order_relaxed);
    return std::visit(
        [&t](const auto& b) -> BigRational {
          if constexpr (std::is_same_v<std::decay_t<decltype(b)>, DenseSetFunction>) {
            return b.at(t);
          } else {
            return b.eval(t);
          }
        },
        backend_);
  }

  std::uint64_t queries_made() const { return queries_.load(std::memory_order_relaxed); }
  void reset_counter() { queries_.store(0, std::memory_order_relaxed); }

  bool is_dense_table() const {
    return std::holds_alternative<DenseSetFunction>(backend_);
  }

 private:
  std::variant<DenseSetFunction, CoverageInstance, AdversarialFunction> backend_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace covkit
