#pragma once

#include "covkit/rational.hpp"

#include <stdexcept>
#include <vector>

namespace covkit {

// Pascal-triangle table of exact binomial coefficients, rows 0..max_n.
// Construction does the full fill; afterwards the table is immutable, so a
// fully constructed instance may be shared across threads freely. Do not
// share a partially constructed one.
class BinomialTable {
 public:
  explicit BinomialTable(int max_n) {
    if (max_n < 0) throw std::invalid_argument("BinomialTable: negative max_n");
    rows_.resize(static_cast<std::size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
      auto& row = rows_[static_cast<std::size_t>(n)];
      row.resize(static_cast<std::size_t>(n) + 1);
      row.front() = 1;
      row.back() = 1;
      for (int k = 1; k < n; ++k) {
        const auto& prev = rows_[static_cast<std::size_t>(n) - 1];
        row[static_cast<std::size_t>(k)] =
            prev[static_cast<std::size_t>(k) - 1] + prev[static_cast<std::size_t>(k)];
      }
    }
  }

  int max_n() const { return static_cast<int>(rows_.size()) - 1; }

  // C(n, k); zero outside 0 <= k <= n, throws if n exceeds the table.
  const BigInt& at(int n, int k) const {
    static const BigInt kZero(0);
    if (n < 0 || n > max_n()) {
      throw std::out_of_range("BinomialTable: row out of range");
    }
    if (k < 0 || k > n) return kZero;
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

}  // namespace covkit
