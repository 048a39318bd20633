#pragma once

#include "covkit/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace covkit {

enum class RowSense { kGreaterEqual, kEqual };

// One constraint sum_j coeffs[j] * x_j  (>= | =)  rhs  over variables x >= 0.
struct LinearRow {
  std::vector<BigRational> coeffs;
  RowSense sense = RowSense::kGreaterEqual;
  BigRational rhs;
};

struct FeasiblePoint {
  std::vector<BigRational> x;
};

// Infeasibility certificate: one multiplier per input row, non-negative on
// inequality rows, sign-free on equality rows, with
//   sum_i multipliers[i] * coeffs[i][j] <= 0 for every variable j, and
//   sum_i multipliers[i] * rhs[i] > 0.
// Any x >= 0 satisfying the rows would contradict the combined inequality,
// so the certificate refutes feasibility on its own.
struct FarkasRay {
  std::vector<BigRational> multipliers;
};

using FeasibilityOutcome = std::variant<FeasiblePoint, FarkasRay>;

// Exact feasibility test for { x >= 0 : rows }. Phase-1 simplex on a dense
// rational tableau with Bland's pivoting rule, so termination is guaranteed
// and every sign test is exact. Returns either a feasible point or a
// verified Farkas certificate.
class FeasibilitySolver {
 public:
  FeasibilityOutcome solve(std::size_t num_vars, const std::vector<LinearRow>& rows) {
    const std::size_t nrows = rows.size();
    for (const auto& row : rows) {
      if (row.coeffs.size() != num_vars) {
        throw std::invalid_argument("FeasibilitySolver: row width mismatch");
      }
    }

    // Normalize to equalities with non-negative right-hand sides.
    // GE rows gain a surplus variable; rows whose rhs stays positive after
    // scaling gain an artificial variable (the initial basis). GE rows with
    // rhs <= 0 are scaled by -1 so their surplus turns into a basic slack.
    std::vector<int> scale(nrows, 1);
    std::vector<std::ptrdiff_t> surplus_col(nrows, -1);
    std::vector<std::ptrdiff_t> artificial_col(nrows, -1);
    std::size_t ncols = num_vars;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (rows[i].sense == RowSense::kGreaterEqual) {
        surplus_col[i] = static_cast<std::ptrdiff_t>(ncols++);
        if (rows[i].rhs.sign() <= 0) scale[i] = -1;
      } else if (rows[i].rhs.sign() < 0) {
        scale[i] = -1;
      }
      if (!(rows[i].sense == RowSense::kGreaterEqual && rows[i].rhs.sign() <= 0)) {
        artificial_col[i] = -2;  // reserve after surplus columns are counted
      }
    }
    for (std::size_t i = 0; i < nrows; ++i) {
      if (artificial_col[i] == -2) {
        artificial_col[i] = static_cast<std::ptrdiff_t>(ncols++);
      }
    }

    std::vector<std::vector<BigRational>> a(nrows, std::vector<BigRational>(ncols));
    std::vector<BigRational> rhs(nrows);
    std::vector<std::size_t> basis(nrows);
    std::vector<std::size_t> initial_basis(nrows);

    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < num_vars; ++j) {
        a[i][j] = scale[i] > 0 ? rows[i].coeffs[j] : -rows[i].coeffs[j];
      }
      rhs[i] = scale[i] > 0 ? rows[i].rhs : -rows[i].rhs;
      if (surplus_col[i] >= 0) {
        a[i][static_cast<std::size_t>(surplus_col[i])] = scale[i] > 0 ? -1 : 1;
      }
      if (artificial_col[i] >= 0) {
        const auto col = static_cast<std::size_t>(artificial_col[i]);
        a[i][col] = 1;
        basis[i] = initial_basis[i] = col;
      } else {
        // GE row with non-positive rhs: the scaled surplus is a basic slack.
        const auto col = static_cast<std::size_t>(surplus_col[i]);
        basis[i] = initial_basis[i] = col;
      }
    }

    // Phase-1 objective: minimize the sum of artificials. The z-row holds
    // reduced costs; z_rhs holds the negated objective value.
    std::vector<BigRational> reduced(ncols);
    BigRational z_rhs;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (artificial_col[i] < 0) continue;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (static_cast<std::ptrdiff_t>(j) == artificial_col[i]) continue;
        if (!a[i][j].is_zero()) reduced[j] -= a[i][j];
      }
      z_rhs -= rhs[i];
    }

    while (true) {
      // Bland: entering column is the lowest index with negative reduced cost.
      std::size_t entering = ncols;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (reduced[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering == ncols) break;

      // Ratio test; ties broken by the smallest basic variable index.
      std::size_t leaving = nrows;
      BigRational best_ratio;
      for (std::size_t i = 0; i < nrows; ++i) {
        if (a[i][entering].sign() <= 0) continue;
        BigRational ratio = rhs[i] / a[i][entering];
        if (leaving == nrows || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == nrows) {
        // The phase-1 objective is bounded below by zero, so an unbounded
        // direction cannot occur.
        throw std::logic_error("FeasibilitySolver: unbounded phase-1 objective");
      }
      pivot(a, rhs, reduced, z_rhs, leaving, entering, ncols, nrows);
      basis[leaving] = entering;
    }

    const BigRational objective = -z_rhs;
    if (objective.is_zero()) {
      FeasiblePoint point;
      point.x.assign(num_vars, BigRational(0));
      for (std::size_t i = 0; i < nrows; ++i) {
        if (basis[i] < num_vars) point.x[basis[i]] = rhs[i];
      }
      return point;
    }

    // Infeasible. The simplex multipliers sit under the initial basis
    // columns of the final z-row: y_i = cost(initial basic of row i) -
    // reduced cost of that column. Undo the row scaling to express the
    // certificate against the input rows, then verify it exactly.
    FarkasRay ray;
    ray.multipliers.resize(nrows);
    for (std::size_t i = 0; i < nrows; ++i) {
      const BigRational cost = artificial_col[i] >= 0 ? BigRational(1) : BigRational(0);
      BigRational y = cost - reduced[initial_basis[i]];
      ray.multipliers[i] = scale[i] > 0 ? y : -y;
    }
    verify_certificate(num_vars, rows, ray);
    return ray;
  }

 private:
  static void pivot(std::vector<std::vector<BigRational>>& a,
                    std::vector<BigRational>& rhs, std::vector<BigRational>& reduced,
                    BigRational& z_rhs, std::size_t pr, std::size_t pc,
                    std::size_t ncols, std::size_t nrows) {
    BigRational inv = a[pr][pc];
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!a[pr][j].is_zero()) a[pr][j] /= inv;
    }
    rhs[pr] /= inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == pr || a[i][pc].is_zero()) continue;
      const BigRational factor = a[i][pc];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (!a[pr][j].is_zero()) a[i][j] -= factor * a[pr][j];
      }
      rhs[i] -= factor * rhs[pr];
    }
    if (!reduced[pc].is_zero()) {
      const BigRational factor = reduced[pc];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (!a[pr][j].is_zero()) reduced[j] -= factor * a[pr][j];
      }
      z_rhs -= factor * rhs[pr];
    }
  }

  static void verify_certificate(std::size_t num_vars, const std::vector<LinearRow>& rows,
                                 const FarkasRay& ray) {
    BigRational combined_rhs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].sense == RowSense::kGreaterEqual && ray.multipliers[i].sign() < 0) {
        throw std::logic_error("FeasibilitySolver: negative multiplier on inequality row");
      }
      combined_rhs += ray.multipliers[i] * rows[i].rhs;
    }
    if (combined_rhs.sign() <= 0) {
      throw std::logic_error("FeasibilitySolver: certificate has non-positive rhs");
    }
    for (std::size_t j = 0; j < num_vars; ++j) {
      BigRational col;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].coeffs[j].is_zero()) col += ray.multipliers[i] * rows[i].coeffs[j];
      }
      if (col.sign() > 0) {
        throw std::logic_error("FeasibilitySolver: certificate has positive column");
      }
    }
  }
};

inline FeasibilityOutcome solve_feasibility(std::size_t num_vars,
                                            const std::vector<LinearRow>& rows) {
  FeasibilitySolver solver;
  return solver.solve(num_vars, rows);
}

}  // namespace covkit
