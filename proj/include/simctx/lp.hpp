#pragma once

// Exact rational linear programming: a dense two-phase simplex method with
// Bland's anti-cycling rule, plus the small exact linear-algebra kernels the
// polytope code needs.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "simctx/semiring.hpp"

namespace simctx {

struct SparseRow {
  std::vector<std::pair<std::size_t, Rational>> coeffs;
  Rational rhs = 0;
};

/// maximize c.x  s.t.  E x = b_E,  U x <= b_U,  x >= 0.
/// An empty objective means pure feasibility.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<SparseRow> equalities;
  std::vector<SparseRow> upper_bounds;
  std::vector<Rational> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class PivotRule {
  Bland,    // smallest improving index, smallest basic index on ratio ties
  Dantzig,  // largest reduced cost; can cycle on degenerate problems
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

struct LpOptions {
  PivotRule rule = PivotRule::Bland;
  std::size_t max_pivots = 0;  // 0: unlimited
};

LpResult lp_solve(const LinearProgram& lp, LpOptions options = {});

using Matrix = std::vector<std::vector<Rational>>;

std::size_t rank(Matrix a);

/// Unique solution of a square system, or nothing when singular.
std::optional<std::vector<Rational>> solve_square(Matrix a, std::vector<Rational> b);

/// Some solution of a (possibly non-square) system, or nothing when inconsistent.
std::optional<std::vector<Rational>> solve_any(Matrix a, std::vector<Rational> b);

/// Rows of [A | b] reduced to an independent set spanning the same affine
/// space, or nothing when the system is inconsistent.
std::optional<std::pair<Matrix, std::vector<Rational>>> independent_rows(Matrix a, std::vector<Rational> b);

Matrix to_dense(const std::vector<SparseRow>& rows, std::size_t num_vars, std::vector<Rational>* rhs = nullptr);

}  // namespace simctx
