#include "simctx/lp.hpp"

#include "simctx/errors.hpp"

namespace simctx {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, std::vector<Rational>(cols + 1)), basis_(rows), cols_(cols) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][cols_]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  // Reduced costs r_j = c_j - c_B B^{-1} A_j and the current objective value.
  void price(const std::vector<Rational>& c) {
    cost_ = c;
    reduced_.assign(cols_, 0);
    value_ = 0;
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = c[j];
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (t_[i][j] != 0) reduced_[j] -= cb * t_[i][j];
      }
      value_ += cb * t_[i][cols_];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rational>& pr = t_[r];
    const Rational inv = Rational(1) / pr[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j : nz) t_[i][j] -= f * pr[j];
    }
    if (reduced_[c] != 0) {
      const Rational f = reduced_[c];
      for (std::size_t j : nz) {
        if (j < cols_) reduced_[j] -= f * pr[j];
      }
      value_ += f * pr[cols_];
    }
    basis_[r] = c;
  }

  // Runs simplex iterations until optimal or unbounded.
  LpStatus optimize(const std::vector<bool>& allowed, const LpOptions& opt, std::size_t& pivots) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allowed[j] || reduced_[j] <= 0) continue;
        if (enter == cols_) {
          enter = j;
          if (opt.rule == PivotRule::Bland) break;
        } else if (reduced_[j] > reduced_[enter]) {
          enter = j;
        }
      }
      if (enter == cols_) return LpStatus::Optimal;

      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == rows() || ratio < best ||
            (ratio == best && (opt.rule == PivotRule::Bland ? basis_[i] < basis_[leave] : false))) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return LpStatus::Unbounded;
      if (opt.max_pivots != 0 && pivots >= opt.max_pivots) return LpStatus::IterationLimit;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  const Rational& value() const { return value_; }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
  Rational value_ = 0;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp, LpOptions options) {
  const std::size_t n = lp.num_vars;
  const std::size_t me = lp.equalities.size();
  const std::size_t mu = lp.upper_bounds.size();
  const std::size_t m = me + mu;
  if (!lp.objective.empty() && lp.objective.size() != n) throw UsageError("objective length differs from variable count");

  // Rows needing an artificial: all equalities and the <= rows with negative rhs.
  std::vector<bool> needs_art(m, true);
  for (std::size_t k = 0; k < mu; ++k) needs_art[me + k] = lp.upper_bounds[k].rhs < 0;
  std::size_t num_art = 0;
  for (bool b : needs_art) num_art += b ? 1 : 0;

  const std::size_t slack0 = n;
  const std::size_t art0 = n + mu;
  const std::size_t cols = n + mu + num_art;
  Tableau tab(m, cols);

  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const SparseRow& row = i < me ? lp.equalities[i] : lp.upper_bounds[i - me];
    for (const auto& [j, a] : row.coeffs) {
      if (j >= n) throw UsageError("constraint references a missing variable");
      tab.at(i, j) += a;
    }
    tab.rhs(i) = row.rhs;
    if (i >= me) tab.at(i, slack0 + (i - me)) = 1;
    if (row.rhs < 0) {
      for (std::size_t j = 0; j < cols; ++j) tab.at(i, j) = -tab.at(i, j);
      tab.rhs(i) = -tab.rhs(i);
    }
    if (needs_art[i]) {
      tab.at(i, art) = 1;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = slack0 + (i - me);
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);

  if (num_art > 0) {
    std::vector<Rational> phase1(cols, 0);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
    tab.price(phase1);
    LpStatus st = tab.optimize(allowed, options, result.pivots);
    if (st == LpStatus::IterationLimit) {
      result.status = st;
      return result;
    }
    if (tab.value() < 0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basis()[i] < art0) continue;
      std::size_t col = art0;
      for (std::size_t j = 0; j < art0; ++j) {
        if (tab.at(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col == art0) {
        tab.erase_row(i);
      } else {
        tab.pivot(i, col);
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  std::vector<Rational> c(cols, 0);
  for (std::size_t j = 0; j < lp.objective.size(); ++j) c[j] = lp.objective[j];
  tab.price(c);
  if (!lp.objective.empty()) {
    LpStatus st = tab.optimize(allowed, options, result.pivots);
    if (st != LpStatus::Optimal) {
      result.status = st;
      return result;
    }
  }
  result.status = LpStatus::Optimal;
  result.value = tab.value();
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basis()[i] < n) result.x[tab.basis()[i]] = tab.rhs(i);
  }
  return result;
}

// ---------------------------------------------------------------- linear algebra

namespace {

// In-place reduced row echelon form of the first `cols` columns; returns the
// pivot column of each nonzero row in order.
std::vector<std::size_t> rref(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational inv = Rational(1) / a[row][c];
    for (auto& v : a[row]) {
      if (v != 0) v *= inv;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) {
        if (a[row][j] != 0) a[i][j] -= f * a[row][j];
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

Matrix augment(Matrix a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  return a;
}

}  // namespace

std::size_t rank(Matrix a) {
  if (a.empty()) return 0;
  return rref(a, a.front().size()).size();
}

std::optional<std::vector<Rational>> solve_square(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  Matrix aug = augment(std::move(a), b);
  auto piv = rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[piv[i]] = aug[i][n];
  return x;
}

std::optional<std::vector<Rational>> solve_any(Matrix a, std::vector<Rational> b) {
  if (a.empty()) return std::vector<Rational>{};
  const std::size_t n = a.front().size();
  Matrix aug = augment(std::move(a), b);
  auto piv = rref(aug, n);
  for (std::size_t i = piv.size(); i < aug.size(); ++i) {
    if (aug[i][n] != 0) return std::nullopt;
  }
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][n];
  return x;
}

std::optional<std::pair<Matrix, std::vector<Rational>>> independent_rows(Matrix a, std::vector<Rational> b) {
  if (a.empty()) return std::pair<Matrix, std::vector<Rational>>{};
  const std::size_t n = a.front().size();
  Matrix aug = augment(std::move(a), b);
  auto piv = rref(aug, n);
  for (std::size_t i = piv.size(); i < aug.size(); ++i) {
    if (aug[i][n] != 0) return std::nullopt;
  }
  Matrix out;
  std::vector<Rational> rhs;
  for (std::size_t i = 0; i < piv.size(); ++i) {
    rhs.push_back(aug[i][n]);
    aug[i].pop_back();
    out.push_back(std::move(aug[i]));
  }
  return std::pair{std::move(out), std::move(rhs)};
}

Matrix to_dense(const std::vector<SparseRow>& rows, std::size_t num_vars, std::vector<Rational>* rhs) {
  Matrix a(rows.size(), std::vector<Rational>(num_vars));
  if (rhs) rhs->clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, v] : rows[i].coeffs) a[i][j] += v;
    if (rhs) rhs->push_back(rows[i].rhs);
  }
  return a;
}

}  // namespace simctx
