#include "simctx/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "simctx/errors.hpp"

namespace simctx {

namespace {

using LinearForm = DistributionPolytope::LinearForm;

void add_scaled(LinearForm& acc, const LinearForm& f, const Rational& c) {
  for (const auto& [k, a] : f.coeffs) {
    Rational& slot = acc.coeffs[k];
    slot += c * a;
    if (slot == 0) acc.coeffs.erase(k);
  }
  acc.constant += c * f.constant;
}

SparseRow equation(const LinearForm& f, const Rational& value) {
  SparseRow row;
  for (const auto& [k, a] : f.coeffs) row.coeffs.emplace_back(k, a);
  row.rhs = value - f.constant;
  return row;
}

// One row per (generator, outcome): sum over maps phi with phi(x) = y.
std::vector<SparseRow> theta_rows(const SimpDist& p, const std::vector<DetMap>& maps) {
  const SSet2& x = p.space();
  const Target target = p.target();
  std::vector<SparseRow> rows;
  for (int dim = 0; dim <= 2; ++dim) {
    const auto outcomes = target.outcomes(dim);
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      std::vector<SparseRow> local(outcomes.size());
      for (std::size_t k = 0; k < outcomes.size(); ++k) local[k].rhs = p.weight(dim, static_cast<int>(idx), outcomes[k]).value();
      for (std::size_t j = 0; j < maps.size(); ++j)
        local[target.outcome_index(maps[j].value(x, dim, static_cast<int>(idx)))].coeffs.emplace_back(j, 1);
      for (auto& r : local) rows.push_back(std::move(r));
    }
  }
  return rows;
}

SparseRow sum_row(std::size_t n) {
  SparseRow r;
  for (std::size_t j = 0; j < n; ++j) r.coeffs.emplace_back(j, 1);
  r.rhs = 1;
  return r;
}

Dist<DetMap> weights_to_dist(const std::vector<DetMap>& maps, const std::vector<Rational>& x, SemiringKind s) {
  std::map<DetMap, Scalar> w;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    if (x[j] != 0) w.emplace(maps[j], Scalar(s, x[j]));
  }
  return Dist<DetMap>::from_weights(s, std::move(w));
}

}  // namespace

// ---------------------------------------------------------------- decisions

Noncontextuality is_noncontextual(const SimpDist& p) {
  Noncontextuality out;
  const SSet2& x = p.space();
  const SemiringKind s = p.semiring();

  if (s == SemiringKind::Boolean) {
    const auto supp = support(p);
    if (supp.empty()) return out;
    for (int dim = 0; dim <= 2; ++dim) {
      for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
        for (const auto& [y, w] : p.at(dim, static_cast<int>(idx))) {
          bool covered = std::any_of(supp.begin(), supp.end(), [&](const DetMap& phi) { return phi.value(x, dim, static_cast<int>(idx)) == y; });
          if (!covered) return out;
        }
      }
    }
    std::map<DetMap, Scalar> w;
    for (const DetMap& phi : supp) w.emplace(phi, Scalar::one(s));
    out.noncontextual = true;
    out.witness = Dist<DetMap>::from_weights(s, std::move(w));
    return out;
  }

  const auto maps = enumerate_det_maps(x, p.target());
  std::vector<SparseRow> rows = theta_rows(p, maps);
  rows.push_back(sum_row(maps.size()));

  std::optional<std::vector<Rational>> solution;
  if (s == SemiringKind::RealField) {
    std::vector<Rational> rhs;
    Matrix a = to_dense(rows, maps.size(), &rhs);
    solution = solve_any(std::move(a), std::move(rhs));
  } else {
    LinearProgram lp;
    lp.num_vars = maps.size();
    lp.equalities = std::move(rows);
    LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Optimal) solution = std::move(r.x);
  }
  if (!solution) return out;
  out.noncontextual = true;
  out.witness = weights_to_dist(maps, *solution, s);
  return out;
}

ContextualFraction contextual_fraction(const SimpDist& p) {
  if (p.semiring() != SemiringKind::NonnegRational) throw Unsupported("contextual fraction needs nonnegative rational weights");
  const SSet2& x = p.space();
  const Target target = p.target();
  const auto maps = enumerate_det_maps(x, target);

  LinearProgram lp;
  lp.num_vars = maps.size();
  lp.upper_bounds = theta_rows(p, maps);
  lp.upper_bounds.push_back(sum_row(maps.size()));
  lp.objective.assign(maps.size(), 1);
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) throw ContractViolation("contextual-fraction LP did not reach an optimum");

  ContextualFraction out;
  const Rational nc = r.value;
  out.value = 1 - nc;
  if (nc > 0) {
    std::vector<Rational> scaled = r.x;
    for (auto& v : scaled) v /= nc;
    out.noncontextual_part = weights_to_dist(maps, scaled, p.semiring());
  }
  if (out.value > 0) {
    SimpDist::Table table;
    for (int dim = 0; dim <= 2; ++dim) {
      const auto outcomes = target.outcomes(dim);
      for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
        std::vector<Rational> left(outcomes.size());
        for (std::size_t k = 0; k < outcomes.size(); ++k) left[k] = p.weight(dim, static_cast<int>(idx), outcomes[k]).value();
        for (std::size_t j = 0; j < maps.size(); ++j)
          left[target.outcome_index(maps[j].value(x, dim, static_cast<int>(idx)))] -= r.x[j];
        std::map<Outcome, Scalar> w;
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
          if (left[k] != 0) w.emplace(outcomes[k], Scalar(p.semiring(), left[k] / out.value));
        }
        table[static_cast<std::size_t>(dim)].push_back(OutcomeDist::from_weights(p.semiring(), std::move(w)));
      }
    }
    SimpDist rest(p.shared_space(), p.semiring(), target, std::move(table));
    if (!validate(rest).empty()) throw ContractViolation("contextual remainder is not a simplicial distribution");
    out.remainder = std::move(rest);
  }
  return out;
}

ChshReport chsh_check(const SimpDist& p) {
  const SSet2& x = p.space();
  if (p.target() != Target::nerve(2)) throw UsageError("chsh_check needs a nerve target over Z_2");
  if (x.num_triangles() != 4) throw UsageError("chsh_check needs exactly four triangles");
  std::set<int> firsts, seconds, composites;
  std::set<std::pair<int, int>> pairs;
  for (const Triangle& t : x.triangles()) {
    firsts.insert(t.d2);
    seconds.insert(t.d0);
    composites.insert(t.d1);
    pairs.emplace(t.d2, t.d0);
  }
  bool shape = firsts.size() == 2 && seconds.size() == 2 && pairs.size() == 4 && composites.size() == 4;
  for (int e : composites) shape = shape && firsts.count(e) == 0 && seconds.count(e) == 0;
  for (int e : firsts) shape = shape && seconds.count(e) == 0;
  if (!shape) throw UsageError("space does not have the CHSH shape");

  ChshReport rep;
  for (int t = 0; t < 4; ++t) {
    const OutcomeDist& q = p.at(2, t);
    rep.correlators[static_cast<std::size_t>(t)] =
        q.weight({0, 0}).value() + q.weight({1, 1}).value() - q.weight({0, 1}).value() - q.weight({1, 0}).value();
  }
  std::size_t k = 0;
  rep.all_satisfied = true;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) % 2 == 0) continue;
    Rational v = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      int sgn = (mask >> i) & 1U ? -1 : 1;
      rep.signs[k][i] = sgn;
      v += sgn * rep.correlators[i];
    }
    rep.values[k] = v;
    rep.satisfied[k] = abs(v) <= 2;
    rep.all_satisfied = rep.all_satisfied && rep.satisfied[k];
    ++k;
  }
  return rep;
}

// ---------------------------------------------------------------- polytope

DistributionPolytope::DistributionPolytope(std::shared_ptr<const SSet2> space, Target target)
    : space_(std::move(space)), target_(target) {
  const SSet2& x = *space_;
  // cofaces[dim][idx] = (coface index, face number)
  std::array<std::vector<std::vector<std::pair<int, int>>>, 2> cofaces;
  for (int dim = 0; dim <= 1; ++dim) cofaces[static_cast<std::size_t>(dim)].resize(x.count(dim));
  for (int dim = 1; dim <= 2; ++dim) {
    for (std::size_t c = 0; c < x.count(dim); ++c) {
      for (int i = 0; i <= dim; ++i)
        cofaces[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(x.face(dim, static_cast<int>(c), i))].emplace_back(static_cast<int>(c), i);
    }
  }

  auto make_free = [&](int dim, std::size_t idx) {
    const std::size_t n = target_.outcome_count(dim);
    auto& forms = entries_[static_cast<std::size_t>(dim)][idx];
    forms.resize(n);
    SparseRow norm;
    for (std::size_t k = 0; k < n; ++k) {
      forms[k].coeffs[vars_.size()] = 1;
      norm.coeffs.emplace_back(vars_.size(), 1);
      vars_.push_back({dim, static_cast<int>(idx), k});
    }
    norm.rhs = 1;
    equalities_.push_back(std::move(norm));
  };

  auto face_forms = [&](int dim, int c, int i) {
    const auto outcomes = target_.outcomes(dim + 1);
    std::vector<LinearForm> out(target_.outcome_count(dim));
    const auto& src = entries_[static_cast<std::size_t>(dim + 1)][static_cast<std::size_t>(c)];
    for (std::size_t w = 0; w < outcomes.size(); ++w)
      add_scaled(out[target_.outcome_index(target_.face(dim + 1, i, outcomes[w]))], src[w], 1);
    return out;
  };

  for (int dim = 2; dim >= 0; --dim) {
    auto& level = entries_[static_cast<std::size_t>(dim)];
    level.resize(x.count(dim));
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      if (dim == 0 && target_.kind == TargetKind::Nerve) {
        // The only 0-simplex of the nerve.
        level[idx].resize(1);
        level[idx][0].constant = 1;
        continue;
      }
      const auto& co = dim < 2 ? cofaces[static_cast<std::size_t>(dim)][idx] : std::vector<std::pair<int, int>>{};
      if (co.empty()) {
        make_free(dim, idx);
        continue;
      }
      level[idx] = face_forms(dim, co[0].first, co[0].second);
      for (std::size_t k = 1; k < co.size(); ++k) {
        auto other = face_forms(dim, co[k].first, co[k].second);
        for (std::size_t y = 0; y < other.size(); ++y) {
          LinearForm diff = other[y];
          add_scaled(diff, level[idx][y], -1);
          if (diff.coeffs.empty() && diff.constant == 0) continue;
          equalities_.push_back(equation(diff, 0));
        }
      }
    }
  }
}

const DistributionPolytope::LinearForm& DistributionPolytope::entry(int dim, int idx, std::size_t outcome) const {
  return entries_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(idx)).at(outcome);
}

std::vector<SparseRow> DistributionPolytope::restriction_rows(const SSetMap& f, const SimpDist& q) const {
  const SSet2& z = q.space();
  auto errors = check_simplicial(f, z, *space_);
  if (!errors.empty()) throw UsageError("restriction along a non-simplicial map: " + errors.front());
  if (q.target() != target_) throw UsageError("restriction value has another target");
  std::vector<SparseRow> rows;
  const std::array<const std::vector<int>*, 3> maps{&f.vertex, &f.edge, &f.triangle};
  for (int dim = 0; dim <= 2; ++dim) {
    if (dim == 0 && target_.kind == TargetKind::Nerve) continue;
    const auto outcomes = target_.outcomes(dim);
    const auto& m = *maps[static_cast<std::size_t>(dim)];
    for (std::size_t idx = 0; idx < m.size(); ++idx) {
      for (std::size_t k = 0; k < outcomes.size(); ++k)
        rows.push_back(equation(entry(dim, m[idx], k), q.weight(dim, static_cast<int>(idx), outcomes[k]).value()));
    }
  }
  return rows;
}

SimpDist DistributionPolytope::point(const std::vector<Rational>& x, SemiringKind semiring) const {
  if (x.size() != vars_.size()) throw UsageError("coordinate vector has the wrong length");
  SimpDist::Table table;
  for (int dim = 0; dim <= 2; ++dim) {
    const auto outcomes = target_.outcomes(dim);
    for (const auto& forms : entries_[static_cast<std::size_t>(dim)]) {
      std::map<Outcome, Scalar> w;
      for (std::size_t k = 0; k < outcomes.size(); ++k) {
        Rational v = forms[k].constant;
        for (const auto& [j, a] : forms[k].coeffs) v += a * x[j];
        if (v != 0) w.emplace(outcomes[k], Scalar(semiring, v));
      }
      table[static_cast<std::size_t>(dim)].push_back(OutcomeDist::from_weights(semiring, std::move(w)));
    }
  }
  return SimpDist(space_, semiring, target_, std::move(table));
}

std::vector<Rational> DistributionPolytope::coordinates(const SimpDist& p) const {
  if (p.target() != target_ || !(p.space() == *space_)) throw UsageError("distribution is not on this polytope's scenario");
  std::vector<Rational> x;
  x.reserve(vars_.size());
  for (const Variable& v : vars_) {
    const auto outcomes = target_.outcomes(v.dim);
    x.push_back(p.weight(v.dim, v.idx, outcomes[v.outcome]).value());
  }
  return x;
}

// ---------------------------------------------------------------- vertex enumeration

namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// The rank-th k-subset of {0..n-1} in lexicographic order.
std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    while (true) {
      std::uint64_t with = binomial(n - next - 1, k - slot - 1);
      if (rank < with) break;
      rank -= with;
      ++next;
    }
    out.push_back(next++);
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::optional<std::vector<Rational>> basic_solution(const Matrix& a, const std::vector<Rational>& b, const std::vector<std::size_t>& cols,
                                                    std::size_t n) {
  const std::size_t r = a.size();
  Matrix sq(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) sq[i][j] = a[i][cols[j]];
  }
  auto xb = solve_square(std::move(sq), b);
  if (!xb) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t j = 0; j < r; ++j) {
    if ((*xb)[j] < 0) return std::nullopt;
    x[cols[j]] = (*xb)[j];
  }
  return x;
}

std::vector<VertexReport> reports(const DistributionPolytope& poly, const std::vector<std::vector<Rational>>& points, bool analyze) {
  std::vector<VertexReport> out;
  for (const auto& x : points) {
    SimpDist p = poly.point(x);
    VertexReport rep{p, false, false, 0};
    if (analyze) {
      rep.is_deterministic = is_deterministic(p);
      rep.is_strongly_contextual = is_strongly_contextual(p);
      rep.contextual_fraction = contextual_fraction(p).value;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> basic_feasible_solutions(const Matrix& a0, const std::vector<Rational>& b0, Exec exec) {
  const std::size_t n = a0.empty() ? 0 : a0.front().size();
  auto reduced = independent_rows(a0, b0);
  if (!reduced) return {};
  const Matrix& a = reduced->first;
  const std::vector<Rational>& b = reduced->second;
  const std::size_t r = a.size();
  if (r == 0) return {std::vector<Rational>(n, 0)};

  std::set<std::vector<Rational>> found;
  const std::uint64_t total = binomial(n, r);
  if (exec == Exec::Serial) {
    std::vector<std::size_t> cols(r);
    for (std::size_t j = 0; j < r; ++j) cols[j] = j;
    do {
      if (auto x = basic_solution(a, b, cols, n)) found.insert(std::move(*x));
    } while (next_combination(cols, n));
  } else {
#pragma omp parallel
    {
      std::set<std::vector<Rational>> local;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) {
        auto cols = unrank_combination(static_cast<std::uint64_t>(k), n, r);
        if (auto x = basic_solution(a, b, cols, n)) local.insert(std::move(*x));
      }
#pragma omp critical(simctx_bfs_merge)
      found.merge(local);
    }
  }
  return {found.begin(), found.end()};
}

std::vector<VertexReport> enumerate_vertices(const DistributionPolytope& poly, const VertexOptions& options) {
  if (poly.num_vars() > options.cap) {
    throw Unsupported("vertex enumeration over " + std::to_string(poly.num_vars()) + " variables exceeds the cap of " +
                      std::to_string(options.cap));
  }
  std::vector<SparseRow> rows = poly.equalities();
  rows.insert(rows.end(), options.extra_equalities.begin(), options.extra_equalities.end());
  std::vector<Rational> rhs;
  Matrix a = to_dense(rows, poly.num_vars(), &rhs);
  return reports(poly, basic_feasible_solutions(a, rhs, options.exec), options.analyze);
}

std::vector<VertexReport> enumerate_vertices(std::shared_ptr<const SSet2> space, Target target, SemiringKind semiring,
                                             const VertexOptions& options) {
  if (semiring != SemiringKind::NonnegRational) throw Unsupported("vertex enumeration needs nonnegative rational weights");
  return enumerate_vertices(DistributionPolytope(std::move(space), target), options);
}

std::vector<VertexReport> enumerate_fiber_vertices(const DistributionPolytope& poly, const SSetMap& f, const SimpDist& q,
                                                   VertexOptions options) {
  auto rows = poly.restriction_rows(f, q);
  options.extra_equalities.insert(options.extra_equalities.end(), rows.begin(), rows.end());
  return enumerate_vertices(poly, options);
}

bool is_vertex(const SimpDist& p) {
  if (p.semiring() != SemiringKind::NonnegRational) throw Unsupported("is_vertex needs nonnegative rational weights");
  DistributionPolytope poly(p.shared_space(), p.target());
  const auto x = poly.coordinates(p);
  Matrix a = to_dense(poly.equalities(), poly.num_vars());
  std::vector<std::size_t> supp;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != 0) supp.push_back(j);
  }
  Matrix sub(a.size(), std::vector<Rational>(supp.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < supp.size(); ++j) sub[i][j] = a[i][supp[j]];
  }
  return rank(std::move(sub)) == supp.size();
}

// ---------------------------------------------------------------- homotopies

HomotopyResult distribution_homotopy(const DetMap& phi0, const DetMap& phi1, const SSet2& x) {
  if (phi0.target != phi1.target || phi0.target.kind != TargetKind::Nerve)
    throw UsageError("distribution_homotopy needs two maps into the same nerve");
  Prism pr = prism(x);
  auto base = std::make_shared<const SSet2>(x);
  HomotopyResult out;
  out.prism_space = std::make_shared<const SSet2>(pr.space);
  DistributionPolytope poly(out.prism_space, phi0.target);

  LinearProgram lp;
  lp.num_vars = poly.num_vars();
  lp.equalities = poly.equalities();
  for (auto& r : poly.restriction_rows(pr.at_zero, deterministic_embed(base, phi0, SemiringKind::NonnegRational)))
    lp.equalities.push_back(std::move(r));
  for (auto& r : poly.restriction_rows(pr.at_one, deterministic_embed(base, phi1, SemiringKind::NonnegRational)))
    lp.equalities.push_back(std::move(r));

  LpResult feasible = lp_solve(lp);
  if (feasible.status != LpStatus::Optimal) return out;

  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    lp.objective.assign(lp.num_vars, 0);
    lp.objective[j] = 1;
    LpResult hi = lp_solve(lp);
    lp.objective[j] = -1;
    LpResult lo = lp_solve(lp);
    if (hi.status != LpStatus::Optimal || lo.status != LpStatus::Optimal)
      throw ContractViolation("bounded homotopy LP did not reach an optimum");
    if (hi.value != -lo.value) {
      out.kind = HomotopyResult::Kind::NonUnique;
      out.solution = poly.point(hi.x);
      out.other = poly.point(lo.x);
      return out;
    }
  }
  out.kind = HomotopyResult::Kind::Unique;
  out.solution = poly.point(feasible.x);
  return out;
}

}  // namespace simctx
