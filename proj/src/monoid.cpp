#include "simctx/monoid.hpp"

#include <algorithm>
#include <set>

#include "simctx/errors.hpp"
#include "simctx/lp.hpp"

namespace simctx {

namespace {

struct Generator {
  int dim;
  int idx;
};

// Generators that are not a face of any stored generator. On these the unit
// decompositions are decided; faces follow by marginalization.
std::vector<Generator> maximal_generators(const SSet2& x) {
  std::array<std::vector<bool>, 3> is_face;
  for (int dim = 0; dim <= 2; ++dim) is_face[static_cast<std::size_t>(dim)].assign(x.count(dim), false);
  for (int dim = 1; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      for (int i = 0; i <= dim; ++i) is_face[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(x.face(dim, static_cast<int>(idx), i))] = true;
    }
  }
  std::vector<Generator> out;
  for (int dim = 2; dim >= 0; --dim) {
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      if (!is_face[static_cast<std::size_t>(dim)][idx]) out.push_back({dim, static_cast<int>(idx)});
    }
  }
  return out;
}

void require_unit_characterization(SemiringKind s, const char* what) {
  const SemiringDesc desc = SemiringDesc::of(s);
  if (!desc.zero_sum_free || !desc.integral) {
    throw Unsupported(std::string(what) + " needs a zero-sum-free integral semiring; " + std::string(desc.name()) +
                      " is not (use inverse instead)");
  }
}

// Rows sum_u b_u [u(x) = y] over all maximal x and all target outcomes y.
std::vector<SparseRow> unit_rows(const MonoidContext& ctx, const SimpDist& p) {
  const SSet2& x = ctx.space();
  std::vector<SparseRow> rows;
  for (const Generator& g : maximal_generators(x)) {
    const auto outcomes = ctx.target().outcomes(g.dim);
    std::vector<SparseRow> local(outcomes.size());
    for (std::size_t k = 0; k < outcomes.size(); ++k) local[k].rhs = p.weight(g.dim, g.idx, outcomes[k]).value();
    for (std::size_t u = 0; u < ctx.units().size(); ++u) {
      std::size_t k = ctx.target().outcome_index(ctx.units()[u].value(x, g.dim, g.idx));
      local[k].coeffs.emplace_back(u, 1);
    }
    for (auto& r : local) rows.push_back(std::move(r));
  }
  return rows;
}

SparseRow total_row(std::size_t n) {
  SparseRow r;
  for (std::size_t u = 0; u < n; ++u) r.coeffs.emplace_back(u, 1);
  r.rhs = 1;
  return r;
}

// Units whose deterministic value is possible on every maximal generator.
std::vector<std::size_t> units_below(const MonoidContext& ctx, const SimpDist& p) {
  std::vector<std::size_t> out;
  const auto gens = maximal_generators(ctx.space());
  for (std::size_t u = 0; u < ctx.units().size(); ++u) {
    bool below = true;
    for (const Generator& g : gens) {
      if (p.weight(g.dim, g.idx, ctx.units()[u].value(ctx.space(), g.dim, g.idx)).is_zero()) {
        below = false;
        break;
      }
    }
    if (below) out.push_back(u);
  }
  return out;
}

}  // namespace

MonoidContext::MonoidContext(std::shared_ptr<const SSet2> space, Target target, SemiringKind semiring)
    : space_(std::move(space)), target_(target), semiring_(semiring), units_(enumerate_det_maps(*space_, target)) {}

MonoidContext MonoidContext::of(const SimpDist& p) { return MonoidContext(p.shared_space(), p.target(), p.semiring()); }

SimpDist MonoidContext::unit(std::size_t i) const { return deterministic_embed(space_, units_.at(i), semiring_); }

SimpDist MonoidContext::identity() const { return simctx::identity(space_, target_, semiring_); }

void MonoidContext::require_member(const SimpDist& p) const {
  if (p.target() != target_ || p.semiring() != semiring_ || !(p.space() == *space_))
    throw UsageError("distribution belongs to a different monoid");
}

SimpDist identity(std::shared_ptr<const SSet2> space, Target target, SemiringKind semiring) {
  const SSet2& x = *space;
  return deterministic_embed(std::move(space), zero_map(x, target), semiring);
}

SimpDist mult(const SimpDist& p, const SimpDist& q) {
  if (p.target() != q.target() || p.semiring() != q.semiring() || !(p.space() == q.space()))
    throw UsageError("product of distributions from different monoids");
  const Target target = p.target();
  auto add = [&](const Outcome& a, const Outcome& b) -> std::optional<Outcome> { return target.plus(a, b); };
  SimpDist::Table table;
  for (int dim = 0; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < p.space().count(dim); ++idx)
      table[static_cast<std::size_t>(dim)].push_back(convolve(p.at(dim, static_cast<int>(idx)), q.at(dim, static_cast<int>(idx)), add));
  }
  return SimpDist(p.shared_space(), p.semiring(), target, std::move(table));
}

std::optional<SimpDist> inverse(const SimpDist& p) {
  const Target target = p.target();
  const SemiringKind s = p.semiring();
  SimpDist::Table table;
  if (s == SemiringKind::Boolean) {
    if (!is_deterministic(p)) return std::nullopt;
    for (int dim = 0; dim <= 2; ++dim) {
      for (const auto& q : p.table()[static_cast<std::size_t>(dim)])
        table[static_cast<std::size_t>(dim)].push_back(OutcomeDist::delta(target.minus(q.delta_point()), s));
    }
  } else {
    for (int dim = 0; dim <= 2; ++dim) {
      const auto group = target.outcomes(dim);
      const std::size_t n = group.size();
      for (const auto& q : p.table()[static_cast<std::size_t>(dim)]) {
        // sum_g p(h - g) r(g) = [h = 0]
        Matrix m(n, std::vector<Rational>(n));
        for (std::size_t h = 0; h < n; ++h) {
          for (std::size_t g = 0; g < n; ++g) m[h][g] = q.weight(target.plus(group[h], target.minus(group[g]))).value();
        }
        std::vector<Rational> rhs(n, 0);
        rhs[target.outcome_index(target.zero(dim))] = 1;
        auto r = solve_square(std::move(m), std::move(rhs));
        if (!r) return std::nullopt;
        std::map<Outcome, Scalar> w;
        for (std::size_t g = 0; g < n; ++g) {
          if ((*r)[g] < 0 && s == SemiringKind::NonnegRational) return std::nullopt;
          if ((*r)[g] != 0) w.emplace(group[g], Scalar(s, (*r)[g]));
        }
        table[static_cast<std::size_t>(dim)].push_back(OutcomeDist::from_weights(s, std::move(w)));
      }
    }
  }
  SimpDist inv(p.shared_space(), s, target, std::move(table));
  const SimpDist one = identity(p.shared_space(), target, s);
  if (!(mult(p, inv) == one) || !(mult(inv, p) == one)) throw ContractViolation("inverse does not multiply to the identity");
  return inv;
}

WeakInvertibility is_weakly_invertible(const MonoidContext& ctx, const SimpDist& p) {
  ctx.require_member(p);
  require_unit_characterization(ctx.semiring(), "weak invertibility");
  WeakInvertibility out;
  const std::size_t n = ctx.units().size();
  if (n == 0) return out;

  if (ctx.semiring() == SemiringKind::Boolean) {
    // Over B the largest candidate set is every unit below p; p is weakly
    // invertible iff their union reproduces p on the maximal generators.
    const auto below = units_below(ctx, p);
    if (below.empty()) return out;
    for (const Generator& g : maximal_generators(ctx.space())) {
      std::set<Outcome> hit;
      for (std::size_t u : below) hit.insert(ctx.units()[u].value(ctx.space(), g.dim, g.idx));
      const auto supp = p.at(g.dim, g.idx).support();
      if (!std::equal(hit.begin(), hit.end(), supp.begin(), supp.end())) return out;
    }
    std::map<DetMap, Scalar> w;
    for (std::size_t u : below) w.emplace(ctx.units()[u], Scalar::one(SemiringKind::Boolean));
    out.invertible = true;
    out.witness = Dist<DetMap>::from_weights(SemiringKind::Boolean, std::move(w));
    return out;
  }

  LinearProgram lp;
  lp.num_vars = n;
  lp.equalities = unit_rows(ctx, p);
  lp.equalities.push_back(total_row(n));
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) return out;
  std::map<DetMap, Scalar> w;
  for (std::size_t u = 0; u < n; ++u) {
    if (r.x[u] != 0) w.emplace(ctx.units()[u], Scalar(ctx.semiring(), r.x[u]));
  }
  out.invertible = true;
  out.witness = Dist<DetMap>::from_weights(ctx.semiring(), std::move(w));
  return out;
}

WeakInvertibility is_weakly_invertible(const SimpDist& p) { return is_weakly_invertible(MonoidContext::of(p), p); }

bool isupp_member(const MonoidContext& ctx, const SimpDist& p, const DetMap& m) {
  ctx.require_member(p);
  require_unit_characterization(ctx.semiring(), "invertible support");
  const auto& units = ctx.units();
  auto it = std::find(units.begin(), units.end(), m);
  if (it == units.end()) throw UsageError("not a unit of this monoid");
  const auto target_unit = static_cast<std::size_t>(it - units.begin());

  if (ctx.semiring() == SemiringKind::Boolean) {
    const auto below = units_below(ctx, p);
    return std::find(below.begin(), below.end(), target_unit) != below.end();
  }

  // Units below p with the remainder absorbing the rest: maximize b_m.
  LinearProgram lp;
  lp.num_vars = units.size();
  lp.upper_bounds = unit_rows(ctx, p);
  lp.objective.assign(units.size(), 0);
  lp.objective[target_unit] = 1;
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) throw ContractViolation("invertible-support LP did not reach an optimum");
  return r.value > 0;
}

std::vector<DetMap> isupp(const MonoidContext& ctx, const SimpDist& p) {
  std::vector<DetMap> out;
  for (const DetMap& m : ctx.units()) {
    if (isupp_member(ctx, p, m)) out.push_back(m);
  }
  return out;
}

Rational invertible_fraction(const MonoidContext& ctx, const SimpDist& p) {
  ctx.require_member(p);
  if (ctx.semiring() != SemiringKind::NonnegRational) throw Unsupported("invertible fraction is defined for real convex monoids only");
  const std::size_t n = ctx.units().size();
  if (n == 0) return 0;
  LinearProgram lp;
  lp.num_vars = n;
  lp.upper_bounds = unit_rows(ctx, p);
  lp.upper_bounds.push_back(total_row(n));
  lp.objective.assign(n, 1);
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) throw ContractViolation("invertible-fraction LP did not reach an optimum");
  return r.value;
}

Rational invertible_fraction(const SimpDist& p) { return invertible_fraction(MonoidContext::of(p), p); }

bool is_strongly_noninvertible(const MonoidContext& ctx, const SimpDist& p) {
  if (ctx.semiring() == SemiringKind::Boolean) return isupp(ctx, p).empty();
  return invertible_fraction(ctx, p) == 0;
}

}  // namespace simctx
