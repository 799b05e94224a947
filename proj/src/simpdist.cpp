#include "simctx/simpdist.hpp"

#include <algorithm>
#include <set>

#include "simctx/errors.hpp"

namespace simctx {

namespace {

const char* dim_word(int dim) {
  switch (dim) {
    case 0:
      return "vertex";
    case 1:
      return "edge";
    default:
      return "triangle";
  }
}

std::string simplex_label(const SSet2& x, int dim, int idx) {
  return std::string(dim_word(dim)) + " '" + x.name(dim, idx) + "'";
}

OutcomeDist face_dist(const Target& target, const OutcomeDist& p, int dim, int i) {
  return pushforward([&](const Outcome& y) { return target.face(dim, i, y); }, p);
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string s;
  for (const auto& e : errors) {
    if (!s.empty()) s += "; ";
    s += e;
  }
  return s;
}

}  // namespace

SimpDist::SimpDist(std::shared_ptr<const SSet2> space, SemiringKind semiring, Target target, Table dists)
    : space_(std::move(space)), semiring_(semiring), target_(target), dists_(std::move(dists)) {
  if (!space_) throw UsageError("simplicial distribution without a space");
  for (int dim = 0; dim <= 2; ++dim) {
    if (dists_[static_cast<std::size_t>(dim)].size() != space_->count(dim))
      throw UsageError(std::string("wrong number of ") + dim_word(dim) + " distributions");
  }
}

const OutcomeDist& SimpDist::at(int dim, int idx) const {
  return dists_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(idx));
}

bool operator==(const SimpDist& a, const SimpDist& b) {
  return a.semiring_ == b.semiring_ && a.target_ == b.target_ && *a.space_ == *b.space_ && a.dists_ == b.dists_;
}

SimpDist complete_from_faces(std::shared_ptr<const SSet2> space, SemiringKind semiring, Target target,
                             const std::array<std::map<int, OutcomeDist>, 3>& given) {
  const SSet2& x = *space;
  SimpDist::Table table;
  std::array<std::vector<bool>, 3> known;
  for (int dim = 0; dim <= 2; ++dim) {
    table[static_cast<std::size_t>(dim)].resize(x.count(dim));
    known[static_cast<std::size_t>(dim)].assign(x.count(dim), false);
    for (const auto& [idx, p] : given[static_cast<std::size_t>(dim)]) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= x.count(dim)) throw UsageError("distribution for a missing generator");
      table[static_cast<std::size_t>(dim)][static_cast<std::size_t>(idx)] = p;
      known[static_cast<std::size_t>(dim)][static_cast<std::size_t>(idx)] = true;
    }
  }
  for (int dim = 1; dim >= 0; --dim) {
    const auto d = static_cast<std::size_t>(dim);
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      if (known[d][idx]) continue;
      if (dim == 0 && target.kind == TargetKind::Nerve) {
        table[0][idx] = OutcomeDist::delta({}, semiring);
        known[0][idx] = true;
        continue;
      }
      for (std::size_t c = 0; c < x.count(dim + 1) && !known[d][idx]; ++c) {
        if (!known[d + 1][c]) continue;
        for (int i = 0; i <= dim + 1; ++i) {
          if (x.face(dim + 1, static_cast<int>(c), i) == static_cast<int>(idx)) {
            table[d][idx] = face_dist(target, table[d + 1][c], dim + 1, i);
            known[d][idx] = true;
            break;
          }
        }
      }
      if (!known[d][idx]) throw PreconditionError("no distribution given or derivable for " + simplex_label(x, dim, static_cast<int>(idx)));
    }
  }
  for (std::size_t idx = 0; idx < x.count(2); ++idx) {
    if (!known[2][idx]) throw PreconditionError("no distribution given for " + simplex_label(x, 2, static_cast<int>(idx)));
  }
  return SimpDist(std::move(space), semiring, target, std::move(table));
}

std::vector<std::string> validate(const SimpDist& p) {
  std::vector<std::string> errors;
  const SSet2& x = p.space();
  const Target target = p.target();
  for (const auto& e : x.validate()) errors.push_back("space: " + e);
  if (!errors.empty()) return errors;

  for (int dim = 0; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      const OutcomeDist& q = p.at(dim, static_cast<int>(idx));
      if (q.semiring() != p.semiring()) errors.push_back(simplex_label(x, dim, static_cast<int>(idx)) + ": distribution from another semiring");
      if (q.support_size() == 0) errors.push_back(simplex_label(x, dim, static_cast<int>(idx)) + ": empty distribution");
      for (const auto& [y, w] : q) {
        bool good = static_cast<int>(y.size()) == target.outcome_length(dim) &&
                    std::all_of(y.begin(), y.end(), [&](int v) { return v >= 0 && v < target.d; });
        if (!good) errors.push_back(simplex_label(x, dim, static_cast<int>(idx)) + ": outcome outside the target");
      }
    }
  }
  if (!errors.empty()) return errors;

  for (int dim = 1; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < x.count(dim); ++idx) {
      const OutcomeDist& q = p.at(dim, static_cast<int>(idx));
      for (int i = 0; i <= dim; ++i) {
        int f = x.face(dim, static_cast<int>(idx), i);
        if (!(face_dist(target, q, dim, i) == p.at(dim - 1, f))) {
          errors.push_back(simplex_label(x, dim, static_cast<int>(idx)) + ": d" + std::to_string(i) +
                           " marginal differs from " + simplex_label(x, dim - 1, f));
        }
      }
    }
  }
  return errors;
}

SimpDist deterministic_embed(std::shared_ptr<const SSet2> space, const DetMap& phi, SemiringKind semiring) {
  auto errors = check_det_map(*space, phi);
  if (!errors.empty()) throw PreconditionError("not a simplicial map: " + join_errors(errors));
  SimpDist::Table table;
  for (int dim = 0; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < space->count(dim); ++idx)
      table[static_cast<std::size_t>(dim)].push_back(OutcomeDist::delta(phi.value(*space, dim, static_cast<int>(idx)), semiring));
  }
  return SimpDist(std::move(space), semiring, phi.target, std::move(table));
}

SimpDist theta(std::shared_ptr<const SSet2> space, const Dist<DetMap>& d) {
  if (d.support_size() == 0) throw UsageError("theta of an empty distribution");
  const Target target = d.begin()->first.target;
  const SemiringKind s = d.semiring();
  SimpDist::Table table;
  for (int dim = 0; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < space->count(dim); ++idx) {
      std::map<Outcome, Scalar> acc;
      for (const auto& [phi, w] : d) {
        if (phi.target != target) throw UsageError("theta over maps into different targets");
        auto [it, inserted] = acc.try_emplace(phi.value(*space, dim, static_cast<int>(idx)), w);
        if (!inserted) it->second = add(it->second, w);
      }
      table[static_cast<std::size_t>(dim)].push_back(OutcomeDist::from_weights(s, std::move(acc)));
    }
  }
  return SimpDist(std::move(space), s, target, std::move(table));
}

SimpDist mix(const std::vector<std::pair<Scalar, SimpDist>>& parts) {
  if (parts.empty()) throw UsageError("empty mixture");
  const SimpDist& first = parts.front().second;
  SimpDist::Table table;
  for (int dim = 0; dim <= 2; ++dim) {
    for (std::size_t idx = 0; idx < first.space().count(dim); ++idx) {
      std::vector<std::pair<Scalar, OutcomeDist>> local;
      for (const auto& [alpha, p] : parts) {
        if (p.target() != first.target() || !(p.space() == first.space()))
          throw UsageError("mixture of distributions on different scenarios");
        local.emplace_back(alpha, p.at(dim, static_cast<int>(idx)));
      }
      table[static_cast<std::size_t>(dim)].push_back(mixture(local));
    }
  }
  return SimpDist(first.shared_space(), first.semiring(), first.target(), std::move(table));
}

std::vector<DetMap> support(const SimpDist& p) {
  std::vector<DetMap> out;
  const SSet2& x = p.space();
  for (DetMap& phi : enumerate_det_maps(x, p.target())) {
    bool inside = true;
    for (int dim = 2; dim >= 0 && inside; --dim) {
      for (std::size_t idx = 0; idx < x.count(dim) && inside; ++idx)
        inside = !p.weight(dim, static_cast<int>(idx), phi.value(x, dim, static_cast<int>(idx))).is_zero();
    }
    if (inside) out.push_back(std::move(phi));
  }
  return out;
}

bool is_strongly_contextual(const SimpDist& p) { return support(p).empty(); }

bool is_deterministic(const SimpDist& p) {
  for (const auto& level : p.table()) {
    for (const auto& q : level) {
      if (!q.is_delta()) return false;
    }
  }
  return true;
}

SimpDist restrict(const SimpDist& p, const SSetMap& f, std::shared_ptr<const SSet2> domain) {
  auto errors = check_simplicial(f, *domain, p.space());
  if (!errors.empty()) throw UsageError("restriction along a non-simplicial map: " + join_errors(errors));
  SimpDist::Table table;
  const std::array<const std::vector<int>*, 3> maps{&f.vertex, &f.edge, &f.triangle};
  for (int dim = 0; dim <= 2; ++dim) {
    for (int img : *maps[static_cast<std::size_t>(dim)]) table[static_cast<std::size_t>(dim)].push_back(p.at(dim, img));
  }
  return SimpDist(std::move(domain), p.semiring(), p.target(), std::move(table));
}

bool restriction_certifies_strong_contextuality(const SimpDist& p, const SSetMap& f, std::shared_ptr<const SSet2> domain) {
  const SSet2& z = *domain;
  const auto restricted = support(restrict(p, f, domain));
  std::set<DetMap> local(restricted.begin(), restricted.end());
  for (const DetMap& phi : enumerate_det_maps(p.space(), p.target())) {
    if (local.count(pullback(phi, f, z)) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- empirical models

std::vector<std::string> EmpiricalModel::validate() const {
  std::vector<std::string> errors;
  if (d < 2) errors.push_back("outcome modulus must be at least 2");
  if (dists.size() != contexts.size()) {
    errors.push_back("one distribution per context is required");
    return errors;
  }
  auto context_name = [&](std::size_t c) {
    std::string s;
    for (int m : contexts[c]) {
      if (!s.empty()) s += ',';
      s += (m >= 0 && static_cast<std::size_t>(m) < measurements.size()) ? measurements[static_cast<std::size_t>(m)] : "?";
    }
    return s;
  };
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    std::set<int> seen;
    for (int m : contexts[c]) {
      if (m < 0 || static_cast<std::size_t>(m) >= measurements.size()) errors.push_back("context " + std::to_string(c) + " names an unknown measurement");
      if (!seen.insert(m).second) errors.push_back("context {" + context_name(c) + "} repeats a measurement");
    }
    if (dists[c].semiring() != semiring) errors.push_back("context {" + context_name(c) + "}: distribution from another semiring");
    for (const auto& [s, w] : dists[c]) {
      if (s.size() != contexts[c].size() || std::any_of(s.begin(), s.end(), [&](int v) { return v < 0 || v >= d; }))
        errors.push_back("context {" + context_name(c) + "}: assignment outside Z_" + std::to_string(d) + "^context");
    }
  }
  if (!errors.empty()) return errors;

  for (std::size_t a = 0; a < contexts.size(); ++a) {
    for (std::size_t b = a + 1; b < contexts.size(); ++b) {
      std::vector<int> common;
      for (int m : contexts[a]) {
        if (std::find(contexts[b].begin(), contexts[b].end(), m) != contexts[b].end()) common.push_back(m);
      }
      std::sort(common.begin(), common.end());
      auto marginal = [&](std::size_t c) {
        std::vector<std::size_t> pos;
        for (int m : common)
          pos.push_back(static_cast<std::size_t>(std::find(contexts[c].begin(), contexts[c].end(), m) - contexts[c].begin()));
        return pushforward(
            [&](const Outcome& s) {
              Outcome r;
              for (std::size_t k : pos) r.push_back(s[k]);
              return r;
            },
            dists[c]);
      };
      if (!(marginal(a) == marginal(b)))
        errors.push_back("contexts {" + context_name(a) + "} and {" + context_name(b) + "} disagree on their overlap");
    }
  }
  return errors;
}

namespace {

void require_realizable(const EmpiricalModel& e) {
  auto errors = e.validate();
  if (!errors.empty()) throw PreconditionError("incompatible empirical model: " + join_errors(errors));
  for (const auto& c : e.contexts) {
    if (c.size() > 2) throw Unsupported("contexts with more than two measurements are not supported");
  }
  std::vector<bool> covered(e.measurements.size(), false);
  for (const auto& c : e.contexts) {
    for (int m : c) covered[static_cast<std::size_t>(m)] = true;
  }
  for (std::size_t m = 0; m < covered.size(); ++m) {
    if (!covered[m]) throw PreconditionError("measurement '" + e.measurements[m] + "' appears in no context");
  }
}

}  // namespace

SimpDist realize(const EmpiricalModel& e) {
  require_realizable(e);
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::size_t> pair_context;
  std::set<std::pair<int, int>> seen;
  for (std::size_t c = 0; c < e.contexts.size(); ++c) {
    if (e.contexts[c].size() != 2) continue;
    auto key = std::minmax(e.contexts[c][0], e.contexts[c][1]);
    if (!seen.insert(key).second) throw UsageError("context listed twice");
    pairs.emplace_back(e.contexts[c][0], e.contexts[c][1]);
    pair_context.push_back(c);
  }
  MeasurementCone mc = measurement_cone(e.measurements, pairs);
  auto space = std::make_shared<const SSet2>(std::move(mc.space));
  std::array<std::map<int, OutcomeDist>, 3> given;
  for (std::size_t k = 0; k < pairs.size(); ++k) given[2].emplace(mc.context_triangle[k], e.dists[pair_context[k]]);
  for (std::size_t c = 0; c < e.contexts.size(); ++c) {
    if (e.contexts[c].size() == 1) given[1].emplace(mc.measurement_edge[static_cast<std::size_t>(e.contexts[c][0])], e.dists[c]);
  }
  return complete_from_faces(space, e.semiring, Target::nerve(e.d), given);
}

SimpDist realize_delta(const EmpiricalModel& e) {
  require_realizable(e);
  SSet2 x;
  for (const auto& m : e.measurements) x.add_vertex(m);
  std::array<std::map<int, OutcomeDist>, 3> given;
  for (std::size_t c = 0; c < e.contexts.size(); ++c) {
    const auto& ctx = e.contexts[c];
    if (ctx.size() == 1) {
      given[0].emplace(ctx[0], e.dists[c]);
      continue;
    }
    const bool flip = ctx[0] > ctx[1];
    const int u = flip ? ctx[1] : ctx[0];
    const int v = flip ? ctx[0] : ctx[1];
    int edge = x.add_edge(e.measurements[static_cast<std::size_t>(u)] + "," + e.measurements[static_cast<std::size_t>(v)], u, v);
    given[1].emplace(edge, flip ? pushforward([](const Outcome& s) { return Outcome{s[1], s[0]}; }, e.dists[c]) : e.dists[c]);
  }
  return complete_from_faces(std::make_shared<const SSet2>(std::move(x)), e.semiring, Target::delta(e.d), given);
}

// ---------------------------------------------------------------- decalage

Decalage decalage_to_nerve(const SimpDist& p) {
  if (p.target().kind != TargetKind::DeltaZ) throw UsageError("decalage_to_nerve expects a Delta_{Z_d} target");
  if (p.space().dimension() > 1) throw Unsupported("decalage conversion needs a base of dimension <= 1");
  const int d = p.target().d;
  Join j = cone(p.space());
  std::array<std::map<int, OutcomeDist>, 3> given;
  for (std::size_t v = 0; v < p.space().num_vertices(); ++v) given[1].emplace(j.spoke[v], p.at(0, static_cast<int>(v)));
  for (std::size_t e = 0; e < p.space().num_edges(); ++e) {
    given[2].emplace(j.cone_triangle[e],
                     pushforward([d](const Outcome& a) { return Outcome{a[0], (a[1] - a[0] + d) % d}; }, p.at(1, static_cast<int>(e))));
  }
  auto space = std::make_shared<const SSet2>(j.space);
  SimpDist q = complete_from_faces(space, p.semiring(), Target::nerve(d), given);
  return {std::move(j), std::move(q)};
}

SimpDist decalage_from_nerve(const Join& join, std::shared_ptr<const SSet2> base, const SimpDist& q) {
  if (q.target().kind != TargetKind::Nerve) throw UsageError("decalage_from_nerve expects a nerve target");
  const int d = q.target().d;
  SimpDist::Table table;
  for (std::size_t v = 0; v < base->num_vertices(); ++v) table[0].push_back(q.at(1, join.spoke[v]));
  for (std::size_t e = 0; e < base->num_edges(); ++e) {
    table[1].push_back(
        pushforward([d](const Outcome& a) { return Outcome{a[0], (a[0] + a[1]) % d}; }, q.at(2, join.cone_triangle[e])));
  }
  return SimpDist(std::move(base), q.semiring(), Target::delta(d), std::move(table));
}

}  // namespace simctx
