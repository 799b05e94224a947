#include "simctx/sset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "simctx/errors.hpp"

namespace simctx {

// ---------------------------------------------------------------- Target

std::vector<Outcome> Target::outcomes(int dim) const {
  const int len = outcome_length(dim);
  std::vector<Outcome> out;
  out.reserve(outcome_count(dim));
  Outcome y(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(y);
    int pos = len - 1;
    while (pos >= 0 && ++y[static_cast<std::size_t>(pos)] == d) {
      y[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::size_t Target::outcome_count(int dim) const {
  std::size_t n = 1;
  for (int i = 0; i < outcome_length(dim); ++i) n *= static_cast<std::size_t>(d);
  return n;
}

std::size_t Target::outcome_index(const Outcome& y) const {
  std::size_t idx = 0;
  for (int v : y) idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(v);
  return idx;
}

Outcome Target::face(int dim, int i, const Outcome& y) const {
  if (kind == TargetKind::DeltaZ) {
    Outcome out;
    out.reserve(y.size() - 1);
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (static_cast<int>(k) != i) out.push_back(y[k]);
    }
    return out;
  }
  if (dim == 1) return {};
  if (dim == 2) {
    switch (i) {
      case 0:
        return {y[1]};
      case 1:
        return {(y[0] + y[1]) % d};
      case 2:
        return {y[0]};
    }
  }
  throw UsageError("face index out of range");
}

Outcome Target::plus(const Outcome& a, const Outcome& b) const {
  Outcome out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = (a[k] + b[k]) % d;
  return out;
}

Outcome Target::minus(const Outcome& a) const {
  Outcome out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = (d - a[k]) % d;
  return out;
}

std::string_view target_kind_name(TargetKind kind) { return kind == TargetKind::Nerve ? "nerve" : "delta"; }

TargetKind parse_target_kind(std::string_view name) {
  if (name == "nerve" || name == "N") return TargetKind::Nerve;
  if (name == "delta" || name == "DeltaZ") return TargetKind::DeltaZ;
  throw UsageError("unknown target '" + std::string(name) + "'");
}

std::string outcome_to_string(const Outcome& y, int d) {
  std::string s;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (d > 10 && k > 0) s += ',';
    s += std::to_string(y[k]);
  }
  return s;
}

Outcome parse_outcome(std::string_view text, int d, int length) {
  Outcome y;
  auto bad = [&]() { return UsageError("malformed outcome '" + std::string(text) + "'"); };
  if (d <= 10 && text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw bad();
      y.push_back(c - '0');
    }
  } else if (!text.empty()) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      auto part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (part.empty()) throw bad();
      int v = 0;
      for (char c : part) {
        if (c < '0' || c > '9') throw bad();
        v = v * 10 + (c - '0');
      }
      y.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (static_cast<int>(y.size()) != length) throw bad();
  for (int v : y) {
    if (v >= d) throw UsageError("outcome '" + std::string(text) + "' out of range for Z_" + std::to_string(d));
  }
  return y;
}

// ---------------------------------------------------------------- SSet2

int SSet2::add_vertex(std::string name) {
  vertices_.push_back(std::move(name));
  return static_cast<int>(vertices_.size()) - 1;
}

int SSet2::add_edge(std::string name, int src, int dst) {
  edges_.push_back({std::move(name), src, dst});
  return static_cast<int>(edges_.size()) - 1;
}

int SSet2::add_triangle(std::string name, int d0, int d1, int d2) {
  triangles_.push_back({std::move(name), d0, d1, d2});
  return static_cast<int>(triangles_.size()) - 1;
}

std::size_t SSet2::count(int dim) const {
  switch (dim) {
    case 0:
      return vertices_.size();
    case 1:
      return edges_.size();
    case 2:
      return triangles_.size();
  }
  return 0;
}

int SSet2::dimension() const {
  if (!triangles_.empty()) return 2;
  if (!edges_.empty()) return 1;
  if (!vertices_.empty()) return 0;
  return -1;
}

int SSet2::face(int dim, int idx, int i) const {
  if (dim == 1) {
    const Edge& e = edge(idx);
    if (i == 0) return e.dst;
    if (i == 1) return e.src;
  } else if (dim == 2) {
    const Triangle& t = triangle(idx);
    if (i == 0) return t.d0;
    if (i == 1) return t.d1;
    if (i == 2) return t.d2;
  }
  throw UsageError("face (" + std::to_string(dim) + ", " + std::to_string(i) + ") out of range");
}

std::array<int, 3> SSet2::triangle_vertices(int t) const {
  const Triangle& tri = triangle(t);
  return {edge(tri.d2).src, edge(tri.d2).dst, edge(tri.d0).dst};
}

const std::string& SSet2::name(int dim, int idx) const {
  switch (dim) {
    case 0:
      return vertices_.at(static_cast<std::size_t>(idx));
    case 1:
      return edge(idx).name;
    case 2:
      return triangle(idx).name;
  }
  throw UsageError("dimension out of range");
}

std::optional<int> SSet2::find(int dim, std::string_view name) const {
  for (std::size_t i = 0; i < count(dim); ++i) {
    if (this->name(dim, static_cast<int>(i)) == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int SSet2::index(int dim, std::string_view name) const {
  auto idx = find(dim, name);
  if (!idx) throw UsageError("no " + std::to_string(dim) + "-simplex named '" + std::string(name) + "'");
  return *idx;
}

std::vector<std::string> SSet2::validate() const {
  std::vector<std::string> errors;
  const int nv = static_cast<int>(vertices_.size());
  const int ne = static_cast<int>(edges_.size());
  for (int dim = 0; dim <= 2; ++dim) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < count(dim); ++i) {
      const std::string& n = name(dim, static_cast<int>(i));
      if (n.empty()) errors.push_back(std::to_string(dim) + "-simplex #" + std::to_string(i) + " has an empty id");
      if (!seen.insert(n).second) errors.push_back("duplicate " + std::to_string(dim) + "-simplex id '" + n + "'");
    }
  }
  for (const Edge& e : edges_) {
    if (e.src < 0 || e.src >= nv) errors.push_back("edge '" + e.name + "': source vertex does not exist");
    if (e.dst < 0 || e.dst >= nv) errors.push_back("edge '" + e.name + "': target vertex does not exist");
  }
  for (const Triangle& t : triangles_) {
    bool ok = true;
    for (int f : {t.d0, t.d1, t.d2}) {
      if (f < 0 || f >= ne) {
        errors.push_back("triangle '" + t.name + "': face edge does not exist");
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const Edge& e0 = edge(t.d0);
    const Edge& e1 = edge(t.d1);
    const Edge& e2 = edge(t.d2);
    if (e0.dst != e1.dst)
      errors.push_back("triangle '" + t.name + "' violates d0 d0 = d0 d1: target of '" + e0.name + "' != target of '" + e1.name + "'");
    if (e2.dst != e0.src)
      errors.push_back("triangle '" + t.name + "' violates d0 d2 = d1 d0: target of '" + e2.name + "' != source of '" + e0.name + "'");
    if (e1.src != e2.src)
      errors.push_back("triangle '" + t.name + "' violates d1 d1 = d1 d2: source of '" + e1.name + "' != source of '" + e2.name + "'");
  }
  return errors;
}

// ---------------------------------------------------------------- maps

std::vector<std::string> check_simplicial(const SSetMap& f, const SSet2& from, const SSet2& to) {
  std::vector<std::string> errors;
  if (f.vertex.size() != from.num_vertices() || f.edge.size() != from.num_edges() ||
      f.triangle.size() != from.num_triangles()) {
    errors.push_back("map does not cover every generator of its domain");
    return errors;
  }
  auto in_range = [&](int dim, int idx) { return idx >= 0 && static_cast<std::size_t>(idx) < to.count(dim); };
  for (std::size_t v = 0; v < f.vertex.size(); ++v) {
    if (!in_range(0, f.vertex[v])) errors.push_back("vertex '" + from.vertices()[v] + "' maps outside the codomain");
  }
  for (std::size_t e = 0; e < f.edge.size(); ++e) {
    if (!in_range(1, f.edge[e])) {
      errors.push_back("edge '" + from.edges()[e].name + "' maps outside the codomain");
      continue;
    }
    const Edge& src = from.edges()[e];
    const Edge& img = to.edge(f.edge[e]);
    if (in_range(0, f.vertex[static_cast<std::size_t>(src.src)]) && img.src != f.vertex[static_cast<std::size_t>(src.src)])
      errors.push_back("edge '" + src.name + "': d1 not preserved");
    if (in_range(0, f.vertex[static_cast<std::size_t>(src.dst)]) && img.dst != f.vertex[static_cast<std::size_t>(src.dst)])
      errors.push_back("edge '" + src.name + "': d0 not preserved");
  }
  for (std::size_t t = 0; t < f.triangle.size(); ++t) {
    if (!in_range(2, f.triangle[t])) {
      errors.push_back("triangle '" + from.triangles()[t].name + "' maps outside the codomain");
      continue;
    }
    const Triangle& src = from.triangles()[t];
    const Triangle& img = to.triangle(f.triangle[t]);
    if (img.d0 != f.edge[static_cast<std::size_t>(src.d0)] || img.d1 != f.edge[static_cast<std::size_t>(src.d1)] ||
        img.d2 != f.edge[static_cast<std::size_t>(src.d2)])
      errors.push_back("triangle '" + src.name + "': faces not preserved");
  }
  return errors;
}

SSetMap compose(const SSetMap& g, const SSetMap& f) {
  SSetMap h;
  for (int v : f.vertex) h.vertex.push_back(g.vertex.at(static_cast<std::size_t>(v)));
  for (int e : f.edge) h.edge.push_back(g.edge.at(static_cast<std::size_t>(e)));
  for (int t : f.triangle) h.triangle.push_back(g.triangle.at(static_cast<std::size_t>(t)));
  return h;
}

SSetMap identity_map(const SSet2& x) {
  SSetMap f;
  f.vertex.resize(x.num_vertices());
  f.edge.resize(x.num_edges());
  f.triangle.resize(x.num_triangles());
  std::iota(f.vertex.begin(), f.vertex.end(), 0);
  std::iota(f.edge.begin(), f.edge.end(), 0);
  std::iota(f.triangle.begin(), f.triangle.end(), 0);
  return f;
}

// ---------------------------------------------------------------- standard spaces

StandardSpace parse_standard_space(std::string_view name) {
  if (name == "Delta2") return StandardSpace::Delta2;
  if (name == "Circle") return StandardSpace::Circle;
  if (name == "GluedTriangle") return StandardSpace::GluedTriangle;
  if (name == "ChshCone") return StandardSpace::ChshCone;
  if (name == "ChshBoundary") return StandardSpace::ChshBoundary;
  if (name == "TwoEdgeLoop") return StandardSpace::TwoEdgeLoop;
  throw UsageError("unknown standard space '" + std::string(name) + "'");
}

namespace {

MeasurementCone chsh_cone() {
  return measurement_cone({"x0", "x1", "y0", "y1"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

}  // namespace

SSet2 build_standard(StandardSpace name) {
  SSet2 x;
  switch (name) {
    case StandardSpace::Delta2: {
      int v0 = x.add_vertex("0");
      int v1 = x.add_vertex("1");
      int v2 = x.add_vertex("2");
      int ex = x.add_edge("x", v0, v1);
      int ey = x.add_edge("y", v1, v2);
      int ez = x.add_edge("z", v0, v2);
      x.add_triangle("t", ey, ez, ex);
      return x;
    }
    case StandardSpace::Circle: {
      int v = x.add_vertex("x");
      x.add_edge("s", v, v);
      return x;
    }
    case StandardSpace::GluedTriangle: {
      int v0 = x.add_vertex("v0");
      int v1 = x.add_vertex("v1");
      int e = x.add_edge("e", v0, v1);
      int l = x.add_edge("l", v1, v1);
      x.add_triangle("t", l, e, e);
      return x;
    }
    case StandardSpace::ChshCone:
      return chsh_cone().space;
    case StandardSpace::ChshBoundary:
      return chsh_boundary().space;
    case StandardSpace::TwoEdgeLoop: {
      int a = x.add_vertex("a");
      int b = x.add_vertex("b");
      x.add_edge("x", a, b);
      x.add_edge("y", a, b);
      return x;
    }
  }
  throw UsageError("unknown standard space");
}

Subspace chsh_boundary() {
  const MeasurementCone c = chsh_cone();
  Subspace sub;
  std::map<int, int> vmap;
  for (int t : c.context_triangle) {
    const Edge& z = c.space.edge(c.space.triangle(t).d1);
    for (int v : {z.src, z.dst}) {
      if (vmap.count(v) == 0) {
        vmap[v] = sub.space.add_vertex(c.space.vertices()[static_cast<std::size_t>(v)]);
        sub.inclusion.vertex.push_back(v);
      }
    }
  }
  for (int t : c.context_triangle) {
    int ze = c.space.triangle(t).d1;
    const Edge& z = c.space.edge(ze);
    sub.space.add_edge(z.name, vmap[z.src], vmap[z.dst]);
    sub.inclusion.edge.push_back(ze);
  }
  return sub;
}

Subspace glued_triangle_loop() {
  const SSet2 g = build_standard(StandardSpace::GluedTriangle);
  Subspace sub;
  sub.space = build_standard(StandardSpace::Circle);
  const int loop = g.triangle(0).d0;
  sub.inclusion.vertex = {g.edge(loop).src};
  sub.inclusion.edge = {loop};
  return sub;
}

MeasurementCone measurement_cone(const std::vector<std::string>& measurements,
                                 const std::vector<std::pair<int, int>>& pair_contexts) {
  const std::size_t m = measurements.size();
  // Node 2k is the source of measurement k, node 2k+1 its target.
  std::vector<std::size_t> parent(2 * m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (auto [u, v] : pair_contexts) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= m || static_cast<std::size_t>(v) >= m || u == v)
      throw UsageError("bad context pair");
    std::size_t a = root(2 * static_cast<std::size_t>(u) + 1);
    std::size_t b = root(2 * static_cast<std::size_t>(v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  MeasurementCone out;
  std::map<std::size_t, int> vertex_of_root;
  std::vector<int> vertex_of_node(2 * m);
  for (std::size_t node = 0; node < 2 * m; ++node) {
    std::size_t r = root(node);
    auto it = vertex_of_root.find(r);
    if (it == vertex_of_root.end()) {
      int v = out.space.add_vertex("v" + std::to_string(vertex_of_root.size()));
      it = vertex_of_root.emplace(r, v).first;
    }
    vertex_of_node[node] = it->second;
  }
  for (std::size_t k = 0; k < m; ++k) {
    out.measurement_edge.push_back(out.space.add_edge(measurements[k], vertex_of_node[2 * k], vertex_of_node[2 * k + 1]));
  }
  for (auto [u, v] : pair_contexts) {
    const auto su = static_cast<std::size_t>(u);
    const auto sv = static_cast<std::size_t>(v);
    int z = out.space.add_edge(measurements[su] + "+" + measurements[sv], vertex_of_node[2 * su], vertex_of_node[2 * sv + 1]);
    out.context_triangle.push_back(out.space.add_triangle(measurements[su] + "," + measurements[sv],
                                                          out.measurement_edge[sv], z, out.measurement_edge[su]));
  }
  return out;
}

Prism prism(const SSet2& x) {
  if (x.dimension() > 1) throw Unsupported("prism needs a space of dimension <= 1");
  Prism p;
  const std::size_t nv = x.num_vertices();
  std::vector<int> bottom(nv), top(nv);
  for (std::size_t v = 0; v < nv; ++v) bottom[v] = p.space.add_vertex(x.vertices()[v] + "@0");
  for (std::size_t v = 0; v < nv; ++v) top[v] = p.space.add_vertex(x.vertices()[v] + "@1");
  p.at_zero.vertex = bottom;
  p.at_one.vertex = top;
  for (const Edge& e : x.edges()) {
    p.at_zero.edge.push_back(p.space.add_edge(e.name + "@0", bottom[static_cast<std::size_t>(e.src)], bottom[static_cast<std::size_t>(e.dst)]));
  }
  for (const Edge& e : x.edges()) {
    p.at_one.edge.push_back(p.space.add_edge(e.name + "@1", top[static_cast<std::size_t>(e.src)], top[static_cast<std::size_t>(e.dst)]));
  }
  for (std::size_t v = 0; v < nv; ++v) p.vertical.push_back(p.space.add_edge(x.vertices()[v] + "@I", bottom[v], top[v]));
  for (const Edge& e : x.edges()) {
    p.diagonal.push_back(p.space.add_edge(e.name + "@D", bottom[static_cast<std::size_t>(e.src)], top[static_cast<std::size_t>(e.dst)]));
  }
  for (std::size_t k = 0; k < x.num_edges(); ++k) {
    const Edge& e = x.edges()[k];
    int lower = p.space.add_triangle(e.name + "@lo", p.vertical[static_cast<std::size_t>(e.dst)], p.diagonal[k], p.at_zero.edge[k]);
    int upper = p.space.add_triangle(e.name + "@hi", p.at_one.edge[k], p.diagonal[k], p.vertical[static_cast<std::size_t>(e.src)]);
    p.triangles.emplace_back(lower, upper);
  }
  return p;
}

DisjointUnion disjoint_union(const SSet2& a, const SSet2& b) {
  DisjointUnion u;
  auto copy = [&](const SSet2& x, const std::string& prefix, SSetMap& inj) {
    const int v0 = static_cast<int>(u.space.num_vertices());
    const int e0 = static_cast<int>(u.space.num_edges());
    for (const auto& v : x.vertices()) inj.vertex.push_back(u.space.add_vertex(prefix + v));
    for (const auto& e : x.edges()) inj.edge.push_back(u.space.add_edge(prefix + e.name, v0 + e.src, v0 + e.dst));
    for (const auto& t : x.triangles())
      inj.triangle.push_back(u.space.add_triangle(prefix + t.name, e0 + t.d0, e0 + t.d1, e0 + t.d2));
  };
  copy(a, "0.", u.left);
  copy(b, "1.", u.right);
  return u;
}

Join cone(const SSet2& x) {
  if (x.dimension() > 1) throw Unsupported("cone of a space of dimension > 1 exceeds dimension 2");
  Join j;
  j.apex = j.space.add_vertex("c");
  std::vector<int> vert;
  for (const auto& v : x.vertices()) vert.push_back(j.space.add_vertex(v));
  for (std::size_t v = 0; v < x.num_vertices(); ++v) {
    j.spoke.push_back(j.space.add_edge("c>" + x.vertices()[v], j.apex, vert[v]));
  }
  for (const Edge& e : x.edges()) {
    j.base_edge.push_back(j.space.add_edge(e.name, vert[static_cast<std::size_t>(e.src)], vert[static_cast<std::size_t>(e.dst)]));
  }
  for (std::size_t k = 0; k < x.num_edges(); ++k) {
    const Edge& e = x.edges()[k];
    j.cone_triangle.push_back(j.space.add_triangle("c*" + e.name, j.base_edge[k], j.spoke[static_cast<std::size_t>(e.dst)],
                                                   j.spoke[static_cast<std::size_t>(e.src)]));
  }
  return j;
}

// ---------------------------------------------------------------- DetMap

Outcome DetMap::value(const SSet2& x, int dim, int idx) const {
  auto l = [&](int i) { return labels.at(static_cast<std::size_t>(i)); };
  if (target.kind == TargetKind::Nerve) {
    switch (dim) {
      case 0:
        return {};
      case 1:
        return {l(idx)};
      case 2: {
        const Triangle& t = x.triangle(idx);
        return {l(t.d2), l(t.d0)};
      }
    }
  } else {
    switch (dim) {
      case 0:
        return {l(idx)};
      case 1: {
        const Edge& e = x.edge(idx);
        return {l(e.src), l(e.dst)};
      }
      case 2: {
        auto v = x.triangle_vertices(idx);
        return {l(v[0]), l(v[1]), l(v[2])};
      }
    }
  }
  throw UsageError("dimension out of range");
}

std::vector<std::string> check_det_map(const SSet2& x, const DetMap& phi) {
  std::vector<std::string> errors;
  const std::size_t expected = phi.target.kind == TargetKind::Nerve ? x.num_edges() : x.num_vertices();
  if (phi.labels.size() != expected) {
    errors.push_back("labeling has " + std::to_string(phi.labels.size()) + " entries, expected " + std::to_string(expected));
    return errors;
  }
  for (int v : phi.labels) {
    if (v < 0 || v >= phi.target.d) errors.push_back("label " + std::to_string(v) + " outside Z_" + std::to_string(phi.target.d));
  }
  if (!errors.empty() || phi.target.kind != TargetKind::Nerve) return errors;
  for (const Triangle& t : x.triangles()) {
    auto l = [&](int e) { return phi.labels[static_cast<std::size_t>(e)]; };
    if (l(t.d1) != (l(t.d2) + l(t.d0)) % phi.target.d)
      errors.push_back("triangle '" + t.name + "': label(d1) != label(d2) + label(d0)");
  }
  return errors;
}

DetMap pullback(const DetMap& phi, const SSetMap& f, const SSet2& from) {
  DetMap out{phi.target, {}};
  if (phi.target.kind == TargetKind::Nerve) {
    for (std::size_t e = 0; e < from.num_edges(); ++e) out.labels.push_back(phi.labels.at(static_cast<std::size_t>(f.edge.at(e))));
  } else {
    for (std::size_t v = 0; v < from.num_vertices(); ++v) out.labels.push_back(phi.labels.at(static_cast<std::size_t>(f.vertex.at(v))));
  }
  return out;
}

DetMap pointwise_sum(const DetMap& a, const DetMap& b) {
  if (a.target != b.target || a.labels.size() != b.labels.size()) throw UsageError("maps into different targets");
  DetMap out{a.target, a.labels};
  for (std::size_t k = 0; k < out.labels.size(); ++k) out.labels[k] = (a.labels[k] + b.labels[k]) % a.target.d;
  return out;
}

DetMap pointwise_negation(const DetMap& a) {
  DetMap out{a.target, a.labels};
  for (int& v : out.labels) v = (a.target.d - v) % a.target.d;
  return out;
}

DetMap zero_map(const SSet2& x, Target target) {
  return {target, std::vector<int>(target.kind == TargetKind::Nerve ? x.num_edges() : x.num_vertices(), 0)};
}

std::string det_map_to_string(const SSet2& x, const DetMap& phi) {
  std::ostringstream os;
  const int dim = phi.target.kind == TargetKind::Nerve ? 1 : 0;
  for (std::size_t k = 0; k < phi.labels.size(); ++k) {
    if (k > 0) os << ',';
    os << x.name(dim, static_cast<int>(k)) << '=' << phi.labels[k];
  }
  return os.str();
}

namespace {

// Backtracking search over nerve edge labelings. A triangle is checked as soon
// as its highest-numbered edge receives a label.
class NerveSearch {
 public:
  NerveSearch(const SSet2& x, int d) : x_(x), d_(d), closing_(x.num_edges()) {
    for (std::size_t t = 0; t < x.num_triangles(); ++t) {
      const Triangle& tri = x.triangles()[t];
      int last = std::max({tri.d0, tri.d1, tri.d2});
      closing_[static_cast<std::size_t>(last)].push_back(static_cast<int>(t));
    }
  }

  bool consistent_at(const std::vector<int>& labels, std::size_t e) const {
    for (int t : closing_[e]) {
      const Triangle& tri = x_.triangle(t);
      auto l = [&](int k) { return labels[static_cast<std::size_t>(k)]; };
      if (l(tri.d1) != (l(tri.d2) + l(tri.d0)) % d_) return false;
    }
    return true;
  }

  void extend(std::vector<int>& labels, std::size_t e, std::vector<DetMap>& out) const {
    if (e == labels.size()) {
      out.push_back({Target::nerve(d_), labels});
      return;
    }
    for (int a = 0; a < d_; ++a) {
      labels[e] = a;
      if (consistent_at(labels, e)) extend(labels, e + 1, out);
    }
  }

 private:
  const SSet2& x_;
  int d_;
  std::vector<std::vector<int>> closing_;
};

std::vector<DetMap> all_labelings(Target target, std::size_t n) {
  std::vector<DetMap> out;
  std::vector<int> labels(n, 0);
  while (true) {
    out.push_back({target, labels});
    std::size_t pos = n;
    while (pos > 0 && ++labels[pos - 1] == target.d) {
      labels[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

}  // namespace

std::vector<DetMap> enumerate_det_maps(const SSet2& x, Target target, Exec exec) {
  if (target.d < 2) throw UsageError("target modulus must be at least 2");
  if (target.kind == TargetKind::DeltaZ) return all_labelings(target, x.num_vertices());

  const std::size_t ne = x.num_edges();
  NerveSearch search(x, target.d);
  if (exec == Exec::Serial || ne == 0) {
    std::vector<DetMap> out;
    std::vector<int> labels(ne, 0);
    search.extend(labels, 0, out);
    return out;
  }

  // Split on a label prefix long enough to give every thread several tasks.
  std::size_t prefix = 0;
  long tasks = 1;
  while (prefix < ne && tasks < 64) {
    tasks *= target.d;
    ++prefix;
  }
  std::vector<std::vector<DetMap>> chunks(static_cast<std::size_t>(tasks));
#pragma omp parallel for schedule(dynamic)
  for (long task = 0; task < tasks; ++task) {
    std::vector<int> labels(ne, 0);
    long rest = task;
    for (std::size_t k = prefix; k-- > 0;) {
      labels[k] = static_cast<int>(rest % target.d);
      rest /= target.d;
    }
    bool ok = true;
    for (std::size_t k = 0; k < prefix && ok; ++k) ok = search.consistent_at(labels, k);
    if (ok) search.extend(labels, prefix, chunks[static_cast<std::size_t>(task)]);
  }
  std::vector<DetMap> out;
  for (auto& c : chunks) out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  return out;
}

bool homotopy_classes(const DetMap& phi0, const DetMap& phi1, const SSet2& x) {
  if (phi0.target != phi1.target || phi0.target.kind != TargetKind::Nerve)
    throw UsageError("homotopy_classes needs two maps into the same nerve");
  const Prism p = prism(x);
  for (const DetMap& h : enumerate_det_maps(p.space, phi0.target)) {
    if (pullback(h, p.at_zero, x) == phi0 && pullback(h, p.at_one, x) == phi1) return true;
  }
  return false;
}

}  // namespace simctx
