#pragma once

// 2-truncated simplicial sets stored by their nondegenerate generators, the
// targets N(Z_d) and Delta_{Z_d}, and simplicial maps between them.
//
// Orientation: an edge runs from d1 (source) to d0 (target). A triangle with
// vertices (v0, v1, v2) has d2 = v0->v1, d0 = v1->v2 and d1 = v0->v2.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simctx/execution.hpp"

namespace simctx {

/// Value of a target simplex: a tuple over Z_d.
using Outcome = std::vector<int>;

enum class TargetKind { Nerve, DeltaZ };

/// N(Z_d): n-simplices are n-tuples, inner faces add adjacent entries.
/// Delta_{Z_d}: n-simplices are (n+1)-tuples, faces drop an entry.
/// Both are simplicial groups under coordinatewise addition.
struct Target {
  TargetKind kind = TargetKind::Nerve;
  int d = 2;

  static Target nerve(int d) { return {TargetKind::Nerve, d}; }
  static Target delta(int d) { return {TargetKind::DeltaZ, d}; }

  int outcome_length(int dim) const { return kind == TargetKind::Nerve ? dim : dim + 1; }
  /// All n-simplices of the target, in lexicographic order.
  std::vector<Outcome> outcomes(int dim) const;
  std::size_t outcome_count(int dim) const;
  std::size_t outcome_index(const Outcome& y) const;
  Outcome face(int dim, int i, const Outcome& y) const;
  Outcome zero(int dim) const { return Outcome(static_cast<std::size_t>(outcome_length(dim)), 0); }
  Outcome plus(const Outcome& a, const Outcome& b) const;
  Outcome minus(const Outcome& a) const;

  friend bool operator==(const Target&, const Target&) = default;
  friend auto operator<=>(const Target&, const Target&) = default;
};

std::string_view target_kind_name(TargetKind kind);
TargetKind parse_target_kind(std::string_view name);

/// Digits concatenated when d <= 10, comma separated otherwise.
std::string outcome_to_string(const Outcome& y, int d);
Outcome parse_outcome(std::string_view text, int d, int length);

struct Edge {
  std::string name;
  int src;  // d1
  int dst;  // d0
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Triangle {
  std::string name;
  int d0;
  int d1;
  int d2;
  friend bool operator==(const Triangle&, const Triangle&) = default;
};

class SSet2 {
 public:
  int add_vertex(std::string name);
  int add_edge(std::string name, int src, int dst);
  int add_triangle(std::string name, int d0, int d1, int d2);

  std::size_t count(int dim) const;
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  /// Highest dimension with a generator; -1 when empty.
  int dimension() const;

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const Triangle& triangle(int t) const { return triangles_.at(static_cast<std::size_t>(t)); }

  /// d_i of the generator (dim, idx); dim must be 1 or 2.
  int face(int dim, int idx, int i) const;
  /// (v0, v1, v2) of a triangle, read off its d2 and d0 edges.
  std::array<int, 3> triangle_vertices(int t) const;

  const std::string& name(int dim, int idx) const;
  std::optional<int> find(int dim, std::string_view name) const;
  int index(int dim, std::string_view name) const;

  /// Simplicial identities and id hygiene; one message per violation.
  std::vector<std::string> validate() const;

  friend bool operator==(const SSet2&, const SSet2&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
};

/// Simplicial map sending generators to generators, given by id maps.
struct SSetMap {
  std::vector<int> vertex;
  std::vector<int> edge;
  std::vector<int> triangle;

  friend bool operator==(const SSetMap&, const SSetMap&) = default;
};

std::vector<std::string> check_simplicial(const SSetMap& f, const SSet2& from, const SSet2& to);
SSetMap compose(const SSetMap& g, const SSetMap& f);
SSetMap identity_map(const SSet2& x);

enum class StandardSpace { Delta2, Circle, GluedTriangle, ChshCone, ChshBoundary, TwoEdgeLoop };

StandardSpace parse_standard_space(std::string_view name);
SSet2 build_standard(StandardSpace name);

/// A subspace together with its inclusion.
struct Subspace {
  SSet2 space;
  SSetMap inclusion;
};

/// The four boundary edges x_i + y_j of the CHSH cone.
Subspace chsh_boundary();
/// The d0 loop of the glued triangle.
Subspace glued_triangle_loop();

/// One edge per measurement and one triangle per ordered pair (u, v) with
/// d2 = u, d0 = v and a fresh d1 edge named "u+v". Vertices are identified
/// just enough for the triangles to close up. ChshCone is the instance with
/// measurements x0, x1, y0, y1 and contexts (x_i, y_j).
struct MeasurementCone {
  SSet2 space;
  std::vector<int> measurement_edge;
  std::vector<int> context_triangle;
};
MeasurementCone measurement_cone(const std::vector<std::string>& measurements,
                                 const std::vector<std::pair<int, int>>& pair_contexts);

/// X x Delta[1] for a 1-dimensional X, with the shuffle triangulation.
struct Prism {
  SSet2 space;
  SSetMap at_zero;  // X x {0}
  SSetMap at_one;   // X x {1}
  std::vector<int> vertical;                   // per vertex v: (v,0) -> (v,1)
  std::vector<int> diagonal;                   // per edge e: (s,0) -> (t,1)
  std::vector<std::pair<int, int>> triangles;  // per edge: (lower, upper)
};
Prism prism(const SSet2& x);

struct DisjointUnion {
  SSet2 space;
  SSetMap left;
  SSetMap right;
};
DisjointUnion disjoint_union(const SSet2& a, const SSet2& b);

/// Join Delta[0] * X for a space of dimension <= 1: a cone vertex c, an edge
/// c -> v per vertex and a triangle c*e per edge e with d2 = c->src,
/// d1 = c->dst, d0 = e.
struct Join {
  SSet2 space;
  int apex;
  std::vector<int> spoke;        // per vertex of X
  std::vector<int> base_edge;    // per edge of X
  std::vector<int> cone_triangle;  // per edge of X
};
Join cone(const SSet2& x);

/// Simplicial map X -> N(Z_d) (labels on edges) or X -> Delta_{Z_d} (labels on vertices).
struct DetMap {
  Target target;
  std::vector<int> labels;

  /// Value on the generator (dim, idx).
  Outcome value(const SSet2& x, int dim, int idx) const;

  friend bool operator==(const DetMap&, const DetMap&) = default;
  friend auto operator<=>(const DetMap&, const DetMap&) = default;
};

std::vector<std::string> check_det_map(const SSet2& x, const DetMap& phi);
/// phi o f for f : Z -> X.
DetMap pullback(const DetMap& phi, const SSetMap& f, const SSet2& from);
DetMap pointwise_sum(const DetMap& a, const DetMap& b);
DetMap pointwise_negation(const DetMap& a);
DetMap zero_map(const SSet2& x, Target target);
std::string det_map_to_string(const SSet2& x, const DetMap& phi);

/// All simplicial maps X -> target, in lexicographic order of labels.
/// Nerve targets are searched by backtracking over edges with triangle pruning.
std::vector<DetMap> enumerate_det_maps(const SSet2& x, Target target, Exec exec = Exec::Parallel);

/// True iff some simplicial map on prism(X) restricts to phi0 on X x {0} and
/// to phi1 on X x {1}. Nerve targets, X of dimension <= 1.
bool homotopy_classes(const DetMap& phi0, const DetMap& phi1, const SSet2& x);

}  // namespace simctx
