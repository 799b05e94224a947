// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "simctx/monoid.hpp"
#include "simctx/polytope.hpp"

using namespace simctx;
using namespace simtest;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Check = std::function<Result()>;

std::string str(const Rational& r) { return rational_to_string(r); }

bool same_set(const std::vector<SimpDist>& a, const std::vector<SimpDist>& b) {
  return a.size() == b.size() && std::is_permutation(a.begin(), a.end(), b.begin());
}

std::vector<SimpDist> coordinates_of(const std::vector<VertexReport>& reports) {
  std::vector<SimpDist> out;
  for (const auto& r : reports) out.push_back(r.coordinates);
  return out;
}

Scalar q(const Rational& r) { return Scalar(SemiringKind::NonnegRational, r); }

Result chsh_census() {
  auto t0 = std::chrono::steady_clock::now();
  auto reports = enumerate_vertices(shared_standard(StandardSpace::ChshCone), Target::nerve(2));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int det = 0, sc = 0;
  for (const auto& r : reports) {
    if (r.is_deterministic && r.contextual_fraction == 0) ++det;
    if (r.is_strongly_contextual && r.contextual_fraction == 1) ++sc;
  }
  bool matches_list = same_set(coordinates_of(reports), known_vertices(StandardSpace::ChshCone));
  std::ostringstream os;
  os << reports.size() << " vertices, " << det << " deterministic, " << sc << " strongly contextual with CF 1, "
     << (matches_list ? "equal to the hand list" : "DIFFERENT from the hand list") << ", " << secs << " s";
  return {reports.size() == 24 && det == 16 && sc == 8 && matches_list && secs < 60, os.str()};
}

Result fine_theorem() {
  Rng rng(1001);
  const auto vertices = known_vertices(StandardSpace::ChshCone);
  const auto pr = std::vector<SimpDist>(vertices.begin() + 16, vertices.end());
  const SimpDist uniform = uniform_chsh();
  int disagree = 0, contextual = 0, noncontextual = 0, boundary = 0;
  const int n = 1200;
  for (int i = 0; i < n; ++i) {
    SimpDist p = [&] {
      switch (i % 4) {
        case 0:
        case 1: return random_chsh_marginals(rng);
        case 2: return random_vertex_mixture(rng, vertices, rng.uniform_int(1, 6));
        default: {
          // PR box against noise; weight 1/2 sits exactly on the CHSH bound
          Rational a = rng.between(Rational(1, 4), Rational(3, 4), 8);
          return mix({{q(a), rng.pick(pr)}, {q(1 - a), rng.coin() ? uniform : rng.pick(vertices)}});
        }
      }
    }();
    ChshReport report = chsh_check(p);
    bool nc = is_noncontextual(p).noncontextual;
    if (report.all_satisfied != nc) ++disagree;
    if (chsh_max(p) == 2) ++boundary;
    (nc ? noncontextual : contextual)++;
  }
  std::ostringstream os;
  os << n << " models (" << contextual << " contextual, " << noncontextual << " noncontextual, " << boundary
     << " on the bound S=2), " << disagree << " disagreements";
  return {disagree == 0 && contextual > 0 && noncontextual > 0, os.str()};
}

Result exact_inverse() {
  auto space = shared_standard(StandardSpace::Circle);
  const SemiringKind r = SemiringKind::RealField;
  auto w = [&](long v) { return Scalar(r, Rational(v)); };
  std::array<std::map<int, OutcomeDist>, 3> given;
  given[1].emplace(0, OutcomeDist::from_weights(r, {{{0, 0}, w(1)}, {{0, 1}, w(2)}, {{1, 0}, w(2)}, {{1, 1}, w(-4)}}));
  SimpDist p = complete_from_faces(space, r, Target::delta(2), given);
  auto inv = inverse(p);
  if (!inv) return {false, "no inverse found"};
  const Rational want[4] = {Rational(11, 35), Rational(2, 7), Rational(2, 7), Rational(4, 35)};
  bool entries = true;
  std::string got;
  for (int k = 0; k < 4; ++k) {
    Rational v = inv->weight(1, 0, {k / 2, k % 2}).value();
    entries = entries && v == want[k];
    got += (k ? ", " : "") + str(v);
  }
  SimpDist e = identity(space, Target::delta(2), r);
  bool unit = mult(p, *inv) == e && mult(*inv, p) == e;
  return {entries && unit, "inverse (" + got + "), both products " + (unit ? "equal" : "DIFFER from") + " the identity"};
}

struct Corpora {
  std::vector<SimpDist> rational;
  std::vector<SimpDist> boolean;
};

const Corpora& corpora() {
  static const Corpora c = [] {
    Rng rng(2024);
    Corpora out;
    for (StandardSpace s : {StandardSpace::Delta2, StandardSpace::GluedTriangle, StandardSpace::ChshCone}) {
      for (auto& p : rational_corpus(rng, s, 140)) {
        out.boolean.push_back(boolean_support(p));
        out.rational.push_back(std::move(p));
      }
    }
    return out;
  }();
  return c;
}

Result weak_invertibility() {
  int disagree = 0, contextual = 0, total = 0;
  for (const auto* set : {&corpora().rational, &corpora().boolean}) {
    for (const auto& p : *set) {
      bool wi = is_weakly_invertible(p).invertible;
      bool nc = is_noncontextual(p).noncontextual;
      if (wi != nc) ++disagree;
      if (!nc) ++contextual;
      ++total;
    }
  }
  std::ostringstream os;
  os << total << " models (" << corpora().rational.size() << " rational, " << corpora().boolean.size() << " boolean; "
     << contextual << " contextual), " << disagree << " disagreements";
  return {disagree == 0 && total >= 500, os.str()};
}

Result strong_contextuality() {
  int disagree = 0, sc_count = 0, isupp_checked = 0, isupp_bad = 0, total = 0;
  for (const auto* set : {&corpora().rational, &corpora().boolean}) {
    for (const auto& p : *set) {
      MonoidContext ctx = MonoidContext::of(p);
      bool sc = is_strongly_contextual(p);
      bool sni = is_strongly_noninvertible(ctx, p);
      bool ok = sc == sni;
      if (p.semiring() == SemiringKind::NonnegRational) ok = ok && sc == (contextual_fraction(p).value == 1);
      if (!ok) ++disagree;
      if (sc) ++sc_count;
      ++total;

      auto expected = brute_support(p);
      auto got = isupp(ctx, p);
      std::sort(got.begin(), got.end());
      auto lib = support(p);
      std::sort(lib.begin(), lib.end());
      if (got != expected || lib != expected) ++isupp_bad;
      ++isupp_checked;
    }
  }
  std::ostringstream os;
  os << total << " models (" << sc_count << " strongly contextual), " << disagree
     << " disagreements; Isupp equals the support on " << (isupp_checked - isupp_bad) << "/" << isupp_checked;
  return {disagree == 0 && isupp_bad == 0 && isupp_checked >= 100 && sc_count > 0, os.str()};
}

Result monoid_laws() {
  Rng rng(6006);
  int bad_assoc = 0, bad_unit = 0, bad_bilinear = 0, bad_product = 0, n = 0;
  for (StandardSpace s : {StandardSpace::Delta2, StandardSpace::GluedTriangle, StandardSpace::ChshCone}) {
    const auto vertices = known_vertices(s);
    auto x = shared_standard(s);
    SimpDist e = identity(x, Target::nerve(2), SemiringKind::NonnegRational);
    auto draw = [&] { return random_vertex_mixture(rng, vertices, rng.uniform_int(1, 4)); };
    for (int i = 0; i < 350; ++i, ++n) {
      SimpDist p = draw(), p2 = draw(), q1 = draw(), q2 = draw();
      if (!(mult(mult(p, q1), q2) == mult(p, mult(q1, q2)))) ++bad_assoc;
      if (!(mult(e, p) == p && mult(p, e) == p)) ++bad_unit;

      Rational a = rng.unit_rational(), b = rng.unit_rational();
      SimpDist lhs = mult(mix({{q(a), p}, {q(1 - a), p2}}), mix({{q(b), q1}, {q(1 - b), q2}}));
      SimpDist rhs = mix({{q(a * b), mult(p, q1)},
                          {q(a * (1 - b)), mult(p, q2)},
                          {q((1 - a) * b), mult(p2, q1)},
                          {q((1 - a) * (1 - b)), mult(p2, q2)}});
      if (!(lhs == rhs)) ++bad_bilinear;

      SimpDist pq = mult(p, q1);
      for (int t = 0; t < static_cast<int>(x->num_triangles()); ++t) {
        if (box_of(pq, t) != triangle_product(box_of(p, t), box_of(q1, t))) ++bad_product;
      }
    }
  }
  // Both sides are bilinear, so agreement on pairs of point masses makes the
  // closed form an identity of polynomials.
  const auto basis = known_vertices(StandardSpace::Delta2);
  int bad_basis = 0;
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      if (box_of(mult(a, b), 0) != triangle_product(box_of(a, 0), box_of(b, 0))) ++bad_basis;
    }
  }
  std::ostringstream os;
  os << n << " triples; failures: associativity " << bad_assoc << ", identity " << bad_unit << ", bilinearity "
     << bad_bilinear << ", triangle product " << bad_product << " (random boxes), " << bad_basis << "/16 (basis)";
  return {bad_assoc + bad_unit + bad_bilinear + bad_product + bad_basis == 0 && n >= 1000, os.str()};
}

Result fraction_inequalities() {
  Rng rng(7007);
  int bad_mult = 0, bad_mix = 0, n = 0, strict = 0, fractional = 0;
  for (StandardSpace s : {StandardSpace::GluedTriangle, StandardSpace::ChshCone}) {
    const auto vertices = known_vertices(s);
    for (int i = 0; i < 120; ++i, ++n) {
      SimpDist p = random_vertex_mixture(rng, vertices, rng.uniform_int(1, 4));
      SimpDist r = random_vertex_mixture(rng, vertices, rng.uniform_int(1, 4));
      Rational ip = invertible_fraction(p), ir = invertible_fraction(r);
      Rational ipr = invertible_fraction(mult(p, r));
      if (ipr < ip * ir) ++bad_mult;
      if (ipr > ip * ir) ++strict;
      if (ip > 0 && ip < 1) ++fractional;
      Rational a = rng.unit_rational();
      Rational imix = invertible_fraction(mix({{q(a), p}, {q(1 - a), r}}));
      if (imix < a * ip + (1 - a) * ir) ++bad_mix;
    }
  }
  // Bell bound pins the value of a PR box mixed into the identity.
  SimpDist anchor = mix({{q(Rational(3, 4)), identity(shared_standard(StandardSpace::ChshCone), Target::nerve(2),
                                                         SemiringKind::NonnegRational)},
                         {q(Rational(1, 4)), pr_box({0, 0, 0, 1})}});
  Rational anchor_if = invertible_fraction(anchor);
  bool anchor_ok = anchor_if == Rational(3, 4) && bell_noncontextual_bound(anchor) == Rational(3, 4);
  std::ostringstream os;
  os << n << " pairs (" << fractional << " with 0<IF<1, " << strict << " strict products); violations: product "
     << bad_mult << ", mixture " << bad_mix << "; IF(3/4 e + 1/4 PR) = " << str(anchor_if);
  return {bad_mult == 0 && bad_mix == 0 && n >= 200 && anchor_ok, os.str()};
}

Result gluing() {
  Rng rng(8008);
  const std::vector<std::string> k1{"a0", "a1", "a2", "a3", "a4", "a5"};
  const std::vector<std::string> k2{"b0", "b1", "b2", "b3", "b4"};
  const std::vector<std::string> ys{"y0", "y1", "y2"};
  int bad = 0, n = 500;
  for (int i = 0; i < n; ++i) {
    std::map<std::string, std::string> f1, f2;
    for (const auto& k : k1) f1[k] = rng.pick(ys);
    for (std::size_t j = 0; j < k2.size(); ++j) f2[k2[j]] = j < ys.size() ? ys[j] : rng.pick(ys);
    auto g1 = [&](const std::string& k) { return f1.at(k); };
    auto g2 = [&](const std::string& k) { return f2.at(k); };

    Dist<std::string> p1 = random_string_dist(rng, k1);
    Dist<std::string> m = pushforward(g1, p1);
    std::map<std::string, Scalar> w2;
    for (const auto& y : ys) {
      std::vector<std::string> fiber;
      for (const auto& k : k2) {
        if (f2[k] == y) fiber.push_back(k);
      }
      auto split = rng.simplex_point(fiber.size());
      for (std::size_t j = 0; j < fiber.size(); ++j) w2.emplace(fiber[j], q(m.weight(y).value() * split[j]));
    }
    Dist<std::string> p2 = Dist<std::string>::from_weights(SemiringKind::NonnegRational, std::move(w2));

    auto joint = glue_pullback(p1, p2, g1, g2);
    using Pair = std::pair<std::string, std::string>;
    bool ok = pushforward([](const Pair& k) { return k.first; }, joint) == p1 &&
              pushforward([](const Pair& k) { return k.second; }, joint) == p2;
    for (const auto& [k, v] : joint) ok = ok && f1[k.first] == f2[k.second];
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(n) + " compatible pairs, " + std::to_string(bad) + " with wrong marginals"};
}

Result homotopy_vertex() {
  SSet2 x = build_standard(StandardSpace::TwoEdgeLoop);
  const DetMap phi0{Target::nerve(2), {0, 0}};
  const DetMap phi1{Target::nerve(2), {1, 0}};
  Prism pr = prism(x);
  bool classes = homotopy_classes(phi0, phi1, x);
  auto brute = brute_force_homotopies(pr, phi0, phi1);
  HomotopyResult h = distribution_homotopy(phi0, phi1, x);
  if (h.kind != HomotopyResult::Kind::Unique || !h.solution) {
    return {false, std::string("distribution homotopy is ") + (h.kind == HomotopyResult::Kind::None ? "absent" : "not unique")};
  }
  const SimpDist& f = *h.solution;
  PrPattern pattern = pr_pattern(f, pr);
  bool sc = is_strongly_contextual(f);
  Rational cf = contextual_fraction(f).value;
  bool vertex = is_vertex(f);
  bool same_prism = *h.prism_space == pr.space;
  std::ostringstream os;
  os << "deterministic homotopy " << (classes ? "exists" : "none") << " (brute force: " << brute.size()
     << "); distribution homotopy unique, PR pattern " << (pattern.matches ? "yes" : "no") << " (" << pattern.correlated
     << " correlated, " << pattern.anticorrelated << " anticorrelated), strongly contextual " << (sc ? "yes" : "no")
     << ", CF " << str(cf) << ", vertex " << (vertex ? "yes" : "no");
  return {!classes && brute.empty() && same_prism && pattern.matches && sc && cf == 1 && vertex, os.str()};
}

Result glued_triangle() {
  auto x = shared_standard(StandardSpace::GluedTriangle);
  auto reports = enumerate_vertices(x, Target::nerve(2));
  const auto expected = known_vertices(StandardSpace::GluedTriangle);
  bool vertices_ok = same_set(coordinates_of(reports), expected);
  bool contextual_ok = true;
  for (const auto& r : reports) {
    if (!r.is_deterministic) contextual_ok = contextual_ok && r.is_strongly_contextual && r.contextual_fraction == 1;
  }

  Subspace loop = glued_triangle_loop();
  auto loop_space = std::make_shared<const SSet2>(loop.space);
  Rng rng(1010);
  int bad_map = 0;
  for (int i = 0; i < 200; ++i) {
    SimpDist p = i < 3 ? expected[static_cast<std::size_t>(i)] : random_vertex_mixture(rng, expected, rng.uniform_int(1, 4));
    SimpDist r = restrict(p, loop.inclusion, loop_space);
    if (r.weight(1, 0, {0}).value() != 1 - 2 * box_of(p, 0)[1]) ++bad_map;
  }

  DistributionPolytope poly(x, Target::nerve(2));
  auto endpoint = [&](int y) {
    std::array<std::map<int, OutcomeDist>, 3> given;
    given[1].emplace(0, OutcomeDist::delta({y}, SemiringKind::NonnegRational));
    return complete_from_faces(loop_space, SemiringKind::NonnegRational, Target::nerve(2), given);
  };
  auto fiber0 = coordinates_of(enumerate_fiber_vertices(poly, loop.inclusion, endpoint(0)));
  auto fiber1 = coordinates_of(enumerate_fiber_vertices(poly, loop.inclusion, endpoint(1)));
  bool fibers_ok = same_set(fiber0, {expected[0], expected[1]}) && same_set(fiber1, {expected[2]});

  std::ostringstream os;
  os << reports.size() << " vertices " << (vertices_ok ? "as listed" : "NOT as listed") << ", contextual vertex "
     << (contextual_ok ? "strongly contextual" : "NOT strongly contextual") << ", loop weight 1-2p01 failed on " << bad_map
     << "/200, fibers over the endpoints " << (fibers_ok ? "match" : "DO NOT match");
  return {vertices_ok && contextual_ok && bad_map == 0 && fibers_ok, os.str()};
}

Dist<Dist<std::string>> random_nested(Rng& rng, const std::vector<std::string>& keys) {
  const int k = rng.uniform_int(1, 4);
  auto w = rng.simplex_point(static_cast<std::size_t>(k), false);
  std::vector<std::pair<Scalar, Dist<Dist<std::string>>>> parts;
  for (int i = 0; i < k; ++i) {
    parts.emplace_back(q(w[static_cast<std::size_t>(i)]), delta(random_string_dist(rng, keys), SemiringKind::NonnegRational));
  }
  return mixture(parts);
}

Result monad_laws() {
  Rng rng(1111);
  const std::vector<std::string> keys{"u", "v", "w", "z"};
  auto f = [](const std::string& s) { return s == "u" || s == "v" ? std::string("left") : std::string("right"); };
  auto g = [](const std::string& s) { return static_cast<int>(s.size()); };
  int bad_monad = 0, n = 300;
  for (int i = 0; i < n; ++i) {
    Dist<std::string> p = random_string_dist(rng, keys);
    bool ok = flatten(delta(p, SemiringKind::NonnegRational)) == p &&
              flatten(pushforward([](const std::string& s) { return delta(s, SemiringKind::NonnegRational); }, p)) == p &&
              pushforward(g, pushforward(f, p)) == pushforward([&](const std::string& s) { return g(f(s)); }, p);
    auto nested = random_nested(rng, keys);
    auto push_f = [&](const Dist<std::string>& d) { return pushforward(f, d); };
    ok = ok && pushforward(f, flatten(nested)) == flatten(pushforward(push_f, nested));
    const int k = rng.uniform_int(1, 3);
    auto w = rng.simplex_point(static_cast<std::size_t>(k), false);
    std::vector<std::pair<Scalar, Dist<Dist<Dist<std::string>>>>> parts;
    for (int j = 0; j < k; ++j) parts.emplace_back(q(w[static_cast<std::size_t>(j)]), delta(random_nested(rng, keys), SemiringKind::NonnegRational));
    auto triple = mixture(parts);
    ok = ok && flatten(flatten(triple)) ==
                   flatten(pushforward([](const Dist<Dist<std::string>>& d) { return flatten(d); }, triple));
    if (!ok) ++bad_monad;
  }

  int bad_natural = 0, bad_embed = 0, checks = 0;
  struct Case {
    StandardSpace space;
    Subspace sub;
  };
  std::vector<Case> cases{{StandardSpace::ChshCone, chsh_boundary()}, {StandardSpace::GluedTriangle, glued_triangle_loop()}};
  for (const auto& c : cases) {
    auto x = shared_standard(c.space);
    auto z = std::make_shared<const SSet2>(c.sub.space);
    const auto maps = enumerate_det_maps(*x, Target::nerve(2));
    for (const auto& phi : maps) {
      if (!(theta(x, delta(phi, SemiringKind::NonnegRational)) == deterministic_embed(x, phi, SemiringKind::NonnegRational))) ++bad_embed;
    }
    for (int i = 0; i < 100; ++i, ++checks) {
      auto w = rng.simplex_point(maps.size());
      std::map<DetMap, Scalar> m;
      for (std::size_t j = 0; j < maps.size(); ++j) m.emplace(maps[j], q(w[j]));
      auto d = Dist<DetMap>::from_weights(SemiringKind::NonnegRational, std::move(m));
      SimpDist lhs = restrict(theta(x, d), c.sub.inclusion, z);
      SimpDist rhs = theta(z, pushforward([&](const DetMap& phi) { return pullback(phi, c.sub.inclusion, *z); }, d));
      if (!(lhs == rhs)) ++bad_natural;
    }
  }
  std::ostringstream os;
  os << n << " monad instances (" << bad_monad << " failures), " << checks << " naturality instances (" << bad_natural
     << " failures), theta of point masses vs embeddings: " << bad_embed << " failures";
  return {bad_monad == 0 && bad_natural == 0 && bad_embed == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> checks{
      {"chsh-vertex-census", chsh_census},
      {"fine-theorem", fine_theorem},
      {"exact-inverse", exact_inverse},
      {"weak-invertibility-vs-noncontextuality", weak_invertibility},
      {"strong-contextuality-equivalences", strong_contextuality},
      {"monoid-laws", monoid_laws},
      {"fraction-inequalities", fraction_inequalities},
      {"gluing-marginals", gluing},
      {"homotopy-vertex", homotopy_vertex},
      {"glued-triangle-geometry", glued_triangle},
      {"monad-and-theta-laws", monad_laws},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    Result r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
