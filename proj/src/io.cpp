#include "simctx/io.hpp"

#include <fstream>
#include <sstream>

#include "simctx/errors.hpp"

namespace simctx {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw UsageError(where + ": missing field '" + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw UsageError(where + ": expected a string");
  return j.get<std::string>();
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw UsageError(where + ": expected an integer");
  return j.get<int>();
}

Scalar as_scalar(const Json& j, SemiringKind s, const std::string& where) {
  // Boolean reading keeps only the support, so rational files can be analysed possibilistically.
  if (s == SemiringKind::Boolean && j.is_string()) {
    Scalar v = as_scalar(j, SemiringKind::NonnegRational, where);
    return v.is_zero() ? Scalar::zero(s) : Scalar::one(s);
  }
  try {
    if (j.is_number_integer()) return Scalar(s, Rational(j.get<long>()));
    if (j.is_boolean()) return Scalar(s, Rational(j.get<bool>() ? 1 : 0));
    if (j.is_string()) return Scalar::parse(s, j.get<std::string>());
  } catch (const std::exception& e) {
    throw UsageError(where + ": " + e.what());
  }
  throw UsageError(where + ": expected a weight such as \"1/2\"");
}

int lookup(const SSet2& x, int dim, const Json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  auto idx = x.find(dim, name);
  if (!idx) throw UsageError(where + ": unknown " + (dim == 0 ? "vertex" : "edge") + " '" + name + "'");
  return *idx;
}

SemiringKind semiring_of(const Json& j, std::optional<SemiringKind> override_kind) {
  if (override_kind) return *override_kind;
  auto it = j.find("semiring");
  if (it == j.end()) return SemiringKind::NonnegRational;
  try {
    return parse_semiring_kind(as_string(*it, "semiring"));
  } catch (const UsageError& e) {
    throw UsageError(std::string("semiring: ") + e.what());
  }
}

// Integer exactness is lost if JSON numbers are used; weights are emitted as strings.
Json scalar_json(const Scalar& s) { return s.to_string(); }

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

// ---------------------------------------------------------------- spaces

Json sset_to_json(const SSet2& x) {
  Json j;
  j["vertices"] = x.vertices();
  Json edges = Json::array();
  for (const Edge& e : x.edges())
    edges.push_back({{"id", e.name}, {"src", x.name(0, e.src)}, {"dst", x.name(0, e.dst)}});
  j["edges"] = std::move(edges);
  Json tris = Json::array();
  for (const Triangle& t : x.triangles())
    tris.push_back({{"id", t.name}, {"d0", x.name(1, t.d0)}, {"d1", x.name(1, t.d1)}, {"d2", x.name(1, t.d2)}});
  j["triangles"] = std::move(tris);
  return j;
}

SSet2 sset_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return build_standard(parse_standard_space(j.get<std::string>()));
    } catch (const UsageError& e) {
      throw UsageError(std::string("space: ") + e.what());
    }
  }
  SSet2 x;
  const Json& vs = field(j, "vertices", "space");
  if (!vs.is_array()) throw UsageError("space.vertices: expected an array");
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const std::string where = "space.vertices[" + std::to_string(k) + "]";
    std::string name = as_string(vs[k], where);
    if (x.find(0, name)) throw UsageError(where + ": duplicate vertex id '" + name + "'");
    x.add_vertex(std::move(name));
  }
  if (auto it = j.find("edges"); it != j.end()) {
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "space.edges[" + std::to_string(k) + "]";
      const Json& e = (*it)[k];
      std::string name = as_string(field(e, "id", where), where + ".id");
      if (x.find(1, name)) throw UsageError(where + ": duplicate edge id '" + name + "'");
      int src = lookup(x, 0, field(e, "src", where), where + ".src");
      int dst = lookup(x, 0, field(e, "dst", where), where + ".dst");
      x.add_edge(std::move(name), src, dst);
    }
  }
  if (auto it = j.find("triangles"); it != j.end()) {
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "space.triangles[" + std::to_string(k) + "]";
      const Json& t = (*it)[k];
      std::string name = as_string(field(t, "id", where), where + ".id");
      if (x.find(2, name)) throw UsageError(where + ": duplicate triangle id '" + name + "'");
      int d0 = lookup(x, 1, field(t, "d0", where), where + ".d0");
      int d1 = lookup(x, 1, field(t, "d1", where), where + ".d1");
      int d2 = lookup(x, 1, field(t, "d2", where), where + ".d2");
      x.add_triangle(std::move(name), d0, d1, d2);
    }
  }
  auto errors = x.validate();
  if (!errors.empty()) throw PreconditionError("space: " + errors.front());
  return x;
}

// ---------------------------------------------------------------- distributions

Json dist_to_json(const OutcomeDist& p, int d) {
  Json j = Json::object();
  for (const auto& [y, w] : p) j[outcome_to_string(y, d)] = scalar_json(w);
  return j;
}

OutcomeDist dist_from_json(const Json& j, SemiringKind semiring, int d, int length, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected an object of outcome weights");
  std::map<Outcome, Scalar> w;
  for (const auto& [key, value] : j.items()) {
    Outcome y;
    try {
      y = parse_outcome(key, d, length);
    } catch (const UsageError& e) {
      throw UsageError(where + ": " + e.what());
    }
    Scalar s = as_scalar(value, semiring, where + "." + key);
    if (!w.emplace(y, s).second) throw UsageError(where + ": outcome '" + key + "' listed twice");
  }
  auto p = OutcomeDist::try_from_weights(semiring, std::move(w));
  if (!p) throw PreconditionError(where + ": weights do not sum to 1");
  return std::move(*p);
}

Scenario scenario_from_json(const Json& j) {
  const int d = j.contains("d") ? as_int(j["d"], "d") : 2;
  if (d < 2) throw UsageError("d: must be at least 2");
  const TargetKind kind = j.contains("target") ? parse_target_kind(as_string(j["target"], "target")) : TargetKind::Nerve;
  return {std::make_shared<const SSet2>(sset_from_json(field(j, "space", "model"))), Target{kind, d}};
}

namespace {

const char* const kDistKeys[3] = {"vertex_dists", "edge_dists", "tri_dists"};

}  // namespace

Json simpdist_to_json(const SimpDist& p) {
  const SSet2& x = p.space();
  Json j;
  j["semiring"] = std::string(semiring_name(p.semiring()));
  j["d"] = p.target().d;
  j["target"] = std::string(target_kind_name(p.target().kind));
  j["space"] = sset_to_json(x);
  for (int dim = p.target().kind == TargetKind::Nerve ? 1 : 0; dim <= 2; ++dim) {
    Json block = Json::object();
    for (std::size_t idx = 0; idx < x.count(dim); ++idx)
      block[x.name(dim, static_cast<int>(idx))] = dist_to_json(p.at(dim, static_cast<int>(idx)), p.target().d);
    j[kDistKeys[dim]] = std::move(block);
  }
  return j;
}

SimpDist simpdist_from_json(const Json& j, std::optional<SemiringKind> semiring_override) {
  const SemiringKind s = semiring_of(j, semiring_override);
  Scenario sc = scenario_from_json(j);
  const SSet2& x = *sc.space;
  std::array<std::map<int, OutcomeDist>, 3> given;
  for (int dim = 0; dim <= 2; ++dim) {
    auto it = j.find(kDistKeys[dim]);
    if (it == j.end()) continue;
    if (dim == 0 && sc.target.kind == TargetKind::Nerve) throw UsageError("vertex_dists: nerve targets have no vertex distributions");
    if (!it->is_object()) throw UsageError(std::string(kDistKeys[dim]) + ": expected an object");
    for (const auto& [name, dj] : it->items()) {
      const std::string where = std::string(kDistKeys[dim]) + "." + name;
      auto idx = x.find(dim, name);
      if (!idx) throw UsageError(where + ": no such generator");
      given[static_cast<std::size_t>(dim)].emplace(*idx, dist_from_json(dj, s, sc.target.d, sc.target.outcome_length(dim), where));
    }
  }
  SimpDist p = complete_from_faces(sc.space, s, sc.target, given);
  auto errors = validate(p);
  if (!errors.empty()) throw PreconditionError("model: " + errors.front());
  return p;
}

// ---------------------------------------------------------------- empirical models

Json empirical_to_json(const EmpiricalModel& e) {
  Json j;
  j["semiring"] = std::string(semiring_name(e.semiring));
  j["d"] = e.d;
  j["measurements"] = e.measurements;
  Json contexts = Json::array();
  Json dists = Json::object();
  for (std::size_t c = 0; c < e.contexts.size(); ++c) {
    std::vector<std::string> names;
    std::string key;
    for (int m : e.contexts[c]) {
      names.push_back(e.measurements[static_cast<std::size_t>(m)]);
      key += (key.empty() ? "" : ",") + names.back();
    }
    contexts.push_back(names);
    dists[key] = dist_to_json(e.dists[c], e.d);
  }
  j["contexts"] = std::move(contexts);
  j["dists"] = std::move(dists);
  return j;
}

EmpiricalModel empirical_from_json(const Json& j, std::optional<SemiringKind> semiring_override) {
  EmpiricalModel e;
  e.semiring = semiring_of(j, semiring_override);
  e.d = j.contains("d") ? as_int(j["d"], "d") : 2;
  if (e.d < 2) throw UsageError("d: must be at least 2");
  const Json& contexts = field(j, "contexts", "empirical model");
  const Json& dists = field(j, "dists", "empirical model");
  if (auto it = j.find("measurements"); it != j.end()) {
    for (std::size_t k = 0; k < it->size(); ++k) e.measurements.push_back(as_string((*it)[k], "measurements[" + std::to_string(k) + "]"));
  }
  auto measurement = [&](const std::string& name, const std::string& where) {
    auto pos = std::find(e.measurements.begin(), e.measurements.end(), name);
    if (pos != e.measurements.end()) return static_cast<int>(pos - e.measurements.begin());
    if (j.contains("measurements")) throw UsageError(where + ": unknown measurement '" + name + "'");
    // Without an explicit list, measurements are ordered by first appearance.
    e.measurements.push_back(name);
    return static_cast<int>(e.measurements.size() - 1);
  };
  if (!contexts.is_array()) throw UsageError("contexts: expected an array");
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const std::string where = "contexts[" + std::to_string(c) + "]";
    if (!contexts[c].is_array() || contexts[c].empty()) throw UsageError(where + ": expected a nonempty array");
    std::vector<int> ctx;
    std::string key;
    for (std::size_t k = 0; k < contexts[c].size(); ++k) {
      std::string name = as_string(contexts[c][k], where + "[" + std::to_string(k) + "]");
      ctx.push_back(measurement(name, where));
      key += (key.empty() ? "" : ",") + name;
    }
    const Json& dj = field(dists, key.c_str(), "dists");
    e.dists.push_back(dist_from_json(dj, e.semiring, e.d, static_cast<int>(ctx.size()), "dists." + key));
    e.contexts.push_back(std::move(ctx));
  }
  return e;
}

// ---------------------------------------------------------------- gluing

GlueInput glue_from_json(const Json& j, std::optional<SemiringKind> semiring_override) {
  GlueInput g;
  g.semiring = semiring_of(j, semiring_override);
  auto read_dist = [&](const char* key) {
    const Json& dj = field(j, key, "glue input");
    if (!dj.is_object()) throw UsageError(std::string(key) + ": expected an object");
    std::map<std::string, Scalar> w;
    for (const auto& [k, v] : dj.items()) w.emplace(k, as_scalar(v, g.semiring, std::string(key) + "." + k));
    auto p = Dist<std::string>::try_from_weights(g.semiring, std::move(w));
    if (!p) throw PreconditionError(std::string(key) + ": weights do not sum to 1");
    return std::move(*p);
  };
  auto read_map = [&](const char* key, const Dist<std::string>& p) {
    const Json& mj = field(j, key, "glue input");
    std::map<std::string, std::string> f;
    for (const auto& [k, v] : mj.items()) f.emplace(k, as_string(v, std::string(key) + "." + k));
    for (const auto& [x, w] : p) {
      if (f.count(x) == 0) throw UsageError(std::string(key) + ": no image for outcome '" + x + "'");
    }
    return f;
  };
  g.p1 = read_dist("p1");
  g.p2 = read_dist("p2");
  g.f1 = read_map("f1", g.p1);
  g.f2 = read_map("f2", g.p2);
  return g;
}

// ---------------------------------------------------------------- maps

Json det_map_to_json(const SSet2& x, const DetMap& phi) {
  Json j = Json::object();
  const int dim = phi.target.kind == TargetKind::Nerve ? 1 : 0;
  for (std::size_t k = 0; k < phi.labels.size(); ++k) j[x.name(dim, static_cast<int>(k))] = phi.labels[k];
  return j;
}

DetMap parse_det_map(const SSet2& x, Target target, const std::string& text) {
  const int dim = target.kind == TargetKind::Nerve ? 1 : 0;
  DetMap phi{target, std::vector<int>(x.count(dim), -1)};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("labeling '" + text + "': expected name=value pairs");
    auto idx = x.find(dim, item.substr(0, eq));
    if (!idx) throw UsageError("labeling '" + text + "': unknown generator '" + item.substr(0, eq) + "'");
    int v = 0;
    try {
      v = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("labeling '" + text + "': bad value in '" + item + "'");
    }
    if (v < 0 || v >= target.d) throw UsageError("labeling '" + text + "': value out of range");
    phi.labels[static_cast<std::size_t>(*idx)] = v;
  }
  for (std::size_t k = 0; k < phi.labels.size(); ++k) {
    if (phi.labels[k] < 0) throw UsageError("labeling '" + text + "': no value for '" + x.name(dim, static_cast<int>(k)) + "'");
  }
  auto errors = check_det_map(x, phi);
  if (!errors.empty()) throw PreconditionError("labeling '" + text + "' is not simplicial: " + errors.front());
  return phi;
}

}  // namespace simctx
