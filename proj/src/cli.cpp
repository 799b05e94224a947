#include "simctx/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "simctx/errors.hpp"
#include "simctx/io.hpp"
#include "simctx/monoid.hpp"
#include "simctx/polytope.hpp"
#include "simctx/render.hpp"

namespace simctx {

namespace {

const std::vector<std::pair<std::string, Verb>>& verb_table() {
  static const std::vector<std::pair<std::string, Verb>> table{
      {"validate", Verb::Validate}, {"check", Verb::Check},     {"cf", Verb::Cf},           {"strong", Verb::Strong},
      {"wi", Verb::Wi},             {"if", Verb::If},           {"isupp", Verb::Isupp},     {"mult", Verb::Mult},
      {"inverse", Verb::Inverse},   {"vertices", Verb::Vertices}, {"chsh", Verb::Chsh},     {"realize", Verb::Realize},
      {"homotopy", Verb::Homotopy}, {"glue", Verb::Glue}};
  return table;
}

std::size_t arity(Verb v) { return v == Verb::Mult ? 2 : 1; }

class Session {
 public:
  Session(const Command& cmd, std::ostream& out) : cmd_(cmd), out_(out), opts_{cmd.show_float} {}

  int dispatch() {
    switch (cmd_.verb) {
      case Verb::Validate: return validate_cmd();
      case Verb::Check: return check();
      case Verb::Cf: return cf();
      case Verb::Strong: return strong();
      case Verb::Wi: return wi();
      case Verb::If: return if_cmd();
      case Verb::Isupp: return isupp_cmd();
      case Verb::Mult: return mult_cmd();
      case Verb::Inverse: return inverse_cmd();
      case Verb::Vertices: return vertices();
      case Verb::Chsh: return chsh();
      case Verb::Realize: return realize_cmd();
      case Verb::Homotopy: return homotopy();
      case Verb::Glue: return glue();
    }
    return exit_code::usage;
  }

 private:
  bool json() const { return cmd_.format == OutputFormat::Json; }
  std::string fmt(const Rational& r) const { return format_scalar(Scalar(SemiringKind::RealField, r), opts_); }
  static std::string frac(const Rational& r) { return rational_to_string(r); }

  SimpDist model(std::size_t k = 0) const { return simpdist_from_json(load_json(cmd_.inputs.at(k)), cmd_.semiring); }

  void emit(const Json& j) {
    if (cmd_.out) {
      std::ofstream f(*cmd_.out);
      if (!f) throw UsageError("cannot write " + *cmd_.out);
      f << j.dump(2) << '\n';
      out_ << "wrote " << *cmd_.out << '\n';
    } else {
      out_ << j.dump(2) << '\n';
    }
  }

  void emit_model(const SimpDist& p) {
    if (json() || cmd_.out) {
      emit(simpdist_to_json(p));
    } else {
      out_ << render_box_table(p, opts_);
    }
  }

  Json witness_json(const SSet2& x, const Dist<DetMap>& w) const {
    Json arr = Json::array();
    for (const auto& [phi, s] : w) arr.push_back({{"weight", s.to_string()}, {"map", det_map_to_json(x, phi)}});
    return arr;
  }

  void print_witness(const SSet2& x, const Dist<DetMap>& w) {
    for (const auto& [phi, s] : w) out_ << "  " << format_scalar(s, opts_) << "  " << det_map_to_string(x, phi) << '\n';
  }

  int validate_cmd() {
    Json j = load_json(cmd_.inputs[0]);
    std::vector<std::string> errors;
    std::string kind = "model";
    try {
      if (j.contains("contexts")) {
        kind = "empirical model";
        errors = empirical_from_json(j, cmd_.semiring).validate();
      } else if (j.contains("space") && !j.contains("edge_dists") && !j.contains("tri_dists") && !j.contains("vertex_dists")) {
        kind = "scenario";
        scenario_from_json(j);
      } else {
        SimpDist p = model();
        errors = validate(p);
      }
    } catch (const PreconditionError& e) {
      errors.push_back(e.what());
    }
    if (json()) {
      emit({{"kind", kind}, {"valid", errors.empty()}, {"errors", errors}});
    } else if (errors.empty()) {
      out_ << "ok (" << kind << ")\n";
    } else {
      for (const auto& e : errors) out_ << "error: " << e << '\n';
    }
    return errors.empty() ? exit_code::ok : exit_code::invalid;
  }

  int check() {
    SimpDist p = model();
    Noncontextuality nc = is_noncontextual(p);
    std::optional<Rational> frac_value;
    if (p.semiring() == SemiringKind::NonnegRational) frac_value = contextual_fraction(p).value;
    if (json()) {
      Json j{{"semiring", std::string(semiring_name(p.semiring()))}, {"contextual", !nc.noncontextual}};
      if (frac_value) j["cf"] = frac(*frac_value);
      if (nc.witness) j["witness"] = witness_json(p.space(), *nc.witness);
      emit(j);
      return exit_code::ok;
    }
    out_ << (nc.noncontextual ? "noncontextual" : "contextual");
    if (p.semiring() == SemiringKind::RealField) out_ << " (signed decompositions allowed)";
    out_ << '\n';
    if (frac_value) out_ << "CF = " << fmt(*frac_value) << '\n';
    if (nc.witness) {
      out_ << "witness:\n";
      print_witness(p.space(), *nc.witness);
    }
    return exit_code::ok;
  }

  int cf() {
    SimpDist p = model();
    ContextualFraction r = contextual_fraction(p);
    if (json()) {
      Json j{{"cf", frac(r.value)}, {"ncf", frac(1 - r.value)}};
      if (r.noncontextual_part) j["noncontextual_part"] = witness_json(p.space(), *r.noncontextual_part);
      if (r.remainder) j["remainder"] = simpdist_to_json(*r.remainder);
      emit(j);
      return exit_code::ok;
    }
    out_ << "CF = " << fmt(r.value) << '\n' << "NCF = " << fmt(1 - r.value) << '\n';
    if (r.noncontextual_part) {
      out_ << "noncontextual part:\n";
      print_witness(p.space(), *r.noncontextual_part);
    }
    if (r.remainder && r.value < 1) out_ << "remainder:\n" << render_box_table(*r.remainder, opts_);
    return exit_code::ok;
  }

  int strong() {
    SimpDist p = model();
    const auto supp = support(p);
    if (json()) {
      Json maps = Json::array();
      for (const auto& phi : supp) maps.push_back(det_map_to_json(p.space(), phi));
      emit({{"strongly_contextual", supp.empty()}, {"support", maps}});
      return exit_code::ok;
    }
    out_ << (supp.empty() ? "strongly contextual" : "not strongly contextual") << '\n';
    out_ << "support: " << supp.size() << " map" << (supp.size() == 1 ? "" : "s") << '\n';
    for (const auto& phi : supp) out_ << "  " << det_map_to_string(p.space(), phi) << '\n';
    return exit_code::ok;
  }

  int wi() {
    SimpDist p = model();
    WeakInvertibility w = is_weakly_invertible(p);
    if (json()) {
      Json j{{"weakly_invertible", w.invertible}};
      if (w.witness) j["witness"] = witness_json(p.space(), *w.witness);
      emit(j);
      return exit_code::ok;
    }
    out_ << (w.invertible ? "weakly invertible" : "not weakly invertible") << '\n';
    if (w.witness) {
      out_ << "units:\n";
      print_witness(p.space(), *w.witness);
    }
    return exit_code::ok;
  }

  int if_cmd() {
    SimpDist p = model();
    Rational v = invertible_fraction(p);
    if (json()) {
      emit({{"if", frac(v)}, {"nif", frac(1 - v)}});
    } else {
      out_ << "IF = " << fmt(v) << '\n';
    }
    return exit_code::ok;
  }

  int isupp_cmd() {
    SimpDist p = model();
    MonoidContext ctx = MonoidContext::of(p);
    const auto members = isupp(ctx, p);
    if (json()) {
      Json maps = Json::array();
      for (const auto& phi : members) maps.push_back(det_map_to_json(p.space(), phi));
      emit({{"strongly_noninvertible", members.empty()}, {"isupp", maps}});
      return exit_code::ok;
    }
    if (members.empty()) out_ << "invertible support is empty (strongly non-invertible)\n";
    for (const auto& phi : members) out_ << "  " << det_map_to_string(p.space(), phi) << '\n';
    return exit_code::ok;
  }

  int mult_cmd() {
    SimpDist p = model(0);
    SimpDist q = model(1);
    if (!(p.space() == q.space()) || p.target() != q.target())
      throw UsageError("the two models live on different scenarios");
    // Re-home q on p's space object so the product sees one monoid.
    SimpDist q2(p.shared_space(), q.semiring(), q.target(), q.table());
    emit_model(mult(p, q2));
    return exit_code::ok;
  }

  int inverse_cmd() {
    SimpDist p = model();
    auto inv = inverse(p);
    if (!inv) {
      if (json()) {
        emit({{"invertible", false}});
      } else {
        out_ << "not invertible\n";
      }
      return exit_code::ok;
    }
    emit_model(*inv);
    return exit_code::ok;
  }

  int vertices() {
    Scenario sc = scenario_from_json(load_json(cmd_.inputs[0]));
    if (cmd_.semiring && *cmd_.semiring != SemiringKind::NonnegRational)
      throw Unsupported("vertex enumeration needs nonnegative rational weights");
    VertexOptions opt;
    opt.cap = cmd_.cap;
    const auto verts = enumerate_vertices(sc.space, sc.target, SemiringKind::NonnegRational, opt);
    std::size_t det = 0, sc_count = 0;
    for (const auto& v : verts) {
      det += v.is_deterministic ? 1 : 0;
      sc_count += v.is_strongly_contextual ? 1 : 0;
    }
    if (json()) {
      Json arr = Json::array();
      for (const auto& v : verts) {
        arr.push_back({{"deterministic", v.is_deterministic},
                       {"strongly_contextual", v.is_strongly_contextual},
                       {"cf", frac(v.contextual_fraction)},
                       {"model", simpdist_to_json(v.coordinates)}});
      }
      emit({{"count", verts.size()}, {"deterministic", det}, {"strongly_contextual", sc_count}, {"vertices", arr}});
      return exit_code::ok;
    }
    const SSet2& x = *sc.space;
    std::size_t k = 0;
    for (const auto& v : verts) {
      out_ << ++k << "  " << (v.is_deterministic ? "deterministic" : "contextual   ") << "  SC="
           << (v.is_strongly_contextual ? "yes" : "no ") << "  CF=" << fmt(v.contextual_fraction) << " ";
      const int top = x.num_triangles() > 0 ? 2 : (x.num_edges() > 0 ? 1 : 0);
      for (std::size_t idx = 0; idx < x.count(top); ++idx)
        out_ << "  " << x.name(top, static_cast<int>(idx)) << "=" << render_flat(v.coordinates.at(top, static_cast<int>(idx)), sc.target.d, opts_);
      out_ << '\n';
    }
    out_ << verts.size() << " vertices: " << det << " deterministic, " << sc_count << " strongly contextual\n";
    return exit_code::ok;
  }

  int chsh() {
    SimpDist p = model();
    ChshReport r = chsh_check(p);
    if (json()) {
      Json corr = Json::array(), ineq = Json::array();
      for (const auto& c : r.correlators) corr.push_back(frac(c));
      for (std::size_t k = 0; k < 8; ++k)
        ineq.push_back({{"signs", r.signs[k]}, {"value", frac(r.values[k])}, {"slack", frac(2 - abs(r.values[k]))}, {"satisfied", r.satisfied[k]}});
      emit({{"correlators", corr}, {"inequalities", ineq}, {"all_satisfied", r.all_satisfied}});
      return exit_code::ok;
    }
    out_ << "correlators:\n";
    for (int t = 0; t < 4; ++t) out_ << "  <" << p.space().name(2, t) << "> = " << fmt(r.correlators[static_cast<std::size_t>(t)]) << '\n';
    out_ << "inequalities |S| <= 2:\n";
    for (std::size_t k = 0; k < 8; ++k) {
      std::string signs;
      for (int s : r.signs[k]) signs += s > 0 ? '+' : '-';
      out_ << "  " << signs << "  S = " << fmt(r.values[k]) << "  slack = " << fmt(2 - abs(r.values[k]))
           << (r.satisfied[k] ? "" : "  VIOLATED") << '\n';
    }
    out_ << (r.all_satisfied ? "all satisfied" : "violated") << '\n';
    return exit_code::ok;
  }

  int realize_cmd() {
    EmpiricalModel e = empirical_from_json(load_json(cmd_.inputs[0]), cmd_.semiring);
    SimpDist p = realize(e);
    if (json() || cmd_.out) {
      emit(simpdist_to_json(p));
    } else {
      out_ << render_box_table(p, opts_);
    }
    return exit_code::ok;
  }

  int homotopy() {
    Scenario sc = scenario_from_json(load_json(cmd_.inputs[0]));
    if (sc.target.kind != TargetKind::Nerve) throw UsageError("homotopy needs a nerve target");
    if (cmd_.from.empty() || cmd_.to.empty()) throw UsageError("homotopy needs --from and --to labelings");
    const SSet2& x = *sc.space;
    DetMap phi0 = parse_det_map(x, sc.target, cmd_.from);
    DetMap phi1 = parse_det_map(x, sc.target, cmd_.to);
    const bool det = homotopy_classes(phi0, phi1, x);
    HomotopyResult h = distribution_homotopy(phi0, phi1, x);
    const char* kind = h.kind == HomotopyResult::Kind::None ? "none" : h.kind == HomotopyResult::Kind::Unique ? "unique" : "non-unique";
    std::optional<bool> strong_flag, vertex_flag;
    std::optional<Rational> cf_value;
    if (h.kind == HomotopyResult::Kind::Unique) {
      strong_flag = is_strongly_contextual(*h.solution);
      vertex_flag = is_vertex(*h.solution);
      cf_value = contextual_fraction(*h.solution).value;
    }
    if (json()) {
      Json j{{"homotopic", det}, {"distribution_homotopy", kind}};
      if (h.solution) j["solution"] = simpdist_to_json(*h.solution);
      if (h.other) j["other"] = simpdist_to_json(*h.other);
      if (strong_flag) {
        j["strongly_contextual"] = *strong_flag;
        j["vertex"] = *vertex_flag;
        j["cf"] = frac(*cf_value);
      }
      emit(j);
      return exit_code::ok;
    }
    out_ << "deterministic homotopy: " << (det ? "yes" : "no") << '\n';
    out_ << "distribution homotopy: " << kind << '\n';
    if (strong_flag) {
      out_ << "strongly contextual: " << (*strong_flag ? "yes" : "no") << '\n';
      out_ << "vertex: " << (*vertex_flag ? "yes" : "no") << '\n';
      out_ << "CF = " << fmt(*cf_value) << '\n';
    }
    if (h.solution) out_ << render_box_table(*h.solution, opts_);
    if (h.other) out_ << "another solution:\n" << render_box_table(*h.other, opts_);
    return exit_code::ok;
  }

  int glue() {
    GlueInput g = glue_from_json(load_json(cmd_.inputs[0]), cmd_.semiring);
    auto f1 = [&](const std::string& s) { return g.f1.at(s); };
    auto f2 = [&](const std::string& s) { return g.f2.at(s); };
    auto joint = glue_pullback(g.p1, g.p2, f1, f2);
    Json j = Json::object();
    for (const auto& [key, w] : joint) j[key.first + "|" + key.second] = w.to_string();
    if (json() || cmd_.out) {
      emit({{"semiring", std::string(semiring_name(g.semiring))}, {"joint", j}});
    } else {
      for (const auto& [key, w] : joint) out_ << key.first << "|" << key.second << "  " << format_scalar(w, opts_) << '\n';
    }
    return exit_code::ok;
  }

  const Command& cmd_;
  std::ostream& out_;
  RenderOptions opts_;
};

}  // namespace

Verb parse_verb(const std::string& name) {
  for (const auto& [n, v] : verb_table()) {
    if (n == name) return v;
  }
  throw UsageError("unknown command '" + name + "'");
}

const std::vector<std::string>& verb_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, verb] : verb_table()) v.push_back(n);
    return v;
  }();
  return names;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.inputs.size() != arity(cmd.verb)) {
    err << "error: expected " << arity(cmd.verb) << " input file" << (arity(cmd.verb) == 1 ? "" : "s") << '\n';
    return exit_code::usage;
  }
  try {
    Session s(cmd, out);
    return s.dispatch();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << '\n';
    return exit_code::unsupported;
  } catch (const ContractViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::invalid;
  }
}

}  // namespace simctx
