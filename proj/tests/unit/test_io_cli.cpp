#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "generators.hpp"
#include "simctx/cli.hpp"
#include "simctx/io.hpp"
#include "simctx/monoid.hpp"
#include "simctx/render.hpp"

using namespace simctx;
using namespace simtest;

namespace {

std::string example_path(const std::string& name) { return std::string(SIMCTX_EXAMPLES_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(Verb verb, std::vector<std::string> inputs, std::function<void(Command&)> tweak = {}) {
  Command cmd;
  cmd.verb = verb;
  for (auto& i : inputs) cmd.inputs.push_back(example_path(i));
  if (tweak) tweak(cmd);
  std::ostringstream out, err;
  int code = run(cmd, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Io, SimpDistRoundTrip) {
  Rng rng(17);
  auto vs = known_vertices(StandardSpace::ChshCone);
  for (int i = 0; i < 20; ++i) {
    SimpDist p = random_vertex_mixture(rng, vs, 3);
    EXPECT_EQ(simpdist_from_json(simpdist_to_json(p)), p);
  }
  SimpDist b = boolean_support(pr_box({0, 1, 0, 0}));
  EXPECT_EQ(simpdist_from_json(simpdist_to_json(b)), b);
}

TEST(Io, SSetRoundTrip) {
  SSet2 x = prism(build_standard(StandardSpace::TwoEdgeLoop)).space;
  EXPECT_EQ(sset_from_json(sset_to_json(x)), x);
}

TEST(Io, SyntaxErrorsCarryPosition) {
  try {
    parse_json_text("{\n  \"space\": [1,\n}", "bad.json");
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_TRUE(contains(e.what(), "bad.json:3")) << e.what();
  }
}

TEST(Io, FieldErrorsNameThePath) {
  Json j = parse_json_text(R"({"space": "ChshCone", "tri_dists": {"x0,y0": {"00": "1/2", "11": "1/3"}}})");
  try {
    simpdist_from_json(j);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_TRUE(contains(e.what(), "x0,y0")) << e.what();
  }
}

TEST(Render, PrBoxGrid) {
  std::string t = render_box_table(pr_box({0, 0, 0, 1}));
  EXPECT_TRUE(contains(t, "y0"));
  EXPECT_TRUE(contains(t, "x1  0  1/2    0    0  1/2")) << t;
}

TEST(Render, SingleEdgeBox) {
  auto s = shared_standard(StandardSpace::Circle);
  std::string t = render_box_table(identity(s, Target::delta(2), SemiringKind::NonnegRational));
  EXPECT_TRUE(contains(t, "s:\n")) << t;
  EXPECT_TRUE(contains(t, "  0  1  0")) << t;
}

TEST(Render, FloatSuffix) {
  RenderOptions o;
  o.show_float = true;
  EXPECT_EQ(format_scalar(Scalar(SemiringKind::NonnegRational, Rational(1, 3)), o), "1/3 (0.333333)");
  EXPECT_EQ(format_scalar(Scalar(SemiringKind::NonnegRational, Rational(1)), o), "1");
}

TEST(Cli, CheckPrBox) {
  CliRun r = run_cli(Verb::Check, {"chsh_pr.json"});
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_EQ(r.out, "contextual\nCF = 1\n") << r.err;
}

TEST(Cli, InverseCircle) {
  CliRun r = run_cli(Verb::Inverse, {"circle_1224.json"});
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_TRUE(contains(r.out, "0  11/35   2/7")) << r.out;
  EXPECT_TRUE(contains(r.out, "1    2/7  4/35")) << r.out;
}

TEST(Cli, InverseJsonParsesBack) {
  CliRun r = run_cli(Verb::Inverse, {"circle_1224.json"}, [](Command& c) { c.format = OutputFormat::Json; });
  ASSERT_EQ(r.code, exit_code::ok);
  SimpDist p = simpdist_from_json(parse_json_text(r.out));
  EXPECT_EQ(p.weight(1, 0, {0, 0}).value(), Rational(11, 35));
}

TEST(Cli, VerticesCensus) {
  CliRun r = run_cli(Verb::Vertices, {"chsh.json"});
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_TRUE(contains(r.out, "24 vertices: 16 deterministic, 8 strongly contextual")) << r.out;
}

TEST(Cli, VerticesCapExceeded) {
  CliRun r = run_cli(Verb::Vertices, {"chsh.json"}, [](Command& c) { c.cap = 4; });
  EXPECT_EQ(r.code, exit_code::unsupported);
}

TEST(Cli, ContextualFraction) {
  CliRun r = run_cli(Verb::Cf, {"mixed_chsh.json"});
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_TRUE(contains(r.out, "CF = 1/2\n")) << r.out;
}

TEST(Cli, ChshReportFlagsViolations) {
  CliRun r = run_cli(Verb::Chsh, {"chsh_pr.json"});
  EXPECT_TRUE(contains(r.out, "+++-  S = 4  slack = -2  VIOLATED")) << r.out;
}

TEST(Cli, RealizeMatchesStoredModel) {
  CliRun r = run_cli(Verb::Realize, {"chsh_pr_empirical.json"}, [](Command& c) { c.format = OutputFormat::Json; });
  ASSERT_EQ(r.code, exit_code::ok);
  SimpDist realized = simpdist_from_json(parse_json_text(r.out));
  SimpDist stored = simpdist_from_json(load_json(example_path("chsh_pr.json")));
  EXPECT_EQ(realized, stored);
}

TEST(Cli, Homotopy) {
  CliRun r = run_cli(Verb::Homotopy, {"two_edge_loop.json"}, [](Command& c) {
    c.from = "x=0,y=0";
    c.to = "x=1,y=0";
  });
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_TRUE(contains(r.out, "deterministic homotopy: no\ndistribution homotopy: unique\nstrongly contextual: yes\nvertex: yes\nCF = 1\n"))
      << r.out;
}

TEST(Cli, Glue) {
  CliRun r = run_cli(Verb::Glue, {"glue_pair.json"});
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_TRUE(contains(r.out, "b0|w  1/2")) << r.out;
}

TEST(Cli, ErrorsExitNonzero) {
  EXPECT_EQ(run_cli(Verb::Check, {"missing.json"}).code, exit_code::usage);
  CliRun r = run_cli(Verb::Wi, {"circle_1224.json"});
  EXPECT_EQ(r.code, exit_code::unsupported);
  EXPECT_TRUE(contains(r.err, "weak invertibility")) << r.err;
  EXPECT_NE(run_cli(Verb::Mult, {"chsh_pr.json"}).code, exit_code::ok);
}

TEST(Cli, SemiringOverride) {
  CliRun r = run_cli(Verb::Check, {"chsh_pr.json"}, [](Command& c) { c.semiring = SemiringKind::Boolean; });
  EXPECT_EQ(r.code, exit_code::ok);
  EXPECT_TRUE(contains(r.out, "contextual")) << r.out;
}
