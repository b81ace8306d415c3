#include "tdef/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

using namespace tdef;
using json = nlohmann::json;

namespace {

const std::string kDir = TDEF_WORKSPACES;

std::string ws(const std::string &name) { return kDir + "/" + name + ".json"; }

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_line(const std::string &text, const std::string &line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

// a copy of a fixture with `edit` applied, written to a temporary file
std::string edited(const std::string &name, const std::function<void(json &)> &edit) {
  json doc = json::parse(slurp(ws(name)));
  edit(doc);
  auto path = std::filesystem::temp_directory_path() / ("tdef_" + name + "_" + std::to_string(rand()) + ".json");
  std::ofstream(path) << doc.dump(2);
  return path.string();
}

std::string raw(const std::string &text) {
  auto path = std::filesystem::temp_directory_path() / ("tdef_raw_" + std::to_string(rand()) + ".json");
  std::ofstream(path) << text;
  return path.string();
}

} // namespace

TEST(Cli, WeightedPlaneGolden) {
  Result e = run({"embed", ws("p112")});
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(has_line(e.out, "  x_1 = (1,0,-2)  from summand 0 vertex (1/2,0)"));
  EXPECT_TRUE(has_line(e.out, "  x_2 = (0,0,1)  from summand 1 vertex (0,0)"));
  EXPECT_TRUE(has_line(e.out, "  x_3 = (-1,-1,1)  from summand 1 vertex (-1,-1)"));
  EXPECT_TRUE(has_line(e.out, "  x_4 = (0,1,0)  from ray (0,1)"));
  EXPECT_TRUE(has_line(e.out, "  x_2*x_3 - x_1^2 = 0"));
  EXPECT_TRUE(has_line(e.out, "certificate: mixed dominating yes, saturated yes"));
  Result d = run({"deform", ws("p112")});
  EXPECT_EQ(d.code, 0);
  EXPECT_TRUE(has_line(d.out, "u~ = (-2,2,0)"));
  EXPECT_TRUE(has_line(d.out, "  x_2*x_3 - x_1^2 - l_1*x_4^2 = 0"));
}

TEST(Cli, BlowupGolden) {
  Result e = run({"embed", ws("p112_blowup")});
  EXPECT_EQ(e.code, 0);
  for (auto r : {"x_1 = (0,-1,-1)", "x_2 = (0,0,1)", "x_3 = (0,1,0)", "x_4 = (1,2,2)", "x_5 = (-1,-2,-2)"})
    EXPECT_NE(e.out.find(std::string("  ") + r + "  "), std::string::npos) << r;
  EXPECT_TRUE(has_line(e.out, "  x_2*x_4^2 - x_1*x_5^2 = 0"));
  EXPECT_TRUE(has_line(e.out, "embedding: (y_1, y_2, y_3, y_4) -> (y_1^2*y_4, y_2^2*y_4, y_3, y_1, y_2)"));
  Result d = run({"deform", ws("p112_blowup")});
  EXPECT_TRUE(has_line(d.out, "u~ = (-1,1,0)"));
  EXPECT_TRUE(has_line(d.out, "  x_2*x_4^2 - x_1*x_5^2 - l_1*x_3*x_4*x_5 = 0"));
}

TEST(Cli, MorphismGolden) {
  Result e = run({"embed", ws("p1_to_p112")});
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(has_line(e.out, "morphism: (x_1, x_2) -> (x_1^2, x_2^2, x_1*x_2^3)"));
}

TEST(Cli, CayleyGolden) {
  Result c = run({"cayley", ws("cayley_segments")});
  EXPECT_EQ(c.code, 0);
  for (auto v : {"  (0,-1)  summand 0", "  (2,-1)  summand 0", "  (0,1)  summand 1", "  (1,1)  summand 1"})
    EXPECT_TRUE(has_line(c.out, v)) << v;
  EXPECT_TRUE(has_line(c.out, "  conv((0), (1)) = conv((0), (1)) + conv((0))"));
  EXPECT_TRUE(has_line(c.out, "  conv((1), (2)) = conv((1)) + conv((0), (1))"));
  EXPECT_TRUE(has_line(c.out, "  conv((2), (3)) = conv((1), (2)) + conv((1))"));
}

TEST(Cli, EdgeChainRays) {
  Result e = run({"embed", ws("mirror_edge_chain")});
  EXPECT_EQ(e.code, 0);
  for (auto r : {"(-1,-1,-1,-1)", "(0,-1,-1,-1)", "(0,0,1,0)", "(0,0,0,1)", "(1,0,1,0)", "(1,0,0,1)"})
    EXPECT_NE(e.out.find(std::string(" = ") + r + "  from"), std::string::npos) << r;
}

TEST(Cli, ResolvedMirror) {
  Result t = run({"t1", ws("p2_mirror"), "--oracle"});
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(has_line(t.out, "sweep total: 6"));
  EXPECT_TRUE(has_line(t.out, "reflexive total: 6"));
  std::size_t faces = 0;
  for (std::size_t p = t.out.find("points 1 x rays 2 = 2"); p != std::string::npos;
       p = t.out.find("points 1 x rays 2 = 2", p + 1))
    ++faces;
  EXPECT_EQ(faces, 3u);
  EXPECT_NE(t.out.find(", 0 mismatches"), std::string::npos);

  Result f = run({"fano", ws("p2_mirror"), "--format", "structured"});
  EXPECT_EQ(f.code, 0);
  json doc = json::parse(f.out);
  EXPECT_EQ(doc["report"]["parameters"], 6);
  EXPECT_EQ(doc["report"]["equations"].size(), 2u);
  EXPECT_EQ(doc["report"]["k"], 2);

  Result c = run({"cayley", ws("p2_mirror")});
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(has_line(c.out, "matches the extended fan: yes"));
}

TEST(Cli, GoldenFiles) {
  const std::string golden = kDir + "/../tests/golden/";
  std::vector<std::pair<std::string, std::string>> cases = {
      {"embed", "p112"}, {"deform", "p112"}, {"embed", "p112_blowup"}, {"deform", "p112_blowup"}, {"embed", "p1_to_p112"},
      {"cayley", "cayley_segments"}, {"embed", "mirror_edge_chain"}, {"t1", "p2_mirror"},   {"fano", "p2_mirror"},   {"cayley", "p2_mirror"}};
  for (const auto &[cmd, name] : cases) {
    EXPECT_EQ(run({cmd, ws(name)}).out, slurp(golden + name + "_" + cmd + ".txt")) << cmd << " " << name;
    EXPECT_EQ(run({cmd, ws(name), "--format", "structured"}).out, slurp(golden + name + "_" + cmd + ".json"))
        << cmd << " " << name;
  }
}

TEST(Cli, ByteStable) {
  for (auto args : std::vector<std::vector<std::string>>{{"embed", ws("mirror_edge_chain")}, {"t1", ws("p2_mirror"), "--oracle"}}) {
    Result a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(Cli, StructuredMirrorsText) {
  Result t = run({"deform", ws("p112")});
  Result s = run({"deform", ws("p112"), "--format", "structured"});
  json doc = json::parse(s.out);
  EXPECT_EQ(doc["command"], "deform");
  EXPECT_EQ(doc["exit"], 0);
  for (const auto &eq : doc["report"]["equations"]) EXPECT_TRUE(has_line(t.out, "  " + eq.get<std::string>()));
  EXPECT_EQ(doc["report"]["utilde"], json::parse("[-2,2,0]"));
}

TEST(Cli, Validate) {
  Result ok = run({"validate", ws("p112_blowup")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(has_line(ok.out, "result: valid"));
  EXPECT_TRUE(has_line(ok.out, "Sigma-separation: ok"));

  std::string swapped = edited("p112_blowup", [](json &d) {
    auto &s = d["decomposition"]["cells"][1]["summands"];
    std::swap(s[0], s[1]);
  });
  Result bad = run({"validate", swapped});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("face-compatibility"), std::string::npos) << bad.out;
  EXPECT_TRUE(has_line(bad.out, "result: invalid"));
}

TEST(Cli, ParseFailures) {
  std::string zero = edited("p112", [](json &d) { d["decomposition"]["cells"][0]["cell"][0][0] = "1/0"; });
  Result r = run({"validate", zero});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("[rational]"), std::string::npos) << r.err;

  Result noschema = run({"validate", edited("p112", [](json &d) { d.erase("schema"); })});
  EXPECT_EQ(noschema.code, 2);
  EXPECT_NE(noschema.err.find("[schema]"), std::string::npos);

  Result index = run({"validate", edited("p112", [](json &d) { d["fan"]["cones"][0][1] = 7; })});
  EXPECT_EQ(index.code, 2);
  EXPECT_NE(index.err.find("[index]"), std::string::npos);

  Result garbage = run({"embed", raw("{ not json")});
  EXPECT_EQ(garbage.code, 2);
  EXPECT_NE(garbage.err.find("[json]"), std::string::npos);

  EXPECT_EQ(run({"embed", kDir + "/missing.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate", ws("p112")}).code, 2);
  EXPECT_EQ(run({"embed", ws("p112"), "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"embed"}).code, 2);
  EXPECT_EQ(run({"deform", ws("p1_to_p112")}).code, 2);
}

TEST(Cli, ConditionLabels) {
  // min <u, Q> = -2 on the weighted segment
  Result d = run({"deform", ws("p112"), "--u=-4,0"});
  EXPECT_EQ(d.code, 1);
  EXPECT_NE(d.err.find("[min>=-1]"), std::string::npos) << d.err;

  Result att = run({"deform", ws("p112_blowup"), "--u=1,-1"});
  EXPECT_EQ(att.code, 1);
  EXPECT_NE(att.err.find("[attainment]"), std::string::npos) << att.err;

  Result incl = run({"deform", ws("p112"), "--u=3,-3"});
  EXPECT_EQ(incl.code, 1);
  EXPECT_NE(incl.err.find("[R_{>0}-inclusion]"), std::string::npos) << incl.err;

  std::string star = edited("p112", [](json &d) {
    d["decomposition"]["cells"][0]["summands"] = json::parse(R"([[["1/4","-1/4"]], [["1/4","1/4"], ["-3/4","-3/4"]]])");
  });
  Result s = run({"embed", star});
  EXPECT_EQ(s.code, 1);
  EXPECT_NE(s.err.find("[(*)]"), std::string::npos) << s.err;

  Result notrefl = run({"fano", edited("p2_mirror", [](json &d) {
                      d["reflexive"]["polytope"] = json::parse("[[2,0],[-2,0],[0,1],[0,-1]]");
                    })});
  EXPECT_EQ(notrefl.code, 1);
  EXPECT_NE(notrefl.err.find("[reflexive]"), std::string::npos);

  Result notcomplete = run({"t1", edited("p112", [](json &d) { d["fan"]["cones"].erase(0); })});
  EXPECT_EQ(notcomplete.code, 1);
  EXPECT_NE(notcomplete.err.find("[fan]"), std::string::npos) << notcomplete.err;
}

TEST(Cli, SweepBoxOption) {
  Result t = run({"t1", ws("p2_mirror"), "--sweep-box", "3", "--format", "structured"});
  EXPECT_EQ(t.code, 0);
  json doc = json::parse(t.out);
  EXPECT_EQ(doc["report"]["sweep"]["scale"], 3);
  // 3 * triangle of P^2: 1 + 3 + ... lattice points = 19
  EXPECT_EQ(doc["report"]["sweep"]["degrees"], 19);
  EXPECT_EQ(doc["report"]["sweep"]["total"], 6);
  EXPECT_EQ(run({"t1", ws("p2_mirror"), "--sweep-box", "-1"}).code, 2);
}
