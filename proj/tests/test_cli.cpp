#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fanih/cli.hpp"
#include "fanih/error.hpp"
#include "fanih/io.hpp"
#include "fixtures.hpp"

using namespace fanih;
using fixtures::v;

namespace {

const std::string kCorpus = FANIH_CORPUS_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/fanih_test_" + name;
  std::ofstream(path) << text;
  return path;
}

bool same_lattice(const Fan& a, const Fan& b) {
  if (a.size() != b.size() || a.rays() != b.rays()) return false;
  for (ConeId k = 0; k < a.size(); ++k)
    if (a.cone(k).rays != b.cone(k).rays || a.cone(k).facets != b.cone(k).facets) return false;
  return true;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fan files round trip") {
    for (const char* name : {"line", "quadrant", "sqcone", "cube_facefan", "pyramid4", "prism"}) {
      auto f = read_fan_file(kCorpus + "/" + name + ".fan");
      auto g = parse_fan(dump_fan(*f));
      CHECK(same_lattice(*f, *g));
      CHECK(dump_fan(*g) == dump_fan(*f));
    }
    auto p = read_polytope_file(kCorpus + "/icosahedron.poly");
    CHECK(parse_polytope(dump_polytope(p)).vertices == p.vertices);
    CHECK(p.vertices[0][2] == Rational(-8, 5));
  }

  TEST_CASE("malformed input is a parse error") {
    auto expect_parse = [](const std::string& text) {
      try {
        parse_fan_text(text);
        CHECK(false);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
      }
    };
    expect_parse("{");
    expect_parse(R"({"dim": 2, "rays": [["1","0"]]})");
    expect_parse(R"({"dim": 2, "rays": [["1"]], "cones": [[0]]})");
    expect_parse(R"({"dim": 2, "rays": [["1","x"]], "cones": [[0]]})");
    expect_parse(R"({"dim": 2, "rays": [["1","0"]], "cones": [[3]]})");
    expect_parse(R"({"dim": 2, "rays": [["1","1/0"]], "cones": [[0]]})");
  }

  TEST_CASE("betti command") {
    auto r = run({"betti", kCorpus + "/simplex3.fan"});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "1 1 1 1");
    CHECK(first_line(run({"betti", kCorpus + "/cube_facefan.fan"}).out) == "1 5 5 1");
    CHECK(first_line(run({"betti", kCorpus + "/quadrant.fan"}).out) == "1 0 0");
    auto j = Json::parse(run({"betti", kCorpus + "/sqcone.fan", "--json"}).out);
    CHECK(j["schema"] == 1);
    CHECK(j["betti"] == Json::array({1, 1, 0, 0}));
    CHECK(j["sheaf"]["cones"].back()["generators"] == Json::array({0, 2}));
    CHECK(j["sheaf"]["facets"].size() > 0);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"betti", kCorpus + "/degenerate_not_common_face.fan"}).code == 2);
    CHECK(run({"betti", "/nonexistent.fan"}).code == 2);
    CHECK(run({"betti", temp_file("bad.fan", "{oops")}).code == 2);
    const auto three = temp_file(
        "three.fan", R"({"dim":2,"rays":[["1","0"],["0","1"],["-1","0"],["0","-1"]],"cones":[[0,1],[1,2],[2,3]]})");
    CHECK(run({"betti", three}).code == 3);
    CHECK(run({"verify", three, "--suite", "pd"}).code == 3);
    CHECK(run({"betti", kCorpus + "/line.fan", "--max-degree", "3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    auto low = run({"betti", kCorpus + "/line.fan", "--max-degree", "0"});
    CHECK(low.err.find("warning") != std::string::npos);
  }

  TEST_CASE("hvector command") {
    auto r = run({"hvector", kCorpus + "/pyramid4.poly", "--mode", "oracle"});
    CHECK(r.code == 0);
    CHECK(r.out == "oracle: 1 2 2 1\n");
    auto c = run({"hvector", kCorpus + "/cube.poly", "--mode", "face"});
    CHECK(c.code == 0);
    CHECK(c.out.find("face: 1 5 5 1") != std::string::npos);
    CHECK(c.out.find("agree: yes") != std::string::npos);
    for (const char* mode : {"face", "normal", "oracle"}) {
      auto s = Json::parse(run({"hvector", kCorpus + "/simplex3.poly", "--mode", mode, "--json"}).out);
      CHECK(s["oracle"] == Json::array({1, 1, 1, 1}));
      if (s.contains(mode)) CHECK(s[mode] == Json::array({1, 1, 1, 1}));
    }
  }

  TEST_CASE("verify command") {
    auto r = run({"verify", kCorpus + "/sqcone.fan", "--suite", "dual"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS dual", 0) == 0);
    auto j = Json::parse(run({"verify", kCorpus + "/cube_facefan.fan", "--suite", "pd", "--json"}).out);
    CHECK(j["ok"] == true);
    const auto& rep = j["results"][0]["report"];
    CHECK(rep["betti"] == Json::array({1, 5, 5, 1}));
    CHECK(rep["nondegenerate"] == true);
    CHECK(rep["symmetric"] == true);
    CHECK(rep["pairing_reduced"].size() == 4);
    CHECK(run({"verify", kCorpus + "/degenerate_not_common_face.fan"}).code == 2);
  }

  TEST_CASE("subdivide command") {
    const std::string out = "/tmp/fanih_test_refined.fan";
    std::remove(out.c_str());
    auto r = run({"subdivide", kCorpus + "/sqcone.fan", "--ray", "0,0,1", "--out", out, "--json"});
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["compatibility"]["status"] == "PASS");
    CHECK(j["decomposition"]["kernel_degrees"]["0"] == Json::array({0}));
    CHECK(j["decomposition"]["kernel_degrees"].size() == 2);
    auto refined = read_fan_file(out);
    auto expected = read_fan_file(kCorpus + "/sqcone_subdivided.fan");
    CHECK(refined->maximal_cones().size() == expected->maximal_cones().size());
    CHECK(run({"subdivide", kCorpus + "/sqcone.fan", "--ray", "5,0,1"}).code == 2);
    auto same = Json::parse(run({"subdivide", kCorpus + "/sqcone.fan", "--cone", "1", "--json"}).out);
    CHECK(same["decomposition"]["kernel_degrees"].size() == 1);
  }

  TEST_CASE("output is deterministic") {
    const auto a = run({"verify", kCorpus + "/pyramid4.fan", "--json"});
    const auto b = run({"verify", kCorpus + "/pyramid4.fan", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
