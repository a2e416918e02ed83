#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bhk/cli.hpp"
#include "bhk/io.hpp"
#include "bhk/random_complex.hpp"

using namespace bhk;
using io::json;

namespace {

std::string data(const std::string& f) { return std::string(BHK_DATA_DIR) + "/" + f; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Oracles are compared by identity, so a decoded complex over a group is a
// different object; compare labels, weights and columns instead.
bool same_complex(const ChainComplex& a, const ChainComplex& b) {
  if (a.lo() != b.lo() || a.hi() != b.hi()) return false;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    auto la = a.module(n)->labels();
    if (la != b.module(n)->labels()) return false;
    for (const auto& x : la)
      if (a.module(n)->label_weight(x) != b.module(n)->label_weight(x)) return false;
  }
  for (int n = a.lo() + 1; n <= a.hi(); ++n)
    for (const auto& x : a.module(n)->labels()) {
      BasisKey k{a.oracle() ? a.oracle()->group().identity() : GroupElement{}, x};
      if (a.d(n).apply(k) != b.d(n).apply(k)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("bundled complex round-trips") {
  auto c = io::decode_complex(io::read_file(data("complex_valid.json")));
  CHECK(c.rank(0) == 2);
  CHECK(c.rank(1) == 2);
  CHECK(c.rank(2) == 1);
  auto j = io::encode(c);
  auto c2 = io::decode_complex(j);
  CHECK(same_complex(c, c2));
  CHECK(io::encode(c2) == j);
}

TEST_CASE("random complexes over Z round-trip") {
  auto oracle = std::make_shared<LengthOracle>(GroupModel::Zn(1));
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    auto c = random_complex(t % 2 ? oracle : nullptr, rng).complex;
    auto j = io::encode(c);
    auto c2 = io::decode_complex(json::parse(j.dump()));
    CHECK(same_complex(c, c2));
    CHECK(io::encode(c2) == j);
  }
}

TEST_CASE("bounding functions, groups and monomial matrices round-trip") {
  for (const char* s : {"0", "3", "2*t+1", "t^2+t", "3*2^t", "(t^2) o (2^t)", "t + 2^t"}) {
    auto f = BoundingFunction::parse(s);
    auto g = io::decode_function(io::encode(f), "f");
    CHECK(g.to_string() == f.to_string());
    CHECK(io::decode_function(json(s), "f").to_string() == f.to_string());
  }
  std::vector<GroupPtr> groups = {GroupModel::Zn(2), GroupModel::free_group(2),
                                  GroupModel::presentation({"a", "b"}, {Rational(1), Rational(2)}, {Word{1, 2, -1, -2}})};
  for (const auto& g : groups) {
    auto g2 = io::decode_group(io::encode(*g), "group");
    CHECK(io::encode(*g2) == io::encode(*g));
  }
  auto G = GroupModel::free_group(2);
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    auto m = random_monomial(*G, 3, rng);
    CHECK(io::decode_monomial(io::encode(m, *G), *G, "m") == m);
  }
}

TEST_CASE("schema errors carry a path") {
  auto bad = [](const json& j) -> std::string {
    try {
      io::decode_complex(j);
    } catch (const io::SchemaError& e) {
      return e.location;
    }
    return "";
  };
  CHECK(bad(io::read_file(data("complex_bad_d2.json"))) == "complex.differentials.2");
  CHECK(bad(json::parse(R"({"degrees": {"0": {"basis": ["p"], "weights": [1]}, "1": {"basis": ["e"], "weights": [1]}},
                            "differentials": {"1": [[1, 3, 0]]}})")) == "complex.differentials.1[0][1]");
  CHECK(bad(json::parse(R"({"degrees": {"0": {"basis": ["p", "q"], "weights": [1]}}})")).rfind("complex.degrees.0", 0) == 0);
  CHECK(bad(json::parse(R"({"differentials": {}})")) != "");
  CHECK_THROWS_AS(io::parse_integer("12x", "n"), io::SchemaError);
  CHECK(io::parse_integer("2^256", "n") == Integer(1) << 256);
}

TEST_CASE("exit codes") {
  CHECK(run({"check-map", data("naturals_id_log.json"), "--trials", "30"}).code == 0);
  CHECK(run({"check-map", data("naturals_id_log.json"), "--direction", "inverse", "--degree", "3", "--coeff-bound",
             "10^6", "--nmax", "2^64"})
            .code == 1);
  CHECK(run({"check-map", data("matrix_map.json"), "--schedule", "t,t^2", "--class", "P", "--trials", "30"}).code == 0);
  CHECK(run({"check-map", data("matrix_map.json"), "--direction", "inverse"}).code == 3);
  CHECK(run({"check-complex", data("complex_valid.json")}).code == 0);
  auto bad = run({"check-complex", data("complex_bad_d2.json")});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("differentials.2") != std::string::npos);
  CHECK(run({"check-complex", data("missing.json")}).code == 3);
  CHECK(run({"pair", data("pair_example.json"), "--trials", "30"}).code == 0);
  CHECK(run({"obstruction", "--weights", "id,log", "--class", "P"}).code == 1);
  CHECK(run({"obstruction", "--weights", "log,id", "--class", "P", "--trials", "30"}).code == 0);
  CHECK(run({"obstruction", "--weights", "id,cube"}).code == 3);
  CHECK(run({"staircase", "--n", "3", "--trials", "4"}).code == 0);
  CHECK(run({"staircase", "--n", "9"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"axiom-suite", "--trials", "notanumber"}).code == 3);
  CHECK(run({"axiom-suite", "--profile", "Fin/free/Bh", "--trials", "20", "--plant-bad-mono"}).code == 1);
  CHECK(run({"axiom-suite", "--help"}).code == 0);
}

TEST_CASE("axiom-suite report is byte-identical across reruns and job counts") {
  std::vector<std::string> args = {"axiom-suite", "--profile", "fin-free-bh", "--trials", "100", "--seed", "7"};
  auto a = run(args), b = run(args);
  auto more = args;
  more.insert(more.end(), {"--jobs", "3"});
  auto c = run(more);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto j = json::parse(a.out);
  CHECK(j["schema"] == io::kReportSchema);
  CHECK(j["schema_version"] == io::kSchemaVersion);
  CHECK(j["exit_code"] == 0);
  CHECK(j["result"]["axioms"].size() == 5);
}

TEST_CASE("--out writes the report and keeps the summary") {
  std::string path = "test_io_cli_report.json";
  auto r = run({"check-complex", data("complex_valid.json"), "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: symbolically-verified") != std::string::npos);
  auto j = io::read_file(path);
  CHECK(j["command"] == "check-complex");
  CHECK(j["result"]["euler_class"] == "1");
  std::remove(path.c_str());
}
