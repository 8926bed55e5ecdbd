#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmc/cli.hpp"
#include "cmc/curve.hpp"
#include "cmc/error.hpp"
#include "cmc/translation.hpp"

using namespace cmc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "cmc_cli_test" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parameter parsing") {
  CHECK(parse_H("critical", 3) == critical_H(3));
  CHECK(parse_H("0.25", 2) == 0.25);
  CHECK_THROWS_AS(parse_H("-1", 2), Error);
  CHECK_THROWS_AS(parse_H("abc", 2), Error);
  CHECK(parse_d("dH", 3, 1.0 / 3.0) == graph_constant_dH(3, 1.0 / 3.0));
  CHECK_THROWS_AS(parse_d("dH", 3, 2.0 / 3.0), Error);
  CHECK(parse_d("-0.5", 3, 1.0) == -0.5);

  CHECK(parse_range("0.1:1.5:0.1").size() == 15);
  const auto r = parse_range("-1:1:0.25");
  REQUIRE(r.size() == 9);
  CHECK(r.front() == -1.0);
  CHECK(r.back() == doctest::Approx(1.0));
  CHECK(parse_range("0.7").size() == 1);
  CHECK_THROWS_AS(parse_range("1:0:0.1"), Error);
  CHECK_THROWS_AS(parse_range("0:1"), Error);
}

TEST_CASE("classify prints JSON") {
  const Run r = run({"classify", "rotation", "--n", "2", "--H", "1", "--d", "0"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["class"] == "Sphere_K");
  CHECK(j["interval"][1].get<double>() == doctest::Approx(std::log(3.0)));

  const auto cyl = classify_json(Family::Rotation, {2, 0.5, 0.5});
  CHECK(cyl["interval"][1] == "inf");
  CHECK(cyl["asymptote"]["kind"] == "Exponential2D");

  const auto t2 = classify_json(Family::Translation, {3, 1.0 / 3.0, graph_constant_dH(3, 1.0 / 3.0)});
  CHECK(t2["class"] == "CompleteGraph_T2");
}

TEST_CASE("exit codes") {
  CHECK(run({"classify", "rotation", "--n", "2", "--H", "-1"}).code == 2);
  CHECK(run({"classify", "rotation", "--n", "1", "--H", "1"}).code == 2);
  CHECK(run({"classify", "rotation", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"classify", "sideways"}).code == 2);
  // No curve exists for these parameters.
  CHECK(run({"curve", "rotation", "--n", "2", "--H", "0.5", "--d", "1", "--out",
             fresh_dir("none").string()})
            .code == 1);
}

TEST_CASE("curve output is deterministic") {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  const std::vector<std::string> base{"curve", "rotation", "--n", "2", "--H", "1", "--d", "0.1"};
  auto with = [&](const fs::path& d, const std::string& jobs) {
    auto v = base;
    v.insert(v.end(), {"--out", d.string(), "--jobs", jobs});
    return v;
  };
  REQUIRE(run(with(a, "1")).code == 0);
  REQUIRE(run(with(b, "4")).code == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    if (e.path().extension() == ".json") continue;  // carries the output path
    ++files;
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
  CHECK(files >= 2);
}

TEST_CASE("verify reports and fails on tight tolerances") {
  const fs::path d = fresh_dir("verify");
  const Run ok = run({"verify", "rotation", "--n", "3", "--H", "critical", "--d", "0", "--out",
                      d.string(), "--checks", "flux,mc,convexity,asymptote"});
  CHECK(ok.code == 0);
  const Run bad = run({"verify", "rotation", "--n", "3", "--H", "critical", "--d", "0", "--out",
                       d.string(), "--mc-tol", "1e-14"});
  CHECK(bad.code == 1);
}

TEST_CASE("mesh writes OBJ files") {
  const fs::path d = fresh_dir("mesh");
  const Run r = run({"mesh", "translation", "--n", "2", "--H", "critical", "--d", "0",
                     "--rho-max", "3", "--samples", "60", "--out", d.string(), "--outputs", "obj"});
  CHECK(r.code == 0);
  bool found = false;
  for (const auto& e : fs::directory_iterator(d)) found |= e.path().extension() == ".obj";
  CHECK(found);
}

TEST_CASE("mesh for n >= 3 falls back to the generating curve") {
  const fs::path d = fresh_dir("dim");
  const Run r = run({"mesh", "rotation", "--n", "3", "--H", "1", "--d", "0", "--out", d.string()});
  CHECK(r.code == 0);
  bool obj = false, csv = false;
  for (const auto& e : fs::directory_iterator(d)) {
    obj |= e.path().extension() == ".obj";
    csv |= e.path().extension() == ".csv";
  }
  CHECK_FALSE(obj);
  CHECK(csv);
}

TEST_CASE("sweep writes an index") {
  const fs::path d = fresh_dir("sweep");
  const Run r = run({"sweep", "rotation", "--n", "2", "--H", "0.2:1.0:0.2", "--d", "-0.5:0.5:0.5",
                     "--out", d.string(), "--jobs", "3"});
  CHECK(r.code == 0);
  const auto index = nlohmann::json::parse(slurp(d / "index.json"));
  CHECK(index["count"] == 15);
  CHECK(index["errors"] == 0);
  CHECK(fs::exists(d / "point_00014.json"));
  CHECK(index["points"][0]["class"] == "NodoidLike_D");
}

TEST_CASE("output directory from the environment") {
  const fs::path d = fresh_dir("env");
  ::setenv("CMC_OUTPUT_DIR", d.string().c_str(), 1);
  const Run r = run({"classify", "rotation", "--n", "2", "--H", "1", "--d", "0", "--outputs", "json"});
  ::unsetenv("CMC_OUTPUT_DIR");
  CHECK(r.code == 0);
  CHECK_FALSE(fs::is_empty(d));
}
