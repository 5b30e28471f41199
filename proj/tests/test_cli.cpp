#include "doctest.h"

#include "catzero/cli/cli.hpp"
#include "catzero/cli/io.hpp"
#include "catzero/errors.hpp"
#include "catzero/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace catzero;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CATZERO_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("catzero_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const fs::path& path) { return io::read_file(path); }

}  // namespace

TEST_CASE("bound subcommand") {
  const auto rtree = run({"bound", "--space", "rtree", "--n", "150", "--r", "1", "--diam", "1"});
  CHECK(rtree.code == cli::kExitOk);
  CHECK(rtree.out.find("1.552") != std::string::npos);

  const auto had = run({"bound", "--space", "hadamard", "--m", "1", "--n", "1", "--r", "0", "--diam", "1"});
  CHECK(had.code == cli::kExitOk);
  CHECK(had.out.find("7.47") != std::string::npos);

  const auto js = run({"bound", "--space", "rtree", "--n", "10", "--r-grid", "0:0.5:1", "--diam", "2", "--json"});
  CHECK(js.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["bound"].get<double>() == doctest::Approx(4.219).epsilon(1e-4));

  const auto ledoux = run({"bound", "--space", "ledoux", "--r", "1", "--diam", "1"});
  CHECK(ledoux.code == cli::kExitOk);
  CHECK(ledoux.out.find("1.2130") != std::string::npos);
}

TEST_CASE("bound usage errors") {
  CHECK(run({"bound", "--space", "rtree", "--n", "1", "--r", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--space", "rtree", "--m", "2", "--n", "1", "--r", "1", "--diam", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--space", "hadamard", "--n", "1", "--r", "1", "--diam", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--space", "cube", "--n", "1", "--r", "1", "--diam", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--space", "rtree", "--n", "1", "--diam", "1"}).code == cli::kExitUsage);
  CHECK(run({"bound", "--space", "rtree", "--n", "1", "--r", "-1", "--diam", "1"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"--version"}).code == cli::kExitOk);
  CHECK(run({"bound", "--help"}).code == cli::kExitOk);
}

TEST_CASE("r grids") {
  const auto g = cli::parse_r_grid("0:0.1:1.0");
  CHECK(g.size() == 11);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(cli::parse_r_grid("0:0.3:1").size() == 4);   // 0, .3, .6, .9 (1 is past half a step)
  CHECK(cli::parse_r_grid("0:0.4:1").size() == 4);   // 1 is within half a step of 1.2
  CHECK(cli::parse_r_grid("0.5,1,2") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_THROWS(cli::parse_r_grid("1:0:2"));
  CHECK_THROWS(cli::parse_r_grid("2:1:1"));
  CHECK_THROWS(cli::parse_r_grid("a,b"));
  CHECK_THROWS(cli::parse_r_grid("2,1"));
}

TEST_CASE("seed from the environment") {
  setenv("CATZERO_SEED", "1234", 1);
  CHECK(cli::default_seed() == 1234);
  setenv("CATZERO_SEED", "junk", 1);
  CHECK(cli::default_seed() == cli::kDefaultSeed);
  unsetenv("CATZERO_SEED");
  CHECK(cli::default_seed() == cli::kDefaultSeed);
}

TEST_CASE("simulate writes reports and a manifest") {
  const auto dir = scratch("sim");
  const auto r = run({"simulate", "--measure", (kData / "tripod.json").string(), "--n", "20", "--trials", "2000",
                      "--r-grid", "0:0.1:1.0", "--seed", "5", "--out", dir.string(), "--workers", "2"});
  CHECK(r.code == cli::kExitOk);
  const std::string csv = slurp(dir / "tail_report.csv");
  CHECK(csv.rfind("r,exceed_count,empirical,ci_low,ci_high,bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);

  const auto report = io::tail_report_from_json(nlohmann::json::parse(slurp(dir / "tail_report.json")));
  CHECK(report.rows.size() == 11);
  CHECK(report.seed == 5);
  CHECK(io::tail_report_csv(report) == csv);

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["tool_version"] == cli::kToolVersion);
  CHECK(manifest["inputs"]["measure"]["sha256"] == io::sha256_hex(slurp(kData / "tripod.json")));
}

TEST_CASE("manifests differ only in the timestamp") {
  const auto a = scratch("manifest_a");
  const auto b = scratch("manifest_b");
  const std::vector<std::string> common{"simulate", "--measure", (kData / "line.json").string(), "--n", "5",
                                        "--trials", "500", "--r-grid", "0.1,0.2", "--seed", "8"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(run(args_a).code == cli::kExitOk);
  REQUIRE(run(args_b).code == cli::kExitOk);
  auto ma = nlohmann::json::parse(slurp(a / "manifest.json"));
  auto mb = nlohmann::json::parse(slurp(b / "manifest.json"));
  CHECK(ma.contains("timestamp"));
  ma.erase("timestamp");
  mb.erase("timestamp");
  ma["config"].erase("measure");
  mb["config"].erase("measure");
  CHECK(ma == mb);
  CHECK(slurp(a / "tail_report.csv") == slurp(b / "tail_report.csv"));
}

TEST_CASE("point mass simulation has an all-zero empirical column") {
  const auto dir = scratch("point_mass");
  const auto r = run({"simulate", "--measure", (kData / "point_mass.json").string(), "--n", "10", "--trials", "1000",
                      "--r-grid", "0.1:0.1:1", "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  const auto report = io::tail_report_from_json(nlohmann::json::parse(slurp(dir / "tail_report.json")));
  for (const auto& row : report.rows) CHECK(row.empirical == 0.0);
}

TEST_CASE("malformed input exits with a usage error") {
  const auto dir = scratch("bad");
  const std::string good = slurp(kData / "tripod.json");
  write(dir / "truncated.json", good.substr(0, good.size() / 2));
  const auto t = run({"simulate", "--measure", (dir / "truncated.json").string(), "--n", "5", "--out", dir.string()});
  CHECK(t.code == cli::kExitUsage);
  CHECK(t.err.find("line") != std::string::npos);

  write(dir / "weight.json",
        R"({"schema_version": 1, "space": {"kind": "euclidean", "dimension": 1},
            "atoms": [{"point": [0], "weight": 0.5}, {"point": [1], "weight": "half"}]})");
  const auto w = run({"simulate", "--measure", (dir / "weight.json").string(), "--n", "5", "--out", dir.string()});
  CHECK(w.code == cli::kExitUsage);
  CHECK(w.err.find("atoms[1].weight") != std::string::npos);

  write(dir / "sum.json",
        R"({"schema_version": 1, "space": {"kind": "euclidean", "dimension": 1},
            "atoms": [{"point": [0], "weight": 0.5}, {"point": [1], "weight": 0.6}]})");
  CHECK(run({"simulate", "--measure", (dir / "sum.json").string(), "--n", "5", "--out", dir.string()}).code ==
        cli::kExitUsage);

  write(dir / "version.json", R"({"space": {"kind": "euclidean", "dimension": 1}, "atoms": []})");
  const auto v = run({"simulate", "--measure", (dir / "version.json").string(), "--n", "5", "--out", dir.string()});
  CHECK(v.code == cli::kExitUsage);
  CHECK(v.err.find("schema_version") != std::string::npos);

  CHECK(run({"simulate", "--measure", (dir / "missing.json").string(), "--n", "5"}).code == cli::kExitUsage);
}

TEST_CASE("a violated bound exits with status one") {
  auto report = mc::run_tail_experiment(
      mc::ExperimentConfig<MetricTree>{fixtures::tripod_leaf_measure(), 10, 1000, {0.0, 0.5}, 1, 0.99, 1});
  std::ostringstream err;
  CHECK(cli::report_exit_code(report, err) == cli::kExitOk);
  report.rows[0].theory_bound = 0.5;  // below the certain event r = 0
  CHECK(cli::report_exit_code(report, err) == cli::kExitCheckFailed);
  CHECK(err.str().find("r = 0") != std::string::npos);
}

TEST_CASE("report and measure json round trips") {
  const auto report = mc::run_tail_experiment(
      mc::ExperimentConfig<Hyperboloid>{fixtures::hyperbolic_triangle_measure(), 7, 500, {0.0, 0.1, 0.3}, 2, 0.95, 1});
  const auto text = io::tail_report_to_json(report).dump();
  CHECK(io::tail_report_from_json(nlohmann::json::parse(text)) == report);

  for (const auto& name : {"tripod.json", "point_mass.json", "line.json", "h2_triangle.json"}) {
    const auto measure = io::load_measure_file(kData / name);
    const auto again = io::parse_measure(io::measure_to_json(measure));
    CHECK(io::measure_to_json(again) == io::measure_to_json(measure));
  }
}

TEST_CASE("tree files may list edges in either direction") {
  const auto doc = nlohmann::json::parse(R"({"schema_version": 1,
      "space": {"kind": "tree", "vertices": [0, 1, 2], "edges": [[0, 1, 2.0], [1, 2, 1.0]]},
      "atoms": [{"point": {"edge": [1, 0], "offset": 0.5}, "weight": 0.5},
                {"point": {"edge": [0, 1], "offset": 1.5}, "weight": 0.5}]})");
  const auto nu = std::get<FiniteMeasure<MetricTree>>(io::parse_measure(doc));
  CHECK(nu.size() == 1);
}

TEST_CASE("verify subcommand") {
  const auto cat0 = run({"verify", "--suite", "cat0", "--seed", "7"});
  CHECK(cat0.code == cli::kExitOk);
  CHECK(cat0.out == "cat0: 10000/10000 pass\n");
  CHECK(run({"verify", "--suite", "bogus"}).code == cli::kExitUsage);
  const auto inv = run({"verify", "--suite", "invariants", "--mm-space", (kData / "mm_square.json").string()});
  CHECK(inv.code == cli::kExitOk);
  CHECK(run({"verify", "--suite", "invariants", "--mm-space", (kData / "tripod.json").string()}).code ==
        cli::kExitUsage);
}

TEST_CASE("verify all aggregates every suite") {
  const auto all = run({"verify", "--suite", "all", "--count", "2000"});
  CHECK(all.code == cli::kExitOk);
  for (const auto& name : cli::suite_names()) CHECK(all.out.find(name + ": ") != std::string::npos);
  CHECK(all.out.find("total: ") != std::string::npos);
}

TEST_CASE("sha256") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::format_number(0.1) == "0.10000000000000001");
}
