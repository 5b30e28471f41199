#include "catzero/cli/cli.hpp"

#include "catzero/bounds.hpp"
#include "catzero/cli/io.hpp"
#include "catzero/errors.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace catzero::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Raised for flag combinations CLI11 cannot express.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_number_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: \"" + item + "\"");
    }
    if (used != item.size() || !std::isfinite(x)) throw UsageError("not a number: \"" + item + "\"");
    out.push_back(x);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

struct BoundArgs {
  std::string space;
  std::size_t n = 0;
  std::optional<double> r;
  std::string r_grid;
  std::string diam;
  std::optional<int> m;
  bool json = false;
};

int cmd_bound(const BoundArgs& a, bool n_given, std::ostream& out) {
  if (a.m && a.space != "hadamard") throw UsageError("--m applies only to --space hadamard");
  if (a.space == "hadamard" && !a.m) throw UsageError("--space hadamard needs --m");
  if (a.space != "ledoux" && !n_given) throw UsageError("--n is required for --space " + a.space);
  if (a.r.has_value() == !a.r_grid.empty()) throw UsageError("give exactly one of --r and --r-grid");
  const std::vector<double> grid = a.r ? std::vector<double>{*a.r} : parse_r_grid(a.r_grid);
  const std::vector<double> diameters = parse_number_list(a.diam);
  if (a.space != "ledoux" && diameters.size() != 1) throw UsageError("--diam takes one value for this space");

  json rows = json::array();
  std::ostringstream table;
  table << (a.space == "hadamard" ? "r\tbound\tbranch\n" : a.space == "ledoux" ? "r\tdeviation\tconcentration\n" : "r\tbound\n");
  for (double r : grid) {
    json row{{"r", r}};
    table << io::format_number(r);
    if (a.space == "ledoux") {
      const double dev = bounds::ledoux_deviation_bound(r, diameters);
      const double conc = bounds::ledoux_concentration_bound(r, diameters);
      row["deviation"] = dev;
      row["concentration"] = conc;
      table << '\t' << io::format_number(dev) << '\t' << io::format_number(conc);
    } else {
      const bounds::BoundQuery q{a.n, r, diameters.front(), a.m.value_or(1)};
      if (a.space == "rtree") {
        const double b = bounds::rtree_tail_bound(q);
        row["bound"] = b;
        table << '\t' << io::format_number(b);
      } else {
        const auto b = bounds::hadamard_tail_bound(q);
        const char* branch = b.branch == bounds::Branch::kFirst ? "A" : "A_tilde";
        row["bound"] = b.value;
        row["branch"] = branch;
        table << '\t' << io::format_number(b.value) << '\t' << branch;
      }
    }
    table << '\n';
    rows.push_back(std::move(row));
  }

  if (a.json) {
    json doc{{"space", a.space}, {"diameters", diameters}, {"rows", rows}};
    if (a.space != "ledoux") doc["n"] = a.n;
    if (a.m) doc["m"] = *a.m;
    out << doc.dump(2) << '\n';
  } else {
    out << table.str();
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string measure;
  std::size_t n = 1;
  std::size_t trials = 10000;
  std::string r_grid = "0:0.1:1";
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = ".";
  unsigned workers = 0;
  double confidence = 0.99;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const std::string text = io::read_file(a.measure);
  const auto measure = io::load_measure_file(a.measure);
  const auto grid = parse_r_grid(a.r_grid);

  const auto report = std::visit(
      [&](const auto& nu) {
        using S = typename std::decay_t<decltype(nu)>::Space;
        return mc::run_tail_experiment(mc::ExperimentConfig<S>{nu, a.n, a.trials, grid, a.seed, a.confidence, a.workers});
      },
      measure);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_file(dir / "tail_report.csv", io::tail_report_csv(report));
  write_file(dir / "tail_report.json", io::tail_report_to_json(report).dump(2) + "\n");

  const json manifest{
      {"command", "simulate"},
      {"config",
       {{"measure", a.measure},
        {"n", a.n},
        {"trials", a.trials},
        {"r_grid", grid},
        {"confidence", a.confidence},
        {"workers", a.workers}}},
      {"seed", a.seed},
      {"inputs", {{"measure", {{"path", a.measure}, {"sha256", io::sha256_hex(text)}}}}},
      {"tool_version", kToolVersion},
      {"timestamp", utc_timestamp()}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  out << "wrote " << (dir / "tail_report.csv").string() << ", tail_report.json, manifest.json\n";
  const int code = report_exit_code(report, err);
  if (code == kExitOk) out << "bound dominates at all " << report.rows.size() << " grid points\n";
  return code;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 10000;
  unsigned workers = 0;
  std::string mm_space;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto& names = suite_names();
  if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end()) {
    throw UsageError("unknown suite \"" + a.suite + "\"");
  }
  VerifyOptions options;
  options.seed = a.seed;
  options.count = a.count;
  options.workers = a.workers;
  if (!a.mm_space.empty()) options.mm_space = io::load_mm_space_file(a.mm_space);

  const std::vector<std::string> selected = a.suite == "all" ? names : std::vector<std::string>{a.suite};
  bool all_ok = true;
  std::size_t passed = 0;
  std::size_t total = 0;
  for (const auto& name : selected) {
    const auto result = run_suite(name, options);
    out << result.name << ": " << result.passed << '/' << result.total << " pass\n";
    for (const auto& f : result.failures) out << "  failed: " << f << '\n';
    all_ok = all_ok && result.ok();
    passed += result.passed;
    total += result.total;
  }
  if (selected.size() > 1) out << "total: " << passed << '/' << total << " pass\n";
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int report_exit_code(const mc::TailReport& report, std::ostream& err) {
  const auto bad = report.violations();
  if (bad.empty()) return kExitOk;
  err << "bound violated at r =";
  for (double r : bad) err << ' ' << io::format_number(r);
  err << '\n';
  return kExitCheckFailed;
}

std::vector<double> parse_r_grid(const std::string& spec) {
  if (spec.find(':') == std::string::npos) {
    auto list = parse_number_list(spec);
    mc::validate_r_grid(list);
    return list;
  }
  std::vector<double> parts;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(parse_number_list(item).front());
  if (parts.size() != 3) throw UsageError("r-grid must be start:step:stop");
  const double start = parts[0];
  const double step = parts[1];
  const double stop = parts[2];
  if (!(step > 0.0) || stop < start) throw UsageError("r-grid needs step > 0 and stop >= start");
  const double span = std::floor((stop - start) / step + 0.5);
  if (span > 1e6) throw UsageError("r-grid has too many points");
  std::vector<double> grid;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(span); ++k) grid.push_back(start + static_cast<double>(k) * step);
  mc::validate_r_grid(grid);
  return grid;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("CATZERO_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return *end == '\0' ? v : kDefaultSeed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concentration bounds for inductive means in CAT(0) spaces", "catzero"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate tail bounds on an r grid");
  bound_cmd->add_option("--space", bound.space, "rtree, hadamard or ledoux")
      ->required()
      ->check(CLI::IsMember({"rtree", "hadamard", "ledoux"}));
  auto* n_opt = bound_cmd->add_option("--n", bound.n, "number of samples")->check(CLI::PositiveNumber);
  bound_cmd->add_option("--r", bound.r, "single radius");
  bound_cmd->add_option("--r-grid", bound.r_grid, "start:step:stop or a comma list");
  bound_cmd->add_option("--diam", bound.diam, "support diameter (ledoux: comma list of factor diameters)")->required();
  bound_cmd->add_option("--m", bound.m, "manifold dimension (hadamard only)")->check(CLI::PositiveNumber);
  bound_cmd->add_flag("--json", bound.json, "machine-readable output");

  SimulateArgs sim;
  sim.seed = default_seed();
  auto* sim_cmd = app.add_subcommand("simulate", "Estimate tail probabilities of the inductive mean");
  sim_cmd->add_option("--measure", sim.measure, "measure JSON file")->required();
  sim_cmd->add_option("--n", sim.n, "samples per inductive mean")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--trials", sim.trials, "Monte Carlo trials")->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--r-grid", sim.r_grid, "start:step:stop or a comma list")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "base seed (default: CATZERO_SEED or 42)");
  sim_cmd->add_option("--out", sim.out_dir, "output directory")->capture_default_str();
  sim_cmd->add_option("--workers", sim.workers, "worker threads, 0 = all cores")->capture_default_str();
  sim_cmd->add_option("--confidence", sim.confidence, "confidence level")->capture_default_str();

  VerifyArgs ver;
  ver.seed = default_seed();
  auto* ver_cmd = app.add_subcommand("verify", "Run the invariant suites");
  ver_cmd->add_option("--suite", ver.suite, "all or one suite name")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "base seed (default: CATZERO_SEED or 42)");
  ver_cmd->add_option("--count", ver.count, "instances for the cat0 and convexity suites")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ver_cmd->add_option("--workers", ver.workers, "worker threads, 0 = all cores");
  ver_cmd->add_option("--mm-space", ver.mm_space, "extra mm-space JSON file for the invariants suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bound_cmd) return cmd_bound(bound, n_opt->count() > 0, out);
    if (*sim_cmd) return cmd_simulate(sim, out, err);
    return cmd_verify(ver, out);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {  // usage, validation and point errors
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace catzero::cli
