#include "spikegue/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "spikegue/errors.hpp"
#include "spikegue/io.hpp"
#include "spikegue/kernels.hpp"
#include "spikegue/mc.hpp"
#include "spikegue/measure.hpp"
#include "spikegue/stats.hpp"
#include "spikegue/verify.hpp"

namespace spikegue {

namespace {

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw config_error("not a number: " + text);
  }
  if (used != text.size()) throw config_error("not a number: " + text);
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Comma list of reals; the empty string is the empty list (k = 0).
std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  if (text.empty()) return values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_double(part));
  return values;
}

std::string join_list(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += format_double(values[i]);
  }
  return s;
}

// xmin:xmax:steps -> steps evenly spaced points, endpoints included.
std::vector<double> parse_range(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3) throw config_error("grid must be xmin:xmax:steps, got: " + text);
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  long steps = 0;
  std::size_t used = 0;
  try {
    steps = std::stol(parts[2], &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != parts[2].size()) throw config_error("grid steps must be an integer, got: " + parts[2]);
  if (steps < 1) throw config_error("empty grid: steps must be at least 1");
  std::vector<double> grid(steps);
  for (long i = 0; i < steps; ++i) {
    grid[i] = steps == 1 ? lo : lo + static_cast<double>(i) * (hi - lo) / (steps - 1);
  }
  return grid;
}

// Either grammar: a range when the text contains ':', a comma list otherwise.
std::vector<double> parse_point_list(const std::string& text) {
  if (text.find(':') != std::string::npos) return parse_range(text);
  const std::vector<double> points = parse_double_list(text);
  if (points.empty()) throw config_error("empty grid");
  return points;
}

std::vector<Observable> parse_observables(const std::string& text, int N) {
  std::vector<Observable> observables;
  for (const std::string& part : split(text, ',')) {
    const std::vector<std::string> idx = split(part, ':');
    std::size_t used_j = 0, used_l = 0;
    Observable obs;
    if (idx.size() == 2) {
      try {
        obs.j = std::stoi(idx[0], &used_j);
        obs.l = std::stoi(idx[1], &used_l);
      } catch (const std::exception&) {
        used_j = std::string::npos;
      }
    }
    if (idx.size() != 2 || used_j != idx[0].size() || used_l != idx[1].size()) {
      throw config_error("observable must be j:l, got: " + part);
    }
    if (obs.j < 1 || obs.j > N || obs.l < 1 || obs.l > N) {
      throw config_error("observable indices must lie in [1, N], got: " + part);
    }
    observables.push_back(obs);
  }
  return observables;
}

void require_distinct(const std::vector<double>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] == a[j]) throw config_error("distinct-spikes required");
    }
  }
}

// ---- config files: TOML via the stock reader, JSON by content sniffing ----

std::string render_json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_structured()) throw config_error("config file: nested values are not supported");
  return v.dump();
}

class FlexibleConfig : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::stringstream buffer;
    buffer << input.rdbuf();
    const std::string text = buffer.str();
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::stringstream rewound(text);
      return CLI::ConfigBase::from_config(rewound);
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw config_error(std::string("config file: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      CLI::ConfigItem item;
      item.name = it.key();
      if (it.value().is_array()) {
        for (const nlohmann::json& v : it.value()) item.inputs.push_back(render_json_scalar(v));
      } else {
        item.inputs.push_back(render_json_scalar(it.value()));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

// Merges a config file into a parsed subcommand: flat keys name long options,
// values apply only where no explicit flag was given, unknown keys reject.
// (Merging by hand because the stock config machinery binds to the root app.)
void merge_config(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file: " + path);
  const FlexibleConfig reader;
  for (const CLI::ConfigItem& item : reader.from_config(in)) {
    if (!item.parents.empty()) {
      throw config_error("config file: sections are not supported, key: " + item.fullname());
    }
    if (item.name == "config") throw config_error("config file: config cannot nest");
    CLI::Option* op = cmd->get_option_no_throw("--" + item.name);
    if (op == nullptr) throw config_error("config file: unknown key: " + item.name);
    if (op->count() > 0) continue;  // explicit flag wins
    for (const std::string& input : item.inputs) op->add_result(input);
    op->run_callback();
  }
}

void add_config_flag(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path, "TOML or JSON file; explicit flags win over file values");
}

// ---- simulate ----

struct SimulateFlags {
  int n = 400;
  int k = 2;
  std::string a = "-1,0";
  int trials = 2000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string observables;
  int workers = 1;
  bool full_scale = false;
  std::string config;
};

std::string observable_label(int k, const Observable& obs) {
  const std::string scale = obs.l > k ? "N" : "N^{1/3}";
  return scale + "|x_{" + std::to_string(obs.j) + "," + std::to_string(obs.l) + "}|^2";
}

void run_simulate(const SimulateFlags& f, bool k_given) {
  ExperimentConfig config;
  config.spike.N = f.n;
  config.spike.a = parse_double_list(f.a);
  if (k_given && f.k != config.spike.k()) {
    throw config_error("k must equal the number of spike offsets in a");
  }
  const int k = config.spike.k();
  config.trials = f.trials;
  config.seed = f.seed;
  config.workers = f.workers;
  if (f.observables.empty()) {
    config.observables.clear();
    for (int l = 1; l <= k + 1 && l <= f.n; ++l) config.observables.push_back({1, l});
  } else {
    config.observables = parse_observables(f.observables, f.n);
  }

  const ExperimentResult result = run_trials(config);

  namespace fs = std::filesystem;
  const fs::path dir(f.out_dir);
  try {
    fs::create_directories(dir);
  } catch (const fs::filesystem_error& e) {
    throw config_error(std::string("cannot create out-dir: ") + e.what());
  }

  write_records_csv(result, (dir / "records.csv").string());
  write_records_jsonl(result, (dir / "records.jsonl").string());
  write_summary_json(result, (dir / "summary.json").string());

  std::vector<std::string> kde_files;
  std::vector<std::string> labels;
  for (std::size_t o = 0; o < config.observables.size(); ++o) {
    const Observable obs = config.observables[o];
    const std::vector<double> column = result.column(static_cast<int>(o));
    if (column.size() < 2) continue;  // a density estimate needs spread
    const std::string stem = std::to_string(obs.j) + "_" + std::to_string(obs.l);
    write_kde_csv(config, kde_curve(column), (dir / ("kde_" + stem + ".csv")).string());
    kde_files.push_back("kde_" + stem + ".csv");
    labels.push_back(observable_label(k, obs));
    if (obs.l > k) {
      write_tail_csv(config, tail_curve(column, 0.5, 3.0, 0.05),
                     (dir / ("tail_" + stem + ".csv")).string());
    }
  }
  if (!kde_files.empty()) {
    write_density_plot_script(config, kde_files, labels, (dir / "plot_density.gp").string());
  }

  std::cout << "simulate " << config_echo(config) << "\n";
  std::cout << "records: " << (dir / "records.csv").string() << " ("
            << result.records.size() * config.observables.size() << " rows)\n";
  if (!kde_files.empty()) {
    std::cout << "curves: " << kde_files.size() << " density file(s), plot script "
              << (dir / "plot_density.gp").string() << "\n";
  }
  std::cout << "summary: " << (dir / "summary.json").string() << "\n";
}

// ---- kernel ----

struct KernelFlags {
  int m1 = 0;
  int m2 = 0;
  std::string a;
  std::string grid;
  int finite_n = 0;  // 0 = evaluate the limit kernel
  int quad_points = 48;
  std::string out;  // empty = stdout
  std::string config;
};

void run_kernel(const KernelFlags& f) {
  const std::vector<double> a = parse_double_list(f.a);
  require_distinct(a);
  const int k = static_cast<int>(a.size());
  if (f.m1 < 0 || f.m1 > k || f.m2 < 0 || f.m2 > k) {
    throw config_error("m1 and m2 must lie in [0, len(a)]");
  }
  const std::vector<double> grid = parse_range(f.grid);

  std::ostringstream echo;
  echo << "kernel m1=" << f.m1 << " m2=" << f.m2 << " a=" << join_list(a) << " grid=" << f.grid
       << " quad_points=" << f.quad_points;
  if (f.finite_n > 0) echo << " finite_n=" << f.finite_n;

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw config_error("cannot open for writing: " + f.out);
    out = &file;
  }
  *out << "# " << echo.str() << "\n";
  *out << "x,y,value,est_error\n";
  for (double x : grid) {
    for (double y : grid) {
      const KernelValue v =
          f.finite_n > 0
              ? scaled_gue_kernel(f.finite_n, k, a, k - f.m1, k - f.m2, x, y, f.quad_points)
              : extended_airy_kernel(f.m1, f.m2, a, x, y, f.quad_points);
      *out << format_double(x) << "," << format_double(y) << "," << format_double(v.value) << ","
           << format_double(v.est_error) << "\n";
    }
  }
}

// ---- measure ----

struct MeasureFlags {
  int n = 256;
  int k = 1;
  std::string a = "0";
  int trials = 2000;
  std::uint64_t seed = 1;
  std::string x_grid = "0";
  int workers = 1;
  bool no_mc = false;
  std::string out;  // empty = stdout
  std::string config;
};

void run_measure(const MeasureFlags& f, bool k_given) {
  SpikeConfig cfg;
  cfg.N = f.n;
  cfg.a = parse_double_list(f.a);
  if (k_given && f.k != cfg.k()) {
    throw config_error("k must equal the number of spike offsets in a");
  }
  const std::vector<double> grid = parse_point_list(f.x_grid);

  std::ostringstream echo;
  echo << "measure N=" << f.n << " k=" << cfg.k() << " a=" << join_list(cfg.a);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw config_error("cannot open for writing: " + f.out);
    out = &file;
  }

  if (f.no_mc) {
    echo << " x_grid=" << f.x_grid << " closed_only=1";
    write_closed_moment_csv(f.n, grid, echo.str(), *out);
    return;
  }
  echo << " trials=" << f.trials << " seed=" << f.seed << " x_grid=" << f.x_grid;
  const std::vector<MeasureMomentRow> rows =
      mc_measure_moments(cfg, grid, f.trials, f.seed, f.workers);
  write_measure_csv(rows, echo.str(), *out);
}

// ---- verify ----

struct VerifyFlags {
  bool quick = false;
  std::string report = "verify_report.json";
  int workers = 1;
  bool inject_fault = false;
  std::string config;
};

int run_verify(const VerifyFlags& f) {
  VerifyOptions options;
  options.full = !f.quick;
  options.inject_fault = f.inject_fault;
  options.workers = f.workers;
  const VerifyReport report = run_verification(options);

  for (const CheckResult& check : report.checks) {
    std::cout << "[" << (check.passed ? "PASS" : "FAIL") << "] " << check.name << ": "
              << check.detail << "\n";
  }
  const bool ok = report.all_passed();
  std::cout << (ok ? "verification passed (" : "verification FAILED (") << report.checks.size()
            << " checks)\n";

  std::ofstream out(f.report);
  if (!out) throw config_error("cannot open for writing: " + f.report);
  out << to_json(report);
  std::cout << "report: " << f.report << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Spiked-GUE eigenvector statistics at the critical edge"};
  app.require_subcommand(1);
  int rc = 0;

  SimulateFlags sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Sample spiked-GUE trials; write records, density curves, and a summary");
  CLI::Option* sim_n =
      simulate->add_option("--n", sim.n, "Matrix dimension N")->check(CLI::PositiveNumber);
  CLI::Option* sim_k = simulate->add_option(
      "--k", sim.k, "Spike count; must equal the length of --a")->check(CLI::NonNegativeNumber);
  simulate->add_option("--a", sim.a, "Comma list of critical spike offsets (empty for k = 0)");
  CLI::Option* sim_trials =
      simulate->add_option("--trials", sim.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--out-dir", sim.out_dir, "Artifact directory");
  simulate->add_option("--observables", sim.observables,
                       "Comma list of j:l coordinates (default 1:1 .. 1:k+1)");
  simulate->add_option("--workers", sim.workers, "Worker threads")
      ->envname("SPIKEGUE_WORKERS")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--full-scale", sim.full_scale,
                     "Default to N=1000 with 6000 trials instead of N=400 with 2000");
  add_config_flag(simulate, sim.config);
  simulate->callback([&] {
    if (!sim.config.empty()) merge_config(simulate, sim.config);
    if (sim.full_scale) {
      if (sim_n->count() == 0) sim.n = 1000;
      if (sim_trials->count() == 0) sim.trials = 6000;
    }
    run_simulate(sim, sim_k->count() > 0);
  });

  KernelFlags ker;
  CLI::App* kernel = app.add_subcommand(
      "kernel", "Evaluate the spike-deformed Airy kernel (or its finite-N form) on a square grid");
  kernel->add_option("--m1", ker.m1, "Spike-factor count on the first argument")
      ->check(CLI::NonNegativeNumber);
  kernel->add_option("--m2", ker.m2, "Spike-factor count on the second argument")
      ->check(CLI::NonNegativeNumber);
  kernel->add_option("--a", ker.a, "Comma list of distinct spike offsets");
  kernel->add_option("--grid", ker.grid, "xmin:xmax:steps, evaluated on the square grid")
      ->required();
  kernel->add_option("--finite-n", ker.finite_n, "Evaluate the dimension-N kernel, not the limit")
      ->check(CLI::PositiveNumber);
  kernel->add_option("--quad-points", ker.quad_points, "Base contour quadrature order")
      ->check(CLI::Range(16, 4096));
  kernel->add_option("--out", ker.out, "Output CSV path (default stdout)");
  add_config_flag(kernel, ker.config);
  kernel->callback([&] {
    if (!ker.config.empty()) merge_config(kernel, ker.config);
    run_kernel(ker);
  });

  MeasureFlags mea;
  CLI::App* measure = app.add_subcommand(
      "measure", "Empirical vs closed-form moments of the interlacing measure tail");
  measure->add_option("--n", mea.n, "Matrix dimension N")->check(CLI::PositiveNumber);
  CLI::Option* mea_k = measure->add_option(
      "--k", mea.k, "Spike count; must equal the length of --a")->check(CLI::NonNegativeNumber);
  measure->add_option("--a", mea.a, "Comma list of critical spike offsets");
  measure->add_option("--trials", mea.trials, "Monte Carlo trials (at least 100)");
  measure->add_option("--seed", mea.seed, "Master seed");
  measure->add_option("--x-grid", mea.x_grid, "Comma list of x values, or xmin:xmax:steps");
  measure->add_option("--workers", mea.workers, "Worker threads")
      ->envname("SPIKEGUE_WORKERS")
      ->check(CLI::PositiveNumber);
  measure->add_flag("--no-mc", mea.no_mc, "Closed-form columns only, no sampling");
  measure->add_option("--out", mea.out, "Output CSV path (default stdout)");
  add_config_flag(measure, mea.config);
  measure->callback([&] {
    if (!mea.config.empty()) merge_config(measure, mea.config);
    run_measure(mea, mea_k->count() > 0);
  });

  VerifyFlags ver;
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant property suites");
  verify->add_flag("--quick", ver.quick,
                   "Skip the kernel-convergence ladder and the rigidity survey");
  verify->add_option("--report", ver.report, "JSON report path");
  verify->add_option("--workers", ver.workers, "Worker threads")
      ->envname("SPIKEGUE_WORKERS")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--inject-fault", ver.inject_fault,
                   "Negate one identity value (negative control)")
      ->group("");
  add_config_flag(verify, ver.config);
  verify->callback([&] {
    if (!ver.config.empty()) merge_config(verify, ver.config);
    rc = run_verify(ver);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace spikegue
