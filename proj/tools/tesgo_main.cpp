// Command-line harness: run solvers on the built-in problems, persist
// results as CSV, and compute accuracy / performance profiles from result
// files. Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tesgo/tesgo.hpp"

namespace {

struct RunOptions {
  std::vector<std::string> problems;
  std::vector<std::size_t> dims;
  std::vector<std::string> solvers;
  std::string preset_name = "full";
  std::uint64_t seed = 0;
  int starts = 1;
  std::string out_path;
};

struct ProfileOptions {
  std::vector<std::string> inputs;
  std::string measure = "accuracy";
  double tau = 0.2;
  std::string out_path;
};

// Pairs each problem name with a dimension: one --n per problem (zipped), a
// single --n for all, or the registry default when --n is absent.
std::vector<tesgo::ProblemSpec> resolve_instances(const RunOptions& opt) {
  if (opt.problems.empty()) throw std::invalid_argument("run: at least one --problem is required");
  if (!opt.dims.empty() && opt.dims.size() != 1 && opt.dims.size() != opt.problems.size())
    throw std::invalid_argument("run: --n must appear once, once per --problem, or not at all");
  std::vector<tesgo::ProblemSpec> specs;
  for (std::size_t i = 0; i < opt.problems.size(); ++i) {
    std::optional<std::size_t> n;
    if (opt.dims.size() == 1)
      n = opt.dims[0];
    else if (!opt.dims.empty())
      n = opt.dims[i];
    specs.push_back(tesgo::make_problem(opt.problems[i], n));
  }
  return specs;
}

// Start 0 is the registry's standard point; starts 1.. are drawn from a
// uniform stream over the box, reseeded per instance for reproducibility.
std::vector<tesgo::Vector> make_starts(const tesgo::ProblemSpec& spec, int starts,
                                       std::uint64_t seed) {
  std::vector<tesgo::Vector> points;
  points.push_back(spec.start);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& box = spec.problem.box();
  for (int s = 1; s < starts; ++s) {
    tesgo::Vector x(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
      x[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * unit(rng);
    points.push_back(std::move(x));
  }
  return points;
}

tesgo::ResultRow run_one(const tesgo::ProblemSpec& spec, const std::string& solver,
                         const tesgo::Vector& x0, long long start_id, const RunOptions& opt) {
  tesgo::ResultRow row;
  row.solver = solver;
  row.problem = spec.name;
  row.n = spec.n;
  row.start_id = start_id;
  if (solver == "tesgo") {
    tesgo::TesgoConfig cfg = tesgo::preset(opt.preset_name, spec.n);
    cfg.seed = opt.seed;
    tesgo::SolveReport rep = tesgo::tesgo_solve(spec.problem, x0, cfg);
    row.f_opt = rep.f_best;
    row.status = tesgo::to_string(rep.status);
    row.n_f1 = rep.counters.n_f1;
    row.n_f2 = rep.counters.n_f2;
    row.n_g1 = rep.counters.n_g1;
    row.n_g2 = rep.counters.n_g2;
    row.wall_seconds = rep.wall_seconds;
  } else {  // dca_local: penalized local search only
    tesgo::EvalCounters c;
    const auto t0 = std::chrono::steady_clock::now();
    tesgo::DcProblem pen = tesgo::penalize(spec.problem, 100.0);
    tesgo::CriticalPoint cp = tesgo::dc_local_search(pen, x0, tesgo::LocalSearchConfig{}, c);
    row.wall_seconds = std::chrono::duration_cast<std::chrono::duration<double>>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    row.f_opt = cp.f_value;
    row.status = "local_only";
    row.n_f1 = c.n_f1;
    row.n_f2 = c.n_f2;
    row.n_g1 = c.n_g1;
    row.n_g2 = c.n_g2;
  }
  if (spec.f_star) {
    row.f_star = *spec.f_star;
    row.rel_error = tesgo::relative_error(row.f_opt, *spec.f_star);
  }
  return row;
}

int cmd_run(const RunOptions& opt) {
  std::vector<tesgo::ProblemSpec> specs = resolve_instances(opt);
  std::vector<std::string> solvers = opt.solvers.empty()
                                         ? std::vector<std::string>{"tesgo"}
                                         : opt.solvers;
  tesgo::preset(opt.preset_name, 2);  // reject bad preset names before any work

  std::vector<tesgo::ResultRow> rows;
  for (const auto& spec : specs) {
    std::vector<tesgo::Vector> starts = make_starts(spec, opt.starts, opt.seed);
    for (std::size_t s = 0; s < starts.size(); ++s)
      for (const auto& solver : solvers)
        rows.push_back(run_one(spec, solver, starts[s], static_cast<long long>(s), opt));
  }
  std::sort(rows.begin(), rows.end(), [](const tesgo::ResultRow& a, const tesgo::ResultRow& b) {
    return std::tie(a.problem, a.n, a.start_id, a.solver) <
           std::tie(b.problem, b.n, b.start_id, b.solver);
  });
  tesgo::write_results_csv(opt.out_path, rows);
  std::cout << "wrote " << rows.size() << " rows to " << opt.out_path << "\n";
  return 0;
}

int cmd_profiles(const ProfileOptions& opt) {
  std::vector<tesgo::RunRecord> records;
  for (const auto& path : opt.inputs)
    for (const auto& row : tesgo::read_results_csv(path))
      records.push_back(tesgo::to_run_record(row));
  tesgo::ProfileTable table;
  if (opt.measure == "accuracy")
    table = tesgo::accuracy_profile(records);
  else
    table = tesgo::performance_profile(records, opt.measure, opt.tau);
  for (const auto& key : table.excluded)
    std::cerr << "warning: instance solved by no solver, excluded: " << key << "\n";
  tesgo::write_profile_csv(opt.out_path, table);
  std::cout << "wrote " << table.measure << " profile (" << table.solvers.size()
            << " solvers, " << table.taus.size() << " thresholds) to " << opt.out_path << "\n";
  return 0;
}

std::string format_fstar(const std::optional<double>& v) {
  if (!v) return "unknown";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

int cmd_list() {
  std::cout << "built-in problems:\n";
  for (const auto& name : tesgo::problem_names()) {
    tesgo::ProblemSpec spec = tesgo::make_problem(name);
    const auto& box = spec.problem.box();
    char boxbuf[64];
    std::snprintf(boxbuf, sizeof(boxbuf), "[%g, %g]", box.lower[0], box.upper[0]);
    const bool parametric = (name == "P16" || name == "P18" || name == "P20");
    std::cout << "  " << name << "  " << (parametric ? "n >= 2 (default 2)" : "n = " + std::to_string(spec.n))
              << "  box " << boxbuf << "^n" << (name == "P18" ? " with bound n" : "") << "  f_star ";
    if (!parametric) {
      std::cout << format_fstar(spec.f_star) << "\n";
      continue;
    }
    // enumerate the dimensions with known reference optima
    const std::size_t probe[] = {2, 5, 10, 50, 100, 200};
    std::vector<std::pair<std::size_t, double>> known;
    for (std::size_t n : probe) {
      auto f = tesgo::make_problem(name, n).f_star;
      if (f) known.emplace_back(n, *f);
    }
    bool all_equal = !known.empty();
    for (const auto& kv : known) all_equal = all_equal && kv.second == known.front().second;
    if (all_equal && known.size() == std::size(probe)) {
      std::cout << format_fstar(known.front().second) << " for all n\n";
    } else {
      bool first = true;
      for (const auto& kv : known) {
        std::cout << (first ? "" : ", ") << format_fstar(kv.second) << " (n=" << kv.first << ")";
        first = false;
      }
      std::cout << "\n";
    }
  }
  std::cout << "externally defined (no built-in formula):";
  for (const auto& name : tesgo::external_problem_names()) std::cout << " " << name;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for DC minimization over boxes"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Run a solver and write a results CSV");
  run->add_option("--problem", run_opt.problems, "Problem name (repeatable)")->required();
  run->add_option("--n", run_opt.dims, "Dimension (repeatable; zipped with --problem)");
  run->add_option("--solver", run_opt.solvers, "Solver (repeatable; default tesgo)")
      ->check(CLI::IsMember({"tesgo", "dca_local"}));
  run->add_option("--preset", run_opt.preset_name, "Parameter preset")
      ->check(CLI::IsMember({"simple", "full", "full_150", "full_200"}));
  run->add_option("--seed", run_opt.seed, "Seed for directions and random starts");
  run->add_option("--starts", run_opt.starts, "Number of starts (id 0 is the standard point)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_opt.out_path, "Output CSV path")->required();

  ProfileOptions prof_opt;
  CLI::App* profiles = app.add_subcommand("profiles", "Compute profiles from results CSVs");
  profiles->add_option("--in", prof_opt.inputs, "Input results CSV (repeatable)")->required();
  profiles->add_option("--measure", prof_opt.measure, "accuracy, time, or nfev")
      ->check(CLI::IsMember({"accuracy", "time", "nfev"}));
  profiles->add_option("--tau", prof_opt.tau, "Solved threshold for time/nfev profiles")
      ->check(CLI::NonNegativeNumber);
  profiles->add_option("--out", prof_opt.out_path, "Output profile CSV path")->required();

  CLI::App* list = app.add_subcommand("list", "List registered problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(run)) return cmd_run(run_opt);
    if (app.got_subcommand(profiles)) return cmd_profiles(prof_opt);
    if (app.got_subcommand(list)) return cmd_list();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
