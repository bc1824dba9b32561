// Command-line front end: instance generation, the three solvers, an
// independent validator, SVG rendering, and a small benchmark harness.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tspcp/instances.hpp"
#include "tspcp/solver.hpp"
#include "tspcp/stats.hpp"
#include "tspcp/svg.hpp"
#include "tspcp/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitValidationFailure = 4;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
}

struct SolveOptions {
  std::string variant;
  std::string instance_path;
  double time_budget = 0.0;      // absolute seconds; 0 = unset
  double budget_per_node = 0.0;  // seconds per node; 0 = unset
  std::int64_t max_iters = 0;
  int runs = 1;
  std::uint64_t seed = 1;
  double eps = 0.1;
  double fixed_radius = 0.0;  // >0 switches to fixed-radius mode
  double dubins_radius = 1.0;
  int headings = 8;
  std::string guide_path;
  std::string out_path;
  bool test_profile = false;
};

// Stop condition resolution: an explicit iteration cap keeps the run free of
// wall-clock influence so outputs are reproducible byte for byte.
tspcp::StopCondition resolve_stop(const SolveOptions& opt, int n) {
  if (opt.max_iters > 0) return {0.0, opt.max_iters};
  if (opt.time_budget > 0.0) return {opt.time_budget, 0};
  const double factor =
      opt.budget_per_node > 0.0 ? opt.budget_per_node : (opt.test_profile ? 0.1 : 10.0);
  return {factor * n, 0};
}

tspcp::SolverParams make_solver_params(const SolveOptions& opt, int n,
                                       std::uint64_t run_seed) {
  tspcp::SolverParams params;
  params.grasp.stop = resolve_stop(opt, n);
  if (opt.test_profile) params.grasp = params.grasp.with_test_profile();
  params.grasp.rng_seed = run_seed;
  params.placement.seed = run_seed;
  params.eps = opt.eps;
  params.headings = opt.headings;
  params.seed = run_seed;
  return params;
}

std::vector<int> load_guide_tour(const std::string& path, int n) {
  std::istringstream in(read_file(path));
  std::vector<int> tour;
  int id;
  while (in >> id) tour.push_back(id - 1);
  if (static_cast<int>(tour.size()) != n)
    throw InvalidInput("guide tour must list all " + std::to_string(n) +
                       " node ids");
  return tour;
}

tspcp::SolutionRecord solve_one(const tspcp::ParsedInstance& inst,
                                const SolveOptions& opt,
                                std::uint64_t run_seed) {
  using namespace tspcp;
  const int n = static_cast<int>(inst.points.size());
  const auto t0 = std::chrono::steady_clock::now();
  SolutionRecord rec;
  rec.instance = inst.name;
  rec.variant = opt.variant;
  rec.seed = run_seed;

  const SolverParams params = make_solver_params(opt, n, run_seed);

  if (opt.variant == "tspsd") {
    const auto graph = SelfDeletingGraph::euclidean(inst.points, inst.deletions);
    std::vector<int> guide;
    if (!opt.guide_path.empty()) guide = load_guide_tour(opt.guide_path, n);
    const auto report =
        grasp(graph, guide.empty() ? nullptr : &guide, params.grasp);
    if (!report.best)
      throw Infeasible("no conforming tour found for " + inst.name);
    rec.cost = report.best->cost;
    rec.tour = report.best->order;
    rec.valid = validate_tspsd_solution(
                    n, [&] {
                      std::vector<double> w;
                      w.reserve(static_cast<std::size_t>(n) * n);
                      for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                          w.push_back(graph.weight(i, j));
                      return w;
                    }(),
                    inst.deletions, rec.tour, rec.cost)
                    .ok;
  } else if (opt.variant == "tspcp" || opt.variant == "dtspcp") {
    const bool dubins = opt.variant == "dtspcp";
    TspCpSolution sol;
    if (opt.fixed_radius > 0.0) {
      if (dubins) {
        const auto initial = solve_dtsp_initial(
            inst.points, opt.dubins_radius, opt.headings,
            mix_seed(run_seed, 0xD7), params.dtsp_restarts);
        const auto edges =
            build_dubins_edges(inst.points, initial.headings_by_node,
                               opt.dubins_radius);
        const Cycle tour{initial.order, initial.cost};
        auto fixed = dtspcp_fixed_radius(edges, opt.fixed_radius, tour, params);
        if (!fixed)
          throw Infeasible("radius " + std::to_string(opt.fixed_radius) +
                           " is infeasible for " + inst.name);
        sol.cycle = fixed->cycle;
        sol.placement = fixed->placement;
        sol.headings = initial.headings_by_node;
        sol.dubins_radius = opt.dubins_radius;
        sol.variant = Variant::Dubins;
      } else {
        const Cycle tour =
            solve_tsp_initial(inst.points, mix_seed(run_seed, 0xA110));
        auto fixed = tspcp_fixed_radius(inst.points, opt.fixed_radius, tour, params);
        if (!fixed)
          throw Infeasible("radius " + std::to_string(opt.fixed_radius) +
                           " is infeasible for " + inst.name);
        sol.cycle = fixed->cycle;
        sol.placement = fixed->placement;
        sol.variant = Variant::Euclidean;
      }
      sol.radius = opt.fixed_radius;
      sol.cost = sol.cycle.cost;
      sol.feasible = true;
    } else {
      sol = dubins ? solve_dtspcp(inst.points, opt.dubins_radius, opt.headings,
                                  opt.eps, params)
                   : solve_tspcp(inst.points, opt.eps, params);
      if (!sol.feasible)
        throw Infeasible("no feasible circle placement found for " + inst.name);
    }
    rec.radius = sol.radius;
    rec.cost = sol.cost;
    rec.tour = sol.cycle.order;
    rec.circles = sol.placement.disks;
    std::vector<double> headings_by_tour;
    if (dubins) {
      headings_by_tour.reserve(rec.tour.size());
      for (const int v : rec.tour)
        headings_by_tour.push_back(sol.headings[static_cast<std::size_t>(v)]);
      rec.headings = headings_by_tour;
      rec.dubins_radius = sol.dubins_radius;
    }
    rec.valid = validate_placement_solution(
                    inst.points, rec.tour, rec.circles, rec.radius,
                    dubins ? Variant::Dubins : Variant::Euclidean,
                    headings_by_tour, rec.dubins_radius, rec.cost)
                    .ok;
  } else {
    throw InvalidInput("unknown solve variant: " + opt.variant);
  }

  // Wall time would break byte-identical reproducibility under an iteration
  // cap, so deterministic runs record zero.
  if (opt.max_iters == 0)
    rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rec;
}

int cmd_solve(const SolveOptions& opt) {
  const auto inst = tspcp::parse_instance(read_file(opt.instance_path));
  std::vector<tspcp::SolutionRecord> records;
  for (int r = 0; r < opt.runs; ++r)
    records.push_back(solve_one(inst, opt, tspcp::mix_seed(opt.seed, static_cast<std::uint64_t>(r))));
  const std::string text = tspcp::write_solutions(records);
  if (opt.out_path.empty())
    std::cout << text;
  else
    write_file(opt.out_path, text);
  for (const auto& rec : records)
    if (!rec.valid) return kExitValidationFailure;
  return kExitOk;
}

struct GenOptions {
  std::string family = "hex";
  int n = 0;
  double spacing = 50.0;
  double noise = -1.0;
  std::uint64_t seed = 1;
  std::string name;
  int delete_density = 0;
  std::string out_path;
};

int cmd_gen(const GenOptions& opt) {
  tspcp::InstanceSpec spec;
  spec.family = tspcp::family_from_string(opt.family);
  spec.n = opt.n;
  spec.spacing = opt.spacing;
  spec.noise = opt.noise;
  spec.seed = opt.seed;
  tspcp::ParsedInstance inst;
  inst.name = opt.name.empty()
                  ? opt.family + std::to_string(opt.n)
                  : opt.name;
  inst.points = tspcp::generate(spec);
  inst.type = "TSPCP";
  if (opt.delete_density > 0) {
    // Random delete function with the requested deletions per node.
    inst.type = "TSPSD";
    tspcp::Rng rng(tspcp::mix_seed(opt.seed, 0xDE1));
    const int n = static_cast<int>(inst.points.size());
    for (int v = 0; v < n; ++v) {
      int added = 0;
      while (added < opt.delete_density) {
        const int a = static_cast<int>(tspcp::rng_below(rng, static_cast<std::uint64_t>(n)));
        const int b = static_cast<int>(tspcp::rng_below(rng, static_cast<std::uint64_t>(n)));
        if (a == b) continue;
        inst.deletions.push_back({v, a, b});
        ++added;
      }
    }
  }
  const std::string text = tspcp::write_instance(inst);
  if (opt.out_path.empty())
    std::cout << text;
  else
    write_file(opt.out_path, text);
  return kExitOk;
}

int cmd_validate(const std::string& instance_path,
                 const std::string& solution_path) {
  using namespace tspcp;
  const auto inst = parse_instance(read_file(instance_path));
  const auto records = parse_solutions(read_file(solution_path));
  if (records.empty()) throw InvalidInput("no solution records found");
  const int n = static_cast<int>(inst.points.size());
  bool all_ok = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    ValidationReport report;
    if (rec.variant == "tspsd") {
      std::vector<double> w;
      w.reserve(static_cast<std::size_t>(n) * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          w.push_back(distance(inst.points[static_cast<std::size_t>(a)],
                               inst.points[static_cast<std::size_t>(b)]));
      report = validate_tspsd_solution(n, w, inst.deletions, rec.tour, rec.cost);
    } else if (rec.variant == "tspcp" || rec.variant == "dtspcp") {
      report = validate_placement_solution(
          inst.points, rec.tour, rec.circles, rec.radius,
          rec.variant == "dtspcp" ? Variant::Dubins : Variant::Euclidean,
          rec.headings, rec.dubins_radius, rec.cost);
    } else {
      throw InvalidInput("record " + std::to_string(i + 1) +
                         " has unknown variant " + rec.variant);
    }
    if (report.ok) {
      std::cout << "record " << (i + 1) << ": OK\n";
    } else {
      all_ok = false;
      std::cout << "record " << (i + 1) << ": FAIL\n";
      for (const auto& issue : report.issues)
        std::cout << "  " << issue << "\n";
    }
  }
  return all_ok ? kExitOk : kExitValidationFailure;
}

int cmd_render(const std::string& instance_path,
               const std::string& solution_path, const std::string& out_path,
               int index) {
  const auto inst = tspcp::parse_instance(read_file(instance_path));
  const auto records = tspcp::parse_solutions(read_file(solution_path));
  if (index < 0 || index >= static_cast<int>(records.size()))
    throw InvalidInput("record index out of range");
  const std::string svg =
      tspcp::render_svg(records[static_cast<std::size_t>(index)], inst.points);
  if (out_path.empty())
    std::cout << svg;
  else
    write_file(out_path, svg);
  return kExitOk;
}

struct BenchOptions {
  std::vector<std::string> instance_paths;
  SolveOptions solve;  // variant + budgets reused per run
  std::string refs_path;
  std::string out_path;
};

int worker_count() {
  const char* env = std::getenv("TSPCP_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(v, hw > 0 ? hw : 1));
}

int cmd_bench(const BenchOptions& opt) {
  using namespace tspcp;
  struct Job {
    ParsedInstance inst;
    int run = 0;
    std::uint64_t seed = 0;
  };
  std::vector<Job> jobs;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < opt.instance_paths.size(); ++i) {
    auto inst = parse_instance(read_file(opt.instance_paths[i]));
    names.push_back(inst.name);
    for (int r = 0; r < opt.solve.runs; ++r)
      jobs.push_back(
          {inst, r, mix_seed(opt.solve.seed, i * 1000003ULL + static_cast<std::uint64_t>(r))});
  }

  std::vector<SolutionRecord> results(jobs.size());
  std::vector<char> failed(jobs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        results[i] = solve_one(jobs[i].inst, opt.solve, jobs[i].seed);
      } catch (const std::exception&) {
        failed[i] = 1;
      }
    }
  };
  const int workers = std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::map<std::string, double> refs;
  if (!opt.refs_path.empty()) {
    std::istringstream in(read_file(opt.refs_path));
    std::string name;
    double value;
    while (in >> name >> value) refs[name] = value;
  }

  // Aggregate per instance, sorted by name; radius is the headline score for
  // placement variants, cost for plain tours.
  const bool radius_score = opt.solve.variant != "tspsd";
  std::printf("%-16s %5s %4s %12s %12s %10s %9s %9s %9s %9s\n", "instance", "n",
              "runs", "best", "mean", "sigma", "gap_best", "gap_mean",
              "gap_sig", "mean_ms");
  std::vector<SolutionRecord> retained;
  bool any_failed = false;
  for (std::size_t i = 0; i < opt.instance_paths.size(); ++i) {
    std::vector<double> scores;
    std::vector<double> times;
    int n_nodes = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].inst.name != names[i]) continue;
      n_nodes = static_cast<int>(jobs[j].inst.points.size());
      if (failed[j]) {
        any_failed = true;
        continue;
      }
      retained.push_back(results[j]);
      scores.push_back(radius_score ? results[j].radius : results[j].cost);
      times.push_back(static_cast<double>(results[j].wall_ms));
    }
    if (scores.empty()) {
      std::printf("%-16s %5d %4d %12s\n", names[i].c_str(), n_nodes, 0, "-");
      continue;
    }
    const double best = radius_score
                            ? *std::max_element(scores.begin(), scores.end())
                            : *std::min_element(scores.begin(), scores.end());
    const double m = mean(scores);
    const double sd = stddev(scores);
    const double ref = refs.count(names[i]) ? refs[names[i]] : best;
    std::printf("%-16s %5d %4zu %12.4f %12.4f %10.4f %9.2f %9.2f %9.2f %9.1f\n",
                names[i].c_str(), n_nodes, scores.size(), best, m, sd,
                gap(best, ref), gap(m, ref), gap_sigma(sd, ref), mean(times));
  }
  if (!opt.out_path.empty()) write_file(opt.out_path, write_solutions(retained));
  return any_failed ? kExitInfeasible : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tour solvers with obstacle-circle placement"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* cgen = app.add_subcommand("gen", "generate an instance file");
  cgen->add_option("--family", gen.family, "hex|hex_noisy|mesh|square")
      ->required();
  cgen->add_option("--n", gen.n, "node count")->required();
  cgen->add_option("--spacing", gen.spacing, "grid pitch / minimum distance");
  cgen->add_option("--noise", gen.noise, "hex_noisy displacement bound");
  cgen->add_option("--seed", gen.seed, "generator seed");
  cgen->add_option("--name", gen.name, "instance name");
  cgen->add_option("--delete-density", gen.delete_density,
                   "random deletions per node (emits a TSPSD instance)");
  cgen->add_option("--out", gen.out_path, "output path (stdout when omitted)");

  SolveOptions solve;
  auto* csolve = app.add_subcommand("solve", "solve an instance");
  csolve->add_option("variant", solve.variant, "tspsd|tspcp|dtspcp")
      ->required()
      ->check(CLI::IsMember({"tspsd", "tspcp", "dtspcp"}));
  csolve->add_option("instance", solve.instance_path, "instance file")
      ->required();
  csolve->add_option("--time-budget", solve.time_budget,
                     "wall-clock budget per run (seconds)");
  csolve->add_option("--budget-per-node", solve.budget_per_node,
                     "budget factor: seconds per node");
  csolve->add_option("--max-iters", solve.max_iters,
                     "iteration cap (deterministic stop)");
  csolve->add_option("--runs", solve.runs, "independent runs")->check(CLI::PositiveNumber);
  csolve->add_option("--seed", solve.seed, "base seed");
  csolve->add_option("--eps", solve.eps, "bisection resolution");
  csolve->add_option("--radius", solve.fixed_radius,
                     "fixed-radius mode (placement variants)");
  csolve->add_option("--dubins-radius", solve.dubins_radius, "turning radius");
  csolve->add_option("--headings", solve.headings, "heading samples per node");
  csolve->add_option("--guide-tour", solve.guide_path,
                     "file with 1-based node ids used as construction guide");
  csolve->add_option("--out", solve.out_path, "solution records output path");
  csolve->add_flag("--test-profile", solve.test_profile,
                   "shrink budgets for CI-scale runs");

  std::string v_instance, v_solution;
  auto* cvalidate = app.add_subcommand("validate", "re-validate solutions");
  cvalidate->add_option("instance", v_instance, "instance file")->required();
  cvalidate->add_option("solutions", v_solution, "solution records file")
      ->required();

  std::string r_instance, r_solution, r_out;
  int r_index = 0;
  auto* crender = app.add_subcommand("render", "render a solution as SVG");
  crender->add_option("instance", r_instance, "instance file")->required();
  crender->add_option("solutions", r_solution, "solution records file")
      ->required();
  crender->add_option("--out", r_out, "output SVG path (stdout when omitted)");
  crender->add_option("--index", r_index, "record index (0-based)");

  BenchOptions bench;
  bench.solve.variant = "tspcp";
  auto* cbench = app.add_subcommand("bench", "run a benchmark campaign");
  cbench->add_option("instances", bench.instance_paths, "instance files")
      ->required();
  cbench->add_option("--variant", bench.solve.variant, "tspsd|tspcp|dtspcp")
      ->check(CLI::IsMember({"tspsd", "tspcp", "dtspcp"}));
  cbench->add_option("--runs", bench.solve.runs, "runs per instance");
  cbench->add_option("--seed", bench.solve.seed, "base seed");
  cbench->add_option("--eps", bench.solve.eps, "bisection resolution");
  cbench->add_option("--time-budget", bench.solve.time_budget,
                     "wall-clock budget per run (seconds)");
  cbench->add_option("--budget-per-node", bench.solve.budget_per_node,
                     "budget factor: seconds per node");
  cbench->add_option("--max-iters", bench.solve.max_iters, "iteration cap");
  cbench->add_option("--dubins-radius", bench.solve.dubins_radius,
                     "turning radius");
  cbench->add_option("--headings", bench.solve.headings,
                     "heading samples per node");
  cbench->add_option("--refs", bench.refs_path,
                     "reference values file: '<name> <value>' per line");
  cbench->add_option("--out", bench.out_path, "retained per-run records path");
  cbench->add_flag("--test-profile", bench.solve.test_profile,
                   "shrink budgets for CI-scale runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (csolve->parsed()) return cmd_solve(solve);
    if (cvalidate->parsed()) return cmd_validate(v_instance, v_solution);
    if (crender->parsed()) return cmd_render(r_instance, r_solution, r_out, r_index);
    if (cbench->parsed()) return cmd_bench(bench);
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const tspcp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
