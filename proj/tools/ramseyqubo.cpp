// ramseyqubo: build, reduce, precolour, solve and verify colouring problems.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramseyqubo/ramseyqubo.hpp"

namespace rq = ramseyqubo;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string g_command_line;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rq::Error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw rq::Error("cannot open '" + path + "' for writing");
  return out;
}

// --seed wins, then RAMSEYQUBO_SEED, then fresh entropy. Echoed either way.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  std::uint64_t seed;
  std::string origin;
  if (flag) {
    seed = *flag;
    origin = "flag";
  } else if (const char* env = std::getenv("RAMSEYQUBO_SEED"); env && *env) {
    seed = std::stoull(env);
    origin = "RAMSEYQUBO_SEED";
  } else {
    std::random_device rd;
    seed = (std::uint64_t{rd()} << 32) ^ rd();
    origin = "entropy";
  }
  std::cout << "seed " << seed << " (" << origin << ")\n";
  return seed;
}

std::vector<std::string> header(std::vector<std::string> extra) {
  std::vector<std::string> h{"generator ramseyqubo", "command " + g_command_line};
  for (auto& e : extra) h.push_back(std::move(e));
  return h;
}

void save_problem(const std::string& path, rq::Format format, std::vector<std::string> comments,
                  rq::Problem<std::int64_t> problem) {
  auto out = open_out(path);
  rq::write_problem(out, rq::ProblemFile<>{format, std::move(comments), std::move(problem)});
}

void save_map(const std::string& path, const rq::ReductionMap& map) {
  auto out = open_out(path);
  rq::write_reduction_map(out, map);
}

rq::ProblemFile<> load_problem(const std::string& path) {
  auto in = open_in(path);
  return rq::read_problem(in);
}

rq::ReductionMap load_map(const std::string& path) {
  auto in = open_in(path);
  return rq::read_reduction_map(in);
}

std::string map_path(const std::string& out, const std::string& explicit_path) {
  return explicit_path.empty() ? out + ".map" : explicit_path;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::size_t n = 10;
  double saturation = 0.5;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const auto seed = resolve_seed(a.seed);
  const auto g = rq::random_graph(a.n, a.saturation, seed);
  auto out = open_out(a.out);
  out << "# generator ramseyqubo\n# command " << g_command_line << "\n# seed " << seed << '\n';
  rq::write_graph(out, g);
  std::cout << "graph n " << a.n << " edges " << g.num_edges() << " -> " << a.out << '\n';
  return 0;
}

struct BuildArgs {
  std::string kind;
  std::size_t complete = 0;
  std::string graph;
  std::size_t m = 0, n = 4;
  std::string out;
};

int cmd_build(const BuildArgs& a) {
  if (a.kind == "mct") {
    if ((a.complete > 0) == !a.graph.empty())
      throw rq::Error("build mct: give exactly one of --complete or --graph");
    rq::Graph g;
    std::string source;
    if (a.complete > 0) {
      g = rq::complete_graph(a.complete);
      source = "K" + std::to_string(a.complete);
    } else {
      auto in = open_in(a.graph);
      g = rq::read_graph(in);
      source = a.graph;
    }
    const auto q = rq::build_mct(g);
    if (q.poly().is_zero()) std::cerr << "warning: graph has no triangles; polynomial is zero\n";
    save_problem(a.out, rq::Format::qubo, header({"build mct " + source}), q.as_problem());
    std::cout << "mct " << source << ": " << q.num_vars() << " variables, "
              << q.poly().num_terms() << " terms, offset " << q.offset() << '\n';
    return 0;
  }
  if (a.m == 0) throw rq::Error("build ramsey: --m is required");
  const auto p = rq::build_ramsey_pubo(a.m, a.n);
  save_problem(a.out, rq::Format::pubo,
               header({"build ramsey m " + std::to_string(a.m) + " n " + std::to_string(a.n)}),
               {p, rq::ramsey_registry(a.m)});
  std::cout << "ramsey K" << a.m << " n " << a.n << ": " << p.num_vars() << " variables, "
            << p.num_terms() << " terms, degree " << p.degree() << ", "
            << rq::binomial(a.m, a.n) << " cliques\n";
  return 0;
}

struct ReduceArgs {
  std::string method;
  std::size_t m = 0;
  std::string in;
  std::string out;
  std::string map;
  std::string pairing = "triangle_first";
  std::optional<std::int64_t> weight;
};

int cmd_reduce(const ReduceArgs& a) {
  if (a.method == "gadget") {
    std::size_t m = a.m;
    if (!a.in.empty()) {
      // Only the R(4) family on K_m is supported; recognise it by rebuilding.
      const auto f = load_problem(a.in);
      m = f.problem.registry.graph_order();
      if (m < 4 || !(f.problem.poly == rq::build_ramsey_pubo(m, 4)))
        throw rq::Error("reduce gadget: input is not the R(4) PUBO on a complete graph");
    }
    if (m == 0) throw rq::Error("reduce gadget: give --m or --in");
    const auto r = rq::reduce_r4(m);
    save_problem(a.out, rq::Format::qubo, header({"reduce gadget m " + std::to_string(m)}),
                 r.problem.as_problem());
    save_map(map_path(a.out, a.map), r.map);
    std::cout << r.problem.num_vars() << " (formula " << rq::variable_count_paper(m) << ")\n";
    return 0;
  }

  rq::Problem<std::int64_t> src;
  std::size_t m = a.m;
  if (!a.in.empty()) {
    src = load_problem(a.in).problem;
    m = src.registry.graph_order();
  } else {
    if (m == 0) throw rq::Error("reduce rosenberg: give --m or --in");
    src = {rq::build_ramsey_pubo(m, 4), rq::ramsey_registry(m)};
  }
  const auto pairing = a.pairing == "greedy" ? rq::RosenbergPairing::greedy
                                             : rq::RosenbergPairing::triangle_first;
  const auto r = rq::rosenberg_reduce(src.poly, a.weight, pairing, src.registry);
  save_problem(a.out, rq::Format::qubo,
               header({"reduce rosenberg pairing " + a.pairing + " weight " +
                       std::to_string(r.weight)}),
               r.problem.as_problem());
  save_map(map_path(a.out, a.map), r.map);
  std::cout << r.problem.num_vars();
  if (a.in.empty() || m >= 4) std::cout << " (formula " << rq::variable_count_rosenberg(m) << ")";
  std::cout << ", " << r.map.ancillas.size() << " ancillas, weight " << r.weight << '\n';
  return 0;
}

struct PrecolorArgs {
  std::string in, map, out, map_out, plan_in, plan_out;
  std::optional<std::size_t> star;
  std::optional<rq::Vertex> center;
  std::vector<rq::Vertex> leaves;
  int colour = 0;
};

int cmd_precolor(const PrecolorArgs& a) {
  const auto file = load_problem(a.in);
  const auto problem = rq::as_qubo(file.problem.poly, file.problem.registry);
  const auto map = load_map(a.map.empty() ? a.in + ".map" : a.map);
  const std::size_t m = problem.registry().graph_order();
  if (m == 0) throw rq::Error("precolor: problem has no graph");

  rq::PrecolorPlan plan;
  if (!a.plan_in.empty()) {
    auto in = open_in(a.plan_in);
    plan = rq::read_plan(in);
  } else if (!a.leaves.empty() || a.center) {
    plan.center = a.center.value_or(static_cast<rq::Vertex>(m - 1));
    plan.leaves = a.leaves;
    plan.colour = static_cast<std::uint8_t>(a.colour);
  } else {
    // Largest star every colouring of K_m must contain.
    std::size_t k = a.star.value_or(0);
    if (!a.star)
      while (rq::star_ramsey(k + 1) <= m) ++k;
    plan = rq::default_star_plan(m, k, static_cast<std::uint8_t>(a.colour));
  }
  const auto before = problem.num_vars();
  const auto r = rq::precolor_star(problem, map, m, plan);

  std::ostringstream star;
  rq::write_plan(star, r.plan);
  auto plan_text = star.str();
  plan_text.pop_back();
  save_problem(a.out, rq::Format::qubo, header({"precolor " + plan_text}), r.problem.as_problem());
  save_map(map_path(a.out, a.map_out), r.map);
  if (!a.plan_out.empty()) {
    auto out = open_out(a.plan_out);
    rq::write_plan(out, r.plan);
  }
  std::cout << plan_text << ": eliminated " << r.eliminated << " (" << r.plan.fixed_edge_vars.size()
            << " edges, " << r.plan.fixed_ancilla_vars.size() << " ancillas), " << before << " -> "
            << r.problem.num_vars() << " variables\n";
  return 0;
}

struct SolveArgs {
  std::string in, out, coloring;
  bool brute = false;
  std::optional<std::uint64_t> seed;
  std::size_t restarts = rq::kDefaultRestarts;
  std::optional<double> time_limit;
  std::optional<double> t_start, t_end;
  std::optional<std::size_t> sweeps;
  std::size_t threads = 0;
};

void write_assignment(std::ostream& os, std::int64_t energy, const rq::Assignment& bits,
                      const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "energy " << energy << '\n' << "bits ";
  for (auto b : bits) os << int{b};
  os << '\n';
}

int cmd_solve(const SolveArgs& a) {
  const auto file = load_problem(a.in);
  const auto& p = file.problem.poly;
  std::vector<std::string> notes = header({"input " + a.in});

  std::int64_t energy = 0;
  rq::Assignment bits(p.num_vars(), 0);
  if (p.num_terms() == 0) {
    energy = p.constant();
    std::cout << "constant polynomial; nothing to search\n";
  } else if (a.brute) {
    const auto r = rq::brute_force(p);
    energy = r.min_value;
    bits = r.argmin;
    notes.push_back("method brute");
    std::cout << "brute force: minimum " << energy << ", " << r.count << " minimizers\n";
  } else {
    const auto seed = resolve_seed(a.seed);
    auto schedule = rq::AnnealSchedule::defaults_for(p);
    if (a.t_start) schedule.t_start = *a.t_start;
    if (a.t_end) schedule.t_end = *a.t_end;
    if (a.sweeps) schedule.sweeps = *a.sweeps;
    const auto r = rq::anneal(p, schedule, a.restarts, seed, a.time_limit, a.threads);
    energy = r.best_energy;
    bits = r.best_assignment;
    std::ostringstream cfg;
    cfg << "method anneal seed " << seed << " restarts " << a.restarts << " t_start "
        << schedule.t_start << " t_end " << schedule.t_end << " sweeps " << schedule.sweeps;
    if (a.time_limit) cfg << " time_limit " << *a.time_limit;
    notes.push_back(cfg.str());
    std::cout << "anneal: best " << energy << " (restart " << r.best_restart << " of "
              << r.restarts_used << " run), " << std::fixed << std::setprecision(2) << r.wall_time
              << " s\n";
  }
  std::cout << "energy " << energy << '\n';

  if (!a.out.empty()) {
    auto out = open_out(a.out);
    write_assignment(out, energy, bits, notes);
  }
  const auto& reg = file.problem.registry;
  if (reg.graph_order() > 0) {
    const auto c = rq::coloring_from_assignment(reg, bits);
    if (!a.coloring.empty()) {
      auto out = open_out(a.coloring);
      for (const auto& n : notes) out << "# " << n << '\n';
      rq::write_coloring(out, c);
    }
  } else if (!a.coloring.empty()) {
    std::cerr << "warning: problem has no edge variables; no colouring written\n";
  }
  return energy == 0 ? 0 : kExitFail;
}

struct VerifyArgs {
  std::string graph, coloring;
  std::size_t complete = 0;
  std::size_t k = 3;
};

int cmd_verify(const VerifyArgs& a) {
  auto cin = open_in(a.coloring);
  const auto c = rq::read_coloring(cin);
  rq::Graph g;
  std::string id;
  if (!a.graph.empty()) {
    auto gin = open_in(a.graph);
    g = rq::read_graph(gin);
    id = a.graph;
  } else {
    g = rq::complete_graph(a.complete ? a.complete : c.num_vertices());
    id = "K" + std::to_string(g.num_vertices());
  }
  rq::check_coverage(g, c);
  const auto r = rq::count_monochromatic(g, c, a.k, id);
  std::cout << "graph " << r.graph_id << " k " << r.k << " monochromatic " << r.monochromatic
            << " red " << r.red << " blue " << r.blue;
  if (r.witness) {
    std::cout << " witness";
    for (auto v : *r.witness) std::cout << ' ' << v;
  }
  std::cout << '\n';
  return r.monochromatic == 0 ? 0 : kExitFail;
}

struct BenchArgs {
  std::string suite;
  std::size_t n_max = 20;
  std::size_t trials = 1;
  double time_limit = 60.0;
  std::optional<std::uint64_t> seed;
};

constexpr std::int64_t kTable1[] = {0, 2, 4, 8, 12, 20, 28, 40, 52, 70, 88, 112, 136, 168, 200, 240};

int cmd_bench(const BenchArgs& a) {
  const auto seed = resolve_seed(a.seed);
  std::vector<std::string> rows;
  bool all_pass = true;
  auto line = [](auto... cols) {
    std::ostringstream os;
    ((os << std::setw(12) << cols), ...);
    std::cout << os.str() << '\n';
  };

  if (a.suite == "table1") {
    if (a.n_max < 5 || a.n_max > 20) throw rq::Error("bench table1: --n-max must lie in 5..20");
    line("n", "reference", "achieved", "delta", "status", "seconds");
    for (std::size_t n = 5; n <= a.n_max; ++n) {
      const auto p = rq::build_mct(rq::complete_graph(n)).poly();
      const auto t0 = std::chrono::steady_clock::now();
      std::int64_t best = 0;
      for (std::size_t t = 0; t < a.trials; ++t) {
        const auto v = n <= 7 ? rq::brute_force(p).min_value
                              : rq::anneal(p, rq::AnnealSchedule::defaults_for(p), rq::kDefaultRestarts,
                                           seed + 1000 * n + t, a.time_limit)
                                    .best_energy;
        if (t == 0 || v < best) best = v;
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto ref = kTable1[n - 5];
      const bool pass = best == ref;
      all_pass &= pass;
      std::ostringstream s;
      s << std::fixed << std::setprecision(2) << secs;
      line(n, ref, best, best - ref, pass ? "PASS" : "FAIL", s.str());
      rows.push_back("row table1 n=" + std::to_string(n) + " reference=" + std::to_string(ref) +
                     " achieved=" + std::to_string(best) + " status=" + (pass ? "PASS" : "FAIL"));
    }
  } else {
    line("n", "trial", "edges", "reference", "achieved", "delta", "status", "note");
    for (std::size_t n : {10u, 15u, 20u, 25u, 30u}) {
      for (std::size_t t = 1; t <= a.trials; ++t) {
        const auto gseed = seed + t;
        const auto g = rq::random_graph(n, 0.5, gseed);
        const auto p = rq::build_mct(g).poly();
        std::int64_t best = 0;
        if (p.num_terms() > 0)
          best = rq::anneal(p, rq::AnnealSchedule::defaults_for(p), rq::kDefaultRestarts, gseed, a.time_limit)
                     .best_energy;
        const auto k6 = rq::enumerate_cliques(g, 6);
        std::string note = k6.empty() ? "-" : "K6 present, 0 impossible";
        const bool pass = best == 0;
        all_pass &= pass;
        line(n, t, g.num_edges(), 0, best, best, pass ? "PASS" : "FAIL", note);
        rows.push_back("row table2 n=" + std::to_string(n) + " trial=" + std::to_string(t) +
                       " graph_seed=" + std::to_string(gseed) + " reference=0 achieved=" +
                       std::to_string(best) + " k6=" + std::to_string(k6.size()) +
                       " status=" + (pass ? "PASS" : "FAIL"));
      }
    }
  }
  for (const auto& r : rows) std::cout << r << '\n';
  return all_pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Encode, reduce, solve and verify monochromatic-clique colouring problems"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Random graph with the given edge saturation");
  generate->add_option("--n", gen.n, "Vertex count")->check(CLI::PositiveNumber);
  generate->add_option("--saturation", gen.saturation, "Edge probability")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", gen.out, "Graph file")->required();

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Write the MCT QUBO or the Ramsey PUBO");
  build_cmd->add_option("kind", build.kind, "mct or ramsey")
      ->required()
      ->check(CLI::IsMember({"mct", "ramsey"}));
  build_cmd->add_option("--complete", build.complete, "Use K_n");
  build_cmd->add_option("--graph", build.graph, "Graph file");
  build_cmd->add_option("--m", build.m, "Order of the complete graph (ramsey)");
  build_cmd->add_option("--n", build.n, "Clique size (ramsey)");
  build_cmd->add_option("--out", build.out, "Problem file")->required();

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Quadratize a problem");
  reduce_cmd->add_option("method", reduce.method, "gadget or rosenberg")
      ->required()
      ->check(CLI::IsMember({"gadget", "rosenberg"}));
  reduce_cmd->add_option("--m", reduce.m, "Build the R(4) problem on K_m");
  reduce_cmd->add_option("--in", reduce.in, "Problem file");
  reduce_cmd->add_option("--out", reduce.out, "QUBO file")->required();
  reduce_cmd->add_option("--map", reduce.map, "Reduction map (default <out>.map)");
  reduce_cmd->add_option("--pairing", reduce.pairing, "Rosenberg pairing")
      ->check(CLI::IsMember({"greedy", "triangle_first"}));
  reduce_cmd->add_option("--weight", reduce.weight, "Rosenberg penalty weight");

  PrecolorArgs pre;
  auto* pre_cmd = app.add_subcommand("precolor", "Fix a monochromatic star in a gadget-reduced problem");
  pre_cmd->add_option("--in", pre.in, "Gadget-reduced QUBO")->required();
  pre_cmd->add_option("--map", pre.map, "Its reduction map (default <in>.map)");
  pre_cmd->add_option("--out", pre.out, "Output QUBO")->required();
  pre_cmd->add_option("--map-out", pre.map_out, "Output map (default <out>.map)");
  pre_cmd->add_option("--plan", pre.plan_in, "Plan file");
  pre_cmd->add_option("--plan-out", pre.plan_out, "Write the applied plan");
  pre_cmd->add_option("--star", pre.star, "Leaves of the default star (center m-1, leaves 0..k-1)");
  pre_cmd->add_option("--center", pre.center, "Star center");
  pre_cmd->add_option("--leaves", pre.leaves, "Star leaves");
  pre_cmd->add_option("--color", pre.colour, "Star colour")->check(CLI::Range(0, 1));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Minimize a problem file");
  solve_cmd->add_option("--in", solve.in, "Problem file")->required();
  solve_cmd->add_option("--out", solve.out, "Assignment file");
  solve_cmd->add_option("--coloring", solve.coloring, "Colouring file");
  solve_cmd->add_flag("--brute", solve.brute, "Exhaustive search (at most 28 variables)");
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--restarts", solve.restarts, "Annealing restarts")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--t-start", solve.t_start, "Initial temperature");
  solve_cmd->add_option("--t-end", solve.t_end, "Final temperature");
  solve_cmd->add_option("--sweeps", solve.sweeps, "Sweeps per restart");
  solve_cmd->add_option("--threads", solve.threads, "Worker threads (0 = hardware)");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Count monochromatic cliques of a colouring");
  verify_cmd->add_option("--coloring", ver.coloring, "Colouring file")->required();
  verify_cmd->add_option("--graph", ver.graph, "Graph file (default: complete graph)");
  verify_cmd->add_option("--complete", ver.complete, "Use K_n");
  verify_cmd->add_option("--k", ver.k, "Clique size")->check(CLI::Range(2, 64));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Rerun the classical benchmark tables");
  bench_cmd->add_option("suite", bench.suite, "table1 or table2")
      ->required()
      ->check(CLI::IsMember({"table1", "table2"}));
  bench_cmd->add_option("--n-max", bench.n_max, "Largest n for table1");
  bench_cmd->add_option("--trials", bench.trials, "Repetitions")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--time-limit", bench.time_limit, "Seconds per anneal")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*build_cmd) return cmd_build(build);
    if (*reduce_cmd) return cmd_reduce(reduce);
    if (*pre_cmd) return cmd_precolor(pre);
    if (*solve_cmd) return cmd_solve(solve);
    if (*verify_cmd) return cmd_verify(ver);
    if (*bench_cmd) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
