#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dualkosz/error.hpp"
#include "dualkosz/io.hpp"
#include "dualkosz/omv_reduction.hpp"
#include "dualkosz/oracle.hpp"
#include "dualkosz/random_instance.hpp"
#include "dualkosz/solver_dual.hpp"
#include "dualkosz/solver_primal.hpp"

namespace dualkosz::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kStretchSchema = "dualkosz-stretch/1";
constexpr const char* kOmvSchema = "dualkosz-omv/1";

/// Bad flag values that CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Pretty-prints like json::dump(2), except floats always carry 17 significant digits.
void write_json(std::ostream& out, const json& j, int depth = 0) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_number_float()) {
    out << g17(j.get<double>());
  } else if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << json(key).dump() << ": ";
      write_json(out, value, depth + 1);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << close << '}';
  } else if (j.is_array() && !j.empty()) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_json(out, j[i], depth + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << ']';
  } else {
    out << j.dump();
  }
}

EdgeList read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dualkosz::ParseError(path, 0, "cannot open file");
  return parse_edge_list(in, path);
}

SupplyVector read_supply(const std::string& path, const EdgeList& edges) {
  std::ifstream in(path);
  if (!in) throw dualkosz::ParseError(path, 0, "cannot open file");
  return parse_supply(in, edges.graph.num_vertices(), edges.one_based, path);
}

/// Translates a vertex id from the file's numbering.
VertexId internal_vertex(std::size_t id, const EdgeList& edges) {
  const std::size_t base = edges.one_based ? 1 : 0;
  if (id < base || id - base >= edges.graph.num_vertices()) {
    throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(id) + " is not in the graph");
  }
  return id - base;
}

template <class Enum>
Enum parse_choice(const std::optional<Enum>& parsed, const std::string& name) {
  if (!parsed) throw UsageError("unknown value '" + name + "'");
  return *parsed;
}

// --- solve -----------------------------------------------------------------

struct SolveOptions {
  std::string graph;
  std::string supply;
  std::string out;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::string tree = "mst";
  std::string backend = "table";
  std::string trace = "none";
  bool oracle_check = false;
  std::size_t root = 0;
  std::size_t max_iters = 0;
  CLI::Option* root_flag = nullptr;
  CLI::Option* max_iters_flag = nullptr;
};

constexpr const char* kSolveFields = R"(Output: one JSON document ()"
                                     "dualkosz-result/1"
                                     R"().
  schema        "dualkosz-result/1"
  graph, supply input paths
  vertices      vertex count; edges: edge count
  vertex_base   0 or 1; every vertex id below is 0-based, add vertex_base
                for the id used in the input files
  epsilon, seed, tree, root, backend   the settings used
  tau           sum over tree edges of r / R(C); equals the tree's stretch
  iterations    K = ceil(tau ln(1/epsilon)) unless --max-iters is given
  potentials    p per vertex, shifted so p(root) = 0
  trace         per iteration (with --trace iter|gap):
                  t         0-based iteration
                  edge      0-based input line order of the sampled tree edge
                  cut       child vertex of that edge (the raised side)
                  residual  S(C) - f(C) before the step
                  delta     potential increase of the cut, residual * R(C)
                  bound     B(p) = 2 b.p - p^T L p after the step
                  gap       E(f_T) - B(p) before the step (--trace gap only)
  oracle        with --oracle-check: relative_l_error = |p* - p|_L^2 / |p*|_L^2
Exit codes: 0 ok, 2 parse error, 3 validation error, 4 bad flags.)";

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const EdgeList edges = read_graph(o.graph);
  const SupplyVector raw = read_supply(o.supply, edges);
  const WeightedGraph& g = edges.graph;
  const SupplyVector b = validate_instance(g, raw);

  SolverConfig config;
  config.epsilon = o.epsilon;
  config.seed = o.seed;
  config.tree_strategy = parse_choice(parse_tree_strategy(o.tree), o.tree);
  config.backend = parse_choice(parse_backend(o.backend), o.backend);
  config.trace = parse_choice(parse_trace_level(o.trace), o.trace);
  config.oracle_check = o.oracle_check;
  if (o.root_flag->count()) config.root = internal_vertex(o.root, edges);
  if (o.max_iters_flag->count()) config.max_iters = o.max_iters;

  const RootedTree tree = build_tree(g, config.tree_strategy, config.root);
  const SolveResult r = solve(g, tree, b, config);

  json doc;
  doc["schema"] = kResultSchema;
  doc["graph"] = o.graph;
  doc["supply"] = o.supply;
  doc["vertices"] = g.num_vertices();
  doc["edges"] = g.num_edges();
  doc["vertex_base"] = edges.one_based ? 1 : 0;
  doc["epsilon"] = o.epsilon;
  doc["seed"] = o.seed;
  doc["tree"] = to_string(config.tree_strategy);
  doc["root"] = config.root;
  doc["backend"] = to_string(config.backend);
  doc["tau"] = r.tau;
  doc["iterations"] = r.iterations;
  doc["potentials"] = r.p.values();
  json trace = json::array();
  for (const IterationTrace& row : r.trace) {
    json item;
    item["t"] = row.t;
    item["edge"] = row.tree_edge;
    item["cut"] = row.cut;
    item["residual"] = row.residual;
    item["delta"] = row.delta;
    item["bound"] = row.bound;
    if (row.gap) item["gap"] = *row.gap;
    trace.push_back(std::move(item));
  }
  doc["trace"] = std::move(trace);
  if (r.final_error_vs_oracle) doc["oracle"] = {{"relative_l_error", *r.final_error_vs_oracle}};

  std::ostringstream buf;
  write_json(buf, doc);
  buf << '\n';
  const std::string text = buf.str();
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << text)) throw UsageError("cannot write " + o.out);
  }
  return kExitOk;
}

// --- bench -----------------------------------------------------------------

struct BenchOptions {
  std::size_t n = 50;
  std::size_t m = 150;
  std::size_t trials = 5;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::string solvers = "dual";
  std::string csv_out;
  std::size_t jobs = 1;
  bool no_timing = false;
};

constexpr const char* kBenchFields = R"(Output: CSV (dualkosz-bench/1) with a header row, one row per trial and solver,
ordered by trial then solver (dual before primal):
  trial             0-based trial index; trial i uses instance stream i of --seed
  solver            dual or primal
  tau               dual: sum over tree edges of r / R(C)
                    primal: sum over off-tree edges of cycle resistance / r
  K                 iterations run
  relative_l_error  |p* - p|_L^2 / |p*|_L^2 against the dense oracle
  wall_ms           solver wall time in milliseconds; 0 with --no-timing
Instances: random spanning tree plus extra edges between random distinct pairs,
resistances log-uniform in [0.1, 10], supplies uniform in [-1, 1] re-centered.
Floats are printed with 17 significant digits. With --no-timing the output is
byte-identical across runs and --jobs values.
Exit codes: 0 ok, 3 solver error, 4 bad flags.)";

struct BenchRow {
  std::size_t trial;
  const char* solver;
  double tau;
  std::size_t iterations;
  double error;
  double wall_ms;
};

double relative_error(const WeightedGraph& g, const PotentialVector& p, const PotentialVector& pstar) {
  const double scale = quadratic_form(g, pstar);
  const double err = lnorm_error(g, p, pstar);
  return scale > 0.0 ? err / scale : err;
}

std::vector<BenchRow> bench_trial(const BenchOptions& o, std::size_t trial, bool dual, bool primal) {
  Rng gen = make_stream(o.seed, stream::kInstance, trial);
  const Instance inst = random_instance({o.n, o.m, 0.1, 10.0}, gen);
  const RootedTree tree = build_tree(inst.graph, TreeStrategy::MinResistanceMST);
  const PotentialVector pstar = dense_solve(inst.graph, inst.supply, tree.root());
  Rng seeds = make_stream(o.seed, stream::kSolver, trial);
  SolverConfig config;
  config.epsilon = o.epsilon;
  config.seed = seeds();

  std::vector<BenchRow> rows;
  auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return std::make_pair(std::move(result), o.no_timing ? 0.0 : ms);
  };
  if (dual) {
    auto [r, ms] = timed([&] { return solve(inst.graph, tree, inst.supply, config); });
    rows.push_back({trial, "dual", r.tau, r.iterations, relative_error(inst.graph, r.p, pstar), ms});
  }
  if (primal) {
    auto [r, ms] = timed([&] { return solve_primal(inst.graph, tree, inst.supply, config); });
    rows.push_back({trial, "primal", r.cycle_tau, r.iterations, relative_error(inst.graph, r.p, pstar), ms});
  }
  return rows;
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  if (o.n < 2) throw UsageError("--n must be at least 2");
  if (o.m + 1 < o.n) throw UsageError("--m must be at least n-1 = " + std::to_string(o.n - 1));
  if (o.n > kDenseSolveMaxVertices) {
    throw UsageError("--n above " + std::to_string(kDenseSolveMaxVertices) + " exceeds the oracle's limit");
  }
  if (!(o.epsilon > 0.0 && o.epsilon <= 1.0)) throw UsageError("--epsilon must lie in (0, 1]");
  if (o.jobs == 0) throw UsageError("--jobs must be at least 1");
  const bool dual = o.solvers != "primal";
  const bool primal = o.solvers != "dual";

  std::vector<std::vector<BenchRow>> results(o.trials);
  std::vector<std::string> failures(o.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < o.trials; t = next++) {
      try {
        results[t] = bench_trial(o, t, dual, primal);
      } catch (const std::exception& e) {
        failures[t] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::min(o.jobs, o.trials); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t t = 0; t < o.trials; ++t) {
    if (!failures[t].empty()) throw Error(ErrorKind::InvalidArgument, "trial " + std::to_string(t) + ": " + failures[t]);
  }

  std::ostringstream csv;
  csv << "trial,solver,tau,K,relative_l_error,wall_ms\n";
  for (const auto& rows : results) {
    for (const BenchRow& r : rows) {
      csv << r.trial << ',' << r.solver << ',' << g17(r.tau) << ',' << r.iterations << ',' << g17(r.error) << ','
          << g17(r.wall_ms) << '\n';
    }
  }
  if (o.csv_out.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(o.csv_out, std::ios::binary);
    if (!file || !(file << csv.str())) throw UsageError("cannot write " + o.csv_out);
  }
  return kExitOk;
}

// --- stretch ---------------------------------------------------------------

struct StretchOptions {
  std::string graph;
  std::string tree = "mst";
  std::size_t root = 0;
  CLI::Option* root_flag = nullptr;
};

constexpr const char* kStretchFields = R"(Output: "key value" lines (dualkosz-stretch/1):
  schema               dualkosz-stretch/1
  vertices, edges      graph size
  tree, root           spanning tree strategy and root (input numbering)
  stretch              st_T(G), summed over every graph edge
  tau                  sum over tree edges of r / R(C), computed from cut sums
  relative_difference  |stretch - tau| / max(|stretch|, |tau|)
  edge_stretch_min, _p50, _p90, _p99, _max
                       nearest-rank percentiles of the per-edge stretch
Exit codes: 0 ok, 1 relative_difference above 1e-9, 2 parse error,
3 validation error (e.g. disconnected graph), 4 bad flags.)";

double percentile(const std::vector<double>& sorted, double pct) {
  const auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

int cmd_stretch(const StretchOptions& o, std::ostream& out) {
  const EdgeList edges = read_graph(o.graph);
  const WeightedGraph& g = edges.graph;
  const TreeStrategy strategy = parse_choice(parse_tree_strategy(o.tree), o.tree);
  const VertexId root = o.root_flag->count() ? internal_vertex(o.root, edges) : 0;
  const RootedTree tree = build_tree(g, strategy, root);
  const double st = stretch(g, tree);
  const double t = tau(g, tree);
  const double scale = std::max(std::abs(st), std::abs(t));
  const double diff = scale > 0.0 ? std::abs(st - t) / scale : 0.0;
  std::vector<double> per_edge = edge_stretches(g, tree);
  std::sort(per_edge.begin(), per_edge.end());

  out << "schema " << kStretchSchema << '\n'
      << "vertices " << g.num_vertices() << '\n'
      << "edges " << g.num_edges() << '\n'
      << "tree " << to_string(strategy) << '\n'
      << "root " << root + (edges.one_based ? 1 : 0) << '\n'
      << "stretch " << g17(st) << '\n'
      << "tau " << g17(t) << '\n'
      << "relative_difference " << g17(diff) << '\n'
      << "edge_stretch_min " << g17(per_edge.front()) << '\n'
      << "edge_stretch_p50 " << g17(percentile(per_edge, 50)) << '\n'
      << "edge_stretch_p90 " << g17(percentile(per_edge, 90)) << '\n'
      << "edge_stretch_p99 " << g17(percentile(per_edge, 99)) << '\n'
      << "edge_stretch_max " << g17(per_edge.back()) << '\n';
  return diff <= 1e-9 ? kExitOk : kExitCheckFailed;
}

// --- omv-demo --------------------------------------------------------------

struct OmvOptions {
  std::size_t n = 16;
  std::size_t queries = 0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string backend = "table";
  CLI::Option* queries_flag = nullptr;
};

constexpr const char* kOmvFields = R"(Output: "key value" lines (dualkosz-omv/1):
  schema      dualkosz-omv/1
  n           matrix order; the TreeFlow instance has 2n+1 vertices
  queries     number of (u, v) pairs answered online
  alpha       findflow approximation factor (1 = exact)
  backend     TreeFlow backend
  K           value offset used by the reduction
  operations  total addvalue + findflow calls over all queries
  positives   queries whose answer is 1
  last line   "X/Y agree": answers matching the brute-force u^T M v
Exit codes: 0 all agree, 1 any mismatch, 4 bad flags.)";

int cmd_omv(const OmvOptions& o, std::ostream& out) {
  if (o.n == 0) throw UsageError("--n must be at least 1");
  if (!(o.alpha >= 1.0) || !std::isfinite(o.alpha)) throw UsageError("--alpha must be a finite value >= 1");
  const Backend backend = parse_choice(parse_backend(o.backend), o.backend);
  const std::size_t queries = o.queries_flag->count() ? o.queries : o.n;

  Rng rng = make_stream(o.seed, stream::kQueries);
  const BitMatrix m = BitMatrix::random(o.n, o.n, std::min(1.0, 2.0 / static_cast<double>(o.n)), rng);
  ReductionSession session(build_instance(m, o.alpha), backend, o.seed);
  std::size_t agree = 0;
  std::size_t operations = 0;
  std::size_t positives = 0;
  for (std::size_t q = 0; q < queries; ++q) {
    const BitVector u = random_bits(o.n, 0.3, rng);
    const BitVector v = random_bits(o.n, 0.3, rng);
    const QueryTranscript tr = session.answer_query(u, v);
    operations += tr.ops.size();
    positives += tr.answer;
    agree += tr.answer == boolean_vmv(m, u, v);
  }
  out << "schema " << kOmvSchema << '\n'
      << "n " << o.n << '\n'
      << "queries " << queries << '\n'
      << "alpha " << g17(o.alpha) << '\n'
      << "backend " << to_string(backend) << '\n'
      << "K " << g17(session.instance().big_value) << '\n'
      << "operations " << operations << '\n'
      << "positives " << positives << '\n'
      << agree << '/' << queries << " agree\n";
  return agree == queries ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual KOSZ Laplacian solver: solve Lp = b by random fundamental-cut updates."};
  app.name("dualkosz");
  app.require_subcommand(1);

  const std::vector<std::string> trees{"mst", "bfs", "exhaustive"};
  const std::vector<std::string> backends{"table", "naive"};

  SolveOptions so;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve Lp = b for an edge list and a supply file");
  solve_cmd->add_option("graph", so.graph, "Edge list: lines \"u v r\", '#' comments; 1-based unless an id 0 appears")
      ->required();
  solve_cmd->add_option("supply", so.supply, "Supply file: lines \"v b\"; unlisted vertices get 0")->required();
  solve_cmd->add_option("--epsilon", so.epsilon, "Target relative error in (0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  solve_cmd->add_option("--seed", so.seed, "Seed for edge sampling")->capture_default_str();
  solve_cmd->add_option("--tree", so.tree, "Spanning tree strategy")->check(CLI::IsMember(trees))->capture_default_str();
  solve_cmd->add_option("--backend", so.backend, "TreeFlow backend")
      ->check(CLI::IsMember(backends))
      ->capture_default_str();
  solve_cmd->add_option("--trace", so.trace, "Per-iteration trace: none, iter, or gap (adds the duality gap)")
      ->check(CLI::IsMember({"none", "iter", "gap"}))
      ->capture_default_str();
  solve_cmd->add_flag("--oracle-check", so.oracle_check, "Compare against a dense direct solve");
  so.root_flag = solve_cmd->add_option("--root", so.root, "Tree root, in the input's numbering (default: first vertex)");
  so.max_iters_flag = solve_cmd->add_option("--max-iters", so.max_iters, "Run exactly this many iterations");
  solve_cmd->add_option("--out", so.out, "Write the JSON document here instead of stdout");
  solve_cmd->footer(kSolveFields);

  BenchOptions bo;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark solvers on seeded random instances");
  bench_cmd->add_option("--n", bo.n, "Vertices per instance")->capture_default_str();
  bench_cmd->add_option("--m", bo.m, "Edges per instance, at least n-1")->capture_default_str();
  bench_cmd->add_option("--trials", bo.trials, "Number of instances")->capture_default_str();
  bench_cmd->add_option("--epsilon", bo.epsilon, "Target relative error in (0, 1]")->capture_default_str();
  bench_cmd->add_option("--seed,--seeds", bo.seed, "Base seed for instances and solvers")->capture_default_str();
  bench_cmd->add_option("--solvers", bo.solvers, "dual, primal, or both")
      ->check(CLI::IsMember({"dual", "primal", "both"}))
      ->capture_default_str();
  bench_cmd->add_option("--csv-out", bo.csv_out, "Write the CSV here instead of stdout");
  bench_cmd->add_option("--jobs", bo.jobs, "Trials run concurrently; output order is unaffected")
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", bo.no_timing, "Write wall_ms as 0 so output is reproducible");
  bench_cmd->footer(kBenchFields);

  StretchOptions sto;
  CLI::App* stretch_cmd = app.add_subcommand("stretch", "Report stretch and tau for a spanning tree of a graph");
  stretch_cmd->add_option("graph", sto.graph, "Edge list file")->required();
  stretch_cmd->add_option("--tree", sto.tree, "Spanning tree strategy")
      ->check(CLI::IsMember(trees))
      ->capture_default_str();
  sto.root_flag = stretch_cmd->add_option("--root", sto.root, "Tree root, in the input's numbering");
  stretch_cmd->footer(kStretchFields);

  OmvOptions oo;
  CLI::App* omv_cmd = app.add_subcommand("omv-demo", "Answer random u^T M v queries through TreeFlow operations");
  omv_cmd->add_option("--n", oo.n, "Matrix order")->capture_default_str();
  oo.queries_flag = omv_cmd->add_option("--queries", oo.queries, "Number of queries (default: n)");
  omv_cmd->add_option("--alpha", oo.alpha, "findflow approximation factor, >= 1")->capture_default_str();
  omv_cmd->add_option("--seed", oo.seed, "Seed for the matrix, queries and noise")->capture_default_str();
  omv_cmd->add_option("--backend", oo.backend, "TreeFlow backend")
      ->check(CLI::IsMember(backends))
      ->capture_default_str();
  omv_cmd->footer(kOmvFields);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(so, out);
    if (bench_cmd->parsed()) return cmd_bench(bo, out);
    if (stretch_cmd->parsed()) return cmd_stretch(sto, out);
    if (omv_cmd->parsed()) return cmd_omv(oo, out);
  } catch (const dualkosz::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidationError;
  }
  return kExitUsageError;
}

}  // namespace dualkosz::cli
