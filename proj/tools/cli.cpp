#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>

#include <CLI11.hpp>

#include "gapratio/coreset.hpp"
#include "gapratio/error.hpp"
#include "gapratio/fpi.hpp"
#include "gapratio/geometry2d.hpp"
#include "gapratio/measures.hpp"
#include "gapratio/metric.hpp"
#include "gapratio/oracle.hpp"
#include "gapratio/stream.hpp"
#include "io.hpp"
#include "json_text.hpp"

namespace gapratio::cli {
namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string points;
  std::string graph;
  std::string sample_file;
  std::string indices;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::optional<std::uint64_t> seed;
  std::uint64_t guard = 0;
  bool force = false;
  bool exact = false;
  bool floating = false;
  unsigned threads = 1;
  bool verbose = false;
  bool timing = false;
  std::string space;
  std::string kind = "both";
  std::vector<std::size_t> two_clique;
  double cross = 10.0;
};

unsigned default_threads() {
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

EvalMode mode_of(const Options& o) {
  if (o.exact) return EvalMode::exact;
  if (o.floating) return EvalMode::floating;
  return EvalMode::automatic;
}

SearchOptions search_of(const Options& o) {
  SearchOptions s;
  s.guard = o.guard;
  s.force = o.force;
  s.threads = o.threads;
  s.mode = mode_of(o);
  return s;
}

Json indices_json(std::span<const Index> v) { return Json(std::vector<Index>(v.begin(), v.end())); }

Json gap_json(const GapReport& g) {
  Json j;
  j["r"] = g.r;
  j["R"] = g.R;
  j["gap_ratio"] = g.gap_ratio;
  j["closest_pair"] = {g.closest_pair.first, g.closest_pair.second};
  j["farthest_site"] = g.farthest_site;
  j["exact"] = g.exact;
  if (g.exact) {
    const Ratio q = g.exact_ratio();
    const std::int64_t d = std::gcd(q.num, q.den);
    j["gap_ratio_exact"] = std::to_string(q.num / d) + "/" + std::to_string(q.den / d);
    j["pair2x"] = g.pair2x;
    j["cover2x"] = g.cover2x;
  }
  return j;
}

Json vec2_json(Vec2 p) { return Json::array({p.x, p.y}); }

// The metric a command runs on, plus what the report says about its source.
struct Input {
  std::optional<std::vector<std::vector<double>>> rows;
  std::optional<PointCloud> cloud;
  std::optional<Graph> graph;
  std::optional<FiniteMetric> metric;
  Json digest;
  Json warnings = Json::array();
};

Input load(const Options& o, bool need_metric, bool points_only = false) {
  if (o.points.empty() == o.graph.empty()) {
    throw UsageError(points_only ? "--points is required" : "exactly one of --points or --graph is required");
  }
  if (points_only && !o.graph.empty()) throw UsageError("this command takes --points only");
  Input in;
  if (!o.points.empty()) {
    in.rows = io::read_points_file(o.points);
    in.cloud = PointCloud::from_rows(*in.rows);
    if (in.cloud->empty()) throw Error(Errc::empty_input, o.points + " holds no points");
    in.digest["kind"] = "points";
    in.digest["sites"] = in.cloud->size();
    in.digest["dimension"] = in.cloud->dim();
    if (in.cloud->duplicates_removed() > 0) {
      in.digest["duplicates_removed"] = in.cloud->duplicates_removed();
      in.warnings.push_back(std::to_string(in.cloud->duplicates_removed()) +
                            " duplicate points removed; indices refer to the deduplicated sites");
    }
    if (need_metric) in.metric = build_euclidean(*in.cloud);
  } else {
    in.graph = io::read_graph_file(o.graph);
    in.digest["kind"] = "graph";
    in.digest["vertices"] = in.graph->size();
    in.digest["edges"] = in.graph->edges().size();
    in.digest["weighted"] = in.graph->weighted();
    if (need_metric) in.metric = build_graph_metric(*in.graph);
  }
  return in;
}

void need_k(const Options& o) {
  if (o.k == 0) throw UsageError("-k is required");
}

// ---------------------------------------------------------------------------

Json cmd_evaluate(const Options& o, Input& in) {
  std::vector<Index> idx;
  if (!o.sample_file.empty() == !o.indices.empty()) {
    throw UsageError("exactly one of --sample or --indices is required");
  }
  idx = o.sample_file.empty() ? io::parse_index_list(o.indices) : io::read_sample_file(o.sample_file);
  const Sample s(idx, in.metric->size());
  Json j;
  j["sample"] = indices_json(s.indices());
  j["report"] = gap_json(gap_ratio(*in.metric, s, mode_of(o)));
  return j;
}

Json cmd_fpi(const Options& o, Input& in) {
  need_k(o);
  const FpiResult f = farthest_point_insertion(*in.metric, o.k, mode_of(o));
  Json j;
  j["sample"] = indices_json(f.sample.indices());
  j["order"] = indices_json(f.order);
  j["report"] = gap_json(f.trace.final);
  Json steps = Json::array();
  for (const auto& st : f.trace.steps) {
    steps.push_back({{"size", st.size}, {"chosen", st.chosen}, {"R_before", st.R_before},
                     {"r_after", st.r_after}, {"R_after", st.R_after}});
  }
  j["trace"] = std::move(steps);
  return j;
}

Json cmd_coreset(const Options& o, Input& in) {
  need_k(o);
  const double eps = o.epsilon > 0.0 ? o.epsilon : 0.3;
  const ApproxResult a = approx_sample(*in.cloud, *in.metric, o.k, eps, o.seed, search_of(o));
  Json j;
  j["sample"] = indices_json(a.sample.indices());
  j["report"] = gap_json(a.report);
  j["coreset_report"] = gap_json(a.coreset_report);
  j["params"] = {{"epsilon", a.params.eps}, {"eps1", a.params.eps1}, {"eps2", a.params.eps2},
                 {"dimension", a.params.dim}, {"fpi_cover_radius", a.params.cover_radius_fpi}};
  Json c;
  c["size"] = a.grid.size();
  c["cell_side"] = a.grid.cell_side;
  c["origin"] = a.grid.origin;
  if (a.params.eps2 > 0.0) c["cell_bound"] = cell_count_bound(o.k, a.params.eps1, a.params.dim);
  c["representatives"] = indices_json(a.grid.representatives());
  j["coreset"] = std::move(c);
  j["subsets_examined"] = a.examined;
  if (o.seed) j["seed"] = *o.seed;
  return j;
}

Json cmd_stream(const Options& o, Input& in) {
  need_k(o);
  const double eps = o.epsilon > 0.0 ? o.epsilon : 0.1;
  const auto& rows = *in.rows;
  StreamState st(o.k, eps, in.cloud->dim());
  for (const auto& row : rows) st.ingest(row);
  if (!st.initialized()) {
    throw Error(Errc::invalid_argument, "stream holds fewer than k = " + std::to_string(o.k) +
                                            " distinct points");
  }
  const StreamResult res = stream_finalize(st, o.k, search_of(o));

  // Stream positions -> deduplicated site indices.
  std::map<std::vector<double>, Index> site_of;
  for (Index i = 0; i < in.cloud->size(); ++i) site_of.emplace(in.cloud->point(i), i);
  std::vector<Index> sites;
  for (Index pos : res.sample.indices()) sites.push_back(site_of.at(rows[pos]));
  const Sample over_m(sites, in.cloud->size());

  Json j;
  j["sample_positions"] = indices_json(res.sample.indices());
  j["sample"] = indices_json(over_m.indices());
  j["report"] = gap_json(gap_ratio(*in.metric, over_m, mode_of(o)));
  j["coreset_report"] = gap_json(res.coreset_report);
  const StreamParams& p = st.params();
  j["params"] = {{"epsilon", p.eps}, {"eps1", p.eps1}, {"eps3", p.eps3}, {"dimension", p.dim}};
  Json centers = Json::array();
  for (const auto& c : st.centers()) centers.push_back(c.position);
  Json s;
  s["points_seen"] = st.points_seen();
  s["radius_threshold"] = st.radius();
  s["centers"] = std::move(centers);
  s["cell_side"] = st.cell_side();
  s["cells"] = st.cells().size();
  s["peak_cells"] = st.peak_cells();
  s["doubling_phases"] = st.phases();
  s["cell_bound"] = cell_count_bound(o.k + 1, p.eps1, p.dim, kStreamCellBoundConstant);
  s["coreset_positions"] = indices_json(res.coreset);
  j["stream"] = std::move(s);
  j["subsets_examined"] = res.examined;
  return j;
}

Json cmd_oracle(const Options& o, Input& in) {
  need_k(o);
  const OracleResult r = optimal_gap_ratio(*in.metric, o.k, search_of(o));
  Json j;
  j["sample"] = indices_json(r.best_sample.indices());
  j["report"] = gap_json(r.best_report);
  j["R_opt"] = r.R_opt;
  j["R_opt_sample"] = indices_json(r.R_opt_witness);
  j["r_opt"] = r.r_opt;
  j["r_opt_sample"] = indices_json(r.r_opt_witness);
  j["subsets_examined"] = r.subsets_examined;
  if (in.graph && !in.graph->weighted()) j["graph_lower_bound"] = analytic_bound(BoundKind::graph);
  return j;
}

Json cmd_square(const Options&, Input& in) {
  const SquareGapReport g = gap_report_unit_square(*in.cloud);
  Json j;
  j["r"] = g.r;
  j["R"] = g.R;
  j["gap_ratio"] = g.gap_ratio;
  j["closest_pair"] = {g.closest_pair.first, g.closest_pair.second};
  j["farthest_point"] = vec2_json(g.farthest_point);
  j["candidate_kind"] = to_string(g.candidate_kind);
  j["lower_bound"] = analytic_bound(BoundKind::unit_square, in.cloud->size());
  return j;
}

Json cmd_audit(const Options&, Input& in) {
  const AngleAuditReport a = delaunay_angle_audit(*in.cloud);
  Json j;
  j["gap_ratio"] = a.g;
  j["r"] = a.r;
  j["R"] = a.R;
  j["theta_bound"] = a.theta_bound;
  j["triangles"] = a.triangles;
  j["interior_triangles"] = a.interior_triangles;
  j["min_interior_angle"] = a.min_interior_angle ? Json(*a.min_interior_angle) : Json(nullptr);
  Json v = Json::array();
  for (const auto& x : a.violations) {
    v.push_back({{"triangle", x.triangle}, {"min_angle", x.min_angle}, {"max_angle", x.max_angle}});
  }
  j["violations"] = std::move(v);
  return j;
}

Json cmd_discrepancy(const Options&, Input& in) {
  const auto sites = to_vec2(*in.cloud);
  const DiscrepancyReport d = star_discrepancy(sites);
  Json j;
  j["d_star"] = d.d_star;
  j["witness"] = {{"x", d.x}, {"y", d.y}, {"box", d.open ? "open" : "closed"}};
  j["n"] = d.n;
  if (sites.size() >= 2) {
    const SquareGapReport g = gap_report_unit_square(sites);
    const double bound = gap_based_discrepancy_bound(sites, g.r, g.R);
    j["gap_bound"] = {{"r", g.r}, {"R", g.R}, {"bound", bound}, {"holds", d.d_star <= bound + 1e-9}};
  }
  return j;
}

Json matrix_json(const FiniteMetric& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.size(); ++i) {
    const auto row = m.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

Json cmd_reduce(const Options& o) {
  Json j;
  if (!o.two_clique.empty()) {
    if (!o.graph.empty() || !o.points.empty()) throw UsageError("--two-clique takes no input file");
    if (o.two_clique.size() != 2) throw UsageError("--two-clique needs N M");
    const std::size_t n = o.two_clique[0], m = o.two_clique[1];
    const double eps = o.epsilon > 0.0 ? o.epsilon : 0.5;
    const FiniteMetric met = two_clique_metric(n, m, eps, o.cross);
    std::vector<Index> s(n);
    std::iota(s.begin(), s.end(), Index{0});
    s.push_back(n);
    j["construction"] = "two-clique";
    j["params"] = {{"n", n}, {"m", m}, {"epsilon", eps}, {"cross", o.cross}};
    j["sample"] = s;
    j["report"] = gap_json(gap_ratio(met, s, mode_of(o)));
    j["matrix"] = matrix_json(met);
    return j;
  }
  if (o.graph.empty()) throw UsageError("--graph or --two-clique is required");
  const Graph g = io::read_graph_file(o.graph);
  const FiniteMetric met = genmet_reduce(g);
  j["construction"] = "genmet";
  j["vertices"] = g.size();
  j["matrix"] = matrix_json(met);
  return j;
}

Json cmd_bounds(const Options& o) {
  if (o.space.empty()) throw UsageError("--space is required");
  const auto kind = parse_bound_kind(o.space);
  if (!kind) throw UsageError("--space must be graph, unit-square or path-connected");
  Json j;
  j["space"] = to_string(*kind);
  if (o.k) j["k"] = o.k;
  j["bound"] = analytic_bound(*kind, o.k ? std::optional<std::size_t>(o.k) : std::nullopt);
  return j;
}

Json cert_json(const Certificate& c) {
  Json j;
  j["combinatorial"] = c.left;
  j["metric"] = c.right;
  j["agree"] = c.agree;
  j["combinatorial_witness"] = c.left_witness ? indices_json(*c.left_witness) : Json(nullptr);
  j["metric_witness"] = c.right_witness ? indices_json(*c.right_witness) : Json(nullptr);
  if (c.counterexample) j["counterexample"] = indices_json(*c.counterexample);
  j["subsets_examined"] = c.subsets_examined;
  return j;
}

Json cmd_certify(const Options& o) {
  if (o.graph.empty()) throw UsageError("--graph is required");
  need_k(o);
  if (o.kind != "genmet" && o.kind != "eds" && o.kind != "both") {
    throw UsageError("--kind must be genmet, eds or both");
  }
  const Graph g = io::read_graph_file(o.graph);
  const std::uint64_t guard = o.force ? UINT64_MAX : (o.guard ? o.guard : kOracleGuard);
  Json j;
  j["k"] = o.k;
  if (o.kind != "eds") j["genmet"] = cert_json(check_genmet_equivalence(g, o.k, guard));
  if (o.kind != "genmet") j["eds"] = cert_json(check_eds_equivalence(g, o.k, guard));
  return j;
}

void summarize(std::ostream& err, const std::string& cmd, const Json& result) {
  err << cmd << ":";
  for (const char* key : {"gap_ratio", "d_star", "bound"}) {
    if (result.contains(key)) err << " " << key << " = " << result[key].dump();
  }
  if (result.contains("report")) err << " gap_ratio = " << result["report"]["gap_ratio"].dump();
  if (result.contains("sample")) err << " sample = " << result["sample"].dump();
  err << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform sampling of metric spaces by gap ratio"};
  app.name(args.empty() ? "gapratio" : args.front());
  app.require_subcommand(1, 1);
  Options o;
  o.threads = default_threads();

  auto common = [&](CLI::App* sub) {
    sub->add_option("-k", o.k, "Sample size");
    sub->add_option("--threads", o.threads, "Worker threads for subset enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", o.verbose, "Print a summary on stderr");
    sub->add_flag("--timing", o.timing, "Add wall_time_ms to the report");
  };
  auto inputs = [&](CLI::App* sub) {
    sub->add_option("--points", o.points, "Points file");
    sub->add_option("--graph", o.graph, "Graph file");
  };
  auto arithmetic = [&](CLI::App* sub) {
    auto* ex = sub->add_flag("--exact", o.exact, "Require exact integer evaluation");
    auto* fl = sub->add_flag("--float", o.floating, "Force floating-point evaluation");
    ex->excludes(fl);
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--guard", o.guard, "Cap on the number of enumerated subsets");
    sub->add_flag("--force", o.force, "Ignore the enumeration cap");
  };

  auto* evaluate = app.add_subcommand("evaluate", "Gap ratio of a given sample");
  inputs(evaluate), common(evaluate), arithmetic(evaluate);
  evaluate->add_option("--sample", o.sample_file, "Sample file, one index per line");
  evaluate->add_option("--indices", o.indices, "Comma-separated sample indices");

  auto* fpi = app.add_subcommand("fpi", "Farthest-point insertion");
  inputs(fpi), common(fpi), arithmetic(fpi);

  auto* coreset = app.add_subcommand("coreset", "Grid-coreset (1+eps) sampler");
  inputs(coreset), common(coreset), arithmetic(coreset), search(coreset);
  coreset->add_option("--epsilon", o.epsilon, "Accuracy, 0 < eps < 1/2 (default 0.3)");
  coreset->add_option("--seed", o.seed, "Seed for random cell representatives");

  auto* stream = app.add_subcommand("stream", "One-pass streaming sampler over the points file");
  inputs(stream), common(stream), arithmetic(stream), search(stream);
  stream->add_option("--epsilon", o.epsilon, "Accuracy, 0 < eps < 1/8 (default 0.1)");
  stream->add_option("--seed", o.seed, "Accepted for uniformity; the stream is deterministic");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimal gap ratio");
  inputs(oracle), common(oracle), arithmetic(oracle), search(oracle);

  auto* square = app.add_subcommand("square", "Gap ratio of points over the unit square");
  inputs(square), common(square);

  auto* audit = app.add_subcommand("delaunay-audit", "Angle audit of the Delaunay triangulation");
  inputs(audit), common(audit);

  auto* disc = app.add_subcommand("discrepancy", "Star discrepancy and its gap-based bound");
  inputs(disc), common(disc);

  auto* reduce = app.add_subcommand("reduce", "Metric constructions from graphs");
  inputs(reduce), common(reduce), arithmetic(reduce);
  reduce->add_option("--two-clique", o.two_clique, "Two-clique metric on N + M vertices")->expected(2);
  reduce->add_option("--epsilon", o.epsilon, "Gap ratio of the two-clique sample (default 0.5)");
  reduce->add_option("--cross", o.cross, "Distance between the cliques (default 10)");

  auto* bounds = app.add_subcommand("bounds", "Closed-form lower bounds on the gap ratio");
  common(bounds);
  bounds->add_option("--space", o.space, "graph, unit-square or path-connected");

  auto* certify = app.add_subcommand("certify", "Check the graph reductions exhaustively");
  inputs(certify), common(certify), search(certify);
  certify->add_option("--kind", o.kind, "genmet, eds or both (default both)");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Json report;
    report["command"] = cmd;
    Json echo;
    for (const auto* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "--timing" ||
          opt->get_name() == "--verbose" || opt->get_name() == "--threads") {
        continue;
      }
      const auto res = opt->results();
      echo[opt->get_name()] = res.size() == 1 ? Json(res.front()) : Json(res);
    }
    report["arguments"] = std::move(echo);

    Json result;
    Json warnings = Json::array();
    if (cmd == "reduce") {
      result = cmd_reduce(o);
    } else if (cmd == "bounds") {
      result = cmd_bounds(o);
    } else if (cmd == "certify") {
      result = cmd_certify(o);
    } else {
      const bool planar = cmd == "square" || cmd == "delaunay-audit" || cmd == "discrepancy";
      const bool points_only = planar || cmd == "coreset" || cmd == "stream";
      Input in = load(o, !planar, points_only);
      report["input"] = in.digest;
      warnings = in.warnings;
      if (cmd == "evaluate") result = cmd_evaluate(o, in);
      else if (cmd == "fpi") result = cmd_fpi(o, in);
      else if (cmd == "coreset") result = cmd_coreset(o, in);
      else if (cmd == "stream") result = cmd_stream(o, in);
      else if (cmd == "oracle") result = cmd_oracle(o, in);
      else if (cmd == "square") result = cmd_square(o, in);
      else if (cmd == "delaunay-audit") result = cmd_audit(o, in);
      else result = cmd_discrepancy(o, in);
    }
    report["result"] = result;
    report["warnings"] = std::move(warnings);
    if (o.timing) {
      report["wall_time_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    out << io::to_json_text(report);
    if (o.verbose) summarize(err, cmd, result);
    return 0;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gapratio::cli
