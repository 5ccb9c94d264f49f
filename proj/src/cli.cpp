/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The rsri Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "rsri/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "rsri/baselines.hpp"
#include "rsri/bounds.hpp"
#include "rsri/errors.hpp"
#include "rsri/harness.hpp"
#include "rsri/matrix_market.hpp"
#include "rsri/operators.hpp"
#include "rsri/pagerank.hpp"
#include "rsri/solvers.hpp"

namespace rsri {

namespace {

struct Options {
  std::string matrix, rhs, edges, vector_path;
  std::size_t synth_n = 0;
  std::size_t q = 3;
  std::uint64_t graph_seed = 0;
  double alpha = 0.85;
  std::optional<std::int64_t> source;

  std::size_t m = 64;
  std::size_t t = 100;
  std::optional<std::size_t> tmin;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  double oracle_tol = 1e-12;

  std::string out, svg, save_matrix, save_rhs;
  std::string m_list = "8,16,32,64,128,256,512,1024";
  bool no_timing = false;
  bool no_baseline = false;
  bool check = false;
  std::size_t top = 10;
  std::size_t walks = 1000;
  std::size_t steps = 1000;
};

void add_graph_flags(CLI::App* sub, Options& o) {
  sub->add_option("--edges", o.edges, "Edge list file (\"from to\" per line, '#' comments)");
  sub->add_option("--synth", o.synth_n, "Generate a random graph with this many nodes instead");
  sub->add_option("--q", o.q, "Out-degree bound of the generated graph")->capture_default_str();
  sub->add_option("--graph-seed", o.graph_seed, "Seed of the generated graph")->capture_default_str();
  sub->add_option("--alpha", o.alpha, "Damping factor")->capture_default_str();
  sub->add_option("--source", o.source, "Personalization node label (default: first node)");
}

void add_system_flags(CLI::App* sub, Options& o) {
  sub->add_option("--matrix", o.matrix, "Matrix Market file holding A");
  sub->add_option("--rhs", o.rhs, "Matrix Market vector file holding b");
  add_graph_flags(sub, o);
}

void add_solver_flags(CLI::App* sub, Options& o) {
  sub->add_option("--m", o.m, "Sparsity level")->capture_default_str();
  sub->add_option("--t", o.t, "Number of iterates")->capture_default_str();
  sub->add_option("--tmin", o.tmin, "Burn-in iterates excluded from the average (default t/2)");
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

void add_oracle_flag(CLI::App* sub, Options& o) {
  sub->add_option("--oracle-tol", o.oracle_tol, "1-norm residual target of the reference solve")
      ->capture_default_str();
}

struct Graph {
  PageRankProblem problem;
  std::vector<std::int64_t> labels;
  std::string description;
};

struct System {
  ColumnMatrix a;
  SparseVector b;
  std::optional<Graph> graph;
  std::string description;
};

Graph load_graph(const Options& o) {
  if (!o.edges.empty() && o.synth_n > 0) throw InputError("give either --edges or --synth, not both");
  EdgeList el;
  std::string description;
  if (!o.edges.empty()) {
    el = load_edge_list(o.edges);
    description = fmt::format("edges={}", o.edges);
  } else if (o.synth_n > 0) {
    el = synth_bounded_outdegree(o.synth_n, o.q, o.graph_seed);
    description = fmt::format("synth n={} q={} graph_seed={}", o.synth_n, o.q, o.graph_seed);
  } else {
    throw InputError("no graph given (use --edges or --synth)");
  }
  const std::size_t source = o.source ? el.index_of(*o.source) : 0;
  Graph g{build_problem(el, o.alpha, source), el.labels, ""};
  g.description = fmt::format("{} alpha={} source={}", description, o.alpha, el.labels.at(source));
  return g;
}

System load_system(const Options& o) {
  if (!o.matrix.empty() || !o.rhs.empty()) {
    if (o.matrix.empty() || o.rhs.empty()) throw InputError("--matrix and --rhs must be given together");
    if (!o.edges.empty() || o.synth_n > 0) throw InputError("give either a matrix or a graph, not both");
    System s{load_matrix_market(o.matrix), load_matrix_market_vector(o.rhs), std::nullopt, ""};
    if (s.a.dim() != s.b.dim()) {
      throw InputError(fmt::format("matrix is {0}x{0} but right-hand side has length {1}", s.a.dim(), s.b.dim()));
    }
    s.description = fmt::format("matrix={} rhs={}", o.matrix, o.rhs);
    return s;
  }
  Graph g = load_graph(o);
  System s{g.problem.A, g.problem.b, std::nullopt, g.description};
  s.graph = std::move(g);
  return s;
}

RsriConfig solver_config(const Options& o) {
  RsriConfig cfg;
  cfg.m = o.m;
  cfg.t = o.t;
  cfg.t_min = o.tmin.value_or(o.t / 2);
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.validate();
  return cfg;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::string label_of(const System& s, std::size_t i) {
  return s.graph ? std::to_string(s.graph->labels[i]) : std::to_string(i);
}

std::string estimate_csv(const System& s, const SparseVector& v) {
  std::string out = s.graph ? "node,value\n" : "i,value\n";
  for (const Entry& e : v) out += fmt::format("{},{:.17g}\n", label_of(s, e.index), e.value);
  return out;
}

void check_finite(const SparseVector& v) {
  for (const Entry& e : v) {
    if (!std::isfinite(e.value)) {
      throw NumericalError(fmt::format("estimate entry {} is not finite; is ||I - A||_1 < 1?", e.index));
    }
  }
}

void print_top(const System& s, const SparseVector& v, std::size_t k, const DenseVector* exact) {
  std::vector<Entry> order(v.begin(), v.end());
  std::stable_sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) { return a.value > b.value; });
  order.resize(std::min(order.size(), k));
  fmt::print("{:>5}  {:>12}  {:>22}{}\n", "rank", "node", "estimate", exact ? fmt::format("  {:>22}", "exact") : "");
  for (std::size_t r = 0; r < order.size(); ++r) {
    fmt::print("{:>5}  {:>12}  {:>22.15g}{}\n", r + 1, label_of(s, order[r].index), order[r].value,
               exact ? fmt::format("  {:>22.15g}", (*exact)[order[r].index]) : "");
  }
}

std::vector<std::size_t> parse_m_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v == 0) {
      throw InputError(fmt::format("--m-list entry '{}' is not a positive integer", item));
    }
    out.push_back(v);
  }
  if (out.empty()) throw InputError("--m-list is empty");
  return out;
}

DenseVector oracle_solution(const System& s, double tol) { return reference_solve(s.a, s.b, tol).x; }

int run_solve(const Options& o) {
  const System s = load_system(o);
  const RsriConfig cfg = solver_config(o);
  RandomStream rng(cfg.seed);
  const SolveReport rep = rsri(s.a, s.b, cfg, rng);
  check_finite(rep.estimate);
  emit(o.out, estimate_csv(s, rep.estimate));
  fmt::print(stderr, "columns read: {}  max iterate nnz: {}  time: {:.3f}s\n", rep.column_accesses,
             rep.max_iterate_nnz, rep.wall_clock_s);
  if (o.check) {
    const DenseVector x = oracle_solution(s, o.oracle_tol);
    DenseVector d = rep.estimate.to_dense();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= x[i];
    fmt::print(stderr, "error vs reference: 2-norm {:.6g}  1-norm {:.6g}\n", norm2(d), norm1(d));
  }
  return 0;
}

int run_pagerank(const Options& o) {
  System s;
  {
    Graph g = load_graph(o);
    s = System{g.problem.A, g.problem.b, std::move(g), ""};
  }
  const RsriConfig cfg = solver_config(o);
  RandomStream rng(cfg.seed);
  const SolveReport rep = rsri(s.a, s.b, cfg, rng);
  check_finite(rep.estimate);
  std::optional<DenseVector> exact;
  if (o.check) exact = oracle_solution(s, o.oracle_tol);
  print_top(s, rep.estimate, o.top, exact ? &*exact : nullptr);
  fmt::print("nodes: {}  columns read: {}  time: {:.3f}s\n", s.a.dim(), rep.column_accesses, rep.wall_clock_s);
  if (!o.out.empty()) emit(o.out, estimate_csv(s, rep.estimate));
  if (!o.save_matrix.empty()) save_matrix_market(o.save_matrix, s.a);
  if (!o.save_rhs.empty()) save_matrix_market_vector(o.save_rhs, s.b);
  return 0;
}

int run_sweep_cmd(const Options& o) {
  if (o.out.empty()) throw InputError("sweep needs --out");
  const System s = load_system(o);
  const RsriConfig cfg = solver_config(o);
  const std::vector<std::size_t> m_list = parse_m_list(o.m_list);
  const DenseVector x = oracle_solution(s, o.oracle_tol);

  SweepOptions opts;
  opts.timing = !o.no_timing;
  if (s.graph && !o.no_baseline) {
    const PageRankProblem& p = s.graph->problem;
    opts.baseline = SurferBaseline{p.P, p.s, p.alpha};
  }
  const std::vector<SweepRow> rows = run_sweep(s.a, s.b, cfg, m_list, x, opts);

  std::vector<std::string> comments = {
      fmt::format("rsri sweep: {} t={} t_min={} trials={} seed={} oracle_tol={:g}", s.description, cfg.t, cfg.t_min,
                  cfg.trials, cfg.seed, o.oracle_tol),
      fmt::format("prng: {}; trial k uses spawn_stream(seed, k)", RandomStream::description()),
      "rmse, bias_norm: Euclidean norms against the reference solution; variance_est uses the trials-1 correction",
      opts.baseline ? "mc_rmse: Monte Carlo surfers at matched cost, per trial "
                      "max(1, round(column_accesses_trial * (1 - alpha) / alpha)) surfers"
                    : "mc_rmse: not computed",
      opts.timing ? "wall_clock_s: seconds per sweep point" : "wall_clock_s: timing disabled",
  };
  const std::string csv = sweep_csv(rows, comments);
  std::string svg;
  if (!o.svg.empty()) {
    std::vector<PlotSeries> series(1, PlotSeries{"RSRI rmse", {}, {}});
    if (opts.baseline) series.push_back(PlotSeries{"Monte Carlo rmse", {}, {}});
    for (const SweepRow& r : rows) {
      series[0].x.push_back(static_cast<double>(r.m));
      series[0].y.push_back(r.rmse);
      if (opts.baseline) {
        series[1].x.push_back(static_cast<double>(r.m));
        series[1].y.push_back(*r.mc_rmse);
      }
    }
    svg = loglog_svg("RMSE vs sparsity level", "m", "RMSE", series);
  }
  write_file_atomic(o.out, csv);
  if (!svg.empty()) write_file_atomic(o.svg, svg);

  std::vector<double> ms, rmse, mc;
  for (const SweepRow& r : rows) {
    ms.push_back(static_cast<double>(r.m));
    rmse.push_back(r.rmse);
    if (r.mc_rmse) mc.push_back(*r.mc_rmse);
  }
  if (rows.size() >= 2) {
    fmt::print("log-log slope of rmse vs m: {:.4f}\n", loglog_slope(ms, rmse));
    if (mc.size() == ms.size()) fmt::print("log-log slope of mc_rmse vs m: {:.4f}\n", loglog_slope(ms, mc));
  }
  return 0;
}

int run_tail(const Options& o) {
  std::vector<double> tails;
  if (!o.vector_path.empty()) {
    tails = tail_sums(load_matrix_market_vector(o.vector_path));
  } else {
    const System s = load_system(o);
    tails = tail_sums(oracle_solution(s, o.oracle_tol));
  }
  emit(o.out, tail_csv(tails));
  return 0;
}

int run_mc(const Options& o) {
  Graph g = load_graph(o);
  const PageRankProblem& p = g.problem;
  RandomStream rng(o.seed);
  const SurferEstimate est = mc_surfer(p.P, p.s, p.alpha, o.walks, rng);
  System s{p.A, p.b, std::move(g), ""};
  std::optional<DenseVector> exact;
  if (o.check) exact = oracle_solution(s, o.oracle_tol);
  print_top(s, est.estimate, o.top, exact ? &*exact : nullptr);
  fmt::print("surfers: {}  columns read: {}\n", o.walks, est.column_accesses);
  if (!o.out.empty()) emit(o.out, estimate_csv(s, est.estimate));
  return 0;
}

int run_push(const Options& o) {
  Graph g = load_graph(o);
  const PageRankProblem& p = g.problem;
  const DenseVector x = reference_solve(p.A, p.b, o.oracle_tol).x;
  const PushResult res = push_cd(p.P, p.s, p.alpha, o.steps, std::span<const double>(x));
  std::string csv = "step,residual_inf,error_2\n";
  for (const TracePoint& pt : res.trace) {
    csv += fmt::format("{},{:.17g},{:.17g}\n", pt.step, pt.residual_inf, pt.error_2.value_or(0.0));
  }
  emit(o.out, csv);
  const TracePoint& last = res.trace.back();
  fmt::print(stderr, "after {} pushes: residual_inf {:.6g}  error_2 {:.6g}\n", last.step, last.residual_inf,
             last.error_2.value_or(0.0));
  return 0;
}

int run_diagnose(const Options& o) {
  ColumnMatrix a;
  if (!o.matrix.empty()) {
    a = load_matrix_market(o.matrix);
  } else {
    a = load_graph(o).problem.A;
  }
  const ContractionDiagnostics d = diagnostics(a);
  fmt::print("dim = {}\n", a.dim());
  fmt::print("g_norm1 = {:.17g}\n", d.g_norm1);
  fmt::print("m_g_simple = {:.17g}\n", d.m_g_simple);
  fmt::print("m_g_series = {:.17g}\n", d.m_g_series);
  fmt::print("series_terms = {}\n", d.series_terms);
  fmt::print("is_contraction = {}\n", d.is_contraction);
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  Options o;
  CLI::App app("Randomly sparsified Richardson iteration and PageRank baselines", "rsri");
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve A x = b and write the estimate as CSV");
  add_system_flags(solve, o);
  add_solver_flags(solve, o);
  add_oracle_flag(solve, o);
  solve->add_option("--out", o.out, "Output CSV (default stdout)");
  solve->add_flag("--check", o.check, "Report the error against a reference solve");

  auto* pagerank = app.add_subcommand("pagerank", "Personalized PageRank of a graph; prints the top-k nodes");
  add_graph_flags(pagerank, o);
  add_solver_flags(pagerank, o);
  add_oracle_flag(pagerank, o);
  pagerank->add_option("--top", o.top, "Rows in the ranking table")->capture_default_str();
  pagerank->add_option("--out", o.out, "Write the estimate as CSV");
  pagerank->add_option("--save-matrix", o.save_matrix, "Write A = I - alpha P as Matrix Market");
  pagerank->add_option("--save-rhs", o.save_rhs, "Write b = (1 - alpha) s as Matrix Market");
  pagerank->add_flag("--check", o.check, "Add the reference solution to the table");

  auto* sweep = app.add_subcommand("sweep", "RMSE over trials for a list of sparsity levels");
  add_system_flags(sweep, o);
  add_solver_flags(sweep, o);
  add_oracle_flag(sweep, o);
  sweep->add_option("--trials", o.trials, "Independent trials per sparsity level")->capture_default_str();
  sweep->add_option("--m-list", o.m_list, "Comma-separated increasing sparsity levels")->capture_default_str();
  sweep->add_option("--out", o.out, "Output CSV")->required();
  sweep->add_option("--svg", o.svg, "Also write a log-log plot");
  sweep->add_flag("--no-timing", o.no_timing, "Write 0 for wall_clock_s so reruns are byte-identical");
  sweep->add_flag("--no-baseline", o.no_baseline, "Skip the Monte Carlo column");

  auto* tail = app.add_subcommand("tail", "Tail sums of the sorted reference solution (or of a given vector)");
  add_system_flags(tail, o);
  add_oracle_flag(tail, o);
  tail->add_option("--vector", o.vector_path, "Matrix Market vector to report instead of a solution");
  tail->add_option("--out", o.out, "Output CSV (default stdout)");

  auto* baseline = app.add_subcommand("baseline", "Monte Carlo surfers or push coordinate descent");
  baseline->require_subcommand(1);
  auto* mc = baseline->add_subcommand("mc", "Monte Carlo surfer estimate");
  add_graph_flags(mc, o);
  add_oracle_flag(mc, o);
  mc->add_option("--m,--walks", o.walks, "Number of surfers")->capture_default_str();
  mc->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  mc->add_option("--top", o.top, "Rows in the ranking table")->capture_default_str();
  mc->add_option("--out", o.out, "Write the estimate as CSV");
  mc->add_flag("--check", o.check, "Add the reference solution to the table");
  auto* push = baseline->add_subcommand("push", "Push coordinate descent; writes the residual/error trace");
  add_graph_flags(push, o);
  add_oracle_flag(push, o);
  push->add_option("--steps", o.steps, "Number of pushes")->capture_default_str();
  push->add_option("--out", o.out, "Trace CSV (default stdout)");

  auto* diagnose = app.add_subcommand("diagnose", "Contraction diagnostics of A");
  diagnose->add_option("--matrix", o.matrix, "Matrix Market file holding A");
  add_graph_flags(diagnose, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* shown = &app;
    for (const CLI::App* sub = &app; sub != nullptr;) {
      const auto parsed = sub->get_subcommands();
      sub = parsed.empty() ? nullptr : parsed.front();
      if (sub) shown = sub;
    }
    std::cerr << shown->help();
    return 1;
  }

  try {
    if (*solve) return run_solve(o);
    if (*pagerank) return run_pagerank(o);
    if (*sweep) return run_sweep_cmd(o);
    if (*tail) return run_tail(o);
    if (*mc) return run_mc(o);
    if (*push) return run_push(o);
    if (*diagnose) return run_diagnose(o);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace rsri
