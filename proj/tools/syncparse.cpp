// Command line front end: analyze, optimize, cutwidth, reduce, parse.
// Every run prints one JSON report to stdout. Exit codes: 0 success,
// 2 input error, 3 resource limit, 4 verification failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "syncparse/grammar.hpp"
#include "syncparse/multigraph.hpp"
#include "syncparse/parser.hpp"
#include "syncparse/permutation.hpp"
#include "syncparse/reduction.hpp"
#include "syncparse/strategy.hpp"

using nlohmann::json;
using namespace syncparse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;
constexpr int kExitVerify = 4;

struct ReportCtx {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  json stats = json::object();
  bool pretty = false;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

int emit(ReportCtx& ctx, int code, const json* error) {
  json rep;
  rep["command"] = ctx.command;
  rep["inputs"] = ctx.inputs;
  if (error) rep["error"] = *error;
  rep["result"] = ctx.result;
  rep["solver_stats"] = ctx.stats;
  const auto dt = std::chrono::steady_clock::now() - ctx.t0;
  rep["wall_time_seconds"] = std::chrono::duration<double>(dt).count();
  std::cout << (ctx.pretty ? rep.dump(2) : rep.dump()) << "\n";
  return code;
}

int succeed(ReportCtx& ctx) { return emit(ctx, kExitOk, nullptr); }

int fail(ReportCtx& ctx, int code, const std::string& type, const std::string& message) {
  json err;
  err["type"] = type;
  err["message"] = message;
  std::cerr << "syncparse " << ctx.command << ": " << message << "\n";
  return emit(ctx, code, &err);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// "6,1,4,2,5,3", "6 1 4 2 5 3", or the compact digit form "614253".
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const bool separated = text.find_first_of(", \t") != std::string::npos;
  if (!separated && !text.empty() &&
      text.find_first_not_of("0123456789") == std::string::npos && text.size() > 1) {
    for (char c : text) out.push_back(c - '0');
    return out;
  }
  std::string norm = text;
  for (char& c : norm)
    if (c == ',') c = ' ';
  std::istringstream in(norm);
  std::string tok;
  while (in >> tok) {
    try {
      size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("not an integer list entry: '" + tok + "'");
    }
  }
  if (out.empty()) throw InputError("empty integer list: '" + text + "'");
  return out;
}

Permutation parse_permutation_arg(const std::string& text) {
  Permutation p;
  p.image = parse_int_list(text);
  p.validate();
  return p;
}

// Memory cap in bytes from SYNCPARSE_MEMORY_LIMIT; accepts K/M/G suffixes.
// Zero means no cap.
long long memory_limit_bytes() {
  const char* raw = std::getenv("SYNCPARSE_MEMORY_LIMIT");
  if (!raw || !*raw) return 0;
  std::string s(raw);
  long long scale = 1;
  char suffix = s.back();
  if (suffix == 'k' || suffix == 'K') scale = 1024LL;
  if (suffix == 'm' || suffix == 'M') scale = 1024LL * 1024;
  if (suffix == 'g' || suffix == 'G') scale = 1024LL * 1024 * 1024;
  if (scale != 1) s.pop_back();
  try {
    size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return v * scale;
  } catch (const std::exception&) {
    throw InputError(std::string("bad SYNCPARSE_MEMORY_LIMIT value: '") + raw + "'");
  }
}

json strategy_json(const LinearStrategy& s) { return json(s.order); }

json report_json(const strategy::StrategyReport& rep) {
  return json::parse(strategy::report_to_json(rep));
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string permutation;
  std::string strategy;
};

int run_analyze(ReportCtx& ctx, const AnalyzeArgs& a) {
  const Permutation p = parse_permutation_arg(a.permutation);
  LinearStrategy s = a.strategy.empty() ? LinearStrategy::left_to_right(p.size())
                                        : LinearStrategy(parse_int_list(a.strategy));
  ctx.inputs["permutation"] = p.image;
  ctx.inputs["strategy"] = s.order;
  const strategy::StrategyReport rep = strategy::evaluate(p, s);
  ctx.result = report_json(rep);
  return succeed(ctx);
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string permutation;
  std::string objective = "space";
  bool oracle = false;
  int limit = 20;
};

int run_optimize(ReportCtx& ctx, const OptimizeArgs& a) {
  const Permutation p = parse_permutation_arg(a.permutation);
  const bool space = a.objective == "space";
  ctx.inputs["permutation"] = p.image;
  ctx.inputs["objective"] = a.objective;
  ctx.inputs["limit"] = a.limit;
  ctx.inputs["oracle"] = a.oracle;

  const strategy::OptimizeResult best =
      space ? strategy::optimize_space(p, a.limit) : strategy::optimize_time(p, a.limit);
  ctx.result["objective"] = a.objective;
  ctx.result["value"] = best.value;
  ctx.result["strategy"] = strategy_json(best.strategy);
  if (space)
    ctx.result["space_exponent"] = 2 * best.value;
  else
    ctx.result["time_exponent"] = best.value;
  ctx.stats["states_explored"] = best.states_explored;

  if (a.oracle) {
    const strategy::OptimizeResult check = strategy::brute_force_optimize(
        p, space ? strategy::Objective::Space : strategy::Objective::Time);
    ctx.result["oracle_value"] = check.value;
    ctx.result["oracle_agrees"] = check.value == best.value;
    ctx.stats["oracle_states_explored"] = check.states_explored;
    if (check.value != best.value)
      return fail(ctx, kExitVerify, "verification",
                  "optimizer value " + std::to_string(best.value) +
                      " disagrees with brute force " + std::to_string(check.value));
  }
  return succeed(ctx);
}

// ---------------------------------------------------------------- cutwidth

struct CutwidthArgs {
  std::string permutation;
  std::string graph_file;
  std::string variant = "cw";
  int limit = 20;
  int threads = 1;
};

int run_cutwidth(ReportCtx& ctx, const CutwidthArgs& a) {
  multigraph::Multigraph g;
  if (!a.permutation.empty()) {
    const Permutation p = parse_permutation_arg(a.permutation);
    g = multigraph::from_permutation(p);
    ctx.inputs["source"] = "permutation";
    ctx.inputs["permutation"] = p.image;
  } else {
    g = multigraph::parse_graph(slurp(a.graph_file));
    ctx.inputs["source"] = "graph";
    ctx.inputs["graph_file"] = a.graph_file;
  }
  ctx.inputs["n"] = g.n;
  ctx.inputs["variant"] = a.variant;
  ctx.inputs["limit"] = a.limit;
  ctx.inputs["threads"] = a.threads;

  multigraph::SolverResult res;
  if (a.variant == "cw")
    res = multigraph::cutwidth_exact(g, a.limit, a.threads);
  else if (a.variant == "ecw")
    res = multigraph::extended_cutwidth_exact(g, a.limit, a.threads);
  else
    res = multigraph::extended_modified_cutwidth_exact(g, a.limit, a.threads);

  ctx.result["variant"] = a.variant;
  ctx.result["value"] = res.value;
  ctx.result["witness_positions"] = res.witness.pos;
  ctx.result["witness_order"] = res.witness.vertex_order();
  ctx.stats["states_explored"] = res.states_explored;
  return succeed(ctx);
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
  std::string graph_file;
  int k = 0;
  int scale = 4;
  bool verify = false;
  bool sweep = false;
  std::string bisection;
  bool emit_permutation = false;
  bool dump_edges = false;
};

reduction::Bisection parse_bisection_arg(const std::string& text) {
  const size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw InputError("bisection must be two '|'-separated vertex lists, e.g. '1,2|3,4'");
  reduction::Bisection b;
  b.v1 = parse_int_list(text.substr(0, bar));
  b.v2 = parse_int_list(text.substr(bar + 1));
  return b;
}

int run_reduce(ReportCtx& ctx, const ReduceArgs& a) {
  const reduction::CubicGraph src = reduction::parse_cubic_graph(slurp(a.graph_file));
  ctx.inputs["graph_file"] = a.graph_file;
  ctx.inputs["n"] = src.n;
  ctx.inputs["edges"] = static_cast<int>(src.edges.size());
  ctx.inputs["k"] = a.k;
  ctx.inputs["scale"] = a.scale;
  ctx.inputs["verify"] = a.verify;
  ctx.inputs["sweep"] = a.sweep;
  if (a.sweep) ctx.inputs["bisection"] = a.bisection.empty() ? "min" : a.bisection;

  const reduction::GadgetInstance inst = reduction::build_gadget(src, a.k, a.scale);

  // Conservative working-set estimate for the verification and sweep passes.
  const long long cap = memory_limit_bytes();
  if (cap > 0) {
    const long long need = inst.total_vertices() * 32 + (1LL << 20);
    if (need > cap)
      throw LimitError("estimated working set " + std::to_string(need) +
                       " bytes exceeds SYNCPARSE_MEMORY_LIMIT " + std::to_string(cap));
  }

  json manifest;
  manifest["k"] = inst.k;
  manifest["scale"] = inst.t;
  manifest["faithful"] = inst.faithful;
  manifest["T"] = inst.T;
  manifest["C"] = inst.C;
  manifest["grid_rows"] = inst.Hg;
  manifest["grid_cols"] = inst.Wg;
  manifest["side_rows"] = inst.Hl;
  manifest["side_cols"] = inst.Wl;
  manifest["middle_rows"] = inst.Hm;
  manifest["middle_cols"] = inst.Wm;
  manifest["k_prime"] = inst.k_prime;
  manifest["total_vertices"] = inst.total_vertices();
  long long explicit_edges = 0;
  reduction::for_each_explicit_edge(inst, [&](const reduction::ExplicitEdge&) { ++explicit_edges; });
  manifest["explicit_edges"] = explicit_edges;
  ctx.result["manifest"] = manifest;

  if (a.dump_edges) {
    json edges = json::array();
    reduction::for_each_explicit_edge(inst, [&](const reduction::ExplicitEdge& e) {
      edges.push_back(json::array({vertex_name(e.u), vertex_name(e.v)}));
    });
    ctx.result["edges"] = edges;
  }

  if (a.emit_permutation) {
    const Permutation p = reduction::gadget_to_permutation(inst);
    ctx.result["permutation"] = p.image;
  }

  bool verify_failed = false;
  std::string verify_message;
  if (a.verify) {
    const reduction::VerifyReport rep = reduction::verify_gadget(inst);
    json v;
    v["ok"] = rep.ok;
    v["vertices"] = rep.vertices;
    v["red_start"] = rep.red_start;
    v["red_end"] = rep.red_end;
    v["green_start"] = rep.green_start;
    v["green_end"] = rep.green_end;
    v["grid_to_middle_edges"] = rep.grid_to_middle_edges;
    v["grid_to_grid_edges"] = rep.grid_to_grid_edges;
    v["failures"] = rep.failures;
    ctx.result["verification"] = v;
    if (!rep.ok) {
      verify_failed = true;
      verify_message = rep.failures.empty() ? "verification failed" : rep.failures.front();
    }
  }

  if (a.sweep) {
    reduction::Bisection b;
    int cut = 0;
    if (!a.bisection.empty()) {
      b = parse_bisection_arg(a.bisection);
      cut = reduction::bisection_cut(src, b);
    } else {
      auto best = reduction::min_bisection_brute(src);
      b = best.first;
      cut = best.second;
    }
    const reduction::GadgetArrangement arr = reduction::canonical_arrangement(inst, b);
    const reduction::SweepResult sw = reduction::sweep_max_width(inst, arr);
    json s;
    s["bisection_v1"] = b.v1;
    s["bisection_v2"] = b.v2;
    s["cut"] = cut;
    s["max_width"] = sw.max_width;
    s["argmax_gap"] = sw.argmax_gap;
    s["argmax_component"] = sw.argmax_component;
    json per = json::object();
    for (const auto& [comp, w] : sw.component_max) per[comp] = w;
    s["component_max"] = per;
    s["within_budget"] = sw.max_width <= inst.k_prime;
    ctx.result["sweep"] = s;
    ctx.stats["sweep_positions"] = sw.positions;
  }

  if (verify_failed) return fail(ctx, kExitVerify, "verification", verify_message);
  return succeed(ctx);
}

// ---------------------------------------------------------------- parse

struct ParseArgs {
  std::string grammar_file;
  std::string w1, w2;
  std::string objective = "space";
  bool count = false;
};

int run_parse(ReportCtx& ctx, const ParseArgs& a) {
  const grammar::SCFG g = grammar::parse_grammar(slurp(a.grammar_file));
  grammar::SentencePair pair;
  pair.w1 = grammar::tokenize_sentence(a.w1);
  pair.w2 = grammar::tokenize_sentence(a.w2);
  if (pair.w1.empty() && pair.w2.empty())
    throw InputError("the empty sentence pair is not accepted as input");
  ctx.inputs["grammar_file"] = a.grammar_file;
  ctx.inputs["start"] = g.start;
  ctx.inputs["w1"] = pair.w1;
  ctx.inputs["w2"] = pair.w2;
  ctx.inputs["objective"] = a.objective;
  ctx.inputs["count"] = a.count;

  const auto objective =
      a.objective == "time" ? strategy::Objective::Time : strategy::Objective::Space;
  const std::vector<LinearStrategy> strategies = parser::compile_strategies(g, objective);

  parser::ParseStats stats;
  bool accepted = false;
  if (a.count) {
    try {
      const long long derivations = parser::count_derivations(g, pair, strategies, &stats);
      accepted = derivations > 0;
      ctx.result["derivation_count"] = derivations;
      ctx.result["infinite"] = false;
    } catch (const parser::InfiniteDerivations&) {
      accepted = true;
      ctx.result["infinite"] = true;
    }
  } else {
    accepted = parser::recognize(g, pair, strategies, &stats);
  }
  ctx.result["accepted"] = accepted;
  ctx.result["states_per_step"] = stats.states_per_step;
  ctx.stats["items_inserted"] = stats.items_inserted;
  ctx.stats["states_inserted"] = stats.states_inserted;
  ctx.stats["combination_attempts"] = stats.combination_attempts;
  ctx.stats["arity_violations"] = stats.arity_violations;
  ctx.stats["max_arity"] = stats.max_arity;
  return succeed(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronous grammar strategy and width toolkit"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent the JSON report");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Per-step profile of a collection strategy");
  analyze->add_option("permutation", analyze_args.permutation, "Rule permutation, e.g. 614253")
      ->required();
  analyze->add_option("--strategy", analyze_args.strategy,
                      "Collection order (default: left to right)");

  OptimizeArgs optimize_args;
  CLI::App* optimize = app.add_subcommand("optimize", "Best strategy for a rule permutation");
  optimize->add_option("permutation", optimize_args.permutation, "Rule permutation")->required();
  optimize->add_option("--objective", optimize_args.objective, "space or time")
      ->check(CLI::IsMember({"space", "time"}));
  optimize->add_flag("--oracle", optimize_args.oracle, "Cross-check with factorial brute force");
  optimize->add_option("--limit", optimize_args.limit, "Subset solver size limit");

  CutwidthArgs cutwidth_args;
  CLI::App* cutwidth = app.add_subcommand("cutwidth", "Exact minimum width of an arrangement");
  cutwidth->add_option("--perm", cutwidth_args.permutation, "Build the two-path multigraph");
  cutwidth->add_option("--graph", cutwidth_args.graph_file, "Multigraph file");
  cutwidth->add_option("--variant", cutwidth_args.variant, "cw, ecw, or emcw")
      ->check(CLI::IsMember({"cw", "ecw", "emcw"}));
  cutwidth->add_option("--limit", cutwidth_args.limit, "Subset solver size limit");
  cutwidth->add_option("--threads", cutwidth_args.threads, "Worker threads for the cut table");

  ReduceArgs reduce_args;
  CLI::App* reduce = app.add_subcommand("reduce", "Width-hardness gadget for a cubic graph");
  reduce->add_option("graph", reduce_args.graph_file, "Cubic graph file")->required();
  reduce->add_option("k", reduce_args.k, "Bisection width budget")->required();
  reduce->add_option("--scale", reduce_args.scale, "Grid size exponent 1..4 (4 is faithful)");
  reduce->add_flag("--verify", reduce_args.verify, "Check both Hamiltonian paths and edge counts");
  reduce->add_flag("--sweep", reduce_args.sweep, "Max width of the canonical arrangement");
  reduce->add_option("--bisection", reduce_args.bisection,
                     "Bisection for --sweep, e.g. '1,2|3,4' (default: minimum)");
  reduce->add_flag("--emit-permutation", reduce_args.emit_permutation,
                   "Extract the gadget permutation (small scales only)");
  reduce->add_flag("--dump-edges", reduce_args.dump_edges, "List inter-grid edges by vertex name");

  ParseArgs parse_args;
  CLI::App* parse = app.add_subcommand("parse", "Recognize a sentence pair");
  parse->add_option("grammar", parse_args.grammar_file, "Grammar file")->required();
  parse->add_option("w1", parse_args.w1, "Source sentence")->required();
  parse->add_option("w2", parse_args.w2, "Target sentence")->required();
  parse->add_option("--objective", parse_args.objective, "Strategy objective: space or time")
      ->check(CLI::IsMember({"space", "time"}));
  parse->add_flag("--count", parse_args.count, "Count distinct derivations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  ReportCtx ctx;
  ctx.pretty = pretty;
  try {
    if (analyze->parsed()) {
      ctx.command = "analyze";
      return run_analyze(ctx, analyze_args);
    }
    if (optimize->parsed()) {
      ctx.command = "optimize";
      return run_optimize(ctx, optimize_args);
    }
    if (cutwidth->parsed()) {
      ctx.command = "cutwidth";
      if (cutwidth_args.permutation.empty() == cutwidth_args.graph_file.empty())
        throw InputError("cutwidth needs exactly one of --perm and --graph");
      return run_cutwidth(ctx, cutwidth_args);
    }
    if (reduce->parsed()) {
      ctx.command = "reduce";
      if (reduce_args.k < 1) throw InputError("k must be >= 1");
      return run_reduce(ctx, reduce_args);
    }
    ctx.command = "parse";
    return run_parse(ctx, parse_args);
  } catch (const InputError& e) {
    return fail(ctx, kExitInput, "input", e.what());
  } catch (const LimitError& e) {
    return fail(ctx, kExitLimit, "limit", e.what());
  } catch (const grammar::BoundExceeded& e) {
    return fail(ctx, kExitLimit, "limit", e.what());
  } catch (const std::exception& e) {
    return fail(ctx, 1, "internal", e.what());
  }
}
