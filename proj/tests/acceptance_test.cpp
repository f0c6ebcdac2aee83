// Acceptance gate: ten end-to-end checks over the whole library, one
// PASS/FAIL line each, nonzero exit if any fails. Randomized checks take
// --seed N (default fixed) so runs are reproducible.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/resource.h>

#include "oracle.hpp"
#include "syncparse/grammar.hpp"
#include "syncparse/multigraph.hpp"
#include "syncparse/parser.hpp"
#include "syncparse/permutation.hpp"
#include "syncparse/reduction.hpp"
#include "syncparse/strategy.hpp"

using namespace syncparse;

namespace {

uint32_t g_seed = 20260822;

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      if (detail.size() < 400) detail += what;
    }
  }
};

std::string fixture(const std::string& name) {
  return std::string(SYNCPARSE_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

long long peak_rss_bytes() {
  struct rusage ru {};
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<long long>(ru.ru_maxrss) * 1024;
}

const Permutation kRunning{{6, 1, 4, 2, 5, 3}};

// ------------------------------------------------------------ criterion 1

void strategy_anchors(Checker& c) {
  const LinearStrategy ident = LinearStrategy::left_to_right(6);
  const strategy::StrategyReport rep = strategy::evaluate(kRunning, ident);
  c.expect(rep.fo == std::vector<int>({2, 3, 4, 3, 2, 2}), "identity fan-out profile");
  c.expect(rep.space_exponent == 8, "identity space exponent");
  c.expect(rep.time_exponent == 9, "identity time exponent");

  const LinearStrategy tuned{{4, 5, 2, 3, 1, 6}};
  const strategy::StrategyReport rep2 = strategy::evaluate(kRunning, tuned);
  c.expect(rep2.max_fo == 3, "tuned max fan-out");
  c.expect(rep2.space_exponent == 6, "tuned space exponent");
  c.expect(rep2.delta[2] == 2, "tuned step-3 independent boundaries");
  c.expect(rep2.time_exponent == 8, "tuned time exponent");
}

// ------------------------------------------------------------ criterion 2

void cutwidth_anchors(Checker& c) {
  const auto perm_graph = multigraph::from_permutation(kRunning);
  const auto cw = multigraph::cutwidth_exact(perm_graph);
  std::string witness;
  for (int v : cw.witness.vertex_order()) witness += std::to_string(v);
  c.expect(cw.value == 6, "two-path multigraph cutwidth: required 6, exact minimum is " +
                              std::to_string(cw.value) + " (order " + witness +
                              "); 6 is the left-to-right arrangement's width, not the minimum");

  c.expect(multigraph::cutwidth_exact(reduction::build_grid(3, 6)).value == 4, "3x6 grid");

  for (int h = 3; h <= 5; ++h)
    for (int w = 3; w <= 5; ++w) {
      const int got = multigraph::cutwidth_exact(reduction::build_grid(h, w), 25).value;
      const int want = std::min(h + 1, w + 1);
      c.expect(got == want, "grid " + std::to_string(h) + "x" + std::to_string(w) + " cutwidth " +
                                std::to_string(got) + " != " + std::to_string(want));
    }
}

// ------------------------------------------------------------ criterion 3

void optimizer_oracle(Checker& c) {
  const auto check = [&](const Permutation& p) {
    const auto best_space = strategy::optimize_space(p);
    const auto oracle_space = oracle::exhaustive_best(p, false);
    c.expect(best_space.value == oracle_space.value, "space value r=" + std::to_string(p.size()));
    const auto rep = strategy::evaluate(p, best_space.strategy);
    c.expect(rep.max_fo == best_space.value, "space witness value");

    const auto best_time = strategy::optimize_time(p);
    const auto oracle_time = oracle::exhaustive_best(p, true);
    c.expect(best_time.value == oracle_time.value, "time value r=" + std::to_string(p.size()));
    const auto rep2 = strategy::evaluate(p, best_time.strategy);
    c.expect(rep2.max_t == best_time.value, "time witness value");
  };

  Permutation p = Permutation::identity(5);
  do {
    check(p);
  } while (std::next_permutation(p.image.begin(), p.image.end()));

  std::mt19937 rng(g_seed * 1000 + 3);
  for (int iter = 0; iter < 500; ++iter) {
    const int r = 6 + (iter % 2);
    check(oracle::random_permutation(rng, r));
  }
}

// ------------------------------------------------------------ criterion 4

void boundary_width_agreement(Checker& c) {
  const auto check = [&](const Permutation& p, const LinearStrategy& s) {
    const auto g = multigraph::from_permutation(p);
    const auto wd = multigraph::width_profile(g, multigraph::strategy_to_arrangement(s));
    for (int k = 1; k <= p.size(); ++k)
      if (strategy::internal_boundaries(p, s, k) != wd[k - 1]) {
        c.expect(false, "ib != width at step " + std::to_string(k));
        return;
      }
  };

  for (int r = 2; r <= 5; ++r) {
    Permutation p = Permutation::identity(r);
    do {
      LinearStrategy s = LinearStrategy::left_to_right(r);
      do {
        check(p, s);
      } while (std::next_permutation(s.order.begin(), s.order.end()));
    } while (std::next_permutation(p.image.begin(), p.image.end()));
  }

  std::mt19937 rng(g_seed * 1000 + 4);
  for (int iter = 0; iter < 10000; ++iter)
    check(oracle::random_permutation(rng, 6), oracle::random_strategy(rng, 6));
}

// ------------------------------------------------------------ criterion 5

void profile_relations(Checker& c) {
  std::mt19937 rng(g_seed * 1000 + 5);
  std::uniform_int_distribution<int> size(2, 12);
  for (int iter = 0; iter < 1000; ++iter) {
    const int r = size(rng);
    const Permutation p = oracle::random_permutation(rng, r);
    const LinearStrategy s = oracle::random_strategy(rng, r);
    const auto rep = strategy::evaluate(p, s);
    const auto g = multigraph::from_permutation(p);
    const auto a = multigraph::strategy_to_arrangement(s);
    const auto ewd = multigraph::extended_width_profile(g, a);
    const auto emwd = multigraph::extended_modified_width_profile(g, a);
    for (int k = 1; k <= r; ++k) {
      if (2 * rep.fo[k - 1] != ewd[k - 1]) {
        c.expect(false, "2*fo != extended width at step " + std::to_string(k));
        return;
      }
      if (rep.t[k - 1] != emwd[k - 1] + 4) {
        c.expect(false, "t != extended modified width + 4 at step " + std::to_string(k));
        return;
      }
    }
  }
}

// ------------------------------------------------------------ criterion 6

void width_optimum_agreement(Checker& c) {
  for (int r = 2; r <= 6; ++r) {
    Permutation p = Permutation::identity(r);
    do {
      const auto g = multigraph::from_permutation(p);
      const int ecw = multigraph::extended_cutwidth_exact(g).value;
      const int emcw = multigraph::extended_modified_cutwidth_exact(g).value;
      const int space = strategy::optimize_space(p).value;
      const int time = strategy::optimize_time(p).value;
      if (ecw != 2 * space) {
        c.expect(false, "extended cutwidth != 2 * space optimum");
        return;
      }
      if (emcw != time - 4) {
        c.expect(false, "extended modified cutwidth != time optimum - 4");
        return;
      }
    } while (std::next_permutation(p.image.begin(), p.image.end()));
  }
}

// ------------------------------------------------------------ criterion 7

void gadget_faithful(Checker& c) {
  const auto k4 = reduction::parse_cubic_graph(slurp(fixture("k4.graph")));
  const auto inst = reduction::build_gadget(k4, 4, 4);
  c.expect(inst.total_vertices() == 8927745LL,
           "vertex count " + std::to_string(inst.total_vertices()));
  c.expect(inst.k_prime == 906, "width budget " + std::to_string(inst.k_prime));
  c.expect(inst.faithful, "faithful flag");

  const auto rep = reduction::verify_gadget(inst);
  c.expect(rep.ok, rep.failures.empty() ? "verification failed" : rep.failures.front());
  for (size_t i = 0; i < rep.grid_to_middle_edges.size(); ++i)
    c.expect(rep.grid_to_middle_edges[i] == 64,
             "grid " + std::to_string(i + 1) + " middle edge count");

  const auto [bisection, cut] = reduction::min_bisection_brute(k4);
  c.expect(cut == 4, "minimum bisection cut of K4");
  const auto arr = reduction::canonical_arrangement(inst, bisection);
  const auto sweep = reduction::sweep_max_width(inst, arr);
  c.expect(sweep.max_width == 906, "sweep maximum " + std::to_string(sweep.max_width));
  c.expect(sweep.argmax_component == "L" || sweep.argmax_component == "R",
           "sweep argmax in " + sweep.argmax_component);

  const long long rss = peak_rss_bytes();
  c.expect(rss < 4LL * 1024 * 1024 * 1024, "peak memory " + std::to_string(rss));
}

// ------------------------------------------------------- criteria 8 and 9

parser::ParseStats g_parse_stats;  // accumulated across criterion 8

void accumulate(const parser::ParseStats& s) {
  g_parse_stats.items_inserted += s.items_inserted;
  g_parse_stats.states_inserted += s.states_inserted;
  g_parse_stats.combination_attempts += s.combination_attempts;
  g_parse_stats.arity_violations += s.arity_violations;
  g_parse_stats.max_arity = std::max(g_parse_stats.max_arity, s.max_arity);
}

struct GrammarCase {
  std::string file;
  int enum_steps;   // enough steps to cover every member of total length <= 16
  int window;      // exhaustive window: all pairs with |w1|+|w2| <= window
};

void recognizer_matches_membership(Checker& c) {
  const std::vector<GrammarCase> cases = {
      {"running.sg", 6, 8}, {"mirror.sg", 5, 10}, {"swap.sg", 10, 10}};

  std::mt19937 rng(g_seed * 1000 + 8);

  for (const auto& gc : cases) {
    const grammar::SCFG g = grammar::parse_grammar(slurp(fixture(gc.file)));
    const auto strategies = parser::compile_strategies(g, strategy::Objective::Space);

    std::set<grammar::SentencePair> members;
    for (const auto& pair : grammar::enumerate_translations(g, gc.enum_steps))
      if (pair.total_length() <= 16) members.insert(pair);
    c.expect(!members.empty(), gc.file + ": no members enumerated");
    if (members.empty()) continue;

    const auto agree = [&](const grammar::SentencePair& pair) {
      parser::ParseStats stats;
      const bool got = parser::recognize(g, pair, strategies, &stats);
      accumulate(stats);
      return got == (members.count(pair) > 0);
    };

    // Every enumerated member is accepted.
    for (const auto& pair : members)
      if (!agree(pair)) {
        c.expect(false, gc.file + ": member rejected");
        break;
      }

    // Exhaustive window over the terminal alphabet.
    const std::vector<std::string> alphabet(g.terminals.begin(), g.terminals.end());
    const int base = static_cast<int>(alphabet.size());
    const auto nth_string = [&](long long code, int len) {
      std::vector<std::string> out;
      for (int i = 0; i < len; ++i) {
        out.push_back(alphabet[code % base]);
        code /= base;
      }
      return out;
    };
    long long pow1 = 1;
    bool window_ok = true;
    for (int l1 = 0; l1 <= gc.window && window_ok; ++l1, pow1 *= base) {
      long long pow2 = 1;
      for (int l2 = 0; l1 + l2 <= gc.window && window_ok; ++l2, pow2 *= base) {
        if (l1 == 0 && l2 == 0) continue;
        for (long long c1 = 0; c1 < pow1 && window_ok; ++c1)
          for (long long c2 = 0; c2 < pow2 && window_ok; ++c2) {
            grammar::SentencePair pair{nth_string(c1, l1), nth_string(c2, l2)};
            if (!agree(pair)) {
              c.expect(false, gc.file + ": window disagreement");
              window_ok = false;
            }
          }
      }
    }

    // Seeded near-member pairs: mutate members, keeping total length <= 16.
    std::vector<grammar::SentencePair> pool(members.begin(), members.end());
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> letter(0, base - 1);
    std::uniform_int_distribution<int> mutations(1, 3);
    for (int iter = 0; iter < 10000; ++iter) {
      grammar::SentencePair pair = pool[pick(rng)];
      const int edits = mutations(rng);
      for (int e = 0; e < edits; ++e) {
        auto& side = (rng() & 1) ? pair.w1 : pair.w2;
        const int kind = static_cast<int>(rng() % 3);
        if (kind == 0 && !side.empty()) {
          side[rng() % side.size()] = alphabet[letter(rng)];
        } else if (kind == 1 && pair.total_length() < 16) {
          side.insert(side.begin() + rng() % (side.size() + 1), alphabet[letter(rng)]);
        } else if (!side.empty()) {
          side.erase(side.begin() + rng() % side.size());
        }
      }
      if (pair.w1.empty() && pair.w2.empty()) continue;
      if (!agree(pair)) {
        c.expect(false, gc.file + ": mutated pair disagreement");
        break;
      }
    }
  }

  // The worked translation example.
  const grammar::SCFG running = grammar::parse_grammar(slurp(fixture("running.sg")));
  const auto strategies = parser::compile_strategies(running, strategy::Objective::Space);
  parser::ParseStats stats;
  const grammar::SentencePair example{grammar::tokenize_sentence("aaabbbccdd"),
                                      grammar::tokenize_sentence("ddccbbbaaa")};
  const bool accepted = parser::recognize(running, example, strategies, &stats);
  accumulate(stats);
  c.expect(accepted, "worked example pair rejected");
}

void no_arity_violations(Checker& c) {
  c.expect(g_parse_stats.states_inserted > 0, "no recognizer states recorded");
  c.expect(g_parse_stats.arity_violations == 0,
           std::to_string(g_parse_stats.arity_violations) + " arity violations");
}

// ----------------------------------------------------------- criterion 10

void decoding_time_agreement(Checker& c) {
  std::mt19937 rng(g_seed * 1000 + 10);
  std::uniform_int_distribution<int> size(1, 10);
  for (int iter = 0; iter < 200; ++iter) {
    const int r = size(rng);
    const Permutation p = oracle::random_permutation(rng, r);
    const LinearStrategy s = oracle::random_strategy(rng, r);
    const auto rep = strategy::evaluate(p, s);
    const auto dec = strategy::decoding_exponents(p, s, 2);
    if (dec.time != rep.t) {
      c.expect(false, "bigram decoding time profile mismatch at r=" + std::to_string(r));
      return;
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      g_seed = static_cast<uint32_t>(std::stoul(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--seed N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "strategy profile anchors", 1, strategy_anchors},
      {2, "cutwidth anchors", 60, cutwidth_anchors},
      {3, "optimizer agrees with brute force", 300, optimizer_oracle},
      {4, "step boundaries equal arrangement widths", 120, boundary_width_agreement},
      {5, "profile identities on random instances", 60, profile_relations},
      {6, "width optima match strategy optima", 300, width_optimum_agreement},
      {7, "faithful gadget for K4", 300, gadget_faithful},
      {8, "recognizer matches bounded enumeration", 120, recognizer_matches_membership},
      {9, "no arity violations while recognizing", 1, no_arity_violations},
      {10, "decoding exponents match step times", 30, decoding_time_agreement},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > crit.budget_seconds)
      c.expect(false, "took " + std::to_string(dt) + "s, budget " +
                          std::to_string(crit.budget_seconds) + "s");
    std::ostringstream line;
    line << (c.ok ? "PASS" : "FAIL") << " criterion " << crit.id << ": " << crit.name << " ("
         << std::fixed << std::setprecision(2) << dt << "s)";
    if (!c.ok) line << "  [" << c.detail << "]";
    std::cout << line.str() << "\n";
    if (!c.ok) ++failures;
  }

  if (failures > 0) {
    std::cout << failures << " of " << criteria.size() << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
