#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "syncparse/grammar.hpp"
#include "syncparse/parser.hpp"

using syncparse::LinearStrategy;
using namespace syncparse::grammar;
using namespace syncparse::parser;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(SYNCPARSE_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SentencePair chars(const std::string& a, const std::string& b) {
  return {tokenize_sentence(a), tokenize_sentence(b)};
}

bool parse_with(const SCFG& g, const SentencePair& p, ParseStats* stats = nullptr) {
  return recognize(g, p, compile_strategies(g, syncparse::strategy::Objective::Space), stats);
}

// All token strings over the alphabet up to the given length.
void all_strings(const std::vector<std::string>& alphabet, int max_len,
                 std::vector<std::vector<std::string>>& out) {
  out.push_back({});
  size_t begin = 0, end = out.size();
  for (int len = 1; len <= max_len; ++len) {
    for (size_t i = begin; i < end; ++i)
      for (const std::string& t : alphabet) {
        std::vector<std::string> next = out[i];
        next.push_back(t);
        out.push_back(std::move(next));
      }
    begin = end;
    end = out.size();
  }
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("recognizes the running translation") {
  SCFG g = parse_grammar(fixture("running.sg"));
  CHECK(parse_with(g, chars("abcd", "dcba")));
  CHECK(parse_with(g, chars("aabbcd", "dcbbaa")));
  CHECK(parse_with(g, chars("aabbccdd", "ddccbbaa")));
  CHECK(parse_with(g, chars("aaabbbccdd", "ddccbbbaaa")));
  CHECK_FALSE(parse_with(g, chars("abcd", "abcd")));
  CHECK_FALSE(parse_with(g, chars("abcd", "dcb")));
  CHECK_FALSE(parse_with(g, chars("ab", "ba")));
  CHECK_FALSE(parse_with(g, chars("", "")));
  CHECK_FALSE(parse_with(g, chars("abccdd", "ddccab")));
}

TEST_CASE("recognizes the mirror and half-swap translations") {
  SCFG mirror = parse_grammar(fixture("mirror.sg"));
  CHECK(parse_with(mirror, chars("ab", "ba")));
  CHECK(parse_with(mirror, chars("aabb", "bbaa")));
  CHECK_FALSE(parse_with(mirror, chars("aabb", "baba")));
  CHECK_FALSE(parse_with(mirror, chars("ab", "ab")));

  SCFG swap = parse_grammar(fixture("swap.sg"));
  CHECK(parse_with(swap, chars("ab", "ba")));
  CHECK(parse_with(swap, chars("aaab", "baaa")));
  CHECK(parse_with(swap, chars("abbb", "bbba")));
  CHECK_FALSE(parse_with(swap, chars("ab", "ab")));
  CHECK_FALSE(parse_with(swap, chars("ba", "ab")));
}

TEST_CASE("handles long nested inputs") {
  SCFG mirror = parse_grammar(fixture("mirror.sg"));
  std::string left(40, 'a'), right(40, 'b');
  CHECK(parse_with(mirror, chars(left + right, right + left)));
  CHECK_FALSE(parse_with(mirror, chars(left + right, right + left + "a")));
}

TEST_CASE("flat rules need no linked pairs") {
  SCFG g = parse_grammar("S -> a b ; S -> b a\n");
  CHECK(parse_with(g, chars("ab", "ba")));
  CHECK_FALSE(parse_with(g, chars("ab", "ab")));
  CHECK_FALSE(parse_with(g, chars("a", "ba")));
}

TEST_CASE("multi-character tokens") {
  SCFG g = parse_grammar("S -> 'foo' S[1] 'bar' ; S -> 'bar' S[1] 'foo'\n"
                         "S -> 'foo' ; S -> 'foo'\n");
  SentencePair p{{"foo", "foo", "bar"}, {"bar", "foo", "foo"}};
  CHECK(parse_with(g, p));
  SentencePair q{{"foo", "foo", "bar"}, {"foo", "foo", "bar"}};
  CHECK_FALSE(parse_with(g, q));
}

TEST_CASE("agrees with bounded enumeration membership") {
  struct Setup {
    const char* file;
    std::vector<std::string> alphabet;
    int cap;
  };
  for (const Setup& setup : {Setup{"running.sg", {"a", "b", "c", "d"}, 6},
                             Setup{"mirror.sg", {"a", "b"}, 8},
                             Setup{"swap.sg", {"a", "b"}, 8}}) {
    SCFG g = parse_grammar(fixture(setup.file));
    std::vector<LinearStrategy> strategies =
        compile_strategies(g, syncparse::strategy::Objective::Space);
    std::vector<std::vector<std::string>> strings;
    all_strings(setup.alphabet, setup.cap, strings);
    for (const auto& w1 : strings)
      for (const auto& w2 : strings) {
        if (static_cast<int>(w1.size() + w2.size()) > setup.cap) continue;
        SentencePair p{w1, w2};
        REQUIRE(recognize(g, p, strategies) == pair_membership_oracle(g, p));
      }
    // Positive control independent of the window size: every pair the
    // grammar can derive in a few steps is accepted.
    std::set<SentencePair> members = enumerate_translations(g, 4);
    CHECK(!members.empty());
    for (const SentencePair& p : members) REQUIRE(recognize(g, p, strategies));
  }
}

TEST_CASE("derivation counts match bounded enumeration") {
  for (const char* name : {"running.sg", "mirror.sg", "swap.sg", "ambiguous.sg"}) {
    SCFG g = parse_grammar(fixture(name));
    std::vector<LinearStrategy> strategies =
        compile_strategies(g, syncparse::strategy::Objective::Time);
    for (const SentencePair& p : enumerate_translations(g, 5))
      REQUIRE(count_derivations(g, p, strategies) == count_derivations_oracle(g, p));
  }
}

TEST_CASE("counts the ambiguous pair") {
  SCFG g = parse_grammar(fixture("ambiguous.sg"));
  std::vector<LinearStrategy> strategies =
      compile_strategies(g, syncparse::strategy::Objective::Space);
  CHECK(count_derivations(g, chars("a", "a"), strategies) == 2);
  CHECK(count_derivations(g, chars("b", "b"), strategies) == 0);
}

TEST_CASE("detects unbounded derivation counts") {
  SCFG g = parse_grammar("S -> S[1] ; S -> S[1]\nS -> a ; S -> a\n");
  std::vector<LinearStrategy> strategies =
      compile_strategies(g, syncparse::strategy::Objective::Space);
  // Recognition still terminates on the cyclic chart.
  CHECK(recognize(g, chars("a", "a"), strategies));
  CHECK_FALSE(recognize(g, chars("b", "b"), strategies));
  CHECK_THROWS_AS(count_derivations(g, chars("a", "a"), strategies), InfiniteDerivations);
}

TEST_CASE("compiled strategies line up with the rules") {
  SCFG g = parse_grammar(fixture("running.sg"));
  for (auto objective :
       {syncparse::strategy::Objective::Space, syncparse::strategy::Objective::Time}) {
    std::vector<LinearStrategy> strategies = compile_strategies(g, objective);
    REQUIRE(strategies.size() == g.rules.size());
    for (size_t i = 0; i < g.rules.size(); ++i)
      CHECK(strategies[i].size() == g.rules[i].r);
  }
  SCFG wide = parse_grammar(
      "S -> A[1] A[2] A[3] A[4] A[5] A[6] ; S -> A[6] A[1] A[4] A[2] A[5] A[3]\n"
      "A -> a ; A -> a\n");
  syncparse::Permutation pi = rule_permutation(wide.rules[0]);
  LinearStrategy for_space = compile_strategies(wide, syncparse::strategy::Objective::Space)[0];
  LinearStrategy for_time = compile_strategies(wide, syncparse::strategy::Objective::Time)[0];
  CHECK(syncparse::strategy::evaluate(pi, for_space).max_fo == 3);
  CHECK(syncparse::strategy::evaluate(pi, for_time).max_t == 8);
}

TEST_CASE("parse statistics stay consistent") {
  SCFG g = parse_grammar(fixture("running.sg"));
  ParseStats stats;
  CHECK(parse_with(g, chars("aabbccdd", "ddccbbaa"), &stats));
  CHECK(stats.items_inserted > 0);
  CHECK(stats.states_inserted > 0);
  CHECK(stats.arity_violations == 0);
  CHECK(stats.max_arity <= 8);
  long long per_step_total = 0;
  for (long long c : stats.states_per_step) per_step_total += c;
  CHECK(per_step_total == stats.states_inserted);
}

}  // TEST_SUITE

TEST_SUITE("slow") {

TEST_CASE("six-way concatenation scaling") {
  SCFG g = parse_grammar(
      "S -> A[1] A[2] A[3] A[4] A[5] A[6] ; S -> A[6] A[1] A[4] A[2] A[5] A[3]\n"
      "A -> a A[1] ; A -> a A[1]\n"
      "A -> a ; A -> a\n");
  std::vector<LinearStrategy> ident, tuned;
  for (const SynchronousRule& rule : g.rules) {
    ident.push_back(LinearStrategy::left_to_right(rule.r));
    tuned.push_back(LinearStrategy::left_to_right(rule.r));
  }
  tuned[0] = LinearStrategy({4, 5, 2, 3, 1, 6});

  double prev_ratio = 2.0;
  for (int n : {6, 12, 18, 24}) {
    SentencePair p{std::vector<std::string>(n, "a"), std::vector<std::string>(n, "a")};
    ParseStats stats_ident, stats_tuned;
    REQUIRE(recognize(g, p, ident, &stats_ident));
    REQUIRE(recognize(g, p, tuned, &stats_tuned));
    CHECK(stats_ident.arity_violations == 0);
    CHECK(stats_tuned.arity_violations == 0);
    long long peak_ident = *std::max_element(stats_ident.states_per_step.begin(),
                                             stats_ident.states_per_step.end());
    long long peak_tuned = *std::max_element(stats_tuned.states_per_step.begin(),
                                             stats_tuned.states_per_step.end());
    // The tuned order keeps at most three spans per state, the left-to-right
    // order four; peak state counts must respect the corresponding
    // polynomial bounds.
    CHECK(static_cast<double>(peak_tuned) <= 60.0 * std::pow(n, 6));
    CHECK(static_cast<double>(peak_ident) <= 60.0 * std::pow(n, 8));
    double ratio = static_cast<double>(peak_tuned) / static_cast<double>(peak_ident);
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
}

}  // TEST_SUITE
