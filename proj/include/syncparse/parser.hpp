#ifndef SYNCPARSE_PARSER_HPP
#define SYNCPARSE_PARSER_HPP

#include <string>
#include <vector>

#include "syncparse/grammar.hpp"
#include "syncparse/permutation.hpp"
#include "syncparse/strategy.hpp"

namespace syncparse {
namespace parser {

// Counters filled in by recognize/count_derivations.
struct ParseStats {
  long long items_inserted = 0;        // completed constituents
  long long states_inserted = 0;       // partial rule states across all steps
  long long combination_attempts = 0;  // state+item join candidates examined
  long long arity_violations = 0;      // states whose boundary count != 2*fan-out
  int max_arity = 0;                   // largest boundary count seen on any state
  // states_per_step[k-1]: states inserted at step k, summed over rules.
  std::vector<long long> states_per_step;
};

class InfiniteDerivations : public std::runtime_error {
public:
  explicit InfiniteDerivations(const std::string& msg) : std::runtime_error(msg) {}
};

// One collection order per rule, aligned with g.rules. Rules with r <= 2 get
// the left-to-right order; larger rules are optimized for the objective.
std::vector<LinearStrategy> compile_strategies(const grammar::SCFG& g, strategy::Objective objective);

bool recognize(const grammar::SCFG& g, const grammar::SentencePair& p,
               const std::vector<LinearStrategy>& strategies, ParseStats* stats = nullptr);

// Number of distinct derivations of p. Throws InfiniteDerivations when a
// derivation cycle makes the count unbounded.
long long count_derivations(const grammar::SCFG& g, const grammar::SentencePair& p,
                            const std::vector<LinearStrategy>& strategies,
                            ParseStats* stats = nullptr);

}  // namespace parser
}  // namespace syncparse

#endif
