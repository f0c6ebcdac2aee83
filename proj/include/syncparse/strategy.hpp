#ifndef SYNCPARSE_STRATEGY_HPP
#define SYNCPARSE_STRATEGY_HPP

#include <string>
#include <vector>

#include "syncparse/permutation.hpp"

namespace syncparse {
namespace strategy {

// Per-step evaluation of a linear strategy for a rule permutation.
//   ib[k-1]    internal boundaries after step k
//   eb[k-1]    external boundaries after step k (0..4, nondecreasing)
//   fo[k-1]    fan-out after step k, (ib+eb)/2
//   delta[k-1] independent boundaries introduced by step k (0..4)
//   t[k-1]     step time exponent, 2*fo(k-1) + delta(k)
struct StrategyReport {
  std::vector<int> ib, eb, fo, delta, t;
  int max_fo = 0;
  int max_t = 0;
  int space_exponent = 0;  // 2 * max_fo
  int time_exponent = 0;   // max_t
};

// Result of an exact strategy search.
struct OptimizeResult {
  LinearStrategy strategy;
  int value = 0;
  // Number of subset states (exact DP) or full orders (brute force) examined.
  long long states_explored = 0;
};

// Decoding cost summary for a rule under a language model of order m.
// f1/f2 are the per-side span counts (f1 + f2 = fan-out); per-step time
// exponent is source_vars + (m-1) * target_vars for the combination at that
// step, with source_vars = 2*f1[k-1] + delta_c[k] (distinct source boundary
// variables) and target_vars analogously on the target side.
struct DecodingExponents {
  int m = 2;
  std::vector<int> f1, f2;
  std::vector<int> source_vars, target_vars;  // C[k], E[k]
  std::vector<int> time;                      // C[k] + (m-1)*E[k]
  int max_time = 0;
  int space_exponent = 0;  // max_k f1[k] + 2*(m-1)*f2[k]
};

// Count of internal boundaries of the step-k state (four-sum form over
// adjacent rule positions on both sides).
int internal_boundaries(const Permutation& p, const LinearStrategy& s, int k);

// Count of external boundaries of the step-k state (four indicators for the
// extreme occurrences on both sides).
int external_boundaries(const Permutation& p, const LinearStrategy& s, int k);

// (ib + eb) / 2, the number of spans the step-k state covers.
int fan_out(const Permutation& p, const LinearStrategy& s, int k);

// Number of the step-k pair's span boundaries not already present in the
// step-(k-1) state.
int independent_boundaries(const Permutation& p, const LinearStrategy& s, int k);

// 2*fan_out(k-1) + independent_boundaries(k); fan_out at step 0 is 0.
int step_time_exponent(const Permutation& p, const LinearStrategy& s, int k);

// Full per-step profile plus maxima.
StrategyReport evaluate(const Permutation& p, const LinearStrategy& s);

// Exact minimization of max fan-out over all strategies (subset DP,
// lexicographically least witness). Throws LimitError above size limit.
OptimizeResult optimize_space(const Permutation& p, int limit = 20);

// Exact minimization of max step time exponent, same contract.
OptimizeResult optimize_time(const Permutation& p, int limit = 20);

enum class Objective { Space, Time };

// Factorial enumeration over all strategies; independent check for the DPs.
// Limited to r <= 9.
OptimizeResult brute_force_optimize(const Permutation& p, Objective objective);

// Decoding space/time exponents under an order-m language model (m >= 2).
DecodingExponents decoding_exponents(const Permutation& p, const LinearStrategy& s, int m);

// JSON text for CLI reports.
std::string report_to_json(const StrategyReport& rep);

}  // namespace strategy
}  // namespace syncparse

#endif
