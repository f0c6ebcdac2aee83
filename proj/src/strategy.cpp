#include "syncparse/strategy.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <sstream>

namespace syncparse {
namespace strategy {

namespace {

void check_sizes(const Permutation& p, const LinearStrategy& s) {
  if (p.size() != s.size())
    throw InputError("permutation size " + std::to_string(p.size()) +
                     " does not match strategy size " + std::to_string(s.size()));
  if (p.size() < 1) throw InputError("empty permutation");
}

void check_step(const Permutation& p, int k) {
  if (k < 1 || k > p.size())
    throw InputError("step " + std::to_string(k) + " out of range 1.." +
                     std::to_string(p.size()));
}

}  // namespace

int internal_boundaries(const Permutation& p, const LinearStrategy& s, int k) {
  check_sizes(p, s);
  check_step(p, k);
  const int r = p.size();
  const std::vector<int> inv = s.inverse_map();
  int term_lo = 0, term_hi = 0, term_rlo = 0, term_rhi = 0;
  for (int h = 1; h <= r - 1; ++h) {
    const bool a = inv[h - 1] <= k;
    const bool b = inv[h] <= k;
    if (a && !b) ++term_lo;
    if (!a && b) ++term_hi;
    const bool c = inv[p(h) - 1] <= k;
    const bool d = inv[p(h + 1) - 1] <= k;
    if (c && !d) ++term_rlo;
    if (!c && d) ++term_rhi;
  }
  return term_lo + term_hi + term_rlo + term_rhi;
}

int external_boundaries(const Permutation& p, const LinearStrategy& s, int k) {
  check_sizes(p, s);
  check_step(p, k);
  const int r = p.size();
  const std::vector<int> inv = s.inverse_map();
  int eb = 0;
  if (inv[0] <= k) ++eb;
  if (inv[r - 1] <= k) ++eb;
  if (inv[p(1) - 1] <= k) ++eb;
  if (inv[p(r) - 1] <= k) ++eb;
  return eb;
}

int fan_out(const Permutation& p, const LinearStrategy& s, int k) {
  const int total = internal_boundaries(p, s, k) + external_boundaries(p, s, k);
  assert(total % 2 == 0);
  return total / 2;
}

int independent_boundaries(const Permutation& p, const LinearStrategy& s, int k) {
  check_sizes(p, s);
  check_step(p, k);
  const int r = p.size();
  const std::vector<int> inv = s.inverse_map();
  // Collected before this step: positions with inverse step < k.
  const auto collected = [&](int pos) { return inv[pos - 1] < k; };
  const int v = s(k);
  const int j = p.inverse()(v);  // linked right position
  int fresh = 0;
  if (!(v > 1 && collected(v - 1))) ++fresh;
  if (!(v < r && collected(v + 1))) ++fresh;
  if (!(j > 1 && collected(p(j - 1)))) ++fresh;
  if (!(j < r && collected(p(j + 1)))) ++fresh;
  return fresh;
}

int step_time_exponent(const Permutation& p, const LinearStrategy& s, int k) {
  const int prev_fo = (k == 1) ? 0 : fan_out(p, s, k - 1);
  return 2 * prev_fo + independent_boundaries(p, s, k);
}

StrategyReport evaluate(const Permutation& p, const LinearStrategy& s) {
  check_sizes(p, s);
  const int r = p.size();
  StrategyReport rep;
  rep.ib.resize(r);
  rep.eb.resize(r);
  rep.fo.resize(r);
  rep.delta.resize(r);
  rep.t.resize(r);
  int prev_fo = 0;
  for (int k = 1; k <= r; ++k) {
    rep.ib[k - 1] = internal_boundaries(p, s, k);
    rep.eb[k - 1] = external_boundaries(p, s, k);
    const int sum = rep.ib[k - 1] + rep.eb[k - 1];
    assert(sum % 2 == 0);
    rep.fo[k - 1] = sum / 2;
    rep.delta[k - 1] = independent_boundaries(p, s, k);
    rep.t[k - 1] = 2 * prev_fo + rep.delta[k - 1];
    prev_fo = rep.fo[k - 1];
    rep.max_fo = std::max(rep.max_fo, rep.fo[k - 1]);
    rep.max_t = std::max(rep.max_t, rep.t[k - 1]);
  }
  rep.space_exponent = 2 * rep.max_fo;
  rep.time_exponent = rep.max_t;
  return rep;
}

namespace {

// Subset helpers for the exact optimizers. Bit i-1 of a mask stands for left
// position i; the matching right-side mask has bit j-1 for right position j.
struct SubsetContext {
  int r;
  std::vector<int> pi;        // pi[j-1] = left position linked to right position j
  std::vector<int> pi_inv;    // pi_inv[v-1] = right position linked to left v
  uint32_t full;

  explicit SubsetContext(const Permutation& p) {
    r = p.size();
    pi.assign(p.image.begin(), p.image.end());
    pi_inv.resize(r);
    for (int j = 1; j <= r; ++j) pi_inv[pi[j - 1] - 1] = j;
    full = (r == 32) ? ~uint32_t(0) : ((uint32_t(1) << r) - 1);
  }

  static int runs(uint32_t mask) { return std::popcount(mask & ~(mask << 1)); }

  uint32_t right_mask(uint32_t left) const {
    uint32_t right = 0;
    for (uint32_t m = left; m;) {
      const int v = std::countr_zero(m) + 1;
      m &= m - 1;
      right |= uint32_t(1) << (pi_inv[v - 1] - 1);
    }
    return right;
  }

  int fan_out_of(uint32_t left) const { return runs(left) + runs(right_mask(left)); }

  // Independent boundaries when collecting left position v on top of set S.
  int delta_of(uint32_t left, int v) const {
    const int j = pi_inv[v - 1];
    const auto in_left = [&](int pos) { return (left >> (pos - 1)) & 1u; };
    int fresh = 0;
    if (!(v > 1 && in_left(v - 1))) ++fresh;
    if (!(v < r && in_left(v + 1))) ++fresh;
    if (!(j > 1 && in_left(pi[j - 2]))) ++fresh;
    if (!(j < r && in_left(pi[j]))) ++fresh;
    return fresh;
  }
};

OptimizeResult optimize_exact(const Permutation& p, Objective objective, int limit) {
  const int r = p.size();
  if (r < 1) throw InputError("empty permutation");
  if (r > limit)
    throw LimitError("permutation size " + std::to_string(r) + " exceeds solver limit " +
                     std::to_string(limit));

  const SubsetContext ctx(p);
  const uint32_t full = ctx.full;
  const size_t count = size_t(1) << r;

  // h[S] = best achievable max step value over the steps that take S to full.
  std::vector<uint8_t> h(count, 0);

  for (uint32_t s = full; s-- > 0;) {
    const uint32_t right = ctx.right_mask(s);
    const int fo_s = SubsetContext::runs(s) + SubsetContext::runs(right);
    int best = 255;
    for (int v = 1; v <= r; ++v) {
      if ((s >> (v - 1)) & 1u) continue;
      const uint32_t next = s | (uint32_t(1) << (v - 1));
      int step;
      if (objective == Objective::Space) {
        const uint32_t right_next = right | (uint32_t(1) << (ctx.pi_inv[v - 1] - 1));
        step = SubsetContext::runs(next) + SubsetContext::runs(right_next);
      } else {
        step = 2 * fo_s + ctx.delta_of(s, v);
      }
      best = std::min(best, std::max(step, int(h[next])));
    }
    h[s] = static_cast<uint8_t>(best);
  }

  const int opt = h[0];

  // Forward greedy reconstruction: smallest feasible position at each step
  // gives the lexicographically least optimal strategy.
  OptimizeResult res;
  res.value = opt;
  res.states_explored = static_cast<long long>(count);
  res.strategy.order.reserve(r);
  uint32_t s = 0;
  for (int k = 1; k <= r; ++k) {
    const uint32_t right = ctx.right_mask(s);
    const int fo_s = SubsetContext::runs(s) + SubsetContext::runs(right);
    for (int v = 1; v <= r; ++v) {
      if ((s >> (v - 1)) & 1u) continue;
      const uint32_t next = s | (uint32_t(1) << (v - 1));
      int step;
      if (objective == Objective::Space) {
        const uint32_t right_next = right | (uint32_t(1) << (ctx.pi_inv[v - 1] - 1));
        step = SubsetContext::runs(next) + SubsetContext::runs(right_next);
      } else {
        step = 2 * fo_s + ctx.delta_of(s, v);
      }
      if (std::max(step, int(h[next])) <= opt) {
        res.strategy.order.push_back(v);
        s = next;
        break;
      }
    }
  }
  assert(static_cast<int>(res.strategy.order.size()) == r);
  return res;
}

}  // namespace

OptimizeResult optimize_space(const Permutation& p, int limit) {
  return optimize_exact(p, Objective::Space, limit);
}

OptimizeResult optimize_time(const Permutation& p, int limit) {
  return optimize_exact(p, Objective::Time, limit);
}

OptimizeResult brute_force_optimize(const Permutation& p, Objective objective) {
  const int r = p.size();
  if (r < 1) throw InputError("empty permutation");
  if (r > 9)
    throw LimitError("brute-force optimizer limited to size 9, got " + std::to_string(r));

  LinearStrategy candidate = LinearStrategy::left_to_right(r);
  OptimizeResult res;
  res.value = -1;
  do {
    const StrategyReport rep = evaluate(p, candidate);
    const int value = (objective == Objective::Space) ? rep.max_fo : rep.max_t;
    ++res.states_explored;
    if (res.value < 0 || value < res.value) {
      res.value = value;
      res.strategy = candidate;
    }
  } while (std::next_permutation(candidate.order.begin(), candidate.order.end()));
  return res;
}

DecodingExponents decoding_exponents(const Permutation& p, const LinearStrategy& s, int m) {
  check_sizes(p, s);
  if (m < 2) throw InputError("language model order must be >= 2, got " + std::to_string(m));
  const int r = p.size();
  const SubsetContext ctx(p);

  DecodingExponents out;
  out.m = m;
  out.f1.resize(r);
  out.f2.resize(r);
  out.source_vars.resize(r);
  out.target_vars.resize(r);
  out.time.resize(r);

  uint32_t left = 0;
  int prev_f1 = 0, prev_f2 = 0;
  for (int k = 1; k <= r; ++k) {
    const int v = s(k);
    const int j = ctx.pi_inv[v - 1];
    const auto in_left = [&](int pos) { return (left >> (pos - 1)) & 1u; };
    int delta_c = 0, delta_e = 0;
    if (!(v > 1 && in_left(v - 1))) ++delta_c;
    if (!(v < r && in_left(v + 1))) ++delta_c;
    if (!(j > 1 && in_left(ctx.pi[j - 2]))) ++delta_e;
    if (!(j < r && in_left(ctx.pi[j]))) ++delta_e;

    left |= uint32_t(1) << (v - 1);
    out.f1[k - 1] = SubsetContext::runs(left);
    out.f2[k - 1] = SubsetContext::runs(ctx.right_mask(left));
    out.source_vars[k - 1] = 2 * prev_f1 + delta_c;
    out.target_vars[k - 1] = 2 * prev_f2 + delta_e;
    out.time[k - 1] = out.source_vars[k - 1] + (m - 1) * out.target_vars[k - 1];
    out.max_time = std::max(out.max_time, out.time[k - 1]);
    out.space_exponent =
        std::max(out.space_exponent, out.f1[k - 1] + 2 * (m - 1) * out.f2[k - 1]);
    prev_f1 = out.f1[k - 1];
    prev_f2 = out.f2[k - 1];
  }
  return out;
}

static void append_array(std::string& out, const char* name, const std::vector<int>& xs) {
  out += '"';
  out += name;
  out += "\":[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  out += ']';
}

std::string report_to_json(const StrategyReport& rep) {
  std::string out = "{";
  append_array(out, "ib", rep.ib);
  out += ',';
  append_array(out, "eb", rep.eb);
  out += ',';
  append_array(out, "fo", rep.fo);
  out += ',';
  append_array(out, "delta", rep.delta);
  out += ',';
  append_array(out, "t", rep.t);
  out += ",\"max_fo\":" + std::to_string(rep.max_fo);
  out += ",\"max_t\":" + std::to_string(rep.max_t);
  out += ",\"space_exponent\":" + std::to_string(rep.space_exponent);
  out += ",\"time_exponent\":" + std::to_string(rep.time_exponent);
  out += '}';
  return out;
}

}  // namespace strategy
}  // namespace syncparse
