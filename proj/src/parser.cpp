#include "syncparse/parser.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "syncparse/strategy.hpp"

namespace syncparse {
namespace parser {

namespace {

using grammar::SCFG;
using grammar::SentencePair;
using grammar::Symbol;
using grammar::SynchronousRule;

constexpr int kMaxRuns = 4;  // per side; arity is capped at 2*2*kMaxRuns

enum class Mode : uint8_t { NewSpan, ExtendLow, ExtendHigh, Merge };

struct SidePlan {
  Mode mode = Mode::NewSpan;
  int run_index = 0;            // run the child attaches to, or insertion slot
  const std::vector<std::string>* gap_low = nullptr;   // terminals before the child
  const std::vector<std::string>* gap_high = nullptr;  // terminals after the child
  int runs_after = 0;
};

struct StepPlan {
  int child_v = 0;  // canonical index collected at this step
  int child_j = 0;  // its right-component position
  int pair_id = -1; // name pair of the child item
  SidePlan left, right;
  int expected_arity = 0;  // 2 * fan-out from the strategy formulas
  int key_parts = 0;       // number of forced endpoints in the join key
};

struct RulePlan {
  const SynchronousRule* rule = nullptr;
  LinearStrategy strategy;
  int r = 0;
  std::vector<StepPlan> steps;                    // steps[k-1]
  std::vector<std::vector<std::string>> lgap, rgap;  // gap i sits between child i and i+1
  std::vector<std::string> lpre, lpost, rpre, rpost;  // terminals outside child 1..r
  int produced_pair = -1;  // name pair of the completed item
  // r = 0 only: the two fixed terminal strings.
  std::vector<std::string> flat_left, flat_right;
};

struct Span {
  uint16_t lo = 0, hi = 0;
};

struct StateRec {
  uint16_t rule = 0;
  uint16_t step = 0;
  uint8_t f1 = 0, f2 = 0;
  std::array<Span, kMaxRuns> left, right;
};

struct ItemRec {
  int pair_id = 0;
  Span left, right;
  // Recording fields, used only by count_derivations.
  long long seed_ways = 0;
  std::vector<int> parent_states;
};

// Exact packed boundaries: unused run slots are kept zeroed, and (f1, f2) is
// fixed per (rule, step), so two states collide only when truly equal.
struct StateKey {
  std::array<uint64_t, 4> w{};
  bool operator==(const StateKey& o) const { return w == o.w; }
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (uint64_t x : k.w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<size_t>(h);
  }
};

StateKey state_key(const StateRec& s) {
  StateKey k;
  auto pack = [](const Span& a, const Span& b) {
    return (static_cast<uint64_t>(a.lo) << 48) | (static_cast<uint64_t>(a.hi) << 32) |
           (static_cast<uint64_t>(b.lo) << 16) | static_cast<uint64_t>(b.hi);
  };
  k.w[0] = pack(s.left[0], s.left[1]);
  k.w[1] = pack(s.left[2], s.left[3]);
  k.w[2] = pack(s.right[0], s.right[1]);
  k.w[3] = pack(s.right[2], s.right[3]);
  return k;
}

bool match_tokens(const std::vector<std::string>& w, int pos, const std::vector<std::string>& t) {
  if (pos < 0 || pos + static_cast<int>(t.size()) > static_cast<int>(w.size())) return false;
  for (size_t i = 0; i < t.size(); ++i)
    if (w[pos + i] != t[i]) return false;
  return true;
}

// Builds the per-step transition plan for one rule under one strategy.
SidePlan side_plan(const std::vector<bool>& collected, int pos, int count,
                   const std::vector<std::vector<std::string>>& gaps) {
  SidePlan out;
  bool low = pos > 1 && collected[pos - 1];
  bool high = pos < count && collected[pos + 1];
  // Runs of the prior collected set, by smallest member.
  int runs_before = 0;
  int run_of_prev = -1, run_of_next = -1;
  for (int v = 1; v <= count; ++v) {
    if (!collected[v]) continue;
    if (v == 1 || !collected[v - 1]) ++runs_before;
    if (v == pos - 1) run_of_prev = runs_before - 1;
    if (v == pos + 1) run_of_next = runs_before - 1;
  }
  if (low && high) {
    out.mode = Mode::Merge;
    out.run_index = run_of_prev;
    out.gap_low = &gaps[pos - 1];
    out.gap_high = &gaps[pos];
    out.runs_after = runs_before - 1;
  } else if (low) {
    out.mode = Mode::ExtendHigh;
    out.run_index = run_of_prev;
    out.gap_low = &gaps[pos - 1];
    out.runs_after = runs_before;
  } else if (high) {
    out.mode = Mode::ExtendLow;
    out.run_index = run_of_next;
    out.gap_high = &gaps[pos];
    out.runs_after = runs_before;
  } else {
    out.mode = Mode::NewSpan;
    int slot = 0;
    for (int v = 1; v < pos; ++v)
      if (collected[v] && (v == 1 || !collected[v - 1])) ++slot;
    out.run_index = slot;
    out.runs_after = runs_before + 1;
  }
  return out;
}

int key_parts_of(const SidePlan& p) {
  switch (p.mode) {
    case Mode::NewSpan: return 0;
    case Mode::Merge: return 2;
    default: return 1;
  }
}

struct PairTable {
  std::map<std::pair<std::string, std::string>, int> ids;
  int get(const std::string& l, const std::string& r) {
    auto [it, fresh] = ids.emplace(std::make_pair(l, r), static_cast<int>(ids.size()));
    (void)fresh;
    return it->second;
  }
};

struct Engine {
  const SCFG* g = nullptr;
  const SentencePair* input = nullptr;
  bool recording = false;
  ParseStats stats;

  int n1 = 0, n2 = 0;
  PairTable pairs;
  std::vector<RulePlan> plans;
  // consumers[pid]: (rule index, step) pairs whose child has that name pair.
  std::vector<std::vector<std::pair<int, int>>> consumers;

  std::vector<ItemRec> items;
  std::vector<std::unordered_map<uint64_t, int>> item_ids;  // per pair id
  std::vector<StateRec> states;
  // Recording: per state, the (previous state or -1, item) combinations.
  std::vector<std::vector<std::pair<int, int>>> state_sources;
  std::unordered_map<uint64_t, std::unordered_map<StateKey, int, StateKeyHash>> state_ids;

  // Join indexes per (rule, step): forced-endpoint key -> ids.
  std::unordered_map<uint64_t, std::unordered_map<uint64_t, std::vector<int>>> state_join,
      item_join;

  std::deque<std::pair<bool, int>> agenda;  // (is_item, id)
  int goal_pid = -1;
  int goal_item = -1;

  static uint64_t slot_of(int rule, int step) {
    return (static_cast<uint64_t>(rule) << 16) | static_cast<uint64_t>(step);
  }

  void build_plans(const std::vector<LinearStrategy>& strategies) {
    plans.resize(g->rules.size());
    for (size_t ri = 0; ri < g->rules.size(); ++ri) {
      const SynchronousRule& rule = g->rules[ri];
      RulePlan& plan = plans[ri];
      plan.rule = &rule;
      plan.r = rule.r;
      plan.strategy = strategies[ri];
      if (static_cast<int>(plan.strategy.order.size()) != rule.r)
        throw InputError("strategy for rule " + rule.label + " has the wrong length");
      plan.produced_pair = pairs.get(rule.left_lhs, rule.right_lhs);

      // Terminal runs around the children, per component.
      plan.lgap.assign(std::max(0, rule.r - 1) + 1, {});
      plan.rgap.assign(std::max(0, rule.r - 1) + 1, {});
      auto split = [](const std::vector<Symbol>& rhs, std::vector<std::string>& pre,
                      std::vector<std::vector<std::string>>& gaps, std::vector<std::string>& post,
                      int r) {
        int seen = 0;
        std::vector<std::string>* cur = &pre;
        for (const Symbol& s : rhs) {
          if (s.is_nonterminal) {
            ++seen;
            cur = seen == r ? &post : &gaps[seen];
          } else {
            cur->push_back(s.name);
          }
        }
      };
      split(rule.left_rhs, plan.lpre, plan.lgap, plan.lpost, rule.r);
      split(rule.right_rhs, plan.rpre, plan.rgap, plan.rpost, rule.r);

      if (rule.r == 0) {
        for (const Symbol& s : rule.left_rhs) plan.flat_left.push_back(s.name);
        for (const Symbol& s : rule.right_rhs) plan.flat_right.push_back(s.name);
        continue;
      }

      Permutation pi = grammar::rule_permutation(rule);
      Permutation pinv = pi.inverse();
      std::vector<bool> collected(rule.r + 2, false);
      std::vector<bool> collected_right(rule.r + 2, false);
      plan.steps.resize(rule.r);
      for (int k = 1; k <= rule.r; ++k) {
        StepPlan& sp = plan.steps[k - 1];
        sp.child_v = plan.strategy(k);
        sp.child_j = pinv(sp.child_v);
        sp.pair_id = pairs.get(rule.left_nt_names[sp.child_v - 1],
                               rule.right_nt_names[sp.child_v - 1]);
        sp.left = side_plan(collected, sp.child_v, rule.r, plan.lgap);
        sp.right = side_plan(collected_right, sp.child_j, rule.r, plan.rgap);
        sp.expected_arity = 2 * strategy::fan_out(pi, plan.strategy, k);
        sp.key_parts = key_parts_of(sp.left) + key_parts_of(sp.right);
        if (sp.left.runs_after > kMaxRuns || sp.right.runs_after > kMaxRuns)
          throw LimitError("rule " + rule.label + ": strategy fan-out exceeds supported arity");
        collected[sp.child_v] = true;
        collected_right[sp.child_j] = true;
      }
    }
    consumers.assign(pairs.ids.size(), {});
    for (size_t ri = 0; ri < plans.size(); ++ri)
      for (int k = 1; k <= plans[ri].r; ++k)
        consumers[plans[ri].steps[k - 1].pair_id].emplace_back(static_cast<int>(ri), k);
    auto it = pairs.ids.find(std::make_pair(g->start, g->start));
    if (it != pairs.ids.end()) goal_pid = it->second;
    item_ids.resize(pairs.ids.size());
  }

  static uint64_t item_code(const ItemRec& it) {
    return (static_cast<uint64_t>(it.left.lo) << 48) | (static_cast<uint64_t>(it.left.hi) << 32) |
           (static_cast<uint64_t>(it.right.lo) << 16) | static_cast<uint64_t>(it.right.hi);
  }

  int add_item(int pid, int l1, int l2, int r1, int r2) {
    ItemRec rec;
    rec.pair_id = pid;
    rec.left = {static_cast<uint16_t>(l1), static_cast<uint16_t>(l2)};
    rec.right = {static_cast<uint16_t>(r1), static_cast<uint16_t>(r2)};
    uint64_t code = item_code(rec);
    auto [it, fresh] = item_ids[pid].emplace(code, static_cast<int>(items.size()));
    if (fresh) {
      items.push_back(std::move(rec));
      ++stats.items_inserted;
      if (pid == goal_pid && l1 == 0 && l2 == n1 && r1 == 0 && r2 == n2)
        goal_item = it->second;
      agenda.emplace_back(true, it->second);
    }
    return it->second;
  }

  // Item-side join key under a step plan: the endpoints the plan forces.
  static uint64_t item_key(const StepPlan& sp, const ItemRec& it) {
    uint64_t key = 1;  // bias so an empty key is still nonzero
    auto push = [&key](uint16_t v) { key = (key << 16) | v; };
    switch (sp.left.mode) {
      case Mode::NewSpan: break;
      case Mode::ExtendHigh: push(it.left.lo); break;
      case Mode::ExtendLow: push(it.left.hi); break;
      case Mode::Merge: push(it.left.lo); push(it.left.hi); break;
    }
    switch (sp.right.mode) {
      case Mode::NewSpan: break;
      case Mode::ExtendHigh: push(it.right.lo); break;
      case Mode::ExtendLow: push(it.right.hi); break;
      case Mode::Merge: push(it.right.lo); push(it.right.hi); break;
    }
    return key;
  }

  // State-side join key: what the state demands of the child's endpoints.
  // Returns false when the required terminal gap text is absent, which kills
  // the state for this step.
  bool state_key_for(const StepPlan& sp, const StateRec& st, uint64_t* key_out) const {
    uint64_t key = 1;
    auto push = [&key](int v) { key = (key << 16) | static_cast<uint16_t>(v); };
    const std::vector<std::string>& w1 = input->w1;
    const std::vector<std::string>& w2 = input->w2;
    auto side = [&](const SidePlan& p, const std::array<Span, kMaxRuns>& runs,
                    const std::vector<std::string>& w) {
      switch (p.mode) {
        case Mode::NewSpan:
          return true;
        case Mode::ExtendHigh: {
          int at = runs[p.run_index].hi;
          if (!match_tokens(w, at, *p.gap_low)) return false;
          push(at + static_cast<int>(p.gap_low->size()));
          return true;
        }
        case Mode::ExtendLow: {
          int at = runs[p.run_index].lo - static_cast<int>(p.gap_high->size());
          if (!match_tokens(w, at, *p.gap_high)) return false;
          push(at);
          return true;
        }
        case Mode::Merge: {
          int lo = runs[p.run_index].hi;
          if (!match_tokens(w, lo, *p.gap_low)) return false;
          int start = lo + static_cast<int>(p.gap_low->size());
          int end = runs[p.run_index + 1].lo - static_cast<int>(p.gap_high->size());
          if (end < start) return false;
          if (!match_tokens(w, end, *p.gap_high)) return false;
          push(start);
          push(end);
          return true;
        }
      }
      return false;
    };
    if (!side(sp.left, st.left, w1)) return false;
    if (!side(sp.right, st.right, w2)) return false;
    *key_out = key;
    return true;
  }

  // Applies the child to one side of the state; false when ordering breaks.
  static bool apply_side(const SidePlan& p, const std::array<Span, kMaxRuns>& in, int count,
                         Span child, std::array<Span, kMaxRuns>* out) {
    switch (p.mode) {
      case Mode::NewSpan: {
        if (p.run_index > 0 && in[p.run_index - 1].hi > child.lo) return false;
        if (p.run_index < count && child.hi > in[p.run_index].lo) return false;
        for (int i = 0; i < p.run_index; ++i) (*out)[i] = in[i];
        (*out)[p.run_index] = child;
        for (int i = p.run_index; i < count; ++i) (*out)[i + 1] = in[i];
        return true;
      }
      case Mode::ExtendHigh: {
        if (p.run_index + 1 < count && child.hi > in[p.run_index + 1].lo) return false;
        *out = in;
        (*out)[p.run_index].hi = child.hi;
        return true;
      }
      case Mode::ExtendLow: {
        if (p.run_index > 0 && in[p.run_index - 1].hi > child.lo) return false;
        *out = in;
        (*out)[p.run_index].lo = child.lo;
        return true;
      }
      case Mode::Merge: {
        for (int i = 0; i <= p.run_index; ++i) (*out)[i] = in[i];
        (*out)[p.run_index].hi = in[p.run_index + 1].hi;
        for (int i = p.run_index + 2; i < count; ++i) (*out)[i - 1] = in[i];
        return true;
      }
    }
    return false;
  }

  void add_state(int rule, int step, const StateRec& rec, int prev_state, int item) {
    uint64_t slot = slot_of(rule, step);
    auto [it, fresh] = state_ids[slot].emplace(state_key(rec), static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(rec);
      if (recording) state_sources.emplace_back();
      ++stats.states_inserted;
      if (static_cast<int>(stats.states_per_step.size()) < step)
        stats.states_per_step.resize(step, 0);
      ++stats.states_per_step[step - 1];
      int arity = 2 * (rec.f1 + rec.f2);
      stats.max_arity = std::max(stats.max_arity, arity);
      if (arity != plans[rule].steps[step - 1].expected_arity) ++stats.arity_violations;
      agenda.emplace_back(false, it->second);
    }
    if (recording) state_sources[it->second].emplace_back(prev_state, item);
  }

  // Start a step-1 state from a child item.
  void seed_state(int rule, const ItemRec& child, int item_id) {
    StateRec rec;
    rec.rule = static_cast<uint16_t>(rule);
    rec.step = 1;
    rec.f1 = 1;
    rec.f2 = 1;
    rec.left[0] = child.left;
    rec.right[0] = child.right;
    add_state(rule, 1, rec, -1, item_id);
  }

  void advance(int rule, int step, int state_id, int item_id) {
    ++stats.combination_attempts;
    const StepPlan& sp = plans[rule].steps[step - 1];
    const StateRec& st = states[state_id];
    const ItemRec& child = items[item_id];
    StateRec next;
    next.rule = static_cast<uint16_t>(rule);
    next.step = static_cast<uint16_t>(step);
    next.f1 = static_cast<uint8_t>(sp.left.runs_after);
    next.f2 = static_cast<uint8_t>(sp.right.runs_after);
    if (!apply_side(sp.left, st.left, st.f1, child.left, &next.left)) return;
    if (!apply_side(sp.right, st.right, st.f2, child.right, &next.right)) return;
    add_state(rule, step, next, state_id, item_id);
  }

  void complete(int rule, int state_id) {
    const RulePlan& plan = plans[rule];
    const StateRec& st = states[state_id];
    const std::vector<std::string>& w1 = input->w1;
    const std::vector<std::string>& w2 = input->w2;
    int l1 = st.left[0].lo - static_cast<int>(plan.lpre.size());
    int l2 = st.left[0].hi + static_cast<int>(plan.lpost.size());
    int r1 = st.right[0].lo - static_cast<int>(plan.rpre.size());
    int r2 = st.right[0].hi + static_cast<int>(plan.rpost.size());
    if (l1 < 0 || l2 > n1 || r1 < 0 || r2 > n2) return;
    if (!match_tokens(w1, l1, plan.lpre) || !match_tokens(w1, st.left[0].hi, plan.lpost)) return;
    if (!match_tokens(w2, r1, plan.rpre) || !match_tokens(w2, st.right[0].hi, plan.rpost)) return;
    int id = add_item(plan.produced_pair, l1, l2, r1, r2);
    if (recording) items[id].parent_states.push_back(state_id);
  }

  void seed_flat_rules() {
    for (size_t ri = 0; ri < plans.size(); ++ri) {
      const RulePlan& plan = plans[ri];
      if (plan.r != 0) continue;
      std::vector<int> locc, rocc;
      int ll = static_cast<int>(plan.flat_left.size());
      int rl = static_cast<int>(plan.flat_right.size());
      for (int i = 0; i + ll <= n1; ++i)
        if (match_tokens(input->w1, i, plan.flat_left)) locc.push_back(i);
      for (int i = 0; i + rl <= n2; ++i)
        if (match_tokens(input->w2, i, plan.flat_right)) rocc.push_back(i);
      for (int i : locc)
        for (int j : rocc) {
          int id = add_item(plan.produced_pair, i, i + ll, j, j + rl);
          if (recording) ++items[id].seed_ways;
        }
    }
  }

  void process_item(int item_id) {
    const ItemRec snapshot = items[item_id];
    int pid = snapshot.pair_id;
    for (auto [rule, step] : consumers[pid]) {
      if (step == 1) {
        seed_state(rule, snapshot, item_id);
        continue;
      }
      const StepPlan& sp = plans[rule].steps[step - 1];
      uint64_t key = item_key(sp, snapshot);
      item_join[slot_of(rule, step)][key].push_back(item_id);
      auto sj = state_join.find(slot_of(rule, step));
      if (sj == state_join.end()) continue;
      auto bucket = sj->second.find(key);
      if (bucket == sj->second.end()) continue;
      // The bucket can grow while we work; index-walk a stable copy.
      std::vector<int> matched = bucket->second;
      for (int sid : matched) advance(rule, step, sid, item_id);
    }
  }

  void process_state(int state_id) {
    StateRec st = states[state_id];
    int rule = st.rule;
    int step = st.step;
    if (step == plans[rule].r) {
      complete(rule, state_id);
      return;
    }
    const StepPlan& next = plans[rule].steps[step];
    uint64_t key = 0;
    if (!state_key_for(next, st, &key)) return;  // required gap text missing
    state_join[slot_of(rule, step + 1)][key].push_back(state_id);
    auto ij = item_join.find(slot_of(rule, step + 1));
    if (ij == item_join.end()) return;
    auto bucket = ij->second.find(key);
    if (bucket == ij->second.end()) return;
    std::vector<int> matched = bucket->second;
    for (int iid : matched) advance(rule, step + 1, state_id, iid);
  }

  void run(const SCFG& grammar_in, const SentencePair& p,
           const std::vector<LinearStrategy>& strategies, bool record) {
    g = &grammar_in;
    input = &p;
    recording = record;
    n1 = static_cast<int>(p.w1.size());
    n2 = static_cast<int>(p.w2.size());
    if (n1 >= 65535 || n2 >= 65535) throw LimitError("input too long for the chart encoding");
    if (strategies.size() != grammar_in.rules.size())
      throw InputError("one strategy per rule is required");
    build_plans(strategies);
    seed_flat_rules();
    while (!agenda.empty()) {
      auto [is_item, id] = agenda.front();
      agenda.pop_front();
      if (is_item)
        process_item(id);
      else
        process_state(id);
    }
  }

  long long count() {
    if (goal_item < 0) return 0;
    // Memoized ways over the recorded derivation DAG; a cycle on the stack
    // means the count diverges.
    std::vector<int8_t> item_color(items.size(), 0);
    std::vector<int8_t> state_color(states.size(), 0);
    std::vector<long long> item_ways(items.size(), 0);
    std::vector<long long> state_ways(states.size(), 0);

    struct Frame {
      bool is_item;
      int id;
      size_t edge = 0;
      long long acc = 0;
    };
    std::vector<Frame> stack;
    auto push = [&](bool is_item, int id) -> bool {
      auto& color = is_item ? item_color[id] : state_color[id];
      if (color == 1)
        throw InfiniteDerivations("derivation cycle: the pair has infinitely many derivations");
      if (color == 2) return false;
      color = 1;
      stack.push_back({is_item, id, 0, is_item ? items[id].seed_ways : 0});
      return true;
    };
    push(true, goal_item);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.is_item) {
        const ItemRec& it = items[f.id];
        if (f.edge > 0) f.acc += state_ways[it.parent_states[f.edge - 1]];
        if (f.edge < it.parent_states.size()) {
          int next = it.parent_states[f.edge++];
          push(false, next);
          continue;
        }
        item_ways[f.id] = f.acc;
        item_color[f.id] = 2;
        stack.pop_back();
      } else {
        const auto& sources = state_sources[f.id];
        if (f.edge == sources.size()) {
          long long total = 0;
          for (auto [prev, item] : sources) {
            long long prev_ways = prev < 0 ? 1 : state_ways[prev];
            total += prev_ways * item_ways[item];
          }
          state_ways[f.id] = total;
          state_color[f.id] = 2;
          stack.pop_back();
          continue;
        }
        auto [prev, item] = sources[f.edge];
        // Visit both ends of this source edge before moving on.
        if (prev >= 0 && state_color[prev] != 2) {
          push(false, prev);
          continue;
        }
        if (item_color[item] != 2) {
          push(true, item);
          continue;
        }
        ++f.edge;
      }
    }
    return item_ways[goal_item];
  }
};

}  // namespace

std::vector<LinearStrategy> compile_strategies(const SCFG& g, strategy::Objective objective) {
  std::vector<LinearStrategy> out;
  out.reserve(g.rules.size());
  for (const SynchronousRule& rule : g.rules) {
    if (rule.r == 0) {
      out.emplace_back();
    } else if (rule.r <= 2) {
      out.push_back(LinearStrategy::left_to_right(rule.r));
    } else {
      Permutation pi = grammar::rule_permutation(rule);
      strategy::OptimizeResult res = objective == strategy::Objective::Space
                                         ? strategy::optimize_space(pi)
                                         : strategy::optimize_time(pi);
      out.push_back(res.strategy);
    }
  }
  return out;
}

bool recognize(const SCFG& g, const SentencePair& p, const std::vector<LinearStrategy>& strategies,
               ParseStats* stats) {
  Engine e;
  e.run(g, p, strategies, false);
  if (stats) *stats = e.stats;
  return e.goal_item >= 0;
}

long long count_derivations(const SCFG& g, const SentencePair& p,
                            const std::vector<LinearStrategy>& strategies, ParseStats* stats) {
  Engine e;
  e.run(g, p, strategies, true);
  if (stats) *stats = e.stats;
  return e.count();
}

}  // namespace parser
}  // namespace syncparse
