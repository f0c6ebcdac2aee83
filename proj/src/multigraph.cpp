#include "syncparse/multigraph.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace syncparse {
namespace multigraph {

Multigraph from_permutation(const Permutation& p) {
  const int r = p.size();
  if (r < 2) throw InputError("permutation multigraph needs size >= 2, got " + std::to_string(r));

  std::map<std::pair<int, int>, int> mult;
  const auto add = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    mult[{u, v}] += 1;
  };
  for (int i = 1; i < r; ++i) add(i, i + 1);          // red path
  for (int k = 1; k < r; ++k) add(p(k), p(k + 1));    // green path

  Multigraph g;
  g.n = r;
  for (const auto& [uv, m] : mult) {
    assert(m <= 2);
    g.edges.push_back({uv.first, uv.second, m});
  }
  g.has_endpoints = true;
  g.endpoints = {1, r, p(1), p(r)};
  return g;
}

namespace {

void check_arrangement(const Multigraph& g, const LinearArrangement& a) {
  if (a.size() != g.n)
    throw InputError("arrangement size " + std::to_string(a.size()) +
                     " does not match graph order " + std::to_string(g.n));
}

void check_endpoints(const Multigraph& g, const char* op) {
  if (!g.has_endpoints)
    throw InputError(std::string(op) + " requires a graph with endpoint markers");
}

std::vector<int> endpoint_positions(const Multigraph& g, const LinearArrangement& a) {
  std::vector<int> eps;
  for (int v : g.endpoints) eps.push_back(a.position(v));
  std::sort(eps.begin(), eps.end());
  return eps;
}

}  // namespace

std::vector<int> width_profile(const Multigraph& g, const LinearArrangement& a) {
  check_arrangement(g, a);
  std::vector<int> diff(g.n + 2, 0);
  for (const auto& e : g.edges) {
    const int p1 = std::min(a.position(e.u), a.position(e.v));
    const int p2 = std::max(a.position(e.u), a.position(e.v));
    diff[p1] += e.mult;
    diff[p2] -= e.mult;
  }
  std::vector<int> wd(g.n, 0);
  int run = 0;
  for (int i = 1; i <= g.n; ++i) {
    run += diff[i];
    wd[i - 1] = run;
  }
  assert(wd[g.n - 1] == 0);
  return wd;
}

std::vector<int> extended_width_profile(const Multigraph& g, const LinearArrangement& a) {
  check_endpoints(g, "extended width");
  std::vector<int> out = width_profile(g, a);
  const std::vector<int> eps = endpoint_positions(g, a);
  for (int i = 1; i <= g.n; ++i) {
    const int placed =
        static_cast<int>(std::upper_bound(eps.begin(), eps.end(), i) - eps.begin());
    out[i - 1] += placed;
  }
  return out;
}

std::vector<int> modified_width_profile(const Multigraph& g, const LinearArrangement& a) {
  check_arrangement(g, a);
  std::vector<int> diff(g.n + 2, 0);
  for (const auto& e : g.edges) {
    const int p1 = std::min(a.position(e.u), a.position(e.v));
    const int p2 = std::max(a.position(e.u), a.position(e.v));
    if (p2 > p1 + 1) {
      diff[p1 + 1] += e.mult;
      diff[p2] -= e.mult;
    }
  }
  std::vector<int> mwd(g.n, 0);
  int run = 0;
  for (int i = 1; i <= g.n; ++i) {
    run += diff[i];
    mwd[i - 1] = run;
  }
  return mwd;
}

std::vector<int> extended_modified_width_profile(const Multigraph& g,
                                                 const LinearArrangement& a) {
  check_endpoints(g, "extended modified width");
  std::vector<int> out = modified_width_profile(g, a);
  const std::vector<int> eps = endpoint_positions(g, a);
  for (int i = 1; i <= g.n; ++i) {
    const int strictly_left =
        static_cast<int>(std::lower_bound(eps.begin(), eps.end(), i) - eps.begin());
    out[i - 1] += strictly_left;
  }
  return out;
}

namespace {

// Shared machinery for the three subset DPs. Vertex v maps to mask bit v-1.
struct DpContext {
  int n;
  uint32_t full;
  std::vector<uint32_t> adj1, adj2;  // neighbors via mult-1 / mult-2 edges
  uint32_t epA = 0, epB = 0;         // endpoint marker masks (first and second marker per vertex)

  DpContext(const Multigraph& g, bool endpoints) {
    n = g.n;
    full = (n == 32) ? ~uint32_t(0) : ((uint32_t(1) << n) - 1);
    adj1.assign(n, 0);
    adj2.assign(n, 0);
    for (const auto& e : g.edges) {
      auto& au = (e.mult == 2) ? adj2 : adj1;
      au[e.u - 1] |= uint32_t(1) << (e.v - 1);
      au[e.v - 1] |= uint32_t(1) << (e.u - 1);
    }
    if (endpoints) {
      for (int v : g.endpoints) {
        const uint32_t bit = uint32_t(1) << (v - 1);
        if (epA & bit)
          epB |= bit;
        else
          epA |= bit;
      }
    }
  }

  int weight_to(int v, uint32_t mask) const {
    return std::popcount(adj1[v - 1] & mask) + 2 * std::popcount(adj2[v - 1] & mask);
  }

  int endpoints_in(uint32_t mask) const {
    return std::popcount(epA & mask) + std::popcount(epB & mask);
  }
};

SolverResult subset_dp(const Multigraph& g, WidthVariant variant, int limit, int threads) {
  if (g.n < 1) throw InputError("empty graph");
  if (g.n > limit)
    throw LimitError("graph order " + std::to_string(g.n) + " exceeds solver limit " +
                     std::to_string(limit));
  if (threads < 1) throw InputError("thread count must be >= 1");
  const bool extended = variant != WidthVariant::Cut;
  if (extended) check_endpoints(g, "extended cutwidth solver");

  const DpContext ctx(g, extended);
  const size_t count = size_t(1) << g.n;

  // cost[S] = edge weight leaving S; filled in ascending mask order, or in
  // parallel chunks via the direct per-vertex sum. Both fills produce the
  // same integers, so the thread count never changes the result.
  std::vector<uint16_t> cost(count);
  cost[0] = 0;
  if (threads == 1 || count < (size_t(1) << 16)) {
    for (uint32_t s = 1; s < count; ++s) {
      const int low = std::countr_zero(s) + 1;
      const uint32_t rest = s & (s - 1);
      cost[s] = static_cast<uint16_t>(cost[rest] + ctx.weight_to(low, ctx.full & ~s) -
                                      ctx.weight_to(low, rest));
    }
  } else {
    const int workers = std::min<int>(threads, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const size_t lo = std::max<size_t>(1, w * chunk);
      const size_t hi = std::min(count, (w + 1) * chunk);
      if (lo >= hi) continue;
      pool.emplace_back([&, lo, hi] {
        for (size_t s = lo; s < hi; ++s) {
          const uint32_t mask = static_cast<uint32_t>(s);
          const uint32_t outside = ctx.full & ~mask;
          int total = 0;
          for (uint32_t rem = mask; rem;) {
            const int v = std::countr_zero(rem) + 1;
            rem &= rem - 1;
            total += ctx.weight_to(v, outside);
          }
          cost[s] = static_cast<uint16_t>(total);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // h[S] = best achievable maximum over the remaining steps, prefix S placed.
  std::vector<uint16_t> h(count);
  h[ctx.full] = 0;
  const auto step_value = [&](uint32_t s, int v, uint32_t next) -> int {
    switch (variant) {
      case WidthVariant::Cut:
        return cost[next];
      case WidthVariant::ExtendedCut:
        return cost[next] + ctx.endpoints_in(next);
      case WidthVariant::ExtendedModifiedCut:
      default:
        return cost[s] - ctx.weight_to(v, s) + ctx.endpoints_in(s);
    }
  };
  for (uint32_t s = ctx.full; s-- > 0;) {
    int best = 0xffff;
    for (uint32_t rem = ctx.full & ~s; rem;) {
      const int v = std::countr_zero(rem) + 1;
      rem &= rem - 1;
      const uint32_t next = s | (uint32_t(1) << (v - 1));
      best = std::min(best, std::max(step_value(s, v, next), int(h[next])));
    }
    h[s] = static_cast<uint16_t>(best);
  }

  SolverResult res;
  res.value = h[0];
  res.states_explored = static_cast<long long>(count);

  // Lexicographically least optimal vertex order via forward greedy.
  std::vector<int> order;
  order.reserve(g.n);
  uint32_t s = 0;
  for (int k = 1; k <= g.n; ++k) {
    for (int v = 1; v <= g.n; ++v) {
      if ((s >> (v - 1)) & 1u) continue;
      const uint32_t next = s | (uint32_t(1) << (v - 1));
      if (std::max(step_value(s, v, next), int(h[next])) <= res.value) {
        order.push_back(v);
        s = next;
        break;
      }
    }
  }
  assert(static_cast<int>(order.size()) == g.n);
  std::vector<int> pos(g.n);
  for (int i = 0; i < g.n; ++i) pos[order[i] - 1] = i + 1;
  res.witness = LinearArrangement(std::move(pos));
  return res;
}

}  // namespace

SolverResult cutwidth_exact(const Multigraph& g, int limit, int threads) {
  return subset_dp(g, WidthVariant::Cut, limit, threads);
}

SolverResult extended_cutwidth_exact(const Multigraph& g, int limit, int threads) {
  return subset_dp(g, WidthVariant::ExtendedCut, limit, threads);
}

SolverResult extended_modified_cutwidth_exact(const Multigraph& g, int limit, int threads) {
  return subset_dp(g, WidthVariant::ExtendedModifiedCut, limit, threads);
}

SolverResult brute_force_width(const Multigraph& g, WidthVariant variant) {
  if (g.n < 1) throw InputError("empty graph");
  if (g.n > 8)
    throw LimitError("brute-force width solver limited to order 8, got " + std::to_string(g.n));
  if (variant != WidthVariant::Cut) check_endpoints(g, "extended brute-force solver");

  std::vector<int> order(g.n);
  for (int i = 0; i < g.n; ++i) order[i] = i + 1;

  SolverResult res;
  res.value = -1;
  do {
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) pos[order[i] - 1] = i + 1;
    const LinearArrangement a(pos);
    std::vector<int> profile;
    switch (variant) {
      case WidthVariant::Cut:
        profile = width_profile(g, a);
        break;
      case WidthVariant::ExtendedCut:
        profile = extended_width_profile(g, a);
        break;
      case WidthVariant::ExtendedModifiedCut:
        profile = extended_modified_width_profile(g, a);
        break;
    }
    const int value = *std::max_element(profile.begin(), profile.end());
    ++res.states_explored;
    if (res.value < 0 || value < res.value) {
      res.value = value;
      res.witness = a;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return res;
}

LinearArrangement strategy_to_arrangement(const LinearStrategy& s) {
  return LinearArrangement(s.inverse_map());
}

LinearStrategy arrangement_to_strategy(const LinearArrangement& a) {
  return LinearStrategy(a.vertex_order());
}

Multigraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Multigraph g;
  int m = -1;
  int read_edges = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (m < 0) {
      try {
        g.n = std::stoi(first);
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(lineno) + ": bad vertex count '" + first + "'");
      }
      if (!(ls >> m) || g.n < 1 || m < 0)
        throw InputError("line " + std::to_string(lineno) + ": expected header 'n m'");
      continue;
    }
    if (first == "E:") {
      int a, b, c, d;
      if (!(ls >> a >> b >> c >> d))
        throw InputError("line " + std::to_string(lineno) + ": endpoint line needs 4 vertices");
      for (int v : {a, b, c, d})
        if (v < 1 || v > g.n)
          throw InputError("line " + std::to_string(lineno) + ": endpoint vertex out of range");
      g.has_endpoints = true;
      g.endpoints = {a, b, c, d};
      continue;
    }
    int u, v, mult;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw InputError("line " + std::to_string(lineno) + ": bad edge line");
    }
    if (!(ls >> v >> mult))
      throw InputError("line " + std::to_string(lineno) + ": expected 'u v mult'");
    if (u < 1 || u > g.n || v < 1 || v > g.n || u == v)
      throw InputError("line " + std::to_string(lineno) + ": edge endpoints out of range");
    if (mult != 1 && mult != 2)
      throw InputError("line " + std::to_string(lineno) + ": multiplicity must be 1 or 2");
    g.edges.push_back({std::min(u, v), std::max(u, v), mult});
    ++read_edges;
  }
  if (m < 0) throw InputError("missing 'n m' header");
  if (read_edges != m)
    throw InputError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(read_edges));
  return g;
}

std::string format_graph(const Multigraph& g) {
  std::vector<Multigraph::Edge> edges = g.edges;
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v, a.mult) < std::tie(b.u, b.v, b.mult);
  });
  std::string out = std::to_string(g.n) + " " + std::to_string(edges.size()) + "\n";
  for (const auto& e : edges)
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::to_string(e.mult) + "\n";
  if (g.has_endpoints) {
    out += "E:";
    for (int v : g.endpoints) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

}  // namespace multigraph
}  // namespace syncparse
