#include "syncparse/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace syncparse {
namespace reduction {

void CubicGraph::validate() const {
  if (n < 4 || n % 2 != 0)
    throw InputError("cubic graph needs an even vertex count of at least 4");
  std::vector<int> deg(n + 1, 0);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw InputError("edge endpoint out of range: " + std::to_string(u) + " " +
                       std::to_string(v));
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second)
      throw InputError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    ++deg[u];
    ++deg[v];
  }
  for (int v = 1; v <= n; ++v)
    if (deg[v] != 3)
      throw InputError("vertex " + std::to_string(v) + " has degree " +
                       std::to_string(deg[v]) + ", need 3");
}

CubicGraph parse_cubic_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CubicGraph g;
  long long declared = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long x;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) throw InputError("line " + std::to_string(line_no) + ": expected integers");
    if (nums.empty()) continue;
    if (declared < 0) {
      if (nums.size() != 2)
        throw InputError("line " + std::to_string(line_no) + ": expected 'n m' header");
      g.n = static_cast<int>(nums[0]);
      declared = nums[1];
    } else {
      if (nums.size() != 2)
        throw InputError("line " + std::to_string(line_no) + ": expected 'u v'");
      g.edges.emplace_back(static_cast<int>(std::min(nums[0], nums[1])),
                           static_cast<int>(std::max(nums[0], nums[1])));
    }
  }
  if (declared < 0) throw InputError("empty graph input");
  if (declared != static_cast<long long>(g.edges.size()))
    throw InputError("header declares " + std::to_string(declared) + " edges, found " +
                     std::to_string(g.edges.size()));
  g.validate();
  return g;
}

std::string format_cubic_graph(const CubicGraph& g) {
  std::ostringstream os;
  std::vector<std::pair<int, int>> sorted = g.edges;
  std::sort(sorted.begin(), sorted.end());
  os << g.n << ' ' << sorted.size() << "\n";
  for (auto [u, v] : sorted) os << u << ' ' << v << "\n";
  return os.str();
}

int bisection_cut(const CubicGraph& g, const Bisection& b) {
  std::vector<int> side(g.n + 1, 0);
  if (static_cast<int>(b.v1.size() + b.v2.size()) != g.n || b.v1.size() != b.v2.size())
    throw InputError("bisection must split the vertices into equal halves");
  for (int v : b.v1) {
    if (v < 1 || v > g.n || side[v]) throw InputError("bisection is not a partition");
    side[v] = 1;
  }
  for (int v : b.v2) {
    if (v < 1 || v > g.n || side[v]) throw InputError("bisection is not a partition");
    side[v] = 2;
  }
  int cut = 0;
  for (auto [u, v] : g.edges)
    if (side[u] != side[v]) ++cut;
  return cut;
}

std::pair<Bisection, int> min_bisection_brute(const CubicGraph& g) {
  g.validate();
  if (g.n > 16) throw LimitError("exhaustive bisection is limited to 16 vertices");
  int half = g.n / 2;
  // Fix vertex 1 into v1 and enumerate the rest in lexicographic order, so the
  // first minimum found is the lexicographically smallest witness.
  std::vector<int> comb(half - 1);
  for (int i = 0; i < half - 1; ++i) comb[i] = i + 2;
  std::vector<int> best_v1;
  int best_cut = -1;
  std::vector<int> side(g.n + 1);
  while (true) {
    std::fill(side.begin(), side.end(), 0);
    side[1] = 1;
    for (int v : comb) side[v] = 1;
    int cut = 0;
    for (auto [u, v] : g.edges)
      if (side[u] != side[v]) ++cut;
    if (best_cut < 0 || cut < best_cut) {
      best_cut = cut;
      best_v1.assign(1, 1);
      best_v1.insert(best_v1.end(), comb.begin(), comb.end());
    }
    // Next lexicographic combination of {2..n} choose (half-1).
    int i = half - 2;
    while (i >= 0 && comb[i] == g.n - (half - 2 - i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < half - 1; ++j) comb[j] = comb[j - 1] + 1;
  }
  Bisection b;
  b.v1 = best_v1;
  for (int v = 1; v <= g.n; ++v)
    if (std::find(b.v1.begin(), b.v1.end(), v) == b.v1.end()) b.v2.push_back(v);
  return {b, best_cut};
}

multigraph::Multigraph build_grid(int height, int width) {
  if (height < 1 || width < 1) throw InputError("grid dimensions must be positive");
  multigraph::Multigraph mg;
  mg.n = height * width;
  auto vid = [height](int row, int col) { return (col - 1) * height + row; };
  for (int c = 1; c <= width; ++c)
    for (int r = 1; r <= height; ++r) {
      if (r < height) mg.edges.push_back({vid(r, c), vid(r + 1, c), 1});
      if (c < width) mg.edges.push_back({vid(r, c), vid(r, c + 1), 1});
    }
  return mg;
}

multigraph::Multigraph build_composed_grid(int hl, int wl, int hm, int wm) {
  if (hm < 1 || wl < 1 || wm < 1) throw InputError("grid dimensions must be positive");
  if (hl <= hm) throw InputError("the flanking grids must be taller than the middle one");
  multigraph::Multigraph mg;
  int block_l = hl * wl, block_m = hm * wm;
  mg.n = 2 * block_l + block_m;
  auto add_block = [&mg](int offset, int h, int w) {
    for (int c = 1; c <= w; ++c)
      for (int r = 1; r <= h; ++r) {
        int v = offset + (c - 1) * h + r;
        if (r < h) mg.edges.push_back({v, v + 1, 1});
        if (c < w) mg.edges.push_back({v, v + h, 1});
      }
  };
  int off_l = 0, off_m = block_l, off_r = block_l + block_m;
  add_block(off_l, hl, wl);
  add_block(off_m, hm, wm);
  add_block(off_r, hl, wl);
  auto lv = [&](int r, int c) { return off_l + (c - 1) * hl + r; };
  auto mv = [&](int r, int c) { return off_m + (c - 1) * hm + r; };
  auto rv = [&](int r, int c) { return off_r + (c - 1) * hl + r; };
  for (int h = 1; h <= hm; ++h) {
    mg.edges.push_back({lv(h, wl), mv(h, 1), 1});
    mg.edges.push_back({mv(h, wm), rv(hl - hm + h, 1), 1});
  }
  return mg;
}

uint64_t vertex_key(const GadgetVertex& v) {
  return (static_cast<uint64_t>(static_cast<int>(v.comp)) << 56) |
         (static_cast<uint64_t>(v.grid) << 48) | (static_cast<uint64_t>(v.row) << 24) |
         static_cast<uint64_t>(v.col);
}

std::string vertex_name(const GadgetVertex& v) {
  std::ostringstream os;
  switch (v.comp) {
    case Comp::Grid: os << 'g' << v.grid; break;
    case Comp::Left: os << 'l'; break;
    case Comp::Middle: os << 'm'; break;
    case Comp::Right: os << 'r'; break;
  }
  os << '[' << v.row << ',' << v.col << ']';
  return os.str();
}

GadgetInstance build_gadget(const CubicGraph& g, int k, int t) {
  g.validate();
  if (k < 1) throw InputError("the width budget parameter k must be positive");
  if (t < 1 || t > 4) throw InputError("scale exponent must be between 1 and 4");
  GadgetInstance inst;
  inst.source = g;
  inst.k = k;
  inst.t = t;
  inst.faithful = (t == 4);
  long long n = g.n;
  long long T = 1;
  for (int i = 0; i < t; ++i) T *= n;
  inst.T = T;

  // Columns of M devoted to each source vertex. The faithful construction
  // uses 4n^2; smaller scales shrink it so the blocks still fit in M, with a
  // floor that keeps every per-vertex block populated.
  long long c_cap = 8 * T / n;
  c_cap -= c_cap % 2;
  inst.C = std::max(std::min(4 * n * n, c_cap), 12LL);

  inst.Hg = 2 * T + 1;
  inst.Wg = std::max(6 * T, inst.C + 4);
  inst.Hl = 3 * T + 1;
  inst.Wl = 12 * T;
  inst.Hm = 2 * T + 1;
  inst.Wm = std::max(8 * T + 1, inst.C * n + 1);
  inst.k_prime = 3 * T + 2 + inst.C * n / 2 + 2 * k;
  if (inst.Wl >= (1LL << 24) || g.n >= 256)
    throw LimitError("gadget dimensions exceed the vertex encoding");

  inst.fwd.assign(g.n + 1, {});
  inst.bwd.assign(g.n + 1, {});
  for (auto [u, v] : g.edges) {
    inst.fwd[u].push_back(v);
    inst.bwd[v].push_back(u);
  }
  for (int v = 1; v <= g.n; ++v) {
    std::sort(inst.fwd[v].begin(), inst.fwd[v].end());
    std::sort(inst.bwd[v].begin(), inst.bwd[v].end());
  }
  inst.sigma.assign(g.n + 2, 0);
  for (int i = 1; i <= g.n + 1; ++i) inst.sigma[i] = inst.C * (i - 1) + 1;
  inst.b1.assign(g.n + 1, 0);
  inst.c0.assign(g.n + 1, 0);
  for (int i = 1; i <= g.n; ++i) {
    long long dfwd = static_cast<long long>(inst.fwd[i].size());
    long long dbwd = static_cast<long long>(inst.bwd[i].size());
    inst.b1[i] = (inst.C - 4 - 2 * dfwd) / 2;
    inst.c0[i] = inst.C - 3 + 2 * dbwd;
    // The column classes of grid i must tile [1, Wg] exactly.
    assert(inst.b1[i] >= 1);
    assert(2 * inst.b1[i] + 2 * dfwd + 2 * dbwd + 1 == inst.c0[i]);
    assert((inst.Wg - inst.c0[i] + 1) % 2 == 0 && inst.Wg > inst.c0[i]);
  }
  return inst;
}

namespace {

struct GreenEvent {
  enum Kind { Block1, Block2, Block3 } kind;
  int i = 0;      // source-vertex grid the event belongs to
  int h = 0;      // block-1 pair index or forward-edge rank
  int j = 0;      // block-2 target grid
  long long gamma = 0, gamma_p = 0;
};

// Column classes inside M: which even columns trigger grid excursions.
std::unordered_map<long long, GreenEvent> green_events(const GadgetInstance& inst) {
  std::unordered_map<long long, GreenEvent> ev;
  for (int i = 1; i <= inst.source.n; ++i) {
    long long dfwd = static_cast<long long>(inst.fwd[i].size());
    for (long long h = 1; h <= inst.b1[i]; ++h) {
      GreenEvent e;
      e.kind = GreenEvent::Block1;
      e.i = i;
      e.h = static_cast<int>(h);
      ev[inst.sigma[i] + 2 * h - 1] = e;
    }
    for (long long h = 1; h <= dfwd; ++h) {
      GreenEvent e;
      e.kind = GreenEvent::Block2;
      e.i = i;
      e.h = static_cast<int>(h);
      e.j = inst.fwd[i][h - 1];
      e.gamma = inst.C - 4 - 2 * dfwd + 2 * h - 1;
      long long rank = std::lower_bound(inst.bwd[e.j].begin(), inst.bwd[e.j].end(), i) -
                       inst.bwd[e.j].begin();
      e.gamma_p = inst.C - 3 + 2 * rank;
      ev[inst.sigma[i] + inst.C - 4 - 2 * dfwd + 2 * h - 1] = e;
    }
    GreenEvent e;
    e.kind = GreenEvent::Block3;
    e.i = i;
    ev[inst.sigma[i + 1] - 3] = e;
  }
  return ev;
}

}  // namespace

void walk_red_path(const GadgetInstance& inst, const VertexVisitor& visit) {
  const long long T = inst.T, Wl = inst.Wl, Wm = inst.Wm, Hg = inst.Hg, Wg = inst.Wg;
  auto row_sweep = [&visit](Comp comp, int grid, long long row, long long w, bool l2r) {
    if (l2r)
      for (long long c = 1; c <= w; ++c) visit({comp, grid, row, c});
    else
      for (long long c = w; c >= 1; --c) visit({comp, grid, row, c});
  };
  // The bottom block of L, serpentine from the start corner up to the first
  // row shared with M.
  bool l2r = true;
  for (long long row = 3 * T + 1; row >= 2 * T + 2; --row) {
    row_sweep(Comp::Left, 0, row, Wl, l2r);
    l2r = !l2r;
  }
  // Combined rows across L, M, and R, connected by the connector edges.
  for (long long h = 2 * T + 1; h >= 2; --h) {
    if (h % 2 == 1) {
      row_sweep(Comp::Left, 0, h, Wl, true);
      row_sweep(Comp::Middle, 0, h, Wm, true);
      row_sweep(Comp::Right, 0, T + h, Wl, true);
    } else {
      row_sweep(Comp::Right, 0, T + h, Wl, false);
      row_sweep(Comp::Middle, 0, h, Wm, false);
      row_sweep(Comp::Left, 0, h, Wl, false);
    }
  }
  row_sweep(Comp::Left, 0, 1, Wl, true);
  // M's top row, detouring through each grid in turn.
  long long col = 1;
  for (int i = 1; i <= inst.source.n; ++i) {
    for (; col <= inst.sigma[i + 1] - 1; ++col) visit({Comp::Middle, 0, 1, col});
    bool grid_l2r = true;
    for (long long row = 1; row <= Hg; ++row) {
      row_sweep(Comp::Grid, i, row, Wg, grid_l2r);
      grid_l2r = !grid_l2r;
    }
  }
  for (; col <= Wm; ++col) visit({Comp::Middle, 0, 1, col});
  // The top block of R.
  l2r = true;
  for (long long row = T + 1; row >= 1; --row) {
    row_sweep(Comp::Right, 0, row, Wl, l2r);
    l2r = !l2r;
  }
}

void walk_green_path(const GadgetInstance& inst, const VertexVisitor& visit) {
  const long long Hl = inst.Hl, Wl = inst.Wl, Hm = inst.Hm, Wm = inst.Wm, Hg = inst.Hg,
                  Wg = inst.Wg;
  auto col_sweep = [&visit](Comp comp, int grid, long long col, long long h, bool down) {
    if (down)
      for (long long r = 1; r <= h; ++r) visit({comp, grid, r, col});
    else
      for (long long r = h; r >= 1; --r) visit({comp, grid, r, col});
  };
  for (long long c = 1; c <= Wl; ++c) col_sweep(Comp::Left, 0, c, Hl, c % 2 == 1);
  std::unordered_map<long long, GreenEvent> events = green_events(inst);
  for (long long c = 1; c <= Wm; ++c) {
    col_sweep(Comp::Middle, 0, c, Hm, c % 2 == 1);
    if (c % 2 != 0) continue;
    auto it = events.find(c);
    if (it == events.end()) continue;  // plain top edge to the next column
    const GreenEvent& e = it->second;
    switch (e.kind) {
      case GreenEvent::Block1:
        col_sweep(Comp::Grid, e.i, 2 * e.h - 1, Hg, false);
        col_sweep(Comp::Grid, e.i, 2 * e.h, Hg, true);
        break;
      case GreenEvent::Block2:
        col_sweep(Comp::Grid, e.i, e.gamma, Hg, false);
        col_sweep(Comp::Grid, e.j, e.gamma_p, Hg, false);
        col_sweep(Comp::Grid, e.j, e.gamma_p + 1, Hg, true);
        col_sweep(Comp::Grid, e.i, e.gamma + 1, Hg, true);
        break;
      case GreenEvent::Block3:
        for (long long cc = inst.c0[e.i]; cc <= Wg; ++cc)
          col_sweep(Comp::Grid, e.i, cc, Hg, (cc - inst.c0[e.i]) % 2 == 0);
        break;
    }
  }
  for (long long c = 1; c <= Wl; ++c) col_sweep(Comp::Right, 0, c, Hl, c % 2 == 0);
}

void for_each_explicit_edge(const GadgetInstance& inst,
                            const std::function<void(const ExplicitEdge&)>& visit) {
  const long long Hl = inst.Hl, Wl = inst.Wl, Hm = inst.Hm, Wm = inst.Wm, Hg = inst.Hg,
                  Wg = inst.Wg;
  auto L = [](long long r, long long c) { return GadgetVertex{Comp::Left, 0, r, c}; };
  auto M = [](long long r, long long c) { return GadgetVertex{Comp::Middle, 0, r, c}; };
  auto R = [](long long r, long long c) { return GadgetVertex{Comp::Right, 0, r, c}; };
  auto G = [](int i, long long r, long long c) { return GadgetVertex{Comp::Grid, i, r, c}; };
  for (long long h = 1; h <= Hm; ++h) {
    visit({L(h, Wl), M(h, 1)});
    visit({M(h, Wm), R(Hl - Hm + h, 1)});
  }
  for (int i = 1; i <= inst.source.n; ++i) {
    long long dfwd = static_cast<long long>(inst.fwd[i].size());
    long long sig = inst.sigma[i];
    for (long long h = 1; h <= inst.b1[i]; ++h) {
      long long alpha = sig + 2 * h - 1;
      visit({M(1, alpha), G(i, Hg, 2 * h - 1)});
      visit({G(i, Hg, 2 * h), M(1, alpha + 1)});
    }
    for (long long h = 1; h <= dfwd; ++h) {
      int j = inst.fwd[i][h - 1];
      long long beta = sig + inst.C - 4 - 2 * dfwd + 2 * h - 1;
      long long gamma = inst.C - 4 - 2 * dfwd + 2 * h - 1;
      long long rank =
          std::lower_bound(inst.bwd[j].begin(), inst.bwd[j].end(), i) - inst.bwd[j].begin();
      long long gamma_p = inst.C - 3 + 2 * rank;
      visit({M(1, beta), G(i, Hg, gamma)});
      visit({G(i, 1, gamma), G(j, Hg, gamma_p)});
      visit({G(j, Hg, gamma_p + 1), G(i, 1, gamma + 1)});
      visit({G(i, Hg, gamma + 1), M(1, beta + 1)});
    }
    long long next = inst.sigma[i + 1];
    visit({M(1, next - 3), G(i, 1, inst.c0[i])});
    visit({G(i, 1, Wg), M(1, next - 2)});
    visit({M(1, next - 1), G(i, 1, 1)});
    visit({G(i, Hg, Wg), M(1, next)});
  }
}

namespace {

struct PairKey {
  uint64_t a = 0, b = 0;
  bool operator==(const PairKey& o) const { return a == o.a && b == o.b; }
};
struct PairKeyHash {
  size_t operator()(const PairKey& k) const {
    uint64_t h = k.a * 0x9e3779b97f4a7c15ULL;
    h ^= k.b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};

PairKey edge_key(const GadgetVertex& u, const GadgetVertex& v) {
  uint64_t ku = vertex_key(u), kv = vertex_key(v);
  return {std::min(ku, kv), std::max(ku, kv)};
}

// Bisection-independent dense index used by the verifier's coverage bitmaps.
struct FlatIndex {
  const GadgetInstance* inst;
  long long grid_block, off_l, off_m, off_r;

  explicit FlatIndex(const GadgetInstance& in) : inst(&in) {
    grid_block = in.Hg * in.Wg;
    off_l = in.source.n * grid_block;
    off_m = off_l + in.Hl * in.Wl;
    off_r = off_m + in.Hm * in.Wm;
  }
  long long of(const GadgetVertex& v) const {
    switch (v.comp) {
      case Comp::Grid:
        return (v.grid - 1) * grid_block + (v.col - 1) * inst->Hg + (v.row - 1);
      case Comp::Left:
        return off_l + (v.col - 1) * inst->Hl + (v.row - 1);
      case Comp::Middle:
        return off_m + (v.col - 1) * inst->Hm + (v.row - 1);
      case Comp::Right:
        return off_r + (v.col - 1) * inst->Hl + (v.row - 1);
    }
    return -1;
  }
};

bool grid_adjacent(const GadgetVertex& a, const GadgetVertex& b) {
  if (a.comp != b.comp || a.grid != b.grid) return false;
  long long dr = a.row - b.row, dc = a.col - b.col;
  if (dr < 0) dr = -dr;
  if (dc < 0) dc = -dc;
  return dr + dc == 1;
}

}  // namespace

VerifyReport verify_gadget(const GadgetInstance& inst) {
  VerifyReport rep;
  long long total = inst.total_vertices();
  rep.vertices = total;
  if (total > (1LL << 33)) throw LimitError("gadget too large to verify in memory");

  std::unordered_set<PairKey, PairKeyHash> explicit_edges;
  std::unordered_map<uint64_t, int> grid_external;
  rep.grid_to_middle_edges.assign(inst.source.n, 0);
  rep.grid_to_grid_edges.assign(inst.source.n, 0);
  for_each_explicit_edge(inst, [&](const ExplicitEdge& e) {
    if (!explicit_edges.insert(edge_key(e.u, e.v)).second)
      rep.failures.push_back("explicit edge repeated: " + vertex_name(e.u) + " - " +
                             vertex_name(e.v));
    for (const GadgetVertex* p : {&e.u, &e.v}) {
      if (p->comp != Comp::Grid) continue;
      const GadgetVertex& other = (p == &e.u) ? e.v : e.u;
      if (other.comp == Comp::Middle) ++rep.grid_to_middle_edges[p->grid - 1];
      if (other.comp == Comp::Grid) ++rep.grid_to_grid_edges[p->grid - 1];
      int& uses = grid_external[vertex_key(*p)];
      if (++uses > 1 && rep.failures.size() < 16)
        rep.failures.push_back("vertex " + vertex_name(*p) + " has " + std::to_string(uses) +
                               " external edges");
    }
  });
  for (int i = 1; i <= inst.source.n; ++i) {
    if (rep.grid_to_middle_edges[i - 1] != inst.C)
      rep.failures.push_back("grid " + std::to_string(i) + " has " +
                             std::to_string(rep.grid_to_middle_edges[i - 1]) +
                             " edges to the middle grid, expected " + std::to_string(inst.C));
    long long expected = 2 * static_cast<long long>(inst.fwd[i].size() + inst.bwd[i].size());
    if (rep.grid_to_grid_edges[i - 1] != expected)
      rep.failures.push_back("grid " + std::to_string(i) + " has " +
                             std::to_string(rep.grid_to_grid_edges[i - 1]) +
                             " edges to other grids, expected " + std::to_string(expected));
  }

  FlatIndex index(inst);
  auto check_path = [&](const char* color, const std::function<void(const VertexVisitor&)>& walk,
                        std::string* start_name, std::string* end_name) {
    std::vector<bool> seen(total, false);
    long long count = 0;
    bool have_prev = false;
    GadgetVertex prev;
    long long bad_steps = 0, dup = 0;
    walk([&](const GadgetVertex& v) {
      long long at = index.of(v);
      if (at < 0 || at >= total) {
        ++bad_steps;
        return;
      }
      if (seen[at]) {
        if (dup++ == 0 && rep.failures.size() < 16)
          rep.failures.push_back(std::string(color) + " path revisits " + vertex_name(v));
      } else {
        seen[at] = true;
        ++count;
      }
      if (!have_prev) {
        *start_name = vertex_name(v);
        have_prev = true;
      } else if (!grid_adjacent(prev, v) && !explicit_edges.count(edge_key(prev, v))) {
        if (bad_steps++ == 0 && rep.failures.size() < 16)
          rep.failures.push_back(std::string(color) + " path step is not an edge: " +
                                 vertex_name(prev) + " -> " + vertex_name(v));
      }
      prev = v;
    });
    *end_name = vertex_name(prev);
    if (count != total)
      rep.failures.push_back(std::string(color) + " path covers " + std::to_string(count) +
                             " of " + std::to_string(total) + " vertices");
    if (bad_steps > 0)
      rep.failures.push_back(std::string(color) + " path has " + std::to_string(bad_steps) +
                             " steps that are not edges");
  };
  check_path(
      "red", [&](const VertexVisitor& v) { walk_red_path(inst, v); }, &rep.red_start,
      &rep.red_end);
  check_path(
      "green", [&](const VertexVisitor& v) { walk_green_path(inst, v); }, &rep.green_start,
      &rep.green_end);
  rep.ok = rep.failures.empty();
  return rep;
}

namespace {

bool green_descends(const GadgetInstance& inst, Comp comp, int grid, long long col) {
  switch (comp) {
    case Comp::Left:
    case Comp::Middle:
      return col % 2 == 1;
    case Comp::Right:
      return col % 2 == 0;
    case Comp::Grid:
      return col < inst.c0[grid] ? col % 2 == 0 : col % 2 == 1;
  }
  return true;
}

}  // namespace

long long GadgetArrangement::position(const GadgetVertex& v) const {
  long long base = 0, h = 0;
  switch (v.comp) {
    case Comp::Grid:
      base = grid_offset[v.grid];
      h = inst->Hg;
      break;
    case Comp::Left:
      base = offset_l;
      h = inst->Hl;
      break;
    case Comp::Middle:
      base = offset_m;
      h = inst->Hm;
      break;
    case Comp::Right:
      base = offset_r;
      h = inst->Hl;
      break;
  }
  long long in_col = green_descends(*inst, v.comp, v.grid, v.col) ? v.row : h + 1 - v.row;
  return base + (v.col - 1) * h + in_col;
}

std::string GadgetArrangement::component_at(long long pos) const {
  std::string label = "?";
  long long best = -1;
  auto consider = [&](long long start, const std::string& name) {
    if (start < pos && start >= best) {
      best = start;
      label = name;
    }
  };
  for (int i = 1; i <= inst->source.n; ++i)
    consider(grid_offset[i], "G" + std::to_string(i));
  consider(offset_l, "L");
  consider(offset_m, "M");
  consider(offset_r, "R");
  return label;
}

GadgetArrangement canonical_arrangement(const GadgetInstance& inst, const Bisection& b) {
  bisection_cut(inst.source, b);  // validates the partition
  GadgetArrangement arr;
  arr.inst = &inst;
  arr.bisection = b;
  std::sort(arr.bisection.v1.begin(), arr.bisection.v1.end());
  std::sort(arr.bisection.v2.begin(), arr.bisection.v2.end());
  arr.grid_offset.assign(inst.source.n + 1, 0);
  long long cursor = 0;
  long long grid_block = inst.Hg * inst.Wg;
  for (int i : arr.bisection.v1) {
    arr.grid_offset[i] = cursor;
    cursor += grid_block;
  }
  arr.offset_l = cursor;
  cursor += inst.Hl * inst.Wl;
  arr.offset_m = cursor;
  cursor += inst.Hm * inst.Wm;
  arr.offset_r = cursor;
  cursor += inst.Hl * inst.Wl;
  for (int i : arr.bisection.v2) {
    arr.grid_offset[i] = cursor;
    cursor += grid_block;
  }
  arr.total = cursor;
  return arr;
}

SweepResult sweep_max_width(const GadgetInstance& inst, const GadgetArrangement& arr) {
  if (arr.inst != &inst) throw InputError("arrangement was built for a different instance");
  long long total = arr.total;
  if (total != inst.total_vertices())
    throw InputError("arrangement does not cover the instance");
  if (total > (1LL << 31)) throw LimitError("gadget too large to sweep in memory");
  std::vector<int32_t> diff(static_cast<size_t>(total) + 1, 0);
  auto accumulate = [&](const std::function<void(const VertexVisitor&)>& walk) {
    long long prev = -1;
    walk([&](const GadgetVertex& v) {
      long long p = arr.position(v);
      if (prev > 0) {
        long long lo = std::min(prev, p), hi = std::max(prev, p);
        ++diff[lo];
        --diff[hi];
      }
      prev = p;
    });
  };
  accumulate([&](const VertexVisitor& v) { walk_red_path(inst, v); });
  accumulate([&](const VertexVisitor& v) { walk_green_path(inst, v); });

  // Block boundaries in position order, for per-component maxima.
  std::vector<std::pair<long long, std::string>> blocks;
  for (int i = 1; i <= inst.source.n; ++i)
    blocks.emplace_back(arr.grid_offset[i], "G" + std::to_string(i));
  blocks.emplace_back(arr.offset_l, "L");
  blocks.emplace_back(arr.offset_m, "M");
  blocks.emplace_back(arr.offset_r, "R");
  std::sort(blocks.begin(), blocks.end());

  SweepResult res;
  res.positions = total;
  res.faithful = inst.faithful;
  std::vector<long long> block_max(blocks.size(), 0);
  size_t bi = 0;
  long long run = 0;
  for (long long gap = 1; gap < total; ++gap) {
    run += diff[gap];
    while (bi + 1 < blocks.size() && blocks[bi + 1].first < gap) ++bi;
    block_max[bi] = std::max(block_max[bi], run);
    if (run > res.max_width) {
      res.max_width = run;
      res.argmax_gap = gap;
      res.argmax_component = blocks[bi].second;
    }
  }
  for (size_t i = 0; i < blocks.size(); ++i)
    res.component_max.emplace_back(blocks[i].second, block_max[i]);
  return res;
}

Permutation gadget_to_permutation(const GadgetInstance& inst) {
  long long total = inst.total_vertices();
  if (total > 5'000'000)
    throw LimitError("permutation extraction is sized for small-scale gadgets");
  VerifyReport rep = verify_gadget(inst);
  if (!rep.ok)
    throw InputError("gadget failed verification: " + rep.failures.front());
  std::unordered_map<uint64_t, int> red_number;
  red_number.reserve(static_cast<size_t>(total) * 2);
  int counter = 0;
  walk_red_path(inst, [&](const GadgetVertex& v) { red_number[vertex_key(v)] = ++counter; });
  Permutation p;
  p.image.reserve(total);
  walk_green_path(inst,
                  [&](const GadgetVertex& v) { p.image.push_back(red_number[vertex_key(v)]); });
  p.validate();
  return p;
}

}  // namespace reduction
}  // namespace syncparse
