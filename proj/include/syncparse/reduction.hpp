#ifndef SYNCPARSE_REDUCTION_HPP
#define SYNCPARSE_REDUCTION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "syncparse/multigraph.hpp"
#include "syncparse/permutation.hpp"

namespace syncparse {
namespace reduction {

// A simple 3-regular graph on vertices 1..n, n even.
struct CubicGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized u < v

  void validate() const;  // throws InputError on any violation
};

CubicGraph parse_cubic_graph(const std::string& text);
std::string format_cubic_graph(const CubicGraph& g);

struct Bisection {
  std::vector<int> v1, v2;  // sorted halves of [n]
};

// Exhaustive minimum bisection, n <= 16. Ties break to the lexicographically
// smallest v1 containing vertex 1.
std::pair<Bisection, int> min_bisection_brute(const CubicGraph& g);

int bisection_cut(const CubicGraph& g, const Bisection& b);

// H-by-W grid graph, vertices numbered column-major: (row, col) -> (col-1)*H + row.
multigraph::Multigraph build_grid(int height, int width);

// Two H_l-by-W_l grids flanking an H_m-by-W_m grid, joined by 2*H_m connector
// edges (l^{h,W_l}, m^{h,1}) and (m^{h,W_m}, r^{H_l-H_m+h,1}). Vertex blocks:
// left grid, middle grid, right grid, each column-major.
multigraph::Multigraph build_composed_grid(int hl, int wl, int hm, int wm);

// One vertex of a gadget: a grid component plus row/column coordinates.
enum class Comp : int { Grid = 0, Left = 1, Middle = 2, Right = 3 };

struct GadgetVertex {
  Comp comp = Comp::Left;
  int grid = 0;  // 1..n when comp == Grid, else 0
  long long row = 0, col = 0;

  bool operator==(const GadgetVertex& o) const {
    return comp == o.comp && grid == o.grid && row == o.row && col == o.col;
  }
};

uint64_t vertex_key(const GadgetVertex& v);
std::string vertex_name(const GadgetVertex& v);

// The width-hardness instance built from a cubic graph: one grid per source
// vertex plus the L/M/R frame, two Hamiltonian paths, and the width budget
// k_prime. Grids are implicit (dimensions only); inter-grid edges and the
// path generators are derived from the stored offsets.
struct GadgetInstance {
  CubicGraph source;
  int k = 0;
  int t = 4;            // grid-size exponent; faithful reduction at t = 4
  bool faithful = false;
  long long T = 0;      // n^t
  long long C = 0;      // columns of M per source vertex (4n^2 when faithful)
  long long Hg = 0, Wg = 0;  // per-vertex grid dimensions
  long long Hl = 0, Wl = 0;  // L and R dimensions
  long long Hm = 0, Wm = 0;  // M dimensions
  long long k_prime = 0;

  std::vector<std::vector<int>> fwd, bwd;  // neighbor lists by vertex, ascending
  std::vector<long long> sigma;            // sigma[i], i in 1..n+1
  std::vector<long long> b1, c0;           // per-vertex block-1 pair count, reversal start column

  long long total_vertices() const {
    return source.n * (Hg * Wg) + 2 * (Hl * Wl) + Hm * Wm;
  }
};

GadgetInstance build_gadget(const CubicGraph& g, int k, int t = 4);

using VertexVisitor = std::function<void(const GadgetVertex&)>;

// Emit every gadget vertex in red-path order (resp. green-path order);
// consecutive emissions are the path's edges.
void walk_red_path(const GadgetInstance& inst, const VertexVisitor& visit);
void walk_green_path(const GadgetInstance& inst, const VertexVisitor& visit);

struct ExplicitEdge {
  GadgetVertex u, v;
};

// Inter-grid edges: the 2*Hm connectors plus the per-vertex block edges into M
// and into forward-neighbor grids.
void for_each_explicit_edge(const GadgetInstance& inst,
                            const std::function<void(const ExplicitEdge&)>& visit);

struct VerifyReport {
  bool ok = false;
  std::vector<std::string> failures;
  std::string red_start, red_end, green_start, green_end;
  std::vector<long long> grid_to_middle_edges;  // entry i-1 for grid i
  std::vector<long long> grid_to_grid_edges;
  long long vertices = 0;
};

// Checks both walks are Hamiltonian paths whose steps are real edges, plus the
// external-edge counts each grid must satisfy.
VerifyReport verify_gadget(const GadgetInstance& inst);

// Position function for the arrangement that places the V1 grids, then L, M,
// R, then the V2 grids, each grid column-major with columns ordered by the
// green path's visit direction.
struct GadgetArrangement {
  const GadgetInstance* inst = nullptr;
  Bisection bisection;
  std::vector<long long> grid_offset;  // by source vertex, 1-based
  long long offset_l = 0, offset_m = 0, offset_r = 0;
  long long total = 0;

  long long position(const GadgetVertex& v) const;  // 1-based
  std::string component_at(long long pos) const;    // "G3", "L", "M", "R"
};

GadgetArrangement canonical_arrangement(const GadgetInstance& inst, const Bisection& b);

struct SweepResult {
  long long max_width = 0;
  long long argmax_gap = 0;  // width is measured between positions gap and gap+1
  std::string argmax_component;
  std::vector<std::pair<std::string, long long>> component_max;
  long long positions = 0;
  bool faithful = false;
};

// Single pass over the arrangement accumulating open-edge counts from both
// paths (a doubled edge contributes twice).
SweepResult sweep_max_width(const GadgetInstance& inst, const GadgetArrangement& arr);

// Numbers vertices in red-path order and reads the green path as a
// permutation. Verifies the instance first; sized for t <= 2.
Permutation gadget_to_permutation(const GadgetInstance& inst);

}  // namespace reduction
}  // namespace syncparse

#endif
