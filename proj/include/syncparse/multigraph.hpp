#ifndef SYNCPARSE_MULTIGRAPH_HPP
#define SYNCPARSE_MULTIGRAPH_HPP

#include <array>
#include <string>
#include <vector>

#include "syncparse/permutation.hpp"

namespace syncparse {
namespace multigraph {

// Undirected multigraph on vertices 1..n with edge multiplicities 1 or 2.
// Optionally carries four endpoint markers (the ends of the two Hamiltonian
// paths of a permutation multigraph); profile and solver functions that need
// them refuse graphs without markers.
struct Multigraph {
  int n = 0;
  struct Edge {
    int u, v, mult;
  };
  std::vector<Edge> edges;
  bool has_endpoints = false;
  std::array<int, 4> endpoints{};  // multiset; order: red start, red end, green start, green end

  int edge_weight() const {
    int w = 0;
    for (const Edge& e : edges) w += e.mult;
    return w;
  }
};

// Bijection vertices -> positions, 1-based: pos[v-1] = position of vertex v.
struct LinearArrangement {
  std::vector<int> pos;

  LinearArrangement() = default;
  explicit LinearArrangement(std::vector<int> positions) : pos(std::move(positions)) {
    Permutation p;
    p.image = pos;
    p.validate();
  }

  int size() const { return static_cast<int>(pos.size()); }
  int position(int v) const { return pos[v - 1]; }
  // vertex_at[i-1] = vertex with position i.
  std::vector<int> vertex_order() const {
    std::vector<int> order(pos.size(), 0);
    for (int v = 1; v <= size(); ++v) order[pos[v - 1] - 1] = v;
    return order;
  }

  static LinearArrangement identity(int n) {
    LinearArrangement a;
    a.pos.resize(n);
    for (int i = 0; i < n; ++i) a.pos[i] = i + 1;
    return a;
  }
};

struct SolverResult {
  int value = 0;
  LinearArrangement witness;
  long long states_explored = 0;
};

// Builds the two-path multigraph of a rule permutation: red path along left
// positions 1..r, green path along pi(1)..pi(r), coincident edges merged to
// multiplicity 2, endpoint markers {1, r, pi(1), pi(r)}. Requires r >= 2.
Multigraph from_permutation(const Permutation& p);

// Edge weight crossing the gap between positions i and i+1, for i in [n];
// the last entry is 0 by convention.
std::vector<int> width_profile(const Multigraph& g, const LinearArrangement& a);

// Width plus endpoint markers at positions <= i; last entry equals the number
// of markers (4 for permutation multigraphs).
std::vector<int> extended_width_profile(const Multigraph& g, const LinearArrangement& a);

// Edge weight crossing strictly over the vertex at position i.
std::vector<int> modified_width_profile(const Multigraph& g, const LinearArrangement& a);

// Modified width plus endpoint markers strictly left of position i.
std::vector<int> extended_modified_width_profile(const Multigraph& g,
                                                 const LinearArrangement& a);

enum class WidthVariant { Cut, ExtendedCut, ExtendedModifiedCut };

// Exact minimum over arrangements of the corresponding profile maximum,
// via subset dynamic programming; witness is the lexicographically least
// optimal arrangement (as a vertex order). Throws LimitError above limit.
// threads bounds worker parallelism for the cut table; results are
// identical for any thread count.
SolverResult cutwidth_exact(const Multigraph& g, int limit = 20, int threads = 1);
SolverResult extended_cutwidth_exact(const Multigraph& g, int limit = 20, int threads = 1);
SolverResult extended_modified_cutwidth_exact(const Multigraph& g, int limit = 20, int threads = 1);

// Factorial brute force over all arrangements (n <= 8); independent oracle
// for the subset DPs.
SolverResult brute_force_width(const Multigraph& g, WidthVariant variant);

// The arrangement that places the step-k vertex at position k, and back.
LinearArrangement strategy_to_arrangement(const LinearStrategy& s);
LinearStrategy arrangement_to_strategy(const LinearArrangement& a);

// Text form: "n m" header, m lines "u v mult", optional endpoint line
// "E: a b c d". parse_graph accepts the same form.
Multigraph parse_graph(const std::string& text);
std::string format_graph(const Multigraph& g);

}  // namespace multigraph
}  // namespace syncparse

#endif
