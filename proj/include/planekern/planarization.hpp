#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "planekern/mwc_kernel.hpp"

namespace pk {

// Graphs produced here are usually not planar, so they are plain edge lists.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, no duplicates
};

// Vertex planarization with an undeletable set S (G - S must be planar).
struct DvpInstance {
  SimpleGraph g;
  std::vector<char> undeletable;  // sized n
  int k = 0;
};

struct VpInstance {
  SimpleGraph g;
  int k = 0;
};

// 4 x 4 grid x_{a,b} (vertex 4(a-1) + (b-1)) plus x22-x24, minus x12-x22
// and x14-x24. Not planar.
SimpleGraph build_h0();

// Terminal t_i is merged into the (2i)-th vertex of row 2 of a 4 x 2|T|
// grid, which becomes undeletable. Grid vertices come first
// (row-major), then the non-terminals of the input in index order.
struct DvpReduction {
  DvpInstance out;
  std::vector<int> from_input;  // input vertex -> output vertex
};
DvpReduction reduce_to_disjoint_vp(const MwcInstance& inst);

// Thick 4(k+1) x (D+|T|)(k+1) grid with a slot per terminal; the neighbours
// of t_i (clockwise in the embedding) are wired to k+1 consecutive vertices
// of row k+2. Adjacent terminals give K5 with k = 0.
struct VpReduction {
  VpInstance out;
  std::vector<int> from_input;  // input vertex -> output vertex, -1 for terminals
  int rows = 0;
  int cols = 0;
  bool trivial_no = false;
};
VpReduction reduce_to_vp(const MwcInstance& inst);

struct VpGuard {
  int max_vertices = 22;
  int max_k = 2;
};
// Smallest X outside `undeletable` with |X| <= k and G - X planar, by
// enumeration. Throws GraphError when the instance exceeds the guard.
std::optional<std::vector<int>> solve_vp_bruteforce(const SimpleGraph& g, int k,
                                                    const std::vector<char>& undeletable = {},
                                                    const VpGuard& guard = {});

bool is_planar(const SimpleGraph& g);

}  // namespace pk
