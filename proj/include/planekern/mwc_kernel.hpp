#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planekern/graph_util.hpp"
#include "planekern/sparsify.hpp"

namespace pk {

// Planar Vertex Multiway Cut: find X outside T and the forbidden set with
// |X| <= k such that every component of G - X holds at most one terminal.
struct MwcInstance {
  PlaneGraph g;
  std::vector<int> terminals;   // sorted
  int k = 0;
  std::vector<char> forbidden;  // empty, or sized n and disjoint from T
  bool is_forbidden(int v) const { return !forbidden.empty() && forbidden[v]; }
};

void check_mwc_instance(const MwcInstance& inst);
bool is_mwc_solution(const MwcInstance& inst, const std::vector<int>& X);
// Smallest solution by enumerating allowed subsets of size 0..k.
std::optional<std::vector<int>> solve_mwc_bruteforce(const MwcInstance& inst);
// Same answer by branching on the interior of a terminal-to-terminal path,
// depth at most k. Usable on kernels far beyond enumeration range.
std::optional<std::vector<int>> solve_mwc_branching(const MwcInstance& inst);

enum class CutStatus { ok, too_big, impossible };
enum class CutSide { near_x, near_y };
struct VertexCut {
  CutStatus status = CutStatus::ok;
  std::vector<int> cut;  // sorted; filled only for ok
};
// Minimum vertex set outside X, Y (and outside `uncuttable`) separating X
// from Y, by unit vertex capacities and max-flow. cap < 0 means unbounded.
// Among minimum cuts, the one closest to the requested side.
VertexCut min_vertex_cut(const Adj& adj, const std::vector<int>& X, const std::vector<int>& Y, int cap,
                         CutSide side = CutSide::near_x, const std::vector<char>& uncuttable = {});
VertexCut min_vertex_cut(const PlaneGraph& g, const std::vector<int>& X, const std::vector<int>& Y,
                         int cap, CutSide side = CutSide::near_x);

// Fractional multiway cut: min sum x_v over non-terminals such that every
// path joining terminals of different labels carries weight >= 1.
// label[v] >= 0 marks a terminal (equal labels need no separation); dead
// vertices are ignored. Infinite when differently labelled terminals touch.
struct LpSolution {
  double value = 0;
  std::vector<double> x;
  int paths = 0;  // path constraints generated
};
LpSolution mwc_lp(const Adj& adj, const std::vector<int>& label, const std::vector<char>& alive = {});

struct LpStats {
  int deleted_components = 0;
  int region_contractions = 0;
  int lp_contractions = 0;
  int lp_deletions = 0;
  double final_lp = 0;
};

struct LpPreprocess {
  bool answer_no = false;
  std::string reason;
  MwcInstance inst;        // components side by side, Z empty
  std::vector<int> vmap;   // vertex -> input vertex (merged vertices keep the terminal)
  LpStats stats;
  bool terminals_ok = true;  // |T'| <= 2k'
  bool degrees_ok = true;    // deg(t) <= k' for every terminal
};
LpPreprocess lp_preprocess(const MwcInstance& inst);

// Terminal nodes, the root and branching nodes (two child subtrees with
// terminal nodes). Sorted.
std::vector<int> important_nodes(const LayerTree& lt, const std::vector<int>& terminals);

struct RelevantNodeSet {
  std::vector<char> in_r;  // per node
  std::vector<int> nodes;  // sorted
  std::vector<int> important;
  std::map<std::pair<int, int>, std::vector<int>> cuts;  // (x, y) -> K_xy, empty when > k
  std::vector<int> edge_counts;  // R-nodes inside each long or short important path
  int edge_bound = 0;            // 2(k+1) + k(k+1)^2
};
RelevantNodeSet relevant_nodes(const LayerTree& lt, const std::vector<int>& terminals, int k,
                               const PlaneGraph& g);

struct MwcTree {
  bool answer_no = false;
  bool trivial_yes = false;
  std::string reason;
  LpPreprocess lp;
  MwcInstance prepared;         // G', T', k' with Z as the forbidden set
  std::vector<int> prepared_from;  // G' vertex -> representative in lp.inst
  int important = 0;
  int relevant = 0;
  int layer_violations = 0;     // failures of check_layer_tree
  int radial_checks = 0;
  int radial_violations = 0;    // terminal/outer pairs beyond 2l
  int edge_bound_violations = 0;
  PlaneGraph stripped;          // G' - T'
  std::vector<int> stripped_to; // stripped vertex -> G' vertex
  Overlay overlay;              // overlay graph of the stripped graph
  std::vector<int> tree;        // overlay edges of H, sorted
  int h_max_degree = 0;
  int h_degree_bound = 0;       // sum over terminals of deg(t) + 2
};
MwcTree prepare_and_find_tree(const MwcInstance& inst);

// U2 must be an independent forbidden set. Each u is replaced by a
// (k+1) x (k+1)d_u grid; the i-th neighbour in rotation order is joined to
// bottom-row columns (k+1)(i-1)+1 .. (k+1)i. Vertices of degree 0 vanish.
struct GridReplacement {
  MwcInstance out;          // forbidden set empty
  std::vector<int> vmap;    // new vertex -> input vertex, -1 on grids
  std::vector<int> grid_of; // new vertex -> input u whose grid holds it, else -1
  int gadget_vertices = 0;
};
GridReplacement replace_by_grids(const MwcInstance& inst);

// Forbidden vertices whose neighbourhood lies inside another forbidden
// vertex's neighbourhood are removed, scanning by increasing index.
struct Dominance {
  MwcInstance out;
  std::vector<int> vmap;
  int removed = 0;
};
Dominance remove_dominated(const MwcInstance& inst);

struct MwcKernel {
  MwcInstance kernel;
  enum class Kind { kernel, trivial_yes, trivial_no } kind = Kind::kernel;
  std::string reason;
  LpStats lp;
  int important = 0;
  int relevant = 0;
  int z = 0;
  int h_edges = 0;
  int h_max_degree = 0;
  int alpha = 0;
  int boundary = 0;
  int chain_vertices = 0;
  int d = 0;
  int u1 = 0;
  int u2 = 0;
  int gadget_vertices = 0;
  int radial_violations = 0;
  std::vector<SparsifyComponent> sparsify;
};
MwcKernel kernelize_mwc(const MwcInstance& inst, const SparsifyConfig& cfg = {});

// Adjacent terminals with k = 0 / an empty graph.
MwcInstance mwc_canonical_no();
MwcInstance mwc_canonical_yes();

}  // namespace pk
