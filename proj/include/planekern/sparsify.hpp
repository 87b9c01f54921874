#pragma once

#include <memory>
#include <string>
#include <vector>

#include "planekern/plane_graph.hpp"

namespace pk {

// Plane graph whose vertices are split into a free class (inA) and a paid
// class; the free class must be independent.
struct Partitioned {
  PlaneGraph g;
  std::vector<char> inA;
  bool is_b(int v) const { return !inA[v]; }
};

// Throws unless inA is sized to g and the free class is independent.
void check_partition(const Partitioned& p);

// Number of paid vertices in the list (duplicates counted once).
int cost(const Partitioned& p, const std::vector<int>& vertices);
// Paid vertices touched by the listed edges.
int edge_cost(const Partitioned& p, const std::vector<int>& edges);

struct Connector {
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // sorted edge indices
  std::vector<int> anchors;   // the connected set
  int cost = 0;
  int nedges() const { return static_cast<int>(edges.size()); }
};

// Vertices of the outer face walk, in walk order (repetitions kept).
std::vector<int> outer_walk(const PlaneGraph& g);
// True when the outer face is bounded by one simple cycle of length >= 3.
bool outer_is_simple_cycle(const PlaneGraph& g);

enum class ConnectorEngine { interval_dp, brute_force };

// Minimum-cost subgraph connecting A; among those, fewest edges; among
// those, the tree whose edge ids, sorted in decreasing order, form the
// lexicographically smallest sequence. The interval engine needs A on the
// outer face.
Connector min_cost_connector(const Partitioned& p, const std::vector<int>& A,
                             ConnectorEngine engine = ConnectorEngine::interval_dp);

// Node-weighted Dreyfus-Wagner table over every subset of a fixed terminal
// list (at most 20 terminals). Answers a minimum-cost, minimum-edge connector
// for every subset mask.
class SubsetSteiner {
 public:
  SubsetSteiner(const Partitioned& p, std::vector<int> terminals);
  ~SubsetSteiner();
  SubsetSteiner(const SubsetSteiner&) = delete;
  SubsetSteiner& operator=(const SubsetSteiner&) = delete;
  Connector connector(unsigned mask) const;
  int min_cost(unsigned mask) const;
  const std::vector<int>& terminals() const { return term_; }

 private:
  struct Table;
  const Partitioned& p_;
  std::vector<int> term_;
  std::unique_ptr<Table> t_;
};

struct TreeParts {
  std::vector<int> h0;                  // edges on the outer face
  std::vector<std::vector<int>> parts;  // boundary-anchored trees (edge lists)
  std::vector<std::vector<int>> anchors;
};

// Split a minimum connector into boundary edges and boundary-anchored trees.
// Leaves outside h.anchors are pruned first; throws if the rest is not a tree.
TreeParts normalize_to_trees(const Partitioned& p, const Connector& h);
// Tree whose leaves are exactly its vertices on the outer face.
bool is_boundary_anchored(const PlaneGraph& g, const std::vector<int>& edges);

struct SparsifyConfig {
  int base_threshold = 12;
};

struct SparsifyComponent {
  int component = 0;
  int boundary_len = 0;
  std::string strategy;  // exact | identity
  int edges_out = 0;
  std::string note;
};

struct SparsifyResult {
  std::vector<int> kept_edges;  // edge indices of the input graph, sorted
  std::vector<SparsifyComponent> report;
  int subdivided = 0;  // number of paid-paid edges subdivided
};

SparsifyResult sparsify(const Partitioned& p, const SparsifyConfig& cfg = {});

// Brick machinery.
struct BrickPartition {
  std::vector<std::vector<int>> boundaries;  // vertex cycles of the bricks
  std::vector<std::vector<int>> edges;       // edges of the host inside each brick
  int perim = 0;
  int host_boundary = 0;
};

BrickPartition brick_partition_of_connector(const PlaneGraph& brick, const std::vector<int>& F);
bool is_c_short(const BrickPartition& bp, double c);
bool is_tau_nice(const BrickPartition& bp, double tau);

// P and I are vertex sequences; I runs along the outer cycle between the
// endpoints of P.
bool is_delta_carve(const PlaneGraph& brick, const std::vector<int>& P, const std::vector<int>& I,
                    double delta);
bool is_delta_mountain(const PlaneGraph& brick, const std::vector<int>& P, const std::vector<int>& I,
                       int summit, double delta);

struct CostBoundReport {
  int cost = 0;
  int edges = 0;
  int boundary_len = 0;
  bool cost_ok = true;
  bool edges_ok = true;
  bool ok() const { return cost_ok && edges_ok; }
};
CostBoundReport check_cost_bounds(const Partitioned& brick, const std::vector<int>& tree_edges);

}  // namespace pk
