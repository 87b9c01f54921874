#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planekern/graph_util.hpp"
#include "planekern/plane_graph.hpp"

namespace pk {

enum class PlanarModel { triangulation_delete, grid_perturb };

PlanarModel parse_model(const std::string& s);

struct GenConfig {
  PlanarModel model = PlanarModel::triangulation_delete;
  double p_delete = 0.35;
  int flips = 0;  // random edge flips on the triangulation; -1 picks n
};

// Connected plane graph on at most n vertices (exactly n for n <= 2 and with
// high probability close to n otherwise). Deterministic in (n, cfg, seed).
PlaneGraph generate_random_planar(int n, std::uint64_t seed, const GenConfig& cfg = {});

// Uniform random subset of size `count` (sorted).
std::vector<int> random_subset(Rng& rng, int n, int count);

std::vector<int> random_spanning_tree(Rng& rng, const PlaneGraph& g);

// Random brick (outer face bounded by a simple cycle) on n >= 3 vertices:
// a triangulation with random interior and boundary edges removed while the
// outer cycle stays simple and no longer than max_boundary.
PlaneGraph random_brick(Rng& rng, int n, int max_boundary, double p_delete = 0.5);

// Random independent set, each vertex joining with probability p when free.
std::vector<char> random_independent_set(Rng& rng, const PlaneGraph& g, double p = 0.5);

// Hand-built shapes, embedded with the longest face outside.
PlaneGraph make_cycle(int n);
PlaneGraph make_grid(int rows, int cols);
PlaneGraph make_wheel(int rim);  // hub is vertex `rim`
int edge_between(const PlaneGraph& g, int a, int b);  // -1 when absent

// Empty when the layer tree satisfies the four structural properties
// (tree, connected bags, bag cut property by reachability, child index rule)
// and the face-sharing property between adjacent bags.
std::string check_layer_tree(const PlaneGraph& g, const LayerTree& t);

}  // namespace pk
