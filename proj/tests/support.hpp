#pragma once

#include "planekern/generate.hpp"
#include "planekern/plane_graph.hpp"

namespace testing {

inline pk::PlaneGraph cycle(int n) { return pk::make_cycle(n); }
inline pk::PlaneGraph grid(int r, int c) { return pk::make_grid(r, c); }
inline pk::PlaneGraph wheel(int rim) { return pk::make_wheel(rim); }
inline pk::PlaneGraph complete4() { return *pk::embed(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
inline int edge_between(const pk::PlaneGraph& g, int a, int b) { return pk::edge_between(g, a, b); }

// Alternates both generator models and flip counts.
inline pk::PlaneGraph random_plane(pk::Rng& rng, int n) {
  pk::GenConfig cfg;
  cfg.model = rng.coin(0.5) ? pk::PlanarModel::triangulation_delete : pk::PlanarModel::grid_perturb;
  cfg.p_delete = 0.1 + 0.5 * rng.real();
  cfg.flips = rng.uniform(0, n);
  return pk::generate_random_planar(n, rng.next(), cfg);
}

inline std::vector<int> random_spanning_tree(pk::Rng& rng, const pk::PlaneGraph& g) {
  return pk::random_spanning_tree(rng, g);
}

inline std::string layer_tree_violation(const pk::PlaneGraph& g, const pk::LayerTree& t) {
  return pk::check_layer_tree(g, t);
}

}  // namespace testing
