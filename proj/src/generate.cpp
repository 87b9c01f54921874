#include "planekern/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace pk {

PlanarModel parse_model(const std::string& s) {
  if (s == "triangulation_delete") return PlanarModel::triangulation_delete;
  if (s == "grid_perturb") return PlanarModel::grid_perturb;
  throw GraphError("unknown planar model '" + s + "'");
}

namespace {

using Tri = std::array<int, 3>;

std::set<std::pair<int, int>> stacked_triangulation(Rng& rng, int n, int flips) {
  std::set<std::pair<int, int>> es;
  auto add = [&](int a, int b) { es.insert(std::minmax(a, b)); };
  if (n == 2) add(0, 1);
  if (n < 3) return es;
  std::vector<Tri> tris{{0, 1, 2}, {0, 1, 2}};  // inner and outer face
  add(0, 1);
  add(1, 2);
  add(0, 2);
  for (int v = 3; v < n; ++v) {
    int i = rng.uniform(0, static_cast<int>(tris.size()) - 1);
    Tri t = tris[i];
    tris[i] = {t[0], t[1], v};
    tris.push_back({t[1], t[2], v});
    tris.push_back({t[0], t[2], v});
    add(t[0], v);
    add(t[1], v);
    add(t[2], v);
  }
  for (int f = 0; f < flips; ++f) {
    int i = rng.uniform(0, static_cast<int>(tris.size()) - 1);
    int s = rng.uniform(0, 2);
    int a = tris[i][s], b = tris[i][(s + 1) % 3], c = tris[i][(s + 2) % 3];
    int j = -1, d = -1;
    for (int x = 0; x < static_cast<int>(tris.size()); ++x) {
      if (x == i) continue;
      const Tri& t = tris[x];
      bool ha = std::find(t.begin(), t.end(), a) != t.end();
      bool hb = std::find(t.begin(), t.end(), b) != t.end();
      if (ha && hb) {
        j = x;
        for (int y : t)
          if (y != a && y != b) d = y;
      }
    }
    if (j < 0 || d == c || es.count(std::minmax(c, d))) continue;
    es.erase(std::minmax(a, b));
    add(c, d);
    tris[i] = {a, c, d};
    tris[j] = {b, c, d};
  }
  return es;
}

std::set<std::pair<int, int>> perturbed_grid(Rng& rng, int n) {
  std::set<std::pair<int, int>> es;
  int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int v = 0; v < n; ++v) {
    int r = v / cols, c = v % cols;
    if (c + 1 < cols && v + 1 < n) es.insert({v, v + 1});
    if (id(r + 1, c) < n) es.insert({v, id(r + 1, c)});
    // one diagonal per cell, chosen at random
    if (c + 1 < cols && id(r + 1, c + 1) < n && rng.coin(0.4)) {
      if (rng.coin(0.5))
        es.insert({v, id(r + 1, c + 1)});
      else
        es.insert({v + 1, id(r + 1, c)});
    }
  }
  return es;
}

}  // namespace

PlaneGraph generate_random_planar(int n, std::uint64_t seed, const GenConfig& cfg) {
  if (n < 1) throw GraphError("generate_random_planar: n must be positive");
  Rng rng(seed);
  int flips = cfg.flips < 0 ? n : cfg.flips;
  auto es = cfg.model == PlanarModel::triangulation_delete ? stacked_triangulation(rng, n, flips)
                                                           : perturbed_grid(rng, n);
  std::vector<std::pair<int, int>> kept;
  for (auto e : es)
    if (!rng.coin(cfg.p_delete)) kept.push_back(e);
  // keep the largest component
  Adj adj = adj_from_edges(n, kept);
  int nc = 0;
  auto comp = label_components(adj, {}, &nc);
  std::vector<int> sz(nc, 0);
  for (int v = 0; v < n; ++v) ++sz[comp[v]];
  int big = static_cast<int>(std::max_element(sz.begin(), sz.end()) - sz.begin());
  std::vector<int> perm;
  for (int v = 0; v < n; ++v)
    if (comp[v] == big) perm.push_back(v);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<int> label(n, -1);
  for (std::size_t i = 0; i < perm.size(); ++i) label[perm[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : kept)
    if (label[a] >= 0) out.push_back({label[a], label[b]});
  std::shuffle(out.begin(), out.end(), rng.engine());
  auto g = embed(static_cast<int>(perm.size()), out);
  if (!g) throw GraphError("generate_random_planar: generated graph is not planar");
  return *g;
}

std::vector<int> random_subset(Rng& rng, int n, int count) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng.engine());
  all.resize(std::min(count, n));
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<int> random_spanning_tree(Rng& rng, const PlaneGraph& g) {
  std::vector<int> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng.engine());
  Dsu d(g.n());
  std::vector<int> tree;
  for (int e : order)
    if (d.unite(g.eu(e), g.ev(e))) tree.push_back(e);
  std::sort(tree.begin(), tree.end());
  return tree;
}

PlaneGraph random_brick(Rng& rng, int n, int max_boundary, double p_delete) {
  if (n < 3) throw GraphError("random_brick: need at least 3 vertices");
  GenConfig cfg;
  cfg.p_delete = 0;
  cfg.flips = rng.uniform(0, n);
  PlaneGraph g = generate_random_planar(n, rng.next(), cfg);
  std::vector<int> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<int> removed;
  for (int e : order) {
    if (!rng.coin(p_delete)) continue;
    removed.push_back(e);
    PlaneGraph h = remove_edges(g, removed).graph;
    bool ok = is_connected(h) && h.face_length(h.outer) <= max_boundary;
    if (ok) {
      FaceWalk fw = boundary_walk(h, h.outer);
      std::vector<int> w = fw.walks[0];
      std::sort(w.begin(), w.end());
      ok = fw.walks.size() == 1 && std::adjacent_find(w.begin(), w.end()) == w.end();
    }
    if (!ok) removed.pop_back();
  }
  return remove_edges(g, removed).graph;
}

std::vector<char> random_independent_set(Rng& rng, const PlaneGraph& g, double p) {
  std::vector<int> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng.engine());
  Adj adj = g.adjacency();
  std::vector<char> in(g.n(), 0);
  for (int v : order) {
    if (!rng.coin(p)) continue;
    bool free = true;
    for (int u : adj[v]) free = free && !in[u];
    in[v] = free;
  }
  return in;
}

PlaneGraph make_cycle(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return *embed(n, es);
}

PlaneGraph make_grid(int rows, int cols) {
  std::vector<std::pair<int, int>> es;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) es.push_back({v, v + 1});
      if (r + 1 < rows) es.push_back({v, v + cols});
    }
  return *embed(rows * cols, es);
}

PlaneGraph make_wheel(int rim) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < rim; ++i) {
    es.push_back({i, (i + 1) % rim});
    es.push_back({i, rim});
  }
  return *embed(rim + 1, es);
}

int edge_between(const PlaneGraph& g, int a, int b) {
  for (int e = 0; e < g.m(); ++e)
    if ((g.eu(e) == a && g.ev(e) == b) || (g.eu(e) == b && g.ev(e) == a)) return e;
  return -1;
}

std::string check_layer_tree(const PlaneGraph& g, const LayerTree& t) {
  int n = g.n(), N = t.size();
  if (n == 0) return N == 0 ? "" : "nodes without vertices";
  std::ostringstream err;
  // tree
  if (static_cast<int>(t.edges.size()) != N - 1) return "contraction is not a tree (edge count)";
  for (int x = 0; x < N; ++x)
    if (x != t.root && t.parent[x] < 0) return "contraction is not a tree (disconnected)";
  Adj adj = g.adjacency();
  // connected bags
  for (int x = 0; x < N; ++x) {
    std::vector<char> alive(n, 0);
    for (int v : t.kappa[x]) alive[v] = 1;
    auto d = bfs(adj, {t.kappa[x][0]}, alive);
    for (int v : t.kappa[x])
      if (d[v] < 0) {
        err << "bag " << x << " is not connected";
        return err.str();
      }
  }
  // root and index rule
  auto layer = outerplanarity_layers(g);
  std::vector<int> l1;
  for (int v = 0; v < n; ++v)
    if (layer[v] == 1) l1.push_back(v);
  auto rootbag = t.kappa[t.root];
  std::sort(rootbag.begin(), rootbag.end());
  if (rootbag != l1) return "root bag differs from the first layer";
  if (t.idx[t.root] != 1) return "root index is not 1";
  for (int x = 0; x < N; ++x)
    if (x != t.root && t.idx[x] != t.idx[t.parent[x]] + 1) {
      err << "node " << x << " index " << t.idx[x] << " under parent index " << t.idx[t.parent[x]];
      return err.str();
    }
  // cut property: after removing bag z, each component of G meets bags of
  // only one branch of the tree minus z
  Adj tadj(N);
  for (auto [a, b] : t.edges) {
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  for (int z = 0; z < N; ++z) {
    std::vector<char> talive(N, 1);
    talive[z] = 0;
    int nb = 0;
    auto branch = label_components(tadj, talive, &nb);
    std::vector<char> alive(n, 1);
    for (int v : t.kappa[z]) alive[v] = 0;
    int nc = 0;
    auto comp = label_components(adj, alive, &nc);
    std::vector<int> seen(nc, -1);
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      int b = branch[t.node_of[v]];
      if (seen[comp[v]] < 0)
        seen[comp[v]] = b;
      else if (seen[comp[v]] != b) {
        err << "bag " << z << " does not separate its branches";
        return err.str();
      }
    }
  }
  // every vertex of a child bag shares a face with some vertex of the parent bag
  std::vector<std::set<int>> vf(n);
  for (int h = 0; h < 2 * g.m(); ++h) vf[g.org[h]].insert(g.hface[h]);
  for (int v = 0; v < n; ++v)
    if (g.iso_face[v] >= 0) vf[v].insert(g.iso_face[v]);
  for (int x = 0; x < N; ++x) {
    if (x == t.root) continue;
    for (int vu : t.kappa[x]) {
      bool ok = false;
      for (int vp : t.kappa[t.parent[x]]) {
        for (int f : vf[vu])
          if (vf[vp].count(f)) ok = true;
        if (ok) break;
      }
      if (!ok) {
        err << "vertex " << vu << " shares no face with the parent bag";
        return err.str();
      }
    }
  }
  return {};
}

}  // namespace pk
