#include <algorithm>
#include <set>

#include "planekern/graph_util.hpp"
#include "planekern/plane_graph.hpp"

namespace pk {

namespace {

Overlay build_overlay(const PlaneGraph& g, bool with_original) {
  int n = g.n(), m = g.m();
  Overlay ov;
  ov.n_orig = n;
  std::vector<Id> vids = g.vid;
  Id fresh = g.max_vid() + 1;
  for (int f = 0; f < g.nfaces; ++f) vids.push_back(fresh + f);
  std::vector<EdgeInput> edges;
  if (with_original)
    for (int e = 0; e < m; ++e) {
      edges.push_back({g.eu(e), g.ev(e), g.eid[e]});
      ov.corner_he.push_back(-1);
      ov.orig_edge.push_back(e);
    }
  Id fresh_e = g.max_eid() + 1;
  std::vector<int> rid(2 * m, -1), iso(n, -1);
  for (int h = 0; h < 2 * m; ++h) {
    rid[h] = static_cast<int>(edges.size());
    edges.push_back({g.org[h], n + g.hface[h], fresh_e++});
    ov.corner_he.push_back(h);
    ov.orig_edge.push_back(-1);
  }
  for (int v = 0; v < n; ++v)
    if (g.vhe[v] < 0) {
      iso[v] = static_cast<int>(edges.size());
      edges.push_back({v, n + g.iso_face[v], fresh_e++});
      ov.corner_he.push_back(-1);
      ov.orig_edge.push_back(-1);
    }
  std::vector<std::vector<int>> rot(n + g.nfaces);
  for (int v = 0; v < n; ++v) {
    if (g.vhe[v] < 0) {
      rot[v].push_back(2 * iso[v]);
      continue;
    }
    for (int h : g.rotation(v)) {
      if (with_original) rot[v].push_back(h);
      rot[v].push_back(2 * rid[h]);
    }
  }
  // Around a face vertex the corners follow the boundary walk.
  for (std::size_t c = 0; c < g.cycles.size(); ++c)
    for (int h : g.cycles[c]) rot[n + g.cycle_face[c]].push_back(2 * rid[h] + 1);
  for (int v = 0; v < n; ++v)
    if (iso[v] >= 0) rot[n + g.iso_face[v]].push_back(2 * iso[v] + 1);

  int outer_he = -1;
  for (std::size_t c = 0; c < g.cycles.size() && outer_he < 0; ++c)
    if (g.cycle_face[c] == g.outer) outer_he = 2 * rid[g.cycles[c][0]];
  for (int v = 0; v < n && outer_he < 0; ++v)
    if (iso[v] >= 0 && g.iso_face[v] == g.outer) outer_he = 2 * iso[v];
  ov.graph = build_plane(vids, edges, rot, outer_he);
  return ov;
}

}  // namespace

Overlay radial_graph(const PlaneGraph& g) { return build_overlay(g, false); }
Overlay overlay_graph(const PlaneGraph& g) { return build_overlay(g, true); }

std::vector<int> radial_distances(const PlaneGraph& g, int src) {
  int n = g.n();
  Adj adj(n + g.nfaces);
  for (int h = 0; h < 2 * g.m(); ++h) {
    adj[g.org[h]].push_back(n + g.hface[h]);
    adj[n + g.hface[h]].push_back(g.org[h]);
  }
  for (int v = 0; v < n; ++v)
    if (g.vhe[v] < 0) {
      adj[v].push_back(n + g.iso_face[v]);
      adj[n + g.iso_face[v]].push_back(v);
    }
  auto d = bfs(adj, {src});
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = d[v] < 0 ? -1 : d[v] / 2;
  return out;
}

int radial_distance(const PlaneGraph& g, int u, int v) {
  if (u == v) return 0;
  return radial_distances(g, u)[v];
}

std::vector<int> outerplanarity_layers(const PlaneGraph& g) {
  std::vector<int> layer(g.n(), 0);
  PlaneGraph cur = g;
  std::vector<int> to_orig(g.n());
  for (int v = 0; v < g.n(); ++v) to_orig[v] = v;
  int idx = 0;
  while (cur.n() > 0) {
    ++idx;
    std::vector<char> on(cur.n(), 0);
    for (int h = 0; h < 2 * cur.m(); ++h)
      if (cur.hface[h] == cur.outer) on[cur.org[h]] = 1;
    for (int v = 0; v < cur.n(); ++v)
      if (cur.iso_face[v] == cur.outer) on[v] = 1;
    std::vector<int> rem;
    for (int v = 0; v < cur.n(); ++v)
      if (on[v]) {
        rem.push_back(v);
        layer[to_orig[v]] = idx;
      }
    if (rem.empty()) throw GraphError("outerplanarity_layers: outer face has no vertices");
    auto s = remove_vertices(cur, rem);
    std::vector<int> nt(s.graph.n());
    for (int v = 0; v < s.graph.n(); ++v) nt[v] = to_orig[s.vmap[v]];
    to_orig = std::move(nt);
    cur = std::move(s.graph);
  }
  return layer;
}

LayerTree layer_tree(const PlaneGraph& g) {
  int n = g.n();
  auto layer = outerplanarity_layers(g);
  Dsu d(n);
  for (int e = 0; e < g.m(); ++e)
    if (layer[g.eu(e)] == layer[g.ev(e)]) d.unite(g.eu(e), g.ev(e));
  // Nodes ordered by layer, then by smallest vertex.
  std::vector<int> reps;
  for (int v = 0; v < n; ++v)
    if (d.find(v) == v) reps.push_back(v);
  std::stable_sort(reps.begin(), reps.end(), [&](int a, int b) { return layer[a] < layer[b]; });
  LayerTree t;
  std::vector<int> node_of_rep(n, -1);
  for (int r : reps) {
    node_of_rep[r] = t.size();
    t.kappa.emplace_back();
    t.idx.push_back(layer[r]);
  }
  t.node_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    t.node_of[v] = node_of_rep[d.find(v)];
    t.kappa[t.node_of[v]].push_back(v);
  }
  std::set<std::pair<int, int>> es;
  for (int e = 0; e < g.m(); ++e) {
    int a = t.node_of[g.eu(e)], b = t.node_of[g.ev(e)];
    if (a != b) es.insert(std::minmax(a, b));
  }
  t.edges.assign(es.begin(), es.end());
  int N = t.size();
  t.parent.assign(N, -1);
  t.children.assign(N, {});
  if (N == 0) return t;
  t.root = 0;
  Adj adj(N);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(N, 0);
  std::vector<int> q{t.root};
  seen[t.root] = 1;
  for (std::size_t i = 0; i < q.size(); ++i) {
    int x = q[i];
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        t.parent[y] = x;
        t.children[x].push_back(y);
        q.push_back(y);
      }
  }
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  return t;
}

}  // namespace pk
