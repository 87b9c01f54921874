#include "planekern/sparsify.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "planekern/graph_util.hpp"

namespace pk {

void check_partition(const Partitioned& p) {
  const PlaneGraph& g = p.g;
  if (static_cast<int>(p.inA.size()) != g.n()) throw GraphError("partition size does not match the graph");
  for (int e = 0; e < g.m(); ++e)
    if (p.inA[g.eu(e)] && p.inA[g.ev(e)])
      throw GraphError("free class is not independent: edge " + std::to_string(g.eid[e]));
}

int cost(const Partitioned& p, const std::vector<int>& vertices) {
  std::vector<int> v = vertices;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  int c = 0;
  for (int x : v) c += p.is_b(x);
  return c;
}

int edge_cost(const Partitioned& p, const std::vector<int>& edges) {
  std::vector<int> v;
  for (int e : edges) {
    v.push_back(p.g.eu(e));
    v.push_back(p.g.ev(e));
  }
  return cost(p, v);
}

std::vector<int> outer_walk(const PlaneGraph& g) {
  std::vector<int> out;
  if (g.outer < 0) return out;
  for (const auto& w : boundary_walk(g, g.outer).walks) out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool outer_is_simple_cycle(const PlaneGraph& g) {
  if (g.outer < 0 || !is_connected(g)) return false;
  FaceWalk fw = boundary_walk(g, g.outer);
  if (fw.walks.size() != 1 || fw.walks[0].size() < 3) return false;
  std::vector<int> w = fw.walks[0];
  std::sort(w.begin(), w.end());
  return std::adjacent_find(w.begin(), w.end()) == w.end();
}

namespace {

constexpr long kInf = LONG_MAX / 4;
constexpr int kMaxExactBoundary = 16;  // subset table size limit

// Node-weighted Steiner dynamic program. A state is a terminal subset; its
// row holds, per vertex v, the least total weight of a connected vertex set
// containing the subset and v.
struct DwEngine {
  const Adj& adj;
  std::vector<long> w;
  std::vector<std::vector<long>> dp;
  // how >= 0: split index; -1: terminal base; <= -2: extended from vertex -2-how
  std::vector<std::vector<int>> how;
  std::vector<std::vector<std::pair<int, int>>> splits;

  DwEngine(const Adj& a, std::vector<long> weights) : adj(a), w(std::move(weights)) {}

  int n() const { return static_cast<int>(adj.size()); }

  int add_terminal(int t) {
    int s = new_state();
    dp[s][t] = w[t];
    how[s][t] = -1;
    relax(s);
    return s;
  }

  int add_split_state(std::vector<std::pair<int, int>> sp) {
    int s = new_state();
    splits[s] = std::move(sp);
    for (int v = 0; v < n(); ++v)
      for (std::size_t i = 0; i < splits[s].size(); ++i) {
        auto [a, b] = splits[s][i];
        if (dp[a][v] >= kInf || dp[b][v] >= kInf) continue;
        long c = dp[a][v] + dp[b][v] - w[v];
        if (c < dp[s][v]) {
          dp[s][v] = c;
          how[s][v] = static_cast<int>(i);
        }
      }
    relax(s);
    return s;
  }

  int new_state() {
    dp.emplace_back(n(), kInf);
    how.emplace_back(n(), -1);
    splits.emplace_back();
    return static_cast<int>(dp.size()) - 1;
  }

  void relax(int s) {
    auto& d = dp[s];
    using Item = std::pair<long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int v = 0; v < n(); ++v)
      if (d[v] < kInf) pq.push({d[v], v});
    while (!pq.empty()) {
      auto [c, u] = pq.top();
      pq.pop();
      if (c != d[u]) continue;
      for (int x : adj[u])
        if (c + w[x] < d[x]) {
          d[x] = c + w[x];
          how[s][x] = -2 - u;
          pq.push({d[x], x});
        }
    }
  }

  void collect(int s, int v, std::vector<char>& in) const {
    std::vector<std::pair<int, int>> st{{s, v}};
    while (!st.empty()) {
      auto [a, x] = st.back();
      st.pop_back();
      in[x] = 1;
      int h = how[a][x];
      if (h == -1) continue;
      if (h <= -2) {
        st.push_back({a, -2 - h});
      } else {
        st.push_back({splits[a][h].first, x});
        st.push_back({splits[a][h].second, x});
      }
    }
  }

  // Best root of a state (lowest index on ties).
  int argmin(int s) const {
    int best = -1;
    for (int v = 0; v < n(); ++v)
      if (dp[s][v] < kInf && (best < 0 || dp[s][v] < dp[s][best])) best = v;
    return best;
  }
};

std::vector<long> node_weights(const Partitioned& p) {
  long big = p.g.n() + 1;
  std::vector<long> w(p.g.n());
  for (int v = 0; v < p.g.n(); ++v) w[v] = (p.is_b(v) ? big : 0) + 1;
  return w;
}

Adj alive_adjacency(const PlaneGraph& g, const std::vector<char>& dead) {
  std::vector<std::pair<int, int>> es;
  for (int e = 0; e < g.m(); ++e)
    if (dead.empty() || !dead[e]) es.push_back({g.eu(e), g.ev(e)});
  return adj_from_edges(g.n(), es);
}

// Spanning tree of G[U] taking edges in increasing id order.
std::vector<int> kruskal_tree(const PlaneGraph& g, const std::vector<char>& inU, const std::vector<char>& dead) {
  std::vector<int> es;
  for (int e = 0; e < g.m(); ++e)
    if ((dead.empty() || !dead[e]) && inU[g.eu(e)] && inU[g.ev(e)]) es.push_back(e);
  std::sort(es.begin(), es.end(), [&](int a, int b) { return g.eid[a] < g.eid[b]; });
  Dsu d(g.n());
  std::vector<int> out;
  for (int e : es)
    if (d.unite(g.eu(e), g.ev(e))) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

Connector make_connector(const Partitioned& p, const std::vector<char>& inU, const std::vector<char>& dead,
                         const std::vector<int>& A) {
  Connector c;
  for (int v = 0; v < p.g.n(); ++v)
    if (inU[v]) c.vertices.push_back(v);
  c.edges = kruskal_tree(p.g, inU, dead);
  c.anchors = A;
  c.cost = cost(p, c.vertices);
  return c;
}

std::vector<int> sorted_unique(std::vector<int> a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Terminals in the order of their first visit on the outer walk; empty when
// some terminal is not on the outer face.
std::vector<int> boundary_order(const PlaneGraph& g, const std::vector<int>& A) {
  std::vector<char> want(g.n(), 0), seen(g.n(), 0);
  for (int a : A) want[a] = 1;
  std::vector<int> out;
  for (int v : outer_walk(g))
    if (want[v] && !seen[v]) {
      seen[v] = 1;
      out.push_back(v);
    }
  for (int a : A)
    if (g.vhe[a] < 0 && !seen[a]) {  // isolated vertices sit in the outer face
      seen[a] = 1;
      out.push_back(a);
    }
  if (out.size() != A.size()) return {};
  return out;
}

// Minimum total weight vertex set connecting A in g minus dead edges, by
// Dreyfus-Wagner restricted to cyclic intervals of `order` when `intervals`
// is set. Returns false when A cannot be connected.
bool steiner_set(const PlaneGraph& g, const std::vector<long>& w, const std::vector<char>& dead,
                 const std::vector<int>& order, bool intervals, std::vector<char>& inU, long& weight) {
  int k = static_cast<int>(order.size());
  Adj adj = alive_adjacency(g, dead);
  DwEngine dw(adj, w);
  int full = -1;
  if (intervals) {
    // state of interval (i, len) for len < k
    std::vector<std::vector<int>> id(k, std::vector<int>(k, -1));
    for (int i = 0; i < k; ++i) id[i][1] = dw.add_terminal(order[i]);
    for (int len = 2; len < k; ++len)
      for (int i = 0; i < k; ++i) {
        std::vector<std::pair<int, int>> sp;
        for (int j = 1; j < len; ++j) sp.push_back({id[i][j], id[(i + j) % k][len - j]});
        id[i][len] = dw.add_split_state(std::move(sp));
      }
    if (k == 1) {
      full = id[0][1];
    } else {
      std::vector<std::pair<int, int>> sp;
      for (int i = 0; i < k; ++i)
        for (int j = 1; j < k; ++j) sp.push_back({id[i][j], id[(i + j) % k][k - j]});
      full = dw.add_split_state(std::move(sp));
    }
  } else {
    if (k > 20) throw GraphError("too many terminals for the subset table");
    std::vector<int> id(std::size_t(1) << k, -1);
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      if (std::has_single_bit(mask)) {
        id[mask] = dw.add_terminal(order[std::countr_zero(mask)]);
        continue;
      }
      unsigned low = mask & -mask;
      std::vector<std::pair<int, int>> sp;
      for (unsigned a = (mask - 1) & mask; a; a = (a - 1) & mask)
        if ((a & low) && a != mask) sp.push_back({id[a], id[mask ^ a]});
      id[mask] = dw.add_split_state(std::move(sp));
    }
    full = id[(1u << k) - 1];
  }
  int root = dw.argmin(full);
  if (root < 0) return false;
  weight = dw.dp[full][root];
  inU.assign(g.n(), 0);
  dw.collect(full, root, inU);
  return true;
}

bool outer_component_simple(const PlaneGraph& g, const std::vector<char>& dead) {
  std::vector<int> removed;
  for (int e = 0; e < g.m(); ++e)
    if (dead[e]) removed.push_back(e);
  if (removed.empty()) return outer_is_simple_cycle(g);
  return outer_is_simple_cycle(remove_edges(g, removed).graph);
}

// Descending edge-id sequence comparison: the smaller maximum wins.
bool desc_less(const PlaneGraph& g, std::vector<int> a, std::vector<int> b) {
  auto key = [&](std::vector<int>& x) {
    std::vector<Id> ids;
    for (int e : x) ids.push_back(g.eid[e]);
    std::sort(ids.rbegin(), ids.rend());
    return ids;
  };
  return key(a) < key(b);
}

Connector brute_force_connector(const Partitioned& p, const std::vector<int>& A) {
  const PlaneGraph& g = p.g;
  int n = g.n();
  if (n > 24) throw GraphError("brute-force connector limited to 24 vertices");
  std::vector<char> isA(n, 0);
  for (int a : A) isA[a] = 1;
  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (!isA[v]) free.push_back(v);
  auto w = node_weights(p);
  Adj adj = g.adjacency();
  long best = kInf;
  std::vector<int> best_edges;
  std::vector<char> best_U;
  std::vector<char> inU(n);
  for (unsigned long mask = 0; mask < (1ul << free.size()); ++mask) {
    std::fill(inU.begin(), inU.end(), 0);
    long wt = 0;
    for (int a : A) inU[a] = 1;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) inU[free[i]] = 1;
    for (int v = 0; v < n; ++v)
      if (inU[v]) wt += w[v];
    if (wt > best) continue;
    auto d = bfs(adj, {A[0]}, inU);
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (inU[v] && d[v] < 0) ok = false;
    if (!ok) continue;
    auto es = kruskal_tree(g, inU, {});
    if (wt < best || desc_less(g, es, best_edges)) {
      best = wt;
      best_edges = es;
      best_U = inU;
    }
  }
  if (best >= kInf) throw GraphError("terminals are not connected");
  return make_connector(p, best_U, {}, A);
}

Connector interval_connector(const Partitioned& p, const std::vector<int>& A) {
  const PlaneGraph& g = p.g;
  auto w = node_weights(p);
  std::vector<char> dead(g.m(), 0);
  auto solve = [&](std::vector<char>& inU, long& wt) {
    std::vector<int> order;
    bool simple = outer_component_simple(g, dead);
    if (!simple && A.size() <= 12) {
      order = A;
    } else {
      std::vector<int> removed;
      for (int e = 0; e < g.m(); ++e)
        if (dead[e]) removed.push_back(e);
      auto s = remove_edges(g, removed);
      std::vector<int> inv(g.n(), -1);
      for (int v = 0; v < s.graph.n(); ++v) inv[s.vmap[v]] = v;
      std::vector<int> loc;
      for (int a : A) loc.push_back(inv[a]);
      for (int v : boundary_order(s.graph, loc)) order.push_back(s.vmap[v]);
      if (order.size() != A.size()) throw GraphError("connector terminals must lie on the outer face");
      simple = true;
    }
    return steiner_set(g, w, dead, order, simple, inU, wt);
  };
  std::vector<char> inU;
  long best = 0;
  if (!solve(inU, best)) throw GraphError("terminals are not connected");
  std::vector<int> tree = kruskal_tree(g, inU, dead);
  std::vector<int> byid(g.m());
  std::iota(byid.begin(), byid.end(), 0);
  std::sort(byid.begin(), byid.end(), [&](int a, int b) { return g.eid[a] > g.eid[b]; });
  for (int e : byid) {
    if (!std::binary_search(tree.begin(), tree.end(), e)) {
      dead[e] = 1;
      continue;
    }
    dead[e] = 1;
    std::vector<char> u2;
    long w2 = 0;
    if (solve(u2, w2) && w2 == best) {
      inU = u2;
      tree = kruskal_tree(g, inU, dead);
    } else {
      dead[e] = 0;
    }
  }
  return make_connector(p, inU, dead, A);
}

}  // namespace

Connector min_cost_connector(const Partitioned& p, const std::vector<int>& A_in, ConnectorEngine engine) {
  check_partition(p);
  std::vector<int> A = sorted_unique(A_in);
  for (int a : A)
    if (a < 0 || a >= p.g.n()) throw GraphError("connector terminal out of range");
  Connector c;
  c.anchors = A;
  if (A.empty()) return c;
  if (A.size() == 1) {
    c.vertices = A;
    c.cost = cost(p, A);
    return c;
  }
  return engine == ConnectorEngine::brute_force ? brute_force_connector(p, A) : interval_connector(p, A);
}

struct SubsetSteiner::Table {
  Adj adj;
  std::unique_ptr<DwEngine> dw;
  std::vector<int> id;
};

SubsetSteiner::SubsetSteiner(const Partitioned& p, std::vector<int> terminals)
    : p_(p), term_(std::move(terminals)), t_(std::make_unique<Table>()) {
  int k = static_cast<int>(term_.size());
  if (k > 16) throw GraphError("subset table limited to 16 terminals");
  t_->adj = p.g.adjacency();
  t_->dw = std::make_unique<DwEngine>(t_->adj, node_weights(p));
  t_->id.assign(std::size_t(1) << k, -1);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    if (std::has_single_bit(mask)) {
      t_->id[mask] = t_->dw->add_terminal(term_[std::countr_zero(mask)]);
      continue;
    }
    unsigned low = mask & -mask;
    std::vector<std::pair<int, int>> sp;
    for (unsigned a = (mask - 1) & mask; a; a = (a - 1) & mask)
      if (a & low) sp.push_back({t_->id[a], t_->id[mask ^ a]});
    t_->id[mask] = t_->dw->add_split_state(std::move(sp));
  }
}

SubsetSteiner::~SubsetSteiner() = default;

Connector SubsetSteiner::connector(unsigned mask) const {
  Connector c;
  for (std::size_t i = 0; i < term_.size(); ++i)
    if (mask >> i & 1) c.anchors.push_back(term_[i]);
  if (mask == 0) return c;
  int s = t_->id[mask];
  int root = t_->dw->argmin(s);
  if (root < 0) throw GraphError("terminals are not connected");
  std::vector<char> inU(p_.g.n(), 0);
  t_->dw->collect(s, root, inU);
  return make_connector(p_, inU, {}, c.anchors);
}

int SubsetSteiner::min_cost(unsigned mask) const {
  if (mask == 0) return 0;
  int s = t_->id[mask];
  int root = t_->dw->argmin(s);
  if (root < 0) return -1;
  return static_cast<int>(t_->dw->dp[s][root] / (p_.g.n() + 1));
}

namespace {

// Subgraph formed by the kept edges and their endpoints, with maps back to g.
std::vector<char> outer_vertices(const PlaneGraph& g) {
  std::vector<char> on(g.n(), 0);
  for (int v : outer_walk(g)) on[v] = 1;
  for (int v = 0; v < g.n(); ++v)
    if (g.vhe[v] < 0) on[v] = 1;
  return on;
}

bool on_outer(const PlaneGraph& g, int e) { return g.hface[2 * e] == g.outer || g.hface[2 * e + 1] == g.outer; }

bool is_tree(const PlaneGraph& g, const std::vector<int>& edges) {
  Dsu d(g.n());
  for (int e : edges)
    if (!d.unite(g.eu(e), g.ev(e))) return false;
  std::vector<int> vs;
  for (int e : edges) vs.push_back(d.find(g.eu(e)));
  vs = sorted_unique(vs);
  return vs.size() <= 1;
}

}  // namespace

bool is_boundary_anchored(const PlaneGraph& g, const std::vector<int>& edges) {
  if (edges.empty() || !is_tree(g, edges)) return false;
  auto on = outer_vertices(g);
  std::map<int, int> deg;
  for (int e : edges) {
    ++deg[g.eu(e)];
    ++deg[g.ev(e)];
  }
  for (auto [v, d] : deg)
    if ((d == 1) != static_cast<bool>(on[v])) return false;
  return true;
}

TreeParts normalize_to_trees(const Partitioned& p, const Connector& h) {
  const PlaneGraph& g = p.g;
  std::vector<int> edges = sorted_unique(h.edges);
  std::vector<char> anchor(g.n(), 0);
  for (int a : h.anchors) anchor[a] = 1;
  // prune leaves that are not anchors
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> deg(g.n(), 0);
    for (int e : edges) {
      ++deg[g.eu(e)];
      ++deg[g.ev(e)];
    }
    std::vector<int> keep;
    for (int e : edges) {
      int a = g.eu(e), b = g.ev(e);
      if ((deg[a] == 1 && !anchor[a]) || (deg[b] == 1 && !anchor[b]))
        changed = true;
      else
        keep.push_back(e);
    }
    edges.swap(keep);
  }
  if (!is_tree(g, edges)) throw GraphError("connector is not a tree after pruning");
  auto on = outer_vertices(g);
  TreeParts out;
  std::vector<int> inner;
  for (int e : edges) (on_outer(g, e) ? out.h0 : inner).push_back(e);
  // group interior edges that meet at an interior vertex
  Dsu d(static_cast<int>(inner.size()));
  std::map<int, int> first_at;
  for (int i = 0; i < static_cast<int>(inner.size()); ++i)
    for (int v : {g.eu(inner[i]), g.ev(inner[i])}) {
      if (on[v]) continue;
      auto [it, fresh] = first_at.emplace(v, i);
      if (!fresh) d.unite(it->second, i);
    }
  std::map<int, int> part_of;
  for (int i = 0; i < static_cast<int>(inner.size()); ++i) {
    auto [it, fresh] = part_of.emplace(d.find(i), static_cast<int>(out.parts.size()));
    if (fresh) {
      out.parts.emplace_back();
      out.anchors.emplace_back();
    }
    out.parts[it->second].push_back(inner[i]);
  }
  for (std::size_t i = 0; i < out.parts.size(); ++i) {
    std::vector<int> a;
    for (int e : out.parts[i])
      for (int v : {g.eu(e), g.ev(e)})
        if (on[v]) a.push_back(v);
    out.anchors[i] = sorted_unique(a);
  }
  return out;
}

namespace {

// Sub-partition on the vertices touched by `keep` (edge indices of p.g).
struct Piece {
  Partitioned part;
  std::vector<int> vmap;  // piece vertex -> p.g vertex
  std::vector<int> emap;  // piece edge -> p.g edge
};

Piece extract(const Partitioned& p, const std::vector<char>& keep) {
  Surgery s = keep_edges(p.g, keep);
  Piece pc;
  pc.part.g = std::move(s.graph);
  pc.vmap = std::move(s.vmap);
  pc.emap = std::move(s.emap);
  for (int v : pc.vmap) pc.part.inA.push_back(p.inA[v]);
  return pc;
}

}  // namespace

SparsifyResult sparsify(const Partitioned& p0, const SparsifyConfig& cfg) {
  check_partition(p0);
  if (!is_connected(p0.g)) throw GraphError("sparsify: graph is not connected");
  SparsifyResult res;
  const int n0 = p0.g.n();
  if (p0.g.m() == 0) return res;

  // Paid-paid edges get a free midpoint so that both classes are independent.
  std::vector<std::pair<int, int>> bb;
  for (int e = 0; e < p0.g.m(); ++e)
    if (p0.is_b(p0.g.eu(e)) && p0.is_b(p0.g.ev(e))) bb.push_back({e, 1});
  Subdivision sub = subdivide_edges(p0.g, bb);
  res.subdivided = static_cast<int>(bb.size());
  Partitioned p{std::move(sub.graph), p0.inA};
  p.inA.resize(p.g.n(), 1);
  const PlaneGraph& g = p.g;
  const int O = g.outer;

  std::vector<char> keep(g.m(), 0);
  Dsu region(g.nfaces);
  for (int e = 0; e < g.m(); ++e)
    if (!on_outer(g, e)) region.unite(g.hface[2 * e], g.hface[2 * e + 1]);
  std::map<int, std::vector<int>> cyc;  // region root -> its boundary cycle edges
  std::vector<int> bridges;
  for (int e = 0; e < g.m(); ++e) {
    int a = g.hface[2 * e], b = g.hface[2 * e + 1];
    if (a == O && b == O)
      bridges.push_back(e);
    else if (a == O || b == O)
      cyc[region.find(a == O ? b : a)].push_back(e);
  }
  int comp = 0;
  for (auto& [root, C] : cyc) {
    SparsifyComponent rep;
    rep.component = comp++;
    std::vector<int> orig;
    for (int e : C) orig.push_back(sub.origin[e]);
    rep.boundary_len = static_cast<int>(sorted_unique(orig).size());
    for (int e : C) keep[e] = 1;
    std::vector<char> inC(g.m(), 0);
    for (int e = 0; e < g.m(); ++e)
      if (region.find(g.hface[2 * e]) == root || region.find(g.hface[2 * e + 1]) == root) inC[e] = 1;
    if (C.size() == 2) {
      rep.strategy = "exact";
      rep.note = "two-cycle";
    } else if (rep.boundary_len <= std::min(cfg.base_threshold, kMaxExactBoundary)) {
      rep.strategy = "exact";
      Piece pc = extract(p, inC);
      if (!outer_is_simple_cycle(pc.part.g)) throw GraphError("sparsify: component boundary is not a simple cycle");
      // Subdivision midpoints never need to be terminals: a minimal connector
      // through one uses both of its neighbours.
      std::vector<int> terms;
      for (int v : outer_walk(pc.part.g))
        if (pc.vmap[v] < n0) terms.push_back(v);
      SubsetSteiner table(pc.part, terms);
      for (unsigned mask = 1; mask < (1u << terms.size()); ++mask) {
        if (std::has_single_bit(mask)) continue;
        for (int e : table.connector(mask).edges) keep[pc.emap[e]] = 1;
      }
    } else {
      rep.strategy = "identity";
      rep.note = "size bound not enforced";
      for (int e = 0; e < g.m(); ++e)
        if (inC[e]) keep[e] = 1;
    }
    for (int e = 0; e < g.m(); ++e) rep.edges_out += inC[e] && keep[e];
    res.report.push_back(rep);
  }
  if (!bridges.empty()) {
    SparsifyComponent rep;
    rep.component = comp++;
    std::vector<int> orig;
    for (int e : bridges) {
      keep[e] = 1;
      orig.push_back(sub.origin[e]);
    }
    rep.boundary_len = 2 * static_cast<int>(sorted_unique(orig).size());
    rep.strategy = "exact";
    rep.note = "bridges";
    rep.edges_out = static_cast<int>(bridges.size());
    res.report.push_back(rep);
  }
  std::vector<int> kept;
  for (int e = 0; e < g.m(); ++e)
    if (keep[e]) kept.push_back(sub.origin[e]);
  res.kept_edges = sorted_unique(kept);
  return res;
}

BrickPartition brick_partition_of_connector(const PlaneGraph& brick, const std::vector<int>& F) {
  if (!outer_is_simple_cycle(brick)) throw GraphError("brick outer face is not a simple cycle");
  std::vector<char> keep(brick.m(), 0);
  for (int e = 0; e < brick.m(); ++e)
    if (on_outer(brick, e)) keep[e] = 1;
  std::vector<int> f = sorted_unique(F);
  for (int e : f) {
    if (e < 0 || e >= brick.m()) throw GraphError("connector edge out of range");
    keep[e] = 1;
  }
  Surgery s = keep_edges(brick, keep);
  const PlaneGraph& h = s.graph;
  BrickPartition bp;
  bp.host_boundary = brick.face_length(brick.outer);
  std::vector<int> slot(h.nfaces, -1);
  for (int fc = 0; fc < h.nfaces; ++fc) {
    if (fc == h.outer) continue;
    FaceWalk fw = boundary_walk(h, fc);
    if (fw.walks.size() != 1) throw GraphError("connector is not brickable: a face has several boundary components");
    std::vector<int> w = fw.walks[0];
    std::vector<int> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (w.size() < 2 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw GraphError("connector is not brickable: a face boundary is not a simple cycle");
    for (int& v : w) v = s.vmap[v];
    slot[fc] = static_cast<int>(bp.boundaries.size());
    bp.boundaries.push_back(w);
    bp.perim += static_cast<int>(w.size());
  }
  bp.edges.resize(bp.boundaries.size());
  for (int e = 0; e < brick.m(); ++e) {
    int a = slot[s.fmap[brick.hface[2 * e]]], b = slot[s.fmap[brick.hface[2 * e + 1]]];
    if (a >= 0) bp.edges[a].push_back(e);
    if (b >= 0 && b != a) bp.edges[b].push_back(e);
  }
  if (bp.perim > bp.host_boundary + 2 * static_cast<int>(f.size()))
    throw GraphError("brick partition exceeds the perimeter bound");
  return bp;
}

bool is_c_short(const BrickPartition& bp, double c) { return bp.perim <= c * bp.host_boundary; }

bool is_tau_nice(const BrickPartition& bp, double tau) {
  for (const auto& b : bp.boundaries)
    if (static_cast<double>(b.size()) > (1.0 - tau) * bp.host_boundary) return false;
  return true;
}

namespace {

struct Carve {
  bool ok = false;
  std::vector<int> pedges, iedges;
};

bool is_path(const PlaneGraph& g, const std::vector<int>& seq, std::vector<int>& edges, bool boundary) {
  if (seq.empty()) return false;
  auto s = seq;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  for (int v : seq)
    if (v < 0 || v >= g.n()) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    int e = -1;
    for (int h : g.rotation(seq[i]))
      if (g.head(h) == seq[i + 1] && (!boundary || on_outer(g, h / 2))) {
        e = h / 2;
        break;
      }
    if (e < 0) return false;
    edges.push_back(e);
  }
  return true;
}

Carve carve_check(const PlaneGraph& brick, const std::vector<int>& P, const std::vector<int>& I, double delta) {
  Carve c;
  if (!outer_is_simple_cycle(brick)) return c;
  int L = brick.face_length(brick.outer);
  if (!is_path(brick, P, c.pedges, false) || !is_path(brick, I, c.iedges, true)) return c;
  auto on = outer_vertices(brick);
  if (!on[P.front()] || !on[P.back()]) return c;
  bool same = I.front() == P.front() && I.back() == P.back();
  bool rev = I.front() == P.back() && I.back() == P.front();
  if (!same && !rev) return c;
  double plen = static_cast<double>(P.size() - 1), ilen = static_cast<double>(I.size() - 1);
  c.ok = plen <= (0.5 - delta) * L && ilen <= 0.5 * L;
  return c;
}

}  // namespace

bool is_delta_carve(const PlaneGraph& brick, const std::vector<int>& P, const std::vector<int>& I, double delta) {
  return carve_check(brick, P, I, delta).ok;
}

bool is_delta_mountain(const PlaneGraph& brick, const std::vector<int>& P, const std::vector<int>& I, int summit,
                       double delta) {
  Carve c = carve_check(brick, P, I, delta);
  if (!c.ok) return false;
  auto it = std::find(P.begin(), P.end(), summit);
  if (it == P.end()) return false;
  std::size_t si = static_cast<std::size_t>(it - P.begin());
  // enclosed subgraph: the walk P + I and every face inside it
  std::vector<char> inW(brick.m(), 0);
  for (int e : c.pedges) inW[e] = 1;
  for (int e : c.iedges) inW[e] = 1;
  Surgery s = keep_edges(brick, inW);
  std::vector<std::pair<int, int>> es;
  for (int e = 0; e < brick.m(); ++e) {
    bool inside = inW[e] || s.fmap[brick.hface[2 * e]] != s.graph.outer ||
                  s.fmap[brick.hface[2 * e + 1]] != s.graph.outer;
    if (inside) es.push_back({brick.eu(e), brick.ev(e)});
  }
  Adj adj = adj_from_edges(brick.n(), es);
  std::vector<int> left(P.begin(), P.begin() + si + 1), right(P.begin() + si, P.end());
  auto dist_to = [&](int src, const std::vector<int>& targets) {
    auto d = bfs(adj, {src});
    int best = -1;
    for (int t : targets)
      if (d[t] >= 0 && (best < 0 || d[t] < best)) best = d[t];
    return best;
  };
  int pl = static_cast<int>(left.size()) - 1, pr = static_cast<int>(right.size()) - 1;
  return dist_to(P.front(), right) == pl && dist_to(P.back(), left) == pr;
}

CostBoundReport check_cost_bounds(const Partitioned& brick, const std::vector<int>& tree_edges) {
  CostBoundReport r;
  r.boundary_len = brick.g.face_length(brick.g.outer);
  r.cost = edge_cost(brick, tree_edges);
  r.edges = static_cast<int>(sorted_unique(tree_edges).size());
  r.cost_ok = 2 * r.cost <= r.boundary_len;
  r.edges_ok = 2 * r.edges <= 3 * r.boundary_len;
  return r;
}

}  // namespace pk
