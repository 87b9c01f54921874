#include "planekern/plane_graph.hpp"

#include <algorithm>
#include <sstream>

#include "planekern/graph_util.hpp"

namespace pk {

namespace {

// Face cycles in order of their smallest half-edge.
std::vector<std::vector<int>> trace_cycles(const PlaneGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(g.org.size(), 0);
  for (int h = 0; h < static_cast<int>(g.org.size()); ++h) {
    if (seen[h]) continue;
    std::vector<int> cyc;
    int x = h;
    while (!seen[x]) {
      seen[x] = 1;
      cyc.push_back(x);
      x = g.fnext(x);
    }
    if (x != h) throw GraphError("face traversal is not a permutation");
    out.push_back(std::move(cyc));
  }
  return out;
}

}  // namespace

int PlaneGraph::degree(int v) const {
  if (vhe[v] < 0) return 0;
  int d = 0;
  int h = vhe[v];
  do {
    ++d;
    h = nxt[h];
  } while (h != vhe[v]);
  return d;
}

std::vector<int> PlaneGraph::rotation(int v) const {
  std::vector<int> r;
  if (vhe[v] < 0) return r;
  int h = vhe[v];
  do {
    r.push_back(h);
    h = nxt[h];
  } while (h != vhe[v]);
  return r;
}

std::vector<int> PlaneGraph::neighbors(int v) const {
  std::vector<int> r;
  for (int h : rotation(v)) r.push_back(head(h));
  return r;
}

std::vector<int> PlaneGraph::face_vertices(int f) const {
  std::vector<int> r;
  for (std::size_t c = 0; c < cycles.size(); ++c)
    if (cycle_face[c] == f)
      for (int h : cycles[c]) r.push_back(org[h]);
  for (int v = 0; v < n(); ++v)
    if (iso_face[v] == f) r.push_back(v);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

int PlaneGraph::face_length(int f) const {
  int len = 0;
  for (std::size_t c = 0; c < cycles.size(); ++c)
    if (cycle_face[c] == f) len += static_cast<int>(cycles[c].size());
  return len;
}

std::vector<std::vector<int>> PlaneGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n());
  for (int e = 0; e < m(); ++e) {
    int a = eu(e), b = ev(e);
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& l : adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return adj;
}

int PlaneGraph::vertex_index(Id id) const {
  for (int v = 0; v < n(); ++v)
    if (vid[v] == id) return v;
  return -1;
}

int PlaneGraph::edge_index(Id id) const {
  for (int e = 0; e < m(); ++e)
    if (eid[e] == id) return e;
  return -1;
}

Id PlaneGraph::max_vid() const {
  Id r = -1;
  for (Id x : vid) r = std::max(r, x);
  return r;
}

Id PlaneGraph::max_eid() const {
  Id r = -1;
  for (Id x : eid) r = std::max(r, x);
  return r;
}

std::vector<int> components(const PlaneGraph& g, int* count) {
  Dsu d(g.n());
  for (int e = 0; e < g.m(); ++e) d.unite(g.eu(e), g.ev(e));
  std::vector<int> comp(g.n(), -1);
  int c = 0;
  for (int v = 0; v < g.n(); ++v) {
    int r = d.find(v);
    if (comp[r] < 0) comp[r] = c++;
    comp[v] = comp[r];
  }
  if (count) *count = c;
  return comp;
}

bool is_connected(const PlaneGraph& g) {
  int c = 0;
  components(g, &c);
  return c <= 1;
}

void assign_faces(PlaneGraph& g, const std::vector<int>& outer_hes) {
  g.cycles = trace_cycles(g);
  int nc = 0;
  auto comp = components(g, &nc);
  std::vector<int> cyc_of(g.org.size(), -1);
  for (std::size_t c = 0; c < g.cycles.size(); ++c)
    for (int h : g.cycles[c]) cyc_of[h] = static_cast<int>(c);

  std::vector<int> outer_cycle(nc, -1);
  std::vector<char> forced(nc, 0);
  for (int oh : outer_hes) {
    if (oh < 0 || oh >= static_cast<int>(g.org.size())) throw GraphError("outer half-edge out of range");
    int k = comp[g.org[oh]];
    if (forced[k]) throw GraphError("two outer half-edges in one component");
    forced[k] = 1;
    outer_cycle[k] = cyc_of[oh];
  }
  // Default: longest cycle of each component, earliest on ties.
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    int k = comp[g.org[g.cycles[c][0]]];
    if (forced[k]) continue;
    int cur = outer_cycle[k];
    if (cur < 0 || g.cycles[c].size() > g.cycles[cur].size()) outer_cycle[k] = static_cast<int>(c);
  }
  std::vector<char> is_outer(g.cycles.size(), 0);
  for (int c : outer_cycle)
    if (c >= 0) is_outer[c] = 1;

  g.cycle_face.assign(g.cycles.size(), -1);
  g.outer = -1;
  int nf = 0;
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    if (is_outer[c]) {
      if (g.outer < 0) g.outer = nf++;
      g.cycle_face[c] = g.outer;
    } else {
      g.cycle_face[c] = nf++;
    }
  }
  if (g.outer < 0) g.outer = nf++;
  g.nfaces = nf;
  g.hface.assign(g.org.size(), -1);
  for (std::size_t c = 0; c < g.cycles.size(); ++c)
    for (int h : g.cycles[c]) g.hface[h] = g.cycle_face[c];
  g.iso_face.assign(g.n(), -1);
  for (int v = 0; v < g.n(); ++v)
    if (g.vhe[v] < 0) g.iso_face[v] = g.outer;
}

std::vector<int> inherit_faces(PlaneGraph& g, const PlaneGraph& old, const std::vector<int>& old_he,
                   const std::vector<int>& face_root, const std::vector<int>& old_iso) {
  g.cycles = trace_cycles(g);
  std::vector<int> cls(g.cycles.size());
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    int k = face_root[old.hface[old_he[g.cycles[c][0]]]];
    for (int h : g.cycles[c])
      if (face_root[old.hface[old_he[h]]] != k) throw GraphError("face inheritance is inconsistent");
    cls[c] = k;
  }
  std::vector<int> num(old.nfaces, -1);
  int nf = 0;
  for (std::size_t c = 0; c < g.cycles.size(); ++c)
    if (num[cls[c]] < 0) num[cls[c]] = nf++;
  int oc = face_root[old.outer];
  if (num[oc] < 0) num[oc] = nf++;
  g.iso_face.assign(g.n(), -1);
  for (int v = 0; v < g.n(); ++v) {
    if (g.vhe[v] >= 0) continue;
    int k = face_root[old_iso[v]];
    if (num[k] < 0) num[k] = nf++;
    g.iso_face[v] = num[k];
  }
  g.nfaces = nf;
  g.outer = num[oc];
  g.cycle_face.resize(g.cycles.size());
  g.hface.assign(g.org.size(), -1);
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    g.cycle_face[c] = num[cls[c]];
    for (int h : g.cycles[c]) g.hface[h] = g.cycle_face[c];
  }
  std::vector<int> fmap(old.nfaces);
  for (int f = 0; f < old.nfaces; ++f) fmap[f] = num[face_root[f]];
  return fmap;
}

PlaneGraph build_plane(const std::vector<Id>& vids, const std::vector<EdgeInput>& edges,
                       const std::vector<std::vector<int>>& rot, int outer_he) {
  return build_plane(vids, edges, rot, outer_he >= 0 ? std::vector<int>{outer_he} : std::vector<int>{});
}

std::vector<int> outer_half_edges(const PlaneGraph& g) {
  int nc = 0;
  auto comp = components(g, &nc);
  std::vector<int> best(nc, -1);
  for (int h = 0; h < 2 * g.m(); ++h)
    if (g.hface[h] == g.outer && best[comp[g.org[h]]] < 0) best[comp[g.org[h]]] = h;
  std::vector<int> out;
  for (int h : best)
    if (h >= 0) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

PlaneGraph build_plane(const std::vector<Id>& vids, const std::vector<EdgeInput>& edges,
                       const std::vector<std::vector<int>>& rot, const std::vector<int>& outer_hes) {
  PlaneGraph g;
  int n = static_cast<int>(vids.size());
  int m = static_cast<int>(edges.size());
  if (static_cast<int>(rot.size()) != n) throw GraphError("rotation list count differs from vertex count");
  g.vid = vids;
  g.eid.resize(m);
  g.org.assign(2 * m, -1);
  g.nxt.assign(2 * m, -1);
  g.prv.assign(2 * m, -1);
  g.vhe.assign(n, -1);
  for (int e = 0; e < m; ++e) {
    if (edges[e].u < 0 || edges[e].u >= n || edges[e].v < 0 || edges[e].v >= n)
      throw GraphError("edge endpoint out of range");
    g.eid[e] = edges[e].id;
    g.org[2 * e] = edges[e].u;
    g.org[2 * e + 1] = edges[e].v;
  }
  std::vector<char> used(2 * m, 0);
  for (int v = 0; v < n; ++v) {
    const auto& r = rot[v];
    for (std::size_t i = 0; i < r.size(); ++i) {
      int h = r[i];
      if (h < 0 || h >= 2 * m) throw GraphError("rotation of vertex " + std::to_string(vids[v]) + " names an unknown half-edge");
      if (g.org[h] != v) throw GraphError("rotation of vertex " + std::to_string(vids[v]) + " lists an edge not incident to it");
      if (used[h]) throw GraphError("half-edge listed twice in rotations");
      used[h] = 1;
      int nx = r[(i + 1) % r.size()];
      g.nxt[h] = nx;
      g.prv[nx] = h;
    }
    if (!r.empty()) g.vhe[v] = r[0];
  }
  for (int h = 0; h < 2 * m; ++h)
    if (!used[h]) throw GraphError("rotation lists miss an edge end");
  assign_faces(g, outer_hes);
  require_plane(g, "build_plane");
  return g;
}

std::string check_plane(const PlaneGraph& g) {
  std::ostringstream err;
  int n = g.n(), m = g.m();
  int H = 2 * m;
  if (static_cast<int>(g.org.size()) != H || static_cast<int>(g.nxt.size()) != H ||
      static_cast<int>(g.prv.size()) != H || static_cast<int>(g.vhe.size()) != n ||
      static_cast<int>(g.hface.size()) != H || static_cast<int>(g.iso_face.size()) != n)
    return "array sizes disagree";
  for (int h = 0; h < H; ++h) {
    if (g.org[h] < 0 || g.org[h] >= n) return "origin out of range";
    if (g.nxt[h] < 0 || g.nxt[h] >= H || g.prv[g.nxt[h]] != h) return "nxt/prv are not inverse";
    if (g.org[g.nxt[h]] != g.org[h]) return "rotation leaves its vertex";
  }
  std::vector<int> cnt(n, 0);
  for (int h = 0; h < H; ++h) ++cnt[g.org[h]];
  for (int v = 0; v < n; ++v) {
    if (cnt[v] == 0) {
      if (g.vhe[v] != -1) return "isolated vertex with a half-edge";
      continue;
    }
    if (g.vhe[v] < 0 || g.org[g.vhe[v]] != v) return "vhe does not leave its vertex";
    if (g.degree(v) != cnt[v]) return "rotation of a vertex is not a single cycle";
  }
  std::vector<char> seen(H, 0);
  int total = 0;
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    const auto& cyc = g.cycles[c];
    if (cyc.empty()) return "empty face cycle";
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int h = cyc[i];
      if (seen[h]) return "half-edge in two face cycles";
      seen[h] = 1;
      if (g.fnext(h) != cyc[(i + 1) % cyc.size()]) return "face cycle does not follow the rotation";
      if (g.hface[h] != g.cycle_face[c]) return "hface disagrees with cycle_face";
    }
    total += static_cast<int>(cyc.size());
  }
  if (total != H) return "face cycles do not cover all half-edges";
  if (g.outer < 0 || g.outer >= g.nfaces) return "outer face out of range";

  int nc = 0;
  auto comp = components(g, &nc);
  std::vector<long> vc(nc, 0), ec(nc, 0), cc(nc, 0);
  for (int v = 0; v < n; ++v) ++vc[comp[v]];
  for (int e = 0; e < m; ++e) ++ec[comp[g.eu(e)]];
  for (const auto& cyc : g.cycles) ++cc[comp[g.org[cyc[0]]]];
  int with_edges = 0;
  for (int c = 0; c < nc; ++c) {
    if (ec[c] == 0) continue;
    ++with_edges;
    if (vc[c] - ec[c] + cc[c] != 2) {
      err << "component " << c << " has V-E+F=" << (vc[c] - ec[c] + cc[c]) << " (not planar)";
      return err.str();
    }
  }
  long faces = static_cast<long>(g.cycles.size()) - with_edges + 1;
  if (faces != g.nfaces) {
    err << "face count " << g.nfaces << " but Euler expects " << faces;
    return err.str();
  }
  std::vector<char> used(g.nfaces, 0);
  std::vector<int> len(g.nfaces, 0);
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    if (g.cycle_face[c] < 0 || g.cycle_face[c] >= g.nfaces) return "cycle face out of range";
    used[g.cycle_face[c]] = 1;
    len[g.cycle_face[c]] += static_cast<int>(g.cycles[c].size());
  }
  for (int v = 0; v < n; ++v) {
    if (g.vhe[v] >= 0) {
      if (g.iso_face[v] != -1) return "non-isolated vertex has iso_face";
    } else {
      if (g.iso_face[v] < 0 || g.iso_face[v] >= g.nfaces) return "isolated vertex without face";
      used[g.iso_face[v]] = 1;
    }
  }
  used[g.outer] = 1;
  for (int f = 0; f < g.nfaces; ++f)
    if (!used[f]) return "face without boundary";
  int odd = 0, sum = 0;
  for (int f = 0; f < g.nfaces; ++f) {
    sum += len[f];
    odd += len[f] & 1;
  }
  if (sum != 2 * m) return "face lengths do not sum to 2|E|";
  if (odd % 2) return "odd number of odd faces";
  return {};
}

void require_plane(const PlaneGraph& g, const char* where) {
  auto s = check_plane(g);
  if (!s.empty()) throw GraphError(std::string(where) + ": " + s);
}

FaceWalk boundary_walk(const PlaneGraph& g, int f) {
  if (f < 0 || f >= g.nfaces) throw GraphError("unknown face " + std::to_string(f));
  FaceWalk w;
  w.face = f;
  for (std::size_t c = 0; c < g.cycles.size(); ++c) {
    if (g.cycle_face[c] != f) continue;
    std::vector<int> vs;
    for (int h : g.cycles[c]) vs.push_back(g.org[h]);
    w.walks.push_back(std::move(vs));
    w.half_edges.push_back(g.cycles[c]);
    w.length += static_cast<int>(g.cycles[c].size());
  }
  for (int v = 0; v < g.n(); ++v)
    if (g.iso_face[v] == f) {
      w.walks.push_back({v});
      w.half_edges.emplace_back();
    }
  return w;
}

int longest_face(const PlaneGraph& g) {
  std::vector<int> len(g.nfaces, 0);
  for (std::size_t c = 0; c < g.cycles.size(); ++c) len[g.cycle_face[c]] += static_cast<int>(g.cycles[c].size());
  int best = 0;
  for (int f = 1; f < g.nfaces; ++f)
    if (len[f] > len[best]) best = f;
  return best;
}

PlaneGraph with_outer_face(const PlaneGraph& g, int f) {
  if (f < 0 || f >= g.nfaces) throw GraphError("unknown face " + std::to_string(f));
  PlaneGraph r = g;
  if (is_connected(g)) {
    r.outer = f;
    return r;
  }
  int he = -1;
  for (std::size_t c = 0; c < g.cycles.size() && he < 0; ++c)
    if (g.cycle_face[c] == f) he = g.cycles[c][0];
  assign_faces(r, he);
  require_plane(r, "with_outer_face");
  return r;
}

}  // namespace pk
