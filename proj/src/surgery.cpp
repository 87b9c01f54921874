#include <algorithm>
#include <map>
#include <numeric>

#include "planekern/graph_util.hpp"
#include "planekern/plane_graph.hpp"

namespace pk {

namespace {

// Mutable copy of a rotation system. Deleted edges unite the faces on their
// two sides; contracted edges merge vertex rotations.
struct Work {
  const PlaneGraph& g;
  std::vector<int> nxt, prv;
  std::vector<char> ealive, valive;
  Dsu faces;
  Dsu verts;

  explicit Work(const PlaneGraph& src)
      : g(src), nxt(src.nxt), prv(src.prv), ealive(src.m(), 1), valive(src.n(), 1),
        faces(src.nfaces), verts(src.n()) {}

  void splice(int h) {
    if (nxt[h] == h) return;
    nxt[prv[h]] = nxt[h];
    prv[nxt[h]] = prv[h];
  }

  void delete_edge(int e) {
    if (!ealive[e]) return;
    faces.unite(g.hface[2 * e], g.hface[2 * e + 1]);
    splice(2 * e);
    splice(2 * e + 1);
    ealive[e] = 0;
  }

  void contract(int e) {
    if (!ealive[e]) return;
    int a = verts.find(g.eu(e)), b = verts.find(g.ev(e));
    if (a == b) {
      delete_edge(e);
      return;
    }
    int h = 2 * e, t = 2 * e + 1;
    bool hs = nxt[h] == h, ts = nxt[t] == t;
    if (!hs && !ts) {
      int pa = prv[h], nb = nxt[h], pc = prv[t], nd = nxt[t];
      nxt[pa] = nd;
      prv[nd] = pa;
      nxt[pc] = nb;
      prv[nb] = pc;
    } else if (hs && !ts) {
      splice(t);
    } else if (!hs && ts) {
      splice(h);
    }
    ealive[e] = 0;
    verts.unite(a, b);
  }

  // Some old face touching v, for vertices that end up isolated.
  int some_face(int v) const { return g.vhe[v] >= 0 ? g.hface[g.vhe[v]] : g.iso_face[v]; }

  // Compact into a fresh PlaneGraph. Surviving vertices are the alive
  // representatives of `verts`.
  std::vector<int> fmap;

  PlaneGraph finish(std::vector<int>& vmap, std::vector<int>& emap, std::vector<int>& newv) {
    int n = g.n(), m = g.m();
    newv.assign(n, -1);
    vmap.clear();
    for (int v = 0; v < n; ++v)
      if (valive[v] && verts.find(v) == v) {
        newv[v] = static_cast<int>(vmap.size());
        vmap.push_back(v);
      }
    for (int v = 0; v < n; ++v)
      if (valive[v]) newv[v] = newv[verts.find(v)];
    std::vector<int> newe(m, -1);
    emap.clear();
    for (int e = 0; e < m; ++e)
      if (ealive[e]) {
        newe[e] = static_cast<int>(emap.size());
        emap.push_back(e);
      }
    PlaneGraph r;
    int nn = static_cast<int>(vmap.size()), mm = static_cast<int>(emap.size());
    r.vid.resize(nn);
    for (int i = 0; i < nn; ++i) r.vid[i] = g.vid[vmap[i]];
    r.eid.resize(mm);
    r.org.resize(2 * mm);
    r.nxt.resize(2 * mm);
    r.prv.resize(2 * mm);
    r.vhe.assign(nn, -1);
    std::vector<int> old_he(2 * mm);
    auto nh = [&](int h) { return 2 * newe[h / 2] + (h & 1); };
    for (int i = 0; i < mm; ++i) {
      int e = emap[i];
      r.eid[i] = g.eid[e];
      for (int s = 0; s < 2; ++s) {
        int h = 2 * e + s, x = 2 * i + s;
        r.org[x] = newv[g.org[h]];
        r.nxt[x] = nh(nxt[h]);
        r.prv[x] = nh(prv[h]);
        old_he[x] = h;
        if (r.vhe[r.org[x]] < 0) r.vhe[r.org[x]] = x;
      }
    }
    std::vector<int> root(g.nfaces);
    for (int f = 0; f < g.nfaces; ++f) root[f] = faces.find(f);
    std::vector<int> old_iso(nn, -1);
    for (int v = 0; v < n; ++v)
      if (valive[v] && old_iso[newv[v]] < 0) old_iso[newv[v]] = some_face(v);
    fmap = inherit_faces(r, g, old_he, root, old_iso);
    require_plane(r, "surgery");
    return r;
  }
};

}  // namespace

Surgery remove_vertices(const PlaneGraph& g, const std::vector<int>& removed) {
  Work w(g);
  for (int v : removed) {
    if (v < 0 || v >= g.n()) throw GraphError("remove_vertices: vertex out of range");
    for (int h : g.rotation(v)) w.delete_edge(h / 2);
    w.valive[v] = 0;
  }
  Surgery s;
  std::vector<int> newv;
  s.graph = w.finish(s.vmap, s.emap, newv);
  s.fmap = w.fmap;
  return s;
}

Surgery remove_edges(const PlaneGraph& g, const std::vector<int>& removed) {
  Work w(g);
  for (int e : removed) {
    if (e < 0 || e >= g.m()) throw GraphError("remove_edges: edge out of range");
    w.delete_edge(e);
  }
  Surgery s;
  std::vector<int> newv;
  s.graph = w.finish(s.vmap, s.emap, newv);
  s.fmap = w.fmap;
  return s;
}

namespace {

void drop_loops_and_parallels(Work& w) {
  const PlaneGraph& g = w.g;
  std::map<std::pair<int, int>, int> seen;
  for (int e = 0; e < g.m(); ++e) {
    if (!w.ealive[e]) continue;
    int a = w.verts.find(g.eu(e)), b = w.verts.find(g.ev(e));
    if (a == b) {
      w.delete_edge(e);
      continue;
    }
    auto key = std::minmax(a, b);
    if (seen.count(key))
      w.delete_edge(e);
    else
      seen[key] = e;
  }
}

}  // namespace

Contraction contract_edges(const PlaneGraph& g, const std::vector<int>& edges) {
  Work w(g);
  for (int e : edges) {
    if (e < 0 || e >= g.m()) throw GraphError("contract_edges: edge out of range");
    w.contract(e);
  }
  drop_loops_and_parallels(w);
  Contraction c;
  std::vector<int> vmap;
  c.graph = w.finish(vmap, c.emap, c.group);
  c.fmap = w.fmap;
  c.members.assign(c.graph.n(), {});
  for (int v = 0; v < g.n(); ++v) c.members[c.group[v]].push_back(v);
  return c;
}

Surgery keep_edges(const PlaneGraph& g, const std::vector<char>& keep) {
  std::vector<int> removed;
  for (int e = 0; e < g.m(); ++e)
    if (!keep[e]) removed.push_back(e);
  Surgery s1 = remove_edges(g, removed);
  std::vector<int> iso;
  for (int v = 0; v < s1.graph.n(); ++v)
    if (s1.graph.vhe[v] < 0) iso.push_back(v);
  Surgery s2 = remove_vertices(s1.graph, iso);
  Surgery out;
  out.graph = std::move(s2.graph);
  for (int v : s2.vmap) out.vmap.push_back(s1.vmap[v]);
  for (int e : s2.emap) out.emap.push_back(s1.emap[e]);
  for (int f : s1.fmap) out.fmap.push_back(s2.fmap[f]);
  return out;
}

Surgery simplify(const PlaneGraph& g) {
  Work w(g);
  drop_loops_and_parallels(w);
  Surgery s;
  std::vector<int> newv;
  s.graph = w.finish(s.vmap, s.emap, newv);
  s.fmap = w.fmap;
  return s;
}

PlaneGraph subdivide_edge(const PlaneGraph& g, int e, Id new_vid, Id new_eid) {
  if (e < 0 || e >= g.m()) throw GraphError("subdivide_edge: edge out of range");
  PlaneGraph r = g;
  int n = g.n(), m = g.m();
  int w = n, f = m;
  r.vid.push_back(new_vid >= 0 ? new_vid : g.max_vid() + 1);
  r.eid.push_back(new_eid >= 0 ? new_eid : g.max_eid() + 1);
  int t = 2 * e + 1, a = 2 * f, b = 2 * f + 1;
  int v = g.org[t];
  r.org.resize(2 * m + 2);
  r.nxt.resize(2 * m + 2);
  r.prv.resize(2 * m + 2);
  r.org[a] = w;
  r.org[b] = v;
  // b takes t's place in the rotation at v.
  if (g.nxt[t] == t) {
    r.nxt[b] = r.prv[b] = b;
  } else {
    int p = g.prv[t], q = g.nxt[t];
    r.nxt[b] = q;
    r.prv[b] = p;
    r.nxt[p] = b;
    r.prv[q] = b;
  }
  if (r.vhe[v] == t) r.vhe[v] = b;
  r.org[t] = w;
  r.nxt[t] = a;
  r.prv[t] = a;
  r.nxt[a] = t;
  r.prv[a] = t;
  r.vhe.push_back(t);
  std::vector<int> old_he(2 * m + 2);
  for (int h = 0; h < 2 * m; ++h) old_he[h] = h;
  old_he[a] = 2 * e;
  old_he[b] = t;
  std::vector<int> root(g.nfaces);
  for (int i = 0; i < g.nfaces; ++i) root[i] = i;
  std::vector<int> old_iso(n + 1, -1);
  for (int x = 0; x < n; ++x) old_iso[x] = g.iso_face[x];
  inherit_faces(r, g, old_he, root, old_iso);
  require_plane(r, "subdivide_edge");
  return r;
}

Subdivision subdivide_edges(const PlaneGraph& g, const std::vector<std::pair<int, int>>& counts) {
  int n = g.n(), m = g.m();
  std::vector<Id> vids = g.vid;
  std::vector<EdgeInput> edges;
  for (int e = 0; e < m; ++e) edges.push_back({g.eu(e), g.ev(e), g.eid[e]});
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v) rot[v] = g.rotation(v);
  Subdivision out;
  out.origin.resize(m);
  std::iota(out.origin.begin(), out.origin.end(), 0);
  Id nv = g.max_vid() + 1, ne = g.max_eid() + 1;
  std::vector<char> done(m, 0);
  for (auto [e, c] : counts) {
    if (e < 0 || e >= m) throw GraphError("subdivide_edges: edge out of range");
    if (done[e]) throw GraphError("subdivide_edges: edge listed twice");
    done[e] = 1;
    if (c <= 0) continue;
    int v = g.ev(e), prev = -1;
    for (int i = 0; i < c; ++i) {
      int x = static_cast<int>(vids.size());
      vids.push_back(nv++);
      rot.emplace_back();
      if (i == 0) {
        edges[e].v = x;
        rot[x].push_back(2 * e + 1);
      } else {
        int f = static_cast<int>(edges.size());
        edges.push_back({prev, x, ne++});
        out.origin.push_back(e);
        rot[prev].push_back(2 * f);
        rot[x].push_back(2 * f + 1);
      }
      prev = x;
    }
    int f = static_cast<int>(edges.size());
    edges.push_back({prev, v, ne++});
    out.origin.push_back(e);
    rot[prev].push_back(2 * f);
    for (int& h : rot[v])
      if (h == 2 * e + 1) h = 2 * f + 1;
  }
  std::vector<int> outer = outer_half_edges(g);
  for (int& h : outer)
    if ((h & 1) && done[h / 2]) {
      // v -> u now starts on the last piece
      int e = h / 2;
      for (int f = m; f < static_cast<int>(edges.size()); ++f)
        if (out.origin[f] == e && edges[f].v == g.ev(e)) h = 2 * f + 1;
    }
  out.graph = build_plane(vids, edges, rot, outer);
  return out;
}

CutOpen cut_open(const PlaneGraph& g, const std::vector<int>& tree_edges) {
  int n = g.n(), m = g.m();
  if (!is_connected(g)) throw GraphError("cut_open: graph is not connected");
  std::vector<char> inS(m, 0);
  std::vector<int> sdeg(n, 0);
  Dsu d(n);
  for (int e : tree_edges) {
    if (e < 0 || e >= m) throw GraphError("cut_open: edge out of range");
    if (inS[e]) throw GraphError("cut_open: repeated edge");
    if (!d.unite(g.eu(e), g.ev(e))) throw GraphError("cut_open: edge set contains a cycle");
    inS[e] = 1;
    ++sdeg[g.eu(e)];
    ++sdeg[g.ev(e)];
  }
  CutOpen out;
  if (tree_edges.empty()) {
    out.opened = g;
    for (int v = 0; v < n; ++v) out.vmap.push_back(v);
    for (int e = 0; e < m; ++e) out.emap.push_back(e);
    return out;
  }
  int root = -1;
  for (int v = 0; v < n; ++v)
    if (sdeg[v] > 0) {
      if (root < 0) root = d.find(v);
      if (d.find(v) != root) throw GraphError("cut_open: edge set is not connected");
    }

  // Sector of each half-edge at its origin; S-half-edges start their sector.
  std::vector<int> sec(2 * m, 0);
  std::vector<std::vector<int>> sfirst(n);  // S-half-edges a_0..a_{d-1}
  for (int v = 0; v < n; ++v) {
    if (sdeg[v] == 0) continue;
    auto rot = g.rotation(v);
    int start = 0;
    while (!inS[rot[start] / 2]) ++start;
    int j = -1;
    for (std::size_t i = 0; i < rot.size(); ++i) {
      int h = rot[(start + i) % rot.size()];
      if (inS[h / 2]) {
        ++j;
        sfirst[v].push_back(h);
      }
      sec[h] = j;
    }
  }
  std::vector<int> base(n);
  Id fresh_v = g.max_vid() + 1, fresh_e = g.max_eid() + 1;
  std::vector<Id> vids;
  for (int v = 0; v < n; ++v) {
    base[v] = static_cast<int>(out.vmap.size());
    int c = std::max(1, sdeg[v]);
    for (int j = 0; j < c; ++j) {
      out.vmap.push_back(v);
      vids.push_back(j == 0 ? g.vid[v] : fresh_v++);
    }
  }
  auto vc = [&](int v, int j) { return base[v] + j; };
  auto sec_end = [&](int h) {
    int v = g.org[h];
    return (sec[h] - 1 + sdeg[v]) % sdeg[v];
  };
  // Non-S edge e keeps one copy; S-edge e gets copies on the left of 2e and of 2e+1.
  std::vector<int> copy_of(2 * m, -1);
  std::vector<EdgeInput> edges;
  for (int e = 0; e < m; ++e) {
    int h = 2 * e, t = 2 * e + 1;
    if (!inS[e]) {
      copy_of[h] = copy_of[t] = static_cast<int>(edges.size());
      edges.push_back({vc(g.org[h], sec[h]), vc(g.org[t], sec[t]), g.eid[e]});
      out.emap.push_back(e);
    } else {
      copy_of[h] = static_cast<int>(edges.size());
      edges.push_back({vc(g.org[h], sec[h]), vc(g.org[t], sec_end(t)), g.eid[e]});
      out.emap.push_back(e);
      copy_of[t] = static_cast<int>(edges.size());
      edges.push_back({vc(g.org[t], sec[t]), vc(g.org[h], sec_end(h)), fresh_e++});
      out.emap.push_back(e);
    }
  }
  std::vector<std::vector<int>> rot(out.vmap.size());
  int outer_he = -1;
  for (int v = 0; v < n; ++v) {
    auto r = g.rotation(v);
    if (sdeg[v] == 0) {
      for (int h : r) rot[vc(v, 0)].push_back(2 * copy_of[h] + (h & 1));
      continue;
    }
    int dv = sdeg[v];
    for (int j = 0; j < dv; ++j) {
      int aj = sfirst[v][j];
      int an = sfirst[v][(j + 1) % dv];
      auto& lst = rot[vc(v, j)];
      lst.push_back(2 * copy_of[aj]);
      // walk strictly between a_j and a_{j+1}
      for (int h = g.nxt[aj]; h != an; h = g.nxt[h]) lst.push_back(2 * copy_of[h] + (h & 1));
      lst.push_back(2 * copy_of[an ^ 1] + 1);
      if (outer_he < 0) outer_he = lst.back();
    }
  }
  out.opened = build_plane(vids, edges, rot, outer_he);
  const auto& og = out.opened;
  for (std::size_t c = 0; c < og.cycles.size(); ++c)
    if (og.cycle_face[c] == og.outer)
      for (int h : og.cycles[c]) out.boundary.push_back(og.org[h]);
  auto sorted = out.boundary;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      out.boundary.size() != 2 * tree_edges.size())
    throw GraphError("cut_open: outer face is not a simple cycle of the expected length");
  return out;
}

}  // namespace pk
