#include "planekern/mwc_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

#include "planekern/generate.hpp"

namespace pk {

namespace {

std::vector<char> mask_of(int n, const std::vector<int>& vs) {
  std::vector<char> m(n, 0);
  for (int v : vs) m[v] = 1;
  return m;
}

// True when every component of G - dead holds at most one terminal.
bool separates(const Adj& adj, const std::vector<char>& isT, const std::vector<char>& dead) {
  std::vector<char> alive(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) alive[v] = !dead[v];
  int c = 0;
  auto lab = label_components(adj, alive, &c);
  std::vector<char> has(c, 0);
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (isT[v]) {
      if (has[lab[v]]) return false;
      has[lab[v]] = 1;
    }
  return true;
}

MwcInstance remap(const MwcInstance& inst, PlaneGraph g, const std::vector<int>& vmap, int k) {
  MwcInstance out;
  auto isT = mask_of(inst.g.n(), inst.terminals);
  out.g = std::move(g);
  out.k = k;
  if (!inst.forbidden.empty()) out.forbidden.assign(out.g.n(), 0);
  for (int i = 0; i < out.g.n(); ++i) {
    if (isT[vmap[i]]) out.terminals.push_back(i);
    if (inst.is_forbidden(vmap[i])) out.forbidden[i] = 1;
  }
  return out;
}

// ---------------------------------------------------------------- max-flow

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long,
                    boost::property<boost::edge_residual_capacity_t, long,
                                    boost::property<boost::edge_reverse_t, FlowTraits::edge_descriptor>>>>;

// ---------------------------------------------------------------- LP

constexpr double kEps = 1e-9;

// max sum y s.t. sum_{P containing r} y_P <= 1 for every row r. Dense
// tableau, Bland's rule, slack start. dual receives the optimal x.
double solve_packing(const std::vector<std::vector<int>>& cols, int rows, std::vector<double>& dual) {
  int P = static_cast<int>(cols.size());
  int N = P + rows;
  std::vector<std::vector<double>> a(rows, std::vector<double>(N, 0.0));
  std::vector<double> b(rows, 1.0), red(N, 0.0);
  std::vector<int> basis(rows);
  for (int j = 0; j < P; ++j) {
    for (int r : cols[j]) a[r][j] = 1.0;
    red[j] = 1.0;
  }
  for (int i = 0; i < rows; ++i) {
    a[i][P + i] = 1.0;
    basis[i] = P + i;
  }
  double z = 0;
  for (;;) {
    int e = -1;
    for (int j = 0; j < N && e < 0; ++j)
      if (red[j] > kEps) e = j;
    if (e < 0) break;
    int l = -1;
    double best = 0;
    for (int i = 0; i < rows; ++i) {
      if (a[i][e] <= kEps) continue;
      double ratio = b[i] / a[i][e];
      if (l < 0 || ratio < best - kEps || (ratio <= best + kEps && basis[i] < basis[l])) {
        l = i;
        best = ratio;
      }
    }
    if (l < 0) throw GraphError("mwc_lp: unbounded packing");
    double piv = a[l][e];
    for (double& v : a[l]) v /= piv;
    b[l] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == l || a[i][e] == 0.0) continue;
      double f = a[i][e];
      for (int j = 0; j < N; ++j) a[i][j] -= f * a[l][j];
      b[i] -= f * b[l];
    }
    double f = red[e];
    for (int j = 0; j < N; ++j) red[j] -= f * a[l][j];
    z += f * b[l];
    basis[l] = e;
  }
  dual.assign(rows, 0.0);
  for (int i = 0; i < rows; ++i) dual[i] = std::max(0.0, -red[P + i]);
  return z;
}

int half_units(double v) { return static_cast<int>(std::lround(2 * v)); }

// ---------------------------------------------------------------- helpers

std::vector<int> outer_vertices(const PlaneGraph& g) {
  std::vector<char> on(g.n(), 0);
  for (int h = 0; h < 2 * g.m(); ++h)
    if (g.hface[h] == g.outer) on[g.org[h]] = 1;
  for (int v = 0; v < g.n(); ++v)
    if (g.vhe[v] < 0 && g.iso_face[v] == g.outer) on[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v)
    if (on[v]) out.push_back(v);
  return out;
}

// Same rotation system with every component drawn in the outer face.
PlaneGraph side_by_side(const PlaneGraph& g) {
  int c = 0;
  auto comp = components(g, &c);
  if (c <= 1) return g;
  std::vector<int> outer_hes;
  for (int ci = 0; ci < c; ++ci) {
    std::vector<int> others;
    for (int v = 0; v < g.n(); ++v)
      if (comp[v] != ci) others.push_back(v);
    Surgery s = remove_vertices(g, others);
    const PlaneGraph& sg = s.graph;
    for (int h = 0; h < 2 * sg.m(); ++h)
      if (sg.hface[h] == sg.outer) {
        int hh = 2 * s.emap[h / 2];
        if (g.org[hh] != s.vmap[sg.org[h]]) hh ^= 1;
        outer_hes.push_back(hh);
        break;
      }
  }
  std::vector<EdgeInput> es;
  for (int e = 0; e < g.m(); ++e) es.push_back({g.eu(e), g.ev(e), g.eid[e]});
  std::vector<std::vector<int>> rot(g.n());
  for (int v = 0; v < g.n(); ++v) rot[v] = g.rotation(v);
  return build_plane(g.vid, es, rot, outer_hes);
}

struct LpState {
  PlaneGraph g;
  std::vector<char> term;
  std::vector<int> orig;
  int k = 0;

  void remove(const std::vector<int>& dead) {
    Surgery s = remove_vertices(g, dead);
    std::vector<char> nt;
    std::vector<int> no;
    for (int v : s.vmap) {
      nt.push_back(term[v]);
      no.push_back(orig[v]);
    }
    g = std::move(s.graph);
    term = std::move(nt);
    orig = std::move(no);
  }

  // Merge the connected set `region` (adjacent to t) into terminal t.
  void merge_into(int t, const std::vector<int>& region) {
    auto in = mask_of(g.n(), region);
    in[t] = 1;
    std::vector<char> seen(g.n(), 0);
    std::vector<int> tree, q{t};
    seen[t] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int h : g.rotation(q[i])) {
        int w = g.head(h);
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          tree.push_back(h / 2);
          q.push_back(w);
        }
      }
    Contraction c = contract_edges(g, tree);
    std::vector<char> nt(c.graph.n(), 0);
    std::vector<int> no(c.graph.n(), -1);
    for (int x = 0; x < c.graph.n(); ++x) {
      no[x] = orig[c.members[x][0]];
      for (int v : c.members[x])
        if (term[v]) {
          nt[x] = 1;
          no[x] = orig[v];
        }
    }
    g = std::move(c.graph);
    term = std::move(nt);
    orig = std::move(no);
  }

  std::vector<int> terminals() const {
    std::vector<int> t;
    for (int v = 0; v < g.n(); ++v)
      if (term[v]) t.push_back(v);
    return t;
  }
};

// Nodes on the tree path from x up to the root, x included.
int r_nodes_on_root_path(const LayerTree& lt, const std::vector<char>& in_r, int x) {
  int c = 0;
  for (; x >= 0; x = lt.parent[x]) c += in_r[x];
  return c;
}

}  // namespace

// ---------------------------------------------------------------- basics

void check_mwc_instance(const MwcInstance& inst) {
  int n = inst.g.n();
  if (!std::is_sorted(inst.terminals.begin(), inst.terminals.end()) ||
      std::adjacent_find(inst.terminals.begin(), inst.terminals.end()) != inst.terminals.end())
    throw GraphError("mwc instance: terminals must be sorted and distinct");
  for (int t : inst.terminals)
    if (t < 0 || t >= n) throw GraphError("mwc instance: terminal out of range");
  if (!inst.forbidden.empty()) {
    if (static_cast<int>(inst.forbidden.size()) != n)
      throw GraphError("mwc instance: forbidden mask has the wrong size");
    for (int t : inst.terminals)
      if (inst.forbidden[t]) throw GraphError("mwc instance: terminal marked forbidden");
  }
}

bool is_mwc_solution(const MwcInstance& inst, const std::vector<int>& X) {
  int n = inst.g.n();
  if (static_cast<int>(X.size()) > inst.k) return false;
  auto isT = mask_of(n, inst.terminals);
  std::vector<char> dead(n, 0);
  for (int v : X) {
    if (v < 0 || v >= n || dead[v] || isT[v] || inst.is_forbidden(v)) return false;
    dead[v] = 1;
  }
  return separates(inst.g.adjacency(), isT, dead);
}

std::optional<std::vector<int>> solve_mwc_bruteforce(const MwcInstance& inst) {
  int n = inst.g.n();
  auto isT = mask_of(n, inst.terminals);
  std::vector<int> allowed;
  for (int v = 0; v < n; ++v)
    if (!isT[v] && !inst.is_forbidden(v)) allowed.push_back(v);
  Adj adj = inst.g.adjacency();
  int na = static_cast<int>(allowed.size());
  for (int s = 0; s <= std::min(inst.k, na); ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      std::vector<char> dead(n, 0);
      for (int i : idx) dead[allowed[i]] = 1;
      if (separates(adj, isT, dead)) {
        std::vector<int> X;
        for (int i : idx) X.push_back(allowed[i]);
        return X;
      }
      int i = s - 1;
      while (i >= 0 && idx[i] == na - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

namespace {

// Interior of a short surviving path joining two terminals, by one BFS
// from all terminals at once. Sets `found` when one exists.
std::vector<int> terminal_path(const Adj& adj, const std::vector<char>& isT, const std::vector<char>& dead,
                               bool& found) {
  int n = static_cast<int>(adj.size());
  std::vector<int> src(n, -1), par(n, -1), q;
  for (int v = 0; v < n; ++v)
    if (isT[v]) {
      src[v] = v;
      q.push_back(v);
    }
  found = false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    int u = q[i];
    for (int w : adj[u]) {
      if (dead[w]) continue;
      if (src[w] < 0) {
        src[w] = src[u];
        par[w] = u;
        q.push_back(w);
      } else if (src[w] != src[u]) {
        found = true;
        std::vector<int> path;
        for (int z = u; !isT[z]; z = par[z]) path.push_back(z);
        for (int z = w; !isT[z]; z = par[z]) path.push_back(z);
        return path;
      }
    }
  }
  return {};
}

bool branch(const Adj& adj, const std::vector<char>& isT, const MwcInstance& inst, std::vector<char>& dead,
            std::vector<int>& X, int budget) {
  bool found = false;
  auto path = terminal_path(adj, isT, dead, found);
  if (!found) return true;
  if (budget == 0) return false;
  for (int v : path) {
    if (inst.is_forbidden(v)) continue;
    dead[v] = 1;
    X.push_back(v);
    if (branch(adj, isT, inst, dead, X, budget - 1)) return true;
    X.pop_back();
    dead[v] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> solve_mwc_branching(const MwcInstance& inst) {
  int n = inst.g.n();
  auto isT = mask_of(n, inst.terminals);
  Adj adj = inst.g.adjacency();
  for (int b = 0; b <= inst.k; ++b) {
    std::vector<char> dead(n, 0);
    std::vector<int> X;
    if (branch(adj, isT, inst, dead, X, b)) {
      std::sort(X.begin(), X.end());
      return X;
    }
  }
  return std::nullopt;
}

MwcInstance mwc_canonical_no() {
  MwcInstance inst;
  inst.g = *embed(2, {{0, 1}});
  inst.terminals = {0, 1};
  return inst;
}

MwcInstance mwc_canonical_yes() {
  MwcInstance inst;
  inst.g = *embed(0, {});
  return inst;
}

// ---------------------------------------------------------------- cuts

VertexCut min_vertex_cut(const Adj& adj, const std::vector<int>& X, const std::vector<int>& Y, int cap,
                         CutSide side, const std::vector<char>& uncuttable) {
  int n = static_cast<int>(adj.size());
  auto inX = mask_of(n, X), inY = mask_of(n, Y);
  for (int y : Y)
    if (inX[y]) throw GraphError("min_vertex_cut: X and Y overlap");
  FlowGraph G(2 * n + 2);
  auto capm = boost::get(boost::edge_capacity, G);
  auto res = boost::get(boost::edge_residual_capacity, G);
  auto rev = boost::get(boost::edge_reverse, G);
  auto arc = [&](int a, int b, long c) {
    auto e1 = boost::add_edge(a, b, G).first;
    auto e2 = boost::add_edge(b, a, G).first;
    capm[e1] = c;
    capm[e2] = 0;
    rev[e1] = e2;
    rev[e2] = e1;
  };
  const long INF = 2L * n + 2;
  int s = 2 * n, t = 2 * n + 1;
  for (int v = 0; v < n; ++v) {
    bool hard = inX[v] || inY[v] || (!uncuttable.empty() && uncuttable[v]);
    arc(2 * v, 2 * v + 1, hard ? INF : 1);
  }
  for (int v = 0; v < n; ++v)
    for (int w : adj[v])
      if (w != v) arc(2 * v + 1, 2 * w, INF);
  for (int x : X) arc(s, 2 * x, INF);
  for (int y : Y) arc(2 * y + 1, t, INF);
  long flow = boost::edmonds_karp_max_flow(G, s, t);
  VertexCut out;
  if (flow >= INF) {
    out.status = CutStatus::impossible;
    return out;
  }
  if (cap >= 0 && flow > cap) {
    out.status = CutStatus::too_big;
    return out;
  }
  std::vector<char> mark(2 * n + 2, 0);
  std::vector<int> q;
  if (side == CutSide::near_x) {
    q.push_back(s);
    mark[s] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (auto [it, end] = boost::out_edges(q[i], G); it != end; ++it) {
        int b = static_cast<int>(boost::target(*it, G));
        if (!mark[b] && res[*it] > 0) {
          mark[b] = 1;
          q.push_back(b);
        }
      }
    for (int v = 0; v < n; ++v)
      if (mark[2 * v] && !mark[2 * v + 1]) out.cut.push_back(v);
  } else {
    q.push_back(t);
    mark[t] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (auto [it, end] = boost::out_edges(q[i], G); it != end; ++it) {
        int a = static_cast<int>(boost::target(*it, G));
        if (!mark[a] && res[rev[*it]] > 0) {
          mark[a] = 1;
          q.push_back(a);
        }
      }
    for (int v = 0; v < n; ++v)
      if (mark[2 * v + 1] && !mark[2 * v]) out.cut.push_back(v);
  }
  if (static_cast<long>(out.cut.size()) != flow) throw GraphError("min_vertex_cut: cut size differs from flow");
  return out;
}

VertexCut min_vertex_cut(const PlaneGraph& g, const std::vector<int>& X, const std::vector<int>& Y,
                         int cap, CutSide side) {
  return min_vertex_cut(g.adjacency(), X, Y, cap, side);
}

// ---------------------------------------------------------------- LP

LpSolution mwc_lp(const Adj& adj, const std::vector<int>& label, const std::vector<char>& alive) {
  int n = static_cast<int>(adj.size());
  auto live = [&](int v) { return alive.empty() || alive[v]; };
  LpSolution out;
  out.x.assign(n, 0.0);
  std::vector<int> row(n, -1), classes;
  int rows = 0;
  for (int v = 0; v < n; ++v) {
    if (!live(v)) continue;
    if (label[v] < 0) {
      row[v] = rows++;
    } else {
      classes.push_back(label[v]);
      for (int w : adj[v])
        if (live(w) && label[w] >= 0 && label[w] != label[v]) {
          out.value = std::numeric_limits<double>::infinity();
          return out;
        }
    }
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::vector<std::vector<int>> cols;
  std::set<std::vector<int>> seen;
  std::vector<double> dual;
  const double INF = std::numeric_limits<double>::infinity();
  for (;;) {
    int added = 0;
    for (int c : classes) {
      std::vector<double> dist(n, INF);
      std::vector<int> par(n, -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (int s = 0; s < n; ++s) {
        if (!live(s) || label[s] != c) continue;
        for (int w : adj[s])
          if (live(w) && label[w] < 0 && out.x[w] < dist[w]) {
            dist[w] = out.x[w];
            pq.push({dist[w], w});
          }
      }
      while (!pq.empty()) {
        auto [d, w] = pq.top();
        pq.pop();
        if (d > dist[w]) continue;
        for (int y : adj[w])
          if (live(y) && label[y] < 0 && d + out.x[y] < dist[y] - 1e-12) {
            dist[y] = d + out.x[y];
            par[y] = w;
            pq.push({dist[y], y});
          }
      }
      // Cheapest path into each other class.
      std::vector<std::pair<double, int>> best(classes.size(), {INF, -1});
      for (int w = 0; w < n; ++w) {
        if (dist[w] == INF) continue;
        for (int y : adj[w]) {
          if (!live(y) || label[y] < 0 || label[y] == c) continue;
          int ci = static_cast<int>(std::lower_bound(classes.begin(), classes.end(), label[y]) - classes.begin());
          if (dist[w] < best[ci].first) best[ci] = {dist[w], w};
        }
      }
      for (auto [d, w] : best) {
        if (w < 0 || d >= 1 - 1e-7) continue;
        std::vector<int> p;
        for (int z = w; z >= 0; z = par[z]) p.push_back(row[z]);
        std::sort(p.begin(), p.end());
        if (seen.insert(p).second) {
          cols.push_back(p);
          ++added;
        }
      }
    }
    if (!added) break;
    out.value = solve_packing(cols, rows, dual);
    for (int v = 0; v < n; ++v)
      if (row[v] >= 0) out.x[v] = dual[row[v]];
  }
  out.paths = static_cast<int>(cols.size());
  return out;
}

// ---------------------------------------------------------------- preprocessing

LpPreprocess lp_preprocess(const MwcInstance& inst) {
  check_mwc_instance(inst);
  if (!inst.forbidden.empty() &&
      std::any_of(inst.forbidden.begin(), inst.forbidden.end(), [](char c) { return c != 0; }))
    throw GraphError("lp_preprocess: expects an instance without forbidden vertices");
  LpPreprocess out;
  LpState st;
  st.g = inst.g;
  st.term = mask_of(inst.g.n(), inst.terminals);
  st.orig.resize(inst.g.n());
  for (int v = 0; v < inst.g.n(); ++v) st.orig[v] = v;
  st.k = inst.k;
  auto fail = [&](std::string why) {
    out.answer_no = true;
    out.reason = std::move(why);
    return out;
  };

  for (;;) {
    if (st.k < 0) return fail("budget below zero");
    Adj adj = st.g.adjacency();
    int n = st.g.n();

    // Components with at most one terminal need no cut.
    int nc = 0;
    auto lab = label_components(adj, {}, &nc);
    std::vector<int> tcount(nc, 0);
    for (int v = 0; v < n; ++v) tcount[lab[v]] += st.term[v];
    std::vector<int> dead;
    for (int v = 0; v < n; ++v)
      if (tcount[lab[v]] <= 1) dead.push_back(v);
    if (!dead.empty()) {
      for (int c = 0; c < nc; ++c) out.stats.deleted_components += tcount[c] <= 1;
      st.remove(dead);
      continue;
    }
    auto T = st.terminals();
    for (int t : T)
      for (int w : adj[t])
        if (st.term[w]) return fail("adjacent terminals");
    if (T.empty()) break;

    // Closest minimum isolating cut; contract the region inside it.
    bool changed = false;
    for (int t : T) {
      std::vector<int> others;
      for (int u : T)
        if (u != t) others.push_back(u);
      VertexCut c = min_vertex_cut(adj, {t}, others, -1, CutSide::near_x);
      if (c.status != CutStatus::ok) return fail("terminal cannot be isolated");
      if (static_cast<int>(c.cut.size()) > st.k)
        return fail("isolating cut of vid " + std::to_string(st.g.vid[t]) + " exceeds k");
      std::vector<char> block = mask_of(n, c.cut);
      block[t] = 1;
      std::vector<int> region;
      std::vector<char> seen(n, 0);
      std::vector<int> q{t};
      seen[t] = 1;
      for (std::size_t i = 0; i < q.size(); ++i)
        for (int w : adj[q[i]])
          if (!seen[w] && !block[w]) {
            seen[w] = 1;
            region.push_back(w);
            q.push_back(w);
          }
      if (!region.empty()) {
        st.merge_into(t, region);
        ++out.stats.region_contractions;
        changed = true;
        break;
      }
    }
    if (changed) continue;

    std::vector<int> label(n, -1);
    for (std::size_t i = 0; i < T.size(); ++i) label[T[i]] = static_cast<int>(i);
    LpSolution lp = mwc_lp(adj, label);
    out.stats.final_lp = lp.value;
    if (lp.value > st.k + 1e-7) return fail("fractional bound exceeds k");
    int base = half_units(lp.value);

    // A neighbour that can join its terminal without raising the bound.
    for (int t : T) {
      for (int v : adj[t]) {
        auto l2 = label;
        l2[v] = label[t];
        if (half_units(mwc_lp(adj, l2).value) == base) {
          st.merge_into(t, {v});
          ++out.stats.lp_contractions;
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
    if (changed) continue;

    // A vertex whose removal lowers the bound by a full unit.
    std::vector<char> alive(n, 1);
    for (int v = 0; v < n && !changed; ++v) {
      if (st.term[v]) continue;
      alive[v] = 0;
      if (half_units(mwc_lp(adj, label, alive).value) == base - 2) {
        st.remove({v});
        --st.k;
        ++out.stats.lp_deletions;
        changed = true;
      }
      alive[v] = 1;
    }
    if (changed) continue;
    break;
  }

  auto T = st.terminals();
  out.terminals_ok = static_cast<int>(T.size()) <= 2 * st.k;
  for (int t : T) out.degrees_ok = out.degrees_ok && st.g.degree(t) <= st.k;
  if (!out.terminals_ok) return fail("more than 2k terminals after reduction");
  if (!out.degrees_ok) return fail("terminal degree exceeds k after reduction");
  out.inst.g = side_by_side(st.g);
  out.inst.terminals = T;
  out.inst.k = st.k;
  out.vmap = st.orig;
  return out;
}

// ---------------------------------------------------------------- layer tree analysis

std::vector<int> important_nodes(const LayerTree& lt, const std::vector<int>& terminals) {
  int N = lt.size();
  if (N == 0) return {};
  std::vector<char> tnode(N, 0), sub(N, 0);
  for (int t : terminals) tnode[lt.node_of[t]] = 1;
  std::vector<int> order{lt.root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : lt.children[order[i]]) order.push_back(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    sub[x] = tnode[x];
    for (int c : lt.children[x]) sub[x] = sub[x] || sub[c];
  }
  std::vector<int> out;
  for (int x = 0; x < N; ++x) {
    int branches = 0;
    for (int c : lt.children[x]) branches += sub[c];
    if (tnode[x] || x == lt.root || branches >= 2) out.push_back(x);
  }
  return out;
}

RelevantNodeSet relevant_nodes(const LayerTree& lt, const std::vector<int>& terminals, int k,
                               const PlaneGraph& g) {
  int N = lt.size();
  RelevantNodeSet rs;
  rs.in_r.assign(N, 0);
  rs.edge_bound = 2 * (k + 1) + k * (k + 1) * (k + 1);
  rs.important = important_nodes(lt, terminals);
  std::vector<char> imp(N, 0), on_path(N, 0);
  for (int x : rs.important) imp[x] = rs.in_r[x] = 1;

  // Internal nodes of each tree path between an important node and its
  // nearest important ancestor, listed upwards.
  std::vector<std::vector<int>> paths;
  for (int u : rs.important) {
    if (u == lt.root) continue;
    std::vector<int> w;
    for (int p = lt.parent[u]; p >= 0 && !imp[p]; p = lt.parent[p]) {
      w.push_back(p);
      on_path[p] = 1;
    }
    paths.push_back(std::move(w));
  }
  for (int x = 0; x < N; ++x)
    if (!imp[x] && !on_path[x]) rs.in_r[x] = 1;

  Adj adj = g.adjacency();
  for (const auto& w : paths) {
    int r = static_cast<int>(w.size());
    if (r <= 2 * (k + 1)) {
      for (int z : w) rs.in_r[z] = 1;
      continue;
    }
    for (int i = 0; i <= k; ++i) rs.in_r[w[i]] = rs.in_r[w[r - 1 - i]] = 1;
    for (int i = 0; i <= k; ++i)
      for (int j = r - 1 - k; j < r; ++j) {
        int x = w[i], y = w[j];
        VertexCut c = min_vertex_cut(adj, lt.kappa[x], lt.kappa[y], k, CutSide::near_x);
        auto& entry = rs.cuts[{x, y}];
        if (c.status != CutStatus::ok) continue;
        entry = c.cut;
        for (int v : c.cut) rs.in_r[lt.node_of[v]] = 1;
      }
  }
  for (const auto& w : paths) {
    int c = 0;
    for (int z : w) c += rs.in_r[z];
    rs.edge_counts.push_back(c);
  }
  for (int x = 0; x < N; ++x)
    if (rs.in_r[x]) rs.nodes.push_back(x);
  return rs;
}

// ---------------------------------------------------------------- tree H

MwcTree prepare_and_find_tree(const MwcInstance& inst) {
  MwcTree out;
  out.lp = lp_preprocess(inst);
  if (out.lp.answer_no) {
    out.answer_no = true;
    out.reason = out.lp.reason;
    return out;
  }
  const PlaneGraph& G = out.lp.inst.g;
  const auto& T = out.lp.inst.terminals;
  int k = out.lp.inst.k;
  if (T.empty()) {
    out.trivial_yes = true;
    out.reason = "no terminal pair left to separate";
    return out;
  }
  auto isT = mask_of(G.n(), T);

  int nc = 0;
  auto comp = components(G, &nc);
  std::vector<int> contract;
  for (int ci = 0; ci < nc; ++ci) {
    std::vector<int> others;
    for (int v = 0; v < G.n(); ++v)
      if (comp[v] != ci) others.push_back(v);
    Surgery s = remove_vertices(G, others);
    const PlaneGraph& sg = s.graph;
    std::vector<int> lterm;
    for (int v = 0; v < sg.n(); ++v)
      if (isT[s.vmap[v]]) lterm.push_back(v);
    LayerTree lt = layer_tree(sg);
    if (!check_layer_tree(sg, lt).empty()) ++out.layer_violations;
    RelevantNodeSet rs = relevant_nodes(lt, lterm, k, sg);
    out.important += static_cast<int>(rs.important.size());
    out.relevant += static_cast<int>(rs.nodes.size());
    for (int c : rs.edge_counts) out.edge_bound_violations += c > rs.edge_bound;

    std::vector<char> inK(sg.n(), 0);
    for (int v = 0; v < sg.n(); ++v) inK[v] = rs.in_r[lt.node_of[v]];
    std::vector<int> local;
    for (int e = 0; e < sg.m(); ++e)
      if (!inK[sg.eu(e)] && !inK[sg.ev(e)]) {
        local.push_back(e);
        contract.push_back(s.emap[e]);
      }

    // Radial distance from each terminal to the outer face of the
    // contracted component, against twice its R-nodes up to the root.
    Contraction cl = contract_edges(sg, local);
    auto outer = outer_vertices(cl.graph);
    for (int t : lterm) {
      int ell = r_nodes_on_root_path(lt, rs.in_r, lt.node_of[t]);
      auto d = radial_distances(cl.graph, cl.group[t]);
      for (int x : outer) {
        ++out.radial_checks;
        if (d[x] < 0 || d[x] > 2 * ell) ++out.radial_violations;
      }
    }
  }

  std::sort(contract.begin(), contract.end());
  Contraction c = contract_edges(G, contract);
  MwcInstance& P = out.prepared;
  P.g = std::move(c.graph);
  P.k = k;
  P.forbidden.assign(P.g.n(), 0);
  out.prepared_from.assign(P.g.n(), -1);
  for (int x = 0; x < P.g.n(); ++x) {
    out.prepared_from[x] = c.members[x][0];
    if (c.members[x].size() > 1) P.forbidden[x] = 1;
  }
  for (int t : T) {
    P.terminals.push_back(c.group[t]);
    out.prepared_from[c.group[t]] = t;
  }
  std::sort(P.terminals.begin(), P.terminals.end());

  // Overlay of G' - T'; every terminal leaves behind the face f_t.
  Surgery s2 = remove_vertices(P.g, P.terminals);
  out.stripped = s2.graph;
  out.stripped_to = s2.vmap;
  out.overlay = overlay_graph(out.stripped);
  const PlaneGraph& L = out.overlay.graph;
  int n2 = out.stripped.n();
  std::vector<int> to_stripped(P.g.n(), -1);
  for (int v = 0; v < n2; ++v) to_stripped[s2.vmap[v]] = v;
  std::map<std::pair<int, int>, int> radial_edge;  // (vertex, face node) -> overlay edge
  for (int e = L.m() - 1; e >= 0; --e)
    if (out.overlay.orig_edge[e] < 0) {
      int a = L.eu(e), b = L.ev(e);
      if (out.overlay.is_face(a)) std::swap(a, b);
      radial_edge[{a, b}] = e;
    }

  std::vector<std::vector<std::pair<int, int>>> inc(L.n());
  for (int e = 0; e < L.m(); ++e) {
    inc[L.eu(e)].push_back({L.ev(e), e});
    inc[L.ev(e)].push_back({L.eu(e), e});
  }
  int root = n2 + out.stripped.outer;
  std::vector<int> pe(L.n(), -1), dist(L.n(), -1);
  std::vector<int> q{root};
  dist[root] = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (auto [y, e] : inc[q[i]])
      if (dist[y] < 0) {
        dist[y] = dist[q[i]] + 1;
        pe[y] = e;
        q.push_back(y);
      }

  std::vector<int> cand;
  std::vector<int> path_edges;
  for (int t : P.terminals) {
    int ft = n2 + s2.fmap[P.g.hface[P.g.vhe[t]]];
    for (int w : P.g.neighbors(t)) {
      auto it = radial_edge.find({to_stripped[w], ft});
      if (it == radial_edge.end()) throw GraphError("prepare_and_find_tree: neighbour of a terminal misses its face");
      cand.push_back(it->second);
    }
    for (int x = ft; x != root; x = L.eu(pe[x]) == x ? L.ev(pe[x]) : L.eu(pe[x])) {
      if (pe[x] < 0) throw GraphError("prepare_and_find_tree: overlay graph is disconnected");
      path_edges.push_back(pe[x]);
    }
    out.h_degree_bound += P.g.degree(t) + 2;
  }
  cand.insert(cand.end(), path_edges.begin(), path_edges.end());
  Dsu d(L.n());
  std::vector<int> deg(L.n(), 0);
  for (int e : cand)
    if (d.unite(L.eu(e), L.ev(e))) {
      out.tree.push_back(e);
      ++deg[L.eu(e)];
      ++deg[L.ev(e)];
    }
  std::sort(out.tree.begin(), out.tree.end());
  out.h_max_degree = *std::max_element(deg.begin(), deg.end());
  return out;
}

// ---------------------------------------------------------------- U reductions

Dominance remove_dominated(const MwcInstance& inst) {
  check_mwc_instance(inst);
  int n = inst.g.n();
  Adj adj = inst.g.adjacency();
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<char> alive(n, 1);
  std::vector<int> dead;
  for (int u = 0; u < n; ++u) {
    if (!inst.is_forbidden(u)) continue;
    for (int v = 0; v < n; ++v) {
      if (v == u || !alive[v] || !inst.is_forbidden(v)) continue;
      if (std::includes(adj[v].begin(), adj[v].end(), adj[u].begin(), adj[u].end())) {
        alive[u] = 0;
        dead.push_back(u);
        break;
      }
    }
  }
  Dominance out;
  Surgery s = remove_vertices(inst.g, dead);
  out.out = remap(inst, std::move(s.graph), s.vmap, inst.k);
  out.vmap = s.vmap;
  out.removed = static_cast<int>(dead.size());
  return out;
}

GridReplacement replace_by_grids(const MwcInstance& inst) {
  check_mwc_instance(inst);
  const PlaneGraph& g = inst.g;
  int n = g.n();
  int K = inst.k + 1;
  GridReplacement out;
  std::vector<int> nid(n, -1);
  std::vector<Id> vids;
  for (int v = 0; v < n; ++v)
    if (!inst.is_forbidden(v)) {
      nid[v] = static_cast<int>(out.vmap.size());
      out.vmap.push_back(v);
      out.grid_of.push_back(-1);
      vids.push_back(g.vid[v]);
    }
  std::set<std::pair<int, int>> es;
  for (int e = 0; e < g.m(); ++e) {
    int a = nid[g.eu(e)], b = nid[g.ev(e)];
    if (a >= 0 && b >= 0 && a != b) es.insert(std::minmax(a, b));
  }
  Id fresh = g.max_vid() + 1;
  int total = static_cast<int>(out.vmap.size());
  for (int u = 0; u < n; ++u) {
    if (!inst.is_forbidden(u)) continue;
    std::vector<int> nb;
    for (int h : g.rotation(u)) {
      int w = g.head(h);
      if (inst.is_forbidden(w)) throw GraphError("replace_by_grids: forbidden vertices must be independent");
      if (w != u && std::find(nb.begin(), nb.end(), w) == nb.end()) nb.push_back(w);
    }
    int du = static_cast<int>(nb.size());
    if (du == 0) continue;
    int cols = K * du;
    auto at = [&](int r, int c) { return total + r * cols + c; };
    for (int i = 0; i < K * cols; ++i) {
      out.vmap.push_back(-1);
      out.grid_of.push_back(u);
      vids.push_back(fresh++);
    }
    for (int r = 0; r < K; ++r)
      for (int c = 0; c < cols; ++c) {
        if (c + 1 < cols) es.insert({at(r, c), at(r, c + 1)});
        if (r + 1 < K) es.insert({at(r, c), at(r + 1, c)});
      }
    for (int i = 0; i < du; ++i)
      for (int l = 0; l < K; ++l) es.insert(std::minmax(nid[nb[i]], at(0, K * i + l)));
    total += K * cols;
    out.gadget_vertices += K * cols;
  }
  std::vector<std::pair<int, int>> el(es.begin(), es.end());
  auto emb = embed(total, el, &vids);
  if (!emb) throw GraphError("replace_by_grids: result is not planar");
  out.out.g = std::move(*emb);
  out.out.k = inst.k;
  for (int t : inst.terminals) out.out.terminals.push_back(nid[t]);
  std::sort(out.out.terminals.begin(), out.out.terminals.end());
  return out;
}

// ---------------------------------------------------------------- kernel

MwcKernel kernelize_mwc(const MwcInstance& inst, const SparsifyConfig& cfg) {
  MwcKernel out;
  MwcTree tr = prepare_and_find_tree(inst);
  out.lp = tr.lp.stats;
  if (tr.answer_no) {
    out.kind = MwcKernel::Kind::trivial_no;
    out.reason = tr.reason;
    out.kernel = mwc_canonical_no();
    return out;
  }
  if (tr.trivial_yes) {
    out.kind = MwcKernel::Kind::trivial_yes;
    out.reason = tr.reason;
    out.kernel = mwc_canonical_yes();
    return out;
  }
  const MwcInstance& P = tr.prepared;
  int k = P.k;
  if (k < 1) throw GraphError("kernelize_mwc: terminals left with zero budget");
  out.important = tr.important;
  out.relevant = tr.relevant;
  out.radial_violations = tr.radial_violations;
  for (char z : P.forbidden) out.z += z;
  out.h_edges = static_cast<int>(tr.tree.size());
  out.h_max_degree = tr.h_max_degree;
  out.alpha = tr.h_max_degree / k + 1;

  CutOpen co = cut_open(tr.overlay.graph, tr.tree);
  out.boundary = static_cast<int>(co.boundary.size());
  int no = co.opened.n();
  auto real = [&](int v) { return !tr.overlay.is_face(co.vmap[v]); };
  auto to_g = [&](int v) { return tr.stripped_to[co.vmap[v]]; };
  std::vector<std::pair<int, int>> chains;
  for (int e = 0; e < co.opened.m(); ++e) {
    int a = co.opened.eu(e), b = co.opened.ev(e);
    if ((real(a) && P.forbidden[to_g(a)]) || (real(b) && P.forbidden[to_g(b)]))
      chains.push_back({e, out.alpha * k * k});
  }
  Subdivision sub = subdivide_edges(co.opened, chains);
  out.chain_vertices = sub.graph.n() - no;
  Partitioned part;
  part.g = std::move(sub.graph);
  part.inA.assign(part.g.n(), 0);
  for (int v = 0; v < no; ++v) part.inA[v] = !real(v);
  SparsifyResult sp = sparsify(part, cfg);
  out.sparsify = sp.report;

  auto isT = mask_of(P.g.n(), P.terminals);
  std::vector<char> inD(P.g.n(), 0);
  for (int e : sp.kept_edges)
    for (int v : {part.g.eu(e), part.g.ev(e)})
      if (v < no && real(v) && !P.forbidden[to_g(v)]) inD[to_g(v)] = 1;
  for (char x : inD) out.d += x;

  // Everything outside T and D becomes undeletable and is merged.
  std::vector<char> inU(P.g.n(), 0);
  for (int v = 0; v < P.g.n(); ++v) inU[v] = !isT[v] && !inD[v];
  std::vector<int> merge;
  for (int e = 0; e < P.g.m(); ++e)
    if (inU[P.g.eu(e)] && inU[P.g.ev(e)]) merge.push_back(e);
  Contraction c1 = contract_edges(P.g, merge);
  MwcInstance G1;
  G1.g = std::move(c1.graph);
  G1.k = k;
  G1.forbidden.assign(G1.g.n(), 0);
  for (int v = 0; v < P.g.n(); ++v)
    if (inU[v]) G1.forbidden[c1.group[v]] = 1;
  for (int t : P.terminals) G1.terminals.push_back(c1.group[t]);
  std::sort(G1.terminals.begin(), G1.terminals.end());
  for (char u : G1.forbidden) out.u1 += u;

  Dominance dom = remove_dominated(G1);
  for (char u : dom.out.forbidden) out.u2 += u;
  GridReplacement gr = replace_by_grids(dom.out);
  out.gadget_vertices = gr.gadget_vertices;
  out.kernel = std::move(gr.out);
  return out;
}

}  // namespace pk
