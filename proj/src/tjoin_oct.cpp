#include "planekern/tjoin_oct.hpp"

#include <algorithm>
#include <map>

#include "planekern/graph_util.hpp"

namespace pk {

namespace {

std::vector<char> terminal_mask(const TJoinInstance& inst) {
  std::vector<char> m(inst.p.g.n(), 0);
  for (int t : inst.terminals) m[t] = 1;
  return m;
}

std::string vids_of(const PlaneGraph& g, const std::vector<int>& vs) {
  std::string s;
  for (int v : vs) s += (s.empty() ? "" : ",") + std::to_string(g.vid[v]);
  return "{" + s + "}";
}

// Rebuild an instance on a graph obtained by surgery (new -> old vertex map).
TJoinInstance remap(const TJoinInstance& inst, PlaneGraph g, const std::vector<int>& vmap, int k) {
  TJoinInstance out;
  auto isT = terminal_mask(inst);
  out.p.g = std::move(g);
  for (int i = 0; i < static_cast<int>(vmap.size()); ++i) {
    out.p.inA.push_back(inst.p.inA[vmap[i]]);
    if (isT[vmap[i]]) out.terminals.push_back(i);
  }
  out.k = k;
  return out;
}

TJoinInstance delete_vertices(const TJoinInstance& inst, const std::vector<int>& dead) {
  Surgery s = remove_vertices(inst.p.g, dead);
  return remap(inst, std::move(s.graph), s.vmap, inst.k);
}

TJoinInstance make_instance(int n, const std::vector<std::pair<int, int>>& edges, std::vector<char> inA,
                            std::vector<int> T, int k) {
  auto g = embed(n, edges);
  if (!g) throw GraphError("internal: gadget is not planar");
  TJoinInstance out;
  out.p.g = std::move(*g);
  out.p.inA = std::move(inA);
  out.terminals = std::move(T);
  out.k = k;
  return out;
}

RuleOutcome fired(OctRule r, Verdict v, TJoinInstance inst, std::string detail) {
  RuleOutcome o;
  o.verdict = v;
  o.instance = std::move(inst);
  o.trace.push_back({r, v, std::move(detail)});
  return o;
}

RuleOutcome unchanged(const TJoinInstance& inst) {
  RuleOutcome o;
  o.instance = inst;
  return o;
}

RuleOutcome rule_no_guard(const TJoinInstance& inst) {
  if (inst.k < 0) return fired(OctRule::no_guard, Verdict::answer_no, inst, "k < 0");
  Adj adj = inst.p.g.adjacency();
  int nc = 0;
  auto comp = label_components(adj, {}, &nc);
  std::vector<int> cnt(nc, 0);
  for (int t : inst.terminals) ++cnt[comp[t]];
  for (int t : inst.terminals)
    if (cnt[comp[t]] == 1)
      return fired(OctRule::no_guard, Verdict::answer_no, inst,
                   "terminal " + std::to_string(inst.p.g.vid[t]) + " is alone in its component");
  return unchanged(inst);
}

RuleOutcome rule_twins(const TJoinInstance& inst) {
  Adj adj = inst.p.g.adjacency();
  std::map<std::vector<int>, std::vector<int>> cls;
  for (int t : inst.terminals) cls[adj[t]].push_back(t);
  for (int t : inst.terminals) {
    const auto& X = cls[adj[t]];
    if (X.size() < 3 || X.front() != t) continue;
    int keep = 2 - static_cast<int>(X.size() % 2);
    std::vector<int> dead(X.begin() + keep, X.end());
    std::string d = "twin class " + vids_of(inst.p.g, X) + " keeps " + std::to_string(keep);
    return fired(OctRule::twins, Verdict::reduced, delete_vertices(inst, dead), d);
  }
  return unchanged(inst);
}

// Paid pairs with at least two common terminal neighbours, with those
// terminals, in lexicographic order.
std::map<std::pair<int, int>, std::vector<int>> candidate_pairs(const TJoinInstance& inst, const Adj& adj) {
  std::map<std::pair<int, int>, std::vector<int>> L;
  for (int t : inst.terminals) {
    const auto& nb = adj[t];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) L[{nb[i], nb[j]}].push_back(t);
  }
  for (auto it = L.begin(); it != L.end();)
    it = it->second.size() >= 2 ? std::next(it) : L.erase(it);
  return L;
}

RuleOutcome rule_components(const TJoinInstance& inst, bool empty) {
  const PlaneGraph& g = inst.p.g;
  Adj adj = g.adjacency();
  auto isT = terminal_mask(inst);
  for (const auto& [uv, L] : candidate_pairs(inst, adj)) {
    auto [u, v] = uv;
    std::vector<char> alive(g.n(), 1);
    alive[u] = alive[v] = 0;
    for (int t : L) alive[t] = 0;
    int nc = 0;
    auto comp = label_components(adj, alive, &nc);
    std::vector<std::vector<int>> members(nc), terms(nc);
    for (int x = 0; x < g.n(); ++x)
      if (comp[x] >= 0) {
        members[comp[x]].push_back(x);
        if (isT[x]) terms[comp[x]].push_back(x);
      }
    for (int c = 0; c < nc; ++c) {
      std::string where = "pair (" + std::to_string(g.vid[u]) + "," + std::to_string(g.vid[v]) + ")";
      if (empty) {
        if (!terms[c].empty()) continue;
        std::string d = where + " separates terminal-free " + vids_of(g, members[c]);
        return fired(OctRule::empty_comp, Verdict::reduced, delete_vertices(inst, members[c]), d);
      }
      if (terms[c].empty()) continue;
      for (int w : {v, u}) {
        bool all = std::all_of(terms[c].begin(), terms[c].end(), [&](int t) {
          return std::binary_search(adj[t].begin(), adj[t].end(), w);
        });
        if (!all) continue;
        std::string d = where + " component with " + std::to_string(terms[c].size()) +
                        " terminals dominated by " + std::to_string(g.vid[w]) + "; contract";
        return fired(OctRule::dominated_comp, Verdict::reduced, contract_at(inst, w), d);
      }
    }
  }
  return unchanged(inst);
}

RuleOutcome rule_high_degree(const TJoinInstance& inst) {
  const PlaneGraph& g = inst.p.g;
  Adj adj = g.adjacency();
  auto isT = terminal_mask(inst);
  for (int v = 0; v < g.n(); ++v) {
    if (!inst.p.is_b(v)) continue;
    long c = std::count_if(adj[v].begin(), adj[v].end(), [&](int x) { return isT[x]; });
    if (c > 6L * inst.k) {
      std::string d = "vertex " + std::to_string(g.vid[v]) + " has " + std::to_string(c) +
                      " terminal neighbours > 6k = " + std::to_string(6 * inst.k) + "; contract";
      return fired(OctRule::high_degree, Verdict::reduced, contract_at(inst, v), d);
    }
  }
  return unchanged(inst);
}

RuleOutcome rule_terminal_count(const TJoinInstance& inst) {
  long t = static_cast<long>(inst.terminals.size());
  if (t > 6L * inst.k * inst.k)
    return fired(OctRule::terminal_count, Verdict::answer_no, inst,
                 "|T| = " + std::to_string(t) + " > 6k^2 = " + std::to_string(6L * inst.k * inst.k));
  return unchanged(inst);
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Spanning tree (increasing edge index) of the subgraph induced by `in`.
std::vector<int> induced_spanning_tree(const PlaneGraph& g, const std::vector<char>& in) {
  Dsu d(g.n());
  std::vector<int> tree;
  for (int e = 0; e < g.m(); ++e)
    if (in[g.eu(e)] && in[g.ev(e)] && d.unite(g.eu(e), g.ev(e))) tree.push_back(e);
  return tree;
}

}  // namespace

void check_tjoin_instance(const TJoinInstance& inst) {
  check_partition(inst.p);
  const PlaneGraph& g = inst.p.g;
  for (int e = 0; e < g.m(); ++e)
    if (inst.p.is_b(g.eu(e)) && inst.p.is_b(g.ev(e)))
      throw GraphError("T-join instance: edge " + std::to_string(g.eid[e]) + " joins two paid vertices");
  int prev = -1;
  for (int t : inst.terminals) {
    if (t < 0 || t >= g.n()) throw GraphError("T-join instance: terminal out of range");
    if (t <= prev) throw GraphError("T-join instance: terminals must be sorted and distinct");
    if (inst.p.is_b(t)) throw GraphError("T-join instance: terminal " + std::to_string(g.vid[t]) + " is paid");
    prev = t;
  }
}

TJoinInstance oct_to_tjoin(const PlaneGraph& g, int k) {
  if (g.n() == 0 || !is_connected(g)) throw GraphError("oct_to_tjoin: graph is not connected");
  Overlay r = radial_graph(g);
  Surgery s = simplify(r.graph);
  TJoinInstance out;
  out.p.g = std::move(s.graph);
  for (int i = 0; i < out.p.g.n(); ++i) {
    int v = s.vmap[i];
    if (v != i) throw GraphError("internal: simplify renumbered vertices");
    out.p.inA.push_back(r.is_face(v));
    if (r.is_face(v) && g.face_length(v - r.n_orig) % 2) out.terminals.push_back(i);
  }
  out.k = k;
  return out;
}

bool is_odd_cycle_transversal(const PlaneGraph& g, const std::vector<int>& C) {
  std::vector<char> dead(g.n(), 0);
  for (int v : C) dead[v] = 1;
  std::vector<std::vector<int>> adj(g.n());
  for (int e = 0; e < g.m(); ++e) {
    int a = g.eu(e), b = g.ev(e);
    if (dead[a] || dead[b]) continue;
    if (a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> col(g.n(), -1);
  for (int s = 0; s < g.n(); ++s) {
    if (dead[s] || col[s] >= 0) continue;
    col[s] = 0;
    std::vector<int> st{s};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x]) {
        if (col[y] < 0) {
          col[y] = col[x] ^ 1;
          st.push_back(y);
        } else if (col[y] == col[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_tjoin_solution(const TJoinInstance& inst, const std::vector<int>& C0) {
  const PlaneGraph& g = inst.p.g;
  auto C = sorted_unique(C0);
  if (static_cast<int>(C.size()) > inst.k) return false;
  std::vector<char> alive(inst.p.inA.begin(), inst.p.inA.end());
  for (int v : C) {
    if (v < 0 || v >= g.n() || !inst.p.is_b(v)) return false;
    alive[v] = 1;
  }
  Dsu d(g.n());
  for (int e = 0; e < g.m(); ++e)
    if (alive[g.eu(e)] && alive[g.ev(e)]) d.unite(g.eu(e), g.ev(e));
  std::vector<char> par(g.n(), 0);
  for (int t : inst.terminals) par[d.find(t)] ^= 1;
  return std::none_of(par.begin(), par.end(), [](char c) { return c; });
}

std::optional<std::vector<int>> solve_tjoin_bruteforce(const TJoinInstance& inst) {
  if (inst.k < 0) return std::nullopt;
  std::vector<int> B;
  for (int v = 0; v < inst.p.g.n(); ++v)
    if (inst.p.is_b(v)) B.push_back(v);
  int nb = static_cast<int>(B.size());
  for (int s = 0; s <= std::min(inst.k, nb); ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::vector<int> C;
      for (int i : idx) C.push_back(B[i]);
      if (is_tjoin_solution(inst, C)) return C;
      int i = s - 1;
      while (i >= 0 && idx[i] == nb - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

TJoinInstance canonical_no() { return make_instance(3, {{0, 1}, {1, 2}}, {1, 0, 1}, {0, 2}, 0); }

TJoinInstance canonical_yes() { return make_instance(1, {}, {1}, {}, 0); }

const char* rule_name(OctRule r) {
  switch (r) {
    case OctRule::no_guard: return "NO_GUARD";
    case OctRule::twins: return "TWINS";
    case OctRule::empty_comp: return "EMPTY_COMP";
    case OctRule::dominated_comp: return "DOMINATED_COMP";
    case OctRule::high_degree: return "HIGH_DEGREE";
    case OctRule::terminal_count: return "TERMINAL_COUNT";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::reduced: return "reduced";
    case Verdict::unchanged: return "unchanged";
    case Verdict::answer_no: return "answer_no";
  }
  return "?";
}

TJoinInstance contract_at(const TJoinInstance& inst, int v) {
  const PlaneGraph& g = inst.p.g;
  std::vector<int> es;
  for (int h : g.rotation(v)) es.push_back(h / 2);
  es = sorted_unique(es);
  auto isT = terminal_mask(inst);
  std::vector<char> nbr(g.n(), 0);
  int odd = 0;
  Adj adj = g.adjacency();
  for (int x : adj[v]) {
    nbr[x] = 1;
    odd ^= isT[x];
  }
  Contraction c = contract_edges(g, es);
  TJoinInstance out;
  out.p.g = std::move(c.graph);
  int merged = c.group[v];
  for (int w = 0; w < out.p.g.n(); ++w)
    out.p.inA.push_back(w == merged ? 1 : inst.p.inA[c.members[w].front()]);
  for (int t : inst.terminals)
    if (!nbr[t]) out.terminals.push_back(c.group[t]);
  if (odd) out.terminals.push_back(merged);
  out.terminals = sorted_unique(out.terminals);
  out.k = inst.k - 1;
  return out;
}

RuleOutcome apply_rule(const TJoinInstance& inst, OctRule rule) {
  check_tjoin_instance(inst);
  switch (rule) {
    case OctRule::no_guard: return rule_no_guard(inst);
    case OctRule::twins: return rule_twins(inst);
    case OctRule::empty_comp: return rule_components(inst, true);
    case OctRule::dominated_comp: return rule_components(inst, false);
    case OctRule::high_degree: return rule_high_degree(inst);
    case OctRule::terminal_count: return rule_terminal_count(inst);
  }
  return unchanged(inst);
}

RuleOutcome reduce_exhaustively(const TJoinInstance& inst, const RuleObserver& observer) {
  RuleOutcome res = unchanged(inst);
  bool changed = true;
  while (changed) {
    changed = false;
    for (OctRule r : kOctRules) {
      RuleOutcome o = apply_rule(res.instance, r);
      if (o.verdict == Verdict::unchanged) continue;
      if (observer) observer(res.instance, o);
      res.trace.insert(res.trace.end(), o.trace.begin(), o.trace.end());
      res.instance = std::move(o.instance);
      if (o.verdict == Verdict::answer_no) {
        res.verdict = Verdict::answer_no;
        return res;
      }
      res.verdict = Verdict::reduced;
      changed = true;
      break;
    }
  }
  return res;
}

SplitResult split_instance(const TJoinInstance& inst) {
  const PlaneGraph& g = inst.p.g;
  SplitResult out;
  Adj adj = g.adjacency();
  auto d = bfs(adj, inst.terminals);
  std::vector<char> in(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) in[v] = d[v] >= 0 && d[v] <= inst.k + 2;
  int nc = 0;
  auto comp = label_components(adj, in, &nc);
  if (nc > inst.k) {
    out.answer_no = true;
    return out;
  }
  for (int c = 0; c < nc; ++c) {
    std::vector<int> dead;
    for (int v = 0; v < g.n(); ++v)
      if (comp[v] != c) dead.push_back(v);
    Surgery s = remove_vertices(g, dead);
    out.parts.push_back(remap(inst, std::move(s.graph), s.vmap, inst.k));
    out.vmap.push_back(std::move(s.vmap));
    out.emap.push_back(std::move(s.emap));
  }
  return out;
}

ConnectorBuild build_connector(const TJoinInstance& sub) {
  const PlaneGraph& g = sub.p.g;
  ConnectorBuild out;
  const auto& T = sub.terminals;
  if (T.size() % 2) {
    out.answer_no = true;
    out.reason = "odd number of terminals in a part";
    return out;
  }
  Adj adj = g.adjacency();
  auto isT = terminal_mask(sub);
  std::vector<char> marked(g.n(), 0);
  std::vector<int> marker(g.n(), -1);
  for (int t : T) {
    if (marked[t]) continue;
    out.t_prime.push_back(t);
    marked[t] = 1;
    marker[t] = t;
    for (int b : adj[t])
      for (int x : adj[b])
        if (isT[x] && !marked[x]) {
          marked[x] = 1;
          marker[x] = t;
        }
  }
  const int tp = static_cast<int>(out.t_prime.size());
  out.steiner_bound = (2 * (sub.k + 2) + 1) * std::max(tp - 1, 0);
  if (tp > sub.k) {
    out.answer_no = true;
    out.reason = std::to_string(tp) + " terminals with disjoint neighbourhoods exceed k";
    return out;
  }
  if (tp == 0) return out;

  // BFS forest rooted at t_prime, then a spanning tree of the contracted
  // graph using the shortest connecting path for each pair of trees.
  std::vector<int> depth(g.n(), -1), root(g.n(), -1), pe(g.n(), -1);
  std::vector<int> q;
  for (int t : out.t_prime) {
    depth[t] = 0;
    root[t] = t;
    q.push_back(t);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    int x = q[i];
    for (int h : g.rotation(x)) {
      int y = g.head(h);
      if (depth[y] >= 0) continue;
      depth[y] = depth[x] + 1;
      root[y] = root[x];
      pe[y] = h / 2;
      q.push_back(y);
    }
  }
  std::vector<std::pair<int, int>> cross;  // (path length, edge)
  for (int e = 0; e < g.m(); ++e) {
    int a = g.eu(e), b = g.ev(e);
    if (root[a] < 0 || root[b] < 0) throw GraphError("build_connector: part is not connected");
    if (root[a] != root[b]) cross.emplace_back(depth[a] + depth[b] + 1, e);
  }
  std::sort(cross.begin(), cross.end());
  Dsu hd(g.n());
  std::vector<char> inF(g.m(), 0);
  auto climb = [&](int x) {
    for (; pe[x] >= 0; x = g.eu(pe[x]) == x ? g.ev(pe[x]) : g.eu(pe[x])) inF[pe[x]] = 1;
  };
  for (auto [len, e] : cross) {
    int a = g.eu(e), b = g.ev(e);
    if (!hd.unite(root[a], root[b])) continue;
    inF[e] = 1;
    climb(a);
    climb(b);
  }
  Dsu fd(g.n());
  for (int e = 0; e < g.m(); ++e)
    if (inF[e] && fd.unite(g.eu(e), g.ev(e))) out.steiner_edges.push_back(e);

  std::vector<char> inA(g.n(), 0);
  for (int t : T) inA[t] = 1;
  for (int e : out.steiner_edges) inA[g.eu(e)] = inA[g.ev(e)] = 1;
  for (int t : T) {
    int r = marker[t];
    if (r == t) continue;
    for (int b : adj[t])
      if (std::binary_search(adj[r].begin(), adj[r].end(), b)) {
        inA[b] = 1;
        break;
      }
  }
  for (int v = 0; v < g.n(); ++v)
    if (inA[v]) out.vertices.push_back(v);
  out.tree = induced_spanning_tree(g, inA);
  if (out.tree.size() + 1 != out.vertices.size())
    throw GraphError("build_connector: connector set is not connected");
  return out;
}

OctKernel kernelize_oct(const TJoinInstance& inst, const SparsifyConfig& cfg) {
  check_tjoin_instance(inst);
  OctKernel out;
  auto trivial = [&](OctKernel::Kind kind, std::string why) {
    out.kind = kind;
    out.reason = std::move(why);
    out.kernel = kind == OctKernel::Kind::trivial_no ? canonical_no() : canonical_yes();
    return out;
  };
  RuleOutcome red = reduce_exhaustively(inst);
  out.trace = red.trace;
  const TJoinInstance& cur = red.instance;
  out.reduced_vertices = cur.p.g.n();
  out.reduced_terminals = static_cast<int>(cur.terminals.size());
  out.reduced_k = cur.k;
  if (red.verdict == Verdict::answer_no) return trivial(OctKernel::Kind::trivial_no, red.trace.back().detail);
  if (cur.terminals.empty()) return trivial(OctKernel::Kind::trivial_yes, "no terminals");

  SplitResult sp = split_instance(cur);
  if (sp.answer_no) return trivial(OctKernel::Kind::trivial_no, "more than k far-apart parts");

  const PlaneGraph& G = cur.p.g;
  std::vector<char> keep(G.m(), 0);
  for (std::size_t i = 0; i < sp.parts.size(); ++i) {
    const TJoinInstance& part = sp.parts[i];
    OctPartReport rep;
    rep.vertices = part.p.g.n();
    rep.terminals = static_cast<int>(part.terminals.size());
    ConnectorBuild cb = build_connector(part);
    rep.t_prime = static_cast<int>(cb.t_prime.size());
    rep.steiner_edges = static_cast<int>(cb.steiner_edges.size());
    rep.steiner_bound = cb.steiner_bound;
    if (cb.answer_no) {
      out.parts.push_back(rep);
      return trivial(OctKernel::Kind::trivial_no, cb.reason);
    }
    CutOpen co = cut_open(part.p.g, cb.tree);
    rep.cut_boundary = static_cast<int>(co.boundary.size());
    Partitioned opened{co.opened, {}};
    for (int v : co.vmap) opened.inA.push_back(part.p.inA[v]);
    SparsifyResult sr = sparsify(opened, cfg);
    rep.kept_edges = static_cast<int>(sr.kept_edges.size());
    rep.sparsify = sr.report;
    for (int e : sr.kept_edges) keep[sp.emap[i][co.emap[e]]] = 1;
    out.parts.push_back(rep);
  }
  Surgery ks = keep_edges(G, keep);
  out.kernel = remap(cur, std::move(ks.graph), ks.vmap, cur.k);
  if (out.kernel.terminals.size() != cur.terminals.size())
    throw GraphError("kernelize_oct: a terminal was lost");
  return out;
}

}  // namespace pk
