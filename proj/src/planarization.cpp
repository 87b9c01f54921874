#include "planekern/planarization.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pk {

namespace {

SimpleGraph finish(int n, std::set<std::pair<int, int>>& es) {
  SimpleGraph g;
  g.n = n;
  g.edges.assign(es.begin(), es.end());
  return g;
}

void add(std::set<std::pair<int, int>>& es, int a, int b) {
  if (a != b) es.insert(std::minmax(a, b));
}

// Induced subgraph on the vertices not in `dead`, relabelled.
bool planar_without(const SimpleGraph& g, const std::vector<char>& dead) {
  std::vector<int> id(g.n, -1);
  int n = 0;
  for (int v = 0; v < g.n; ++v)
    if (!dead[v]) id[v] = n++;
  std::vector<std::pair<int, int>> es;
  for (auto [a, b] : g.edges)
    if (id[a] >= 0 && id[b] >= 0) es.push_back({id[a], id[b]});
  return is_planar(n, es);
}

}  // namespace

bool is_planar(const SimpleGraph& g) { return is_planar(g.n, g.edges); }

SimpleGraph build_h0() {
  auto x = [](int a, int b) { return 4 * (a - 1) + (b - 1); };
  std::set<std::pair<int, int>> es;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      if (b < 4) add(es, x(a, b), x(a, b + 1));
      if (a < 4) add(es, x(a, b), x(a + 1, b));
    }
  add(es, x(2, 2), x(2, 4));
  es.erase(std::minmax(x(1, 2), x(2, 2)));
  es.erase(std::minmax(x(1, 4), x(2, 4)));
  return finish(16, es);
}

DvpReduction reduce_to_disjoint_vp(const MwcInstance& inst) {
  check_mwc_instance(inst);
  DvpReduction r;
  r.out.k = inst.k;
  int nt = static_cast<int>(inst.terminals.size());
  const PlaneGraph& g = inst.g;
  r.from_input.assign(g.n(), -1);
  if (nt <= 1) return r;
  int cols = 2 * nt;
  auto x = [&](int a, int b) { return (a - 1) * cols + (b - 1); };
  int n = 4 * cols;
  std::set<std::pair<int, int>> es;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= cols; ++b) {
      if (b < cols) add(es, x(a, b), x(a, b + 1));
      if (a < 4) add(es, x(a, b), x(a + 1, b));
    }
  for (int i = 0; i < nt; ++i) r.from_input[inst.terminals[i]] = x(2, 2 * (i + 1));
  for (int v = 0; v < g.n(); ++v)
    if (r.from_input[v] < 0) r.from_input[v] = n++;
  for (int e = 0; e < g.m(); ++e) add(es, r.from_input[g.eu(e)], r.from_input[g.ev(e)]);
  r.out.g = finish(n, es);
  r.out.undeletable.assign(n, 0);
  for (int v = 0; v < 4 * cols; ++v) r.out.undeletable[v] = 1;
  std::vector<char> dead(r.out.undeletable);
  if (!planar_without(r.out.g, dead)) throw GraphError("reduce_to_disjoint_vp: G' - S is not planar");
  return r;
}

VpReduction reduce_to_vp(const MwcInstance& inst) {
  check_mwc_instance(inst);
  VpReduction r;
  const PlaneGraph& g = inst.g;
  int nt = static_cast<int>(inst.terminals.size());
  int k = inst.k;
  r.out.k = k;
  r.from_input.assign(g.n(), -1);
  if (nt <= 1) return r;
  std::vector<char> isT(g.n(), 0);
  for (int t : inst.terminals) isT[t] = 1;
  for (int t : inst.terminals)
    for (int w : g.neighbors(t))
      if (isT[w]) {
        std::set<std::pair<int, int>> es;
        for (int a = 0; a < 5; ++a)
          for (int b = a + 1; b < 5; ++b) add(es, a, b);
        r.out.g = finish(5, es);
        r.out.k = 0;
        r.trivial_no = true;
        return r;
      }

  // Neighbours of each terminal in clockwise order.
  std::vector<std::vector<int>> nb(nt);
  int D = 0;
  for (int i = 0; i < nt; ++i) {
    auto rot = g.rotation(inst.terminals[i]);
    for (auto it = rot.rbegin(); it != rot.rend(); ++it) {
      int w = g.head(*it);
      if (std::find(nb[i].begin(), nb[i].end(), w) == nb[i].end()) nb[i].push_back(w);
    }
    D += static_cast<int>(nb[i].size());
  }
  int K = k + 1;
  r.rows = 4 * K;
  r.cols = (D + nt) * K;
  auto x = [&](int a, int b) { return (a - 1) * r.cols + (b - 1); };
  std::set<std::pair<int, int>> es;
  for (int a = 1; a <= r.rows; ++a)
    for (int b = 1; b <= r.cols; ++b) {
      if (b < r.cols) add(es, x(a, b), x(a, b + 1));
      if (a < r.rows) add(es, x(a, b), x(a + 1, b));
    }
  int n = r.rows * r.cols;
  for (int v = 0; v < g.n(); ++v)
    if (!isT[v]) r.from_input[v] = n++;
  for (int e = 0; e < g.m(); ++e)
    if (!isT[g.eu(e)] && !isT[g.ev(e)]) add(es, r.from_input[g.eu(e)], r.from_input[g.ev(e)]);
  int before = 0;  // sum of d_j for j < i
  for (int i = 0; i < nt; ++i) {
    int di = static_cast<int>(nb[i].size());
    int left = (i + 1 + before) * K;
    for (int b = left + 1; b <= left + di * K; ++b) es.erase(std::minmax(x(K, b), x(K + 1, b)));
    for (int j = 1; j <= di; ++j)
      for (int b = left + (j - 1) * K + 1; b <= left + j * K; ++b) add(es, r.from_input[nb[i][j - 1]], x(K + 1, b));
    before += di;
  }
  r.out.g = finish(n, es);
  return r;
}

std::optional<std::vector<int>> solve_vp_bruteforce(const SimpleGraph& g, int k,
                                                    const std::vector<char>& undeletable,
                                                    const VpGuard& guard) {
  if (g.n > guard.max_vertices || k > guard.max_k)
    throw GraphError("solve_vp_bruteforce: instance exceeds the size guard (n=" + std::to_string(g.n) +
                     ", k=" + std::to_string(k) + ")");
  std::vector<int> cand;
  for (int v = 0; v < g.n; ++v)
    if (undeletable.empty() || !undeletable[v]) cand.push_back(v);
  int p = static_cast<int>(cand.size());
  std::vector<char> dead(g.n, 0);
  for (int s = 0; s <= std::min(k, p); ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      std::fill(dead.begin(), dead.end(), 0);
      for (int i : idx) dead[cand[i]] = 1;
      if (planar_without(g, dead)) {
        std::vector<int> X;
        for (int i : idx) X.push_back(cand[i]);
        return X;
      }
      int i = s - 1;
      while (i >= 0 && idx[i] == p - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace pk
