#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

namespace pk {

using Adj = std::vector<std::vector<int>>;

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// BFS distances from a source set; vertices with alive[v] == 0 are skipped.
// An empty alive vector means every vertex is usable.
inline std::vector<int> bfs(const Adj& adj, const std::vector<int>& src,
                            const std::vector<char>& alive = {}) {
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  for (int s : src)
    if (d[s] < 0 && (alive.empty() || alive[s])) {
      d[s] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (d[y] < 0 && (alive.empty() || alive[y])) {
        d[y] = d[x] + 1;
        q.push(y);
      }
  }
  return d;
}

// Component label per alive vertex (-1 for dead ones).
inline std::vector<int> label_components(const Adj& adj, const std::vector<char>& alive, int* count) {
  int n = static_cast<int>(adj.size());
  std::vector<int> c(n, -1);
  int k = 0;
  for (int s = 0; s < n; ++s) {
    if (c[s] >= 0 || (!alive.empty() && !alive[s])) continue;
    std::vector<int> st{s};
    c[s] = k;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x])
        if (c[y] < 0 && (alive.empty() || alive[y])) {
          c[y] = k;
          st.push_back(y);
        }
    }
    ++k;
  }
  if (count) *count = k;
  return c;
}

inline Adj adj_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Adj adj(n);
  for (auto [a, b] : edges) {
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

// splitmix64; split() derives an independent stream for a sub-task.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  Rng split() { return Rng(next()); }
  std::mt19937_64 engine() { return std::mt19937_64(next()); }
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double real() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
  bool coin(double p) { return real() < p; }
};

}  // namespace pk
