#pragma once

// Exhaustive reference answers used by the property tests. Everything here
// works on plain edge lists and bitmasks and shares no code with the library
// algorithms it checks.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Edges = std::vector<std::pair<int, int>>;

inline bool connected_mask(const std::vector<std::uint32_t>& nb, std::uint32_t U) {
  if (!U) return true;
  std::uint32_t seen = U & -U, frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= nb[__builtin_ctz(f)];
    next &= U & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == U;
}

inline std::vector<std::uint32_t> neighbour_masks(int n, const Edges& es) {
  std::vector<std::uint32_t> nb(n, 0);
  for (auto [a, b] : es) {
    nb[a] |= 1u << b;
    nb[b] |= 1u << a;
  }
  return nb;
}

// best[A] for every A given as a mask over `terms`: the least number of paid
// vertices in a connected vertex set containing A (n <= 22). -1 if impossible.
inline std::vector<int> min_cost_all(int n, const Edges& es, const std::vector<char>& paid,
                                     const std::vector<int>& terms) {
  auto nb = neighbour_masks(n, es);
  int k = static_cast<int>(terms.size());
  const int INF = 1 << 29;
  std::vector<int> best(std::size_t(1) << k, INF);
  best[0] = 0;
  for (std::uint32_t U = 1; U < (1u << n); ++U) {
    if (!connected_mask(nb, U)) continue;
    int c = 0;
    for (int v = 0; v < n; ++v) c += (U >> v & 1) && paid[v];
    std::uint32_t key = 0;
    for (int i = 0; i < k; ++i)
      if (U >> terms[i] & 1) key |= 1u << i;
    best[key] = std::min(best[key], c);
  }
  // minimum over supersets
  for (int i = 0; i < k; ++i)
    for (std::uint32_t m = 0; m < (1u << k); ++m)
      if (!(m >> i & 1)) best[m] = std::min(best[m], best[m | 1u << i]);
  for (int& b : best)
    if (b >= INF) b = -1;
  return best;
}

// (cost, vertex count) minimum over connected sets containing A.
inline std::pair<int, int> min_cost_size(int n, const Edges& es, const std::vector<char>& paid,
                                         const std::vector<int>& A) {
  auto nb = neighbour_masks(n, es);
  std::uint32_t need = 0;
  for (int a : A) need |= 1u << a;
  std::pair<int, int> best{1 << 29, 1 << 29};
  for (std::uint32_t U = 1; U < (1u << n); ++U) {
    if ((U & need) != need || !connected_mask(nb, U)) continue;
    int c = 0;
    for (int v = 0; v < n; ++v) c += (U >> v & 1) && paid[v];
    best = std::min(best, {c, __builtin_popcount(U)});
  }
  return best;
}

// G - C is bipartite (C given as a vertex mask, n <= 32). Loops count as odd.
inline bool oct_mask(int n, const Edges& es, std::uint32_t C) {
  std::vector<int> col(n, -1);
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : es) {
    if ((C >> a & 1) || (C >> b & 1)) continue;
    if (a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int s = 0; s < n; ++s) {
    if ((C >> s & 1) || col[s] >= 0) continue;
    col[s] = 0;
    std::vector<int> q{s};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int y : adj[q[i]]) {
        if (col[y] < 0) {
          col[y] = col[q[i]] ^ 1;
          q.push_back(y);
        } else if (col[y] == col[q[i]]) {
          return false;
        }
      }
  }
  return true;
}

// Every component of G[free + C] holds an even number of terminals.
inline bool parity_ok(int n, const Edges& es, const std::vector<char>& free_v, const std::vector<char>& term,
                      const std::vector<char>& inC) {
  std::vector<int> lab(n, -1);
  std::vector<std::vector<int>> adj(n);
  auto alive = [&](int v) { return free_v[v] || inC[v]; };
  for (auto [a, b] : es)
    if (alive(a) && alive(b)) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  for (int s = 0; s < n; ++s) {
    if (!alive(s) || lab[s] >= 0) continue;
    int odd = 0;
    lab[s] = s;
    std::vector<int> q{s};
    for (std::size_t i = 0; i < q.size(); ++i) {
      odd ^= term[q[i]];
      for (int y : adj[q[i]])
        if (lab[y] < 0) {
          lab[y] = s;
          q.push_back(y);
        }
    }
    if (odd) return false;
  }
  return true;
}

// Smallest number of paid vertices making parity_ok true, or -1 if more
// than kmax are needed. Plain subset enumeration by size.
inline int min_tjoin(int n, const Edges& es, const std::vector<char>& free_v, const std::vector<char>& term,
                     int kmax) {
  std::vector<int> paid;
  for (int v = 0; v < n; ++v)
    if (!free_v[v]) paid.push_back(v);
  int p = static_cast<int>(paid.size());
  std::vector<char> inC(n, 0);
  for (int s = 0; s <= std::min(kmax, p); ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::fill(inC.begin(), inC.end(), 0);
      for (int i : idx) inC[paid[i]] = 1;
      if (parity_ok(n, es, free_v, term, inC)) return s;
      int i = s - 1;
      while (i >= 0 && idx[i] == p - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return -1;
}

// No two terminals share a component of G - dead.
inline bool multiway_ok(int n, const Edges& es, const std::vector<char>& term, const std::vector<char>& dead) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : es)
    if (!dead[a] && !dead[b]) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (!term[s] || seen[s]) continue;
    seen[s] = 1;
    std::vector<int> q{s};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int y : adj[q[i]])
        if (!seen[y]) {
          if (term[y]) return false;
          seen[y] = 1;
          q.push_back(y);
        }
  }
  return true;
}

// Smallest multiway cut avoiding terminals and `forbid`, by subset
// enumeration; -1 if more than kmax vertices are needed.
inline int min_mwc(int n, const Edges& es, const std::vector<char>& term, const std::vector<char>& forbid,
                   int kmax) {
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (!term[v] && !(forbid.size() && forbid[v])) cand.push_back(v);
  int p = static_cast<int>(cand.size());
  std::vector<char> dead(n, 0);
  for (int s = 0; s <= std::min(kmax, p); ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::fill(dead.begin(), dead.end(), 0);
      for (int i : idx) dead[cand[i]] = 1;
      if (multiway_ok(n, es, term, dead)) return s;
      int i = s - 1;
      while (i >= 0 && idx[i] == p - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return -1;
}

// Same answer by bounded search: some interior vertex of any surviving
// terminal-to-terminal path must be deleted. Suited to larger graphs with
// small budgets.
inline int min_mwc_branch(int n, const Edges& es, const std::vector<char>& term,
                          const std::vector<char>& forbid, int kmax) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : es) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> dead(n, 0);
  // Interior of a shortest surviving path between two terminals; nullopt
  // style flag through `found`.
  auto find_path = [&](bool& found) {
    found = false;
    std::vector<int> best;
    for (int s = 0; s < n; ++s) {
      if (!term[s]) continue;
      std::vector<int> par(n, -2);
      par[s] = -1;
      std::vector<int> q{s};
      for (std::size_t i = 0; i < q.size() && !found; ++i)
        for (int y : adj[q[i]]) {
          if (dead[y] || par[y] != -2) continue;
          par[y] = q[i];
          if (term[y]) {
            found = true;
            for (int z = q[i]; z != s; z = par[z]) best.push_back(z);
            break;
          }
          q.push_back(y);
        }
      if (found) return best;
    }
    return best;
  };
  auto feasible = [&](auto&& self, int budget) -> bool {
    bool found = false;
    auto path = find_path(found);
    if (!found) return true;
    if (budget == 0) return false;
    for (int v : path) {
      if (forbid.size() && forbid[v]) continue;
      dead[v] = 1;
      bool ok = self(self, budget - 1);
      dead[v] = 0;
      if (ok) return true;
    }
    return false;
  };
  for (int b = 0; b <= kmax; ++b)
    if (feasible(feasible, b)) return b;
  return -1;
}

}  // namespace oracle
