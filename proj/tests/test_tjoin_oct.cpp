#include <doctest.h>

#include <map>

#include "instances.hpp"
#include "oracles.hpp"
#include "planekern/generate.hpp"
#include "planekern/tjoin_oct.hpp"

using namespace pk;

namespace {

oracle::Edges edges_of(const PlaneGraph& g) {
  oracle::Edges es;
  for (int e = 0; e < g.m(); ++e) es.emplace_back(g.eu(e), g.ev(e));
  return es;
}

// Oracle answer: minimum solution size, or -1 when none fits in k.
int oracle_min(const TJoinInstance& inst) {
  if (inst.k < 0) return -1;
  std::vector<char> term(inst.p.g.n(), 0);
  for (int t : inst.terminals) term[t] = 1;
  return oracle::min_tjoin(inst.p.g.n(), edges_of(inst.p.g), inst.p.inA, term, inst.k);
}
bool oracle_yes(const TJoinInstance& inst) { return oracle_min(inst) >= 0; }

TJoinInstance build(int n, const std::vector<std::pair<int, int>>& es, const std::vector<int>& freev,
                    std::vector<int> T, int k) {
  testgen::Abstract a;
  for (int v = 0; v < n; ++v) a.add(false);
  for (int v : freev) a.inA[v] = 1;
  for (int t : T) a.term[t] = 1;
  for (auto [x, y] : es) a.link(x, y);
  a.k = k;
  return testgen::realize(a);
}

PlaneGraph triangle() { return make_cycle(3); }

PlaneGraph k4() { return *embed(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// All inclusion-minimal solutions of size <= k.
std::vector<std::vector<int>> minimal_solutions(const TJoinInstance& inst) {
  std::vector<int> B;
  for (int v = 0; v < inst.p.g.n(); ++v)
    if (inst.p.is_b(v)) B.push_back(v);
  std::vector<std::uint32_t> sols;
  int nb = static_cast<int>(B.size());
  REQUIRE(nb <= 24);
  for (std::uint32_t m = 0; m < (1u << nb); ++m) {
    if (__builtin_popcount(m) > inst.k) continue;
    std::vector<int> C;
    for (int i = 0; i < nb; ++i)
      if (m >> i & 1) C.push_back(B[i]);
    if (is_tjoin_solution(inst, C)) sols.push_back(m);
  }
  std::vector<std::vector<int>> out;
  for (auto m : sols) {
    bool minimal = std::none_of(sols.begin(), sols.end(), [&](std::uint32_t o) { return o != m && (o & m) == o; });
    if (!minimal) continue;
    std::vector<int> C;
    for (int i = 0; i < nb; ++i)
      if (m >> i & 1) C.push_back(B[i]);
    out.push_back(C);
  }
  return out;
}

}  // namespace

TEST_CASE("oct_to_tjoin builds the radial instance") {
  auto tri = oct_to_tjoin(triangle(), 1);
  CHECK(tri.terminals.size() == 2);
  CHECK(tri.k == 1);
  for (int v = 0; v < 3; ++v) CHECK(tri.p.is_b(v));
  CHECK_NOTHROW(check_tjoin_instance(tri));

  auto sq = oct_to_tjoin(make_cycle(4), 0);
  CHECK(sq.terminals.empty());
  auto grid = oct_to_tjoin(make_grid(3, 4), 0);
  CHECK(grid.terminals.empty());

  auto kk = oct_to_tjoin(k4(), 1);
  CHECK(kk.terminals.size() == 4);

  PlaneGraph two = *embed(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(oct_to_tjoin(two, 1), GraphError);
}

TEST_CASE("solutions on small instances") {
  auto tri = oct_to_tjoin(triangle(), 1);
  for (int v = 0; v < 3; ++v) CHECK(is_tjoin_solution(tri, {v}));
  CHECK_FALSE(is_tjoin_solution(tri, {}));
  CHECK_FALSE(is_tjoin_solution(tri, {3}));  // face vertex, not paid

  TJoinInstance empty = oct_to_tjoin(make_cycle(4), 0);
  CHECK(is_tjoin_solution(empty, {}));

  auto a = oct_to_tjoin(k4(), 1);
  CHECK_FALSE(solve_tjoin_bruteforce(a).has_value());
  a.k = 2;
  auto s = solve_tjoin_bruteforce(a);
  REQUIRE(s.has_value());
  CHECK(s->size() == 2);
  CHECK(is_odd_cycle_transversal(k4(), *s));

  CHECK_FALSE(oracle_yes(canonical_no()));
  CHECK(oracle_yes(canonical_yes()));
  CHECK_NOTHROW(check_tjoin_instance(canonical_no()));
}

TEST_CASE("radial parity matches odd cycle transversals") {
  Rng rng(9001);
  int graphs = 0;
  long checks = 0;
  for (int it = 0; it < 150; ++it) {
    int n = rng.uniform(1, 10);
    GenConfig cfg;
    cfg.p_delete = rng.real() * 0.7;
    PlaneGraph g = generate_random_planar(n, rng.next(), cfg);
    if (!is_connected(g)) continue;
    ++graphs;
    auto inst = oct_to_tjoin(g, g.n());
    auto es = edges_of(g);
    for (std::uint32_t C = 0; C < (1u << g.n()); ++C) {
      std::vector<int> Cv;
      for (int v = 0; v < g.n(); ++v)
        if (C >> v & 1) Cv.push_back(v);
      bool oct = oracle::oct_mask(g.n(), es, C);
      REQUIRE(oct == is_tjoin_solution(inst, Cv));
      REQUIRE(oct == is_odd_cycle_transversal(g, Cv));
      ++checks;
    }
  }
  CHECK(graphs > 100);
  CHECK(checks > 10000);
}

TEST_CASE("twins keep two minus parity") {
  for (int x : {3, 4, 5}) {
    // b0, b1 paid; x free terminals adjacent to both
    std::vector<std::pair<int, int>> es;
    std::vector<int> freev, T;
    for (int i = 0; i < x; ++i) {
      es.emplace_back(0, 2 + i);
      es.emplace_back(1, 2 + i);
      freev.push_back(2 + i);
      T.push_back(2 + i);
    }
    auto inst = build(2 + x, es, freev, T, 2);
    auto o = apply_rule(inst, OctRule::twins);
    REQUIRE(o.verdict == Verdict::reduced);
    CHECK(o.instance.terminals.size() == std::size_t(2 - x % 2));
    CHECK(o.trace.size() == 1);
    CHECK(o.trace[0].rule == OctRule::twins);
    CHECK(oracle_yes(inst) == oracle_yes(o.instance));
  }
  auto pair = build(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}}, {2, 3}, {2, 3}, 1);
  CHECK(apply_rule(pair, OctRule::twins).verdict == Verdict::unchanged);
}

TEST_CASE("no guard and terminal count") {
  auto inst = oct_to_tjoin(triangle(), -1);
  CHECK(apply_rule(inst, OctRule::no_guard).verdict == Verdict::answer_no);
  inst.k = 1;
  CHECK(apply_rule(inst, OctRule::no_guard).verdict == Verdict::unchanged);

  auto lone = build(3, {{0, 1}, {1, 2}}, {0, 2}, {0}, 3);
  CHECK(apply_rule(lone, OctRule::no_guard).verdict == Verdict::answer_no);

  auto kk = oct_to_tjoin(k4(), 0);
  CHECK(apply_rule(kk, OctRule::terminal_count).verdict == Verdict::answer_no);
  kk.k = 1;
  CHECK(apply_rule(kk, OctRule::terminal_count).verdict == Verdict::unchanged);
}

TEST_CASE("high degree contracts the star") {
  // hub 0 with 7 terminal leaves, k = 1
  std::vector<std::pair<int, int>> es;
  std::vector<int> freev, T;
  for (int i = 1; i <= 7; ++i) {
    es.emplace_back(0, i);
    freev.push_back(i);
    T.push_back(i);
  }
  auto inst = build(8, es, freev, T, 1);
  auto o = apply_rule(inst, OctRule::high_degree);
  REQUIRE(o.verdict == Verdict::reduced);
  CHECK(o.instance.k == 0);
  CHECK(o.instance.p.g.n() == 1);
  CHECK(o.instance.terminals.size() == 1);  // 7 is odd
  inst.k = 2;
  CHECK(apply_rule(inst, OctRule::high_degree).verdict == Verdict::unchanged);
}

TEST_CASE("contraction updates terminals by parity") {
  // path t0 - b1 - t2 - b3 - t4 - b5 - a6, contract at b3
  auto inst = build(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}, {0, 2, 4, 6}, {0, 2, 4}, 2);
  auto c = contract_at(inst, 3);
  CHECK(c.k == 1);
  CHECK(c.p.g.n() == 5);
  CHECK(c.terminals.size() == 1);  // t0 stays; t2, t4 cancel
  CHECK_NOTHROW(check_tjoin_instance(c));
  auto c2 = contract_at(inst, 5);  // one terminal neighbour: merged vertex is a terminal
  CHECK(c2.terminals.size() == 3);
  CHECK(c2.p.inA[c2.terminals.back()]);
}

TEST_CASE("empty and dominated components") {
  // u=0, v=1 share terminals 2,3; behind v: free 4 and paid 5 (no terminal)
  auto inst = build(6, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {1, 4}, {4, 5}}, {2, 3, 4}, {2, 3}, 1);
  auto o = apply_rule(inst, OctRule::empty_comp);
  REQUIRE(o.verdict == Verdict::reduced);
  CHECK(o.instance.p.g.n() == 4);
  CHECK(oracle_yes(inst) == oracle_yes(o.instance));

  // same with 4 a terminal adjacent only to v: dominated, contract at v
  auto dom = build(7, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {1, 4}, {4, 5}, {0, 6}}, {2, 3, 4, 6}, {2, 3, 4, 6}, 2);
  CHECK(apply_rule(dom, OctRule::empty_comp).verdict == Verdict::unchanged);
  auto d = apply_rule(dom, OctRule::dominated_comp);
  REQUIRE(d.verdict == Verdict::reduced);
  CHECK(d.instance.k == 1);
  CHECK(oracle_yes(dom) == oracle_yes(d.instance));
}

TEST_CASE("rules preserve the answer on random instances") {
  Rng rng(424242);
  std::map<OctRule, int> fires, checked;
  int inst_count = 0;
  for (int it = 0; it < 400; ++it) {
    auto inst = testgen::random_tjoin(rng);
    ++inst_count;
    reduce_exhaustively(inst, [&](const TJoinInstance& before, const RuleOutcome& step) {
      OctRule r = step.trace.back().rule;
      ++fires[r];
      bool b = oracle_yes(before);
      bool a = step.verdict == Verdict::answer_no ? false : oracle_yes(step.instance);
      CHECK_MESSAGE(a == b, rule_name(r));
      if (step.verdict == Verdict::reduced) {
        CHECK((step.instance.p.g.n() < before.p.g.n() || step.instance.k < before.k));
        CHECK_NOTHROW(check_tjoin_instance(step.instance));
      }
      ++checked[r];
    });
  }
  for (OctRule r : kOctRules) {
    MESSAGE(std::string(rule_name(r)), " fired ", fires[r]);
    CHECK(fires[r] >= 10);
  }
}

TEST_CASE("state after exhaustive reduction") {
  Rng rng(77);
  int done = 0;
  for (int it = 0; it < 200; ++it) {
    auto inst = testgen::random_tjoin(rng);
    auto o = reduce_exhaustively(inst);
    if (o.verdict == Verdict::answer_no) {
      CHECK_FALSE(oracle_yes(inst));
      continue;
    }
    ++done;
    const auto& r = o.instance;
    auto adj = r.p.g.adjacency();
    std::vector<char> isT(r.p.g.n(), 0);
    for (int t : r.terminals) isT[t] = 1;
    for (int v = 0; v < r.p.g.n(); ++v)
      if (r.p.is_b(v)) {
        int c = 0;
        for (int x : adj[v]) c += isT[x];
        CHECK(c <= 6 * r.k);
      }
    std::map<std::vector<int>, int> cls;
    for (int t : r.terminals) ++cls[adj[t]];
    for (auto& [nb, c] : cls) CHECK(c <= 2);
    CHECK(static_cast<long>(r.terminals.size()) <= 6L * r.k * r.k);
    CHECK(oracle_yes(inst) == oracle_yes(r));
  }
  CHECK(done > 50);
}

TEST_CASE("minimal solutions stay close to terminals") {
  Rng rng(3131);
  int sols = 0;
  for (int it = 0; it < 300 && sols < 300; ++it) {
    auto inst = testgen::random_tjoin(rng, 6, 3);
    if (inst.k < 0) continue;
    int nb = 0;
    for (int v = 0; v < inst.p.g.n(); ++v) nb += inst.p.is_b(v);
    if (nb > 18) continue;
    const auto& g = inst.p.g;
    auto adj = g.adjacency();
    for (const auto& C : minimal_solutions(inst)) {
      ++sols;
      std::vector<char> alive(inst.p.inA.begin(), inst.p.inA.end());
      for (int v : C) alive[v] = 1;
      auto d = bfs(adj, inst.terminals, alive);
      for (int v : C) {
        CHECK(d[v] >= 0);
        CHECK(d[v] <= inst.k + 1);
      }
      for (int t : inst.terminals) {
        bool has = std::any_of(adj[t].begin(), adj[t].end(),
                               [&](int x) { return std::binary_search(C.begin(), C.end(), x); });
        CHECK(has);
      }
    }
  }
  CHECK(sols >= 100);
}

TEST_CASE("split into far parts") {
  // path of 17 vertices, free at even positions; terminals 0,2 and 14,16
  std::vector<std::pair<int, int>> es;
  std::vector<int> freev;
  for (int i = 0; i < 16; ++i) es.emplace_back(i, i + 1);
  for (int i = 0; i <= 16; i += 2) freev.push_back(i);
  auto inst = build(17, es, freev, {0, 2, 14, 16}, 2);
  auto sp = split_instance(inst);
  REQUIRE_FALSE(sp.answer_no);
  CHECK(sp.parts.size() == 2);
  for (auto& p : sp.parts) CHECK(p.terminals.size() == 2);
  inst.k = 1;
  CHECK(split_instance(inst).answer_no);

  auto near = build(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 2, 4}, {0, 4}, 1);
  auto one = split_instance(near);
  REQUIRE_FALSE(one.answer_no);
  CHECK(one.parts.size() == 1);
}

TEST_CASE("split parts restrict and recombine solutions") {
  Rng rng(5150);
  int tested = 0;
  for (int it = 0; it < 300; ++it) {
    auto inst = testgen::random_tjoin(rng);
    auto red = reduce_exhaustively(inst);
    if (red.verdict == Verdict::answer_no || red.instance.terminals.empty()) continue;
    const auto& r = red.instance;
    auto sp = split_instance(r);
    if (sp.answer_no) {
      CHECK_FALSE(oracle_yes(r));
      continue;
    }
    ++tested;
    std::size_t tcount = 0;
    int kneed = 0;
    bool all_ok = true;
    for (std::size_t i = 0; i < sp.parts.size(); ++i) {
      const auto& part = sp.parts[i];
      tcount += part.terminals.size();
      auto d = bfs(part.p.g.adjacency(), part.terminals);
      for (int v = 0; v < part.p.g.n(); ++v) CHECK((d[v] >= 0 && d[v] <= r.k + 2));
      int m = oracle_min(part);
      if (m < 0) all_ok = false;
      else kneed += m;
    }
    CHECK(tcount == r.terminals.size());
    bool yes = oracle_yes(r);
    CHECK(yes == (all_ok && kneed <= r.k));
    if (auto C = solve_tjoin_bruteforce(r)) {
      for (std::size_t i = 0; i < sp.parts.size(); ++i) {
        std::vector<int> back(r.p.g.n(), -1);
        for (int v = 0; v < sp.parts[i].p.g.n(); ++v) back[sp.vmap[i][v]] = v;
        std::vector<int> Ci;
        for (int v : *C)
          if (back[v] >= 0) Ci.push_back(back[v]);
        TJoinInstance pi = sp.parts[i];
        pi.k = static_cast<int>(Ci.size());
        CHECK(is_tjoin_solution(pi, Ci));
      }
    }
  }
  CHECK(tested > 50);
}

TEST_CASE("connector sets") {
  auto star = build(3, {{0, 1}, {1, 2}}, {0, 2}, {0, 2}, 1);
  auto cb = build_connector(star);
  REQUIRE_FALSE(cb.answer_no);
  CHECK(cb.t_prime.size() == 1);
  CHECK(cb.steiner_edges.empty());
  CHECK(cb.tree.size() == 2);
  CHECK(cb.vertices == std::vector<int>{0, 1, 2});

  auto odd = build(3, {{0, 1}, {1, 2}}, {0, 2}, {0}, 1);
  CHECK(build_connector(odd).answer_no);

  // four terminals far apart on a path, three representatives, k = 2:
  // rejected, bound still reported as (2K+1)(|T'|-1) with K = 4
  std::vector<std::pair<int, int>> es;
  std::vector<int> freev;
  for (int i = 0; i < 12; ++i) es.emplace_back(i, i + 1);
  for (int i = 0; i <= 12; i += 2) freev.push_back(i);
  auto far = build(13, es, freev, {0, 4, 8, 12}, 2);
  auto fb = build_connector(far);
  CHECK(fb.answer_no);
  CHECK(fb.t_prime.size() == 4);
  auto three = build(13, es, freev, {0, 2, 6, 12}, 2);
  auto tb = build_connector(three);
  CHECK(tb.t_prime.size() == 3);
  CHECK(tb.steiner_bound == 18);

  Rng rng(8080);
  int built = 0;
  for (int it = 0; it < 300; ++it) {
    auto inst = testgen::random_tjoin(rng, 8, 3);
    auto red = reduce_exhaustively(inst);
    if (red.verdict == Verdict::answer_no || red.instance.terminals.empty()) continue;
    auto sp = split_instance(red.instance);
    if (sp.answer_no) continue;
    for (const auto& part : sp.parts) {
      auto c = build_connector(part);
      if (c.answer_no) continue;
      ++built;
      CHECK(static_cast<int>(c.steiner_edges.size()) <= c.steiner_bound);
      std::vector<char> in(part.p.g.n(), 0);
      for (int v : c.vertices) in[v] = 1;
      for (int t : part.terminals) CHECK(in[t]);
      CHECK(c.tree.size() + 1 == c.vertices.size());
      for (int e : c.tree) CHECK((in[part.p.g.eu(e)] && in[part.p.g.ev(e)]));
      // neighbourhoods of representatives are pairwise disjoint
      auto adj = part.p.g.adjacency();
      std::vector<int> owner(part.p.g.n(), -1);
      for (int t : c.t_prime)
        for (int b : adj[t]) {
          CHECK(owner[b] < 0);
          owner[b] = t;
        }
    }
  }
  CHECK(built > 30);
}

TEST_CASE("kernel trivial outcomes") {
  auto bip = oct_to_tjoin(make_grid(3, 3), 1);
  auto y = kernelize_oct(bip);
  CHECK(y.kind == OctKernel::Kind::trivial_yes);
  CHECK(oracle_yes(y.kernel));

  auto kk = oct_to_tjoin(k4(), 1);
  auto n = kernelize_oct(kk);
  CHECK_FALSE(oracle_yes(n.kernel));
  kk.k = 0;
  auto n0 = kernelize_oct(kk);
  CHECK(n0.kind == OctKernel::Kind::trivial_no);
  CHECK_FALSE(n0.trace.empty());

  // many triangles with k = 1: too many terminals once degrees are bounded
  auto w = oct_to_tjoin(make_wheel(7), 1);
  auto wk = kernelize_oct(w);
  CHECK(wk.kind == OctKernel::Kind::trivial_no);
}

TEST_CASE("kernel preserves the answer") {
  Rng rng(1234);
  int kernels = 0, yes = 0;
  for (int it = 0; it < 120; ++it) {
    int n = rng.uniform(3, 14);
    GenConfig cfg;
    cfg.p_delete = 0.3 + rng.real() * 0.5;
    PlaneGraph g = generate_random_planar(n, rng.next(), cfg);
    if (!is_connected(g)) continue;
    auto inst = oct_to_tjoin(g, rng.uniform(1, 3));
    auto ker = kernelize_oct(inst);
    CHECK_NOTHROW(check_tjoin_instance(ker.kernel));
    bool a = oracle_yes(inst);
    CHECK(a == oracle_yes(ker.kernel));
    kernels += ker.kind == OctKernel::Kind::kernel;
    yes += a;
    for (const auto& p : ker.parts) CHECK(p.steiner_edges <= p.steiner_bound);
  }
  for (int it = 0; it < 120; ++it) {
    auto inst = testgen::random_tjoin(rng);
    auto ker = kernelize_oct(inst);
    CHECK(oracle_yes(inst) == oracle_yes(ker.kernel));
    kernels += ker.kind == OctKernel::Kind::kernel;
  }
  MESSAGE("non-trivial kernels ", kernels, ", yes instances ", yes);
  CHECK(kernels > 20);
}
