// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// line fails. Every answer is compared against an exhaustive oracle from
// oracles.hpp that shares no code with the library.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>

#include "instances.hpp"
#include "mwc_instances.hpp"
#include "oracles.hpp"
#include "planekern/generate.hpp"
#include "planekern/mwc_kernel.hpp"
#include "planekern/planarization.hpp"
#include "planekern/sparsify.hpp"
#include "planekern/tjoin_oct.hpp"

using namespace pk;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int id, bool ok, const std::string& title, const std::string& detail, const Timer& t) {
  if (!ok) ++failures;
  std::printf("%s %2d %s | %s | %.1fs\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), t.seconds());
  std::fflush(stdout);
}

oracle::Edges edges_of(const PlaneGraph& g) {
  oracle::Edges es;
  for (int e = 0; e < g.m(); ++e) es.emplace_back(g.eu(e), g.ev(e));
  return es;
}

int tjoin_min(const TJoinInstance& inst) {
  if (inst.k < 0) return -1;
  std::vector<char> term(inst.p.g.n(), 0);
  for (int t : inst.terminals) term[t] = 1;
  return oracle::min_tjoin(inst.p.g.n(), edges_of(inst.p.g), inst.p.inA, term, inst.k);
}
bool tjoin_yes(const TJoinInstance& inst) { return tjoin_min(inst) >= 0; }

// Odd cycle transversal answer by subset enumeration on the graph itself.
bool oct_yes(const PlaneGraph& g, int k) {
  auto es = edges_of(g);
  int n = g.n();
  for (std::uint32_t C = 0; C < (1u << n); ++C)
    if (std::popcount(C) <= k && oracle::oct_mask(n, es, C)) return true;
  return false;
}

std::vector<char> paid(const Partitioned& p) {
  std::vector<char> b(p.g.n());
  for (int v = 0; v < p.g.n(); ++v) b[v] = p.is_b(v);
  return b;
}

std::vector<int> boundary_vertices(const PlaneGraph& g) {
  auto w = outer_walk(g);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

std::vector<int> boundary_edges(const PlaneGraph& g) {
  std::vector<int> out;
  for (int e = 0; e < g.m(); ++e)
    if (g.hface[2 * e] == g.outer || g.hface[2 * e + 1] == g.outer) out.push_back(e);
  return out;
}

// Steiner tree bound on every connector built for the reduced instance.
struct SteinerTally {
  long calls = 0;
  long violations = 0;
  void measure(const TJoinInstance& inst) {
    auto red = reduce_exhaustively(inst);
    if (red.verdict == Verdict::answer_no) return;
    auto sp = split_instance(red.instance);
    if (sp.answer_no) return;
    for (const auto& part : sp.parts) {
      auto cb = build_connector(part);
      ++calls;
      if (!cb.answer_no && static_cast<int>(cb.steiner_edges.size()) > cb.steiner_bound) ++violations;
    }
  }
  void measure(const OctKernel& k) {
    for (const auto& p : k.parts) {
      ++calls;
      if (p.steiner_edges > p.steiner_bound) ++violations;
    }
  }
};

SteinerTally steiner;

void criterion_radial_parity() {
  Timer t;
  Rng rng(0xA11);
  int graphs = 0;
  long checks = 0, bad = 0;
  while (graphs < 500) {
    GenConfig cfg;
    cfg.p_delete = rng.real() * 0.7;
    auto g = generate_random_planar(rng.uniform(1, 12), rng.next(), cfg);
    if (!is_connected(g)) continue;
    ++graphs;
    auto inst = oct_to_tjoin(g, g.n());
    auto es = edges_of(g);
    for (std::uint32_t C = 0; C < (1u << g.n()); ++C) {
      std::vector<int> Cv;
      for (int v = 0; v < g.n(); ++v)
        if (C >> v & 1) Cv.push_back(v);
      bad += oracle::oct_mask(g.n(), es, C) != is_tjoin_solution(inst, Cv);
      ++checks;
    }
  }
  report(1, bad == 0 && graphs >= 500, "OCT validity equals radial T-join parity",
         std::to_string(graphs) + " graphs, " + std::to_string(checks) + " subsets, " + std::to_string(bad) +
             " disagreements",
         t);
}

void criterion_oct_kernel() {
  Timer t;
  Rng rng(0xA12);
  int n_inst = 0, bad = 0, kernels = 0, yes = 0;
  while (n_inst < 300) {
    GenConfig cfg;
    cfg.p_delete = 0.2 + 0.6 * rng.real();
    auto g = generate_random_planar(rng.uniform(3, 20), rng.next(), cfg);
    if (!is_connected(g)) continue;
    int k = rng.uniform(0, 3);
    ++n_inst;
    auto inst = oct_to_tjoin(g, k);
    auto ker = kernelize_oct(inst);
    steiner.measure(ker);
    steiner.measure(inst);
    bool a = oct_yes(g, k);
    bad += a != tjoin_yes(ker.kernel);
    yes += a;
    kernels += ker.kind == OctKernel::Kind::kernel;
  }
  report(2, bad == 0, "OCT kernel preserves the answer",
         std::to_string(n_inst) + " instances (" + std::to_string(yes) + " yes, " + std::to_string(kernels) +
             " non-trivial kernels), " + std::to_string(bad) + " mismatches",
         t);
}

void criterion_rule_safety() {
  Timer t;
  Rng rng(0xA13);
  std::map<OctRule, int> fires, bad;
  auto done = [&] {
    for (OctRule r : kOctRules)
      if (fires[r] < 300) return false;
    return true;
  };
  int inst_count = 0;
  const int cap = 60000;
  while (!done() && inst_count < cap) {
    auto inst = testgen::random_tjoin(rng);
    ++inst_count;
    reduce_exhaustively(inst, [&](const TJoinInstance& before, const RuleOutcome& step) {
      OctRule r = step.trace.back().rule;
      if (fires[r] >= 300 && step.verdict != Verdict::answer_no) {
        // Enough evidence for this rule; still count it but skip the oracle.
        ++fires[r];
        return;
      }
      ++fires[r];
      bool b = tjoin_yes(before);
      bool a = step.verdict == Verdict::answer_no ? false : tjoin_yes(step.instance);
      bad[r] += a != b;
    });
    if (inst_count % 4 == 0) steiner.measure(kernelize_oct(inst));
  }
  bool ok = true;
  std::string detail;
  for (OctRule r : kOctRules) {
    ok = ok && fires[r] >= 300 && bad[r] == 0;
    detail += std::string(rule_name(r)) + " " + std::to_string(fires[r]) + "/" + std::to_string(bad[r]) + " ";
  }
  report(3, ok, "per-rule answer preservation (firings/mismatches)",
         detail + "over " + std::to_string(inst_count) + " instances", t);
}

void criterion_sparsifier() {
  Timer t;
  Rng rng(0xA14);
  int bricks = 0, bad = 0, lost_boundary = 0, exact = 0;
  long subsets = 0;
  while (bricks < 100) {
    Partitioned p;
    p.g = random_brick(rng, rng.uniform(5, 14), 10, 0.3 + 0.5 * rng.real());
    if (boundary_edges(p.g).size() > 10) continue;
    p.inA = random_independent_set(rng, p.g, rng.real());
    ++bricks;
    auto r = sparsify(p);
    exact += r.report.size() == 1 && r.report[0].strategy == "exact";
    for (int e : boundary_edges(p.g))
      lost_boundary += !std::binary_search(r.kept_edges.begin(), r.kept_edges.end(), e);
    auto bv = boundary_vertices(p.g);
    oracle::Edges kept;
    for (int e : r.kept_edges) kept.push_back({p.g.eu(e), p.g.ev(e)});
    auto full = oracle::min_cost_all(p.g.n(), edges_of(p.g), paid(p), bv);
    auto small = oracle::min_cost_all(p.g.n(), kept, paid(p), bv);
    for (std::size_t A = 0; A < full.size(); ++A) bad += full[A] != small[A];
    subsets += static_cast<long>(full.size());
  }
  report(4, bad == 0 && lost_boundary == 0, "sparsifier keeps every boundary connector cost",
         std::to_string(bricks) + " bricks (" + std::to_string(exact) + " exact), " + std::to_string(subsets) +
             " subsets, " + std::to_string(bad) + " cost mismatches, " + std::to_string(lost_boundary) +
             " boundary edges lost",
         t);
}

void criterion_connector_dp() {
  Timer t;
  Rng rng(0xA15);
  int bricks = 0, bad = 0;
  long compared = 0;
  for (; bricks < 120; ++bricks) {
    Partitioned p;
    p.g = random_brick(rng, rng.uniform(3, 12), 12, 0.3 + 0.5 * rng.real());
    p.inA = random_independent_set(rng, p.g, rng.real());
    auto bv = boundary_vertices(p.g);
    int k = static_cast<int>(bv.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      if (std::popcount(mask) > 4) continue;
      std::vector<int> A;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) A.push_back(bv[i]);
      auto dp = min_cost_connector(p, A, ConnectorEngine::interval_dp);
      auto ref = oracle::min_cost_size(p.g.n(), edges_of(p.g), paid(p), A);
      auto bf = min_cost_connector(p, A, ConnectorEngine::brute_force);
      bad += dp.cost != ref.first || dp.cost != bf.cost;
      ++compared;
    }
  }
  report(5, bad == 0, "interval DP connector equals brute force",
         std::to_string(bricks) + " bricks, " + std::to_string(compared) + " terminal sets, " +
             std::to_string(bad) + " mismatches",
         t);
}

void criterion_tree_bounds() {
  Timer t;
  Rng rng(0xA16);
  int trees = 0, bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Every edge of a random brick subdivided once; the new vertices are free.
    PlaneGraph b = random_brick(rng, rng.uniform(4, 8), 10, 0.3 + 0.5 * rng.real());
    std::vector<std::pair<int, int>> all;
    for (int e = 0; e < b.m(); ++e) all.push_back({e, 1});
    Partitioned p;
    p.g = subdivide_edges(b, all).graph;
    p.inA.assign(p.g.n(), 1);
    for (int v = 0; v < b.n(); ++v) p.inA[v] = 0;
    auto bv = boundary_vertices(p.g);
    for (int rep = 0; rep < 6; ++rep) {
      auto A = random_subset(rng, static_cast<int>(bv.size()), rng.uniform(2, std::min(5, static_cast<int>(bv.size()))));
      for (int& a : A) a = bv[a];
      auto parts = normalize_to_trees(p, min_cost_connector(p, A));
      for (const auto& part : parts.parts) {
        ++trees;
        bad += !check_cost_bounds(p, part).ok();
      }
    }
  }
  report(6, bad == 0 && trees > 0, "boundary-anchored tree cost and size bounds",
         std::to_string(trees) + " trees, " + std::to_string(bad) + " violations", t);
}

// Criteria 7 and 8 share the instance stream.
void criteria_mwc_kernel() {
  Timer t;
  Rng rng(0xA17);
  int bad = 0, yes = 0, kernels = 0;
  long layer_bad = 0, radial_bad = 0, radial_checks = 0, trees = 0;
  for (int it = 0; it < 300; ++it) {
    auto inst = testgen::random_mwc(rng, 18, 3);
    bool before = testgen::mwc_yes(inst);
    auto kr = kernelize_mwc(inst);
    bad += testgen::mwc_yes(kr.kernel) != before;
    yes += before;
    kernels += kr.kind == MwcKernel::Kind::kernel;
    auto lt = layer_tree(inst.g);
    layer_bad += !check_layer_tree(inst.g, lt).empty();
    auto tr = prepare_and_find_tree(inst);
    layer_bad += tr.layer_violations;
    radial_bad += tr.radial_violations + kr.radial_violations;
    radial_checks += tr.radial_checks;
    trees += !tr.answer_no && !tr.trivial_yes;
  }
  // Deeper layer structure than n <= 18 allows, for the invariants only.
  for (int it = 0; it < 60; ++it) {
    auto inst = testgen::nested_rings(rng, rng.uniform(3, 10), rng.uniform(3, 5), rng.uniform(2, 3));
    layer_bad += !check_layer_tree(inst.g, layer_tree(inst.g)).empty();
    auto tr = prepare_and_find_tree(inst);
    layer_bad += tr.layer_violations;
    radial_bad += tr.radial_violations;
    radial_checks += tr.radial_checks;
    trees += !tr.answer_no && !tr.trivial_yes;
  }
  report(7, bad == 0, "multiway cut kernel preserves the answer",
         "300 instances (" + std::to_string(yes) + " yes, " + std::to_string(kernels) + " non-trivial kernels), " +
             std::to_string(bad) + " mismatches",
         t);
  report(8, layer_bad == 0 && radial_bad == 0, "layer tree invariants and radial distance bound",
         "360 instances, " + std::to_string(trees) + " trees, " + std::to_string(radial_checks) +
             " radial checks, " + std::to_string(layer_bad) + " layer violations, " + std::to_string(radial_bad) +
             " radial violations",
         t);
}

void criterion_lp_preprocess() {
  Timer t;
  Rng rng(0xA19);
  int bad = 0, post_bad = 0, kept = 0;
  for (int it = 0; it < 300; ++it) {
    auto inst = testgen::random_mwc(rng, 18, 3);
    bool before = testgen::mwc_yes(inst);
    auto r = lp_preprocess(inst);
    bool after = r.answer_no ? false : testgen::mwc_yes(r.inst);
    bad += before != after;
    if (!r.answer_no) {
      ++kept;
      post_bad += static_cast<int>(r.inst.terminals.size()) > 2 * r.inst.k;
      for (int tt : r.inst.terminals) post_bad += r.inst.g.degree(tt) > r.inst.k;
    }
  }
  report(9, bad == 0 && post_bad == 0, "preprocessing postconditions and answer preservation",
         "300 instances, " + std::to_string(kept) + " not rejected, " + std::to_string(bad) + " mismatches, " +
             std::to_string(post_bad) + " postcondition violations",
         t);
}

void criterion_grid_gadget() {
  Timer t;
  Rng rng(0xA1A);
  int built = 0, fwd_bad = 0, rev_bad = 0;
  long fwd = 0, rev = 0;
  for (int it = 0; it < 2000 && built < 50; ++it) {
    auto inst = testgen::random_mwc(rng, 12, 2);
    if (inst.k == 0) inst.k = 1;
    auto isT = testgen::term_mask(inst);
    inst.forbidden.assign(inst.g.n(), 0);
    auto adj = inst.g.adjacency();
    std::vector<char> blocked(inst.g.n(), 0);
    int cnt = 0;
    for (int v = 0; v < inst.g.n(); ++v)
      if (!isT[v] && !blocked[v] && rng.coin(0.3)) {
        inst.forbidden[v] = 1;
        ++cnt;
        for (int w : adj[v]) blocked[w] = 1;
      }
    if (cnt == 0) continue;
    ++built;
    auto gr = replace_by_grids(inst);
    std::vector<int> back(inst.g.n(), -1);
    for (int v = 0; v < gr.out.g.n(); ++v)
      if (gr.vmap[v] >= 0) back[gr.vmap[v]] = v;
    // Forward over every allowed set of size <= k.
    std::vector<int> allowed;
    for (int v = 0; v < inst.g.n(); ++v)
      if (!isT[v] && !inst.forbidden[v]) allowed.push_back(v);
    int na = static_cast<int>(allowed.size());
    for (std::uint32_t mask = 0; mask < (1u << na); ++mask) {
      if (std::popcount(mask) > inst.k) continue;
      std::vector<int> X, Y;
      for (int i = 0; i < na; ++i)
        if (mask >> i & 1) {
          X.push_back(allowed[i]);
          Y.push_back(back[allowed[i]]);
        }
      if (!is_mwc_solution(inst, X)) continue;
      ++fwd;
      fwd_bad += !is_mwc_solution(gr.out, Y);
    }
    // Reverse over every set of size <= k in the gadget graph, gadget
    // vertices included: its old vertices must solve the input.
    const auto& G3 = gr.out;
    auto isT3 = testgen::term_mask(G3);
    std::vector<int> cand;
    for (int v = 0; v < G3.g.n(); ++v)
      if (!isT3[v]) cand.push_back(v);
    int nc = static_cast<int>(cand.size());
    auto check = [&](const std::vector<int>& Y) {
      if (!is_mwc_solution(G3, Y)) return;
      ++rev;
      std::vector<int> Xp;
      for (int v : Y)
        if (gr.vmap[v] >= 0) Xp.push_back(gr.vmap[v]);
      rev_bad += !is_mwc_solution(inst, Xp);
    };
    check({});
    for (int a = 0; a < nc; ++a) {
      check({cand[a]});
      if (inst.k >= 2)
        for (int b = a + 1; b < nc; ++b) check({cand[a], cand[b]});
    }
  }
  report(10, built == 50 && fwd_bad == 0 && rev_bad == 0, "grid gadget transfers solutions both ways",
         std::to_string(built) + " instances, " + std::to_string(fwd) + " forward and " + std::to_string(rev) +
             " reverse solutions, " + std::to_string(fwd_bad + rev_bad) + " failures",
         t);
}

void criterion_reductions() {
  Timer t;
  bool h0 = !is_planar(build_h0());
  Rng rng(0xA1B);
  int dis_bad = 0, plain_bad = 0, dis = 0, plain = 0;
  for (; dis < 250; ++dis) {
    auto inst = testgen::random_mwc(rng, 10, 2);
    auto r = reduce_to_disjoint_vp(inst);
    bool vp = solve_vp_bruteforce(r.out.g, r.out.k, r.out.undeletable, VpGuard{200, 2}).has_value();
    dis_bad += vp != testgen::mwc_yes(inst);
  }
  for (; plain < 200; ++plain) {
    auto inst = testgen::random_mwc(rng, 8, 1);
    auto r = reduce_to_vp(inst);
    bool vp = solve_vp_bruteforce(r.out.g, r.out.k, {}, VpGuard{2000, 1}).has_value();
    plain_bad += vp != testgen::mwc_yes(inst);
  }
  report(11, h0 && dis_bad == 0 && plain_bad == 0, "planarization reductions",
         std::string("H0 ") + (h0 ? "nonplanar" : "PLANAR") + ", disjoint " + std::to_string(dis) + " instances " +
             std::to_string(dis_bad) + " mismatches, plain " + std::to_string(plain) + " instances " +
             std::to_string(plain_bad) + " mismatches",
         t);
}

}  // namespace

int main() {
  Timer total;
  criterion_radial_parity();
  criterion_oct_kernel();
  criterion_rule_safety();
  criterion_sparsifier();
  criterion_connector_dp();
  criterion_tree_bounds();
  criteria_mwc_kernel();
  criterion_lp_preprocess();
  criterion_grid_gadget();
  criterion_reductions();
  Timer t12;
  report(12, steiner.violations == 0 && steiner.calls > 0, "Steiner tree size bound",
         std::to_string(steiner.calls) + " connector builds, " + std::to_string(steiner.violations) + " violations",
         t12);
  std::printf("%s: %d failing criteria, %.1fs total\n", failures ? "FAIL" : "PASS", failures, total.seconds());
  return failures ? 1 : 0;
}
