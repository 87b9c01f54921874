#include "planekern/harness.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <exception>
#include <thread>

#include "planekern/generate.hpp"

namespace pk {

namespace {

std::vector<char> mask(int n, const std::optional<std::vector<int>>& xs) {
  std::vector<char> m(n, 0);
  if (xs)
    for (int v : *xs) m.at(v) = 1;
  return m;
}

std::vector<int> members(const std::vector<char>& m) {
  std::vector<int> xs;
  for (int v = 0; v < static_cast<int>(m.size()); ++v)
    if (m[v]) xs.push_back(v);
  return xs;
}

double subsets_up_to(int n, int k) {
  double total = 0, c = 1;
  for (int i = 0; i <= std::min(n, k); ++i) {
    total += c;
    c = c * (n - i) / (i + 1);
  }
  return total;
}

void require_guard(int candidates, int k, const OracleGuard& guard, const char* what) {
  if (guard.override_guard) return;
  double s = subsets_up_to(candidates, k);
  if (s > guard.max_subsets)
    throw GuardError(std::string(what) + ": " + std::to_string(candidates) + " candidates with k=" +
                     std::to_string(k) + " exceed the enumeration guard; pass --guard-override");
}

// Re-index the annotations of `inst` onto a surgery result.
Instance remap(const Instance& inst, PlaneGraph g, const std::vector<int>& vmap) {
  std::vector<int> to_new(inst.g.n(), -1);
  for (int v = 0; v < static_cast<int>(vmap.size()); ++v) to_new[vmap[v]] = v;
  auto move = [&](const std::optional<std::vector<int>>& xs) -> std::optional<std::vector<int>> {
    if (!xs) return std::nullopt;
    std::vector<int> out;
    for (int v : *xs)
      if (to_new[v] >= 0) out.push_back(to_new[v]);
    std::sort(out.begin(), out.end());
    return out;
  };
  Instance r;
  r.g = std::move(g);
  r.partA = move(inst.partA);
  r.terminals = move(inst.terminals);
  r.forbidden = move(inst.forbidden);
  r.k = inst.k;
  return r;
}

}  // namespace

Problem infer_problem(const Instance& inst) {
  if (inst.partA) return Problem::tjoin;
  if (inst.terminals) return Problem::mwc;
  return Problem::oct;
}

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::oct: return "oct";
    case Problem::tjoin: return "tjoin";
    case Problem::mwc: return "mwc";
  }
  return "?";
}

TJoinInstance to_tjoin(const Instance& inst) {
  TJoinInstance t;
  t.p.g = inst.g;
  t.p.inA = mask(inst.g.n(), inst.partA);
  t.terminals = inst.terminals.value_or(std::vector<int>{});
  std::sort(t.terminals.begin(), t.terminals.end());
  t.k = inst.k.value_or(0);
  check_tjoin_instance(t);
  return t;
}

Instance from_tjoin(const TJoinInstance& t) {
  Instance inst;
  inst.g = t.p.g;
  inst.partA = members(t.p.inA);
  inst.terminals = t.terminals;
  inst.k = t.k;
  return inst;
}

MwcInstance to_mwc(const Instance& inst) {
  MwcInstance m;
  m.g = inst.g;
  m.terminals = inst.terminals.value_or(std::vector<int>{});
  std::sort(m.terminals.begin(), m.terminals.end());
  m.k = inst.k.value_or(0);
  if (inst.forbidden && !inst.forbidden->empty()) m.forbidden = mask(inst.g.n(), inst.forbidden);
  check_mwc_instance(m);
  return m;
}

Instance from_mwc(const MwcInstance& m) {
  Instance inst;
  inst.g = m.g;
  inst.terminals = m.terminals;
  inst.k = m.k;
  if (std::count(m.forbidden.begin(), m.forbidden.end(), 1) > 0) inst.forbidden = members(m.forbidden);
  return inst;
}

GraphStats graph_stats(const PlaneGraph& g) {
  GraphStats s;
  s.n = g.n();
  s.m = g.m();
  s.faces = g.nfaces;
  for (int f = 0; f < g.nfaces; ++f) s.odd_faces += g.face_length(f) % 2;
  for (int l : outerplanarity_layers(g)) s.layers = std::max(s.layers, l);
  components(g, &s.components);
  return s;
}

std::optional<std::vector<int>> solve_oct_exact(const PlaneGraph& g, int k, const OracleGuard& guard) {
  if (k < 0) return std::nullopt;
  int n = g.n();
  require_guard(n, k, guard, "odd cycle transversal oracle");
  for (int s = 0; s <= std::min(k, n); ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      if (is_odd_cycle_transversal(g, idx)) return idx;
      int i = s - 1;
      while (i >= 0 && idx[i] == n - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<int>> solve_tjoin_exact(const TJoinInstance& t, const OracleGuard& guard) {
  if (t.k < 0) return std::nullopt;
  int paid = 0;
  for (char a : t.p.inA) paid += !a;
  require_guard(paid, t.k, guard, "T-join oracle");
  return solve_tjoin_bruteforce(t);
}

std::optional<std::vector<int>> solve_mwc_exact(const MwcInstance& m, const OracleGuard& guard) {
  if (m.k < 0) return std::nullopt;
  int allowed = 0;
  for (int v = 0; v < m.g.n(); ++v)
    allowed += !m.is_forbidden(v) && !std::binary_search(m.terminals.begin(), m.terminals.end(), v);
  if (subsets_up_to(allowed, m.k) <= guard.max_subsets) return solve_mwc_bruteforce(m);
  return solve_mwc_branching(m);
}

FuzzTarget parse_target(const std::string& s) {
  if (s == "oct") return FuzzTarget::oct;
  if (s == "mwc") return FuzzTarget::mwc;
  if (s == "vp-disjoint") return FuzzTarget::vp_disjoint;
  if (s == "vp-plain") return FuzzTarget::vp_plain;
  throw GraphError("unknown fuzz target '" + s + "' (oct, mwc, vp-disjoint, vp-plain)");
}

const char* target_name(FuzzTarget t) {
  switch (t) {
    case FuzzTarget::oct: return "oct";
    case FuzzTarget::mwc: return "mwc";
    case FuzzTarget::vp_disjoint: return "vp-disjoint";
    case FuzzTarget::vp_plain: return "vp-plain";
  }
  return "?";
}

Range parse_range(const std::string& s) {
  auto num = [&](const std::string& x) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(x, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (x.empty() || pos != x.size()) throw GraphError("bad range '" + s + "' (expected a:b)");
    return v;
  };
  auto c = s.find(':');
  Range r;
  if (c == std::string::npos) {
    r.lo = r.hi = num(s);
  } else {
    r.lo = num(s.substr(0, c));
    r.hi = num(s.substr(c + 1));
  }
  if (r.lo > r.hi || r.lo < 0) throw GraphError("bad range '" + s + "'");
  return r;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  Rng r(seed ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(trial) + 1)));
  return r.next();
}

Instance random_trial_instance(const FuzzConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  int n = rng.uniform(std::max(1, cfg.n.lo), std::max(1, cfg.n.hi));
  GenConfig gc;
  gc.p_delete = 0.2 + 0.5 * rng.real();
  Instance inst;
  inst.g = generate_random_planar(n, rng.next(), gc);
  inst.k = rng.uniform(cfg.k.lo, cfg.k.hi);
  if (cfg.target != FuzzTarget::oct) {
    int gn = inst.g.n();
    // Uniform over vertices, skipping neighbours of terminals already
    // placed: adjacent terminals only ever give trivial NO instances.
    int nt = gn < 2 ? gn : rng.uniform(2, std::min(5, gn));
    std::vector<int> order(gn);
    for (int v = 0; v < gn; ++v) order[v] = v;
    for (int i = gn - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(0, i)]);
    auto adj = inst.g.adjacency();
    std::vector<char> blocked(gn, 0);
    std::vector<int> T;
    for (int v : order) {
      if (static_cast<int>(T.size()) == nt) break;
      if (blocked[v]) continue;
      T.push_back(v);
      for (int w : adj[v]) blocked[w] = 1;
    }
    if (gn >= 2 && rng.coin(0.5)) {
      // Leaf mode: the chosen vertices get a fresh terminal leaf each,
      // sometimes joined to a neighbour too.
      std::vector<std::pair<int, int>> es;
      for (int e = 0; e < inst.g.m(); ++e) es.push_back({inst.g.eu(e), inst.g.ev(e)});
      int n2 = gn;
      for (int& a : T) {
        es.push_back({a, n2});
        if (!adj[a].empty() && rng.coin(0.5)) es.push_back({adj[a][rng.uniform(0, static_cast<int>(adj[a].size()) - 1)], n2});
        a = n2++;
      }
      if (auto g2 = embed(n2, es)) inst.g = std::move(*g2);
      else T.clear();
    }
    std::sort(T.begin(), T.end());
    inst.terminals = T;
  }
  return inst;
}

TrialCheck check_trial(FuzzTarget target, const Instance& inst, const FuzzConfig& cfg) {
  TrialCheck c;
  c.in_n = inst.g.n();
  OracleGuard guard;
  guard.override_guard = cfg.guard_override;
  auto vp_guard = cfg.guard_override ? VpGuard{1 << 20, 1 << 20} : VpGuard{};
  auto vp = [&](const SimpleGraph& g, int k, const std::vector<char>& und) {
    c.out_n = g.n;
    c.out_m = static_cast<int>(g.edges.size());
    c.out_k = k;
    try {
      return solve_vp_bruteforce(g, k, und, vp_guard).has_value();
    } catch (const GraphError& e) {
      throw GuardError(std::string(e.what()) + "; pass --guard-override");
    }
  };
  try {
    if (target == FuzzTarget::oct) {
      int k = inst.k.value_or(0);
      c.input_yes = solve_oct_exact(inst.g, k, guard).has_value();
      auto ker = kernelize_oct(oct_to_tjoin(inst.g, k), cfg.sparsify);
      c.kind = ker.kind == OctKernel::Kind::kernel ? "kernel"
               : ker.kind == OctKernel::Kind::trivial_yes ? "trivial_yes"
                                                           : "trivial_no";
      c.out_n = ker.kernel.p.g.n();
      c.out_m = ker.kernel.p.g.m();
      c.out_k = ker.kernel.k;
      c.output_yes = solve_tjoin_exact(ker.kernel, guard).has_value();
      return c;
    }
    auto m = to_mwc(inst);
    int allowed = 0;
    for (int v = 0; v < m.g.n(); ++v)
      allowed += !m.is_forbidden(v) && !std::binary_search(m.terminals.begin(), m.terminals.end(), v);
    require_guard(allowed, m.k, guard, "multiway cut oracle");
    c.input_yes = m.k >= 0 && solve_mwc_bruteforce(m).has_value();
    if (target == FuzzTarget::mwc) {
      auto ker = kernelize_mwc(m, cfg.sparsify);
      c.kind = ker.kind == MwcKernel::Kind::kernel ? "kernel"
               : ker.kind == MwcKernel::Kind::trivial_yes ? "trivial_yes"
                                                           : "trivial_no";
      c.out_n = ker.kernel.g.n();
      c.out_m = ker.kernel.g.m();
      c.out_k = ker.kernel.k;
      c.output_yes = solve_mwc_branching(ker.kernel).has_value();
    } else if (target == FuzzTarget::vp_disjoint) {
      auto r = reduce_to_disjoint_vp(m);
      c.kind = "reduction";
      c.output_yes = vp(r.out.g, r.out.k, r.out.undeletable);
    } else {
      auto r = reduce_to_vp(m);
      c.kind = r.trivial_no ? "trivial_no" : "reduction";
      c.output_yes = vp(r.out.g, r.out.k, {});
    }
  } catch (const GuardError&) {
    throw;
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  return c;
}

Instance shrink_instance(const Instance& inst, const std::function<bool(const Instance&)>& still_fails) {
  Instance cur = inst;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = cur.g.n() - 1; v >= 0; --v) {
      auto s = remove_vertices(cur.g, {v});
      auto next = remap(cur, std::move(s.graph), s.vmap);
      if (still_fails(next)) {
        cur = std::move(next);
        changed = true;
      }
    }
    for (int e = cur.g.m() - 1; e >= 0; --e) {
      auto s = remove_edges(cur.g, {e});
      auto next = remap(cur, std::move(s.graph), s.vmap);
      if (still_fails(next)) {
        cur = std::move(next);
        changed = true;
      }
    }
    if (cur.k && *cur.k > 0) {
      Instance next = cur;
      --*next.k;
      if (still_fails(next)) {
        cur = std::move(next);
        changed = true;
      }
    }
  }
  return cur;
}

FuzzOutcome run_fuzz(const FuzzConfig& cfg) {
  int trials = std::max(0, cfg.trials);
  std::vector<std::optional<TrialCheck>> checks(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::atomic<int> next{0};
  std::atomic<int> stop{INT_MAX};  // lowest trial index that failed so far
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= trials || i > stop.load()) return;
      try {
        auto inst = random_trial_instance(cfg, trial_seed(cfg.seed, i));
        checks[i] = check_trial(cfg.target, inst, cfg);
        if (!checks[i]->mismatch()) continue;
      } catch (...) {
        errors[i] = std::current_exception();
      }
      int cur = stop.load();
      while (i < cur && !stop.compare_exchange_weak(cur, i)) {
      }
    }
  };
  int jobs = std::max(1, cfg.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  FuzzOutcome out;
  for (int i = 0; i < trials; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (!checks[i]) break;
    const auto& c = *checks[i];
    ++out.trials_run;
    if (c.mismatch()) {
      out.failed_trial = i;
      out.failure = c;
      auto inst = random_trial_instance(cfg, trial_seed(cfg.seed, i));
      out.reproducer = shrink_instance(inst, [&](const Instance& x) {
        try {
          return check_trial(cfg.target, x, cfg).mismatch();
        } catch (const std::exception&) {
          return false;
        }
      });
      break;
    }
    ++out.agreements;
    out.yes += c.input_yes;
    out.kernels += c.kind == "kernel" || c.kind == "reduction";
  }
  return out;
}

}  // namespace pk
