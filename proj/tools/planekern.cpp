// planekern: kernels, reductions, exact oracles and the fuzz driver.
// Exit codes: 0 all checks pass, 1 mismatch or invalid solution, 2 usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "planekern/generate.hpp"
#include "planekern/harness.hpp"

using json = nlohmann::ordered_json;
using namespace pk;

namespace {

struct Opts {
  std::string input;
  std::string out;
  std::string report;
  std::uint64_t seed = 1;
  int base_threshold = 12;
  bool guard_override = false;
  std::optional<int> k;
  bool check = false;
  std::string variant = "disjoint";
  std::string solution;
  std::string target = "oct";
  int trials = 100;
  std::string k_range = "0:3";
  std::string n_range = "4:14";
  int jobs = 1;
  std::string replay;
  int n = 10;
  std::string model = "triangulation_delete";
  int terminals = 0;
};

struct Mismatch {};

json stats_json(const PlaneGraph& g) {
  auto s = graph_stats(g);
  return {{"n", s.n}, {"m", s.m}, {"faces", s.faces}, {"odd_faces", s.odd_faces},
          {"layers", s.layers}, {"components", s.components}};
}

json ids(const PlaneGraph& g, const std::vector<int>& vs) {
  json a = json::array();
  for (int v : vs) a.push_back(g.vid[v]);
  return a;
}

json sparsify_json(const std::vector<SparsifyComponent>& cs) {
  json a = json::array();
  for (const auto& c : cs)
    a.push_back({{"component", c.component}, {"boundary_len", c.boundary_len}, {"strategy", c.strategy},
                 {"edges_out", c.edges_out}, {"note", c.note}});
  return a;
}

Instance load(const Opts& o) {
  auto inst = read_instance_file(o.input);
  if (o.k) inst.k = *o.k;
  return inst;
}

int need_k(const Instance& inst) {
  if (!inst.k) throw CLI::ValidationError("--k", "the instance has no 'param k' line; pass --k");
  return *inst.k;
}

OracleGuard guard_of(const Opts& o) {
  OracleGuard g;
  g.override_guard = o.guard_override;
  return g;
}

void kernelize_oct_cmd(const Opts& o, json& r) {
  auto inst = load(o);
  if (infer_problem(inst) != Problem::oct) throw GraphError("kernelize-oct expects a plain plane graph");
  int k = need_k(inst);
  r["input"] = stats_json(inst.g);
  r["k"] = k;
  auto t = oct_to_tjoin(inst.g, k);
  auto ker = kernelize_oct(t, SparsifyConfig{o.base_threshold});
  json trace = json::array();
  for (const auto& s : ker.trace)
    trace.push_back({{"rule", rule_name(s.rule)}, {"verdict", verdict_name(s.verdict)}, {"detail", s.detail}});
  r["trace"] = trace;
  json parts = json::array();
  for (const auto& p : ker.parts)
    parts.push_back({{"vertices", p.vertices}, {"terminals", p.terminals}, {"t_prime", p.t_prime},
                     {"steiner_edges", p.steiner_edges}, {"steiner_bound", p.steiner_bound},
                     {"cut_boundary", p.cut_boundary}, {"kept_edges", p.kept_edges},
                     {"sparsify", sparsify_json(p.sparsify)}});
  const char* kind = ker.kind == OctKernel::Kind::kernel ? "kernel"
                     : ker.kind == OctKernel::Kind::trivial_yes ? "trivial_yes"
                                                                 : "trivial_no";
  r["kernel"] = {{"kind", kind},
                 {"reason", ker.reason},
                 {"tjoin_vertices", t.p.g.n()},
                 {"tjoin_terminals", t.terminals.size()},
                 {"reduced_vertices", ker.reduced_vertices},
                 {"reduced_terminals", ker.reduced_terminals},
                 {"reduced_k", ker.reduced_k},
                 {"n", ker.kernel.p.g.n()},
                 {"m", ker.kernel.p.g.m()},
                 {"terminals", ker.kernel.terminals.size()},
                 {"k", ker.kernel.k},
                 {"parts", parts}};
  if (!o.out.empty()) write_file(o.out, serialize_instance(from_tjoin(ker.kernel)));
  if (o.check) {
    bool a = solve_oct_exact(inst.g, k, guard_of(o)).has_value();
    bool b = solve_tjoin_exact(ker.kernel, guard_of(o)).has_value();
    r["oracle"] = {{"input_yes", a}, {"kernel_yes", b}, {"agree", a == b}};
    if (a != b) throw Mismatch{};
  }
}

void kernelize_mwc_cmd(const Opts& o, json& r) {
  auto inst = load(o);
  need_k(inst);
  auto m = to_mwc(inst);
  r["input"] = stats_json(m.g);
  r["k"] = m.k;
  r["terminals"] = m.terminals.size();
  auto ker = kernelize_mwc(m, SparsifyConfig{o.base_threshold});
  const char* kind = ker.kind == MwcKernel::Kind::kernel ? "kernel"
                     : ker.kind == MwcKernel::Kind::trivial_yes ? "trivial_yes"
                                                                 : "trivial_no";
  r["trace"] = {{"deleted_components", ker.lp.deleted_components},
                {"region_contractions", ker.lp.region_contractions},
                {"lp_contractions", ker.lp.lp_contractions},
                {"lp_deletions", ker.lp.lp_deletions},
                {"final_lp", ker.lp.final_lp}};
  r["kernel"] = {{"kind", kind},
                 {"reason", ker.reason},
                 {"important", ker.important},
                 {"relevant", ker.relevant},
                 {"z", ker.z},
                 {"h_edges", ker.h_edges},
                 {"h_max_degree", ker.h_max_degree},
                 {"alpha", ker.alpha},
                 {"boundary", ker.boundary},
                 {"chain_vertices", ker.chain_vertices},
                 {"d", ker.d},
                 {"u1", ker.u1},
                 {"u2", ker.u2},
                 {"gadget_vertices", ker.gadget_vertices},
                 {"radial_violations", ker.radial_violations},
                 {"n", ker.kernel.g.n()},
                 {"m", ker.kernel.g.m()},
                 {"terminals", ker.kernel.terminals.size()},
                 {"k", ker.kernel.k},
                 {"sparsify", sparsify_json(ker.sparsify)}};
  if (!o.out.empty()) write_file(o.out, serialize_instance(from_mwc(ker.kernel)));
  if (o.check) {
    bool a = solve_mwc_exact(m, guard_of(o)).has_value();
    bool b = solve_mwc_branching(ker.kernel).has_value();
    r["oracle"] = {{"input_yes", a}, {"kernel_yes", b}, {"agree", a == b}};
    if (a != b) throw Mismatch{};
  }
}

std::string dimacs(const SimpleGraph& g, int k, const std::vector<char>& und) {
  std::ostringstream os;
  os << "c vertex planarization instance\nc k " << k << "\n";
  bool any = false;
  for (char c : und) any |= c != 0;
  if (any) {
    os << "c undeletable";
    for (int v = 0; v < g.n; ++v)
      if (und[v]) os << " " << v + 1;
    os << "\n";
  }
  os << "p edge " << g.n << " " << g.edges.size() << "\n";
  for (auto [a, b] : g.edges) os << "e " << a + 1 << " " << b + 1 << "\n";
  return os.str();
}

void reduce_cmd(const Opts& o, json& r) {
  auto inst = load(o);
  need_k(inst);
  auto m = to_mwc(inst);
  r["input"] = stats_json(m.g);
  r["variant"] = o.variant;
  // The plain reduction reads neighbour order off this embedding.
  r["embedding"] = serialize_instance(inst);
  r["embedding_source"] = inst.embedded_from_edge_list ? "computed from edge list" : "input rotation system";
  SimpleGraph out;
  std::vector<char> und;
  int k = 0;
  std::vector<int> from;
  if (o.variant == "disjoint") {
    auto d = reduce_to_disjoint_vp(m);
    out = d.out.g;
    und = d.out.undeletable;
    k = d.out.k;
    from = d.from_input;
  } else if (o.variant == "plain") {
    auto p = reduce_to_vp(m);
    out = p.out.g;
    k = p.out.k;
    from = p.from_input;
    r["grid"] = {{"rows", p.rows}, {"cols", p.cols}};
    r["trivial_no"] = p.trivial_no;
  } else {
    throw CLI::ValidationError("--variant", "expected disjoint or plain");
  }
  int s = 0;
  for (char c : und) s += c;
  r["output"] = {{"n", out.n}, {"m", out.edges.size()}, {"k", k}, {"undeletable", s}};
  json vmap = json::object();
  for (int v = 0; v < m.g.n(); ++v)
    if (from.size() == static_cast<std::size_t>(m.g.n()) && from[v] >= 0)
      vmap[std::to_string(m.g.vid[v])] = from[v] + 1;
  r["vertex_map"] = vmap;
  if (!o.out.empty()) write_file(o.out, dimacs(out, k, und));
  if (o.check) {
    bool a = solve_mwc_exact(m, guard_of(o)).has_value();
    auto vg = o.guard_override ? VpGuard{1 << 20, 1 << 20} : VpGuard{};
    bool b = false;
    try {
      b = solve_vp_bruteforce(out, k, und, vg).has_value();
    } catch (const GraphError& e) {
      throw GuardError(std::string(e.what()) + "; pass --guard-override");
    }
    r["oracle"] = {{"input_yes", a}, {"vp_yes", b}, {"agree", a == b}};
    if (a != b) throw Mismatch{};
  }
}

void solve_cmd(const Opts& o, json& r) {
  auto inst = load(o);
  need_k(inst);
  auto p = infer_problem(inst);
  r["problem"] = problem_name(p);
  r["input"] = stats_json(inst.g);
  r["k"] = *inst.k;
  std::optional<std::vector<int>> x;
  if (p == Problem::oct) x = solve_oct_exact(inst.g, *inst.k, guard_of(o));
  if (p == Problem::tjoin) x = solve_tjoin_exact(to_tjoin(inst), guard_of(o));
  if (p == Problem::mwc) x = solve_mwc_exact(to_mwc(inst), guard_of(o));
  r["oracle"] = {{"yes", x.has_value()}};
  if (x) r["oracle"]["solution"] = ids(inst.g, *x);
}

void verify_cmd(const Opts& o, json& r) {
  auto inst = load(o);
  auto p = infer_problem(inst);
  std::vector<int> C;
  std::istringstream is(o.solution);
  for (std::string tok; std::getline(is, tok, ',');) {
    if (tok.empty()) continue;
    Id id = 0;
    try {
      id = std::stoll(tok);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--solution", "bad vertex id '" + tok + "'");
    }
    int v = inst.g.vertex_index(id);
    if (v < 0) throw CLI::ValidationError("--solution", "unknown vertex id " + tok);
    C.push_back(v);
  }
  std::sort(C.begin(), C.end());
  C.erase(std::unique(C.begin(), C.end()), C.end());
  r["problem"] = problem_name(p);
  r["solution"] = ids(inst.g, C);
  bool ok = false;
  if (p == Problem::oct)
    ok = is_odd_cycle_transversal(inst.g, C) && (!inst.k || static_cast<int>(C.size()) <= *inst.k);
  if (p == Problem::tjoin) ok = is_tjoin_solution(to_tjoin(inst), C);
  if (p == Problem::mwc) {
    auto m = to_mwc(inst);
    if (!inst.k) m.k = static_cast<int>(C.size());
    ok = is_mwc_solution(m, C);
  }
  r["valid"] = ok;
  if (!ok) throw Mismatch{};
}

void stats_cmd(const Opts& o, json& r) {
  auto inst = load(o);
  r["problem"] = problem_name(infer_problem(inst));
  r["input"] = stats_json(inst.g);
  if (inst.terminals) r["terminals"] = inst.terminals->size();
  if (inst.k) r["k"] = *inst.k;
  r["embedded_from_edge_list"] = inst.embedded_from_edge_list;
}

FuzzConfig fuzz_config(const Opts& o, CLI::App& sub) {
  FuzzConfig cfg;
  cfg.target = parse_target(o.target);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.n = parse_range(o.n_range);
  cfg.k = parse_range(o.k_range);
  cfg.sparsify.base_threshold = o.base_threshold;
  cfg.guard_override = o.guard_override;
  cfg.jobs = o.jobs;
  if (cfg.target == FuzzTarget::vp_plain && sub.count("--k-range") == 0) cfg.k = {0, 1};
  if (cfg.target == FuzzTarget::vp_plain && sub.count("--n-range") == 0) cfg.n = {4, 8};
  return cfg;
}

json check_json(const TrialCheck& c) {
  json j = {{"kind", c.kind},       {"input_yes", c.input_yes}, {"output_yes", c.output_yes},
            {"in_n", c.in_n},       {"out_n", c.out_n},         {"out_m", c.out_m},
            {"out_k", c.out_k}};
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

void fuzz_cmd(const Opts& o, CLI::App& sub, json& r) {
  auto cfg = fuzz_config(o, sub);
  if (!o.replay.empty()) {
    // A reproducer names its target in a comment unless --target is given.
    if (sub.count("--target") == 0) {
      std::ifstream in(o.replay);
      for (std::string line; std::getline(in, line);)
        if (line.rfind("# fuzz-target ", 0) == 0) cfg.target = parse_target(line.substr(14));
    }
    auto inst = read_instance_file(o.replay);
    auto c = check_trial(cfg.target, inst, cfg);
    r["target"] = target_name(cfg.target);
    r["replay"] = o.replay;
    r["oracle"] = check_json(c);
    if (c.mismatch()) throw Mismatch{};
    return;
  }
  r["target"] = target_name(cfg.target);
  r["trials"] = cfg.trials;
  r["n_range"] = {cfg.n.lo, cfg.n.hi};
  r["k_range"] = {cfg.k.lo, cfg.k.hi};
  auto f = run_fuzz(cfg);
  r["oracle"] = {{"trials_run", f.trials_run}, {"agreements", f.agreements}, {"yes", f.yes},
                 {"nontrivial", f.kernels}};
  if (f.failed_trial) {
    std::string path = o.out.empty() ? "fuzz-repro.plg" : o.out;
    std::ostringstream os;
    os << "# fuzz-target " << target_name(cfg.target) << "\n# seed " << cfg.seed << " trial " << *f.failed_trial
       << "\n"
       << serialize_instance(*f.reproducer);
    write_file(path, os.str());
    r["oracle"]["failed_trial"] = *f.failed_trial;
    r["oracle"]["failure"] = check_json(*f.failure);
    r["oracle"]["reproducer"] = path;
    r["oracle"]["reproducer_n"] = f.reproducer->g.n();
    throw Mismatch{};
  }
}

void generate_cmd(const Opts& o, json& r) {
  GenConfig gc;
  gc.model = parse_model(o.model);
  Instance inst;
  inst.g = generate_random_planar(o.n, o.seed, gc);
  if (o.terminals > 0) {
    Rng rng(o.seed ^ 0x5bd1e995ULL);
    inst.terminals = random_subset(rng, inst.g.n(), std::min(o.terminals, inst.g.n()));
  }
  if (o.k) inst.k = *o.k;
  r["output"] = stats_json(inst.g);
  auto text = serialize_instance(inst);
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planekern: planar kernelization toolkit"};
  app.require_subcommand(1);
  Opts o;
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--report", o.report, "write the JSON report to this file");
  app.add_option("--base-threshold", o.base_threshold, "sparsifier exact base case threshold")
      ->capture_default_str();
  app.add_flag("--guard-override", o.guard_override, "lift the size guards of the exact oracles");
  app.fallthrough();

  auto with_input = [&](CLI::App* s) { s->add_option("input", o.input, "instance file")->required(); };
  auto with_k = [&](CLI::App* s) { s->add_option("--k", o.k, "parameter (overrides 'param k')"); };

  auto* koct = app.add_subcommand("kernelize-oct", "odd cycle transversal kernel");
  with_input(koct);
  with_k(koct);
  koct->add_option("--out", o.out, "write the kernel (plangraph v1)");
  koct->add_flag("--check", o.check, "compare brute-force answers of input and kernel");

  auto* kmwc = app.add_subcommand("kernelize-mwc", "multiway cut kernel");
  with_input(kmwc);
  with_k(kmwc);
  kmwc->add_option("--out", o.out, "write the kernel (plangraph v1)");
  kmwc->add_flag("--check", o.check, "compare brute-force answers of input and kernel");

  auto* red = app.add_subcommand("reduce-to-vp", "multiway cut to vertex planarization");
  with_input(red);
  with_k(red);
  red->add_option("--variant", o.variant, "disjoint or plain")
      ->check(CLI::IsMember({"disjoint", "plain"}))
      ->capture_default_str();
  red->add_option("--out", o.out, "write the output graph (DIMACS)");
  red->add_flag("--check", o.check, "compare brute-force answers of input and output");

  auto* solve = app.add_subcommand("solve", "exact solution by enumeration");
  with_input(solve);
  with_k(solve);

  auto* verify = app.add_subcommand("verify", "check a solution");
  with_input(verify);
  with_k(verify);
  verify->add_option("--solution", o.solution, "comma separated vertex ids")->required();

  auto* fuzz = app.add_subcommand("fuzz", "random trials against exact oracles");
  fuzz->add_option("--target", o.target, "oct, mwc, vp-disjoint or vp-plain")->capture_default_str();
  fuzz->add_option("--trials", o.trials)->capture_default_str();
  fuzz->add_option("--k-range", o.k_range, "lo:hi")->capture_default_str();
  fuzz->add_option("--n-range", o.n_range, "lo:hi")->capture_default_str();
  fuzz->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  fuzz->add_option("--out", o.out, "reproducer path on mismatch");
  fuzz->add_option("--replay", o.replay, "re-run one reproducer");

  auto* stats = app.add_subcommand("stats", "instance statistics");
  with_input(stats);

  auto* gen = app.add_subcommand("generate", "random plane graph");
  gen->add_option("--n", o.n)->capture_default_str();
  gen->add_option("--model", o.model, "triangulation_delete or grid_perturb")->capture_default_str();
  gen->add_option("--terminals", o.terminals, "number of random terminals");
  gen->add_option("--k", o.k);
  gen->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  o.seed = seed;

  CLI::App* sub = app.get_subcommands().front();
  json r;
  r["command"] = sub->get_name();
  r["seed"] = o.seed;
  auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (sub == koct) kernelize_oct_cmd(o, r);
    if (sub == kmwc) kernelize_mwc_cmd(o, r);
    if (sub == red) reduce_cmd(o, r);
    if (sub == solve) solve_cmd(o, r);
    if (sub == verify) verify_cmd(o, r);
    if (sub == fuzz) fuzz_cmd(o, *fuzz, r);
    if (sub == stats) stats_cmd(o, r);
    if (sub == gen) generate_cmd(o, r);
  } catch (const Mismatch&) {
    code = 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  r["status"] = code == 0 ? "pass" : "fail";
  r["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::string text = r.dump(2) + "\n";
  if (!o.report.empty()) write_file(o.report, text);
  if (sub != gen || !o.out.empty()) std::cout << text;
  return code;
}
