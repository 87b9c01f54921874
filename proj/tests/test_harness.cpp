#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mwc_instances.hpp"
#include "planekern/generate.hpp"
#include "planekern/harness.hpp"

using namespace pk;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const GraphError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("plangraph corpus round trips byte for byte") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PK_TEST_DATA "/corpus")) {
    std::string text = slurp(entry.path());
    INFO(entry.path().filename().string());
    auto inst = parse_instance(text);
    CHECK(check_plane(inst.g).empty());
    CHECK(serialize_instance(inst) == text);
    ++files;
  }
  CHECK(files >= 50);
}

TEST_CASE("parse errors name the line") {
  std::string head = "plangraph v1\nv 1\nv 2\nv 3\ne 7 1 2\ne 8 2 3\n";
  auto msg = parse_error(head + "rot 1 7\nrot 3 7\n");
  CHECK(msg.find("line 8") != std::string::npos);
  CHECK(msg.find("vertex 3") != std::string::npos);

  msg = parse_error(head + "rot 1 9\n");
  CHECK(msg.find("line 7") != std::string::npos);
  CHECK(msg.find("vertex 1") != std::string::npos);

  CHECK(parse_error("plangraph v1\nv 1\nv 1\n").find("duplicate vertex id 1") != std::string::npos);
  CHECK(parse_error("plangraph v1\nv 1\nv 2\ne 3 1 2\ne 3 2 1\n").find("duplicate edge id 3") != std::string::npos);
  // A triangle has two faces, so it needs an outer line.
  auto tri = "plangraph v1\nv 1\nv 2\nv 3\ne 1 1 2\ne 2 2 3\ne 3 3 1\nrot 1 1 3\nrot 2 2 1\nrot 3 3 2\n";
  CHECK(parse_error(tri).find("missing outer face") != std::string::npos);
  CHECK(parse_error(std::string(tri) + "outer 1 -\n").empty());
  CHECK(parse_error("1 2\n2 x\n").find("line 2") != std::string::npos);
}

TEST_CASE("edge lists are embedded") {
  auto a = parse_instance("# K4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  CHECK(a.embedded_from_edge_list);
  CHECK(check_plane(a.g).empty());
  CHECK(a.g.n() == 4);
  CHECK(a.g.nfaces == 4);

  auto d = parse_instance("c grid\np edge 6 7\ne 1 2\ne 2 3\ne 4 5\ne 5 6\ne 1 4\ne 2 5\ne 3 6\n");
  CHECK(d.g.n() == 6);
  CHECK(d.g.m() == 7);
  CHECK(d.g.nfaces == 3);
  CHECK(check_plane(d.g).empty());

  // A 'p' line with isolated trailing vertices.
  auto iso = parse_instance("p edge 4 1\ne 1 2\n");
  CHECK(iso.g.n() == 4);
  CHECK(check_plane(iso.g).empty());

  CHECK(parse_error("1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n").find("not planar") != std::string::npos);
}

TEST_CASE("generator determinism and invariants") {
  auto one = generate_random_planar(1, 99);
  CHECK(one.n() == 1);
  CHECK(one.m() == 0);
  for (auto model : {PlanarModel::triangulation_delete, PlanarModel::grid_perturb}) {
    GenConfig cfg;
    cfg.model = model;
    Instance a, b;
    a.g = generate_random_planar(12, 4242, cfg);
    b.g = generate_random_planar(12, 4242, cfg);
    CHECK(serialize_instance(a) == serialize_instance(b));
  }
  CHECK_THROWS_AS(parse_model("voronoi"), GraphError);

  Rng rng(5);
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    GenConfig cfg;
    cfg.model = it % 2 ? PlanarModel::grid_perturb : PlanarModel::triangulation_delete;
    cfg.p_delete = rng.real() * 0.8;
    auto g = generate_random_planar(rng.uniform(1, 14), rng.next(), cfg);
    bad += !check_plane(g).empty() || !is_connected(g);
  }
  CHECK(bad == 0);
}

TEST_CASE("stats recompute") {
  auto s = graph_stats(make_grid(5, 5));
  CHECK(s.n == 25);
  CHECK(s.m == 40);
  CHECK(s.faces == 17);
  CHECK(s.odd_faces == 0);
  CHECK(s.layers == 3);
  CHECK(s.components == 1);

  Rng rng(8);
  for (int it = 0; it < 100; ++it) {
    auto g = generate_random_planar(rng.uniform(1, 14), rng.next());
    auto st = graph_stats(g);
    CHECK(st.n - st.m + st.faces == 1 + st.components);
    int odd = 0;
    for (int f = 0; f < g.nfaces; ++f) odd += boundary_walk(g, f).length % 2;
    CHECK(st.odd_faces == odd);
    // Handshake over faces: the odd faces come in pairs.
    CHECK(st.odd_faces % 2 == 0);
  }
}

TEST_CASE("verify and solve on a triangle") {
  auto tri = make_cycle(3);
  CHECK(is_odd_cycle_transversal(tri, {1}));
  CHECK_FALSE(is_odd_cycle_transversal(tri, {}));
  auto x = solve_oct_exact(tri, 1);
  REQUIRE(x);
  CHECK(x->size() == 1);
  CHECK_FALSE(solve_oct_exact(tri, 0));
  CHECK_THROWS_AS(solve_oct_exact(make_grid(10, 10), 6), GuardError);
}

TEST_CASE("instance conversions keep annotations") {
  auto t = oct_to_tjoin(make_wheel(5), 2);
  auto back = to_tjoin(parse_instance(serialize_instance(from_tjoin(t))));
  CHECK(back.p.inA == t.p.inA);
  CHECK(back.terminals == t.terminals);
  CHECK(back.k == 2);

  MwcInstance m;
  m.g = make_grid(3, 3);
  m.terminals = {0, 8};
  m.k = 1;
  m.forbidden.assign(9, 0);
  m.forbidden[4] = 1;
  auto mi = parse_instance(serialize_instance(from_mwc(m)));
  CHECK(infer_problem(mi) == Problem::mwc);
  auto m2 = to_mwc(mi);
  CHECK(m2.terminals == m.terminals);
  CHECK(m2.forbidden == m.forbidden);
}

TEST_CASE("ranges") {
  auto r = parse_range("2:7");
  CHECK(r.lo == 2);
  CHECK(r.hi == 7);
  CHECK(parse_range("3").hi == 3);
  CHECK_THROWS_AS(parse_range("5:2"), GraphError);
  CHECK_THROWS_AS(parse_range("a:b"), GraphError);
}

TEST_CASE("fuzz agrees on odd cycle transversal") {
  FuzzConfig cfg;
  cfg.target = FuzzTarget::oct;
  cfg.trials = 100;
  cfg.seed = 7;
  auto f = run_fuzz(cfg);
  CHECK(f.trials_run == 100);
  CHECK(f.agreements == 100);
  CHECK_FALSE(f.failed_trial);
}

TEST_CASE("fuzz outcome does not depend on the thread count") {
  FuzzConfig cfg;
  cfg.target = FuzzTarget::mwc;
  cfg.trials = 80;
  cfg.seed = 11;
  cfg.n = {4, 16};
  auto a = run_fuzz(cfg);
  cfg.jobs = 4;
  auto b = run_fuzz(cfg);
  CHECK(a.agreements == 80);
  CHECK(a.agreements == b.agreements);
  CHECK(a.yes == b.yes);
  CHECK(a.kernels == b.kernels);
  for (int i = 0; i < 5; ++i)
    CHECK(serialize_instance(random_trial_instance(cfg, trial_seed(11, i))) ==
          serialize_instance(random_trial_instance(cfg, trial_seed(11, i))));
}

TEST_CASE("vertex planarization fuzz needs the guard override") {
  FuzzConfig cfg;
  cfg.target = FuzzTarget::vp_disjoint;
  cfg.trials = 20;
  cfg.n = {6, 10};
  cfg.k = {0, 2};
  CHECK_THROWS_AS(run_fuzz(cfg), GuardError);
  cfg.guard_override = true;
  CHECK(run_fuzz(cfg).agreements == 20);
}

TEST_CASE("shrinking ends at a minimal failing instance that replays") {
  // Failure predicate: the graph is not bipartite. Minimal witnesses are
  // odd cycles.
  auto odd = [](const Instance& x) { return !is_odd_cycle_transversal(x.g, {}); };
  Rng rng(21);
  int shrunk = 0;
  for (int it = 0; it < 30; ++it) {
    Instance inst;
    inst.g = generate_random_planar(rng.uniform(5, 14), rng.next());
    inst.k = 2;
    if (!odd(inst)) continue;
    auto r = shrink_instance(inst, odd);
    ++shrunk;
    CHECK(r.g.n() == r.g.m());
    CHECK(r.g.n() % 2 == 1);
    for (int v = 0; v < r.g.n(); ++v) CHECK(r.g.degree(v) == 2);
    CHECK(r.k == 0);
    auto replay = parse_instance(serialize_instance(r));
    CHECK(odd(replay));
    CHECK(serialize_instance(replay) == serialize_instance(r));
  }
  CHECK(shrunk > 10);
}

TEST_CASE("branching multiway cut solver matches enumeration") {
  Rng rng(71);
  for (int it = 0; it < 200; ++it) {
    auto inst = testgen::random_mwc(rng, 14, 3);
    if (rng.coin(0.3)) {
      inst.forbidden.assign(inst.g.n(), 0);
      for (int v = 0; v < inst.g.n(); ++v)
        if (!std::binary_search(inst.terminals.begin(), inst.terminals.end(), v) && rng.coin(0.2))
          inst.forbidden[v] = 1;
    }
    auto a = solve_mwc_bruteforce(inst);
    auto b = solve_mwc_branching(inst);
    INFO("iteration " << it);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(a->size() == b->size());
      CHECK(is_mwc_solution(inst, *b));
    }
  }
}
