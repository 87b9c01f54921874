#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "planekern/sparsify.hpp"

namespace pk {

// Plane Bipartite Steiner T-join: find C in the paid class with |C| <= k such
// that every component of G[C + free class] holds an even number of
// terminals. Terminals are free vertices, kept sorted.
struct TJoinInstance {
  Partitioned p;
  std::vector<int> terminals;
  int k = 0;
};

// Throws GraphError when classes are not a proper bipartition or a terminal
// is paid. Connectivity is not required (kernels may have several parts).
void check_tjoin_instance(const TJoinInstance& inst);

// Radial graph of g with faces as the free class and odd faces as terminals.
// Parallel radial edges are merged; vertex v of g keeps index v.
TJoinInstance oct_to_tjoin(const PlaneGraph& g, int k);

bool is_odd_cycle_transversal(const PlaneGraph& g, const std::vector<int>& C);

// Parity test plus C within the paid class and |C| <= k.
bool is_tjoin_solution(const TJoinInstance& inst, const std::vector<int>& C);
// Smallest solution by enumeration over paid subsets of size 0..k.
std::optional<std::vector<int>> solve_tjoin_bruteforce(const TJoinInstance& inst);

// Path t - b - t' with both ends terminals and k = 0.
TJoinInstance canonical_no();
// One free vertex, no terminals, k = 0.
TJoinInstance canonical_yes();

enum class OctRule { no_guard, twins, empty_comp, dominated_comp, high_degree, terminal_count };
inline constexpr OctRule kOctRules[] = {OctRule::no_guard,       OctRule::twins,
                                        OctRule::empty_comp,     OctRule::dominated_comp,
                                        OctRule::high_degree,    OctRule::terminal_count};
const char* rule_name(OctRule r);  // NO_GUARD, TWINS, ...

enum class Verdict { reduced, unchanged, answer_no };
const char* verdict_name(Verdict v);

struct RuleStep {
  OctRule rule;
  Verdict verdict;
  std::string detail;
};

struct RuleOutcome {
  Verdict verdict = Verdict::unchanged;
  TJoinInstance instance;
  std::vector<RuleStep> trace;
};

// One application of the rule (the first match in index order).
RuleOutcome apply_rule(const TJoinInstance& inst, OctRule rule);

// Rules in order, restarting from the first after every change, until none
// applies. The observer sees every firing with the instance before it.
using RuleObserver = std::function<void(const TJoinInstance& before, const RuleOutcome& step)>;
RuleOutcome reduce_exhaustively(const TJoinInstance& inst, const RuleObserver& observer = {});

// Contract v with its neighbourhood: the merged vertex is free, it is a
// terminal iff v had an odd number of terminal neighbours, k drops by one.
TJoinInstance contract_at(const TJoinInstance& inst, int v);

struct SplitResult {
  bool answer_no = false;
  std::vector<TJoinInstance> parts;
  std::vector<std::vector<int>> vmap;  // part vertex -> instance vertex
  std::vector<std::vector<int>> emap;  // part edge -> instance edge
};
// Components of the union of radius k+2 balls around terminals.
SplitResult split_instance(const TJoinInstance& inst);

struct ConnectorBuild {
  bool answer_no = false;
  std::string reason;
  std::vector<int> t_prime;        // marked representatives
  std::vector<int> steiner_edges;  // tree over t_prime
  int steiner_bound = 0;           // (2K+1)(|t_prime|-1) with K = k+2
  std::vector<int> vertices;       // A_i, sorted
  std::vector<int> tree;           // spanning tree of G[A_i]
};
ConnectorBuild build_connector(const TJoinInstance& sub);

struct OctPartReport {
  int vertices = 0;
  int terminals = 0;
  int t_prime = 0;
  int steiner_edges = 0;
  int steiner_bound = 0;
  int cut_boundary = 0;  // length of the outer cycle after cutting open
  int kept_edges = 0;
  std::vector<SparsifyComponent> sparsify;
};

struct OctKernel {
  TJoinInstance kernel;
  enum class Kind { kernel, trivial_yes, trivial_no } kind = Kind::kernel;
  std::string reason;  // why a trivial instance was returned
  std::vector<RuleStep> trace;
  int reduced_vertices = 0;
  int reduced_terminals = 0;
  int reduced_k = 0;
  std::vector<OctPartReport> parts;
};

OctKernel kernelize_oct(const TJoinInstance& inst, const SparsifyConfig& cfg = {});

}  // namespace pk
