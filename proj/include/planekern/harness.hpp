#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "planekern/io.hpp"
#include "planekern/mwc_kernel.hpp"
#include "planekern/planarization.hpp"
#include "planekern/tjoin_oct.hpp"

namespace pk {

// Raised when an exact oracle would exceed its size guard.
struct GuardError : GraphError {
  using GraphError::GraphError;
};

// What a plangraph file describes: partA marks a T-join instance,
// terminals a multiway cut instance, otherwise odd cycle transversal.
enum class Problem { oct, tjoin, mwc };
Problem infer_problem(const Instance& inst);
const char* problem_name(Problem p);

TJoinInstance to_tjoin(const Instance& inst);
Instance from_tjoin(const TJoinInstance& t);
MwcInstance to_mwc(const Instance& inst);
Instance from_mwc(const MwcInstance& m);

struct GraphStats {
  int n = 0, m = 0, faces = 0, odd_faces = 0, layers = 0, components = 0;
};
GraphStats graph_stats(const PlaneGraph& g);

// Exact oracles with a guard on the enumeration size. `override_guard`
// lifts it. Results are the smallest solution or nullopt.
struct OracleGuard {
  double max_subsets = 2e7;
  bool override_guard = false;
};
std::optional<std::vector<int>> solve_oct_exact(const PlaneGraph& g, int k, const OracleGuard& guard = {});
std::optional<std::vector<int>> solve_tjoin_exact(const TJoinInstance& t, const OracleGuard& guard = {});
std::optional<std::vector<int>> solve_mwc_exact(const MwcInstance& m, const OracleGuard& guard = {});

enum class FuzzTarget { oct, mwc, vp_disjoint, vp_plain };
FuzzTarget parse_target(const std::string& s);
const char* target_name(FuzzTarget t);

struct Range {
  int lo = 0, hi = 0;
};
Range parse_range(const std::string& s);  // "a:b" or "a"

struct FuzzConfig {
  FuzzTarget target = FuzzTarget::oct;
  int trials = 100;
  std::uint64_t seed = 1;
  Range n{4, 14};
  Range k{0, 3};
  SparsifyConfig sparsify;
  bool guard_override = false;
  int jobs = 1;
};

// Seed of trial i, independent of how trials are scheduled.
std::uint64_t trial_seed(std::uint64_t seed, int trial);
Instance random_trial_instance(const FuzzConfig& cfg, std::uint64_t seed);

struct TrialCheck {
  bool input_yes = false;
  bool output_yes = false;
  int in_n = 0;
  int out_n = 0;
  int out_m = 0;
  int out_k = 0;
  std::string kind;   // kernel | trivial_yes | trivial_no | reduction
  std::string error;  // exception text when the pipeline threw
  bool mismatch() const { return !error.empty() || input_yes != output_yes; }
};
// Runs the kernel or reduction for the target and both oracles. Guard
// violations propagate as GuardError.
TrialCheck check_trial(FuzzTarget target, const Instance& inst, const FuzzConfig& cfg);

// Greedy shrinking: drop vertices, then edges, then lower k, keeping every
// step on which `still_fails` holds, until nothing more can go.
Instance shrink_instance(const Instance& inst, const std::function<bool(const Instance&)>& still_fails);

struct FuzzOutcome {
  int trials_run = 0;
  int agreements = 0;
  int yes = 0;
  int kernels = 0;
  std::optional<int> failed_trial;
  std::optional<TrialCheck> failure;
  std::optional<Instance> reproducer;  // shrunk
};
// Trials run on cfg.jobs threads; the outcome does not depend on jobs.
FuzzOutcome run_fuzz(const FuzzConfig& cfg);

}  // namespace pk
