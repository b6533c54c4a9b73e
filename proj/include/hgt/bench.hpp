#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hgt/bounds.hpp"
#include "hgt/codes.hpp"
#include "hgt/hypergraph.hpp"
#include "hgt/stages.hpp"

namespace hgt {

// Simulation oracle: bit i = 1 iff pool_i intersects the hidden e*.  Each
// stage may be answered once; a second batch for an answered stage is the
// non-adaptivity violation the harness must reject.
class TestOracle : public PoolOracle {
 public:
  explicit TestOracle(Hyperedge estar) : estar_(std::move(estar)) {}

  ResponseVector answer(int stage, const TestMatrix& pools) override;

  const Hyperedge& estar() const { return estar_; }
  // (stage index, pool count) per answered batch.
  const std::vector<std::pair<int, int>>& batch_log() const { return log_; }
  int batches() const { return static_cast<int>(log_.size()); }

 private:
  Hyperedge estar_;
  std::vector<std::pair<int, int>> log_;
  std::set<int> answered_;
};

struct TrialResult {
  bool success = false;
  std::optional<Hyperedge> returned;
  std::vector<int> tests_per_stage;
  int total_tests = 0;
  int batches = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  std::string failure_reason;  // nonempty iff the pipeline errored
};

TrialResult run_trial(const Hypergraph& h, const Hyperedge& estar,
                      const Schedule& schedule, double delta,
                      std::uint64_t seed, ConstructMode mode,
                      DiscardMatrixCache* cache = nullptr);

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  int max_tests = 0;
  double mean_tests = 0.0;
};

// run_trial for every e* in E.
VerifyReport exhaustive_verify(const Hypergraph& h, const Schedule& schedule,
                               double delta, std::uint64_t seed,
                               ConstructMode mode = ConstructMode::certified,
                               DiscardMatrixCache* cache = nullptr);

struct MinLengthResult {
  bool exceeded = false;  // no separable code within t_max
  int t = 0;
  std::optional<TestMatrix> witness;  // a certified matrix at length t
};

// Least t for which some t x n matrix is E-separable, by exhaustive search
// over column assignments with prefix pruning.  Desk scale only.
MinLengthResult brute_force_min_length(const std::vector<Hyperedge>& edges,
                                       int n, int t_max, int cell_cap = 24);

struct CostPoint {
  int d = 0;
  double m = 0.0;
  int s = 0;
  double total = 0.0;
};

struct FitResult {
  double c1 = 0.0;
  double c2 = 0.0;
  double mean_residual = 0.0;
  double max_residual = 0.0;
};

// Nonnegative least squares of measured totals against the regressors
// s*d^{1/s}*log2(m) and s*d.  Needs >= 3 distinct (d, m, s) points.
FitResult fit_constants(const std::vector<CostPoint>& points);

struct SweepInstance {
  int n = 0, d = 0, m = 0;
  std::optional<int> lambda_bar;
  std::uint64_t seed = 0;
};

struct SweepConfig {
  std::vector<SweepInstance> instances;
  std::vector<int> schedules;  // stage counts
  double delta = 0.05;
  int trials = 5;  // e* samples per (instance, schedule); 0 = exhaustive
  std::uint64_t trial_seed = 1;
  ConstructMode mode = ConstructMode::certified;
};

SweepConfig parse_sweep_config(std::istream& in);

// One CSV row per (instance, schedule, trial).  Deterministic apart from the
// wall_ms column; infeasible combinations are skipped with a note on `log`.
void run_sweep(const SweepConfig& config, std::ostream& csv_out,
               std::ostream* log = nullptr);

}  // namespace hgt
