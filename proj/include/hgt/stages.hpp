#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgt/codes.hpp"
#include "hgt/hypergraph.hpp"

namespace hgt {

// Per-stage discard thresholds b_1 > ... > b_s = 1 (with implicit b_0 = d).
struct Schedule {
  std::vector<int> b;
  int s() const { return static_cast<int>(b.size()); }
};

// b_i = ceil(d^{(s-i)/s}) clamped below d, then deduplicated to a strictly
// decreasing sequence ending in 1; the effective s may be smaller than asked.
Schedule default_schedule(int d, int s);

// Answers one batch of pools per stage.  Implementations must answer each
// stage exactly once; the harness oracle enforces this.
class PoolOracle {
 public:
  virtual ~PoolOracle() = default;
  virtual ResponseVector answer(int stage, const TestMatrix& pools) = 0;
};

// A candidate that is still alive: its original identity in E plus the
// current reduced form (original minus the pivots subtracted so far).
struct Survivor {
  std::size_t original_index;
  Hyperedge reduced;
};

struct StageRecord {
  int stage = 0;
  int tests = 0;
  std::size_t survivors_before = 0;
  std::size_t survivors_after_decode = 0;
  std::size_t survivors_after_prune = 0;
  int pivot_size = 0;  // 0 in stage 1 (no pivot)
  std::size_t ledger_size = 0;
};

struct StageTrace {
  std::vector<StageRecord> records;
  Bitset ledger;  // defective vertices identified via singleton rows
  int total_tests() const {
    int t = 0;
    for (const StageRecord& r : records) t += r.tests;
    return t;
  }
};

// CSV with columns stage,t_stage,survivors_before,survivors_after_decode,
// survivors_after_prune,pivot_size,ledger_size.
std::string trace_csv(const StageTrace& trace);

// Keeps e such that every e' in the *input* set has |e' \ e| < b.
std::vector<Hyperedge> mutual_difference_prune(const std::vector<Hyperedge>& s,
                                               int b);
std::vector<Survivor> mutual_difference_prune(const std::vector<Survivor>& s,
                                              int b);

struct ReducedStageResult {
  std::vector<Survivor> survivors;  // reduced forms have had the pivot removed
  Hyperedge pivot;
  int tests = 0;
  std::size_t after_decode = 0;
};

// One stage of the reduced discard algorithm: subtract a maximum-size pivot,
// build a certified p-discard matrix on the reduced forms, append one
// singleton row per pivot vertex, decode, and extend the ledger with the
// pivot vertices that answered positive.
ReducedStageResult reduced_discard_stage(const std::vector<Survivor>& current,
                                         int n, int b, int p, double delta,
                                         std::uint64_t seed, int stage_index,
                                         PoolOracle& oracle, Bitset& ledger,
                                         ConstructMode mode,
                                         DiscardMatrixCache* cache = nullptr);

struct SearchResult {
  Hyperedge edge;
  StageTrace trace;
};

// Non-adaptive search with p = 1: certified discard matrix, one batch,
// decode; survivors must form a chain under inclusion and the largest wins.
SearchResult one_stage_search(const Hypergraph& h, double delta,
                              std::uint64_t seed, PoolOracle& oracle,
                              ConstructMode mode = ConstructMode::certified,
                              DiscardMatrixCache* cache = nullptr);

// The full staged pipeline: stage 1 discards with p = b_1 and prunes, stages
// 2..s run reduced discard stages, and the answer is the last reduced
// survivor joined with the ledger.
SearchResult s_stage_search(const Hypergraph& h, const Schedule& schedule,
                            double delta, std::uint64_t seed,
                            PoolOracle& oracle,
                            ConstructMode mode = ConstructMode::certified,
                            DiscardMatrixCache* cache = nullptr);

SearchResult two_stage_search(const Hypergraph& h, double delta,
                              std::uint64_t seed, PoolOracle& oracle,
                              ConstructMode mode = ConstructMode::certified,
                              DiscardMatrixCache* cache = nullptr);
SearchResult three_stage_search(const Hypergraph& h, double delta,
                                std::uint64_t seed, PoolOracle& oracle,
                                ConstructMode mode = ConstructMode::certified,
                                DiscardMatrixCache* cache = nullptr);

}  // namespace hgt
