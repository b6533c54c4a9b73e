#include <doctest.h>

#include "hgt/rng.hpp"
#include "hgt/stages.hpp"

using namespace hgt;

namespace {

struct SimOracle : PoolOracle {
  Hyperedge estar;
  int batches = 0;
  explicit SimOracle(Hyperedge e) : estar(std::move(e)) {}
  ResponseVector answer(int, const TestMatrix& pools) override {
    ++batches;
    return response_vector(pools, estar);
  }
};

Hypergraph make(int n, std::vector<std::vector<int>> edges) {
  std::vector<Hyperedge> es;
  for (const auto& e : edges) es.push_back(Bitset::of(n, e));
  return Hypergraph(n, std::move(es));
}

}  // namespace

TEST_SUITE_BEGIN("stages");

TEST_CASE("default schedules at reference points") {
  CHECK(default_schedule(64, 3).b == std::vector<int>{16, 4, 1});
  CHECK(default_schedule(16, 3).b == std::vector<int>{7, 3, 1});
  CHECK(default_schedule(5, 5).b == std::vector<int>{4, 3, 2, 1});
  CHECK(default_schedule(4, 2).b == std::vector<int>{2, 1});
  CHECK(default_schedule(8, 3).b == std::vector<int>{4, 2, 1});
  CHECK(default_schedule(2, 2).b == std::vector<int>{1});
  CHECK(default_schedule(1, 1).b == std::vector<int>{1});
  CHECK(default_schedule(9, 1).b == std::vector<int>{1});
}

TEST_CASE("default schedule invariants") {
  for (int d = 1; d <= 40; ++d)
    for (int s = 1; s <= d; ++s) {
      const Schedule sch = default_schedule(d, s);
      CHECK(sch.b.back() == 1);
      CHECK(sch.s() <= s);
      for (std::size_t i = 1; i < sch.b.size(); ++i)
        CHECK(sch.b[i] < sch.b[i - 1]);
      if (d > 1) CHECK(sch.b.front() < d);
    }
  CHECK_THROWS_AS(default_schedule(4, 0), PreconditionError);
  CHECK_THROWS_AS(default_schedule(4, 5), PreconditionError);
}

TEST_CASE("mutual difference prune quantifies over the input set") {
  std::vector<Hyperedge> s = {Bitset::of(6, {1, 2}), Bitset::of(6, {1, 2, 3}),
                              Bitset::of(6, {4})};
  // b = 2: |{1,2} \ {4}| = 2 kills {4}; the other two only see diffs < 2.
  const auto kept = mutual_difference_prune(s, 2);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == s[0]);
  CHECK(kept[1] == s[1]);
  // b = 2 over the mutually-far triple removes everything: the quantifier
  // ranges over the input set, not the keepers.
  std::vector<Hyperedge> far = {Bitset::of(6, {1, 2, 3}),
                                Bitset::of(6, {1, 2, 4}),
                                Bitset::of(6, {1, 5, 6})};
  CHECK(mutual_difference_prune(far, 2).empty());
  CHECK(mutual_difference_prune(far, 3).size() == 3);
  // b = 1 keeps only elements containing every other element.
  std::vector<Hyperedge> chain = {Bitset::of(4, {1}), Bitset::of(4, {1, 2})};
  const auto top = mutual_difference_prune(chain, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0] == chain[1]);
}

TEST_CASE("reduced stage isolates the pivot when it is defective") {
  std::vector<Survivor> cur = {{0, Bitset::of(6, {1, 2, 3})},
                               {1, Bitset::of(6, {1, 2, 4})},
                               {2, Bitset::of(6, {1, 5, 6})}};
  SimOracle oracle(Bitset::of(6, {1, 2, 3}));
  Bitset ledger(6);
  const ReducedStageResult r = reduced_discard_stage(
      cur, 6, 3, 1, 0.05, 11, 2, oracle, ledger, ConstructMode::certified);
  CHECK(r.pivot == Bitset::of(6, {1, 2, 3}));
  REQUIRE(r.survivors.size() == 1);
  CHECK(r.survivors[0].original_index == 0);
  CHECK(r.survivors[0].reduced.none());
  CHECK(ledger == Bitset::of(6, {1, 2, 3}));
  CHECK(oracle.batches == 1);
}

TEST_CASE("reduced stage follows a partially defective pivot") {
  std::vector<Survivor> cur = {{0, Bitset::of(6, {1, 2, 3})},
                               {1, Bitset::of(6, {1, 2, 4})},
                               {2, Bitset::of(6, {1, 5, 6})}};
  SimOracle oracle(Bitset::of(6, {1, 5, 6}));
  Bitset ledger(6);
  const ReducedStageResult r = reduced_discard_stage(
      cur, 6, 3, 1, 0.05, 11, 2, oracle, ledger, ConstructMode::certified);
  CHECK(r.pivot == Bitset::of(6, {1, 2, 3}));
  REQUIRE(r.survivors.size() == 1);
  CHECK(r.survivors[0].original_index == 2);
  CHECK(r.survivors[0].reduced == Bitset::of(6, {5, 6}));
  CHECK(ledger == Bitset::of(6, {1}));
}

TEST_CASE("reduced stage validates its arguments") {
  std::vector<Survivor> cur = {{0, Bitset::of(4, {1, 2})},
                               {1, Bitset::of(4, {3, 4})}};
  SimOracle oracle(Bitset::of(4, {1, 2}));
  Bitset ledger(4);
  CHECK_THROWS_AS(reduced_discard_stage(cur, 4, 1, 1, 0.05, 1, 2, oracle,
                                        ledger, ConstructMode::certified),
                  PreconditionError);
  CHECK_THROWS_AS(reduced_discard_stage(cur, 4, 3, 3, 0.05, 1, 2, oracle,
                                        ledger, ConstructMode::certified),
                  PreconditionError);
  // |{3,4} \ {1,2}| = 2 >= b = 2: the entry bound is violated.
  CHECK_THROWS_AS(reduced_discard_stage(cur, 4, 2, 1, 0.05, 1, 2, oracle,
                                        ledger, ConstructMode::certified),
                  InconsistencyError);
}

TEST_CASE("one stage search finds every hidden edge") {
  const Hypergraph h = make(6, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}, {2, 4, 6}});
  for (const Hyperedge& estar : h.edges()) {
    SimOracle oracle(estar);
    const SearchResult res = one_stage_search(h, 0.05, 3, oracle);
    CHECK(res.edge == estar);
    CHECK(oracle.batches == 1);
    CHECK(res.trace.total_tests() > 0);
  }
}

TEST_CASE("one stage search on a single candidate asks nothing") {
  const Hypergraph h = make(3, {{1, 2, 3}});
  SimOracle oracle(Bitset::of(3, {1, 2, 3}));
  const SearchResult res = one_stage_search(h, 0.05, 3, oracle);
  CHECK(res.edge == Bitset::of(3, {1, 2, 3}));
  CHECK(oracle.batches == 0);
  CHECK(res.trace.total_tests() == 0);
}

TEST_CASE("staged search recovers every hidden edge across schedules") {
  Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 + rng.below(4);  // 2..5
    const int n = 4 * d;
    const Hypergraph h = gen_random_uniform(n, d, 12, rng.next());
    for (int s = 1; s <= d; ++s) {
      const Schedule sch = default_schedule(d, s);
      DiscardMatrixCache cache;
      for (const Hyperedge& estar : h.edges()) {
        SimOracle oracle(estar);
        const SearchResult res =
            s_stage_search(h, sch, 0.05, 7, oracle, ConstructMode::certified,
                           &cache);
        CHECK(res.edge == estar);
        CHECK(oracle.batches == sch.s());
      }
    }
  }
}

TEST_CASE("two and three stage wrappers recover the hidden edge") {
  const Hypergraph h = make(12, {{1, 2, 3, 4}, {1, 2, 5, 6}, {7, 8, 9, 10},
                                 {2, 4, 6, 8}, {3, 6, 9, 12}});
  for (const Hyperedge& estar : h.edges()) {
    SimOracle o2(estar);
    CHECK(two_stage_search(h, 0.05, 5, o2).edge == estar);
    CHECK(o2.batches == 2);
    SimOracle o3(estar);
    CHECK(three_stage_search(h, 0.05, 5, o3).edge == estar);
    CHECK(o3.batches == 3);
  }
}

TEST_CASE("search rejects an invalid schedule") {
  const Hypergraph h = make(4, {{1, 2}, {3, 4}});
  SimOracle oracle(Bitset::of(4, {1, 2}));
  Schedule bad1{{2, 1}};  // b_1 >= d
  CHECK_THROWS_AS(s_stage_search(h, bad1, 0.05, 1, oracle), PreconditionError);
  Schedule bad2{{1, 1}};
  CHECK_THROWS_AS(s_stage_search(h, bad2, 0.05, 1, oracle), PreconditionError);
  Schedule bad3{{3, 2}};
  CHECK_THROWS_AS(s_stage_search(h, bad3, 0.05, 1, oracle), PreconditionError);
}

TEST_CASE("trace csv lists one line per stage") {
  StageTrace trace;
  trace.records.push_back(StageRecord{1, 40, 10, 4, 3, 0, 0});
  trace.records.push_back(StageRecord{2, 12, 3, 2, 1, 4, 2});
  const std::string csv = trace_csv(trace);
  CHECK(csv ==
        "stage,t_stage,survivors_before,survivors_after_decode,"
        "survivors_after_prune,pivot_size,ledger_size\n"
        "1,40,10,4,3,0,0\n"
        "2,12,3,2,1,4,2\n");
}

TEST_SUITE_END();
