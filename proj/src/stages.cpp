#include "hgt/stages.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgt/rng.hpp"

namespace hgt {

namespace {

int ceil_power(int d, int num, int den) {
  if (num == 0) return 1;
  const double x = std::pow(static_cast<double>(d),
                            static_cast<double>(num) / den);
  return static_cast<int>(std::ceil(x - 1e-9));
}

DiscardMatrix build_discard(DiscardMatrixCache* cache,
                            const std::vector<Hyperedge>& edges, int n, int d,
                            int p, double delta, std::uint64_t seed,
                            ConstructMode mode) {
  if (cache) return cache->get(edges, n, d, p, delta, seed, mode);
  return construct_discard_matrix(edges, n, d, p, delta, seed, mode);
}

void validate_schedule(const Schedule& schedule, int d) {
  if (schedule.s() < 1) throw PreconditionError("schedule must be nonempty");
  const auto& b = schedule.b;
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i] >= b[i - 1])
      throw PreconditionError("schedule must be strictly decreasing");
  if (b.back() != 1) throw PreconditionError("schedule must end at 1");
  if (d > 1 && b.front() >= d)
    throw PreconditionError("schedule needs b_1 < d");
  if (b.front() < 1) throw PreconditionError("schedule entries must be positive");
}

}  // namespace

Schedule default_schedule(int d, int s) {
  if (d < 1) throw PreconditionError("d must be positive");
  if (s < 1 || s > d) throw PreconditionError("need 1 <= s <= d");
  const int cap = std::max(d - 1, 1);
  Schedule out;
  for (int i = 1; i <= s; ++i) {
    int bi = std::min(ceil_power(d, s - i, s), cap);
    if (out.b.empty() || bi < out.b.back()) out.b.push_back(bi);
  }
  if (out.b.back() != 1) out.b.push_back(1);  // unreachable: b_s = d^0 = 1
  return out;
}

std::string trace_csv(const StageTrace& trace) {
  std::ostringstream out;
  out << "stage,t_stage,survivors_before,survivors_after_decode,"
         "survivors_after_prune,pivot_size,ledger_size\n";
  for (const StageRecord& r : trace.records)
    out << r.stage << "," << r.tests << "," << r.survivors_before << ","
        << r.survivors_after_decode << "," << r.survivors_after_prune << ","
        << r.pivot_size << "," << r.ledger_size << "\n";
  return out.str();
}

std::vector<Hyperedge> mutual_difference_prune(const std::vector<Hyperedge>& s,
                                               int b) {
  std::vector<Hyperedge> out;
  for (const Hyperedge& e : s) {
    bool keep = true;
    for (const Hyperedge& other : s)
      if (other.difference_count(e) >= b) {
        keep = false;
        break;
      }
    if (keep) out.push_back(e);
  }
  return out;
}

std::vector<Survivor> mutual_difference_prune(const std::vector<Survivor>& s,
                                              int b) {
  std::vector<Survivor> out;
  for (const Survivor& e : s) {
    bool keep = true;
    for (const Survivor& other : s)
      if (other.reduced.difference_count(e.reduced) >= b) {
        keep = false;
        break;
      }
    if (keep) out.push_back(e);
  }
  return out;
}

ReducedStageResult reduced_discard_stage(const std::vector<Survivor>& current,
                                         int n, int b, int p, double delta,
                                         std::uint64_t seed, int stage_index,
                                         PoolOracle& oracle, Bitset& ledger,
                                         ConstructMode mode,
                                         DiscardMatrixCache* cache) {
  if (current.empty())
    throw InconsistencyError("reduced stage entered with no survivors");
  if (b < 2) throw PreconditionError("reduced stage needs b >= 2");
  if (p < 1 || p > b - 1) throw PreconditionError("need 1 <= p <= b-1");
  // An unlucky probabilistic stage can under-discard; detect it here rather
  // than corrupting the decode.
  for (const Survivor& x : current)
    for (const Survivor& y : current)
      if (y.reduced.difference_count(x.reduced) >= b)
        throw InconsistencyError("difference bound b violated on entry");

  // Pivot: maximum-size reduced form, canonically smallest on ties.
  const Survivor* pivot_owner = &current.front();
  for (const Survivor& x : current) {
    const int cx = x.reduced.count(), cp = pivot_owner->reduced.count();
    if (cx > cp ||
        (cx == cp && Bitset::canonical_less(x.reduced, pivot_owner->reduced)))
      pivot_owner = &x;
  }
  const Hyperedge pivot = pivot_owner->reduced;

  // Reduced edge set with duplicates merged; matrix construction only.
  std::vector<Hyperedge> hat;
  for (const Survivor& x : current) {
    Hyperedge h = x.reduced.minus(pivot);
    if (std::find(hat.begin(), hat.end(), h) == hat.end())
      hat.push_back(std::move(h));
  }

  DiscardMatrix dm = build_discard(cache, hat, n, b - 1, p, delta, seed, mode);
  TestMatrix combined = dm.matrix;
  for (int v : pivot.ids()) {
    Bitset row(n);
    row.set(v);
    combined.append_row(std::move(row));
  }

  const ResponseVector r = oracle.answer(stage_index, combined);

  Bitset clean(n);
  for (int i = 0; i < combined.t(); ++i)
    if (!r.test(i + 1)) clean |= combined.row(i);

  Bitset defective_pivot(n), clean_pivot(n);
  int k = dm.matrix.t();
  for (int v : pivot.ids()) {
    if (r.test(++k))
      defective_pivot.set(v);
    else
      clean_pivot.set(v);
  }
  ledger |= defective_pivot;

  ReducedStageResult out;
  out.pivot = pivot;
  out.tests = combined.t();
  for (const Survivor& x : current) {
    Hyperedge hat_e = x.reduced.minus(pivot);
    if (hat_e.intersects(clean)) continue;  // contains a provably clean vertex
    const Bitset inter = x.reduced & pivot;
    if (inter.intersects(clean_pivot)) continue;        // clean pivot vertex
    if (!defective_pivot.is_subset_of(inter)) continue;  // misses a defective
    out.survivors.push_back(Survivor{x.original_index, std::move(hat_e)});
  }
  if (out.survivors.empty())
    throw InconsistencyError("reduced stage discarded every candidate");
  out.after_decode = out.survivors.size();
  return out;
}

SearchResult one_stage_search(const Hypergraph& h, double delta,
                              std::uint64_t seed, PoolOracle& oracle,
                              ConstructMode mode, DiscardMatrixCache* cache) {
  const auto& E = h.edges();
  if (E.empty()) throw PreconditionError("no candidate hyperedges");
  SearchResult res;
  res.trace.ledger = Bitset(h.n());
  if (E.size() == 1) {
    res.edge = E.front();  // zero tests: nothing to distinguish
    return res;
  }

  const int d = h.max_edge_size();
  DiscardMatrix dm =
      build_discard(cache, E, h.n(), d, 1, delta, mix_seed(seed, 1), mode);
  const ResponseVector r = oracle.answer(1, dm.matrix);
  std::vector<Hyperedge> survivors = decode_survivors(dm.matrix, r, E);
  if (survivors.empty())
    throw InconsistencyError("decode left no survivors");

  // With p = 1 the survivors must form a chain under inclusion; the defective
  // hyperedge is the largest (it contains every defective vertex).
  std::sort(survivors.begin(), survivors.end(),
            [](const Hyperedge& a, const Hyperedge& b) {
              return a.count() < b.count();
            });
  for (std::size_t i = 1; i < survivors.size(); ++i)
    if (!survivors[i - 1].is_subset_of(survivors[i]))
      throw InconsistencyError("survivors are not a chain under inclusion");

  res.edge = survivors.back();
  res.trace.records.push_back(StageRecord{1, dm.matrix.t(), E.size(),
                                          survivors.size(), survivors.size(),
                                          0, 0});
  return res;
}

SearchResult s_stage_search(const Hypergraph& h, const Schedule& schedule,
                            double delta, std::uint64_t seed,
                            PoolOracle& oracle, ConstructMode mode,
                            DiscardMatrixCache* cache) {
  const auto& E = h.edges();
  if (E.empty()) throw PreconditionError("no candidate hyperedges");
  const int d = h.max_edge_size();
  validate_schedule(schedule, d);
  const int s = schedule.s();
  const double delta_stage = delta / s;

  SearchResult res;
  res.trace.ledger = Bitset(h.n());

  // Stage 1: discard with p = b_1 over the full edges, then prune.
  const int b1 = schedule.b.front();
  DiscardMatrix dm =
      build_discard(cache, E, h.n(), d, b1, delta_stage, mix_seed(seed, 1), mode);
  const ResponseVector r = oracle.answer(1, dm.matrix);
  const auto idxs = decode_survivor_indices(dm.matrix, r, E);
  if (idxs.empty()) throw InconsistencyError("stage 1 left no survivors");

  std::vector<Survivor> surv;
  surv.reserve(idxs.size());
  for (std::size_t i : idxs) surv.push_back(Survivor{i, E[i]});
  const std::size_t after_decode = surv.size();
  surv = mutual_difference_prune(surv, b1);
  if (surv.empty())
    throw InconsistencyError("stage 1 prune left no survivors");
  res.trace.records.push_back(StageRecord{1, dm.matrix.t(), E.size(),
                                          after_decode, surv.size(), 0, 0});

  for (int stage = 2; stage <= s; ++stage) {
    const int b = schedule.b[static_cast<std::size_t>(stage - 2)];
    const int p = schedule.b[static_cast<std::size_t>(stage - 1)];
    const std::size_t before = surv.size();
    ReducedStageResult step = reduced_discard_stage(
        surv, h.n(), b, p, delta_stage, mix_seed(seed, static_cast<std::uint64_t>(stage)),
        stage, oracle, res.trace.ledger, mode, cache);
    surv = mutual_difference_prune(step.survivors, p);
    if (surv.empty())
      throw InconsistencyError("stage " + std::to_string(stage) +
                               " prune left no survivors");
    res.trace.records.push_back(
        StageRecord{stage, step.tests, before, step.after_decode, surv.size(),
                    step.pivot.count(),
                    static_cast<std::size_t>(res.trace.ledger.count())});
  }

  // After the b_s = 1 prune every keeper contains all others, so the final
  // reduced forms coincide.
  const Hyperedge& reduced = surv.front().reduced;
  for (const Survivor& x : surv)
    if (!(x.reduced == reduced))
      throw InconsistencyError("incomparable survivors after final stage");

  const Hyperedge candidate = reduced | res.trace.ledger;
  bool matched = false;
  for (const Survivor& x : surv)
    if (E[x.original_index] == candidate) matched = true;
  if (!matched)
    throw InconsistencyError("reconstructed edge is not a surviving candidate");
  res.edge = candidate;
  return res;
}

SearchResult two_stage_search(const Hypergraph& h, double delta,
                              std::uint64_t seed, PoolOracle& oracle,
                              ConstructMode mode, DiscardMatrixCache* cache) {
  const int d = std::max(h.max_edge_size(), 1);
  return s_stage_search(h, default_schedule(d, std::min(2, d)), delta, seed,
                        oracle, mode, cache);
}

SearchResult three_stage_search(const Hypergraph& h, double delta,
                                std::uint64_t seed, PoolOracle& oracle,
                                ConstructMode mode, DiscardMatrixCache* cache) {
  const int d = std::max(h.max_edge_size(), 1);
  return s_stage_search(h, default_schedule(d, std::min(3, d)), delta, seed,
                        oracle, mode, cache);
}

}  // namespace hgt
