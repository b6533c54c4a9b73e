#include "hgt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "hgt/rng.hpp"

namespace hgt {

ResponseVector TestOracle::answer(int stage, const TestMatrix& pools) {
  if (!answered_.insert(stage).second)
    throw InconsistencyError("stage " + std::to_string(stage) +
                             " was already answered: tests within a stage "
                             "must arrive as one batch");
  log_.emplace_back(stage, pools.t());
  return response_vector(pools, estar_);
}

TrialResult run_trial(const Hypergraph& h, const Hyperedge& estar,
                      const Schedule& schedule, double delta,
                      std::uint64_t seed, ConstructMode mode,
                      DiscardMatrixCache* cache) {
  bool found = false;
  for (const Hyperedge& e : h.edges())
    if (e == estar) found = true;
  if (!found) throw PreconditionError("e* must be a candidate hyperedge");

  TrialResult res;
  res.seed = seed;
  TestOracle oracle(estar);
  const auto start = std::chrono::steady_clock::now();
  try {
    SearchResult sr = s_stage_search(h, schedule, delta, seed, oracle, mode, cache);
    res.returned = sr.edge;
    res.success = (sr.edge == estar);
    for (const StageRecord& rec : sr.trace.records)
      res.tests_per_stage.push_back(rec.tests);
  } catch (const InconsistencyError& err) {
    res.failure_reason = err.what();
  } catch (const BudgetError& err) {
    res.failure_reason = err.what();
  }
  const auto end = std::chrono::steady_clock::now();
  res.wall_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  for (int t : res.tests_per_stage) res.total_tests += t;
  res.batches = oracle.batches();
  return res;
}

VerifyReport exhaustive_verify(const Hypergraph& h, const Schedule& schedule,
                               double delta, std::uint64_t seed,
                               ConstructMode mode, DiscardMatrixCache* cache) {
  VerifyReport rep;
  long long total = 0;
  for (const Hyperedge& estar : h.edges()) {
    TrialResult tr = run_trial(h, estar, schedule, delta, seed, mode, cache);
    ++rep.trials;
    if (tr.success) ++rep.successes;
    rep.max_tests = std::max(rep.max_tests, tr.total_tests);
    total += tr.total_tests;
  }
  rep.success_rate =
      rep.trials == 0 ? 0.0 : static_cast<double>(rep.successes) / rep.trials;
  rep.mean_tests =
      rep.trials == 0 ? 0.0 : static_cast<double>(total) / rep.trials;
  return rep;
}

namespace {

// DFS over column assignments.  Column j takes a value in [0, 2^t); an edge
// is "complete" once its largest vertex has been assigned, at which point its
// OR is final and must differ from every previously completed edge's OR.
struct MinLengthSearch {
  int n, t;
  const std::vector<Hyperedge>* edges;
  std::vector<std::vector<std::size_t>> completes_at;  // per column
  std::vector<std::vector<std::size_t>> contains;      // per column
  std::vector<std::uint32_t> ors;
  std::vector<std::size_t> completed;
  std::vector<std::uint32_t> columns;

  bool dfs(int j) {
    if (j > n) return true;
    const std::uint32_t vals = 1u << t;
    const auto& touch = contains[static_cast<std::size_t>(j)];
    const auto& done = completes_at[static_cast<std::size_t>(j)];
    for (std::uint32_t val = 0; val < vals; ++val) {
      std::vector<std::uint32_t> saved;
      saved.reserve(touch.size());
      for (std::size_t e : touch) {
        saved.push_back(ors[e]);
        ors[e] |= val;
      }
      bool ok = true;
      const std::size_t completed_before = completed.size();
      for (std::size_t e : done) {
        for (std::size_t other : completed)
          if (ors[other] == ors[e]) {
            ok = false;
            break;
          }
        if (!ok) break;
        completed.push_back(e);
      }
      if (ok) {
        columns[static_cast<std::size_t>(j - 1)] = val;
        if (dfs(j + 1)) return true;
      }
      completed.resize(completed_before);
      for (std::size_t i = 0; i < touch.size(); ++i) ors[touch[i]] = saved[i];
    }
    return false;
  }
};

}  // namespace

MinLengthResult brute_force_min_length(const std::vector<Hyperedge>& edges,
                                       int n, int t_max, int cell_cap) {
  if (t_max < 0) throw PreconditionError("t_max must be >= 0");
  if (t_max * n > cell_cap)
    throw PreconditionError("t_max * n exceeds the search cap of " +
                            std::to_string(cell_cap));
  MinLengthResult res;
  if (edges.size() <= 1) {
    res.t = 0;
    return res;
  }
  for (int t = 1; t <= t_max; ++t) {
    MinLengthSearch search;
    search.n = n;
    search.t = t;
    search.edges = &edges;
    search.completes_at.assign(static_cast<std::size_t>(n) + 1, {});
    search.contains.assign(static_cast<std::size_t>(n) + 1, {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
      int last = 0;
      for (int v = edges[e].next_id(0); v != 0; v = edges[e].next_id(v)) {
        search.contains[static_cast<std::size_t>(v)].push_back(e);
        last = v;
      }
      search.completes_at[static_cast<std::size_t>(last)].push_back(e);
    }
    search.ors.assign(edges.size(), 0);
    search.columns.assign(static_cast<std::size_t>(n), 0);
    if (search.dfs(1)) {
      res.t = t;
      TestMatrix m(t, n);
      std::vector<Bitset> rows(static_cast<std::size_t>(t), Bitset(n));
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < t; ++i)
          if (search.columns[static_cast<std::size_t>(j - 1)] >> i & 1)
            rows[static_cast<std::size_t>(i)].set(j);
      res.witness = TestMatrix(n, std::move(rows));
      return res;
    }
  }
  res.exceeded = true;
  res.t = t_max;
  return res;
}

FitResult fit_constants(const std::vector<CostPoint>& points) {
  std::set<std::tuple<int, double, int>> distinct;
  for (const CostPoint& p : points) distinct.insert({p.d, p.m, p.s});
  if (distinct.size() < 3)
    throw PreconditionError("need at least 3 distinct (d, m, s) points");

  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (const CostPoint& p : points) {
    const double x1 = p.s * std::pow(static_cast<double>(p.d), 1.0 / p.s) *
                      std::log2(p.m);
    const double x2 = static_cast<double>(p.s) * p.d;
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    b1 += x1 * p.total;
    b2 += x2 * p.total;
  }
  const double det = s11 * s22 - s12 * s12;
  if (std::abs(det) < 1e-9 * std::max(1.0, s11 * s22))
    throw PreconditionError("rank-deficient design: regressors are collinear");

  FitResult fit;
  fit.c1 = (b1 * s22 - b2 * s12) / det;
  fit.c2 = (b2 * s11 - b1 * s12) / det;
  // Clamp to the nonnegative orthant, refitting the free coefficient.
  if (fit.c1 < 0.0) {
    fit.c1 = 0.0;
    fit.c2 = s22 > 0 ? std::max(0.0, b2 / s22) : 0.0;
  } else if (fit.c2 < 0.0) {
    fit.c2 = 0.0;
    fit.c1 = s11 > 0 ? std::max(0.0, b1 / s11) : 0.0;
  }

  double sum = 0, worst = 0;
  for (const CostPoint& p : points) {
    const double pred =
        s_stage_cost_estimate(p.d, p.m, p.s, fit.c1, fit.c2);
    const double r = std::abs(p.total - pred);
    sum += r;
    worst = std::max(worst, r);
  }
  fit.mean_residual = points.empty() ? 0.0 : sum / points.size();
  fit.max_residual = worst;
  return fit;
}

SweepConfig parse_sweep_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad sweep config: ") + e.what());
  }
  SweepConfig cfg;
  try {
    for (const auto& inst : j.at("instances")) {
      SweepInstance si;
      si.n = inst.at("n").get<int>();
      si.d = inst.at("d").get<int>();
      si.m = inst.at("m").get<int>();
      if (inst.contains("lambda_bar") && !inst["lambda_bar"].is_null())
        si.lambda_bar = inst["lambda_bar"].get<int>();
      si.seed = inst.value("seed", 0ULL);
      cfg.instances.push_back(si);
    }
    cfg.schedules = j.at("schedules").get<std::vector<int>>();
    cfg.delta = j.value("delta", 0.05);
    cfg.trials = j.value("trials", 5);
    cfg.trial_seed = j.value("trial_seed", 1ULL);
    const std::string mode = j.value("mode", "certified");
    if (mode == "certified")
      cfg.mode = ConstructMode::certified;
    else if (mode == "probabilistic")
      cfg.mode = ConstructMode::probabilistic;
    else
      throw ParseError("mode must be 'certified' or 'probabilistic'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad sweep config: ") + e.what());
  }
  return cfg;
}

void run_sweep(const SweepConfig& config, std::ostream& csv_out,
               std::ostream* log) {
  int max_s = 1;
  for (int s : config.schedules) max_s = std::max(max_s, s);

  csv_out << "n,d,m,lambda_bar,s,schedule,seed,trial,estar_id,success";
  for (int i = 1; i <= max_s; ++i) csv_out << ",t_stage_" << i;
  csv_out << ",total_tests,info_lb,sep_lb,wall_ms\n";

  for (std::size_t ii = 0; ii < config.instances.size(); ++ii) {
    const SweepInstance& inst = config.instances[ii];
    Hypergraph h(0, {});
    try {
      h = inst.lambda_bar
              ? gen_bounded_intersection(inst.n, inst.d, inst.m,
                                         *inst.lambda_bar, inst.seed)
              : gen_random_uniform(inst.n, inst.d, inst.m, inst.seed);
    } catch (const Error& e) {
      if (log)
        *log << "# skipped instance n=" << inst.n << " d=" << inst.d
             << " m=" << inst.m << ": " << e.what() << "\n";
      continue;
    }
    const int m = static_cast<int>(h.edge_count());
    const int info_lb = info_lower_bound(m);
    const BoundReport sep =
        separable_lower_bound(h.n(), m, inst.d, inst.d - 1, 1.0);

    for (int s : config.schedules) {
      Schedule schedule;
      try {
        schedule = default_schedule(inst.d, std::min(s, inst.d));
      } catch (const Error& e) {
        if (log)
          *log << "# skipped schedule s=" << s << " for d=" << inst.d << ": "
               << e.what() << "\n";
        continue;
      }
      std::ostringstream sched_str;
      for (std::size_t i = 0; i < schedule.b.size(); ++i)
        sched_str << (i ? "-" : "") << schedule.b[i];

      // Choose e* targets: exhaustive, or a deterministic sample.
      std::vector<std::size_t> targets;
      if (config.trials == 0 || config.trials >= m) {
        for (int i = 0; i < m; ++i) targets.push_back(static_cast<std::size_t>(i));
      } else {
        Rng pick(mix_seed(config.trial_seed, mix_seed(ii, static_cast<std::uint64_t>(s))));
        std::vector<std::size_t> all(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        for (int i = 0; i < config.trials; ++i) {
          const int j = i + pick.below(m - i);
          std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
        }
        targets.assign(all.begin(), all.begin() + config.trials);
      }

      DiscardMatrixCache cache;
      for (std::size_t trial = 0; trial < targets.size(); ++trial) {
        const std::size_t estar_id = targets[trial];
        const std::uint64_t seed =
            mix_seed(config.trial_seed, mix_seed(ii, 1000 + static_cast<std::uint64_t>(s)));
        TrialResult tr = run_trial(h, h.edges()[estar_id], schedule,
                                   config.delta, seed, config.mode, &cache);
        csv_out << h.n() << "," << inst.d << "," << m << ",";
        if (inst.lambda_bar) csv_out << *inst.lambda_bar;
        csv_out << "," << schedule.s() << "," << sched_str.str() << ","
                << inst.seed << "," << trial << "," << estar_id << ","
                << (tr.success ? 1 : 0);
        for (int i = 0; i < max_s; ++i) {
          csv_out << ",";
          if (i < static_cast<int>(tr.tests_per_stage.size()))
            csv_out << tr.tests_per_stage[static_cast<std::size_t>(i)];
        }
        csv_out << "," << tr.total_tests << "," << info_lb << ",";
        if (sep.applicable) csv_out << *sep.value;
        csv_out << "," << tr.wall_ms << "\n";
      }
    }
  }
}

}  // namespace hgt
