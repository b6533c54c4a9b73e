#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hgt/bench.hpp"
#include "hgt/bounds.hpp"
#include "hgt/codes.hpp"
#include "hgt/hypergraph.hpp"
#include "hgt/stages.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitInconsistency = 3;
constexpr int kExitBudget = 4;

hgt::Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hgt::ParseError("cannot open hypergraph file " + path);
  return hgt::parse_hypergraph(in);
}

hgt::TestMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hgt::ParseError("cannot open matrix file " + path);
  return hgt::parse_matrix(in);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw hgt::ParseError("cannot open output file " + path);
  return out;
}

hgt::Bitset parse_vertex_list(const std::string& text, int n) {
  hgt::Bitset out(n);
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const int v = std::stoi(item);
    if (v < 1 || v > n)
      throw hgt::PreconditionError("vertex " + std::to_string(v) +
                                   " out of range [1.." + std::to_string(n) + "]");
    out.set(v);
  }
  if (out.none()) throw hgt::PreconditionError("empty vertex list");
  return out;
}

hgt::ConstructMode parse_mode(const std::string& mode) {
  if (mode == "certified") return hgt::ConstructMode::certified;
  if (mode == "probabilistic") return hgt::ConstructMode::probabilistic;
  throw hgt::PreconditionError("mode must be 'certified' or 'probabilistic'");
}

void print_report(const hgt::BoundReport& r, std::ostream& out) {
  out << r.name << ",";
  if (r.applicable)
    out << *r.value << ",";
  else
    out << ",";
  out << (r.applicable ? (r.clamped ? "clamped" : "") : r.reason) << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"group testing on arbitrary hypergraphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random hypergraph");
  int gen_n = 0, gen_d = 0, gen_m = 0;
  std::optional<int> gen_lambda;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--d", gen_d, "edge size")->required();
  gen->add_option("--m", gen_m, "edge count")->required();
  gen->add_option("--lambda-bar", gen_lambda, "max pairwise intersection");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // metrics
  auto* met = app.add_subcommand("metrics", "structural metrics of a hypergraph");
  std::string met_file;
  met->add_option("--hypergraph", met_file, "hypergraph file")->required();

  // bounds
  auto* bnd = app.add_subcommand("bounds", "evaluate bound calculators as CSV");
  double bnd_n = 0, bnd_m = 0, bnd_c = 1.0;
  int bnd_d = 0, bnd_s = 2, bnd_chi = 1;
  std::optional<int> bnd_v, bnd_lambda;
  long long bnd_q = 1;
  double bnd_c1 = 1.0, bnd_c2 = 1.0;
  bnd->add_option("--n", bnd_n)->required();
  bnd->add_option("--m", bnd_m)->required();
  bnd->add_option("--d", bnd_d)->required();
  bnd->add_option("--v", bnd_v, "Theorem parameter v (default d-1)");
  bnd->add_option("--lambda-bar", bnd_lambda, "intersection cap");
  bnd->add_option("--c", bnd_c, "constant c in [1,3/2)");
  bnd->add_option("--q", bnd_q, "trivial two-stage q");
  bnd->add_option("--chi", bnd_chi, "trivial two-stage chi");
  bnd->add_option("--s", bnd_s, "stage count for the cost estimate");
  bnd->add_option("--c1", bnd_c1, "fitted C1");
  bnd->add_option("--c2", bnd_c2, "fitted C2");

  // build-code
  auto* bld = app.add_subcommand("build-code", "construct a p-discard matrix");
  std::string bld_file, bld_out_matrix, bld_out_cert, bld_mode = "certified";
  int bld_p = 1;
  double bld_delta = 0.05;
  std::uint64_t bld_seed = 0;
  bld->add_option("--hypergraph", bld_file)->required();
  bld->add_option("--p", bld_p, "discard parameter");
  bld->add_option("--delta", bld_delta, "failure budget");
  bld->add_option("--seed", bld_seed);
  bld->add_option("--mode", bld_mode, "certified|probabilistic");
  bld->add_option("--out-matrix", bld_out_matrix, "matrix file (default stdout)");
  bld->add_option("--out-cert", bld_out_cert, "certification CSV file");

  // verify-code
  auto* ver = app.add_subcommand("verify-code", "verify separability / p-discard");
  std::string ver_hg, ver_matrix;
  std::optional<int> ver_p;
  ver->add_option("--hypergraph", ver_hg)->required();
  ver->add_option("--matrix", ver_matrix)->required();
  ver->add_option("--p", ver_p, "verify p-discard instead of separability");

  // run
  auto* run = app.add_subcommand("run", "single staged-search trial");
  std::string run_hg, run_estar, run_schedule, run_mode = "certified";
  int run_stages = 0;
  double run_delta = 0.05;
  std::uint64_t run_seed = 0;
  run->add_option("--hypergraph", run_hg)->required();
  run->add_option("--estar", run_estar, "hidden edge, comma-separated vertices")
      ->required();
  run->add_option("--stages", run_stages, "stage count (default schedule)");
  run->add_option("--schedule", run_schedule, "explicit b_1,...,b_s");
  run->add_option("--delta", run_delta);
  run->add_option("--seed", run_seed);
  run->add_option("--mode", run_mode);

  // sweep
  auto* swp = app.add_subcommand("sweep", "experiment sweep to CSV");
  std::string swp_config, swp_out;
  swp->add_option("--config", swp_config, "JSON config file")->required();
  swp->add_option("--out", swp_out, "CSV output (default stdout)");

  // min-length
  auto* mnl = app.add_subcommand("min-length", "brute-force minimal separable length");
  std::string mnl_hg;
  int mnl_tmax = 4;
  mnl->add_option("--hypergraph", mnl_hg)->required();
  mnl->add_option("--t-max", mnl_tmax, "search cap");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    hgt::Hypergraph h =
        gen_lambda ? hgt::gen_bounded_intersection(gen_n, gen_d, gen_m,
                                                   *gen_lambda, gen_seed)
                   : hgt::gen_random_uniform(gen_n, gen_d, gen_m, gen_seed);
    if (gen_out.empty()) {
      hgt::write_hypergraph(std::cout, h);
    } else {
      auto out = open_out(gen_out);
      hgt::write_hypergraph(out, h);
    }
    return kExitOk;
  }

  if (met->parsed()) {
    const hgt::Hypergraph h = load_hypergraph(met_file);
    const hgt::Metrics m = hgt::metrics(h);
    std::cout << "n " << h.n() << "\nedges " << h.edge_count() << "\nd " << m.d
              << "\nmin_diff ";
    if (m.min_diff) std::cout << *m.min_diff; else std::cout << "undefined";
    std::cout << "\nmax_diff ";
    if (m.max_diff) std::cout << *m.max_diff; else std::cout << "undefined";
    std::cout << "\nmax_intersection ";
    if (m.max_intersection) std::cout << *m.max_intersection;
    else std::cout << "undefined";
    std::cout << "\nuniform " << (m.uniform ? "true" : "false")
              << "\nmax_degree " << m.max_degree << "\nhas_nested "
              << (m.has_nested ? "true" : "false") << "\n";
    return kExitOk;
  }

  if (bnd->parsed()) {
    std::cout << "name,value,reason\n";
    std::cout << "info_lower_bound,"
              << hgt::info_lower_bound(static_cast<long long>(bnd_m)) << ",\n";
    const int v = bnd_v.value_or(bnd_d - 1);
    print_report(hgt::separable_lower_bound(bnd_n, bnd_m, bnd_d, v, bnd_c),
                 std::cout);
    if (bnd_lambda) {
      const auto ib =
          hgt::intersection_lower_bound(bnd_n, bnd_m, bnd_d, *bnd_lambda, bnd_c);
      print_report(ib.corollary1, std::cout);
      print_report(ib.corollary2, std::cout);
      if (*bnd_lambda < bnd_d)
        std::cout << "edge_count_cap,"
                  << hgt::edge_count_cap(static_cast<int>(bnd_n), bnd_d,
                                         *bnd_lambda)
                  << ",\n";
    }
    std::cout << "s_stage_cost_estimate,"
              << hgt::s_stage_cost_estimate(bnd_d, bnd_m, bnd_s, bnd_c1, bnd_c2)
              << ",\n";
    print_report(
        hgt::trivial_two_stage_bound(bnd_n, bnd_m, bnd_d, bnd_q, bnd_chi),
        std::cout);
    return kExitOk;
  }

  if (bld->parsed()) {
    const hgt::Hypergraph h = load_hypergraph(bld_file);
    const auto dm = hgt::construct_discard_matrix(
        h.edges(), h.n(), h.max_edge_size(), bld_p, bld_delta, bld_seed,
        parse_mode(bld_mode));
    if (bld_out_matrix.empty()) {
      hgt::write_matrix(std::cout, dm.matrix);
    } else {
      auto out = open_out(bld_out_matrix);
      hgt::write_matrix(out, dm.matrix);
    }
    const std::string cert = hgt::certification_csv(dm.cert, dm.matrix.t());
    if (bld_out_cert.empty()) {
      std::cout << cert;
    } else {
      auto out = open_out(bld_out_cert);
      out << cert;
    }
    return kExitOk;
  }

  if (ver->parsed()) {
    const hgt::Hypergraph h = load_hypergraph(ver_hg);
    const hgt::TestMatrix m = load_matrix(ver_matrix);
    const hgt::Certification cert =
        ver_p ? hgt::is_p_discarding(m, h.edges(), *ver_p)
              : hgt::is_separable(m, h.edges());
    std::cout << hgt::certification_csv(cert, m.t());
    if (cert.witness)
      std::cout << "witness " << cert.witness->first.to_string() << " "
                << cert.witness->second.to_string() << "\n";
    return cert.status == hgt::CertStatus::refuted ? kExitInconsistency
                                                   : kExitOk;
  }

  if (run->parsed()) {
    const hgt::Hypergraph h = load_hypergraph(run_hg);
    const hgt::Hyperedge estar = parse_vertex_list(run_estar, h.n());
    const int d = h.max_edge_size();
    hgt::Schedule schedule;
    if (!run_schedule.empty()) {
      std::istringstream in(run_schedule);
      std::string item;
      while (std::getline(in, item, ',')) schedule.b.push_back(std::stoi(item));
    } else {
      const int s = run_stages > 0 ? run_stages : 1;
      schedule = hgt::default_schedule(d, std::min(s, d));
    }
    const hgt::TrialResult tr =
        hgt::run_trial(h, estar, schedule, run_delta, run_seed,
                       parse_mode(run_mode));
    if (!tr.failure_reason.empty())
      throw hgt::InconsistencyError(tr.failure_reason);
    std::cout << "returned " << tr.returned->to_string() << "\nsuccess "
              << (tr.success ? "true" : "false") << "\ntotal_tests "
              << tr.total_tests << "\nbatches " << tr.batches << "\ntests";
    for (int t : tr.tests_per_stage) std::cout << " " << t;
    std::cout << "\n";
    return kExitOk;
  }

  if (swp->parsed()) {
    std::ifstream in(swp_config);
    if (!in) throw hgt::ParseError("cannot open config " + swp_config);
    const hgt::SweepConfig cfg = hgt::parse_sweep_config(in);
    if (swp_out.empty()) {
      hgt::run_sweep(cfg, std::cout, &std::cerr);
    } else {
      auto out = open_out(swp_out);
      hgt::run_sweep(cfg, out, &std::cerr);
    }
    return kExitOk;
  }

  if (mnl->parsed()) {
    const hgt::Hypergraph h = load_hypergraph(mnl_hg);
    const auto res =
        hgt::brute_force_min_length(h.edges(), h.n(), mnl_tmax);
    if (res.exceeded) {
      std::cout << "min_length >" << res.t << "\n";
      return kExitBudget;
    }
    std::cout << "min_length " << res.t << "\n";
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const hgt::InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kExitInconsistency;
  } catch (const hgt::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const hgt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
