#include "hgt/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hgt/rng.hpp"

namespace hgt {

using boost::multiprecision::cpp_int;

namespace {

cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace

Hypergraph::Hypergraph(int n, std::vector<Hyperedge> edges) : n_(n) {
  if (n < 0) throw PreconditionError("vertex count must be nonnegative");
  for (const Hyperedge& e : edges) {
    if (e.width() != n)
      throw PreconditionError("hyperedge width does not match vertex count");
    if (e.none()) throw PreconditionError("empty hyperedge");
  }
  std::sort(edges.begin(), edges.end(), Bitset::canonical_less);
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      throw PreconditionError("duplicate hyperedge " + edges[i].to_string());
  edges_ = std::move(edges);
}

int Hypergraph::max_edge_size() const {
  int d = 0;
  for (const Hyperedge& e : edges_) d = std::max(d, e.count());
  return d;
}

std::vector<int> Hypergraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_) + 1, 0);
  for (const Hyperedge& e : edges_)
    for (int v = e.next_id(0); v != 0; v = e.next_id(v)) ++deg[v];
  return deg;
}

NormalizeResult normalize(const Hypergraph& h) {
  if (h.edge_count() == 0)
    throw PreconditionError("cannot normalize: no candidate hyperedges");
  Bitset covered(h.n());
  for (const Hyperedge& e : h.edges()) covered |= e;

  std::vector<int> relabel(static_cast<std::size_t>(h.n()) + 1, 0);
  int next = 0;
  for (int v = 1; v <= h.n(); ++v)
    if (covered.test(v)) relabel[v] = ++next;

  std::vector<Hyperedge> edges;
  edges.reserve(h.edge_count());
  for (const Hyperedge& e : h.edges()) {
    Hyperedge out(next);
    for (int v = e.next_id(0); v != 0; v = e.next_id(v)) out.set(relabel[v]);
    edges.push_back(std::move(out));
  }
  return NormalizeResult{Hypergraph(next, std::move(edges)), std::move(relabel)};
}

Metrics metrics(const Hypergraph& h) {
  if (h.edge_count() == 0)
    throw PreconditionError("metrics requires at least one hyperedge");
  Metrics m;
  const auto& E = h.edges();
  int min_size = h.n() + 1;
  for (const Hyperedge& e : E) {
    m.d = std::max(m.d, e.count());
    min_size = std::min(min_size, e.count());
  }
  m.uniform = (min_size == m.d);

  for (std::size_t i = 0; i < E.size(); ++i) {
    for (std::size_t j = 0; j < E.size(); ++j) {
      if (i == j) continue;
      const int diff = E[j].difference_count(E[i]);  // |e_j \ e_i|
      if (diff == 0) {
        m.has_nested = true;  // e_j properly contained in e_i
        continue;             // nested pairs excluded from p
      }
      if (!m.min_diff || diff < *m.min_diff) m.min_diff = diff;
    }
  }
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      const int dji = E[j].difference_count(E[i]);
      const int dij = E[i].difference_count(E[j]);
      const int big = std::max(dij, dji);
      if (!m.max_diff || big > *m.max_diff) m.max_diff = big;
      const int inter = E[i].intersection_count(E[j]);
      if (!m.max_intersection || inter > *m.max_intersection)
        m.max_intersection = inter;
    }

  const auto deg = h.degrees();
  for (int v = 1; v <= h.n(); ++v) m.max_degree = std::max(m.max_degree, deg[v]);
  return m;
}

HighDegreeSubset high_degree_edge_subset(const Hypergraph& h, int f) {
  if (f < 1) throw PreconditionError("f must be positive");
  const Metrics m = metrics(h);
  if (!m.uniform)
    throw PreconditionError("high_degree_edge_subset requires a uniform hypergraph");
  const double cap = static_cast<double>(h.edge_count()) * m.d / h.n();
  if (static_cast<double>(f) > cap)
    throw PreconditionError("f exceeds |E|*d/n = " + std::to_string(cap));

  const auto deg = h.degrees();
  Bitset low_degree(h.n());
  long long n_s = 0;
  for (int v = 1; v <= h.n(); ++v)
    if (deg[v] < f) {
      low_degree.set(v);
      ++n_s;
    }

  HighDegreeSubset out;
  for (const Hyperedge& e : h.edges())
    if (!e.intersects(low_degree)) out.edges.push_back(e);
  out.lower_bound =
      static_cast<long long>(h.edge_count()) - static_cast<long long>(f - 1) * n_s;
  return out;
}

Hypergraph gen_random_uniform(int n, int d, int m, std::uint64_t seed) {
  if (d < 1 || d > n) throw PreconditionError("need 1 <= d <= n");
  if (m < 1) throw PreconditionError("need m >= 1");
  const cpp_int total = binomial(n, d);
  if (total < m)
    throw PreconditionError("infeasible: C(n,d) < m");

  Rng rng(mix_seed(seed, 0x67656eULL));
  std::vector<Hyperedge> edges;

  if (total <= std::max<cpp_int>(200000, 4 * cpp_int(m))) {
    // Small space: enumerate every d-subset and draw m by partial shuffle.
    std::vector<Hyperedge> all;
    std::vector<int> pick(d);
    for (int i = 0; i < d; ++i) pick[i] = i + 1;
    while (true) {
      all.push_back(Bitset::of(n, pick));
      int i = d - 1;
      while (i >= 0 && pick[i] == n - (d - 1 - i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    for (int i = 0; i < m; ++i) {
      const int j = i + rng.below(static_cast<int>(all.size()) - i);
      std::swap(all[i], all[j]);
    }
    edges.assign(all.begin(), all.begin() + m);
  } else {
    std::set<std::vector<int>> seen;
    while (static_cast<int>(edges.size()) < m) {
      // Floyd's sampling of a d-subset of [n].
      Bitset e(n);
      for (int j = n - d + 1; j <= n; ++j) {
        const int t = 1 + rng.below(j);
        if (e.test(t))
          e.set(j);
        else
          e.set(t);
      }
      if (seen.insert(e.ids()).second) edges.push_back(std::move(e));
    }
  }
  return normalize(Hypergraph(n, std::move(edges))).graph;
}

Hypergraph gen_bounded_intersection(int n, int d, int m, int lambda_bar,
                                    std::uint64_t seed,
                                    long long attempt_budget) {
  if (d < 1 || d > n) throw PreconditionError("need 1 <= d <= n");
  if (m < 1) throw PreconditionError("need m >= 1");
  if (lambda_bar < 0) throw PreconditionError("lambda_bar must be >= 0");
  if (attempt_budget < 0) attempt_budget = 1000LL * m;

  Rng rng(mix_seed(seed, 0x626f756eULL));
  std::vector<Hyperedge> edges;
  std::set<std::vector<int>> seen;
  long long attempts = 0;
  while (static_cast<int>(edges.size()) < m) {
    if (++attempts > attempt_budget)
      throw BudgetError("rejection budget exhausted after " +
                        std::to_string(edges.size()) + " of " +
                        std::to_string(m) + " edges");
    Bitset e(n);
    for (int j = n - d + 1; j <= n; ++j) {
      const int t = 1 + rng.below(j);
      if (e.test(t))
        e.set(j);
      else
        e.set(t);
    }
    bool ok = seen.find(e.ids()) == seen.end();
    for (const Hyperedge& other : edges) {
      if (!ok) break;
      ok = e.intersection_count(other) <= lambda_bar;
    }
    if (ok) {
      seen.insert(e.ids());
      edges.push_back(std::move(e));
    }
  }
  return normalize(Hypergraph(n, std::move(edges))).graph;
}

Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<Hyperedge> edges;
  std::set<std::vector<int>> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "n") {
      if (n >= 0) throw ParseError("line " + std::to_string(lineno) +
                                   ": duplicate n line");
      if (!(ls >> n) || n < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad n");
    } else if (tag == "e") {
      if (n < 0) throw ParseError("edge line before n line");
      std::vector<int> vs;
      int v;
      while (ls >> v) {
        if (v < 1 || v > n)
          throw ParseError("line " + std::to_string(lineno) +
                           ": vertex out of range");
        if (!vs.empty() && v <= vs.back())
          throw ParseError("line " + std::to_string(lineno) +
                           ": vertices must be strictly increasing");
        vs.push_back(v);
      }
      if (vs.empty())
        throw ParseError("line " + std::to_string(lineno) + ": empty edge");
      if (!seen.insert(vs).second)
        throw ParseError("line " + std::to_string(lineno) + ": duplicate edge");
      edges.push_back(Bitset::of(n, vs));
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown tag '" +
                       tag + "'");
    }
  }
  if (n < 0) throw ParseError("missing n line");
  return Hypergraph(n, std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "n " << h.n() << "\n";
  for (const Hyperedge& e : h.edges()) {
    out << "e";
    for (int v : e.ids()) out << " " << v;
    out << "\n";
  }
}

}  // namespace hgt
