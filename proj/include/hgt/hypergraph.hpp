#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hgt/bitset.hpp"
#include "hgt/errors.hpp"

namespace hgt {

using Hyperedge = Bitset;

// Vertex set [1..n] plus a set of distinct candidate defective hyperedges.
// Edges are kept sorted in canonical order so every downstream iteration is
// deterministic.
class Hypergraph {
 public:
  Hypergraph(int n, std::vector<Hyperedge> edges);

  int n() const { return n_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  int max_edge_size() const;
  // Degree of each vertex; index 0 unused.
  std::vector<int> degrees() const;

 private:
  int n_;
  std::vector<Hyperedge> edges_;
};

struct Metrics {
  int d = 0;                            // max hyperedge size
  std::optional<int> min_diff;          // the paper's p; skips nested pairs
  std::optional<int> max_diff;          // strict bound b = max_diff + 1
  std::optional<int> max_intersection;  // lambda-bar
  bool uniform = true;
  int max_degree = 0;
  bool has_nested = false;  // some e' properly contained in some e
};

struct NormalizeResult {
  Hypergraph graph;
  // old id -> new id; 0 marks a dropped (isolated) vertex.  Index 0 unused.
  std::vector<int> relabel;
};

// Removes isolated vertices and relabels onto [1..n'].
NormalizeResult normalize(const Hypergraph& h);

Metrics metrics(const Hypergraph& h);

struct HighDegreeSubset {
  std::vector<Hyperedge> edges;  // edges whose every vertex has degree >= f
  long long lower_bound;         // |E| - (f-1) * n_s
};

// Requires a d-uniform hypergraph and f <= |E|*d/n.
HighDegreeSubset high_degree_edge_subset(const Hypergraph& h, int f);

// m distinct uniformly sampled d-subsets of [n]; output normalized.
Hypergraph gen_random_uniform(int n, int d, int m, std::uint64_t seed);

// d-uniform with pairwise intersections <= lambda_bar, by rejection sampling.
// attempt_budget < 0 selects the default of 1000*m attempts.
Hypergraph gen_bounded_intersection(int n, int d, int m, int lambda_bar,
                                    std::uint64_t seed,
                                    long long attempt_budget = -1);

// Canonical text format:
//   n <N>
//   e <v1> <v2> ... <vk>     (1-based, strictly increasing)
// '#' starts a comment line.  Duplicate edge lines are a parse error.
Hypergraph parse_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

}  // namespace hgt
