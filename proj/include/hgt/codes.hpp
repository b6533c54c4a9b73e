#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hgt/bitset.hpp"
#include "hgt/errors.hpp"
#include "hgt/hypergraph.hpp"

namespace hgt {

// t pools over n vertices; row i is pool T_i, stored as a vertex bitset.
class TestMatrix {
 public:
  TestMatrix(int t, int n) : n_(n), rows_(static_cast<std::size_t>(t), Bitset(n)) {}
  TestMatrix(int n, std::vector<Bitset> rows);

  int t() const { return static_cast<int>(rows_.size()); }
  int n() const { return n_; }
  const std::vector<Bitset>& rows() const { return rows_; }
  const Bitset& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  void append_row(Bitset r);

  // Column view: rows containing vertex j, as a bitset over [1..t].
  Bitset column(int j) const;

 private:
  int n_;
  std::vector<Bitset> rows_;
};

// t bits; bit i = 1 iff pool T_i intersects the hidden defective set.
using ResponseVector = Bitset;

enum class CertProperty { separable, p_discard };
enum class CertStatus { certified, probabilistic, refuted };

struct Certification {
  CertProperty property;
  CertStatus status;
  std::optional<int> p;
  std::optional<double> delta;
  // Present iff refuted: the first violating pair in canonical order.
  std::optional<std::pair<Hyperedge, Hyperedge>> witness;
  int rounds = 0;  // Las Vegas rounds taken by construction, 0 otherwise

  bool certified() const { return status == CertStatus::certified; }
};

std::string to_string(CertProperty p);
std::string to_string(CertStatus s);

// CSV line "property,status,p,delta,t,rounds".
std::string certification_csv(const Certification& cert, int t,
                              bool with_header = true);

ResponseVector response_vector(const TestMatrix& m, const Bitset& defectives);

// Definition check: all C(|E|,2) unordered pairs yield distinct response
// vectors.
Certification is_separable(const TestMatrix& m, const std::vector<Hyperedge>& edges);

// For every ordered pair (e, e*) with |e \ e*| >= p there must exist a row
// hitting e \ e* and disjoint from e*.
Certification is_p_discarding(const TestMatrix& m,
                              const std::vector<Hyperedge>& edges, int p);

// Clean-vertex rule: survivors are the edges disjoint from the union of
// negative pools.
std::vector<Hyperedge> decode_survivors(const TestMatrix& m,
                                        const ResponseVector& r,
                                        const std::vector<Hyperedge>& edges);
// Same rule, returning indices into `edges`.
std::vector<std::size_t> decode_survivor_indices(const TestMatrix& m,
                                                 const ResponseVector& r,
                                                 const std::vector<Hyperedge>& edges);

// Each entry independently 1 with probability q; deterministic per seed.
// When `support` is given, entries outside it stay 0.
TestMatrix random_matrix(int t, int n, double q, std::uint64_t seed,
                         const Bitset* support = nullptr);

enum class ConstructMode { certified, probabilistic };

struct DiscardMatrix {
  TestMatrix matrix;
  Certification cert;
};

// Bernoulli construction with density q* = 1/(d+1).  Certified mode runs a
// Las Vegas loop: draw, verify is_p_discarding, escalate t by 1.5x on failure.
// Probabilistic mode returns the analytic-t matrix unverified.
DiscardMatrix construct_discard_matrix(const std::vector<Hyperedge>& edges,
                                       int n, int d, int p, double delta,
                                       std::uint64_t seed, ConstructMode mode,
                                       int max_rounds = 50);

// The analytic starting length ceil(ln(|E|(|E|-1)/delta) / sigma) with
// sigma = (1-q*)^d (1-(1-q*)^p).
int discard_matrix_start_length(std::size_t edge_count, int d, int p,
                                double delta);

// Memoizes construct_discard_matrix results; exhaustive harness runs repeat
// identical constructions for every choice of e*.
class DiscardMatrixCache {
 public:
  DiscardMatrix get(const std::vector<Hyperedge>& edges, int n, int d, int p,
                    double delta, std::uint64_t seed, ConstructMode mode);

 private:
  std::unordered_map<std::string, DiscardMatrix> map_;
};

// Family view F_j = {i in [t] : j in T_i}; exact bijection with the matrix.
std::vector<std::vector<int>> to_family(const TestMatrix& m);
TestMatrix from_family(int t, const std::vector<std::vector<int>>& family);

// Text format: "t <T> n <N>" then t rows of <N> chars from {0,1}.
TestMatrix parse_matrix(std::istream& in);
void write_matrix(std::ostream& out, const TestMatrix& m);

}  // namespace hgt
