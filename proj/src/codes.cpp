#include "hgt/codes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "hgt/rng.hpp"

namespace hgt {

TestMatrix::TestMatrix(int n, std::vector<Bitset> rows) : n_(n) {
  for (const Bitset& r : rows)
    if (r.width() != n) throw PreconditionError("pool width does not match n");
  rows_ = std::move(rows);
}

void TestMatrix::append_row(Bitset r) {
  if (r.width() != n_) throw PreconditionError("pool width does not match n");
  rows_.push_back(std::move(r));
}

Bitset TestMatrix::column(int j) const {
  if (j < 1 || j > n_) throw PreconditionError("column index out of range");
  Bitset c(t());
  for (int i = 0; i < t(); ++i)
    if (rows_[static_cast<std::size_t>(i)].test(j)) c.set(i + 1);
  return c;
}

std::string to_string(CertProperty p) {
  return p == CertProperty::separable ? "separable" : "p-discard";
}

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::certified: return "certified";
    case CertStatus::probabilistic: return "probabilistic";
    default: return "refuted";
  }
}

std::string certification_csv(const Certification& cert, int t,
                              bool with_header) {
  std::ostringstream out;
  if (with_header) out << "property,status,p,delta,t,rounds\n";
  out << to_string(cert.property) << "," << to_string(cert.status) << ",";
  if (cert.p) out << *cert.p;
  out << ",";
  if (cert.delta) out << *cert.delta;
  out << "," << t << "," << cert.rounds << "\n";
  return out.str();
}

ResponseVector response_vector(const TestMatrix& m, const Bitset& defectives) {
  if (defectives.width() != m.n())
    throw PreconditionError("defective set width does not match matrix");
  ResponseVector r(m.t());
  for (int i = 0; i < m.t(); ++i)
    if (m.row(i).intersects(defectives)) r.set(i + 1);
  return r;
}

namespace {

std::vector<Hyperedge> canonical_sorted(std::vector<Hyperedge> edges) {
  std::sort(edges.begin(), edges.end(), Bitset::canonical_less);
  return edges;
}

}  // namespace

Certification is_separable(const TestMatrix& m,
                           const std::vector<Hyperedge>& edges) {
  Certification cert{CertProperty::separable, CertStatus::certified,
                     std::nullopt, std::nullopt, std::nullopt, 0};
  const auto E = canonical_sorted(edges);
  for (std::size_t i = 0; i < E.size(); ++i) {
    const ResponseVector ri = response_vector(m, E[i]);
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      if (ri == response_vector(m, E[j])) {
        cert.status = CertStatus::refuted;
        cert.witness = {E[i], E[j]};
        return cert;
      }
    }
  }
  return cert;
}

Certification is_p_discarding(const TestMatrix& m,
                              const std::vector<Hyperedge>& edges, int p) {
  if (p < 1) throw PreconditionError("p must be >= 1");
  Certification cert{CertProperty::p_discard, CertStatus::certified,
                     p, std::nullopt, std::nullopt, 0};
  const auto E = canonical_sorted(edges);
  // Canonical pair order, e* outermost; keeps refutation witnesses stable.
  for (std::size_t b = 0; b < E.size(); ++b) {
    for (std::size_t a = 0; a < E.size(); ++a) {
      if (a == b) continue;
      const Bitset diff = E[a].minus(E[b]);  // e \ e*
      if (diff.count() < p) continue;
      bool isolated = false;
      for (const Bitset& row : m.rows()) {
        if (row.intersects(diff) && !row.intersects(E[b])) {
          isolated = true;
          break;
        }
      }
      if (!isolated) {
        cert.status = CertStatus::refuted;
        cert.witness = {E[a], E[b]};  // ordered (e, e*)
        return cert;
      }
    }
  }
  return cert;
}

std::vector<std::size_t> decode_survivor_indices(
    const TestMatrix& m, const ResponseVector& r,
    const std::vector<Hyperedge>& edges) {
  if (r.width() != m.t())
    throw PreconditionError("response length does not match matrix");
  Bitset clean(m.n());
  for (int i = 0; i < m.t(); ++i)
    if (!r.test(i + 1)) clean |= m.row(i);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (!edges[k].intersects(clean)) out.push_back(k);
  return out;
}

std::vector<Hyperedge> decode_survivors(const TestMatrix& m,
                                        const ResponseVector& r,
                                        const std::vector<Hyperedge>& edges) {
  std::vector<Hyperedge> out;
  for (std::size_t k : decode_survivor_indices(m, r, edges))
    out.push_back(edges[k]);
  return out;
}

TestMatrix random_matrix(int t, int n, double q, std::uint64_t seed,
                         const Bitset* support) {
  if (q <= 0.0 || q >= 1.0) throw PreconditionError("need 0 < q < 1");
  Rng rng(mix_seed(seed, 0x6d6174ULL));
  TestMatrix m(0, n);
  for (int i = 0; i < t; ++i) {
    Bitset row(n);
    if (support) {
      for (int v = support->next_id(0); v != 0; v = support->next_id(v))
        if (rng.bernoulli(q)) row.set(v);
    } else {
      for (int v = 1; v <= n; ++v)
        if (rng.bernoulli(q)) row.set(v);
    }
    m.append_row(std::move(row));
  }
  return m;
}

int discard_matrix_start_length(std::size_t edge_count, int d, int p,
                                double delta) {
  const double q = 1.0 / (d + 1);
  const double sigma = std::pow(1.0 - q, d) * (1.0 - std::pow(1.0 - q, p));
  const double mm = static_cast<double>(edge_count);
  return static_cast<int>(std::ceil(std::log(mm * (mm - 1.0) / delta) / sigma));
}

DiscardMatrix construct_discard_matrix(const std::vector<Hyperedge>& edges,
                                       int n, int d, int p, double delta,
                                       std::uint64_t seed, ConstructMode mode,
                                       int max_rounds) {
  if (p < 1) throw PreconditionError("p must be >= 1");
  if (delta <= 0.0 || delta >= 1.0) throw PreconditionError("need delta in (0,1)");
  for (const Hyperedge& e : edges) {
    if (e.width() != n) throw PreconditionError("edge width does not match n");
    if (e.count() > d) throw PreconditionError("edge larger than declared d");
  }
  if (p > d) throw PreconditionError("need p <= d");
  if (max_rounds < 1) throw PreconditionError("need at least one round");

  // Count ordered pairs the property quantifies over; none means the empty
  // matrix is already certified (single candidate, or all diffs below p).
  bool any_pair = false;
  for (std::size_t a = 0; a < edges.size() && !any_pair; ++a)
    for (std::size_t b = 0; b < edges.size() && !any_pair; ++b)
      if (a != b && edges[a].difference_count(edges[b]) >= p) any_pair = true;
  if (!any_pair) {
    return DiscardMatrix{TestMatrix(0, n),
                         Certification{CertProperty::p_discard,
                                       CertStatus::certified, p, delta,
                                       std::nullopt, 0}};
  }

  Bitset support(n);
  for (const Hyperedge& e : edges) support |= e;

  const double q = 1.0 / (d + 1);
  int t = discard_matrix_start_length(edges.size(), d, p, delta);

  if (mode == ConstructMode::probabilistic) {
    TestMatrix m = random_matrix(t, n, q, mix_seed(seed, 0), &support);
    return DiscardMatrix{std::move(m),
                         Certification{CertProperty::p_discard,
                                       CertStatus::probabilistic, p, delta,
                                       std::nullopt, 0}};
  }

  Certification last{};
  for (int round = 0; round < max_rounds; ++round) {
    TestMatrix m = random_matrix(t, n, q, mix_seed(seed, static_cast<std::uint64_t>(round)),
                                 &support);
    Certification cert = is_p_discarding(m, edges, p);
    if (cert.certified()) {
      cert.delta = delta;
      cert.rounds = round + 1;
      return DiscardMatrix{std::move(m), std::move(cert)};
    }
    last = cert;
    t = static_cast<int>(std::ceil(t * 1.5));
  }
  throw BudgetError("discard matrix construction exceeded " +
                    std::to_string(max_rounds) + " rounds; last witness " +
                    last.witness->first.to_string() + " vs " +
                    last.witness->second.to_string());
}

DiscardMatrix DiscardMatrixCache::get(const std::vector<Hyperedge>& edges,
                                      int n, int d, int p, double delta,
                                      std::uint64_t seed, ConstructMode mode) {
  std::ostringstream key;
  key << n << "|" << d << "|" << p << "|" << delta << "|" << seed << "|"
      << static_cast<int>(mode);
  for (const Hyperedge& e : edges) key << "|" << e.to_string();
  auto it = map_.find(key.str());
  if (it != map_.end()) return it->second;
  DiscardMatrix built = construct_discard_matrix(edges, n, d, p, delta, seed, mode);
  map_.emplace(key.str(), built);
  return built;
}

std::vector<std::vector<int>> to_family(const TestMatrix& m) {
  std::vector<std::vector<int>> family(static_cast<std::size_t>(m.n()));
  for (int j = 1; j <= m.n(); ++j)
    family[static_cast<std::size_t>(j - 1)] = m.column(j).ids();
  return family;
}

TestMatrix from_family(int t, const std::vector<std::vector<int>>& family) {
  const int n = static_cast<int>(family.size());
  TestMatrix m(t, n);
  std::vector<Bitset> rows(static_cast<std::size_t>(t), Bitset(n));
  for (int j = 1; j <= n; ++j)
    for (int i : family[static_cast<std::size_t>(j - 1)]) {
      if (i < 1 || i > t) throw PreconditionError("family row index out of range");
      rows[static_cast<std::size_t>(i - 1)].set(j);
    }
  return TestMatrix(n, std::move(rows));
}

TestMatrix parse_matrix(std::istream& in) {
  std::string tag;
  int t = -1, n = -1;
  if (!(in >> tag) || tag != "t" || !(in >> t) || !(in >> tag) || tag != "n" ||
      !(in >> n) || t < 0 || n < 0)
    throw ParseError("matrix header must be 't <T> n <N>'");
  std::vector<Bitset> rows;
  std::string line;
  for (int i = 0; i < t; ++i) {
    if (!(in >> line) || static_cast<int>(line.size()) != n)
      throw ParseError("matrix row " + std::to_string(i + 1) +
                       " must have exactly n characters");
    Bitset row(n);
    for (int j = 0; j < n; ++j) {
      if (line[static_cast<std::size_t>(j)] == '1')
        row.set(j + 1);
      else if (line[static_cast<std::size_t>(j)] != '0')
        throw ParseError("matrix entries must be 0 or 1");
    }
    rows.push_back(std::move(row));
  }
  return TestMatrix(n, std::move(rows));
}

void write_matrix(std::ostream& out, const TestMatrix& m) {
  out << "t " << m.t() << " n " << m.n() << "\n";
  for (const Bitset& row : m.rows()) {
    for (int j = 1; j <= m.n(); ++j) out << (row.test(j) ? '1' : '0');
    out << "\n";
  }
}

}  // namespace hgt
