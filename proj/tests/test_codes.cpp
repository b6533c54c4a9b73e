#include <doctest.h>

#include <sstream>

#include "hgt/codes.hpp"
#include "hgt/rng.hpp"

using namespace hgt;

namespace {

TestMatrix rows_of(int n, std::vector<std::vector<int>> rows) {
  std::vector<Bitset> rs;
  for (const auto& r : rows) rs.push_back(Bitset::of(n, r));
  return TestMatrix(n, std::move(rs));
}

std::vector<Hyperedge> edges_of(int n, std::vector<std::vector<int>> edges) {
  std::vector<Hyperedge> es;
  for (const auto& e : edges) es.push_back(Bitset::of(n, e));
  return es;
}

}  // namespace

TEST_SUITE_BEGIN("codes");

TEST_CASE("response vector ORs the hit pools") {
  const TestMatrix m = rows_of(4, {{1, 2}, {3}, {4}});
  const ResponseVector r = response_vector(m, Bitset::of(4, {2, 4}));
  CHECK(r == Bitset::of(3, {1, 3}));
}

TEST_CASE("response of a union dominates responses of the parts") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 6 + rng.below(10);
    const TestMatrix m =
        random_matrix(5 + rng.below(10), n, 0.3, rng.next());
    Bitset a(n), b(n);
    for (int v = 1; v <= n; ++v) {
      if (rng.bernoulli(0.3)) a.set(v);
      if (rng.bernoulli(0.3)) b.set(v);
    }
    const ResponseVector ra = response_vector(m, a);
    const ResponseVector rb = response_vector(m, b);
    const ResponseVector ru = response_vector(m, a | b);
    CHECK(ru == (ra | rb));
    CHECK(ra.is_subset_of(ru));
    CHECK(rb.is_subset_of(ru));
  }
}

TEST_CASE("identity matrix separates everything") {
  std::vector<Bitset> rows;
  for (int i = 1; i <= 3; ++i) rows.push_back(Bitset::of(3, {i}));
  const TestMatrix id(3, rows);
  const auto edges = edges_of(3, {{1}, {2}, {1, 3}, {2, 3}});
  CHECK(is_separable(id, edges).certified());
}

TEST_CASE("separability refutation reports the first canonical pair") {
  const TestMatrix m = rows_of(3, {{1, 2, 3}});
  const auto edges = edges_of(3, {{1}, {2}, {3}});
  const Certification cert = is_separable(m, edges);
  CHECK(cert.status == CertStatus::refuted);
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->first == Bitset::of(3, {1}));
  CHECK(cert.witness->second == Bitset::of(3, {2}));
}

TEST_CASE("p-discard refutation on the single wide pool") {
  const TestMatrix m = rows_of(3, {{1, 2, 3}});
  const auto edges = edges_of(3, {{1}, {2}});
  const Certification cert = is_p_discarding(m, edges, 1);
  CHECK(cert.status == CertStatus::refuted);
  REQUIRE(cert.witness.has_value());
  // Ordered (e, e*): the row intersects every e*, so nothing can isolate.
  CHECK(cert.witness->first == Bitset::of(3, {2}));
  CHECK(cert.witness->second == Bitset::of(3, {1}));
}

TEST_CASE("singleton pools are 1-discarding") {
  std::vector<Bitset> rows;
  for (int i = 1; i <= 4; ++i) rows.push_back(Bitset::of(4, {i}));
  const TestMatrix id(4, rows);
  const auto edges = edges_of(4, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(is_p_discarding(id, edges, 1).certified());
  CHECK(is_p_discarding(id, edges, 2).certified());  // vacuous at p = 2
}

TEST_CASE("p larger than every difference certifies vacuously") {
  const TestMatrix empty(0, 5);
  const auto edges = edges_of(5, {{1, 2, 3}, {1, 2, 4}});
  CHECK(is_p_discarding(empty, edges, 2).certified());
  CHECK_FALSE(is_p_discarding(empty, edges, 1).certified());
}

TEST_CASE("1-discarding implies separable") {
  Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + rng.below(8);
    const TestMatrix m = random_matrix(8 + rng.below(12), n, 0.25, rng.next());
    std::vector<Hyperedge> edges;
    for (int k = 0; k < 4 + rng.below(4); ++k) {
      Bitset e(n);
      while (e.none())
        for (int v = 1; v <= n; ++v)
          if (rng.bernoulli(0.3)) e.set(v);
      bool dup = false;
      for (const auto& x : edges) dup = dup || x == e;
      if (!dup) edges.push_back(e);
    }
    if (is_p_discarding(m, edges, 1).certified()) {
      ++checked;
      CHECK(is_separable(m, edges).certified());
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("decode keeps exactly the edges missed by every negative pool") {
  const TestMatrix m = rows_of(4, {{1}, {2}, {3, 4}});
  const auto edges = edges_of(4, {{1, 3}, {2, 4}, {3, 4}});
  // e* = {1,3}: pools 1 and 3 positive, pool 2 negative -> clean = {2}.
  const ResponseVector r = response_vector(m, edges[0]);
  const auto survivors = decode_survivors(m, r, edges);
  REQUIRE(survivors.size() == 2);
  CHECK(survivors[0] == edges[0]);
  CHECK(survivors[1] == edges[2]);
  const auto idx = decode_survivor_indices(m, r, edges);
  CHECK(idx == std::vector<std::size_t>{0, 2});
}

TEST_CASE("decode never discards the hidden edge") {
  Rng rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 6 + rng.below(10);
    const TestMatrix m = random_matrix(6 + rng.below(14), n, 0.3, rng.next());
    std::vector<Hyperedge> edges;
    for (int k = 0; k < 5; ++k) {
      Bitset e(n);
      while (e.none())
        for (int v = 1; v <= n; ++v)
          if (rng.bernoulli(0.25)) e.set(v);
      edges.push_back(e);
    }
    const std::size_t star = static_cast<std::size_t>(rng.below(5));
    const ResponseVector r = response_vector(m, edges[star]);
    const auto idx = decode_survivor_indices(m, r, edges);
    bool kept = false;
    for (std::size_t k : idx) kept = kept || k == star;
    CHECK(kept);
  }
}

TEST_CASE("random matrix is deterministic and honors its support") {
  const TestMatrix a = random_matrix(20, 30, 0.25, 99);
  const TestMatrix b = random_matrix(20, 30, 0.25, 99);
  CHECK(a.rows() == b.rows());
  const Bitset support = Bitset::of(30, {2, 5, 9});
  const TestMatrix c = random_matrix(50, 30, 0.5, 7, &support);
  for (const Bitset& row : c.rows()) CHECK(row.is_subset_of(support));
  bool any = false;
  for (const Bitset& row : c.rows()) any = any || row.any();
  CHECK(any);
}

TEST_CASE("analytic start length matches the worked value") {
  // |E| = 15, d = 2, p = 1, delta = 0.05: sigma = (2/3)^2 * 1/3 = 4/27,
  // ln(15*14/0.05) = ln(4200) = 8.3428, 8.3428/(4/27) = 56.31 -> ceil = 57.
  CHECK(discard_matrix_start_length(15, 2, 1, 0.05) == 57);
}

TEST_CASE("certified construction verifies and reports rounds") {
  const auto edges = edges_of(8, {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {1, 3}});
  const DiscardMatrix dm = construct_discard_matrix(
      edges, 8, 2, 1, 0.1, 5, ConstructMode::certified);
  CHECK(dm.cert.certified());
  CHECK(dm.cert.p == 1);
  CHECK(dm.cert.rounds >= 1);
  CHECK(is_p_discarding(dm.matrix, edges, 1).certified());
  // Rows stay inside the union of the edges.
  Bitset support(8);
  for (const auto& e : edges) support |= e;
  for (const Bitset& row : dm.matrix.rows()) CHECK(row.is_subset_of(support));
}

TEST_CASE("construction is deterministic per seed") {
  const auto edges = edges_of(10, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {1, 5, 10}});
  const DiscardMatrix a = construct_discard_matrix(
      edges, 10, 3, 1, 0.05, 123, ConstructMode::certified);
  const DiscardMatrix b = construct_discard_matrix(
      edges, 10, 3, 1, 0.05, 123, ConstructMode::certified);
  CHECK(a.matrix.rows() == b.matrix.rows());
  CHECK(a.cert.rounds == b.cert.rounds);
}

TEST_CASE("probabilistic mode returns the analytic length unverified") {
  const auto edges = edges_of(8, {{1, 2}, {3, 4}, {5, 6}});
  const DiscardMatrix dm = construct_discard_matrix(
      edges, 8, 2, 1, 0.05, 9, ConstructMode::probabilistic);
  CHECK(dm.cert.status == CertStatus::probabilistic);
  CHECK(dm.matrix.t() == discard_matrix_start_length(3, 2, 1, 0.05));
}

TEST_CASE("no quantified pair yields an empty certified matrix") {
  const auto edges = edges_of(5, {{1, 2, 3}});
  const DiscardMatrix dm = construct_discard_matrix(
      edges, 5, 3, 1, 0.05, 1, ConstructMode::certified);
  CHECK(dm.matrix.t() == 0);
  CHECK(dm.cert.certified());
}

TEST_CASE("construction validates its arguments") {
  const auto edges = edges_of(4, {{1, 2}, {3, 4}});
  CHECK_THROWS_AS(construct_discard_matrix(edges, 4, 2, 0, 0.05, 1,
                                           ConstructMode::certified),
                  PreconditionError);
  CHECK_THROWS_AS(construct_discard_matrix(edges, 4, 2, 3, 0.05, 1,
                                           ConstructMode::certified),
                  PreconditionError);
  CHECK_THROWS_AS(construct_discard_matrix(edges, 4, 2, 1, 0.0, 1,
                                           ConstructMode::certified),
                  PreconditionError);
  CHECK_THROWS_AS(construct_discard_matrix(edges, 4, 1, 1, 0.05, 1,
                                           ConstructMode::certified),
                  PreconditionError);  // edge larger than d
}

TEST_CASE("cache returns identical constructions") {
  DiscardMatrixCache cache;
  const auto edges = edges_of(6, {{1, 2}, {3, 4}, {5, 6}});
  const DiscardMatrix a =
      cache.get(edges, 6, 2, 1, 0.05, 4, ConstructMode::certified);
  const DiscardMatrix b =
      cache.get(edges, 6, 2, 1, 0.05, 4, ConstructMode::certified);
  CHECK(a.matrix.rows() == b.matrix.rows());
}

TEST_CASE("family view is a bijection") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + rng.below(10);
    const TestMatrix m = random_matrix(3 + rng.below(8), n, 0.4, rng.next());
    const auto fam = to_family(m);
    const TestMatrix back = from_family(m.t(), fam);
    CHECK(back.rows() == m.rows());
  }
}

TEST_CASE("matrix text format round trip and validation") {
  const TestMatrix m = rows_of(4, {{1, 3}, {2, 4}});
  std::stringstream s;
  write_matrix(s, m);
  const TestMatrix back = parse_matrix(s);
  CHECK(back.rows() == m.rows());

  std::istringstream bad1("t 1 n 3\n01\n");
  CHECK_THROWS_AS(parse_matrix(bad1), ParseError);
  std::istringstream bad2("t 1 n 3\n012\n");
  CHECK_THROWS_AS(parse_matrix(bad2), ParseError);
  std::istringstream bad3("n 3 t 1\n010\n");
  CHECK_THROWS_AS(parse_matrix(bad3), ParseError);
}

TEST_CASE("certification csv shape") {
  const Certification cert{CertProperty::p_discard, CertStatus::certified, 2,
                           0.05, std::nullopt, 3};
  const std::string line = certification_csv(cert, 40, false);
  CHECK(line == "p-discard,certified,2,0.05,40,3\n");
}

TEST_SUITE_END();
