#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "coxl2/classify.hpp"
#include "coxl2/coxeter.hpp"

using namespace coxl2;

namespace {

CoxeterMatrix triangle() { return parse_diagram("nodes: a b c\nedge: a b\nedge: b c\nedge: a c\n"); }

std::vector<std::string> names(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("diagram DSL") {
  const auto t = triangle();
  CHECK(t.rank() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(t(i, j) == (i == j ? 1 : 3));

  const auto inf = parse_diagram("nodes: a b\nedge: a b inf");
  CHECK(inf(0, 1) == kInfinity);
  CHECK(parse_diagram("# comment\nnodes: a b c   # trailing\nedge: a c 6\n")(0, 2) == 6);
  CHECK(parse_diagram("nodes: a b c\nedge: a b\n")(1, 2) == 2);

  CHECK_THROWS_WITH_AS(parse_diagram("nodes: a b\nedge: a b 2"), doctest::Contains("below 3"), Error);
  CHECK_THROWS_WITH_AS(parse_diagram("nodes: a a"), doctest::Contains("duplicate"), Error);
  CHECK_THROWS_WITH_AS(parse_diagram("nodes: a b\nedge: a c"), doctest::Contains("unknown node"), Error);
  CHECK_THROWS_WITH_AS(parse_diagram("nodes: a b\nedge: a b 4\nedge: b a 5"), doctest::Contains("conflicting"), Error);
  CHECK_THROWS_AS(parse_diagram("edge: a b"), Error);
  CHECK_THROWS_AS(parse_diagram("nodes: a\nedge: a a"), Error);
  // Repeating an edge with the same label is not a conflict.
  CHECK(parse_diagram("nodes: a b\nedge: a b 4\nedge: b a 4")(0, 1) == 4);
}

TEST_CASE("JSON matrix input") {
  const auto a2 = parse_matrix(R"({"generators":["a","b"],"m":[[1,3],[3,1]]})");
  CHECK(a2(0, 1) == 3);
  CHECK(classify_irreducible(a2).name() == "A2");
  CHECK(parse_matrix(R"({"generators":["a","b"],"m":[[1,0],[0,1]]})")(0, 1) == kInfinity);
  CHECK_THROWS_WITH_AS(parse_matrix(R"({"generators":["a","b"],"m":[[1,3],[4,1]]})"), doctest::Contains("asymmetric"),
                       Error);
  CHECK_THROWS_AS(parse_matrix(R"({"generators":["a","b"],"m":[[2,3],[3,1]]})"), Error);
  CHECK_THROWS_AS(parse_matrix(R"({"generators":["a","b"],"m":[[1,1],[1,1]]})"), Error);
  CHECK_THROWS_AS(parse_matrix(R"({"generators":["a","b"],"m":[[1,-3],[-3,1]]})"), Error);
  CHECK_THROWS_AS(parse_matrix(R"({"generators":["a","a"],"m":[[1,3],[3,1]]})"), Error);
  CHECK_THROWS_AS(parse_matrix("{not json"), Error);
  CHECK(parse_system("  " + to_json(a2)) == a2);
  CHECK(parse_system(to_diagram(a2)) == a2);
}

TEST_CASE("Cartan to Coxeter") {
  auto conv = [](int x, int y) {
    return cartan_to_coxeter(GeneralizedCartanMatrix(names({"i", "j"}), {{2, x}, {y, 2}}))(0, 1);
  };
  CHECK(conv(-1, -1) == 3);
  CHECK(conv(0, 0) == 2);
  CHECK(conv(-2, -2) == kInfinity);
  CHECK(conv(-1, -2) == 4);
  CHECK(conv(-3, -1) == 6);
  CHECK(conv(-4, -1) == kInfinity);
  CHECK_THROWS_AS(GeneralizedCartanMatrix(names({"i", "j"}), {{2, -1}, {0, 2}}), Error);
  CHECK_THROWS_AS(GeneralizedCartanMatrix(names({"i", "j"}), {{2, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(GeneralizedCartanMatrix(names({"i", "j"}), {{3, -1}, {-1, 2}}), Error);

  const auto g2 = parse_system(R"({"index":["x","y"],"cartan":[[2,-1],[-3,2]]})");
  CHECK(g2(0, 1) == 6);

  // Property: random valid generalized Cartan matrices land in {2,3,4,6,inf} by the product rule.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
    std::vector<std::string> idx;
    for (int i = 0; i < n; ++i) idx.push_back("k" + std::to_string(i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const bool zero = rng() % 3 == 0;
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = zero ? 0 : -1 - static_cast<int>(rng() % 5);
        a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = zero ? 0 : -1 - static_cast<int>(rng() % 5);
      }
    const auto m = cartan_to_coxeter(GeneralizedCartanMatrix(idx, a));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const int p = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                      a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const int expect = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : p == 3 ? 6 : kInfinity;
        CHECK(m(i, j) == expect);
      }
  }
}

TEST_CASE("restriction and components") {
  const auto t = triangle();
  const auto ab = restrict(t, names({"a", "b"}));
  CHECK(ab.rank() == 2);
  CHECK(classify_irreducible(ab).name() == "A2");
  CHECK(restrict(t, GenSet{}).rank() == 0);
  CHECK(irreducible_components(restrict(t, GenSet{})).empty());
  CHECK_THROWS_AS(restrict(t, names({"a", "z"})), Error);

  const auto m = builtin_family(Family::ATilde2, 4);
  const auto cyc = restrict(m, names({"s_1", "s_2", "s_3", "s_4"}));
  CHECK(classify_irreducible(cyc).name() == "~A3");
  CHECK(irreducible_components(m).size() == 1);

  const auto split = parse_diagram("nodes: a b c\nedge: a b");
  const auto comps = irreducible_components(split);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].second.rank() == 2);
  CHECK(comps[1].second.rank() == 1);
  CHECK(comps[1].second.generators() == names({"c"}));

  // restrict(restrict(M, J), K) == restrict(M, K) for K inside J.
  const auto big = builtin_family(Family::BTilde8, 10);
  const std::uint64_t full = big.all().bits();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const GenSet j(rng() & full);
    const GenSet k(rng() & j.bits());
    CHECK(restrict(restrict(big, j), big.names(k)) == restrict(big, k));
  }
}

TEST_CASE("built-in families") {
  for (int n = 3; n <= 10; ++n) {
    const auto m = builtin_family(Family::ATilde2, n);
    CHECK(m.rank() == n + 1);
    CHECK(m.generators().front() == "s_0");
    for (int i = 1; i <= n; ++i) {
      const int next = i == n ? 1 : i + 1;
      CHECK(m(i, next) == 3);
    }
    CHECK(m(0, 1) == 3);
    CHECK(m(0, 2) == 3);
    int edges = 0;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) edges += m.is_edge(i, j);
    CHECK(edges == n + 2);
  }
  CHECK(classify_irreducible(restrict(builtin_family(Family::ATilde2, 3), names({"s_0", "s_1", "s_2"}))).name() ==
        "~A2");
  CHECK_THROWS_AS(builtin_family(Family::ATilde2, 2), Error);
  CHECK_THROWS_AS(builtin_family(Family::BTilde8, 8), Error);

  for (int n = 9; n <= 13; ++n) {
    const auto m = builtin_family(Family::BTilde8, n);
    CHECK(m.rank() == n + 1);
    const int t = m.index_of("t");
    CHECK(m(t, m.index_of("p_2")) == 3);
    CHECK(m(m.index_of("p_" + std::to_string(n - 2)), m.index_of("p_" + std::to_string(n - 1))) == 4);
  }
  const auto b9 = builtin_family(Family::BTilde8, 9);
  std::vector<std::string> tail{"t"}, head{"t"};
  for (int i = 1; i <= 8; ++i) tail.push_back("p_" + std::to_string(i));
  for (int i = 0; i <= 7; ++i) head.push_back("p_" + std::to_string(i));
  CHECK(classify_irreducible(restrict(b9, tail)).name() == "~B8");
  CHECK(classify_irreducible(restrict(b9, head)).name() == "~E8");
  CHECK(family_name(parse_family("btilde8")) == "btilde8");
  CHECK_THROWS_AS(parse_family("ctilde"), Error);
}

TEST_CASE("serialization round trips over the rank <= 4 corpus") {
  for (const auto& m : oracle::irreducible_corpus(4)) {
    CHECK(parse_matrix(to_json(m)) == m);
    CHECK(parse_diagram(to_diagram(m)) == m);
  }
  for (int n = 9; n <= 12; ++n) {
    const auto m = builtin_family(Family::BTilde8, n);
    CHECK(parse_system(to_json(m)) == m);
    CHECK(parse_system(to_diagram(m)) == m);
  }
}
