#include <catch2/catch_amalgamated.hpp>

#include <strata/graph.hpp>
#include <strata/generator.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace strata;

namespace {

// The library stores incidence edges from the higher stratum down to the
// stratum it adheres to; the oracle lists covers as (lower, upper).
std::set<std::pair<StratumId, StratumId>> expected_edges(const Skeleton& s) {
  std::set<std::pair<StratumId, StratumId>> out;
  for (const auto& [lo, hi] : oracle::cover_pairs(s)) out.emplace(hi, lo);
  return out;
}

}  // namespace

TEST_CASE("incidence graphs of the plane stratifications", "[graph]") {
  StratGraph g0 = hasse_graph(fixtures::plane0());
  CHECK(g0.vertices.size() == 1);
  CHECK(g0.edges.empty());

  StratGraph g1 = hasse_graph(fixtures::plane1());
  CHECK(g1.vertices.size() == 2);
  CHECK(g1.edges == std::set<std::pair<StratumId, StratumId>>{{"g2", "p"}});

  StratGraph g2 = hasse_graph(fixtures::plane2());
  CHECK(g2.vertices.size() == 3);
  CHECK(g2.edges == std::set<std::pair<StratumId, StratumId>>{{"c", "p"}, {"s", "c"}});

  StratGraph gam1 = hasse_graph(fixtures::gamma1());
  CHECK(gam1.vertices.size() == 3);
  CHECK(gam1.edges == std::set<std::pair<StratumId, StratumId>>{{"C1", "p"}, {"C2", "p"}});
}

TEST_CASE("transitive relations do not appear as edges", "[graph]") {
  StratGraph g = hasse_graph(fixtures::plane2());  // p < c < s, so no (s, p) edge
  CHECK_FALSE(g.edges.count({"s", "p"}));
  StratGraph sq = hasse_graph(fixtures::square());
  CHECK(sq.vertices.size() == 9);
  CHECK(sq.edges.size() == 12);
  CHECK_FALSE(sq.edges.count({"f", "c00"}));
}

TEST_CASE("cover edges match the brute-force oracle", "[graph][property]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(subseed(9101, seed));
    Skeleton s = random_skeleton(rng);
    CAPTURE(seed, s.size());
    StratGraph g = hasse_graph(s);
    CHECK(g.vertices == s.ids());
    CHECK(g.edges == expected_edges(s));
  }
}

TEST_CASE("longest path equals skeleton length", "[graph][property]") {
  CHECK(longest_path(StratGraph{}) == -1);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(subseed(9102, seed));
    Skeleton s = random_skeleton(rng);
    CAPTURE(seed);
    CHECK(longest_path(hasse_graph(s)) == length(s));
  }
}

TEST_CASE("weak components and irreducibility", "[graph]") {
  CHECK(is_irreducible(fixtures::gamma1()));
  CHECK_FALSE(is_irreducible(Skeleton()));
  CHECK(is_basic(fixtures::plane2()));

  DisjointUnion u = disjoint_union(fixtures::gamma0(), fixtures::circle());
  CHECK_FALSE(is_irreducible(u.skeleton));
  std::vector<Skeleton> comps = irreducible_components(u.skeleton);
  REQUIRE(comps.size() == 2);
  for (const Skeleton& c : comps) CHECK(is_irreducible(c));
  CHECK(comps[0].size() + comps[1].size() == u.skeleton.size());
}

TEST_CASE("a product of irreducible spaces is irreducible", "[graph][property]") {
  GeneratorConfig small;
  small.max_strata = 4;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(subseed(9103, seed));
    Skeleton a = random_skeleton(rng, small);
    Skeleton b = random_skeleton(rng, small);
    if (!is_irreducible(a) || !is_irreducible(b)) continue;
    CAPTURE(seed);
    CHECK(is_irreducible(product(a, b)));
  }
}

TEST_CASE("closed subsets are exactly the down-closed ones", "[graph][property]") {
  Skeleton sq = fixtures::square();
  CHECK(is_closed_subset(sq, {"c00", "c10", "e_b"}));
  CHECK_FALSE(is_closed_subset(sq, {"e_b"}));
  CHECK(is_closed_subset(sq, {}));
  CHECK_THROWS_AS(is_closed_subset(sq, {"ghost"}), Error);

  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(subseed(9104, seed));
    Skeleton s = random_skeleton(rng);
    StrataSubset z = random_subset(rng, s);
    CAPTURE(seed);
    CHECK(is_closed_subset(s, z) == oracle::is_down_closed(s, z));
  }
}

TEST_CASE("closure graphs and neighborhood graphs", "[graph]") {
  Skeleton sq = fixtures::square();
  StratGraph down = graph_of_closure(sq, StratumId("e_b"));
  CHECK(down.vertices == StrataSubset{"c00", "c10", "e_b"});
  CHECK(down.edges.size() == 2);

  StratGraph up = graph_of_neighborhood(sq, StratumId("c00"));
  CHECK(up.vertices == StrataSubset{"c00", "e_b", "e_l", "f"});
  CHECK(up.edges.size() == 4);
}

TEST_CASE("trees and graph isomorphism", "[graph]") {
  CHECK(is_tree(hasse_graph(fixtures::gamma1())));
  CHECK_FALSE(is_tree(hasse_graph(fixtures::square())));  // 9 vertices, 12 edges

  CHECK(graphs_isomorphic(hasse_graph(fixtures::gamma1()),
                          hasse_graph(cone(fixtures::two_points()))));
  CHECK_FALSE(graphs_isomorphic(hasse_graph(fixtures::gamma1()),
                                hasse_graph(fixtures::plane2())));
}

TEST_CASE("dot output lists vertices and cover arrows", "[graph]") {
  std::string dot = to_dot(hasse_graph(fixtures::gamma0()), "gamma0");
  CHECK(dot.find("digraph gamma0") != std::string::npos);
  CHECK(dot.find("\"g\" -> \"p\"") != std::string::npos);
  CHECK(dot.find("\"p\"") != std::string::npos);
}
