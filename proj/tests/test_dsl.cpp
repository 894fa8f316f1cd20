#include <catch2/catch_amalgamated.hpp>

#include <strata/dsl.hpp>

#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"

using namespace strata;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const std::string kFixtureDir = STRATA_FIXTURE_DIR;

}  // namespace

TEST_CASE("a space declaration builds the declared skeleton", "[dsl]") {
  Document doc = parse_document(R"(
space gamma1 {
  stratum p dim 0 connected
  stratum C1 dim 1 connected
  stratum C2 dim 1 connected
  order p < C1
  order p < C2
}
)");
  REQUIRE(doc.spaces.size() == 1);
  CHECK(build_skeleton(doc, "gamma1") == fixtures::gamma1());
}

TEST_CASE("order chains close transitively", "[dsl]") {
  Document doc = parse_document(R"(
space chain {
  stratum a dim 0
  stratum b dim 1
  stratum c dim 2
  order a < b < c
}
)");
  Skeleton s = build_skeleton(doc, "chain");
  CHECK(s.less("a", "c"));
}

TEST_CASE("links build recursive spaces", "[dsl]") {
  Document doc = parse_document(slurp(kFixtureDir + "/interval_square.strat"));
  CHECK_FALSE(space_has_links(doc, "pt"));
  CHECK(space_has_links(doc, "square"));

  PseudoSkeleton sq = build_pseudo(doc, "square");
  CHECK(validate_pseudo(sq).ok);
  CHECK(sq.base.size() == 9);
  CHECK(link_depth(sq) == 2);
  REQUIRE(sq.links.count("c00"));
  CHECK(sq.links.at("c00")->base.size() == 3);

  // The same structure as the handwritten fixture, up to stratum names.
  CHECK(pseudo_isomorphic(sq, *fixtures::square_pseudo()));
}

TEST_CASE("morphisms resolve and classify", "[dsl]") {
  Document doc = parse_document(slurp(kFixtureDir + "/eight_curve.strat"));
  CHECK(classify(build_morphism(doc, "gamma1_id")).cls == MorphClass::kIsomorphism);
  CHECK(classify(build_morphism(doc, "gamma1_to_gamma0")).cls == MorphClass::kImmersion);
  CHECK(classify(build_morphism(doc, "gamma0_in_plane1")).cls == MorphClass::kEmbedding);
  CHECK(classify(build_morphism(doc, "gamma0_in_plane2")).cls == MorphClass::kStrongEmbedding);

  CHECK(build_skeleton(doc, "gamma0") == fixtures::gamma0());
  CHECK(build_skeleton(doc, "plane3") == fixtures::plane3());
}

TEST_CASE("partial maps fail to build with the missing stratum named", "[dsl]") {
  Document doc = parse_document(slurp(kFixtureDir + "/eight_curve.strat"));
  CHECK_THROWS_WITH(build_morphism(doc, "gamma0_to_gamma1_partial"),
                    Catch::Matchers::ContainsSubstring("no stratum-preserving map: g"));
}

TEST_CASE("towers resolve stages and maps", "[dsl]") {
  Document doc = parse_document(R"(
space a { stratum x dim 0 }
space b {
  stratum x dim 0
  stratum y dim 1
  order x < y
}
morphism f : a -> b {
  x -> x onto
  declare proper
  declare injective
  declare immersion
}
tower t {
  stage a
  stage b
  map f
}
)");
  Tower t = build_tower(doc, "t");
  REQUIRE(t.stages.size() == 2);
  REQUIRE(t.maps.size() == 1);
  CHECK(t.regular_image == std::vector<bool>{false});
  CHECK(validate_tower(t).ok);
}

TEST_CASE("self loops parse and carry their position", "[dsl]") {
  Document doc = parse_document(R"(
space l {
  stratum a dim 0
  order a < a
}
)");
  REQUIRE(doc.self_loops.size() == 1);
  CHECK(doc.self_loops[0].space == "l");
  CHECK(doc.self_loops[0].stratum == "a");
  CHECK(doc.self_loops[0].pos.line == 4);
  // The built skeleton is unaffected: a <= a holds anyway.
  CHECK(validate_skeleton(build_skeleton(doc, "l")).ok);
}

TEST_CASE("parse errors carry exact positions", "[dsl]") {
  auto expect_error = [](const std::string& text, int line, int col, const std::string& needle) {
    try {
      parse_document(text);
      FAIL("expected a parse error for: " << needle);
    } catch (const ParseError& e) {
      INFO(e.what());
      CHECK(e.line() == line);
      CHECK(e.col() == col);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("space {\n}\n", 1, 7, "expected");
  expect_error("space a {\n  stratum x dim -1\n}\n", 2, 17, "unexpected character");
  expect_error("space a {\n  stratum x dim 0\n  stratum x dim 1\n}\n", 3, 11, "duplicate stratum");
  expect_error("space a {\n  stratum x dim 0\n  order x < y\n}\n", 3, 13, "unknown stratum");
  expect_error("space a { stratum x dim 0 }\nspace a { stratum y dim 0 }\n", 2, 7,
               "duplicate space");
  expect_error("morphism f : a -> b {\n}\n", 1, 10, "unknown space");
  expect_error("space a { stratum x dim 0 }\nmorphism f : a -> a {\n  y -> x\n}\n", 3, 3,
               "unknown stratum");
  expect_error("space a {\n  stratum x dim 0\n  link x = ghost\n}\n", 3, 8, "unknown space");
  expect_error("tower t {\n  stage a\n}\n", 3, 1, "at least one map");
  expect_error("tower t {\n  stage a\n  map f\n}\n", 1, 7, "unknown space");
  expect_error("space a { stratum x dim 0 stratum", 1, 34, "expected a stratum name");
}

TEST_CASE("link cycles are rejected by name", "[dsl]") {
  try {
    parse_document(R"(
space a {
  stratum x dim 0
  stratum up dim 1
  order x < up
  link x = b
}
space b {
  stratum y dim 0
  stratum up dim 1
  order y < up
  link y = a
}
)");
    FAIL("expected a link-cycle error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("link cycle through space") != std::string::npos);
  }
}

TEST_CASE("morphism declares must follow the entries", "[dsl]") {
  CHECK_THROWS_AS(parse_document(R"(
space a { stratum x dim 0 }
morphism f : a -> a {
  declare proper
  x -> x onto
}
)"),
                  ParseError);
}

TEST_CASE("printing and reparsing is the identity on documents", "[dsl]") {
  for (const char* fixture : {"/eight_curve.strat", "/interval_square.strat",
                              "/open_book.strat", "/remark_counterexample.strat",
                              "/remark_fixed.strat"}) {
    CAPTURE(fixture);
    Document doc = parse_document(slurp(kFixtureDir + fixture));
    std::string printed = print_document(doc);
    Document again = parse_document(printed);
    CHECK(documents_equal(doc, again));
    CHECK(print_document(again) == printed);  // printing is a fixed point
  }
}

TEST_CASE("unknown names are reported by the lookup helpers", "[dsl]") {
  Document doc = parse_document("space a { stratum x dim 0 }\n");
  CHECK_THROWS_WITH(find_space(doc, "zz"), Catch::Matchers::ContainsSubstring("unknown space"));
  CHECK_THROWS_WITH(find_morphism(doc, "zz"),
                    Catch::Matchers::ContainsSubstring("unknown morphism"));
  CHECK_THROWS_AS(build_tower(doc, "zz"), Error);
}
