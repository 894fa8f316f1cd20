#include <catch2/catch_amalgamated.hpp>

#include <strata/amalgamation.hpp>
#include <strata/decomposition.hpp>
#include <strata/json_io.hpp>
#include <strata/limits.hpp>

#include "support/fixtures.hpp"

using namespace strata;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("dimension serialization", "[json]") {
  CHECK(dim_to_json(Dim::finite(3)) == Json(3));
  CHECK(dim_to_json(Dim::infinite()) == Json("inf"));
  CHECK(dim_from_json(Json(4)) == Dim::finite(4));
  CHECK(dim_from_json(Json("inf")).is_infinite());
  CHECK_THROWS_WITH(dim_from_json(Json("huge")), ContainsSubstring("unknown dimension marker"));
  CHECK_THROWS_WITH(dim_from_json(Json(1.5)), ContainsSubstring("integer"));
}

TEST_CASE("skeleton round trip", "[json]") {
  const Skeleton sq = fixtures::square();
  const Json j = skeleton_to_json(sq);
  REQUIRE(j.at("strata").size() == 9);
  // Only cover pairs are stored; the parser rebuilds the full order.
  CHECK(j.at("order").size() == 12);

  const Skeleton rt = skeleton_from_json(j);
  CHECK(rt == sq);
  CHECK(rt.leq(StratumId("c00"), StratumId("f")));

  CHECK(skeleton_from_json(skeleton_to_json(Skeleton({}, {}))) == Skeleton({}, {}));
  CHECK_THROWS_WITH(skeleton_from_json(Json(3)), ContainsSubstring("strata array"));

  // A missing order key means a discrete poset.
  Json discrete{{"strata", Json::array({Json{{"id", "x"}, {"dim", 0}}})}};
  const Skeleton d = skeleton_from_json(discrete);
  CHECK(d.strata().size() == 1);
  CHECK_FALSE(d.strata().begin()->second.compact);
}

TEST_CASE("display names survive a round trip", "[json]") {
  StratumLabel fancy{Dim::finite(1), false, true, std::string("open curve")};
  const Skeleton s({{StratumId("g"), fancy}}, {});
  const Json j = skeleton_to_json(s);
  CHECK(j.at("strata").at(0).at("display") == "open curve");
  const Skeleton rt = skeleton_from_json(j);
  REQUIRE(rt.strata().at(StratumId("g")).display_name.has_value());
  CHECK(*rt.strata().at(StratumId("g")).display_name == "open curve");
}

TEST_CASE("morphism round trip preserves the classification", "[json]") {
  const StrataMorphism f = fixtures::morphism(
      fixtures::gamma0(), fixtures::plane2(), {{"p", "p", true}, {"g", "c", true}},
      fixtures::all_declared());
  const Json j = morphism_to_json(f);
  CHECK(j.at("map").size() == 2);
  CHECK(j.at("declare").at("proper") == true);

  const StrataMorphism rt = morphism_from_json(j);
  CHECK(rt.source() == f.source());
  CHECK(rt.target() == f.target());
  CHECK(rt.entries() == f.entries());
  CHECK(classify(rt).cls == MorphClass::kStrongEmbedding);
  CHECK(classify(rt).cls == classify(f).cls);
}

TEST_CASE("plan round trip still replays", "[json]") {
  const Skeleton sq = fixtures::square();
  const AmalgamationPlan plan = decompose(sq);
  const AmalgamationPlan rt = plan_from_json(plan_to_json(plan));
  REQUIRE(rt.pieces.size() == plan.pieces.size());
  REQUIRE(rt.steps.size() == plan.steps.size());
  for (std::size_t i = 0; i < rt.steps.size(); ++i) {
    CHECK(rt.steps[i].disjoint == plan.steps[i].disjoint);
    CHECK(rt.steps[i].glue == plan.steps[i].glue);
  }
  CHECK(replay(rt) == sq);
}

TEST_CASE("recursive link spaces round trip", "[json]") {
  const auto book = fixtures::open_book_pseudo();
  const Json j = pseudo_to_json(*book);
  CHECK(j.at("links").contains("a"));
  CHECK(j.at("links").at("a").at("links").contains("pm"));

  const PseudoSkeleton rt = pseudo_from_json(j);
  CHECK(rt == *book);
  CHECK(validate_pseudo(pseudo_from_json(j)).ok);

  // A base with no link key parses as a bare skeleton.
  const PseudoSkeleton bare = pseudo_from_json(Json{{"base", skeleton_to_json(fixtures::point())}});
  CHECK(bare.links.empty());
}

TEST_CASE("tower round trip", "[json]") {
  const Tower t = sphere_tower(3);
  const Json j = tower_to_json(t);
  REQUIRE(j.at("stages").size() == 3);
  REQUIRE(j.at("maps").size() == 2);
  CHECK(j.at("regular_image") == Json::array({true, true}));

  const Tower rt = tower_from_json(j);
  CHECK(validate_tower(rt).ok);
  REQUIRE(rt.stages.size() == t.stages.size());
  for (std::size_t i = 0; i < rt.stages.size(); ++i) CHECK(rt.stages[i] == t.stages[i]);
  REQUIRE(rt.maps.size() == t.maps.size());
  for (std::size_t i = 0; i < rt.maps.size(); ++i)
    CHECK(rt.maps[i].entries() == t.maps[i].entries());
  CHECK(rt.regular_image == t.regular_image);
  CHECK(classify_limit(rt, false).verdict == classify_limit(t, false).verdict);

  const Tower single = tower_from_json(
      Json{{"stages", Json::array({skeleton_to_json(fixtures::point())})}});
  CHECK(validate_tower(single).ok);
  CHECK(single.maps.empty());
  CHECK(single.regular_image.empty());
}

TEST_CASE("report serializers expose status fields", "[json]") {
  const Json g = graph_to_json(hasse_graph(fixtures::gamma1()));
  CHECK(g.at("vertices").size() == 3);
  CHECK(g.at("edges").size() == 2);

  const Json v = validation_to_json(validate_skeleton(fixtures::square()));
  CHECK(v == Json{{"ok", true}, {"violations", Json::array()}});

  const Json c = classification_to_json(
      classify(identity(fixtures::gamma0())));
  CHECK(c.at("class") == "ISOMORPHISM");
  CHECK(c.contains("witness"));

  CHECK(universal_to_json({UniversalCheck::Status::kVerified, "w"}).at("status") == "verified");
  CHECK(universal_to_json({UniversalCheck::Status::kFailed, "w"}).at("status") == "failed");
  CHECK(universal_to_json({UniversalCheck::Status::kIndeterminate, "w"}).at("status") ==
        "indeterminate");

  CHECK(join_check_to_json({JoinCheckResult::Status::kTrue, "d"}).at("status") == "true");
  CHECK(join_check_to_json({JoinCheckResult::Status::kNotApplicable, "d"}).at("status") ==
        "not_applicable");
  CHECK(join_check_to_json({JoinCheckResult::Status::kFalse, "d"}).at("detail") == "d");

  const Json f = fraisse_to_json(fraisse_check(3, 5));
  CHECK(f.at("ok") == true);
  REQUIRE(f.at("axioms").size() == 3);
  CHECK(f.at("axioms").at(0).at("axiom") == "heritability");
  CHECK(f.at("axioms").at(0).at("iterations") == 5);
  CHECK(f.at("axioms").at(2).at("failures") == Json::array());

  const Json stable = limit_to_json(classify_limit(sphere_tower(4), false));
  CHECK(stable.at("verdict") == "GRAPH_STABLE");
  REQUIRE(stable.contains("stable_graph"));
  CHECK(stable.at("stable_graph").at("vertices").size() == 3);

  // Four coning steps on top of the seed stage.
  const Json unbounded = limit_to_json(classify_limit(cone_tower(fixtures::point(), 4), true));
  CHECK(unbounded.at("verdict") == "LENGTH_UNBOUNDED");
  CHECK_FALSE(unbounded.contains("stable_graph"));
  CHECK(unbounded.at("lengths").size() == 5);
}
