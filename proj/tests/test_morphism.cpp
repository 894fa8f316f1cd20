#include <catch2/catch_amalgamated.hpp>

#include <strata/morphism.hpp>
#include <strata/generator.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace strata;
using fixtures::all_declared;
using fixtures::morphism;

TEST_CASE("constructor demands total, dim-monotone entries", "[morphism]") {
  Skeleton g0 = fixtures::gamma0();
  Skeleton p1 = fixtures::plane1();

  // Missing entry for g.
  CHECK_THROWS_WITH(StrataMorphism(g0, p1, {{"p", {"p", true}}}, all_declared()),
                    "morphism entry missing for stratum: g");
  // Entry for a stratum the source does not have.
  CHECK_THROWS_AS(morphism(g0, p1, {{"p", "p", true}, {"g", "g2", false}, {"x", "p", false}}),
                  Error);
  // Target stratum unknown.
  CHECK_THROWS_AS(morphism(g0, p1, {{"p", "p", true}, {"g", "ghost", false}}), Error);
  // Onto entries must preserve dim exactly.
  CHECK_THROWS_AS(morphism(g0, p1, {{"p", "p", true}, {"g", "g2", true}}), Error);
  // Non-onto entries may not lower dim.
  CHECK_THROWS_AS(morphism(p1, g0, {{"p", "p", true}, {"g2", "g", false}}), Error);
}

TEST_CASE("classification of the figure-eight maps", "[morphism]") {
  Skeleton g0 = fixtures::gamma0();
  Skeleton g1 = fixtures::gamma1();

  CHECK(classify(identity(g1)).cls == MorphClass::kIsomorphism);
  CHECK(classify(identity(g0)).cls == MorphClass::kIsomorphism);

  // Both circles land in the single coarse curve stratum: the strata map is
  // not one-to-one, so this is only an immersion.
  Classification fine_to_coarse = classify(
      morphism(g1, g0, {{"p", "p", true}, {"C1", "g", false}, {"C2", "g", false}}));
  CHECK(fine_to_coarse.cls == MorphClass::kImmersion);
  CHECK(fine_to_coarse.witness.find("not 1-1") != std::string::npos);

  CHECK(classify(morphism(g0, fixtures::plane1(), {{"p", "p", true}, {"g", "g2", false}})).cls ==
        MorphClass::kEmbedding);
  CHECK(classify(morphism(g1, fixtures::plane2(),
                          {{"p", "p", true}, {"C1", "c", false}, {"C2", "c", false}}))
            .cls == MorphClass::kImmersion);
  CHECK(classify(morphism(g0, fixtures::plane2(), {{"p", "p", true}, {"g", "c", true}})).cls ==
        MorphClass::kStrongEmbedding);
  CHECK(classify(morphism(g1, fixtures::plane3(),
                          {{"p", "p", true}, {"C1", "C1", true}, {"C2", "C2", true}}))
            .cls == MorphClass::kStrongEmbedding);
}

TEST_CASE("order violations yield non-morphisms", "[morphism]") {
  // u and v are incomparable, so a <= b cannot be carried over.
  Skeleton incomparable({{"u", make_label(0, true, true)}, {"v", make_label(1, true, true)}}, {});
  Skeleton chain({{"a", make_label(0, true, true)}, {"b", make_label(1, true, true)}},
                 {{"a", "b"}});
  Classification c = classify(
      morphism(chain, incomparable, {{"a", "u", true}, {"b", "v", true}}, all_declared()));
  CHECK(c.cls == MorphClass::kNotMorphism);
  CHECK(c.witness.find("order violated") != std::string::npos);
}

TEST_CASE("declarations gate the ladder", "[morphism]") {
  Skeleton g0 = fixtures::gamma0();
  Skeleton p2 = fixtures::plane2();
  std::vector<std::tuple<std::string, std::string, bool>> entries = {{"p", "p", true},
                                                                     {"g", "c", true}};
  CHECK(classify(morphism(g0, p2, entries, Declarations{false, false, false})).cls ==
        MorphClass::kMorphism);
  CHECK(classify(morphism(g0, p2, entries, Declarations{false, false, true})).cls ==
        MorphClass::kImmersion);
  CHECK(classify(morphism(g0, p2, entries, Declarations{true, false, true})).cls ==
        MorphClass::kImmersion);  // injectivity on points still missing
  CHECK(classify(morphism(g0, p2, entries, Declarations{true, true, true})).cls ==
        MorphClass::kStrongEmbedding);
}

TEST_CASE("strong embeddings reflect order", "[morphism]") {
  // n and s are incomparable upstairs but map onto comparable strata.
  Skeleton two = fixtures::two_points();
  Skeleton chain({{"a", make_label(0, true, true)}, {"b", make_label(0, true, true)},
                  {"c", make_label(1, false, true)}},
                 {{"a", "c"}, {"b", "c"}});
  Skeleton sub({{"a", make_label(0, true, true)}, {"b", make_label(0, true, true)}}, {});
  Classification c = classify(morphism(sub, chain, {{"a", "a", true}, {"b", "b", true}}));
  CHECK(c.cls == MorphClass::kStrongEmbedding);  // induced order agrees

  Skeleton related({{"a", make_label(0, true, true)}, {"b", make_label(0, true, true)}},
                   {{"a", "b"}});
  Classification d = classify(morphism(two, related, {{"n", "a", true}, {"s", "b", true}}));
  CHECK(d.cls == MorphClass::kEmbedding);
  CHECK(d.witness.find("order not reflected") != std::string::npos);
}

TEST_CASE("identity and inclusion helpers", "[morphism]") {
  Skeleton sq = fixtures::square();
  CHECK(classify(identity(sq)).cls == MorphClass::kIsomorphism);

  Skeleton edge = restrict(sq, closure_of(sq, StratumId("e_b")));
  StrataMorphism inc = inclusion(edge, sq);
  CHECK(classify(inc).cls == MorphClass::kStrongEmbedding);
  CHECK(inc.apply("e_b") == StratumId("e_b"));
  CHECK(is_closed_embedding(inc));

  // Inclusion of a non-closed subset embeds but is not closed.
  Skeleton open_edge = restrict(sq, {"e_b"});
  StrataMorphism open_inc = inclusion(open_edge, sq);
  CHECK(classify(open_inc).cls >= MorphClass::kStrongEmbedding);
  CHECK_FALSE(is_closed_embedding(open_inc));
  CHECK_THROWS_AS(is_closed_embedding(morphism(fixtures::gamma1(), fixtures::gamma0(),
                                               {{"p", "p", true},
                                                {"C1", "g", false},
                                                {"C2", "g", false}})),
                  Error);  // only an immersion

  CHECK_THROWS_AS(inclusion(fixtures::gamma0(), sq), Error);  // not a sub-skeleton
}

TEST_CASE("composition multiplies the ladder down", "[morphism][property]") {
  Skeleton g1 = fixtures::gamma1();
  Skeleton p3 = fixtures::plane3();
  StrataMorphism f =
      morphism(g1, p3, {{"p", "p", true}, {"C1", "C1", true}, {"C2", "C2", true}});
  StrataMorphism g = identity(p3);
  StrataMorphism gf = compose(f, g);
  CHECK(classify(gf).cls == MorphClass::kStrongEmbedding);
  CHECK(gf.apply("C1") == StratumId("C1"));

  CHECK_THROWS_AS(compose(g, f), Error);  // endpoints do not line up

  // Composing random strong inclusions never climbs above either factor.
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Rng rng(subseed(9201, seed));
    Cospan c = random_cospan(rng, true);
    StrataMorphism wf = c.f;  // x -> w
    Skeleton ww = c.w;
    StrataMorphism id_w = identity(ww);
    Classification comp = classify(compose(wf, id_w));
    CAPTURE(seed);
    CHECK(comp.cls == classify(wf).cls);
  }
}

TEST_CASE("all-declared morphisms embed exactly when strata stay distinct",
          "[morphism][property]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(subseed(9202, seed));
    StrataMorphism m = random_declared_morphism(rng);
    std::set<StratumId> image;
    bool injective = true;
    for (const auto& [_, e] : m.entries())
      if (!image.insert(e.target).second) injective = false;
    CAPTURE(seed);
    CHECK((classify(m).cls >= MorphClass::kEmbedding) == injective);
  }
}

TEST_CASE("isomorphism search agrees with brute force", "[morphism][property]") {
  CHECK(find_isomorphism(fixtures::gamma1(), cone(fixtures::two_points())).has_value());
  CHECK_FALSE(find_isomorphism(fixtures::gamma1(), fixtures::plane2()).has_value());

  GeneratorConfig small;
  small.max_strata = 6;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Rng rng(subseed(9203, seed));
    Skeleton a = random_skeleton(rng, small);
    Skeleton b = random_skeleton(rng, small);
    CAPTURE(seed);
    std::optional<StrataMorphism> iso = find_isomorphism(a, b);
    CHECK(iso.has_value() == oracle::isomorphic_brute_force(a, b));
    if (iso) CHECK(classify(*iso).cls == MorphClass::kIsomorphism);

    // A skeleton is always isomorphic to itself under renamed strata.
    std::map<StratumId, StratumId> names;
    for (const auto& [id, _] : a.strata()) names[id] = StratumId("r_" + id.token);
    std::vector<std::pair<StratumId, StratumLabel>> strata;
    for (const auto& [id, label] : a.strata()) strata.emplace_back(names.at(id), label);
    std::vector<std::pair<StratumId, StratumId>> rels;
    for (const auto& [x, y] : a.closure_pairs()) rels.emplace_back(names.at(x), names.at(y));
    CHECK(find_isomorphism(a, Skeleton(strata, rels)).has_value());
  }
}
