#pragma once

// Shared hand-built spaces and maps. The figure-eight family mirrors
// fixtures/eight_curve.strat stratum for stratum; tests that exercise the
// text format cross-check against these.

#include <strata/strata.hpp>

#include <string>
#include <vector>

namespace strata::fixtures {

// ---- elementary spaces ----------------------------------------------------

/** One compact point. */
inline Skeleton point() {
  return Skeleton({{"pt", make_label(0, true, true)}}, {});
}

/** Two compact points: the 0-sphere. */
inline Skeleton two_points() {
  return Skeleton({{"n", make_label(0, true, true)}, {"s", make_label(0, true, true)}}, {});
}

/** One compact connected 1-stratum: the circle. */
inline Skeleton circle() {
  return Skeleton({{"c", make_label(1, true, true)}}, {});
}

/** Closed interval: two compact endpoints under an open connected arc. */
inline Skeleton interval() {
  return Skeleton({{"e0", make_label(0, true, true)},
                   {"e1", make_label(0, true, true)},
                   {"i", make_label(1, false, true)}},
                  {{"e0", "i"}, {"e1", "i"}});
}

/** Closed square: four corners, four open edges, one open face. */
inline Skeleton square() {
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const char* c : {"c00", "c10", "c01", "c11"}) strata.emplace_back(c, make_label(0, true, true));
  for (const char* e : {"e_b", "e_t", "e_l", "e_r"}) strata.emplace_back(e, make_label(1, false, true));
  strata.emplace_back("f", make_label(2, false, true));
  std::vector<std::pair<StratumId, StratumId>> rels = {
      {"c00", "e_b"}, {"c10", "e_b"}, {"c01", "e_t"}, {"c11", "e_t"},
      {"c00", "e_l"}, {"c01", "e_l"}, {"c10", "e_r"}, {"c11", "e_r"},
      {"e_b", "f"},   {"e_t", "f"},   {"e_l", "f"},   {"e_r", "f"}};
  return Skeleton(strata, rels);
}

// ---- the figure-eight curve and its planes --------------------------------

/** Crossing point under the rest of the curve as one disconnected 1-stratum. */
inline Skeleton gamma0() {
  return Skeleton({{"p", make_label(0, false, true)}, {"g", make_label(1, false, false)}},
                  {{"p", "g"}});
}

/** Crossing point under the two punctured circles. */
inline Skeleton gamma1() {
  return Skeleton({{"p", make_label(0, false, true)},
                   {"C1", make_label(1, false, true)},
                   {"C2", make_label(1, false, true)}},
                  {{"p", "C1"}, {"p", "C2"}});
}

/** The plane as a single stratum. */
inline Skeleton plane0() {
  return Skeleton({{"r", make_label(2, false, true)}}, {});
}

/** The plane with the crossing point marked. */
inline Skeleton plane1() {
  return Skeleton({{"p", make_label(0, false, true)}, {"g2", make_label(2, false, true)}},
                  {{"p", "g2"}});
}

/** The plane stratified by the curve: point, punctured curve, complement. */
inline Skeleton plane2() {
  return Skeleton({{"p", make_label(0, false, true)},
                   {"c", make_label(1, false, false)},
                   {"s", make_label(2, false, false)}},
                  {{"p", "c"}, {"c", "s"}});
}

/** As plane2 with the punctured curve split into its two circles. */
inline Skeleton plane3() {
  return Skeleton({{"p", make_label(0, false, true)},
                   {"C1", make_label(1, false, true)},
                   {"C2", make_label(1, false, true)},
                   {"s", make_label(2, false, false)}},
                  {{"p", "C1"}, {"p", "C2"}, {"C1", "s"}, {"C2", "s"}});
}

inline Declarations all_declared() { return Declarations{true, true, true}; }

inline StrataMorphism morphism(const Skeleton& src, const Skeleton& tgt,
                               std::vector<std::tuple<std::string, std::string, bool>> entries,
                               Declarations decl = all_declared()) {
  std::map<StratumId, MorphismEntry> m;
  for (auto& [from, to, onto] : entries) m.emplace(StratumId(from), MorphismEntry{StratumId(to), onto});
  return StrataMorphism(src, tgt, std::move(m), decl);
}

// ---- recursively stratified spaces ----------------------------------------

/** Point with no further structure. */
inline PseudoPtr point_pseudo() { return make_pseudo({point(), {}}); }

/** Two points. */
inline PseudoPtr two_points_pseudo() { return make_pseudo({two_points(), {}}); }

/** Circle. */
inline PseudoPtr circle_pseudo() { return make_pseudo({circle(), {}}); }

/** Closed interval; each endpoint sees a single point across from it. */
inline PseudoPtr interval_pseudo() {
  return make_pseudo({interval(), {{"e0", point_pseudo()}, {"e1", point_pseudo()}}});
}

/** Compact arc: like the interval but with a compact middle stratum. */
inline PseudoPtr arc_pseudo() {
  Skeleton base({{"a0", make_label(0, true, true)},
                 {"a1", make_label(0, true, true)},
                 {"m", make_label(1, true, true)}},
                {{"a0", "m"}, {"a1", "m"}});
  return make_pseudo({std::move(base), {{"a0", point_pseudo()}, {"a1", point_pseudo()}}});
}

/** Closed square; corners see arcs, edges see points. */
inline PseudoPtr square_pseudo() {
  PseudoPtr arc = arc_pseudo();
  PseudoPtr pt = point_pseudo();
  return make_pseudo({square(), {{"c00", arc},
                                 {"c10", arc},
                                 {"c01", arc},
                                 {"c11", arc},
                                 {"e_b", pt},
                                 {"e_t", pt},
                                 {"e_l", pt},
                                 {"e_r", pt}}});
}

/**
 * A surface stratum over two disjoint marked curves, each carrying a marked
 * point whose cross-section is itself stratified (a marked circle). Mirrors
 * fixtures/open_book.strat and exercises two levels of nesting.
 */
inline PseudoPtr open_book_pseudo() {
  Skeleton spine_link_base({{"pm", make_label(0, true, true)},
                            {"q", make_label(1, true, true)}},
                           {{"pm", "q"}});
  PseudoPtr spine_link = make_pseudo({std::move(spine_link_base), {{"pm", point_pseudo()}}});
  Skeleton base({{"a", make_label(0, true, true)},
                 {"b", make_label(0, true, true)},
                 {"m", make_label(1, false, true)},
                 {"n", make_label(1, false, true)},
                 {"r", make_label(2, false, true)}},
                {{"a", "m"}, {"m", "r"}, {"b", "n"}, {"n", "r"}});
  return make_pseudo({std::move(base), {{"a", spine_link}, {"b", spine_link},
                             {"m", point_pseudo()}, {"n", point_pseudo()}}});
}

}  // namespace strata::fixtures
