#ifndef STRATA_DECOMPOSITION_HPP
#define STRATA_DECOMPOSITION_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "strata/amalgamation.hpp"
#include "strata/morphism.hpp"
#include "strata/skeleton.hpp"

namespace strata {

/**
 * One gluing in a decomposition plan: attach the next piece to the
 * accumulated union along the glue sub-skeleton. `left` embeds the glue into
 * the accumulated result so far, `right` into the piece being attached. An
 * empty glue means the piece is attached disjointly. `accumulated` records
 * the expected result after this step so a replay can be checked stage by
 * stage.
 */
struct PlanStep {
  Skeleton glue;
  bool disjoint = false;
  StrataMorphism left;
  StrataMorphism right;
  Skeleton accumulated;
};

struct AmalgamationPlan {
  std::vector<Skeleton> pieces;  // one per minimal stratum, in id order
  std::vector<PlanStep> steps;   // one per piece after the first
};

/**
 * Splits a skeleton into the incidence neighborhoods of its minimal strata.
 * Each piece has a unique minimal stratum and a connected incidence graph,
 * and every order relation of the input lives inside at least one piece, so
 * folding the pieces back together with pushouts restores the input.
 */
inline AmalgamationPlan decompose(const Skeleton& x) {
  AmalgamationPlan plan;
  StrataSubset covered;
  for (const StratumId& m : minimal_strata(x)) {
    StrataSubset up = incidence_neighborhood(x, m);
    Skeleton piece = restrict(x, up);
    if (!plan.pieces.empty()) {
      StrataSubset shared;
      for (const StratumId& s : up)
        if (covered.count(s)) shared.insert(s);
      Skeleton glue = restrict(x, shared);
      Skeleton before = restrict(x, covered);
      covered.insert(up.begin(), up.end());
      plan.steps.push_back(PlanStep{glue, shared.empty(), inclusion(glue, before),
                                    inclusion(glue, piece), restrict(x, covered)});
    } else {
      covered = up;
    }
    plan.pieces.push_back(std::move(piece));
  }
  return plan;
}

/**
 * Folds a plan back into a skeleton via iterated pushouts. Original stratum
 * names survive the fold (fresh names only appear if the plan's pieces
 * clash), and every stage is compared against the plan's recorded
 * intermediate, up to isomorphism. Throws on an inconsistent plan.
 */
inline Skeleton replay(const AmalgamationPlan& plan) {
  if (plan.pieces.empty()) return Skeleton({}, {});
  if (plan.steps.size() + 1 != plan.pieces.size())
    throw Error("replay: plan has " + std::to_string(plan.pieces.size()) + " pieces but " +
                std::to_string(plan.steps.size()) + " steps");
  Skeleton acc = plan.pieces.front();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& step = plan.steps[i];
    if (step.disjoint != step.glue.empty())
      throw Error("replay: step " + std::to_string(i + 1) + " disjoint flag contradicts its glue");
    if (!(step.left.target() == acc))
      throw Error("replay: step " + std::to_string(i + 1) +
                  " left leg does not start from the accumulated result");
    if (!(step.right.target() == plan.pieces[i + 1]))
      throw Error("replay: step " + std::to_string(i + 1) + " right leg does not match its piece");
    acc = pushout(step.left, step.right).amalgam;
    if (!(acc == step.accumulated) && !find_isomorphism(acc, step.accumulated))
      throw Error("replay: stage " + std::to_string(i + 1) +
                  " does not match the recorded intermediate");
  }
  return acc;
}

}  // namespace strata

#endif  // STRATA_DECOMPOSITION_HPP
