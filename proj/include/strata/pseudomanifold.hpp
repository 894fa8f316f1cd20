#ifndef STRATA_PSEUDOMANIFOLD_HPP
#define STRATA_PSEUDOMANIFOLD_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strata/amalgamation.hpp"
#include "strata/decomposition.hpp"
#include "strata/generator.hpp"
#include "strata/graph.hpp"
#include "strata/morphism.hpp"
#include "strata/skeleton.hpp"

namespace strata {

/**
 * A skeleton with a recursively attached link space at every non-maximal
 * stratum. The link describes the transverse cross-section of the space near
 * that stratum; it is itself a (smaller) pseudomanifold, so the structure
 * nests until it bottoms out in trivial stratifications.
 *
 * Local triviality is not decidable from this data alone. The library
 * guarantees it by construction (cone_pseudo, product_manifold, suspension,
 * disjoint union, closed amalgamation) and validates only the recursive
 * conditions: all-compact link strata, strictly decreasing link length,
 * bounded nesting, and strictly increasing dims along the base order.
 */
struct PseudoSkeleton {
  Skeleton base;
  std::map<StratumId, std::shared_ptr<const PseudoSkeleton>> links;
};

using PseudoPtr = std::shared_ptr<const PseudoSkeleton>;

inline PseudoPtr make_pseudo(PseudoSkeleton p) {
  return std::make_shared<const PseudoSkeleton>(std::move(p));
}

inline bool operator==(const PseudoSkeleton& a, const PseudoSkeleton& b) {
  if (!(a.base == b.base) || a.links.size() != b.links.size()) return false;
  for (const auto& [id, link] : a.links) {
    auto it = b.links.find(id);
    if (it == b.links.end() || !(*link == *it->second)) return false;
  }
  return true;
}
inline bool operator!=(const PseudoSkeleton& a, const PseudoSkeleton& b) { return !(a == b); }

/** Gluing along a part that is not closed in one of the sides. */
class NonClosedGluing : public Error {
 public:
  using Error::Error;
};

/** Levels of link nesting below this space; 0 when there are no links. */
inline int link_depth(const PseudoSkeleton& x) {
  int best = 0;
  for (const auto& [_, link] : x.links) best = std::max(best, 1 + link_depth(*link));
  return best;
}

namespace detail {

inline void validate_pseudo_into(const PseudoSkeleton& x, const std::string& prefix,
                                 ValidationReport& report) {
  auto flag = [&](const std::string& v) {
    report.ok = false;
    report.violations.push_back(prefix + v);
  };
  ValidationReport base = validate_skeleton(x.base);
  for (const std::string& v : base.violations) flag(v);
  if (!base.ok) return;  // length-based checks assume an acyclic base

  for (const auto& [id, label] : x.base.strata())
    if (label.dim.is_infinite()) flag("infinite dimension at " + id.token);
  for (const auto& [a, la] : x.base.strata())
    for (const auto& [b, lb] : x.base.strata()) {
      if (a == b || !x.base.leq(a, b) || x.base.leq(b, a)) continue;
      if (la.dim.is_infinite() || lb.dim.is_infinite()) continue;
      if (la.dim.value() >= lb.dim.value())
        flag("dimension not increasing(" + a.token + "," + b.token + ")");
    }

  StrataSubset max = maximal_strata(x.base);
  for (const auto& [id, _] : x.base.strata())
    if (!max.count(id) && !x.links.count(id)) flag("missing link at " + id.token);
  int base_length = length(x.base);
  for (const auto& [id, link] : x.links) {
    if (!x.base.has(id)) {
      flag("link of unknown stratum " + id.token);
      continue;
    }
    if (max.count(id)) {
      flag("link on maximal stratum " + id.token);
      continue;
    }
    for (const auto& [lid, label] : link->base.strata())
      if (!label.compact) flag("non-compact link at " + id.token + " (stratum " + lid.token + ")");
    if (length(link->base) >= base_length) flag("link too long at " + id.token);
    validate_pseudo_into(*link, prefix + "link(" + id.token + ")/", report);
  }
  if (link_depth(x) > std::max(0, base_length)) flag("link nesting exceeds length");
}

}  // namespace detail

/** Recursive check of every pseudomanifold invariant; report-style. */
inline ValidationReport validate_pseudo(const PseudoSkeleton& x) {
  ValidationReport report;
  detail::validate_pseudo_into(x, "", report);
  return report;
}

/** Tagged union of bases; links travel with their renamed strata. */
inline PseudoSkeleton pseudo_disjoint_union(const PseudoSkeleton& a, const PseudoSkeleton& b) {
  DisjointUnion u = disjoint_union(a.base, b.base);
  PseudoSkeleton out{std::move(u.skeleton), {}};
  for (const auto& [id, link] : a.links) out.links[u.left.at(id)] = link;
  for (const auto& [id, link] : b.links) out.links[u.right.at(id)] = link;
  return out;
}

/**
 * Open cone: the base is cone(l.base), the vertex's link is l itself, and the
 * remaining strata keep the links they had in l. Requires an all-compact
 * valid input; the cone over the empty space is a bare point.
 */
inline PseudoSkeleton cone_pseudo(const PseudoSkeleton& l) {
  ValidationReport r = validate_pseudo(l);
  if (!r.ok) throw Error("cone requires a valid link space: " + r.violations.front());
  PseudoSkeleton out{cone(l.base), {}};  // cone() rejects non-compact strata
  if (l.base.empty()) return out;
  StratumId vertex = detail::fresh_id("v", l.base.ids());
  out.links[vertex] = make_pseudo(l);
  for (const auto& [id, link] : l.links) out.links[id] = link;
  return out;
}

/**
 * Thickening by an m-dimensional manifold factor: every base dim is shifted
 * by m_dim, the order and all links stay untouched. With m_dim = 0 this is
 * the identity.
 */
inline PseudoSkeleton product_manifold(int m_dim, const PseudoSkeleton& x) {
  if (m_dim < 0) throw Error("product_manifold: negative dimension");
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const auto& [id, label] : x.base.strata()) {
    StratumLabel shifted = label;
    shifted.dim = label.dim + Dim::finite(m_dim);
    strata.emplace_back(id, shifted);
  }
  return PseudoSkeleton{Skeleton(strata, x.base.closure_pairs()), x.links};
}

struct Suspension {
  PseudoSkeleton space;
  StratumId south, north;
};

/**
 * Double cone over an all-compact valid pseudomanifold: two fresh pole
 * vertices below everything, every other stratum shifted one dimension up
 * and kept compact. Both poles get l as their link; other links carry over.
 */
inline Suspension suspension_pseudo(const PseudoSkeleton& l) {
  ValidationReport r = validate_pseudo(l);
  if (!r.ok) throw Error("suspension requires a valid input: " + r.violations.front());
  for (const auto& [id, label] : l.base.strata())
    if (!label.compact) throw Error("suspension requires compact strata: " + id.token);
  StrataSubset taken = l.base.ids();
  StratumId south = detail::fresh_id("pa", taken);
  taken.insert(south);
  StratumId north = detail::fresh_id("pb", taken);
  std::vector<std::pair<StratumId, StratumLabel>> strata{{south, make_label(0, true, true)},
                                                         {north, make_label(0, true, true)}};
  for (const auto& [id, label] : l.base.strata()) {
    StratumLabel up = label;
    up.dim = label.dim + Dim::finite(1);
    strata.emplace_back(id, up);
  }
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [id, _] : l.base.strata()) {
    rels.emplace_back(south, id);
    rels.emplace_back(north, id);
  }
  for (const auto& [a, b] : l.base.closure_pairs()) rels.emplace_back(a, b);
  PseudoSkeleton out{Skeleton(strata, rels), {}};
  if (!l.base.empty()) {  // over the empty space the poles stay maximal
    PseudoPtr link = make_pseudo(l);
    out.links[south] = link;
    out.links[north] = link;
  }
  for (const auto& [id, lk] : l.links) out.links[id] = lk;
  return Suspension{std::move(out), south, north};
}

/**
 * A morphism of pseudomanifolds: a carrier between the bases plus, for every
 * non-maximal source stratum, a morphism between the links there. Link maps
 * are explicit data; the library never infers them.
 */
struct PseudoMorphism {
  PseudoPtr source;
  PseudoPtr target;
  StrataMorphism carrier;
  std::map<StratumId, std::shared_ptr<const PseudoMorphism>> link_maps;
};

namespace detail {

inline void check_pseudo_morphism_into(const PseudoMorphism& m, const std::string& prefix,
                                       ValidationReport& report) {
  auto flag = [&](const std::string& v) {
    report.ok = false;
    report.violations.push_back(prefix + v);
  };
  if (!m.source || !m.target) {
    flag("missing source or target space");
    return;
  }
  if (!(m.carrier.source() == m.source->base) || !(m.carrier.target() == m.target->base)) {
    flag("carrier does not run between the declared spaces");
    return;
  }
  MorphClass carrier_class = classify(m.carrier).cls;
  StrataSubset max = maximal_strata(m.source->base);
  for (const auto& [id, _] : m.source->base.strata())
    if (!max.count(id) && !m.link_maps.count(id)) flag("missing link map at " + id.token);
  for (const auto& [id, lm] : m.link_maps) {
    if (!m.source->base.has(id) || max.count(id)) {
      flag("link map at unexpected stratum " + id.token);
      continue;
    }
    if (!lm) {
      flag("null link map at " + id.token);
      continue;
    }
    auto src_link = m.source->links.find(id);
    StratumId image = m.carrier.apply(id);
    auto tgt_link = m.target->links.find(image);
    if (src_link == m.source->links.end()) {
      flag("source has no link at " + id.token);
      continue;
    }
    if (tgt_link == m.target->links.end()) {
      flag("target has no link at " + image.token);
      continue;
    }
    if (!lm->source || !(*lm->source == *src_link->second) || !lm->target ||
        !(*lm->target == *tgt_link->second)) {
      flag("link map endpoints do not match the links at " + id.token);
      continue;
    }
    if (classify(lm->carrier).cls < carrier_class)
      flag("link map weaker than carrier at " + id.token);
    check_pseudo_morphism_into(*lm, prefix + "link(" + id.token + ")/", report);
  }
}

}  // namespace detail

/** Structural soundness of a pseudomanifold morphism, recursively. */
inline ValidationReport check_pseudo_morphism(const PseudoMorphism& m) {
  ValidationReport report;
  detail::check_pseudo_morphism_into(m, "", report);
  return report;
}

inline PseudoMorphism identity_pseudo(const PseudoPtr& p) {
  PseudoMorphism out{p, p, identity(p->base), {}};
  for (const auto& [id, link] : p->links)
    out.link_maps[id] = std::make_shared<const PseudoMorphism>(identity_pseudo(link));
  return out;
}

/**
 * Amalgamated sum of pseudomanifolds along a shared part that must embed
 * strongly and closedly in both sides (NonClosedGluing otherwise — a
 * non-closed gluing would produce non-compact links, so it is refused, not
 * degraded). Strata on one side only keep their links; shared strata get the
 * recursive amalgam of their links, bottoming out in the disjoint union of
 * the two sides' links where the shared part has no link of its own.
 */
inline PseudoSkeleton amalgamate_pseudo(const PseudoMorphism& f, const PseudoMorphism& h) {
  ValidationReport rf = check_pseudo_morphism(f);
  if (!rf.ok) throw Error("amalgamate: left map is unsound: " + rf.violations.front());
  ValidationReport rh = check_pseudo_morphism(h);
  if (!rh.ok) throw Error("amalgamate: right map is unsound: " + rh.violations.front());
  if (!(*f.source == *h.source)) throw Error("amalgamate: maps must share their source");
  for (const Skeleton* s : {&f.source->base, &f.target->base, &h.target->base})
    for (const auto& [id, label] : s->strata())
      if (label.dim.is_infinite()) throw Error("amalgamate: infinite dimension at " + id.token);
  Classification cf = classify(f.carrier);
  if (cf.cls < MorphClass::kStrongEmbedding)
    throw Error("amalgamate: left carrier is not a strong embedding (" + cf.witness + ")");
  Classification ch = classify(h.carrier);
  if (ch.cls < MorphClass::kStrongEmbedding)
    throw Error("amalgamate: right carrier is not a strong embedding (" + ch.witness + ")");
  if (!is_closed_embedding(f.carrier))
    throw NonClosedGluing("shared part is not closed in the left side");
  if (!is_closed_embedding(h.carrier))
    throw NonClosedGluing("shared part is not closed in the right side");

  PushoutResult p = pushout(f.carrier, h.carrier);
  PseudoSkeleton out{p.amalgam, {}};

  std::map<StratumId, StratumId> shared_w;  // image in W -> shared stratum
  std::set<StratumId> shared_y;
  for (const auto& [x, _] : f.source->base.strata()) {
    shared_w[f.carrier.apply(x)] = x;
    shared_y.insert(h.carrier.apply(x));
  }
  StrataSubset source_max = maximal_strata(f.source->base);

  for (const auto& [w, aid] : p.from_left) {
    auto sh = shared_w.find(w);
    if (sh == shared_w.end()) {
      auto link = f.target->links.find(w);
      if (link != f.target->links.end()) out.links[aid] = link->second;
      continue;
    }
    const StratumId& x = sh->second;
    if (!source_max.count(x)) {
      out.links[aid] =
          make_pseudo(amalgamate_pseudo(*f.link_maps.at(x), *h.link_maps.at(x)));
      continue;
    }
    auto lw = f.target->links.find(w);
    auto ly = h.target->links.find(h.carrier.apply(x));
    if (lw != f.target->links.end() && ly != h.target->links.end())
      out.links[aid] = make_pseudo(pseudo_disjoint_union(*lw->second, *ly->second));
    else if (lw != f.target->links.end())
      out.links[aid] = lw->second;
    else if (ly != h.target->links.end())
      out.links[aid] = ly->second;
  }
  for (const auto& [y, aid] : p.from_right) {
    if (shared_y.count(y)) continue;
    auto link = h.target->links.find(y);
    if (link != h.target->links.end()) out.links[aid] = link->second;
  }

  ValidationReport post = validate_pseudo(out);
  if (!post.ok)
    throw Error("amalgamate produced an invalid pseudomanifold: " + post.violations.front());
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition into basic pieces, with links carried along.

struct PseudoPlan {
  std::vector<PseudoSkeleton> pieces;
  std::vector<PlanStep> steps;  // base-level gluing data
};

/** Base-level decomposition with each piece keeping its strata's links. */
inline PseudoPlan decompose_pseudo(const PseudoSkeleton& x) {
  ValidationReport r = validate_pseudo(x);
  if (!r.ok) throw Error("decompose: input is not a valid pseudomanifold: " + r.violations.front());
  AmalgamationPlan base_plan = decompose(x.base);
  PseudoPlan plan;
  plan.steps = std::move(base_plan.steps);
  for (Skeleton& piece : base_plan.pieces) {
    PseudoSkeleton ps{std::move(piece), {}};
    // Up-sets preserve maximality, so exactly the linked strata keep links.
    for (const auto& [id, link] : x.links)
      if (ps.base.has(id)) ps.links[id] = link;
    plan.pieces.push_back(std::move(ps));
  }
  return plan;
}

/**
 * Folds a pseudo plan back together. Steps whose glue is closed in both
 * sides run through amalgamate_pseudo (with identity link maps — both sides
 * carry the same link objects); other steps run the base-level pushout and
 * carry the links across by name.
 */
inline PseudoSkeleton replay_pseudo(const PseudoPlan& plan) {
  if (plan.pieces.empty()) return PseudoSkeleton{Skeleton({}, {}), {}};
  if (plan.steps.size() + 1 != plan.pieces.size())
    throw Error("replay: plan has " + std::to_string(plan.pieces.size()) + " pieces but " +
                std::to_string(plan.steps.size()) + " steps");
  PseudoSkeleton acc = plan.pieces.front();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& step = plan.steps[i];
    const PseudoSkeleton& piece = plan.pieces[i + 1];
    if (!(step.left.target() == acc.base) || !(step.right.target() == piece.base))
      throw Error("replay: step " + std::to_string(i + 1) + " legs do not match the fold state");
    StrataSubset glue_ids = step.glue.ids();
    if (is_closed_subset(acc.base, glue_ids) && is_closed_subset(piece.base, glue_ids)) {
      PseudoSkeleton glue{step.glue, {}};
      StrataSubset glue_max = maximal_strata(step.glue);
      for (const StratumId& s : glue_ids) {
        if (glue_max.count(s)) continue;
        auto it = acc.links.find(s);
        if (it != acc.links.end()) glue.links[s] = it->second;
      }
      PseudoPtr glue_ptr = make_pseudo(std::move(glue));
      PseudoPtr acc_ptr = make_pseudo(std::move(acc));
      PseudoPtr piece_ptr = make_pseudo(piece);
      auto leg = [&](const StrataMorphism& carrier, const PseudoPtr& target) {
        PseudoMorphism m{glue_ptr, target, carrier, {}};
        for (const auto& [id, link] : glue_ptr->links)
          m.link_maps[id] = std::make_shared<const PseudoMorphism>(identity_pseudo(link));
        return m;
      };
      acc = amalgamate_pseudo(leg(step.left, acc_ptr), leg(step.right, piece_ptr));
    } else {
      PushoutResult p = pushout(step.left, step.right);
      PseudoSkeleton merged{p.amalgam, {}};
      for (const auto& [id, link] : acc.links) merged.links[p.from_left.at(id)] = link;
      for (const auto& [id, link] : piece.links) {
        StratumId aid = p.from_right.at(id);
        if (!merged.links.count(aid)) merged.links[aid] = link;
      }
      acc = std::move(merged);
    }
    if (!(acc.base == step.accumulated) && !find_isomorphism(acc.base, step.accumulated))
      throw Error("replay: stage " + std::to_string(i + 1) +
                  " does not match the recorded intermediate");
  }
  return acc;
}

/** All links, recursively, have connected (irreducible) bases. */
inline bool is_normal(const PseudoSkeleton& x) {
  for (const auto& [_, link] : x.links)
    if (!is_irreducible(link->base) || !is_normal(*link)) return false;
  return true;
}

/**
 * Isomorphism search that also matches links: a label/order isomorphism of
 * bases under which corresponding strata carry recursively isomorphic links.
 */
inline bool pseudo_isomorphic(const PseudoSkeleton& a, const PseudoSkeleton& b) {
  if (a.base.size() != b.base.size()) return false;
  std::vector<StratumId> left;
  for (const auto& [id, _] : a.base.strata()) left.push_back(id);
  std::map<StratumId, StratumId> assign;
  std::set<StratumId> used;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == left.size()) return true;
    const StratumId& s = left[i];
    for (const auto& [t, label] : b.base.strata()) {
      if (used.count(t) || !(label == a.base.label(s))) continue;
      bool ok = true;
      for (const auto& [s2, t2] : assign) {
        if (a.base.leq(s, s2) != b.base.leq(t, t2) || a.base.leq(s2, s) != b.base.leq(t2, t)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto la = a.links.find(s);
      auto lb = b.links.find(t);
      if ((la == a.links.end()) != (lb == b.links.end())) continue;
      if (la != a.links.end() && !pseudo_isomorphic(*la->second, *lb->second)) continue;
      assign.emplace(s, t);
      used.insert(t);
      if (rec(i + 1)) return true;
      assign.erase(s);
      used.erase(t);
    }
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------
// Seeded generators. Pseudomanifolds are built from the constructors above,
// so every sample is valid by construction; tests assert it anyway.

/** Random all-compact pseudomanifold: iterated suspensions over atoms. */
inline PseudoSkeleton random_compact_pseudo(Rng& rng, int depth) {
  if (depth <= 0) {
    int n = 1 + rng.below(3);
    std::vector<std::pair<StratumId, StratumLabel>> strata;
    for (int i = 0; i < n; ++i)
      strata.emplace_back(StratumId("m" + std::to_string(i)),
                          make_label(rng.below(2), true, rng.chance(0.7)));
    return PseudoSkeleton{Skeleton(strata, {}), {}};
  }
  PseudoSkeleton out = suspension_pseudo(random_compact_pseudo(rng, depth - 1)).space;
  if (rng.chance(0.3)) {
    PseudoSkeleton extra{
        Skeleton({{StratumId("iso"), make_label(rng.below(2), true, true)}}, {}), {}};
    out = pseudo_disjoint_union(out, extra);
  }
  return out;
}

struct PseudoCospan {
  PseudoMorphism f;  // x -> w
  PseudoMorphism h;  // x -> y
};

namespace detail {

// Atoms with the given prefix, merged into a base under construction.
inline void add_atoms(std::vector<std::pair<StratumId, StratumLabel>>& strata,
                      const std::string& prefix, int count, Rng& rng) {
  for (int i = 0; i < count; ++i)
    strata.emplace_back(StratumId(prefix + std::to_string(i)),
                        make_label(rng.below(2), true, rng.chance(0.7)));
}

}  // namespace detail

/**
 * Random cospan of closed strong embeddings between all-compact
 * pseudomanifolds: atoms extended by disjoint atoms at depth 0, and
 * suspensions of a smaller cospan above, with the poles identified and link
 * maps wired to the inner cospan.
 */
inline PseudoCospan random_compact_pseudo_cospan(Rng& rng, int depth) {
  if (depth <= 0) {
    std::vector<std::pair<StratumId, StratumLabel>> xs;
    detail::add_atoms(xs, "s", rng.below(3), rng);
    Skeleton xbase(xs, {});
    // With an empty shared part the two sides must be empty together:
    // cone_pseudo gives the empty space a compact vertex and a nonempty one
    // a non-compact vertex, and mixed labels cannot be glued later on.
    bool force_extras = xs.empty() && rng.chance(0.7);
    auto side = [&](const std::string& prefix) {
      std::vector<std::pair<StratumId, StratumLabel>> ss = xs;
      int extras = xs.empty() ? (force_extras ? 1 + rng.below(2) : 0) : rng.below(3);
      detail::add_atoms(ss, prefix, extras, rng);
      return Skeleton(ss, {});
    };
    PseudoPtr x = make_pseudo(PseudoSkeleton{xbase, {}});
    PseudoPtr w = make_pseudo(PseudoSkeleton{side("w"), {}});
    PseudoPtr y = make_pseudo(PseudoSkeleton{side("z"), {}});
    auto leg = [&](const PseudoPtr& target) {
      std::map<StratumId, MorphismEntry> entries;
      for (const auto& [id, _] : xbase.strata()) entries[id] = MorphismEntry{id, true};
      return PseudoMorphism{
          x, target, StrataMorphism(xbase, target->base, entries, Declarations{true, true, true}),
          {}};
    };
    return PseudoCospan{leg(w), leg(y)};
  }

  PseudoCospan inner = random_compact_pseudo_cospan(rng, depth - 1);
  Suspension sx = suspension_pseudo(*inner.f.source);
  Suspension sw = suspension_pseudo(*inner.f.target);
  Suspension sy = suspension_pseudo(*inner.h.target);
  PseudoPtr x = make_pseudo(std::move(sx.space));
  PseudoPtr w = make_pseudo(std::move(sw.space));
  PseudoPtr y = make_pseudo(std::move(sy.space));
  auto lift = [&](const PseudoMorphism& g, const Suspension& src, const Suspension& tgt,
                  const PseudoPtr& source, const PseudoPtr& target) {
    std::map<StratumId, MorphismEntry> entries;
    entries[src.south] = MorphismEntry{tgt.south, true};
    entries[src.north] = MorphismEntry{tgt.north, true};
    for (const auto& [id, e] : g.carrier.entries()) entries[id] = e;
    PseudoMorphism out{source, target,
                       StrataMorphism(source->base, target->base, std::move(entries),
                                      Declarations{true, true, true}),
                       g.link_maps};
    if (!g.source->base.empty()) {  // empty inner space: poles carry no links
      auto pole_map = std::make_shared<const PseudoMorphism>(g);
      out.link_maps[src.south] = pole_map;
      out.link_maps[src.north] = pole_map;
    }
    return out;
  };
  // sx/sw/sy still hold the pole ids; only their spaces were moved out.
  return PseudoCospan{lift(inner.f, sx, sw, x, w), lift(inner.h, sx, sy, x, y)};
}

struct ConeCospanSample {
  PseudoCospan cospan;
  bool base_case = false;  // shared space is a single stratum
  int manifold_dim = 0;
  PseudoPtr left_link, right_link;
};

namespace detail {

inline StratumId cone_vertex_of(const Skeleton& cone_base, const Skeleton& input_base) {
  for (const auto& [id, _] : cone_base.strata())
    if (!input_base.has(id)) return id;
  throw Error("cone has no fresh vertex");
}

}  // namespace detail

/**
 * Lifts a link-level cospan through cone and manifold product: the shared
 * space becomes d-manifold x cone(shared link) and embeds vertex-to-vertex
 * into the two cones over the bigger links. Every sample satisfies the
 * amalgamation preconditions by construction; when the link-level shared
 * space is empty the sample is a base case (a single shared stratum).
 */
inline ConeCospanSample random_cone_pseudo_cospan(Rng& rng) {
  int depth = rng.below(3);
  PseudoCospan links = random_compact_pseudo_cospan(rng, depth);
  int d = rng.below(2);

  auto build = [&](const PseudoPtr& link) {
    PseudoSkeleton space = product_manifold(d, cone_pseudo(*link));
    return make_pseudo(std::move(space));
  };
  PseudoPtr x = build(links.f.source);
  PseudoPtr w = build(links.f.target);
  PseudoPtr y = build(links.h.target);

  auto lift = [&](const PseudoMorphism& g, const PseudoPtr& source, const PseudoPtr& target) {
    StratumId sv = detail::cone_vertex_of(source->base, g.source->base);
    StratumId tv = detail::cone_vertex_of(target->base, g.target->base);
    std::map<StratumId, MorphismEntry> entries;
    entries[sv] = MorphismEntry{tv, true};
    for (const auto& [id, e] : g.carrier.entries()) entries[id] = e;
    PseudoMorphism out{source, target,
                       StrataMorphism(source->base, target->base, std::move(entries),
                                      Declarations{true, true, true}),
                       g.link_maps};
    if (!g.source->base.empty())
      out.link_maps[sv] = std::make_shared<const PseudoMorphism>(g);
    return out;
  };
  ConeCospanSample sample{PseudoCospan{lift(links.f, x, w), lift(links.h, x, y)},
                          links.f.source->base.empty(), d, links.f.target, links.h.target};
  return sample;
}

}  // namespace strata

#endif  // STRATA_PSEUDOMANIFOLD_HPP
