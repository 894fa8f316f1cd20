#ifndef STRATA_AMALGAMATION_HPP
#define STRATA_AMALGAMATION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strata/generator.hpp"
#include "strata/graph.hpp"
#include "strata/morphism.hpp"
#include "strata/skeleton.hpp"

namespace strata {

/** Bijective rename; every stratum must be mapped. */
inline Skeleton rename_strata(const Skeleton& s, const std::map<StratumId, StratumId>& names) {
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const auto& [id, label] : s.strata()) strata.emplace_back(names.at(id), label);
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [a, b] : s.closure_pairs()) rels.emplace_back(names.at(a), names.at(b));
  return Skeleton(strata, rels);
}

struct PushoutResult {
  Skeleton amalgam;
  StrataMorphism left;   // w -> amalgam
  StrataMorphism right;  // y -> amalgam
  // Identification of the tagged input strata with amalgam strata (the legs
  // as plain maps, convenient for serialization).
  std::map<StratumId, StratumId> from_left, from_right;
};

/**
 * Amalgamated sum of strong embeddings f: x->w and h: x->y. Strata of w and y
 * are identified along the images of x; the order is the transitive closure
 * of the union. Identified strata must carry equal labels. The result is
 * validated before returning.
 */
inline PushoutResult pushout(const StrataMorphism& f, const StrataMorphism& h) {
  if (!(f.source() == h.source())) throw Error("pushout: legs must share their source");
  Classification cf = classify(f);
  if (cf.cls < MorphClass::kStrongEmbedding)
    throw Error("pushout: left leg is not a strong embedding (" + cf.witness + ")");
  Classification ch = classify(h);
  if (ch.cls < MorphClass::kStrongEmbedding)
    throw Error("pushout: right leg is not a strong embedding (" + ch.witness + ")");

  const Skeleton& w = f.target();
  const Skeleton& y = h.target();

  // Identified classes hold at most one stratum per side (legs are injective).
  std::map<StratumId, StratumId> partner_w;  // w stratum -> identified y stratum
  std::map<StratumId, StratumId> partner_y;
  for (const auto& [x, _] : f.source().strata()) {
    partner_w[f.apply(x)] = h.apply(x);
    partner_y[h.apply(x)] = f.apply(x);
  }

  std::map<StratumId, StratumId> name_w;  // w stratum -> amalgam stratum
  std::map<StratumId, StratumId> name_y;
  std::set<StratumId> taken;
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const auto& [id, label] : w.strata()) {
    StratumId fresh = detail::fresh_id(id.token, taken);
    taken.insert(fresh);
    name_w[id] = fresh;
    auto shared = partner_w.find(id);
    if (shared != partner_w.end()) {
      const StratumLabel& other = y.label(shared->second);
      if (!(other == label))
        throw Error("amalgam label conflict at: " + id.token + " / " + shared->second.token);
      name_y[shared->second] = fresh;
    }
    strata.emplace_back(fresh, label);
  }
  for (const auto& [id, label] : y.strata()) {
    if (name_y.count(id)) continue;
    StratumId fresh = detail::fresh_id(id.token, taken);
    taken.insert(fresh);
    name_y[id] = fresh;
    strata.emplace_back(fresh, label);
  }

  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [a, b] : w.closure_pairs()) rels.emplace_back(name_w.at(a), name_w.at(b));
  for (const auto& [a, b] : y.closure_pairs()) rels.emplace_back(name_y.at(a), name_y.at(b));
  Skeleton amalgam(strata, rels);

  ValidationReport report = validate_skeleton(amalgam);
  if (!report.ok) throw Error("pushout produced an invalid skeleton: " + report.violations.front());

  auto leg = [&](const Skeleton& side, const std::map<StratumId, StratumId>& names) {
    std::map<StratumId, MorphismEntry> entries;
    for (const auto& [id, _] : side.strata()) entries[id] = MorphismEntry{names.at(id), true};
    return StrataMorphism(side, amalgam, std::move(entries), Declarations{true, true, true});
  };
  StrataMorphism left = leg(w, name_w);
  StrataMorphism right = leg(y, name_y);
  return PushoutResult{std::move(amalgam), std::move(left), std::move(right), std::move(name_w),
                       std::move(name_y)};
}

struct JointEmbedding {
  Skeleton skeleton;
  StrataMorphism left;
  StrataMorphism right;
};

/** Tagged disjoint union with its two (strong) inclusion legs. */
inline JointEmbedding joint_embedding(const Skeleton& a, const Skeleton& b) {
  DisjointUnion u = disjoint_union(a, b);
  auto leg = [&](const Skeleton& side, const std::map<StratumId, StratumId>& names) {
    std::map<StratumId, MorphismEntry> entries;
    for (const auto& [id, _] : side.strata()) entries[id] = MorphismEntry{names.at(id), true};
    return StrataMorphism(side, u.skeleton, std::move(entries), Declarations{true, true, true});
  };
  StrataMorphism left = leg(a, u.left);
  StrataMorphism right = leg(b, u.right);
  return JointEmbedding{u.skeleton, std::move(left), std::move(right)};
}

/**
 * Wedge of k tagged copies of x glued along a minimal dim-0 base stratum,
 * built as an iterated pushout. Strata count is k*(|x|-1)+1.
 */
inline Skeleton bouquet(const Skeleton& x, const StratumId& base, int k) {
  if (!x.has(base)) throw Error("bouquet: unknown base stratum: " + base.token);
  if (x.label(base).dim != Dim::finite(0))
    throw Error("bouquet: base stratum must have dim 0: " + base.token);
  if (!minimal_strata(x).count(base))
    throw Error("bouquet: base stratum must be minimal: " + base.token);
  if (k < 2) throw Error("bouquet: need at least two copies");

  auto copy = [&](int j) {
    std::map<StratumId, StratumId> names;
    for (const auto& [id, _] : x.strata())
      names[id] = (id == base) ? id : StratumId(id.token + "_" + std::to_string(j));
    return rename_strata(x, names);
  };

  Skeleton point = restrict(x, StrataSubset{base});
  Skeleton acc = copy(1);
  for (int j = 2; j <= k; ++j) {
    PushoutResult p = pushout(inclusion(point, acc), inclusion(point, copy(j)));
    acc = p.amalgam;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Universal property check.

struct UniversalCheckConfig {
  int max_target_strata = 4;
  long long budget = 20'000'000;  // enumeration steps before giving up
};

struct UniversalCheck {
  enum class Status { kVerified, kFailed, kIndeterminate };
  Status status = Status::kIndeterminate;
  std::string witness;
};

namespace detail {

/**
 * All posets on n elements up to isomorphism, as skeletons z0..z{n-1} with
 * uniform labels. Every iso class has a representative whose order respects
 * the integer order of its indices, so only such relation sets are scanned.
 */
inline std::vector<Skeleton> small_posets(int n, const StratumLabel& label) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::set<std::vector<bool>> seen_canonical;
  std::vector<Skeleton> out;

  std::vector<int> perm(n);
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask & (1u << s)) le[slots[s].first][slots[s].second] = true;
    bool transitive = true;
    for (int a = 0; a < n && transitive; ++a)
      for (int b = 0; b < n && transitive; ++b)
        for (int c = 0; c < n && transitive; ++c)
          if (le[a][b] && le[b][c] && !le[a][c]) transitive = false;
    if (!transitive) continue;

    // Canonical form: lexicographically smallest matrix over all relabelings.
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<bool> best;
    do {
      std::vector<bool> flat;
      flat.reserve(static_cast<std::size_t>(n) * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flat.push_back(le[perm[a]][perm[b]]);
      if (best.empty() || flat < best) best = std::move(flat);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen_canonical.insert(best).second) continue;

    std::vector<std::pair<StratumId, StratumLabel>> strata;
    for (int i = 0; i < n; ++i) strata.emplace_back(StratumId("z" + std::to_string(i)), label);
    std::vector<std::pair<StratumId, StratumId>> rels;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && le[a][b]) rels.emplace_back(strata[a].first, strata[b].first);
    out.emplace_back(strata, rels);
  }
  return out;
}

enum class EnumOutcome { kDone, kStopped, kBudget };

/**
 * Enumerates monotone dim-respecting strata maps src -> tgt extending
 * `forced`. visit returns false to stop early. Each candidate probe costs one
 * budget unit.
 */
inline EnumOutcome enumerate_monotone(
    const Skeleton& src, const Skeleton& tgt, const std::map<StratumId, StratumId>& forced,
    long long& budget, const std::function<bool(const std::map<StratumId, StratumId>&)>& visit) {
  std::vector<StratumId> order;
  for (const auto& [id, _] : src.strata()) order.push_back(id);
  std::stable_sort(order.begin(), order.end(), [&](const StratumId& a, const StratumId& b) {
    return closure_of(src, a).size() < closure_of(src, b).size();
  });

  std::map<StratumId, StratumId> assign;
  EnumOutcome outcome = EnumOutcome::kDone;

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == order.size()) return visit(assign);
    const StratumId& a = order[i];
    auto fit = forced.find(a);
    for (const auto& [c, label] : tgt.strata()) {
      if (fit != forced.end() && !(fit->second == c)) continue;
      if (--budget < 0) {
        outcome = EnumOutcome::kBudget;
        return false;
      }
      if (!src.label(a).dim.leq(label.dim)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const StratumId& b = order[j];
        const StratumId& cb = assign.at(b);
        if (src.leq(b, a) && !tgt.leq(cb, c)) ok = false;
        if (src.leq(a, b) && !tgt.leq(c, cb)) ok = false;
      }
      if (!ok) continue;
      assign[a] = c;
      bool keep_going = rec(i + 1);
      assign.erase(a);
      if (!keep_going) return false;
    }
    return true;
  };
  if (!rec(0) && outcome == EnumOutcome::kDone) outcome = EnumOutcome::kStopped;
  return outcome;
}

}  // namespace detail

/**
 * Checks that the amalgam is universal: for every cocone over the legs, into
 * every candidate target up to the strata bound (plus the amalgam itself),
 * exactly one mediating morphism exists. Exhaustive below the bound;
 * INDETERMINATE when the step budget runs out, never a silent pass.
 */
inline UniversalCheck verify_pushout_universal(const PushoutResult& p,
                                               UniversalCheckConfig config = {}) {
  long long budget = config.budget;
  UniversalCheck result;

  // Inverse leg lookups; legs are injective on strata.
  std::map<StratumId, StratumId> from_w, from_y;
  for (const auto& [wid, aid] : p.from_left) from_w[aid] = wid;
  for (const auto& [yid, aid] : p.from_right) from_y[aid] = yid;

  Dim top_dim = Dim::finite(0);
  bool any_inf = false;
  for (const auto& [_, label] : p.amalgam.strata()) {
    if (label.dim.is_infinite()) any_inf = true;
    else if (top_dim.leq(label.dim)) top_dim = label.dim;
  }
  StratumLabel uniform;
  uniform.dim = any_inf ? Dim::infinite() : top_dim;
  uniform.compact = true;
  uniform.connected = true;

  std::vector<Skeleton> candidates;
  for (int n = 1; n <= config.max_target_strata; ++n)
    for (Skeleton& z : detail::small_posets(n, uniform)) candidates.push_back(std::move(z));
  candidates.push_back(p.amalgam);

  for (const Skeleton& z : candidates) {
    // Enumerate s: W -> Z; then t: Y -> Z forced on the shared part.
    auto on_s = [&](const std::map<StratumId, StratumId>& s_map) -> bool {
      std::map<StratumId, StratumId> t_forced;
      for (const auto& [aid, yid] : from_y) {
        auto shared = from_w.find(aid);
        if (shared != from_w.end()) t_forced[yid] = s_map.at(shared->second);
      }
      auto on_t = [&](const std::map<StratumId, StratumId>& t_map) -> bool {
        // Mediator is forced on both leg images.
        std::map<StratumId, StratumId> forced;
        for (const auto& [amalgam_id, wid] : from_w) forced[amalgam_id] = s_map.at(wid);
        for (const auto& [amalgam_id, yid] : from_y) {
          auto want = t_map.at(yid);
          auto it = forced.find(amalgam_id);
          if (it != forced.end() && !(it->second == want)) return true;  // cocone incoherent: skip
          forced[amalgam_id] = want;
        }
        int mediators = 0;
        auto count = [&](const std::map<StratumId, StratumId>&) -> bool {
          return ++mediators < 2;
        };
        detail::EnumOutcome out =
            detail::enumerate_monotone(p.amalgam, z, forced, budget, count);
        if (out == detail::EnumOutcome::kBudget) return false;
        if (mediators != 1) {
          result.status = UniversalCheck::Status::kFailed;
          result.witness = (mediators == 0 ? "no mediator" : "mediator not unique");
          result.witness += " for a cocone into a " + std::to_string(z.size()) +
                            "-stratum target";
          return false;
        }
        return true;
      };
      detail::EnumOutcome out =
          detail::enumerate_monotone(p.right.source(), z, t_forced, budget, on_t);
      return out == detail::EnumOutcome::kDone;
    };
    detail::EnumOutcome out = detail::enumerate_monotone(p.left.source(), z, {}, budget, on_s);
    if (out == detail::EnumOutcome::kBudget) {
      result.status = UniversalCheck::Status::kIndeterminate;
      result.witness = "enumeration budget exhausted";
      return result;
    }
    if (out == detail::EnumOutcome::kStopped &&
        result.status == UniversalCheck::Status::kFailed)
      return result;
    if (out == detail::EnumOutcome::kStopped) {
      // Stopped without a recorded failure: budget ran out inside a nested call.
      result.status = UniversalCheck::Status::kIndeterminate;
      result.witness = "enumeration budget exhausted";
      return result;
    }
  }
  result.status = UniversalCheck::Status::kVerified;
  result.witness = "unique mediator for every enumerated cocone";
  return result;
}

// ---------------------------------------------------------------------------
// Graph join.

struct JoinCheckResult {
  enum class Status { kTrue, kFalse, kNotApplicable };
  Status status = Status::kNotApplicable;
  std::string detail;
};

/**
 * When the shared part is closed in both sides, the incidence graph of the
 * amalgam is the join of the side graphs along the shared image. Reports
 * NOT_APPLICABLE when a precondition fails, never a silent verdict.
 */
inline JoinCheckResult graph_join_check(const StrataMorphism& f, const StrataMorphism& h) {
  JoinCheckResult result;
  if (classify(f).cls < MorphClass::kStrongEmbedding ||
      classify(h).cls < MorphClass::kStrongEmbedding) {
    result.detail = "legs are not strong embeddings";
    return result;
  }
  if (!detail::image_down_closed(f) || !detail::image_down_closed(h)) {
    result.detail = "shared part is not closed in both sides";
    return result;
  }
  PushoutResult p = pushout(f, h);
  StratGraph expected;
  auto push_side = [&](const StratGraph& g, const StrataMorphism& leg) {
    for (const StratumId& v : g.vertices) expected.vertices.insert(leg.apply(v));
    for (const auto& [a, b] : g.edges) expected.edges.emplace(leg.apply(a), leg.apply(b));
  };
  push_side(hasse_graph(f.target()), p.left);
  push_side(hasse_graph(h.target()), p.right);
  StratGraph actual = hasse_graph(p.amalgam);
  if (actual == expected) {
    result.status = JoinCheckResult::Status::kTrue;
    result.detail = "amalgam graph equals the join";
    return result;
  }
  result.status = JoinCheckResult::Status::kFalse;
  for (const auto& e : actual.edges)
    if (!expected.edges.count(e)) {
      result.detail = "amalgam edge missing from join: " + e.first.token + " -> " + e.second.token;
      return result;
    }
  for (const auto& e : expected.edges)
    if (!actual.edges.count(e)) {
      result.detail = "join edge missing from amalgam: " + e.first.token + " -> " + e.second.token;
      return result;
    }
  result.detail = "vertex sets differ";
  return result;
}

// ---------------------------------------------------------------------------
// Fraisse axioms on seeded random instances.

struct FraisseFailure {
  std::uint64_t seed = 0;
  std::string witness;
};

struct AxiomReport {
  std::string axiom;
  int iterations = 0;
  std::vector<FraisseFailure> failures;
};

using FraisseReport = std::vector<AxiomReport>;

/**
 * Heritability, joint embedding and amalgamation over seeded random
 * instances. Iteration i uses subseed(seed, i), so runs are reproducible and
 * order-independent.
 */
inline FraisseReport fraisse_check(std::uint64_t seed, int iterations,
                                   const GeneratorConfig& config = {}) {
  AxiomReport heritability{"heritability", iterations, {}};
  AxiomReport joint{"joint_embedding", iterations, {}};
  AxiomReport amalgamation{"amalgamation", iterations, {}};

  for (int i = 0; i < iterations; ++i) {
    std::uint64_t s = subseed(seed, static_cast<std::uint64_t>(i));

    {
      Rng rng(s);
      Skeleton y = random_skeleton(rng, config);
      Skeleton x = restrict(y, random_subset(rng, y));
      if (!validate_skeleton(x).ok)
        heritability.failures.push_back({s, "restriction does not validate"});
      else if (!x.empty() && classify(inclusion(x, y)).cls < MorphClass::kStrongEmbedding)
        heritability.failures.push_back({s, "restriction inclusion is not strong"});
    }
    {
      Rng rng(splitmix64(s));
      Skeleton a = random_skeleton(rng, config);
      Skeleton b = random_skeleton(rng, config);
      JointEmbedding j = joint_embedding(a, b);
      if (!validate_skeleton(j.skeleton).ok)
        joint.failures.push_back({s, "union does not validate"});
      else if (classify(j.left).cls < MorphClass::kStrongEmbedding ||
               classify(j.right).cls < MorphClass::kStrongEmbedding)
        joint.failures.push_back({s, "union legs are not strong"});
    }
    {
      Rng rng(splitmix64(splitmix64(s)));
      Cospan c = random_cospan(rng, /*closed=*/false, config);
      try {
        PushoutResult p = pushout(c.f, c.h);
        bool commutes = true;
        for (const auto& [x, _] : c.x.strata())
          if (!(p.left.apply(c.f.apply(x)) == p.right.apply(c.h.apply(x)))) commutes = false;
        if (!validate_skeleton(p.amalgam).ok)
          amalgamation.failures.push_back({s, "amalgam does not validate"});
        else if (!commutes)
          amalgamation.failures.push_back({s, "amalgam square does not commute"});
        else if (classify(p.left).cls < MorphClass::kStrongEmbedding ||
                 classify(p.right).cls < MorphClass::kStrongEmbedding)
          amalgamation.failures.push_back({s, "amalgam legs are not strong"});
      } catch (const Error& e) {
        amalgamation.failures.push_back({s, std::string("pushout failed: ") + e.what()});
      }
    }
  }
  return FraisseReport{heritability, joint, amalgamation};
}

}  // namespace strata

#endif  // STRATA_AMALGAMATION_HPP
