#ifndef STRATA_LIMITS_HPP
#define STRATA_LIMITS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/amalgamation.hpp"
#include "strata/graph.hpp"
#include "strata/morphism.hpp"
#include "strata/skeleton.hpp"

namespace strata {

/**
 * A finite directed tower of spaces and forward maps. Each map must classify
 * at least as an embedding (so strata chains never merge); regular_image is a
 * per-map declaration that the image sits as a regular stratified subspace —
 * it is recorded, not checked, because point-set regularity is not visible in
 * the incidence data.
 */
struct Tower {
  std::vector<Skeleton> stages;
  std::vector<StrataMorphism> maps;  // maps[i] : stages[i] -> stages[i+1]
  std::vector<bool> regular_image;   // declaration per map
};

inline ValidationReport validate_tower(const Tower& t) {
  ValidationReport report;
  auto flag = [&](const std::string& v) {
    report.ok = false;
    report.violations.push_back(v);
  };
  if (t.stages.empty()) {
    flag("tower has no stages");
    return report;
  }
  if (t.maps.size() + 1 != t.stages.size())
    flag("tower has " + std::to_string(t.stages.size()) + " stages but " +
         std::to_string(t.maps.size()) + " maps");
  if (t.regular_image.size() != t.maps.size())
    flag("tower declares " + std::to_string(t.regular_image.size()) +
         " regular-image flags for " + std::to_string(t.maps.size()) + " maps");
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    ValidationReport stage = validate_skeleton(t.stages[i]);
    for (const std::string& v : stage.violations)
      flag("stage " + std::to_string(i + 1) + ": " + v);
    for (const auto& [id, label] : t.stages[i].strata())
      if (label.dim.is_infinite())
        flag("stage " + std::to_string(i + 1) + ": infinite dimension at " + id.token);
  }
  for (std::size_t i = 0; i < t.maps.size() && i + 1 < t.stages.size(); ++i) {
    if (!(t.maps[i].source() == t.stages[i]) || !(t.maps[i].target() == t.stages[i + 1])) {
      flag("map " + std::to_string(i + 1) + " does not run between stages " +
           std::to_string(i + 1) + " and " + std::to_string(i + 2));
      continue;
    }
    Classification c = classify(t.maps[i]);
    if (c.cls < MorphClass::kEmbedding)
      flag("map " + std::to_string(i + 1) + " is not an embedding (" + c.witness + ")");
  }
  return report;
}

/**
 * The space a valid tower converges to, read off from its last stage: maps
 * are injective, so every stratum's history is a single chain and the last
 * stage enumerates all surviving strata. With extrapolate the final pattern
 * is declared to repeat, and a stratum whose dimension still grew on the last
 * step gets the infinite dimension marker; without it only observed values
 * are reported.
 */
inline Skeleton colimit(const Tower& t, bool extrapolate = false) {
  ValidationReport r = validate_tower(t);
  if (!r.ok) throw Error("colimit requires a valid tower: " + r.violations.front());
  const Skeleton& last = t.stages.back();
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const auto& [id, label] : last.strata()) {
    StratumLabel out = label;
    if (extrapolate && !t.maps.empty()) {
      // The final step decides: a dim that still grew is declared unbounded.
      const StrataMorphism& m = t.maps.back();
      for (const auto& [s, e] : m.entries())
        if (e.target == id) {
          Dim pre_dim = m.source().label(s).dim;
          if (pre_dim.leq(label.dim) && pre_dim != label.dim) out.dim = Dim::infinite();
          break;
        }
    }
    strata.emplace_back(id, out);
  }
  return Skeleton(strata, last.closure_pairs());
}

enum class LimitVerdict { kGraphStable, kLengthUnbounded, kFiniteDim, kMixed };

inline std::string to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::kGraphStable: return "GRAPH_STABLE";
    case LimitVerdict::kLengthUnbounded: return "LENGTH_UNBOUNDED";
    case LimitVerdict::kFiniteDim: return "FINITE_DIM";
    case LimitVerdict::kMixed: return "MIXED";
  }
  return "MIXED";
}

/**
 * Observed limit behavior plus the evidence it rests on. stabilization_index
 * is the 1-based stage where the reported pattern begins (0 when none).
 */
struct LimitClassification {
  LimitVerdict verdict = LimitVerdict::kMixed;
  std::size_t stabilization_index = 0;
  std::vector<int> lengths;   // longest chain per stage
  std::vector<int> max_dims;  // largest stratum dim per stage; -1 for empty
  std::optional<StratGraph> stable_graph;
  std::string evidence;
};

namespace detail {

/** Does the map carry the source Hasse graph isomorphically onto the target's? */
inline bool induces_graph_iso(const StrataMorphism& m) {
  StratGraph src = hasse_graph(m.source());
  StratGraph tgt = hasse_graph(m.target());
  if (src.vertices.size() != tgt.vertices.size() || src.edges.size() != tgt.edges.size())
    return false;
  std::set<StratumId> image;
  for (const StratumId& v : src.vertices) image.insert(m.apply(v));
  if (image != tgt.vertices) return false;
  std::set<std::pair<StratumId, StratumId>> tgt_edges(tgt.edges.begin(), tgt.edges.end());
  for (const auto& [a, b] : src.edges)
    if (!tgt_edges.count({m.apply(a), m.apply(b)})) return false;
  return true;
}

}  // namespace detail

/**
 * The trichotomy of limit behaviors, decided on observed evidence:
 * graph stabilization beats unbounded length growth (extrapolation only)
 * beats eventually-constant dimension; anything else is mixed.
 */
inline LimitClassification classify_limit(const Tower& t, bool extrapolate) {
  ValidationReport r = validate_tower(t);
  if (!r.ok) throw Error("classify_limit requires a valid tower: " + r.violations.front());
  if (t.stages.size() < 2) throw Error("classify_limit requires at least two stages");

  LimitClassification out;
  for (const Skeleton& s : t.stages) {
    out.lengths.push_back(length(s));
    int max_dim = -1;
    for (const auto& [_, label] : s.strata()) max_dim = std::max(max_dim, label.dim.value());
    out.max_dims.push_back(max_dim);
  }
  const std::size_t n = t.stages.size();

  // Graph stabilization: all maps from some stage onward are graph isos.
  std::size_t stable_from = t.maps.size();  // first map index with all-isos suffix
  while (stable_from > 0 && detail::induces_graph_iso(t.maps[stable_from - 1])) --stable_from;
  if (stable_from < t.maps.size()) {
    out.verdict = LimitVerdict::kGraphStable;
    out.stabilization_index = stable_from + 1;
    out.stable_graph = hasse_graph(t.stages.back());
    out.evidence = "incidence graphs map isomorphically from stage " +
                   std::to_string(out.stabilization_index) + " through stage " +
                   std::to_string(n) +
                   (extrapolate ? "; pattern declared to repeat" : " (observed range only)");
    return out;
  }

  if (extrapolate && out.lengths[n - 2] < out.lengths[n - 1]) {
    std::size_t start = n - 1;  // 0-based start of the strictly increasing suffix
    while (start > 0 && out.lengths[start - 1] < out.lengths[start]) --start;
    out.verdict = LimitVerdict::kLengthUnbounded;
    out.stabilization_index = start + 1;
    out.evidence = "longest chain grows strictly from stage " +
                   std::to_string(out.stabilization_index) + " (" +
                   std::to_string(out.lengths[start]) + " up to " +
                   std::to_string(out.lengths[n - 1]) + "); declared to continue";
    return out;
  }

  if (out.max_dims[n - 2] == out.max_dims[n - 1]) {
    std::size_t start = n - 1;
    while (start > 0 && out.max_dims[start - 1] == out.max_dims[start]) --start;
    out.verdict = LimitVerdict::kFiniteDim;
    out.stabilization_index = start + 1;
    out.evidence = "maximum dimension constant at " + std::to_string(out.max_dims[n - 1]) +
                   " from stage " + std::to_string(out.stabilization_index);
    return out;
  }

  out.verdict = LimitVerdict::kMixed;
  out.evidence = "no stable pattern in the observed stages";
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic tower generators.

/**
 * Spheres of growing dimension, each stratified by two marked points and
 * their complement; each stage includes into the next pole-to-pole, with the
 * regular stratum landing non-surjectively inside the bigger one.
 */
inline Tower sphere_tower(int steps) {
  if (steps < 1) throw Error("sphere_tower: need at least one stage");
  Tower t;
  for (int n = 1; n <= steps; ++n) {
    t.stages.push_back(Skeleton({{StratumId("zero"), make_label(0, true, true)},
                                 {StratumId("inf"), make_label(0, true, true)},
                                 {StratumId("reg"), make_label(n, false, n >= 2)}},
                                {{StratumId("zero"), StratumId("reg")},
                                 {StratumId("inf"), StratumId("reg")}}));
  }
  for (int n = 1; n < steps; ++n) {
    std::map<StratumId, MorphismEntry> entries{
        {StratumId("zero"), MorphismEntry{StratumId("zero"), true}},
        {StratumId("inf"), MorphismEntry{StratumId("inf"), true}},
        {StratumId("reg"), MorphismEntry{StratumId("reg"), false}}};
    t.maps.emplace_back(t.stages[n - 1], t.stages[n], entries, Declarations{true, true, true});
    t.regular_image.push_back(true);
  }
  return t;
}

/**
 * Iterated cones over a seed space: steps+1 stages, each included into the
 * next away from the new vertex. Cones require compact strata, so each stage
 * is relabeled compact before the next cone; the stored stages keep the
 * labels the cone actually produced.
 */
inline Tower cone_tower(const Skeleton& seed, int steps) {
  if (steps < 1) throw Error("cone_tower: need at least one step");
  ValidationReport r = validate_skeleton(seed);
  if (!r.ok) throw Error("cone_tower: invalid seed: " + r.violations.front());
  Tower t;
  t.stages.push_back(seed);
  for (int i = 0; i < steps; ++i) {
    const Skeleton& prev = t.stages.back();
    std::vector<std::pair<StratumId, StratumLabel>> compacted;
    for (const auto& [id, label] : prev.strata()) {
      StratumLabel c = label;
      c.compact = true;
      compacted.emplace_back(id, c);
    }
    Skeleton next = cone(Skeleton(compacted, prev.closure_pairs()));
    std::map<StratumId, MorphismEntry> entries;
    for (const auto& [id, _] : prev.strata()) entries[id] = MorphismEntry{id, false};
    t.maps.emplace_back(prev, next, std::move(entries), Declarations{true, true, true});
    t.regular_image.push_back(false);
    t.stages.push_back(std::move(next));
  }
  return t;
}

/**
 * Iterated bouquets of k copies glued at a base point: steps+1 stages, each
 * included into the next as the first copy. These inclusions are strong
 * (every entry onto, order reflected), so lengths never decrease.
 */
inline Tower bouquet_tower(const Skeleton& x, const StratumId& base, int k, int steps) {
  if (steps < 1) throw Error("bouquet_tower: need at least one step");
  Tower t;
  t.stages.push_back(x);
  for (int i = 0; i < steps; ++i) {
    const Skeleton& prev = t.stages.back();
    Skeleton next = bouquet(prev, base, k);
    std::map<StratumId, MorphismEntry> entries;
    for (const auto& [id, _] : prev.strata())
      entries[id] =
          MorphismEntry{id == base ? base : StratumId(id.token + "_1"), true};
    t.maps.emplace_back(prev, next, std::move(entries), Declarations{true, true, true});
    t.regular_image.push_back(false);
    t.stages.push_back(std::move(next));
  }
  return t;
}

}  // namespace strata

#endif  // STRATA_LIMITS_HPP
