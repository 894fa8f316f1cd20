#ifndef STRATA_MORPHISM_HPP
#define STRATA_MORPHISM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata/skeleton.hpp"

namespace strata {

/** Entry of a strata map: target stratum plus whether the image fills it. */
struct MorphismEntry {
  StratumId target;
  bool onto = false;

  friend bool operator==(const MorphismEntry&, const MorphismEntry&) = default;
};

/**
 * Point-level hypotheses the skeleton cannot verify; they are declared by the
 * caller and consumed by classification.
 */
struct Declarations {
  bool proper = false;
  bool injective_on_points = false;
  bool immersion = false;

  bool all() const { return proper && injective_on_points && immersion; }

  friend bool operator==(const Declarations&, const Declarations&) = default;
};

/**
 * Total stratum-preserving map between skeletons. Construction enforces
 * totality, known targets, and the dimension rule: an onto entry preserves
 * dim, a non-onto entry may only raise it.
 */
class StrataMorphism {
 public:
  StrataMorphism(Skeleton source, Skeleton target,
                 std::map<StratumId, MorphismEntry> entries, Declarations decl)
      : source_(std::move(source)),
        target_(std::move(target)),
        entries_(std::move(entries)),
        decl_(decl) {
    for (const auto& [s, _] : source_.strata())
      if (!entries_.count(s)) throw Error("morphism entry missing for stratum: " + s.token);
    for (const auto& [s, e] : entries_) {
      if (!source_.has(s)) throw Error("morphism entry for unknown stratum: " + s.token);
      if (!target_.has(e.target))
        throw Error("morphism entry targets unknown stratum: " + e.target.token);
      Dim ds = source_.label(s).dim;
      Dim dt = target_.label(e.target).dim;
      if (e.onto && ds != dt)
        throw Error("onto entry must preserve dim: " + s.token + " -> " + e.target.token);
      if (!e.onto && !ds.leq(dt))
        throw Error("entry may not lower dim: " + s.token + " -> " + e.target.token);
    }
  }

  const Skeleton& source() const { return source_; }
  const Skeleton& target() const { return target_; }
  const std::map<StratumId, MorphismEntry>& entries() const { return entries_; }
  const Declarations& declarations() const { return decl_; }

  const StratumId& apply(const StratumId& s) const {
    auto it = entries_.find(s);
    if (it == entries_.end()) throw Error("no entry for stratum: " + s.token);
    return it->second.target;
  }

  bool onto(const StratumId& s) const {
    auto it = entries_.find(s);
    if (it == entries_.end()) throw Error("no entry for stratum: " + s.token);
    return it->second.onto;
  }

  StrataSubset image() const {
    StrataSubset out;
    for (const auto& [_, e] : entries_) out.insert(e.target);
    return out;
  }

  friend bool operator==(const StrataMorphism& a, const StrataMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.entries_ == b.entries_ &&
           a.decl_ == b.decl_;
  }

 private:
  Skeleton source_;
  Skeleton target_;
  std::map<StratumId, MorphismEntry> entries_;
  Declarations decl_;
};

enum class MorphClass {
  kNotMorphism,
  kMorphism,
  kImmersion,
  kEmbedding,
  kStrongEmbedding,
  kIsomorphism,
};

inline bool operator<(MorphClass a, MorphClass b) {
  return static_cast<int>(a) < static_cast<int>(b);
}
inline bool operator>=(MorphClass a, MorphClass b) { return !(a < b); }
inline bool operator<=(MorphClass a, MorphClass b) { return a < b || a == b; }

inline std::string to_string(MorphClass c) {
  switch (c) {
    case MorphClass::kNotMorphism: return "NOT_MORPHISM";
    case MorphClass::kMorphism: return "MORPHISM";
    case MorphClass::kImmersion: return "IMMERSION";
    case MorphClass::kEmbedding: return "EMBEDDING";
    case MorphClass::kStrongEmbedding: return "STRONG_EMBEDDING";
    case MorphClass::kIsomorphism: return "ISOMORPHISM";
  }
  return "?";
}

struct Classification {
  MorphClass cls = MorphClass::kNotMorphism;
  std::string witness;
};

/**
 * Strength ladder. Order preservation makes a morphism; the immersion flag an
 * immersion; all three declarations plus an injective strata map an embedding
 * (a proper 1-1 immersion embeds exactly when distinct strata stay distinct);
 * saturation (every entry onto, order reflected) a strong embedding; and a
 * strong embedding onto all target strata an isomorphism.
 */
inline Classification classify(const StrataMorphism& m) {
  const Skeleton& src = m.source();
  const Skeleton& tgt = m.target();
  for (const auto& [a, _] : src.strata())
    for (const auto& [b, __] : src.strata())
      if (src.leq(a, b) && !tgt.leq(m.apply(a), m.apply(b)))
        return {MorphClass::kNotMorphism,
                "order violated: " + a.token + " <= " + b.token + " but " +
                    m.apply(a).token + " !<= " + m.apply(b).token};

  Classification result{MorphClass::kMorphism, "order-preserving"};
  if (!m.declarations().immersion) return result;
  result = {MorphClass::kImmersion, "immersion declared"};
  if (!m.declarations().all()) return result;

  std::map<StratumId, StratumId> seen;
  for (const auto& [s, e] : m.entries()) {
    auto [it, inserted] = seen.emplace(e.target, s);
    if (!inserted) {
      result.witness = "strata map not 1-1: " + it->second.token + " and " + s.token +
                       " both map to " + e.target.token;
      return result;
    }
  }
  result = {MorphClass::kEmbedding, "proper 1-1 immersion with 1-1 strata map"};

  for (const auto& [s, e] : m.entries())
    if (!e.onto) {
      result.witness += "; not saturated: " + s.token + " not onto";
      return result;
    }
  for (const auto& [a, _] : src.strata())
    for (const auto& [b, __] : src.strata())
      if (tgt.leq(m.apply(a), m.apply(b)) && !src.leq(a, b)) {
        result.witness += "; order not reflected: " + m.apply(a).token + " <= " +
                          m.apply(b).token + " but " + a.token + " !<= " + b.token;
        return result;
      }
  result = {MorphClass::kStrongEmbedding, "saturated embedding"};

  if (m.image().size() == tgt.size())
    result = {MorphClass::kIsomorphism, "bijective saturated embedding"};
  return result;
}

/** Composition; onto flags and declarations combine conjunctively. */
inline StrataMorphism compose(const StrataMorphism& f, const StrataMorphism& g) {
  if (!(f.target() == g.source()))
    throw Error("compose: middle skeletons differ");
  std::map<StratumId, MorphismEntry> entries;
  for (const auto& [s, e] : f.entries()) {
    const MorphismEntry& next = g.entries().at(e.target);
    entries[s] = MorphismEntry{next.target, e.onto && next.onto};
  }
  Declarations d;
  d.proper = f.declarations().proper && g.declarations().proper;
  d.injective_on_points =
      f.declarations().injective_on_points && g.declarations().injective_on_points;
  d.immersion = f.declarations().immersion && g.declarations().immersion;
  return StrataMorphism(f.source(), g.target(), std::move(entries), d);
}

inline StrataMorphism identity(const Skeleton& s) {
  std::map<StratumId, MorphismEntry> entries;
  for (const auto& [id, _] : s.strata()) entries[id] = MorphismEntry{id, true};
  return StrataMorphism(s, s, std::move(entries), Declarations{true, true, true});
}

/**
 * Inclusion of a sub-skeleton built by restrict(): identity entries, all onto.
 * Throws if sub is not label- and order-compatible with sup.
 */
inline StrataMorphism inclusion(const Skeleton& sub, const Skeleton& sup) {
  std::map<StratumId, MorphismEntry> entries;
  for (const auto& [id, label] : sub.strata()) {
    if (!sup.has(id) || !(sup.label(id) == label))
      throw Error("inclusion: stratum not present with equal label: " + id.token);
    entries[id] = MorphismEntry{id, true};
  }
  for (const auto& [a, _] : sub.strata())
    for (const auto& [b, __] : sub.strata())
      if (sub.leq(a, b) != sup.leq(a, b))
        throw Error("inclusion: induced order mismatch at " + a.token + "," + b.token);
  return StrataMorphism(sub, sup, std::move(entries), Declarations{true, true, true});
}

namespace detail {
inline bool image_down_closed(const StrataMorphism& m) {
  StrataSubset img = m.image();
  for (const StratumId& x : img)
    for (const auto& [y, _] : m.target().strata())
      if (m.target().leq(y, x) && !img.count(y)) return false;
  return true;
}
}  // namespace detail

/** Embedding whose image is closed (down-closed) in the target. */
inline bool is_closed_embedding(const StrataMorphism& m) {
  if (classify(m).cls < MorphClass::kEmbedding) throw Error("is_closed_embedding: not an embedding");
  return detail::image_down_closed(m);
}

/**
 * Deterministic backtracking over label-compatible assignments; returns the
 * first isomorphism in lexicographic order, if any.
 */
inline std::optional<StrataMorphism> find_isomorphism(const Skeleton& a, const Skeleton& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<StratumId> av;
  for (const auto& [id, _] : a.strata()) av.push_back(id);
  std::map<StratumId, StratumId> assign;
  std::set<StratumId> used;

  struct Rec {
    const Skeleton& a;
    const Skeleton& b;
    const std::vector<StratumId>& av;
    std::map<StratumId, StratumId>& assign;
    std::set<StratumId>& used;

    bool run(std::size_t i) {
      if (i == av.size()) return true;
      const StratumId& x = av[i];
      for (const auto& [y, label] : b.strata()) {
        if (used.count(y) || !(a.label(x) == label)) continue;
        bool consistent = true;
        for (std::size_t j = 0; j < i && consistent; ++j) {
          const StratumId& px = av[j];
          const StratumId& py = assign.at(px);
          consistent = (a.leq(x, px) == b.leq(y, py)) && (a.leq(px, x) == b.leq(py, y));
        }
        if (!consistent) continue;
        assign[x] = y;
        used.insert(y);
        if (run(i + 1)) return true;
        used.erase(y);
        assign.erase(x);
      }
      return false;
    }
  } rec{a, b, av, assign, used};

  if (!rec.run(0)) return std::nullopt;
  std::map<StratumId, MorphismEntry> entries;
  for (const auto& [x, y] : assign) entries[x] = MorphismEntry{y, true};
  return StrataMorphism(a, b, std::move(entries), Declarations{true, true, true});
}

}  // namespace strata

#endif  // STRATA_MORPHISM_HPP
