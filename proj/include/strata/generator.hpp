#ifndef STRATA_GENERATOR_HPP
#define STRATA_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "strata/morphism.hpp"
#include "strata/skeleton.hpp"

namespace strata {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/** Sub-seed for iteration `index` of a run seeded with `seed`. */
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

/** Thin deterministic wrapper around mt19937_64. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int below(int n) {
    if (n <= 0) throw Error("Rng::below needs a positive bound");
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p;
  }

 private:
  std::mt19937_64 engine_;
};

struct GeneratorConfig {
  int max_strata = 12;
  double edge_probability = 0.4;
};

/**
 * Random skeleton: strata are layered, cover candidates point from lower to
 * higher layers, and a stratum at layer i gets dim >= i. The declared pairs
 * form a DAG by construction, so outputs always validate.
 */
inline Skeleton random_skeleton(Rng& rng, const GeneratorConfig& config = {}) {
  int n = rng.between(1, config.max_strata);
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  std::vector<int> layer(n);
  int depth = rng.between(1, 4);
  for (int i = 0; i < n; ++i) {
    layer[i] = rng.below(depth);
    StratumLabel label;
    label.dim = Dim::finite(layer[i] + rng.below(3));
    label.compact = rng.chance(0.5);
    label.connected = rng.chance(0.7);
    strata.emplace_back(StratumId("s" + std::to_string(i)), label);
  }
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (layer[i] < layer[j] && rng.chance(config.edge_probability))
        rels.emplace_back(strata[i].first, strata[j].first);
  return Skeleton(strata, rels);
}

/** Uniformly random subset of the strata (possibly empty or everything). */
inline StrataSubset random_subset(Rng& rng, const Skeleton& s) {
  StrataSubset out;
  for (const auto& [id, _] : s.strata())
    if (rng.chance(0.5)) out.insert(id);
  return out;
}

/**
 * Extends x with fresh strata so that x stays an induced sub-poset (the
 * inclusion is a strong embedding). With only_above, fresh strata never sit
 * below existing ones, keeping the original strata down-closed in the result.
 */
inline Skeleton random_strong_extension(Rng& rng, const Skeleton& x, int extra,
                                        bool only_above) {
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const auto& [id, label] : x.strata()) strata.emplace_back(id, label);
  std::set<StratumId> taken = x.ids();
  std::vector<StratumId> fresh;
  for (int i = 0; i < extra; ++i) {
    StratumId id = detail::fresh_id("t" + std::to_string(i), taken);
    taken.insert(id);
    fresh.push_back(id);
    StratumLabel label;
    label.dim = Dim::finite(rng.below(4));
    label.compact = rng.chance(0.5);
    label.connected = rng.chance(0.7);
    strata.emplace_back(id, label);
  }
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [a, b] : x.closure_pairs()) rels.emplace_back(a, b);

  std::vector<std::pair<StratumId, StratumId>> candidates;
  std::vector<StratumId> xs;
  for (const auto& [id, _] : x.strata()) xs.push_back(id);
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    for (const StratumId& old : xs) {
      if (rng.chance(0.35)) candidates.emplace_back(old, fresh[i]);
      if (!only_above && rng.chance(0.2)) candidates.emplace_back(fresh[i], old);
    }
    for (std::size_t j = i + 1; j < fresh.size(); ++j)
      if (rng.chance(0.3)) candidates.emplace_back(fresh[i], fresh[j]);
  }

  // Grow the relation set candidate by candidate, dropping any addition that
  // changes the induced order on x (or creates a cycle).
  for (const auto& cand : candidates) {
    std::vector<std::pair<StratumId, StratumId>> trial = rels;
    trial.push_back(cand);
    Skeleton attempt(strata, trial);
    if (!validate_skeleton(attempt).ok) continue;
    bool safe = true;
    for (const StratumId& a : xs) {
      for (const StratumId& b : xs)
        if (attempt.leq(a, b) != x.leq(a, b)) {
          safe = false;
          break;
        }
      if (!safe) break;
    }
    if (safe) rels = std::move(trial);
  }
  return Skeleton(strata, rels);
}

struct Cospan {
  Skeleton x;
  Skeleton w;
  Skeleton y;
  StrataMorphism f;  // x -> w
  StrataMorphism h;  // x -> y
};

/**
 * Random cospan of strong embeddings out of a shared sub-skeleton. With
 * closed=true both images are down-closed in their extensions.
 */
inline Cospan random_cospan(Rng& rng, bool closed, const GeneratorConfig& config = {}) {
  GeneratorConfig small = config;
  small.max_strata = std::max(1, config.max_strata / 2);
  Skeleton x = random_skeleton(rng, small);
  Skeleton w = random_strong_extension(rng, x, rng.between(0, 3), closed);
  Skeleton y = random_strong_extension(rng, x, rng.between(0, 3), closed);
  StrataMorphism f = inclusion(x, w);
  StrataMorphism h = inclusion(x, y);
  return Cospan{std::move(x), std::move(w), std::move(y), std::move(f), std::move(h)};
}

/**
 * Random monotone map with all point-level declarations set. Images are
 * chosen greedily along a linear extension; when a stratum has no compatible
 * image, a fresh top stratum is appended to the target to absorb it.
 */
inline StrataMorphism random_declared_morphism(Rng& rng, const GeneratorConfig& config = {}) {
  GeneratorConfig small = config;
  small.max_strata = std::max(1, config.max_strata / 2);
  Skeleton src = random_skeleton(rng, small);
  Skeleton tgt = random_skeleton(rng, small);

  // Linear extension of src: sort by chain height, ties by id.
  std::vector<StratumId> order;
  for (const auto& [id, _] : src.strata()) order.push_back(id);
  std::stable_sort(order.begin(), order.end(), [&](const StratumId& a, const StratumId& b) {
    int ha = static_cast<int>(closure_of(src, a).size());
    int hb = static_cast<int>(closure_of(src, b).size());
    return ha < hb;
  });

  std::map<StratumId, MorphismEntry> entries;
  bool need_top = false;
  for (const StratumId& s : order) {
    std::vector<StratumId> options;
    for (const auto& [c, label] : tgt.strata()) {
      if (!src.label(s).dim.leq(label.dim)) continue;
      bool ok = true;
      for (const auto& [prev, e] : entries) {
        if (src.leq(prev, s) && !tgt.leq(e.target, c)) ok = false;
        if (src.leq(s, prev) && !tgt.leq(c, e.target)) ok = false;
        if (!ok) break;
      }
      if (ok) options.push_back(c);
    }
    if (options.empty()) {
      need_top = true;
      break;
    }
    StratumId pick = options[static_cast<std::size_t>(rng.below(static_cast<int>(options.size())))];
    bool onto = src.label(s).dim == tgt.label(pick).dim && rng.chance(0.5);
    entries[s] = MorphismEntry{pick, onto};
  }

  if (need_top) {
    int max_dim = 0;
    for (const auto& [_, label] : src.strata()) max_dim = std::max(max_dim, label.dim.value());
    for (const auto& [_, label] : tgt.strata()) max_dim = std::max(max_dim, label.dim.value());
    std::vector<std::pair<StratumId, StratumLabel>> strata;
    for (const auto& [id, label] : tgt.strata()) strata.emplace_back(id, label);
    StratumId top = detail::fresh_id("top", tgt.ids());
    strata.emplace_back(top, make_label(max_dim + 1, false, true));
    std::vector<std::pair<StratumId, StratumId>> rels;
    for (const auto& [a, b] : tgt.closure_pairs()) rels.emplace_back(a, b);
    for (const auto& [id, _] : tgt.strata()) rels.emplace_back(id, top);
    tgt = Skeleton(strata, rels);
    for (const auto& [id, _] : src.strata())
      if (!entries.count(id)) entries[id] = MorphismEntry{top, false};
  }
  return StrataMorphism(std::move(src), std::move(tgt), std::move(entries),
                        Declarations{true, true, true});
}

}  // namespace strata

#endif  // STRATA_GENERATOR_HPP
