#ifndef STRATA_SKELETON_HPP
#define STRATA_SKELETON_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strata {

/** Error type for all precondition and input failures in this library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Stratum dimension: a non-negative integer, or the infinite marker that
 * limit colimits attach to strata whose dimension grows without bound.
 */
class Dim {
 public:
  constexpr Dim() = default;

  static Dim finite(int n) {
    if (n < 0) throw Error("dimension must be non-negative");
    Dim d;
    d.v_ = n;
    return d;
  }

  static constexpr Dim infinite() {
    Dim d;
    d.v_ = kInf;
    return d;
  }

  constexpr bool is_infinite() const { return v_ == kInf; }

  int value() const {
    if (is_infinite()) throw Error("infinite dimension has no finite value");
    return v_;
  }

  // finite <= infinite <= infinite; finite dims compare numerically.
  bool leq(Dim other) const {
    if (other.is_infinite()) return true;
    if (is_infinite()) return false;
    return v_ <= other.v_;
  }

  Dim operator+(Dim other) const {
    if (is_infinite() || other.is_infinite()) return infinite();
    return finite(v_ + other.v_);
  }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

  friend constexpr bool operator==(Dim a, Dim b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Dim a, Dim b) { return a.v_ != b.v_; }

 private:
  static constexpr int kInf = -1;
  int v_ = 0;
};

/** Identifier of a stratum. Token grammar: [A-Za-z_][A-Za-z0-9_]*. */
struct StratumId {
  std::string token;

  StratumId() = default;
  StratumId(std::string t) : token(std::move(t)) {}
  StratumId(const char* t) : token(t) {}

  auto operator<=>(const StratumId&) const = default;
};

inline bool valid_id_token(const std::string& t) {
  if (t.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  if (!alpha(t[0])) return false;
  return std::all_of(t.begin() + 1, t.end(), alnum);
}

/**
 * Per-stratum data: dimension plus compactness/connectedness flags.
 * display_name is presentation-only and ignored by comparisons.
 */
struct StratumLabel {
  Dim dim;
  bool compact = false;
  bool connected = false;
  std::optional<std::string> display_name;

  friend bool operator==(const StratumLabel& a, const StratumLabel& b) {
    return a.dim == b.dim && a.compact == b.compact && a.connected == b.connected;
  }
  friend bool operator!=(const StratumLabel& a, const StratumLabel& b) { return !(a == b); }
};

inline StratumLabel make_label(int dim, bool compact, bool connected) {
  return StratumLabel{Dim::finite(dim), compact, connected, std::nullopt};
}

/** A set of strata of some skeleton, always kept sorted. */
using StrataSubset = std::set<StratumId>;

/**
 * Finite labeled incidence poset: strata with labels, ordered by adherence
 * (a <= b reads "a adheres to b": a lies in the closure of b).
 *
 * Relations may be given as an arbitrary pair list; the constructor stores the
 * reflexive-transitive closure. Antisymmetry is *not* assumed here: it is a
 * validation property, so a cyclic input still constructs and validate_skeleton
 * reports the cycle. Every value is immutable after construction.
 */
class Skeleton {
 public:
  Skeleton() = default;

  Skeleton(const std::vector<std::pair<StratumId, StratumLabel>>& strata,
           const std::vector<std::pair<StratumId, StratumId>>& relations) {
    for (const auto& [id, label] : strata) {
      if (strata_.count(id)) throw Error("duplicate stratum id: " + id.token);
      strata_.emplace(id, label);
    }
    std::map<StratumId, std::set<StratumId>> succ;
    for (const auto& [a, b] : relations) {
      if (!strata_.count(a)) throw Error("unknown stratum id in order relation: " + a.token);
      if (!strata_.count(b)) throw Error("unknown stratum id in order relation: " + b.token);
      declared_.emplace(a, b);
      succ[a].insert(b);
    }
    // up_[x] = reflexive-transitive up-closure of x.
    for (const auto& [id, _] : strata_) {
      std::set<StratumId>& reach = up_[id];
      std::vector<StratumId> stack{id};
      reach.insert(id);
      while (!stack.empty()) {
        StratumId cur = stack.back();
        stack.pop_back();
        auto it = succ.find(cur);
        if (it == succ.end()) continue;
        for (const StratumId& nxt : it->second)
          if (reach.insert(nxt).second) stack.push_back(nxt);
      }
    }
  }

  const std::map<StratumId, StratumLabel>& strata() const { return strata_; }
  std::size_t size() const { return strata_.size(); }
  bool empty() const { return strata_.empty(); }
  bool has(const StratumId& id) const { return strata_.count(id) != 0; }

  const StratumLabel& label(const StratumId& id) const {
    auto it = strata_.find(id);
    if (it == strata_.end()) throw Error("unknown stratum id: " + id.token);
    return it->second;
  }

  /** a <= b in the stored closure. Throws on unknown ids. */
  bool leq(const StratumId& a, const StratumId& b) const {
    require(a);
    require(b);
    return up_.at(a).count(b) != 0;
  }

  bool less(const StratumId& a, const StratumId& b) const { return a != b && leq(a, b); }

  /** Raw relation pairs as given to the constructor. */
  const std::set<std::pair<StratumId, StratumId>>& declared_relations() const { return declared_; }

  /** All pairs (a, b) with a <= b, including reflexive ones. */
  std::vector<std::pair<StratumId, StratumId>> closure_pairs() const {
    std::vector<std::pair<StratumId, StratumId>> out;
    for (const auto& [a, ups] : up_)
      for (const StratumId& b : ups) out.emplace_back(a, b);
    return out;
  }

  StrataSubset ids() const {
    StrataSubset out;
    for (const auto& [id, _] : strata_) out.insert(id);
    return out;
  }

  /** Equality compares labels and the order closure; declared pairs may differ. */
  friend bool operator==(const Skeleton& a, const Skeleton& b) {
    return a.strata_ == b.strata_ && a.up_ == b.up_;
  }
  friend bool operator!=(const Skeleton& a, const Skeleton& b) { return !(a == b); }

 private:
  void require(const StratumId& id) const {
    if (!strata_.count(id)) throw Error("unknown stratum id: " + id.token);
  }

  std::map<StratumId, StratumLabel> strata_;
  std::set<std::pair<StratumId, StratumId>> declared_;
  std::map<StratumId, std::set<StratumId>> up_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/**
 * Checks id token grammar and antisymmetry of the stored order closure.
 * Reflexivity and transitivity hold by construction.
 */
inline ValidationReport validate_skeleton(const Skeleton& s) {
  ValidationReport report;
  auto flag = [&](std::string v) {
    report.ok = false;
    report.violations.push_back(std::move(v));
  };
  for (const auto& [id, _] : s.strata())
    if (!valid_id_token(id.token)) flag("bad stratum id token: '" + id.token + "'");
  for (const auto& [a, la] : s.strata())
    for (const auto& [b, lb] : s.strata()) {
      if (!(a < b)) continue;
      if (s.leq(a, b) && s.leq(b, a))
        flag("antisymmetry(" + a.token + "," + b.token + ")");
    }
  return report;
}

/** Down-set {y : y <= x}, including x itself. */
inline StrataSubset closure_of(const Skeleton& s, const StratumId& x) {
  if (!s.has(x)) throw Error("unknown stratum id: " + x.token);
  StrataSubset out;
  for (const auto& [y, _] : s.strata())
    if (s.leq(y, x)) out.insert(y);
  return out;
}

/** Union of closures over a subset. */
inline StrataSubset closure_of(const Skeleton& s, const StrataSubset& xs) {
  StrataSubset out;
  for (const StratumId& x : xs) {
    StrataSubset one = closure_of(s, x);
    out.insert(one.begin(), one.end());
  }
  return out;
}

/** Up-set {y : x <= y}: the strata to which x adheres, including x. */
inline StrataSubset incidence_neighborhood(const Skeleton& s, const StratumId& x) {
  if (!s.has(x)) throw Error("unknown stratum id: " + x.token);
  StrataSubset out;
  for (const auto& [y, _] : s.strata())
    if (s.leq(x, y)) out.insert(y);
  return out;
}

inline StrataSubset minimal_strata(const Skeleton& s) {
  StrataSubset out;
  for (const auto& [x, _] : s.strata()) {
    bool minimal = true;
    for (const auto& [y, __] : s.strata())
      if (y != x && s.leq(y, x)) {
        minimal = false;
        break;
      }
    if (minimal) out.insert(x);
  }
  return out;
}

inline StrataSubset maximal_strata(const Skeleton& s) {
  StrataSubset out;
  for (const auto& [x, _] : s.strata()) {
    bool maximal = true;
    for (const auto& [y, __] : s.strata())
      if (y != x && s.leq(x, y)) {
        maximal = false;
        break;
      }
    if (maximal) out.insert(x);
  }
  return out;
}

/** Singular part: strata that adhere to some other stratum (non-maximal). */
inline StrataSubset singular_part(const Skeleton& s) {
  StrataSubset max = maximal_strata(s);
  StrataSubset out;
  for (const auto& [x, _] : s.strata())
    if (!max.count(x)) out.insert(x);
  return out;
}

/** Regular part: the maximal (open) strata. */
inline StrataSubset regular_part(const Skeleton& s) { return maximal_strata(s); }

namespace detail {

// Longest strict chain upward from x, measured in steps. Cycles throw.
inline int chain_height(const Skeleton& s, const StratumId& x,
                        std::map<StratumId, int>& memo,
                        std::set<StratumId>& visiting) {
  auto it = memo.find(x);
  if (it != memo.end()) return it->second;
  if (!visiting.insert(x).second) throw Error("order contains a cycle at: " + x.token);
  int best = 0;
  for (const auto& [y, _] : s.strata())
    if (s.less(x, y)) best = std::max(best, 1 + chain_height(s, y, memo, visiting));
  visiting.erase(x);
  memo[x] = best;
  return best;
}

}  // namespace detail

/** Longest l with a strict chain x = S0 < ... < Sl. */
inline int length_of(const Skeleton& s, const StratumId& x) {
  if (!s.has(x)) throw Error("unknown stratum id: " + x.token);
  std::map<StratumId, int> memo;
  std::set<StratumId> visiting;
  return detail::chain_height(s, x, memo, visiting);
}

/** Length of the skeleton: the longest strict chain. Empty skeleton: -1. */
inline int length(const Skeleton& s) {
  if (s.empty()) return -1;
  std::map<StratumId, int> memo;
  std::set<StratumId> visiting;
  int best = 0;
  for (const auto& [x, _] : s.strata())
    best = std::max(best, detail::chain_height(s, x, memo, visiting));
  return best;
}

/** Sub-skeleton on the given strata with the induced order. */
inline Skeleton restrict(const Skeleton& s, const StrataSubset& keep) {
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const StratumId& x : keep) strata.emplace_back(x, s.label(x));  // throws on unknown
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const StratumId& a : keep)
    for (const StratumId& b : keep)
      if (s.leq(a, b)) rels.emplace_back(a, b);
  return Skeleton(strata, rels);
}

namespace detail {

inline StratumId fresh_id(const std::string& base, const std::set<StratumId>& taken) {
  if (!taken.count(StratumId(base))) return StratumId(base);
  for (int i = 2;; ++i) {
    StratumId candidate(base + "_" + std::to_string(i));
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace detail

struct DisjointUnion {
  Skeleton skeleton;
  // Old id -> id in the union, per side.
  std::map<StratumId, StratumId> left;
  std::map<StratumId, StratumId> right;
};

/** Tagged union: order relates nothing across the two sides. */
inline DisjointUnion disjoint_union(const Skeleton& a, const Skeleton& b) {
  DisjointUnion out;
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  std::set<StratumId> taken;
  for (const auto& [id, label] : a.strata()) {
    out.left[id] = id;
    taken.insert(id);
    strata.emplace_back(id, label);
  }
  for (const auto& [id, label] : b.strata()) {
    StratumId fresh = detail::fresh_id(id.token, taken);
    out.right[id] = fresh;
    taken.insert(fresh);
    strata.emplace_back(fresh, label);
  }
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [x, y] : a.closure_pairs()) rels.emplace_back(out.left.at(x), out.left.at(y));
  for (const auto& [x, y] : b.closure_pairs()) rels.emplace_back(out.right.at(x), out.right.at(y));
  out.skeleton = Skeleton(strata, rels);
  return out;
}

/**
 * Product: strata are pairs with summed dims and conjoined flags, ordered
 * componentwise. Requires finite dims on both sides.
 */
inline Skeleton product(const Skeleton& a, const Skeleton& b) {
  for (const auto& [id, label] : a.strata())
    if (label.dim.is_infinite()) throw Error("product requires finite dims: " + id.token);
  for (const auto& [id, label] : b.strata())
    if (label.dim.is_infinite()) throw Error("product requires finite dims: " + id.token);
  std::map<std::pair<StratumId, StratumId>, StratumId> name;
  std::set<StratumId> taken;
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const auto& [x, lx] : a.strata())
    for (const auto& [y, ly] : b.strata()) {
      StratumId id = detail::fresh_id(x.token + "_" + y.token, taken);
      taken.insert(id);
      name[{x, y}] = id;
      StratumLabel label;
      label.dim = lx.dim + ly.dim;
      label.compact = lx.compact && ly.compact;
      label.connected = lx.connected && ly.connected;
      strata.emplace_back(id, label);
    }
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [x1, l1] : a.strata())
    for (const auto& [y1, m1] : b.strata())
      for (const auto& [x2, l2] : a.strata())
        for (const auto& [y2, m2] : b.strata())
          if (a.leq(x1, x2) && b.leq(y1, y2))
            rels.emplace_back(name.at({x1, y1}), name.at({x2, y2}));
  return Skeleton(strata, rels);
}

/**
 * Open cone over an all-compact skeleton: a fresh vertex below everything and
 * one stratum per input stratum with dim+1, no longer compact. cone of the
 * empty skeleton is the single (compact) point.
 */
inline Skeleton cone(const Skeleton& l) {
  for (const auto& [id, label] : l.strata())
    if (!label.compact) throw Error("cone requires compact strata: " + id.token);
  if (l.empty()) {
    return Skeleton({{StratumId("v"), make_label(0, true, true)}}, {});
  }
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  StratumId vertex = detail::fresh_id("v", l.ids());
  strata.emplace_back(vertex, make_label(0, false, true));
  for (const auto& [id, label] : l.strata()) {
    StratumLabel up = label;
    up.dim = label.dim + Dim::finite(1);
    up.compact = false;
    strata.emplace_back(id, up);
  }
  std::vector<std::pair<StratumId, StratumId>> rels;
  for (const auto& [id, _] : l.strata()) rels.emplace_back(vertex, id);
  for (const auto& [x, y] : l.closure_pairs()) rels.emplace_back(x, y);
  return Skeleton(strata, rels);
}

}  // namespace strata

#endif  // STRATA_SKELETON_HPP
