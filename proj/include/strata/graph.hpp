#ifndef STRATA_GRAPH_HPP
#define STRATA_GRAPH_HPP

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "strata/skeleton.hpp"

namespace strata {

/**
 * Directed incidence graph. An edge (b, a) means a is covered by b: a < b
 * with nothing strictly between, so arrows point toward minimal strata.
 */
struct StratGraph {
  std::set<StratumId> vertices;
  std::set<std::pair<StratumId, StratumId>> edges;

  friend bool operator==(const StratGraph&, const StratGraph&) = default;
};

/** Cover pairs (a, b) with a covered by b, in lexicographic order. */
inline std::vector<std::pair<StratumId, StratumId>> cover_pairs(const Skeleton& s) {
  std::vector<std::pair<StratumId, StratumId>> out;
  for (const auto& [a, _] : s.strata())
    for (const auto& [b, __] : s.strata()) {
      if (!s.less(a, b)) continue;
      bool covered = true;
      for (const auto& [c, ___] : s.strata())
        if (s.less(a, c) && s.less(c, b)) {
          covered = false;
          break;
        }
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

inline StratGraph hasse_graph(const Skeleton& s) {
  StratGraph g;
  g.vertices = s.ids();
  for (const auto& [a, b] : cover_pairs(s)) g.edges.emplace(b, a);
  return g;
}

namespace detail {

inline std::map<StratumId, std::set<StratumId>> undirected_adjacency(const StratGraph& g) {
  std::map<StratumId, std::set<StratumId>> adj;
  for (const StratumId& v : g.vertices) adj[v];
  for (const auto& [a, b] : g.edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  return adj;
}

inline std::vector<std::set<StratumId>> weak_components(const StratGraph& g) {
  auto adj = undirected_adjacency(g);
  std::set<StratumId> seen;
  std::vector<std::set<StratumId>> components;
  for (const StratumId& start : g.vertices) {
    if (seen.count(start)) continue;
    std::set<StratumId> comp;
    std::vector<StratumId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      StratumId cur = stack.back();
      stack.pop_back();
      comp.insert(cur);
      for (const StratumId& nxt : adj.at(cur))
        if (seen.insert(nxt).second) stack.push_back(nxt);
    }
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace detail

/** Weak connectivity of the incidence graph. Empty skeletons are not irreducible. */
inline bool is_irreducible(const Skeleton& s) {
  if (s.empty()) return false;
  return detail::weak_components(hasse_graph(s)).size() == 1;
}

/** Sub-skeletons induced on the weak components, ordered by smallest member id. */
inline std::vector<Skeleton> irreducible_components(const Skeleton& s) {
  std::vector<Skeleton> out;
  for (const auto& comp : detail::weak_components(hasse_graph(s)))
    out.push_back(restrict(s, StrataSubset(comp.begin(), comp.end())));
  return out;
}

/** Basic = irreducible (finiteness is structural here). */
inline bool is_basic(const Skeleton& s) { return is_irreducible(s); }

/** Longest directed path, counted in edges. Empty graph: -1. Cycles throw. */
inline int longest_path(const StratGraph& g) {
  if (g.vertices.empty()) return -1;
  std::map<StratumId, std::set<StratumId>> succ;
  for (const auto& [a, b] : g.edges) succ[a].insert(b);
  std::map<StratumId, int> memo;
  std::set<StratumId> visiting;
  // Non-recursive would be overkill at this scale; depth <= vertex count.
  struct Dfs {
    const std::map<StratumId, std::set<StratumId>>& succ;
    std::map<StratumId, int>& memo;
    std::set<StratumId>& visiting;
    int run(const StratumId& v) {
      auto it = memo.find(v);
      if (it != memo.end()) return it->second;
      if (!visiting.insert(v).second) throw Error("cyclic input to longest_path at: " + v.token);
      int best = 0;
      auto s = succ.find(v);
      if (s != succ.end())
        for (const StratumId& w : s->second) best = std::max(best, 1 + run(w));
      visiting.erase(v);
      memo[v] = best;
      return best;
    }
  } dfs{succ, memo, visiting};
  int best = 0;
  for (const StratumId& v : g.vertices) best = std::max(best, dfs.run(v));
  return best;
}

/**
 * Closed (down-closed) subsets: every stratum adhering to a member is a member.
 * Throws if z mentions unknown strata.
 */
inline bool is_closed_subset(const Skeleton& s, const StrataSubset& z) {
  for (const StratumId& x : z)
    if (!s.has(x)) throw Error("unknown stratum id: " + x.token);
  for (const StratumId& x : z)
    for (const auto& [y, _] : s.strata())
      if (s.leq(y, x) && !z.count(y)) return false;
  return true;
}

/** Induced subgraph of the incidence graph on the given vertices. */
inline StratGraph induced_subgraph(const StratGraph& g, const StrataSubset& keep) {
  StratGraph out;
  for (const StratumId& v : keep)
    if (g.vertices.count(v)) out.vertices.insert(v);
  for (const auto& [a, b] : g.edges)
    if (keep.count(a) && keep.count(b)) out.edges.emplace(a, b);
  return out;
}

inline StratGraph graph_of_closure(const Skeleton& s, const StratumId& x) {
  return induced_subgraph(hasse_graph(s), closure_of(s, x));
}

inline StratGraph graph_of_neighborhood(const Skeleton& s, const StratumId& x) {
  return induced_subgraph(hasse_graph(s), incidence_neighborhood(s, x));
}

inline bool is_tree(const StratGraph& g) {
  if (g.vertices.empty()) return false;
  return detail::weak_components(g).size() == 1 &&
         g.edges.size() == g.vertices.size() - 1;
}

/** Deterministic DOT rendering: vertices then edges, each sorted. */
inline std::string to_dot(const StratGraph& g, const std::string& name = "strata") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (const StratumId& v : g.vertices) out << "  \"" << v.token << "\";\n";
  for (const auto& [a, b] : g.edges)
    out << "  \"" << a.token << "\" -> \"" << b.token << "\";\n";
  out << "}\n";
  return out.str();
}

/**
 * Digraph isomorphism by backtracking over degree-compatible assignments.
 * Used to compare incidence graphs across tower stages; label-blind.
 */
inline bool graphs_isomorphic(const StratGraph& a, const StratGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<StratumId> av(a.vertices.begin(), a.vertices.end());
  std::vector<StratumId> bv(b.vertices.begin(), b.vertices.end());
  auto degrees = [](const StratGraph& g, const StratumId& v) {
    int in = 0, out = 0;
    for (const auto& [x, y] : g.edges) {
      if (x == v) ++out;
      if (y == v) ++in;
    }
    return std::pair<int, int>(in, out);
  };
  std::map<StratumId, std::pair<int, int>> adeg, bdeg;
  for (const auto& v : av) adeg[v] = degrees(a, v);
  for (const auto& v : bv) bdeg[v] = degrees(b, v);
  std::map<StratumId, StratumId> assign;
  std::set<StratumId> used;
  auto edge_ok = [&](const StratumId& x, const StratumId& y) {
    bool ea = a.edges.count({x, y}) != 0;
    bool eb = b.edges.count({assign.at(x), assign.at(y)}) != 0;
    return ea == eb;
  };
  struct Rec {
    const std::vector<StratumId>& av;
    const std::vector<StratumId>& bv;
    std::map<StratumId, std::pair<int, int>>& adeg;
    std::map<StratumId, std::pair<int, int>>& bdeg;
    std::map<StratumId, StratumId>& assign;
    std::set<StratumId>& used;
    const std::function<bool(const StratumId&, const StratumId&)>& edge_ok;
    bool run(std::size_t i) {
      if (i == av.size()) return true;
      const StratumId& x = av[i];
      for (const StratumId& y : bv) {
        if (used.count(y) || adeg.at(x) != bdeg.at(y)) continue;
        assign[x] = y;
        used.insert(y);
        bool consistent = true;
        for (std::size_t j = 0; j <= i && consistent; ++j)
          consistent = edge_ok(av[j], x) && edge_ok(x, av[j]);
        if (consistent && run(i + 1)) return true;
        used.erase(y);
        assign.erase(x);
      }
      return false;
    }
  };
  std::function<bool(const StratumId&, const StratumId&)> ok = edge_ok;
  Rec rec{av, bv, adeg, bdeg, assign, used, ok};
  return rec.run(0);
}

}  // namespace strata

#endif  // STRATA_GRAPH_HPP
