#ifndef STRATA_JSON_IO_HPP
#define STRATA_JSON_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strata/amalgamation.hpp"
#include "strata/decomposition.hpp"
#include "strata/graph.hpp"
#include "strata/limits.hpp"
#include "strata/morphism.hpp"
#include "strata/pseudomanifold.hpp"
#include "strata/skeleton.hpp"

namespace strata {

// ordered_json keeps insertion order, so every serializer below emits a
// byte-stable layout given equal inputs.
using Json = nlohmann::ordered_json;

inline Json dim_to_json(Dim d) {
  if (d.is_infinite()) return Json("inf");
  return Json(d.value());
}

inline Dim dim_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Dim::infinite();
    throw Error("unknown dimension marker: " + j.get<std::string>());
  }
  if (!j.is_number_integer()) throw Error("dimension must be an integer or \"inf\"");
  return Dim::finite(j.get<int>());
}

inline Json skeleton_to_json(const Skeleton& s) {
  Json strata = Json::array();
  for (const auto& [id, label] : s.strata()) {
    Json entry{{"id", id.token},
               {"dim", dim_to_json(label.dim)},
               {"compact", label.compact},
               {"connected", label.connected}};
    if (label.display_name) entry["display"] = *label.display_name;
    strata.push_back(std::move(entry));
  }
  Json order = Json::array();
  for (const auto& [a, b] : cover_pairs(s)) order.push_back(Json::array({a.token, b.token}));
  return Json{{"strata", std::move(strata)}, {"order", std::move(order)}};
}

inline Skeleton skeleton_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("strata")) throw Error("skeleton JSON needs a strata array");
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const Json& entry : j.at("strata")) {
    StratumLabel label;
    label.dim = dim_from_json(entry.at("dim"));
    label.compact = entry.value("compact", false);
    label.connected = entry.value("connected", false);
    if (entry.contains("display")) label.display_name = entry.at("display").get<std::string>();
    strata.emplace_back(StratumId(entry.at("id").get<std::string>()), label);
  }
  std::vector<std::pair<StratumId, StratumId>> relations;
  for (const Json& pair : j.value("order", Json::array()))
    relations.emplace_back(StratumId(pair.at(0).get<std::string>()),
                           StratumId(pair.at(1).get<std::string>()));
  return Skeleton(strata, relations);
}

inline Json graph_to_json(const StratGraph& g) {
  Json vertices = Json::array();
  for (const StratumId& v : g.vertices) vertices.push_back(v.token);
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a.token, b.token}));
  return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

inline Json validation_to_json(const ValidationReport& r) {
  return Json{{"ok", r.ok}, {"violations", r.violations}};
}

inline Json morphism_to_json(const StrataMorphism& m) {
  Json entries = Json::array();
  for (const auto& [s, e] : m.entries())
    entries.push_back(Json{{"from", s.token}, {"to", e.target.token}, {"onto", e.onto}});
  return Json{{"source", skeleton_to_json(m.source())},
              {"target", skeleton_to_json(m.target())},
              {"map", std::move(entries)},
              {"declare",
               Json{{"proper", m.declarations().proper},
                    {"injective", m.declarations().injective_on_points},
                    {"immersion", m.declarations().immersion}}}};
}

inline StrataMorphism morphism_from_json(const Json& j) {
  Skeleton source = skeleton_from_json(j.at("source"));
  Skeleton target = skeleton_from_json(j.at("target"));
  std::map<StratumId, MorphismEntry> entries;
  for (const Json& e : j.at("map"))
    entries[StratumId(e.at("from").get<std::string>())] =
        MorphismEntry{StratumId(e.at("to").get<std::string>()), e.value("onto", false)};
  Declarations decl;
  if (j.contains("declare")) {
    const Json& d = j.at("declare");
    decl.proper = d.value("proper", false);
    decl.injective_on_points = d.value("injective", false);
    decl.immersion = d.value("immersion", false);
  }
  return StrataMorphism(std::move(source), std::move(target), std::move(entries), decl);
}

inline Json classification_to_json(const Classification& c) {
  return Json{{"class", to_string(c.cls)}, {"witness", c.witness}};
}

inline Json plan_to_json(const AmalgamationPlan& plan) {
  Json pieces = Json::array();
  for (const Skeleton& p : plan.pieces) pieces.push_back(skeleton_to_json(p));
  Json steps = Json::array();
  for (const PlanStep& s : plan.steps)
    steps.push_back(Json{{"glue", skeleton_to_json(s.glue)},
                         {"disjoint", s.disjoint},
                         {"left", morphism_to_json(s.left)},
                         {"right", morphism_to_json(s.right)},
                         {"accumulated", skeleton_to_json(s.accumulated)}});
  return Json{{"pieces", std::move(pieces)}, {"steps", std::move(steps)}};
}

inline AmalgamationPlan plan_from_json(const Json& j) {
  AmalgamationPlan plan;
  for (const Json& p : j.at("pieces")) plan.pieces.push_back(skeleton_from_json(p));
  for (const Json& s : j.value("steps", Json::array()))
    plan.steps.push_back(PlanStep{skeleton_from_json(s.at("glue")), s.value("disjoint", false),
                                  morphism_from_json(s.at("left")),
                                  morphism_from_json(s.at("right")),
                                  skeleton_from_json(s.at("accumulated"))});
  return plan;
}

inline Json pseudo_to_json(const PseudoSkeleton& p) {
  Json links = Json::object();
  for (const auto& [id, link] : p.links) links[id.token] = pseudo_to_json(*link);
  return Json{{"base", skeleton_to_json(p.base)}, {"links", std::move(links)}};
}

inline PseudoSkeleton pseudo_from_json(const Json& j) {
  PseudoSkeleton p{skeleton_from_json(j.at("base")), {}};
  if (j.contains("links"))  // items() must run on a reference, not a temporary
    for (const auto& [key, value] : j.at("links").items())
      p.links[StratumId(key)] = make_pseudo(pseudo_from_json(value));
  return p;
}

inline Json tower_to_json(const Tower& t) {
  Json stages = Json::array();
  for (const Skeleton& s : t.stages) stages.push_back(skeleton_to_json(s));
  Json maps = Json::array();
  for (const StrataMorphism& m : t.maps) maps.push_back(morphism_to_json(m));
  return Json{{"stages", std::move(stages)},
              {"maps", std::move(maps)},
              {"regular_image", t.regular_image}};
}

inline Tower tower_from_json(const Json& j) {
  Tower t;
  for (const Json& s : j.at("stages")) t.stages.push_back(skeleton_from_json(s));
  for (const Json& m : j.value("maps", Json::array())) t.maps.push_back(morphism_from_json(m));
  if (j.contains("regular_image"))
    t.regular_image = j.at("regular_image").get<std::vector<bool>>();
  return t;
}

inline Json universal_to_json(const UniversalCheck& u) {
  const char* status = u.status == UniversalCheck::Status::kVerified     ? "verified"
                       : u.status == UniversalCheck::Status::kFailed     ? "failed"
                                                                         : "indeterminate";
  return Json{{"status", status}, {"witness", u.witness}};
}

inline Json join_check_to_json(const JoinCheckResult& r) {
  const char* status = r.status == JoinCheckResult::Status::kTrue    ? "true"
                       : r.status == JoinCheckResult::Status::kFalse ? "false"
                                                                     : "not_applicable";
  return Json{{"status", status}, {"detail", r.detail}};
}

inline Json fraisse_to_json(const FraisseReport& report) {
  Json axioms = Json::array();
  bool ok = true;
  for (const AxiomReport& a : report) {
    Json failures = Json::array();
    for (const FraisseFailure& f : a.failures)
      failures.push_back(Json{{"seed", f.seed}, {"witness", f.witness}});
    ok = ok && a.failures.empty();
    axioms.push_back(Json{{"axiom", a.axiom},
                          {"iterations", a.iterations},
                          {"failures", std::move(failures)}});
  }
  return Json{{"ok", ok}, {"axioms", std::move(axioms)}};
}

inline Json limit_to_json(const LimitClassification& c) {
  Json out{{"verdict", to_string(c.verdict)},
           {"stabilization_index", c.stabilization_index},
           {"lengths", c.lengths},
           {"max_dims", c.max_dims},
           {"evidence", c.evidence}};
  if (c.stable_graph) out["stable_graph"] = graph_to_json(*c.stable_graph);
  return out;
}

}  // namespace strata

#endif  // STRATA_JSON_IO_HPP
