// Command-line surface for the stratified-space library: validation, graph
// export, morphism classification, amalgamation, decomposition/replay,
// pseudomanifold checks, limit towers, and the random-cospan axiom sweep.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict (violations,
// refused gluings, classification below the requested class, failed axiom
// sweeps), 2 input errors (unparsable files, unknown names, bad flags).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "strata/strata.hpp"

namespace {

using namespace strata;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

/** Problems with the invocation or its inputs, as opposed to negative verdicts. */
class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Document load_document(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

/** Name lookups are input problems, not verdicts. */
template <typename F>
auto named(F&& lookup) -> decltype(lookup()) {
  try {
    return lookup();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

/** Space to operate on: the named one, or the only one in the file. */
const SpaceDecl& pick_space(const Document& doc, const std::string& requested) {
  if (!requested.empty()) return named([&]() -> const SpaceDecl& { return find_space(doc, requested); });
  if (doc.spaces.size() == 1) return doc.spaces.front();
  throw InputError(doc.spaces.empty() ? "document declares no spaces"
                                      : "document declares several spaces; use --space");
}

/**
 * The cospan to amalgamate: either the two named morphisms, or the unique
 * pair declared over a common source space.
 */
std::pair<std::string, std::string> pick_cospan(const Document& doc, const std::string& left,
                                                const std::string& right) {
  if (!left.empty() && !right.empty()) return {left, right};
  if (!left.empty() || !right.empty())
    throw InputError("give both --left and --right, or neither");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < doc.morphisms.size(); ++i)
    for (std::size_t j = i + 1; j < doc.morphisms.size(); ++j)
      if (doc.morphisms[i].source == doc.morphisms[j].source)
        pairs.emplace_back(doc.morphisms[i].name, doc.morphisms[j].name);
  if (pairs.size() == 1) return pairs.front();
  throw InputError(pairs.empty() ? "no two morphisms share a source space"
                                 : "several morphism pairs share a source; use --left/--right");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Pseudomanifold morphisms from the document: the text format declares only
// carriers, so link maps are inferred by the id convention — a link stratum
// maps to the target-link stratum with the same id, onto exactly when the
// dims agree, with all three analytic declarations assumed. Modeling a map
// outside this convention requires the library API.

PseudoMorphism infer_pseudo_morphism(const PseudoPtr& source, const PseudoPtr& target,
                                     const StrataMorphism& carrier);

PseudoMorphism infer_link_map(const PseudoPtr& src_link, const PseudoPtr& tgt_link,
                              const StratumId& at) {
  std::map<StratumId, MorphismEntry> entries;
  for (const auto& [id, label] : src_link->base.strata()) {
    if (!tgt_link->base.has(id))
      throw Error("cannot infer link map at " + at.token + ": target link has no stratum " +
                  id.token);
    entries[id] = MorphismEntry{id, label.dim == tgt_link->base.label(id).dim};
  }
  StrataMorphism carrier(src_link->base, tgt_link->base, std::move(entries),
                         Declarations{true, true, true});
  return infer_pseudo_morphism(src_link, tgt_link, carrier);
}

PseudoMorphism infer_pseudo_morphism(const PseudoPtr& source, const PseudoPtr& target,
                                     const StrataMorphism& carrier) {
  PseudoMorphism out{source, target, carrier, {}};
  for (const auto& [id, link] : source->links) {
    StratumId image = carrier.apply(id);
    auto tgt_link = target->links.find(image);
    if (tgt_link == target->links.end())
      throw Error("cannot infer link map at " + id.token + ": target has no link at " +
                  image.token);
    out.link_maps[id] =
        std::make_shared<const PseudoMorphism>(infer_link_map(link, tgt_link->second, id));
  }
  return out;
}

PseudoMorphism build_pseudo_morphism(const Document& doc, const std::string& name) {
  const MorphismDecl& decl = find_morphism(doc, name);
  PseudoPtr source = make_pseudo(build_pseudo(doc, decl.source));
  PseudoPtr target = make_pseudo(build_pseudo(doc, decl.target));
  StrataMorphism carrier = build_morphism(doc, name);
  return infer_pseudo_morphism(source, target, carrier);
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

int run_validate(const std::string& file, const std::string& space) {
  Document doc = load_document(file);
  std::vector<std::string> names;
  if (!space.empty())
    names.push_back(find_space(doc, space).name);
  else
    for (const SpaceDecl& s : doc.spaces) names.push_back(s.name);
  bool ok = true;
  Json spaces = Json::object();
  for (const std::string& name : names) {
    ValidationReport report = validate_skeleton(build_skeleton(doc, name));
    for (const SelfLoop& loop : doc.self_loops)
      if (loop.space == name) {
        report.ok = false;
        report.violations.push_back(std::to_string(loop.pos.line) + ":" +
                                    std::to_string(loop.pos.col) + ": antisymmetry(" +
                                    loop.stratum + "," + loop.stratum + ")");
      }
    ok = ok && report.ok;
    for (const std::string& v : report.violations)
      std::cerr << file << ": space " << name << ": " << v << "\n";
    spaces[name] = validation_to_json(report);
  }
  emit(Json{{"ok", ok}, {"spaces", std::move(spaces)}});
  return ok ? kOk : kNegative;
}

int run_graph(const std::string& file, const std::string& space, bool dot) {
  Document doc = load_document(file);
  StratGraph g = hasse_graph(build_skeleton(doc, pick_space(doc, space).name));
  if (dot)
    std::cout << to_dot(g, pick_space(doc, space).name);
  else
    emit(graph_to_json(g));
  return kOk;
}

int run_classify(const std::string& file, const std::string& name, const std::string& at_least) {
  Document doc = load_document(file);
  named([&]() -> const MorphismDecl& { return find_morphism(doc, name); });
  MorphClass want = MorphClass::kMorphism;
  if (!at_least.empty()) {
    if (at_least == "MORPHISM")
      want = MorphClass::kMorphism;
    else if (at_least == "IMMERSION")
      want = MorphClass::kImmersion;
    else if (at_least == "EMBEDDING")
      want = MorphClass::kEmbedding;
    else if (at_least == "STRONG_EMBEDDING")
      want = MorphClass::kStrongEmbedding;
    else if (at_least == "ISOMORPHISM")
      want = MorphClass::kIsomorphism;
    else
      throw InputError("unknown class: " + at_least);
  }
  StrataMorphism m = build_morphism(doc, name);  // totality failures are verdicts
  Classification c = classify(m);
  emit(classification_to_json(c));
  if (!at_least.empty()) return c.cls >= want ? kOk : kNegative;
  return c.cls > MorphClass::kNotMorphism ? kOk : kNegative;
}

int run_amalgamate(const std::string& file, const std::string& left, const std::string& right) {
  Document doc = load_document(file);
  auto [lname, rname] = pick_cospan(doc, left, right);
  PushoutResult p = pushout(build_morphism(doc, lname), build_morphism(doc, rname));
  Json from_left = Json::object(), from_right = Json::object();
  for (const auto& [a, b] : p.from_left) from_left[a.token] = b.token;
  for (const auto& [a, b] : p.from_right) from_right[a.token] = b.token;
  emit(Json{{"amalgam", skeleton_to_json(p.amalgam)},
            {"from_left", std::move(from_left)},
            {"from_right", std::move(from_right)}});
  return kOk;
}

int run_bouquet(const std::string& file, const std::string& space, const std::string& base,
                int copies) {
  Document doc = load_document(file);
  Skeleton x = build_skeleton(doc, pick_space(doc, space).name);
  emit(skeleton_to_json(bouquet(x, StratumId(base), copies)));
  return kOk;
}

int run_decompose(const std::string& file, const std::string& space, const std::string& plan_out) {
  Document doc = load_document(file);
  AmalgamationPlan plan = decompose(build_skeleton(doc, pick_space(doc, space).name));
  Json j = plan_to_json(plan);
  if (!plan_out.empty()) {
    std::ofstream out(plan_out, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + plan_out);
    out << j.dump(2) << "\n";
  }
  emit(j);
  return kOk;
}

int run_replay(const std::string& plan_file) {
  Json j;
  try {
    j = Json::parse(read_file(plan_file));
  } catch (const Json::parse_error& e) {
    throw InputError(plan_file + ": " + e.what());
  }
  emit(skeleton_to_json(replay(plan_from_json(j))));
  return kOk;
}

int run_pseudo_validate(const std::string& file, const std::string& space) {
  Document doc = load_document(file);
  std::vector<std::string> names;
  if (!space.empty())
    names.push_back(pick_space(doc, space).name);
  else
    for (const SpaceDecl& s : doc.spaces) names.push_back(s.name);
  bool ok = true;
  Json spaces = Json::object();
  for (const std::string& name : names) {
    ValidationReport report = validate_pseudo(build_pseudo(doc, name));
    ok = ok && report.ok;
    for (const std::string& v : report.violations)
      std::cerr << file << ": space " << name << ": " << v << "\n";
    spaces[name] = validation_to_json(report);
  }
  if (names.size() == 1 && !space.empty())
    emit(spaces[names.front()]);
  else
    emit(Json{{"ok", ok}, {"spaces", std::move(spaces)}});
  return ok ? kOk : kNegative;
}

int run_pseudo_amalgamate(const std::string& file, const std::string& left,
                          const std::string& right) {
  Document doc = load_document(file);
  auto [lname, rname] = pick_cospan(doc, left, right);
  PseudoMorphism f = build_pseudo_morphism(doc, lname);
  PseudoMorphism h = build_pseudo_morphism(doc, rname);
  try {
    emit(pseudo_to_json(amalgamate_pseudo(f, h)));
  } catch (const NonClosedGluing& e) {
    std::cerr << "NonClosedGluing: " << e.what() << "\n";
    return kNegative;
  }
  return kOk;
}

int run_limit(const std::string& file, const std::string& tower, int steps, bool extrapolate,
              const std::string& space) {
  Tower t;
  if (tower == "sphere") {
    t = sphere_tower(steps);
  } else if (tower == "cone") {
    Skeleton seed({{StratumId("M"), make_label(0, true, true)}}, {});
    if (!file.empty()) {
      Document doc = load_document(file);
      seed = build_skeleton(doc, pick_space(doc, space).name);
    }
    t = cone_tower(seed, steps);
  } else {
    if (file.empty()) throw InputError("a named tower needs a document file");
    Document doc = load_document(file);
    t = named([&] { return build_tower(doc, tower); });
  }
  ValidationReport report = validate_tower(t);
  if (!report.ok) {
    for (const std::string& v : report.violations) std::cerr << v << "\n";
    emit(validation_to_json(report));
    return kNegative;
  }
  LimitClassification c = classify_limit(t, extrapolate);
  emit(Json{{"classification", limit_to_json(c)},
            {"colimit", skeleton_to_json(colimit(t, extrapolate))}});
  return kOk;
}

int run_fraisse(std::uint64_t seed, int iters, int max_strata) {
  GeneratorConfig config;
  config.max_strata = max_strata;
  FraisseReport report = fraisse_check(seed, iters, config);
  emit(fraisse_to_json(report));
  for (const AxiomReport& a : report)
    if (!a.failures.empty()) return kNegative;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratified spaces as labeled incidence posets: validation, "
               "amalgamation, decomposition, limits."};
  app.require_subcommand(1);

  std::string file, space, morphism_name, at_least, left, right, base, plan_out, tower_name;
  bool dot = false, json_graph = false, extrapolate = false;
  int copies = 2, steps = 0, iters = 100, max_strata = 12;
  std::uint64_t seed = 0;

  CLI::App* validate = app.add_subcommand("validate", "Check the poset axioms of spaces");
  validate->add_option("file", file)->required();
  validate->add_option("--space", space, "Restrict to one space");

  CLI::App* graph = app.add_subcommand("graph", "Print the incidence graph of a space");
  graph->add_option("file", file)->required();
  graph->add_option("--space", space);
  graph->add_flag("--dot", dot, "DOT output");
  graph->add_flag("--json", json_graph, "JSON output (default)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a declared morphism");
  classify_cmd->add_option("file", file)->required();
  classify_cmd->add_option("--morphism", morphism_name)->required();
  classify_cmd->add_option("--at-least", at_least,
                           "Require MORPHISM|IMMERSION|EMBEDDING|STRONG_EMBEDDING|ISOMORPHISM");

  CLI::App* amalgamate = app.add_subcommand("amalgamate", "Glue two strong embeddings");
  amalgamate->add_option("file", file)->required();
  amalgamate->add_option("--left", left);
  amalgamate->add_option("--right", right);

  CLI::App* bouquet_cmd = app.add_subcommand("bouquet", "Glue copies of a space at a base point");
  bouquet_cmd->add_option("file", file)->required();
  bouquet_cmd->add_option("--space", space);
  bouquet_cmd->add_option("--base", base)->required();
  bouquet_cmd->add_option("--copies", copies)->required();

  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "Split a space into basic pieces with a gluing plan");
  decompose_cmd->add_option("file", file)->required();
  decompose_cmd->add_option("--space", space);
  decompose_cmd->add_option("--plan", plan_out, "Also write the plan to this file");

  CLI::App* replay_cmd = app.add_subcommand("replay", "Fold a gluing plan back together");
  replay_cmd->add_option("plan", plan_out)->required();

  CLI::App* pvalidate = app.add_subcommand("pseudo-validate", "Check recursive link conditions");
  pvalidate->add_option("file", file)->required();
  pvalidate->add_option("--space", space);

  CLI::App* pamalgamate =
      app.add_subcommand("pseudo-amalgamate", "Glue pseudomanifolds along a closed shared part");
  pamalgamate->add_option("file", file)->required();
  pamalgamate->add_option("--left", left);
  pamalgamate->add_option("--right", right);

  CLI::App* limit = app.add_subcommand("limit", "Classify the limit behavior of a tower");
  limit->add_option("file", file, "Document for named towers or cone seeds");
  limit->add_option("--tower", tower_name, "sphere, cone, or a tower declared in the file")
      ->required();
  limit->add_option("--steps", steps, "Stage count for generated towers");
  limit->add_flag("--extrapolate", extrapolate, "Declare the observed pattern to continue");
  limit->add_option("--space", space, "Seed space for cone towers");

  CLI::App* fraisse = app.add_subcommand("fraisse-check",
                                         "Random-cospan sweep of the amalgamation-class axioms");
  fraisse->add_option("--seed", seed)->required();
  fraisse->add_option("--iters", iters);
  fraisse->add_option("--max-strata", max_strata);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return run_validate(file, space);
    if (*graph) {
      if (dot && json_graph) throw InputError("choose one of --dot and --json");
      return run_graph(file, space, dot);
    }
    if (*classify_cmd) return run_classify(file, morphism_name, at_least);
    if (*amalgamate) return run_amalgamate(file, left, right);
    if (*bouquet_cmd) return run_bouquet(file, space, base, copies);
    if (*decompose_cmd) return run_decompose(file, space, plan_out);
    if (*replay_cmd) return run_replay(plan_out);
    if (*pvalidate) return run_pseudo_validate(file, space);
    if (*pamalgamate) return run_pseudo_amalgamate(file, left, right);
    if (*limit) return run_limit(file, tower_name, steps, extrapolate, space);
    if (*fraisse) return run_fraisse(seed, iters, max_strata);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kInputError;
}
