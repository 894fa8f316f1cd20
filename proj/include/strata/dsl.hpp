#ifndef STRATA_DSL_HPP
#define STRATA_DSL_HPP

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "strata/limits.hpp"
#include "strata/morphism.hpp"
#include "strata/pseudomanifold.hpp"
#include "strata/skeleton.hpp"

namespace strata {

/** Parse or resolution failure, carrying the 1-based source position. */
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

struct SourcePos {
  int line = 0, col = 0;
};

// ---------------------------------------------------------------------------
// Document model: the declarations as written, with positions kept for
// diagnostics. Spaces resolve to skeletons (plus links, making them
// pseudomanifolds) on demand.

struct StratumClause {
  std::string name;
  int dim = 0;
  bool compact = false, connected = false;
  SourcePos pos;
};

struct OrderClause {
  std::vector<std::string> names;  // chain a < b < ... (at least two)
  std::vector<SourcePos> positions;
};

struct LinkClause {
  std::string stratum, space;
  SourcePos pos;
};

struct SpaceDecl {
  std::string name;
  SourcePos pos;
  std::vector<StratumClause> strata;
  std::vector<OrderClause> orders;
  std::vector<LinkClause> links;
};

struct EntryClause {
  std::string from, to;
  bool onto = false;
  SourcePos pos;
};

struct MorphismDecl {
  std::string name, source, target;
  SourcePos pos;
  std::vector<EntryClause> entries;
  Declarations decls;
};

struct TowerDecl {
  std::string name;
  SourcePos pos;
  std::vector<std::string> stages, maps;
};

/** A declared relation `a < a`: legal to parse, flagged by validation. */
struct SelfLoop {
  std::string space, stratum;
  SourcePos pos;
};

struct Document {
  std::vector<SpaceDecl> spaces;
  std::vector<MorphismDecl> morphisms;
  std::vector<TowerDecl> towers;
  std::vector<SelfLoop> self_loops;
};

namespace detail {

enum class TokKind { kIdent, kInt, kLBrace, kRBrace, kColon, kArrow, kLess, kEquals, kEnd };

struct Token {
  TokKind kind = TokKind::kEnd;
  std::string text;
  SourcePos pos;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  auto is_alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(c);
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        bump(text[i]);
        ++i;
      }
      continue;
    }
    SourcePos pos{line, col};
    if (is_alpha(c)) {
      std::string word;
      while (i < text.size() && (is_alpha(text[i]) || is_digit(text[i]))) {
        word.push_back(text[i]);
        bump(text[i]);
        ++i;
      }
      out.push_back(Token{TokKind::kIdent, std::move(word), pos});
      continue;
    }
    if (is_digit(c)) {
      std::string digits;
      while (i < text.size() && is_digit(text[i])) {
        digits.push_back(text[i]);
        bump(text[i]);
        ++i;
      }
      out.push_back(Token{TokKind::kInt, std::move(digits), pos});
      continue;
    }
    if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        out.push_back(Token{TokKind::kArrow, "->", pos});
        bump('-');
        bump('>');
        i += 2;
        continue;
      }
      throw ParseError("unexpected character '-'", line, col);
    }
    TokKind kind;
    switch (c) {
      case '{': kind = TokKind::kLBrace; break;
      case '}': kind = TokKind::kRBrace; break;
      case ':': kind = TokKind::kColon; break;
      case '<': kind = TokKind::kLess; break;
      case '=': kind = TokKind::kEquals; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(Token{kind, std::string(1, c), pos});
    bump(c);
    ++i;
  }
  out.push_back(Token{TokKind::kEnd, "", SourcePos{line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Document run() {
    Document doc;
    while (!at(TokKind::kEnd)) {
      const Token& head = peek();
      if (head.kind != TokKind::kIdent)
        throw ParseError("expected a declaration, found '" + head.text + "'", head.pos.line,
                         head.pos.col);
      if (head.text == "space")
        doc.spaces.push_back(space(doc));
      else if (head.text == "morphism")
        doc.morphisms.push_back(morphism());
      else if (head.text == "tower")
        doc.towers.push_back(tower());
      else
        throw ParseError("unknown declaration '" + head.text + "'", head.pos.line, head.pos.col);
    }
    resolve(doc);
    return doc;
  }

 private:
  const Token& peek() const { return tokens_[at_]; }
  bool at(TokKind k) const { return peek().kind == k; }
  bool at_word(const char* w) const {
    return peek().kind == TokKind::kIdent && peek().text == w;
  }
  Token take() { return tokens_[at_++]; }

  Token expect(TokKind k, const char* what) {
    if (!at(k))
      throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'",
                       peek().pos.line, peek().pos.col);
    return take();
  }

  void expect_word(const char* w) {
    if (!at_word(w))
      throw ParseError(std::string("expected '") + w + "', found '" + peek().text + "'",
                       peek().pos.line, peek().pos.col);
    take();
  }

  Token name(const char* what) { return expect(TokKind::kIdent, what); }

  SpaceDecl space(Document& doc) {
    expect_word("space");
    SpaceDecl out;
    Token n = name("a space name");
    out.name = n.text;
    out.pos = n.pos;
    expect(TokKind::kLBrace, "'{'");
    std::set<std::string> declared;
    while (!at(TokKind::kRBrace)) {
      if (at_word("stratum")) {
        take();
        StratumClause s;
        Token sn = name("a stratum name");
        s.name = sn.text;
        s.pos = sn.pos;
        if (declared.count(s.name))
          throw ParseError("duplicate stratum '" + s.name + "'", sn.pos.line, sn.pos.col);
        declared.insert(s.name);
        expect_word("dim");
        Token dim_tok = expect(TokKind::kInt, "a dimension");
        try {
          s.dim = std::stoi(dim_tok.text);
        } catch (const std::exception&) {
          throw ParseError("dimension out of range '" + dim_tok.text + "'", dim_tok.pos.line,
                           dim_tok.pos.col);
        }
        if (at_word("compact")) {
          take();
          s.compact = true;
        }
        if (at_word("connected")) {
          take();
          s.connected = true;
        }
        out.strata.push_back(std::move(s));
      } else if (at_word("order")) {
        take();
        OrderClause chain;
        Token first = name("a stratum name");
        chain.names.push_back(first.text);
        chain.positions.push_back(first.pos);
        expect(TokKind::kLess, "'<'");
        while (true) {
          Token next = name("a stratum name");
          chain.names.push_back(next.text);
          chain.positions.push_back(next.pos);
          if (!at(TokKind::kLess)) break;
          take();
        }
        for (std::size_t i = 0; i + 1 < chain.names.size(); ++i)
          if (chain.names[i] == chain.names[i + 1])
            doc.self_loops.push_back(
                SelfLoop{out.name, chain.names[i], chain.positions[i + 1]});
        out.orders.push_back(std::move(chain));
      } else if (at_word("link")) {
        take();
        LinkClause link;
        Token sn = name("a stratum name");
        link.stratum = sn.text;
        link.pos = sn.pos;
        expect(TokKind::kEquals, "'='");
        link.space = name("a space name").text;
        out.links.push_back(std::move(link));
      } else {
        throw ParseError("expected 'stratum', 'order', 'link' or '}', found '" + peek().text + "'",
                         peek().pos.line, peek().pos.col);
      }
    }
    take();  // '}'
    for (const OrderClause& chain : out.orders)
      for (std::size_t i = 0; i < chain.names.size(); ++i)
        if (!declared.count(chain.names[i]))
          throw ParseError("order names unknown stratum '" + chain.names[i] + "'",
                           chain.positions[i].line, chain.positions[i].col);
    std::set<std::string> linked;
    for (const LinkClause& link : out.links) {
      if (!declared.count(link.stratum))
        throw ParseError("link names unknown stratum '" + link.stratum + "'", link.pos.line,
                         link.pos.col);
      if (!linked.insert(link.stratum).second)
        throw ParseError("duplicate link for stratum '" + link.stratum + "'", link.pos.line,
                         link.pos.col);
    }
    return out;
  }

  MorphismDecl morphism() {
    expect_word("morphism");
    MorphismDecl out;
    Token n = name("a morphism name");
    out.name = n.text;
    out.pos = n.pos;
    expect(TokKind::kColon, "':'");
    out.source = name("a space name").text;
    expect(TokKind::kArrow, "'->'");
    out.target = name("a space name").text;
    expect(TokKind::kLBrace, "'{'");
    std::set<std::string> mapped;
    while (!at(TokKind::kRBrace) && !at_word("declare")) {
      EntryClause e;
      Token from = name("a stratum name");
      e.from = from.text;
      e.pos = from.pos;
      if (mapped.count(e.from))
        throw ParseError("duplicate entry for '" + e.from + "'", from.pos.line, from.pos.col);
      mapped.insert(e.from);
      expect(TokKind::kArrow, "'->'");
      e.to = name("a stratum name").text;
      if (at_word("onto")) {
        take();
        e.onto = true;
      }
      out.entries.push_back(std::move(e));
    }
    while (at_word("declare")) {
      take();
      Token which = name("'proper', 'injective' or 'immersion'");
      if (which.text == "proper")
        out.decls.proper = true;
      else if (which.text == "injective")
        out.decls.injective_on_points = true;
      else if (which.text == "immersion")
        out.decls.immersion = true;
      else
        throw ParseError("unknown declaration '" + which.text + "'", which.pos.line,
                         which.pos.col);
    }
    expect(TokKind::kRBrace, "'}'");
    return out;
  }

  TowerDecl tower() {
    expect_word("tower");
    TowerDecl out;
    Token n = name("a tower name");
    out.name = n.text;
    out.pos = n.pos;
    expect(TokKind::kLBrace, "'{'");
    if (!at_word("stage"))
      throw ParseError("a tower needs at least one stage", peek().pos.line, peek().pos.col);
    while (at_word("stage")) {
      take();
      out.stages.push_back(name("a space name").text);
    }
    if (!at_word("map"))
      throw ParseError("a tower needs at least one map", peek().pos.line, peek().pos.col);
    while (at_word("map")) {
      take();
      out.maps.push_back(name("a morphism name").text);
    }
    expect(TokKind::kRBrace, "'}'");
    return out;
  }

  // Cross-reference checks: names unique per kind, references resolve, link
  // graphs are well-founded.
  void resolve(const Document& doc) {
    std::map<std::string, const SpaceDecl*> spaces;
    for (const SpaceDecl& s : doc.spaces)
      if (!spaces.emplace(s.name, &s).second)
        throw ParseError("duplicate space '" + s.name + "'", s.pos.line, s.pos.col);
    std::map<std::string, const MorphismDecl*> morphisms;
    for (const MorphismDecl& m : doc.morphisms)
      if (!morphisms.emplace(m.name, &m).second)
        throw ParseError("duplicate morphism '" + m.name + "'", m.pos.line, m.pos.col);
    std::set<std::string> towers;
    for (const TowerDecl& t : doc.towers)
      if (!towers.insert(t.name).second)
        throw ParseError("duplicate tower '" + t.name + "'", t.pos.line, t.pos.col);

    for (const SpaceDecl& s : doc.spaces)
      for (const LinkClause& link : s.links)
        if (!spaces.count(link.space))
          throw ParseError("link names unknown space '" + link.space + "'", link.pos.line,
                           link.pos.col);

    // Link well-foundedness: no space may reach itself through link clauses.
    for (const SpaceDecl& s : doc.spaces) {
      std::set<std::string> path, done;
      std::vector<std::pair<const SpaceDecl*, std::size_t>> stack{{&s, 0}};
      path.insert(s.name);
      while (!stack.empty()) {
        auto& [at, next] = stack.back();
        if (next >= at->links.size()) {
          path.erase(at->name);
          done.insert(at->name);
          stack.pop_back();
          continue;
        }
        const LinkClause& link = at->links[next++];
        if (path.count(link.space))
          throw ParseError("link cycle through space '" + link.space + "'", link.pos.line,
                           link.pos.col);
        if (done.count(link.space)) continue;
        path.insert(link.space);
        stack.emplace_back(spaces.at(link.space), 0);
      }
    }

    for (const MorphismDecl& m : doc.morphisms) {
      auto src = spaces.find(m.source);
      if (src == spaces.end())
        throw ParseError("morphism source names unknown space '" + m.source + "'", m.pos.line,
                         m.pos.col);
      auto tgt = spaces.find(m.target);
      if (tgt == spaces.end())
        throw ParseError("morphism target names unknown space '" + m.target + "'", m.pos.line,
                         m.pos.col);
      auto has_stratum = [](const SpaceDecl* s, const std::string& n) {
        for (const StratumClause& c : s->strata)
          if (c.name == n) return true;
        return false;
      };
      for (const EntryClause& e : m.entries) {
        if (!has_stratum(src->second, e.from))
          throw ParseError("entry maps unknown stratum '" + e.from + "'", e.pos.line, e.pos.col);
        if (!has_stratum(tgt->second, e.to))
          throw ParseError("entry targets unknown stratum '" + e.to + "'", e.pos.line, e.pos.col);
      }
    }

    for (const TowerDecl& t : doc.towers) {
      for (const std::string& s : t.stages)
        if (!spaces.count(s))
          throw ParseError("tower stage names unknown space '" + s + "'", t.pos.line, t.pos.col);
      for (const std::string& m : t.maps)
        if (!morphisms.count(m))
          throw ParseError("tower map names unknown morphism '" + m + "'", t.pos.line, t.pos.col);
    }
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

}  // namespace detail

inline Document parse_document(const std::string& text) {
  return detail::Parser(detail::lex(text)).run();
}

// ---------------------------------------------------------------------------
// Resolution to library objects.

inline const SpaceDecl& find_space(const Document& doc, const std::string& name) {
  for (const SpaceDecl& s : doc.spaces)
    if (s.name == name) return s;
  throw Error("unknown space: " + name);
}

inline const MorphismDecl& find_morphism(const Document& doc, const std::string& name) {
  for (const MorphismDecl& m : doc.morphisms)
    if (m.name == name) return m;
  throw Error("unknown morphism: " + name);
}

inline Skeleton build_skeleton(const Document& doc, const std::string& name) {
  const SpaceDecl& decl = find_space(doc, name);
  std::vector<std::pair<StratumId, StratumLabel>> strata;
  for (const StratumClause& s : decl.strata)
    strata.emplace_back(StratumId(s.name), make_label(s.dim, s.compact, s.connected));
  std::vector<std::pair<StratumId, StratumId>> relations;
  for (const OrderClause& chain : decl.orders)
    for (std::size_t i = 0; i + 1 < chain.names.size(); ++i)
      relations.emplace_back(StratumId(chain.names[i]), StratumId(chain.names[i + 1]));
  return Skeleton(strata, relations);
}

/** True when the space carries link clauses (it denotes a pseudomanifold). */
inline bool space_has_links(const Document& doc, const std::string& name) {
  return !find_space(doc, name).links.empty();
}

/** Space plus its link clauses, resolved recursively through the document. */
inline PseudoSkeleton build_pseudo(const Document& doc, const std::string& name) {
  const SpaceDecl& decl = find_space(doc, name);
  PseudoSkeleton out{build_skeleton(doc, name), {}};
  for (const LinkClause& link : decl.links)
    out.links[StratumId(link.stratum)] = make_pseudo(build_pseudo(doc, link.space));
  return out;
}

/**
 * Named morphism as a checked library object. Partial entry lists are legal
 * in a document; turning one into a morphism fails here, because a stratified
 * map must send every stratum somewhere.
 */
inline StrataMorphism build_morphism(const Document& doc, const std::string& name) {
  const MorphismDecl& decl = find_morphism(doc, name);
  Skeleton source = build_skeleton(doc, decl.source);
  Skeleton target = build_skeleton(doc, decl.target);
  std::map<StratumId, MorphismEntry> entries;
  for (const EntryClause& e : decl.entries)
    entries[StratumId(e.from)] = MorphismEntry{StratumId(e.to), e.onto};
  for (const auto& [id, _] : source.strata())
    if (!entries.count(id)) throw Error("no stratum-preserving map: " + id.token);
  return StrataMorphism(std::move(source), std::move(target), std::move(entries), decl.decls);
}

inline Tower build_tower(const Document& doc, const std::string& name) {
  for (const TowerDecl& t : doc.towers)
    if (t.name == name) {
      Tower out;
      for (const std::string& s : t.stages) out.stages.push_back(build_skeleton(doc, s));
      for (const std::string& m : t.maps) out.maps.push_back(build_morphism(doc, m));
      out.regular_image.assign(out.maps.size(), false);
      return out;
    }
  throw Error("unknown tower: " + name);
}

// ---------------------------------------------------------------------------
// Canonical printing; print -> parse is the identity on documents up to
// source positions.

inline std::string print_document(const Document& doc) {
  std::ostringstream out;
  bool first = true;
  auto gap = [&] {
    if (!first) out << "\n";
    first = false;
  };
  for (const SpaceDecl& s : doc.spaces) {
    gap();
    out << "space " << s.name << " {\n";
    for (const StratumClause& c : s.strata) {
      out << "  stratum " << c.name << " dim " << c.dim;
      if (c.compact) out << " compact";
      if (c.connected) out << " connected";
      out << "\n";
    }
    for (const OrderClause& chain : s.orders) {
      out << "  order";
      for (std::size_t i = 0; i < chain.names.size(); ++i)
        out << (i ? " < " : " ") << chain.names[i];
      out << "\n";
    }
    for (const LinkClause& link : s.links)
      out << "  link " << link.stratum << " = " << link.space << "\n";
    out << "}\n";
  }
  for (const MorphismDecl& m : doc.morphisms) {
    gap();
    out << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n";
    for (const EntryClause& e : m.entries) {
      out << "  " << e.from << " -> " << e.to;
      if (e.onto) out << " onto";
      out << "\n";
    }
    if (m.decls.proper) out << "  declare proper\n";
    if (m.decls.injective_on_points) out << "  declare injective\n";
    if (m.decls.immersion) out << "  declare immersion\n";
    out << "}\n";
  }
  for (const TowerDecl& t : doc.towers) {
    gap();
    out << "tower " << t.name << " {\n";
    for (const std::string& s : t.stages) out << "  stage " << s << "\n";
    for (const std::string& m : t.maps) out << "  map " << m << "\n";
    out << "}\n";
  }
  return out.str();
}

// Structural equality ignoring source positions, for round-trip checks.
inline bool documents_equal(const Document& a, const Document& b) {
  auto strata_eq = [](const StratumClause& x, const StratumClause& y) {
    return x.name == y.name && x.dim == y.dim && x.compact == y.compact &&
           x.connected == y.connected;
  };
  if (a.spaces.size() != b.spaces.size() || a.morphisms.size() != b.morphisms.size() ||
      a.towers.size() != b.towers.size())
    return false;
  for (std::size_t i = 0; i < a.spaces.size(); ++i) {
    const SpaceDecl &x = a.spaces[i], &y = b.spaces[i];
    if (x.name != y.name || x.strata.size() != y.strata.size() ||
        x.orders.size() != y.orders.size() || x.links.size() != y.links.size())
      return false;
    for (std::size_t k = 0; k < x.strata.size(); ++k)
      if (!strata_eq(x.strata[k], y.strata[k])) return false;
    for (std::size_t k = 0; k < x.orders.size(); ++k)
      if (x.orders[k].names != y.orders[k].names) return false;
    for (std::size_t k = 0; k < x.links.size(); ++k)
      if (x.links[k].stratum != y.links[k].stratum || x.links[k].space != y.links[k].space)
        return false;
  }
  for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
    const MorphismDecl &x = a.morphisms[i], &y = b.morphisms[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target ||
        x.entries.size() != y.entries.size() || !(x.decls.proper == y.decls.proper) ||
        x.decls.injective_on_points != y.decls.injective_on_points ||
        x.decls.immersion != y.decls.immersion)
      return false;
    for (std::size_t k = 0; k < x.entries.size(); ++k)
      if (x.entries[k].from != y.entries[k].from || x.entries[k].to != y.entries[k].to ||
          x.entries[k].onto != y.entries[k].onto)
        return false;
  }
  for (std::size_t i = 0; i < a.towers.size(); ++i)
    if (a.towers[i].name != b.towers[i].name || a.towers[i].stages != b.towers[i].stages ||
        a.towers[i].maps != b.towers[i].maps)
      return false;
  return true;
}

}  // namespace strata

#endif  // STRATA_DSL_HPP
