#include "exotica/constructions/constructions.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "exotica/dsl/ast.hpp"
#include "exotica/error.hpp"

#ifndef EXOTICA_DEFAULT_DATA_DIR
#define EXOTICA_DEFAULT_DATA_DIR "data"
#endif

namespace exotica::constructions {

using group::BoundaryData;
using group::Presentation;
using group::Word;

namespace {

struct Pos {
  int line;
  int column;
};

Pos offset_pos(Pos start, std::string_view text, std::size_t offset) {
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++start.line;
      start.column = 1;
    } else {
      ++start.column;
    }
  }
  return start;
}

// Splits on `sep` outside brackets; returns (offset, piece) pairs.
std::vector<std::pair<std::size_t, std::string_view>> split_top(std::string_view s, char sep) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      out.emplace_back(start, s.substr(start, i - start));
      start = i + 1;
      continue;
    }
    if (s[i] == '(' || s[i] == '[') ++depth;
    if (s[i] == ')' || s[i] == ']') --depth;
  }
  return out;
}

bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string strip_comments(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] != '#') continue;
    while (i < out.size() && out[i] != '\n') out[i++] = ' ';
  }
  return out;
}

}  // namespace

GluingMap parse_gluing(std::string_view raw, int line, int column) {
  const std::string body = strip_comments(raw);
  const Pos origin{line, column};
  GluingMap g;
  bool meridian_seen = false;
  auto arrow = [&](std::size_t base, std::string_view piece) {
    const auto a = piece.find("->");
    const Pos at = offset_pos(origin, body, base);
    if (a == std::string_view::npos) throw ParseError("expected 'source -> target'", at.line, at.column);
    const Pos rhs = offset_pos(origin, body, base + a + 2);
    return std::make_pair(piece.substr(0, a), std::make_pair(piece.substr(a + 2), rhs));
  };
  const auto sections = split_top(body, ';');
  for (std::size_t si = 0; si < sections.size(); ++si) {
    const auto [soff, section] = sections[si];
    if (blank(section)) continue;
    for (const auto& [poff, piece] : split_top(section, ',')) {
      const std::size_t base = soff + poff;
      const Pos at = offset_pos(origin, body, base);
      if (blank(piece)) throw ParseError("empty entry in glue block", at.line, at.column);
      const auto [lhs, rhs] = arrow(base, piece);
      std::string key(lhs);
      key.erase(0, key.find_first_not_of(" \t\n\r"));
      key.erase(key.find_last_not_of(" \t\n\r") + 1);
      if (key == "meridian") {
        if (meridian_seen) throw ParseError("duplicate meridian entry", at.line, at.column);
        meridian_seen = true;
        g.meridian_image = group::parse_word(rhs.first, rhs.second.line, rhs.second.column);
        continue;
      }
      if (meridian_seen) throw ParseError("generator entries must precede the meridian", at.line, at.column);
      Word src = group::parse_word(lhs, at.line, at.column);
      for (const auto& [s, t] : g.assignments)
        if (s == src) throw ParseError("'" + src.to_string() + "' is assigned twice", at.line, at.column);
      g.assignments.emplace_back(std::move(src), group::parse_word(rhs.first, rhs.second.line, rhs.second.column));
    }
  }
  if (g.assignments.empty()) throw ParseError("glue block has no assignments", line, column);
  return g;
}

namespace {

class BundledLoader {
 public:
  explicit BundledLoader(const std::string& source) : source_(source) {}

  std::vector<BundledItem> load(std::string_view text) {
    dsl::ParseOptions opts;
    opts.functions = {"boundary", "knot", "curves"};
    const auto script = dsl::parse_script(text, source_, opts);
    std::vector<BundledItem> out;
    for (const auto& st : script.statements) {
      if (st.kind != dsl::Statement::Kind::Let) fail(st.pos, "bundled data may only contain 'let' bindings");
      if (!st.citation) fail(st.pos, "bundled item '" + st.name + "' has no citation");
      BundledValue v = value(st.expr.front());
      env_.emplace(st.name, v);
      out.push_back({st.name, std::move(v), *st.citation, st.note.value_or("")});
    }
    return out;
  }

 private:
  [[noreturn]] void fail(dsl::Position p, const std::string& msg) const {
    throw ParseError(source_ + ": " + msg, p.line, p.column);
  }

  BundledValue value(const dsl::Expr& e) {
    using K = dsl::Expr::Kind;
    if (e.kind == K::Identifier) return env_.at(e.text);
    if (e.kind == K::Literal) {
      if (e.text == "presentation") return group::parse_presentation(e.body, e.body_pos.line, e.body_pos.column);
      if (e.text == "glue") return parse_gluing(e.body, e.body_pos.line, e.body_pos.column);
      fail(e.pos, "'" + e.text + "' blocks are not bundled data");
    }
    if (e.kind != K::Call) fail(e.pos, "expected a presentation, glue block or constructor call");
    for (const auto& a : e.args)
      if (!a.keyword.empty()) fail(e.pos, "keyword arguments are not supported here");
    if (e.text == "boundary") {
      arity(e, 3);
      BoundaryData b{presentation(e.arg(0)), words(e.arg(1)), word(e.arg(2))};
      try {
        b.validate();
      } catch (const Error& err) {
        fail(e.pos, err.what());
      }
      return b;
    }
    if (e.text == "knot") {
      arity(e, 5);
      KnotRecord k{string(e.arg(0)), presentation(e.arg(1)), word(e.arg(2)), word(e.arg(3)),
                   static_cast<int>(integer(e.arg(4)))};
      try {
        k.group.check_word(k.meridian);
        k.group.check_word(k.longitude);
      } catch (const Error& err) {
        fail(e.pos, err.what());
      }
      return k;
    }
    arity(e, 2);
    CurveList c{static_cast<int>(integer(e.arg(0))), words(e.arg(1))};
    if (c.genus < 1) fail(e.pos, "genus must be positive");
    return c;
  }

  void arity(const dsl::Expr& e, std::size_t n) const {
    if (e.args.size() != n) fail(e.pos, e.text + " expects " + std::to_string(n) + " arguments");
  }

  Presentation presentation(const dsl::Expr& e) {
    BundledValue v = value(e);
    if (auto* p = std::get_if<Presentation>(&v)) return *p;
    fail(e.pos, "expected a presentation");
  }

  Word word(const dsl::Expr& e) const {
    if (e.kind != dsl::Expr::Kind::String) fail(e.pos, "expected a word in quotes");
    return group::parse_word(e.text, e.pos.line, e.pos.column + 1);
  }

  std::vector<Word> words(const dsl::Expr& e) const {
    if (e.kind != dsl::Expr::Kind::List) fail(e.pos, "expected a list of words");
    std::vector<Word> out;
    for (std::size_t i = 0; i < e.args.size(); ++i) out.push_back(word(e.arg(i)));
    return out;
  }

  std::string string(const dsl::Expr& e) const {
    if (e.kind != dsl::Expr::Kind::String) fail(e.pos, "expected a string");
    return e.text;
  }

  std::int64_t integer(const dsl::Expr& e) const {
    if (e.kind != dsl::Expr::Kind::Integer) fail(e.pos, "expected an integer");
    return e.integer;
  }

  std::string source_;
  std::map<std::string, BundledValue> env_;
};

const std::vector<BundledItem>& items() {
  static const std::vector<BundledItem> all = [] {
    const auto path = data_dir() / "bundled.exo";
    std::ifstream in(path);
    if (!in) throw Error("cannot open bundled data file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_bundled(ss.str(), path.filename().string());
  }();
  return all;
}

}  // namespace

std::vector<BundledItem> load_bundled(std::string_view text, const std::string& source_name) {
  return BundledLoader(source_name).load(text);
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("EXOTICA_DATA_DIR"); env && *env) return env;
  return EXOTICA_DEFAULT_DATA_DIR;
}

const BundledItem& bundled(std::string_view name) {
  for (const auto& item : items())
    if (item.name == name) return item;
  throw Error("no bundled item named '" + std::string(name) + "'");
}

std::vector<std::string> bundled_names() {
  std::vector<std::string> out;
  for (const auto& item : items()) out.push_back(item.name);
  return out;
}

KnotRecord knot(std::string_view name) {
  const auto& item = bundled(name);
  if (const auto* k = std::get_if<KnotRecord>(&item.value)) return *k;
  throw Error("bundled item '" + std::string(name) + "' is not a knot");
}

Presentation zero_surgery(const KnotRecord& k) {
  std::vector<Word> rels = k.group.relators();
  rels.push_back(k.longitude);
  return Presentation(k.group.generators(), std::move(rels));
}

Presentation cross_circle(const Presentation& p, std::string fresh) {
  if (fresh.empty()) {
    fresh = "x";
    for (int n = 2; p.has_generator(fresh); ++n) fresh = "x" + std::to_string(n);
  } else if (p.has_generator(fresh)) {
    throw Error("generator '" + fresh + "' already exists");
  }
  std::vector<std::string> gens = p.generators();
  gens.push_back(fresh);
  std::vector<Word> rels = p.relators();
  for (const auto& g : p.generators()) rels.push_back(group::commutator(Word::generator(fresh), Word::generator(g)));
  return Presentation(std::move(gens), std::move(rels));
}

group::Matching matching_for(const BoundaryData& a, const BoundaryData& b, const GluingMap& g) {
  auto find = [](const std::vector<Word>& images, const Word& w, const char* side) {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i] == w) return i;
    throw Error(std::string("glue map word '") + w.to_string() + "' is not a surface image of the " + side +
                " side");
  };
  group::Matching m;
  for (const auto& [src, dst] : g.assignments) m.emplace_back(find(a.surface_images, src, "first"),
                                                              find(b.surface_images, dst, "second"));
  return m;
}

Presentation glue(const BoundaryData& a, const BoundaryData& b, const GluingMap& g, std::optional<bool> kill) {
  return group::van_kampen_fiber_sum(a, b, matching_for(a, b, g), kill.value_or(g.kills_meridians()));
}

}  // namespace exotica::constructions
