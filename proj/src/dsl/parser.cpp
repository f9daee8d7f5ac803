#include <cctype>
#include <charconv>

#include "exotica/dsl/ast.hpp"
#include "exotica/error.hpp"

namespace exotica::dsl {

namespace {

const std::set<std::string> kLiteralKeywords{"presentation", "invariants", "glue"};
const std::set<std::string> kReserved{"let", "assert", "budget", "cite", "note", "true", "false"};

enum class Tok { Ident, Int, String, Punct, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  Position pos;
  std::size_t offset = 0;
  std::size_t end = 0;
  // Literal bodies are captured by the lexer.
  std::string body;
  Position body_pos;
  bool has_body = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int depth = 0;
    while (true) {
      skip_blank();
      if (at_end()) break;
      const char ch = src_[i_];
      if (ch == '\n') {
        if (depth == 0) out.push_back(make(Tok::Newline, "\n", 1));
        advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        Token t = ident();
        if (kLiteralKeywords.count(t.text)) {
          const std::size_t save = i_;
          const Position save_pos = pos_;
          skip_space_and_newlines();
          if (!at_end() && src_[i_] == '{') {
            brace_body(t);
          } else {
            i_ = save;
            pos_ = save_pos;
          }
        }
        out.push_back(std::move(t));
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        out.push_back(integer());
        continue;
      }
      if (ch == '"') {
        out.push_back(string());
        continue;
      }
      if (ch == '=' && peek(1) == '=') {
        out.push_back(make(Tok::Punct, "==", 2));
        advance(2);
        continue;
      }
      if (std::string_view("=(),[]-").find(ch) != std::string_view::npos) {
        if (ch == '(' || ch == '[') ++depth;
        if ((ch == ')' || ch == ']') && depth > 0) --depth;
        out.push_back(make(Tok::Punct, std::string(1, ch), 1));
        advance();
        continue;
      }
      throw ParseError(std::string("unexpected character '") + ch + "'", pos_.line, pos_.column);
    }
    out.push_back(make(Tok::Newline, "\n", 0));
    out.push_back(make(Tok::End, "", 0));
    return out;
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t k) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k, ++i_) {
      if (src_[i_] == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else {
        ++pos_.column;
      }
    }
  }

  void skip_blank() {
    while (!at_end()) {
      const char ch = src_[i_];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        advance();
      } else if (ch == '#') {
        while (!at_end() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void skip_space_and_newlines() {
    while (!at_end()) {
      skip_blank();
      if (!at_end() && src_[i_] == '\n')
        advance();
      else
        break;
    }
  }

  Token make(Tok k, std::string text, std::size_t len) const {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.pos = pos_;
    t.offset = i_;
    t.end = i_ + len;
    return t;
  }

  Token ident() {
    Token t = make(Tok::Ident, "", 0);
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
      t.text += src_[i_];
      advance();
    }
    t.end = i_;
    return t;
  }

  Token integer() {
    Token t = make(Tok::Int, "", 0);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
      t.text += src_[i_];
      advance();
    }
    const auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
    if (r.ec != std::errc()) throw ParseError("integer out of range", t.pos.line, t.pos.column);
    t.end = i_;
    return t;
  }

  Token string() {
    Token t = make(Tok::String, "", 0);
    advance();
    while (true) {
      if (at_end() || src_[i_] == '\n') throw ParseError("unterminated string", t.pos.line, t.pos.column);
      const char ch = src_[i_];
      if (ch == '"') {
        advance();
        break;
      }
      if (ch == '\\') {
        const char next = peek(1);
        if (next == '"' || next == '\\')
          t.text += next;
        else if (next == 'n')
          t.text += '\n';
        else
          throw ParseError("bad escape in string", pos_.line, pos_.column);
        advance(2);
        continue;
      }
      t.text += ch;
      advance();
    }
    t.end = i_;
    return t;
  }

  // Captures everything between the braces, which must balance.
  void brace_body(Token& t) {
    const Position open = pos_;
    advance();
    t.body_pos = pos_;
    const std::size_t start = i_;
    int depth = 1;
    while (true) {
      if (at_end()) throw ParseError("unterminated '{' block", open.line, open.column);
      const char ch = src_[i_];
      if (ch == '"') {
        advance();
        while (!at_end() && src_[i_] != '"' && src_[i_] != '\n') advance(src_[i_] == '\\' ? 2 : 1);
        if (at_end() || src_[i_] != '"') throw ParseError("unterminated string", pos_.line, pos_.column);
      } else if (ch == '#') {
        while (!at_end() && src_[i_] != '\n') advance();
        continue;
      } else if (ch == '{') {
        ++depth;
      } else if (ch == '}') {
        if (--depth == 0) break;
      }
      advance();
    }
    t.body = std::string(src_.substr(start, i_ - start));
    t.has_body = true;
    advance();
    t.end = i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Position pos_;
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {
    toks_ = Lexer(text).run();
  }

  std::vector<Statement> statements() {
    std::vector<Statement> out;
    std::set<std::string> names = options_.predefined;
    std::set<std::string> lets;
    while (true) {
      while (peek().kind == Tok::Newline) next();
      if (peek().kind == Tok::End) break;
      Statement s = statement();
      auto check_refs = [&](const Expr& e) { check_references(e, names); };
      for (const auto& e : s.expr) check_refs(e);
      for (const auto& e : s.expected) check_refs(e);
      if (s.kind == Statement::Kind::Let) {
        if (!lets.insert(s.name).second)
          throw ParseError("duplicate name '" + s.name + "'", s.pos.line, s.pos.column + 4);
        names.insert(s.name);
      }
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& next() { return toks_[k_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.pos.line, t.pos.column);
  }

  bool is_punct(const Token& t, std::string_view p) const { return t.kind == Tok::Punct && t.text == p; }
  bool is_word(const Token& t, std::string_view w) const { return t.kind == Tok::Ident && t.text == w; }

  void expect_punct(std::string_view p) {
    if (!is_punct(peek(), p)) fail(peek(), "expected '" + std::string(p) + "', found " + describe(peek()));
    next();
  }

  // Closing bracket; an unclosed opener is reported where it was opened.
  void expect_close(std::string_view p, const Token& open) {
    if (is_punct(peek(), p)) {
      next();
      return;
    }
    if (peek().kind == Tok::End || peek().kind == Tok::Newline)
      fail(open, "unclosed '" + open.text + "': expected '" + std::string(p) + "' before " + describe(peek()));
    expect_punct(p);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Newline:
        return "end of line";
      case Tok::End:
        return "end of input";
      default:
        return "'" + t.text + "'";
    }
  }

  Statement statement() {
    const Token& head = next();
    Statement s;
    s.pos = head.pos;
    if (is_word(head, "let")) {
      s.kind = Statement::Kind::Let;
      const Token& name = next();
      if (name.kind != Tok::Ident) fail(name, "expected a name after 'let'");
      if (kReserved.count(name.text) || kLiteralKeywords.count(name.text))
        fail(name, "'" + name.text + "' is a reserved word");
      s.name = name.text;
      expect_punct("=");
      s.expr.push_back(expression());
    } else if (is_word(head, "assert")) {
      s.kind = Statement::Kind::Assert;
      s.expr.push_back(expression());
      if (is_punct(peek(), "==")) {
        next();
        s.expected.push_back(expression());
      }
      if (is_word(peek(), "budget")) {
        next();
        const Token& b = next();
        if (b.kind != Tok::Int || b.value < 1) fail(b, "expected a positive budget");
        s.budget = b.value;
      }
    } else {
      fail(head, "expected 'let' or 'assert', found " + describe(head));
    }
    while (is_word(peek(), "cite") || is_word(peek(), "note")) {
      const bool cite = next().text == "cite";
      const Token& str = next();
      if (str.kind != Tok::String) fail(str, "expected a string");
      auto& slot = cite ? s.citation : s.note;
      if (slot) fail(str, std::string("duplicate '") + (cite ? "cite" : "note") + "'");
      slot = str.text;
    }
    const Token& end = peek();
    if (end.kind != Tok::Newline) fail(end, "unexpected " + describe(end) + " after statement");
    s.source = trim(text_.substr(head.offset, toks_[k_ - 1].end - head.offset));
    next();
    return s;
  }

  static std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
  }

  Expr expression() {
    const Token& t = next();
    Expr e;
    e.pos = t.pos;
    if (t.kind == Tok::Int) {
      e.kind = Expr::Kind::Integer;
      e.integer = t.value;
      return e;
    }
    if (is_punct(t, "-")) {
      const Token& n = next();
      if (n.kind != Tok::Int) fail(n, "expected an integer after '-'");
      e.kind = Expr::Kind::Integer;
      e.integer = -n.value;
      return e;
    }
    if (t.kind == Tok::String) {
      e.kind = Expr::Kind::String;
      e.text = t.text;
      return e;
    }
    if (is_punct(t, "[")) {
      e.kind = Expr::Kind::List;
      if (!is_punct(peek(), "]")) {
        while (true) {
          e.args.push_back({"", {expression()}});
          if (is_punct(peek(), ",")) {
            next();
            continue;
          }
          break;
        }
      }
      expect_close("]", t);
      return e;
    }
    if (t.kind != Tok::Ident) fail(t, "expected an expression, found " + describe(t));
    if (t.has_body) {
      e.kind = Expr::Kind::Literal;
      e.text = t.text;
      e.body = t.body;
      e.body_pos = t.body_pos;
      return e;
    }
    if (t.text == "true" || t.text == "false") {
      e.kind = Expr::Kind::Bool;
      e.integer = t.text == "true";
      return e;
    }
    if (kReserved.count(t.text)) fail(t, "unexpected keyword '" + t.text + "'");
    e.text = t.text;
    if (!is_punct(peek(), "(")) {
      if (kLiteralKeywords.count(t.text)) fail(peek(), "expected '{' after '" + t.text + "'");
      e.kind = Expr::Kind::Identifier;
      return e;
    }
    const Token& open = next();
    e.kind = Expr::Kind::Call;
    if (!options_.functions.empty() && !options_.functions.count(t.text))
      fail(t, "unknown function '" + t.text + "'");
    bool keywords = false;
    if (!is_punct(peek(), ")")) {
      while (true) {
        Argument a;
        if (peek().kind == Tok::Ident && is_punct(toks_[k_ + 1], "=")) {
          a.keyword = next().text;
          next();
          for (const auto& prev : e.args)
            if (prev.keyword == a.keyword) fail(toks_[k_ - 2], "duplicate keyword argument '" + a.keyword + "'");
          keywords = true;
        } else if (keywords) {
          fail(peek(), "positional argument after keyword argument");
        }
        a.value.push_back(expression());
        e.args.push_back(std::move(a));
        if (is_punct(peek(), ",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_close(")", open);
    return e;
  }

  void check_references(const Expr& e, const std::set<std::string>& names) const {
    if (e.kind == Expr::Kind::Identifier && !names.count(e.text))
      throw ParseError("unresolved reference '" + e.text + "'", e.pos.line, e.pos.column);
    for (const auto& a : e.args) check_references(a.value.front(), names);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

Script parse_script(std::string_view text, std::string id, const ParseOptions& options) {
  Script s;
  s.id = std::move(id);
  s.statements = Parser(text, options).statements();
  return s;
}

std::string serialize(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Integer:
      return std::to_string(e.integer);
    case Expr::Kind::String:
      return quote(e.text);
    case Expr::Kind::Bool:
      return e.integer ? "true" : "false";
    case Expr::Kind::Identifier:
      return e.text;
    case Expr::Kind::Literal:
      return e.text + " {" + e.body + "}";
    case Expr::Kind::Call:
    case Expr::Kind::List:
      break;
  }
  const bool call = e.kind == Expr::Kind::Call;
  std::string out = call ? e.text + "(" : "[";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ", ";
    if (!e.args[i].keyword.empty()) out += e.args[i].keyword + " = ";
    out += serialize(e.arg(i));
  }
  return out + (call ? ")" : "]");
}

std::string serialize(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) {
    if (st.kind == Statement::Kind::Let) {
      out += "let " + st.name + " = " + serialize(st.expr.front());
    } else {
      out += "assert " + serialize(st.expr.front());
      if (!st.expected.empty()) out += " == " + serialize(st.expected.front());
      if (st.budget) out += " budget " + std::to_string(*st.budget);
    }
    if (st.citation) out += " cite " + quote(*st.citation);
    if (st.note) out += " note " + quote(*st.note);
    out += "\n";
  }
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.integer != b.integer || a.text != b.text || a.body != b.body ||
      a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (a.args[i].keyword != b.args[i].keyword || !structurally_equal(a.arg(i), b.arg(i))) return false;
  return true;
}

bool structurally_equal(const Script& a, const Script& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    const auto& x = a.statements[i];
    const auto& y = b.statements[i];
    if (x.kind != y.kind || x.name != y.name || x.budget != y.budget || x.citation != y.citation ||
        x.note != y.note || x.expected.size() != y.expected.size())
      return false;
    if (!structurally_equal(x.expr.front(), y.expr.front())) return false;
    if (!x.expected.empty() && !structurally_equal(x.expected.front(), y.expected.front())) return false;
  }
  return true;
}

}  // namespace exotica::dsl
