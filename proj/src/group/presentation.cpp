#include "exotica/group/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "exotica/error.hpp"

namespace exotica::group {

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!is_identifier(g)) throw Error("invalid generator symbol '" + g + "'");
    if (!seen.insert(g).second) throw Error("duplicate generator '" + g + "'");
  }
  std::set<Word> kept;
  for (auto& r : relators) {
    check_word(r);
    if (r.is_identity() || !kept.insert(r).second) continue;
    relators_.push_back(std::move(r));
  }
}

bool Presentation::has_generator(std::string_view g) const { return generator_index(g) >= 0; }

int Presentation::generator_index(std::string_view g) const {
  auto it = std::find(generators_.begin(), generators_.end(), g);
  return it == generators_.end() ? -1 : static_cast<int>(it - generators_.begin());
}

void Presentation::check_word(const Word& w) const {
  for (const auto& l : w.letters())
    if (!has_generator(l.gen)) throw Error("unknown generator '" + l.gen + "'");
}

std::string Presentation::to_string() const {
  std::string out = "gens: ";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i];
  }
  out += "; rels: ";
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    if (i) out += ", ";
    out += relators_[i].to_string();
  }
  out += ";";
  return out;
}

Presentation quotient(const Presentation& p, std::span<const Word> extra) {
  std::vector<Word> rels = p.relators();
  for (const auto& w : extra) {
    p.check_word(w);
    rels.push_back(w);
  }
  return Presentation(p.generators(), std::move(rels));
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

class TextParser {
 public:
  TextParser(std::string_view text, int line, int column) : text_(text), line_(line), col_(column) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::pair<int, int> where() {
    skip_space();
    return {line_, col_};
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }

  void expect_keyword(std::string_view kw) {
    skip_space();
    const auto start_line = line_;
    const auto start_col = col_;
    std::string id = identifier_or_empty();
    if (id != kw) throw ParseError("expected '" + std::string(kw) + "'", start_line, start_col);
    expect(':');
  }

  std::string identifier() {
    skip_space();
    std::string id = identifier_or_empty();
    if (id.empty()) fail("expected generator symbol" + found());
    return id;
  }

  int integer() {
    skip_space();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      advance();
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent" + found());
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) fail("exponent too large");
      advance();
    }
    return static_cast<int>(neg ? -v : v);
  }

  Word word() {
    Word w = factor();
    while (accept('*')) w = w * factor();
    return w;
  }

  std::vector<Word> relation() {
    std::vector<Word> members{word()};
    while (accept('=')) members.push_back(word());
    if (members.size() == 1) return members;
    std::vector<Word> out;
    const Word last_inv = members.back().inverse();
    for (std::size_t i = 0; i + 1 < members.size(); ++i) out.push_back(members[i] * last_inv);
    return out;
  }

 private:
  std::string found() {
    if (pos_ >= text_.size()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string identifier_or_empty() {
    std::string id;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id += text_[pos_];
        advance();
      }
    }
    return id;
  }

  Word factor() {
    Word base = atom();
    if (accept('^')) base = base.pow(integer());
    return base;
  }

  Word atom() {
    const char c = peek();
    if (c == '(') {
      advance();
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      advance();
      Word g = word();
      expect(',');
      Word h = word();
      expect(']');
      return commutator(g, h);
    }
    if (c == '1') {
      advance();
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        fail("unexpected character after identity '1'");
      return Word();
    }
    return Word::generator(identifier());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

}  // namespace

Presentation parse_presentation(std::string_view text, int line, int column) {
  TextParser p(text, line, column);
  p.expect_keyword("gens");
  std::vector<std::string> gens;
  if (!p.accept(';')) {
    gens.push_back(p.identifier());
    while (p.accept(',')) gens.push_back(p.identifier());
    p.expect(';');
  }
  p.expect_keyword("rels");
  std::vector<Word> rels;
  if (!p.accept(';')) {
    do {
      const auto [rl, rc] = p.where();
      for (auto& w : p.relation()) {
        for (const auto& l : w.letters())
          if (std::find(gens.begin(), gens.end(), l.gen) == gens.end())
            throw ParseError("relator uses undeclared generator '" + l.gen + "'", rl, rc);
        rels.push_back(std::move(w));
      }
    } while (p.accept(','));
    p.expect(';');
  }
  if (!p.at_end()) p.fail("trailing input after presentation");
  return Presentation(std::move(gens), std::move(rels));
}

Word parse_word(std::string_view text, int line, int column) {
  TextParser p(text, line, column);
  Word w = p.word();
  if (!p.at_end()) p.fail("trailing input after word");
  return w;
}

std::vector<Word> parse_relation(std::string_view text, int line, int column) {
  TextParser p(text, line, column);
  auto rels = p.relation();
  if (!p.at_end()) p.fail("trailing input after relation");
  return rels;
}

}  // namespace exotica::group
