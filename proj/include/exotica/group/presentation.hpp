#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exotica/group/word.hpp"

namespace exotica::group {

// Finite presentation <generators | relators>.
//
// Construction normalizes: relators are freely reduced words, the identity
// relator and exact duplicates are dropped (first occurrence wins), and every
// generator used by a relator must be declared.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }

  bool has_generator(std::string_view g) const;
  int generator_index(std::string_view g) const;  // -1 if absent
  void check_word(const Word& w) const;           // throws on foreign generator

  // `gens: a, b; rels: a*b*a*b^-1*a^-1*b^-1;`
  std::string to_string() const;

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

// Relators of P together with `extra`, normalized.
Presentation quotient(const Presentation& p, std::span<const Word> extra);

// Text form shared with the script language.
//
//   presentation := "gens:" [ident {"," ident}] ";" "rels:" [relation {"," relation}] ";"
//   relation     := word {"=" word}          (w1 = ... = wk  gives  wi * wk^-1)
//   word         := "1" | factor {"*" factor}
//   factor       := atom ["^" int]
//   atom         := ident | "(" word ")" | "[" word "," word "]" | "1"
//
// `line`/`column` give the position of text[0] for error reporting.
Presentation parse_presentation(std::string_view text, int line = 1, int column = 1);
Word parse_word(std::string_view text, int line = 1, int column = 1);
std::vector<Word> parse_relation(std::string_view text, int line = 1, int column = 1);

bool is_identifier(std::string_view s);

}  // namespace exotica::group
