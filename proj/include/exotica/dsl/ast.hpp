#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace exotica::dsl {

struct Position {
  int line = 1;
  int column = 1;
};

struct Expr;

struct Argument {
  std::string keyword;  // empty for positional arguments
  std::vector<Expr> value;  // exactly one element; vector gives the recursion a home
};

// Expression node. Brace literals (`presentation { ... }`, `invariants { ... }`,
// `glue { ... }`) keep their body as raw text; the owning module parses it.
struct Expr {
  enum class Kind { Integer, String, Bool, Identifier, Call, List, Literal };

  Kind kind = Kind::Integer;
  Position pos;
  std::int64_t integer = 0;  // Integer; Bool (0/1)
  std::string text;          // String value, identifier, callee, literal keyword
  std::string body;          // Literal body, verbatim
  Position body_pos;
  std::vector<Argument> args;  // Call arguments; List items (positional)

  const Expr& arg(std::size_t i) const { return args.at(i).value.front(); }
};

struct Statement {
  enum class Kind { Let, Assert };

  Kind kind = Kind::Let;
  Position pos;
  std::string name;                 // Let
  std::vector<Expr> expr;           // one element
  std::vector<Expr> expected;       // Assert `== EXPR`; empty when absent
  std::optional<std::int64_t> budget;
  std::optional<std::string> citation;
  std::optional<std::string> note;
  std::string source;  // statement text as written (trimmed)
};

struct Script {
  std::string id;
  std::vector<Statement> statements;
};

struct ParseOptions {
  // Names usable without a prior `let` (bundled data items).
  std::set<std::string> predefined;
  // When non-empty, calls to other names are rejected at parse time.
  std::set<std::string> functions;
};

// Grammar (line oriented, `#` starts a comment):
//   statement := "let" NAME "=" expr meta* | "assert" expr ["==" expr] ["budget" INT] meta*
//   meta      := "cite" STRING | "note" STRING
//   expr      := INT | "-" INT | STRING | "true" | "false" | NAME
//              | NAME "(" [arg {"," arg}] ")" | "[" [expr {"," expr}] "]"
//              | ("presentation" | "invariants" | "glue") "{" raw "}"
//   arg       := [NAME "="] expr
// Newlines inside (), [] and {} do not end a statement.
Script parse_script(std::string_view text, std::string id, const ParseOptions& options = {});

std::string serialize(const Script& s);
std::string serialize(const Expr& e);

// Equality of structure and content, ignoring positions and source text.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Script& a, const Script& b);

}  // namespace exotica::dsl
