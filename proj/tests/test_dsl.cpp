#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "exotica/constructions/constructions.hpp"
#include "exotica/dsl/runtime.hpp"
#include "json.hpp"

using namespace exotica;
using namespace exotica::dsl;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path script_path(const char* name) { return std::filesystem::path(EXOTICA_TEST_SCRIPT_DIR) / name; }

VerificationReport run(const std::string& text, Config c = {}) {
  c.record_timings = false;
  return execute(parse(text, "test.exo"), c);
}

template <class E>
E error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const E& e) {
    return e;
  }
  FAIL("expected an error");
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("two-statement script") {
  const auto s = parse("let G = presentation { gens: a; rels: a^3; }\nassert order(G) == 3", "t");
  REQUIRE(s.statements.size() == 2);
  CHECK(s.statements[0].kind == Statement::Kind::Let);
  CHECK(s.statements[0].name == "G");
  CHECK(s.statements[0].expr.front().kind == Expr::Kind::Literal);
  CHECK(s.statements[0].pos.line == 1);
  CHECK(s.statements[1].kind == Statement::Kind::Assert);
  CHECK(s.statements[1].pos.line == 2);
  CHECK(s.statements[1].expr.front().kind == Expr::Kind::Call);
  CHECK(s.statements[1].expr.front().text == "order");
  CHECK(s.statements[1].expr.front().pos.column == 8);
  REQUIRE(s.statements[1].expected.size() == 1);
  CHECK(s.statements[1].expected.front().integer == 3);
  const auto r = execute(s);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("syntax errors carry positions") {
  auto e = error_of<ParseError>([] { parse("let G = presentation { gens: a; rels: a^3;\nassert order(G) == 3\n", "t"); });
  CHECK(e.line() == 1);
  CHECK(e.column() == 22);
  e = error_of<ParseError>([] { parse("let = 3\n", "t"); });
  CHECK(e.line() == 1);
  CHECK(e.column() == 5);
  CHECK(std::string(e.what()).find("expected") != std::string::npos);
  e = error_of<ParseError>([] { parse("let a = 1\nassert a ==\n", "t"); });
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("expected") != std::string::npos);
  e = error_of<ParseError>([] { parse("let a = order(presentation { gens: a; rels: ; }\n", "t"); });
  CHECK(e.line() == 1);
  CHECK(e.column() == 14);
  CHECK(e.bare_message().find("unclosed") != std::string::npos);
  e = error_of<ParseError>([] { parse("let P = presentation { gens: a;\n rels: b; }\n", "t"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 8);
}

TEST_CASE("name resolution") {
  auto e = error_of<ParseError>([] { parse("let G = 1\nlet G = 2\n", "t"); });
  CHECK(e.line() == 2);
  CHECK(e.bare_message().find("duplicate") != std::string::npos);
  e = error_of<ParseError>([] { parse("assert order(H) == 1\n", "t"); });
  CHECK(e.column() == 14);
  CHECK(e.bare_message().find("unresolved") != std::string::npos);
  e = error_of<ParseError>([] { parse("let x = frobnicate(1)\n", "t"); });
  CHECK(e.line() == 1);
  CHECK_NOTHROW(parse("assert abelianize(Y_K) == \"Z^2\"\n", "t"));
  CHECK_THROWS_AS(parse("let a = f(x = 1, 2)\n", "t"), ParseError);
  CHECK_THROWS_AS(parse("let let = 1\n", "t"), ParseError);
}

TEST_CASE("runtime type errors point at the argument") {
  const auto s = parse("let G = presentation { gens: a; rels: a^3; }\nlet R = fiber_sum(G, G, 2)\n", "t");
  const auto e = error_of<ScriptError>([&] { execute(s); });
  CHECK(e.position().line == 2);
  CHECK(e.position().column == 19);
  CHECK(e.bare_message().find("argument 1") != std::string::npos);
  const auto e2 = error_of<ScriptError>([&] { run("let n = blow_up(standard(\"CP2\"), \"two\")\n"); });
  CHECK(e2.position().column == 34);
  CHECK(e2.bare_message().find("argument 2") != std::string::npos);
}

TEST_CASE("failures are reported and do not halt") {
  const auto r = run(
      "let G = presentation { gens: a; rels: a^3; }\n"
      "assert order(G) == 5\n"
      "assert order(G) == 3 cite \"cyclic of order 3\"\n"
      "assert trivial(presentation { gens: a, b; rels: [a, b]; }) budget 100\n"
      "assert not(trivial(G))\n");
  REQUIRE(r.assertions.size() == 4);
  CHECK(r.assertions[0].status == Status::Fail);
  CHECK(r.assertions[0].detail == "actual 3");
  CHECK(r.assertions[0].index == 1);
  CHECK(r.assertions[1].status == Status::Pass);
  CHECK(r.assertions[1].citation == "cyclic of order 3");
  CHECK(r.assertions[2].status == Status::Unknown);
  CHECK(r.assertions[3].status == Status::Pass);
  CHECK(r.count(Status::Pass) == 2);
  CHECK(r.exit_code() == 1);
}

TEST_CASE("exit codes") {
  CHECK(run("assert 1 == 1\n").exit_code() == 0);
  CHECK(run("assert 1 == 2\nassert trivial(presentation { gens: a; rels: ; }) budget 10\n").exit_code() == 1);
  CHECK(run("assert trivial(presentation { gens: a; rels: ; }) budget 10\n").exit_code() == 2);
  CHECK(run("assert order(presentation { gens: a; rels: ; }) == 1 budget 10\n").exit_code() == 2);
  CHECK(kExitError == 3);
}

TEST_CASE("unknown never passes") {
  // Budget too small to finish, so the result is Unknown whatever the truth.
  const auto r = run("assert trivial(van_kampen(X_K_complement, Z_complement, psi)) budget 50\n");
  CHECK(r.assertions[0].status == Status::Unknown);
  Config c;
  c.budget = 50;
  CHECK(run("assert trivial(van_kampen(X_K_complement, Z_complement, psi))\n", c).assertions[0].status ==
        Status::Unknown);
  CHECK(run("assert trivial(van_kampen(X_K_complement, Z_complement, psi))\n").assertions[0].status == Status::Pass);
}

TEST_CASE("value semantics") {
  CHECK(run("assert word(\"a*a^-1*b\") == \"b\"\n").exit_code() == 0);
  CHECK(run("assert commutator(\"a\", \"b\") == \"a*b*a^-1*b^-1\"\n").exit_code() == 0);
  CHECK(run("assert abelianize(presentation { gens: a, b; rels: a^6; }) == \"Z/2 + Z/3 + Z\"\n").exit_code() == 0);
  CHECK(run("assert [1, [2, \"x\"]] == [1, [2, \"x\"]]\n").exit_code() == 0);
  CHECK(run("assert matrix([[1, 2], [3, 4]]) == [[1, 2], [3, 4]]\n").exit_code() == 0);
  CHECK(run("assert det(matrix([[1, 2], [3, 4]])) == -2\n").exit_code() == 0);
  CHECK(run("assert characteristic(invariants { name: A, e: 12, sigma: -4, b1: 0 }) == [12, -4, 2]\n").exit_code() ==
        0);
  CHECK(run("let f = glue { a -> b; meridian -> 1 }\nassert show(f) == show(f)\n").exit_code() == 0);
  CHECK_THROWS_AS(run("assert 1 == \"1\"\n"), ScriptError);
  CHECK_THROWS_AS(run("assert 5\n"), ScriptError);
}

TEST_CASE("serialization round trip") {
  const std::vector<std::filesystem::path> files{script_path("theorem_1_1.exo"), script_path("theorem_1_2.exo"),
                                                 std::filesystem::path(EXOTICA_TEST_DATA_DIR) / "bundled.exo"};
  for (const auto& f : files) {
    // Scripts see the bundled names; the bundled file itself only its own lets.
    const ParseOptions opts = f.extension() == ".exo" && f.filename() != "bundled.exo" ? script_parse_options()
                                                                                        : ParseOptions{};
    const auto first = parse_script(slurp(f), f.filename().string(), opts);
    const std::string text = serialize(first);
    const auto second = parse_script(text, "again", opts);
    CHECK_MESSAGE(structurally_equal(first, second), f.string());
    CHECK(serialize(second) == text);
  }
  const auto a = parse("let x = 1\n", "t");
  const auto b = parse("let x = 2\n", "t");
  CHECK_FALSE(structurally_equal(a, b));
}

TEST_CASE("reports are deterministic") {
  const auto s = parse(slurp(script_path("theorem_1_1.exo")), "theorem_1_1.exo");
  Config seq;
  seq.record_timings = false;
  Config par = seq;
  par.parallel_asserts = true;
  const std::string one = execute(s, seq).to_json();
  CHECK(execute(s, seq).to_json() == one);
  CHECK(execute(s, par).to_json() == one);
  CHECK(execute(s, seq).to_text() == execute(s, par).to_text());
}

TEST_CASE("JSON report schema") {
  const auto r = run("assert 1 == 1 cite \"one\"\nassert 1 == 2\n");
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["script"] == "test.exo");
  REQUIRE(j["assertions"].size() == 2);
  const auto& a = j["assertions"][0];
  CHECK(a["index"] == 1);
  CHECK(a["text"] == "assert 1 == 1 cite \"one\"");
  CHECK(a["status"] == "pass");
  CHECK(a["detail"].is_string());
  CHECK(a["citation"] == "one");
  CHECK(a["elapsed_ms"].is_number());
  CHECK(j["assertions"][1]["citation"].is_null());
  CHECK(j["assertions"][1]["status"] == "fail");
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["summary"]["unknown"] == 0);
}

TEST_CASE("theorem scripts pass with every assertion cited") {
  for (const char* name : {"theorem_1_1.exo", "theorem_1_2.exo"}) {
    const auto r = execute(parse(slurp(script_path(name)), name));
    CHECK_MESSAGE(r.exit_code() == 0, name);
    CHECK(r.assertions.size() >= 20);
    for (const auto& a : r.assertions) {
      CHECK_MESSAGE(a.status == Status::Pass, a.text);
      CHECK_MESSAGE(a.citation.has_value(), a.text);
    }
  }
}

TEST_CASE("builtin listing covers every callable name") {
  const auto sigs = builtin_signatures();
  CHECK(sigs.size() >= 60);
  const auto opts = script_parse_options();
  for (const auto& f : opts.functions) {
    bool found = false;
    for (const auto& s : sigs)
      if (s.rfind(f + "(", 0) == 0) found = true;
    CHECK_MESSAGE(found, f);
  }
}
