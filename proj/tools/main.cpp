#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "exotica/constructions/constructions.hpp"
#include "exotica/dsl/runtime.hpp"

#ifndef EXOTICA_DEFAULT_SCRIPT_DIR
#define EXOTICA_DEFAULT_SCRIPT_DIR "scripts"
#endif

namespace fs = std::filesystem;
using namespace exotica;

namespace {

struct Options {
  std::int64_t budget = group::kDefaultCosetBudget;
  std::string format = "text";
  std::string out;
  bool parallel = false;
  bool no_timings = false;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::Config config_of(const Options& o) {
  dsl::Config c;
  c.budget = o.budget;
  c.parallel_asserts = o.parallel;
  c.record_timings = !o.no_timings;
  return c;
}

// Returns the exit code; prints errors as file:line:col.
int run_one(const fs::path& path, const Options& o, std::string& rendered) {
  const std::string id = path.filename().string();
  try {
    const auto script = dsl::parse(read_file(path), id);
    const auto report = dsl::execute(script, config_of(o));
    rendered += o.format == "json" ? report.to_json() : report.to_text();
    return report.exit_code();
  } catch (const ParseError& e) {
    std::cerr << path.string() << ":" << e.line() << ":" << e.column() << ": parse error: " << e.bare_message()
              << "\n";
  } catch (const dsl::ScriptError& e) {
    std::cerr << path.string() << ":" << e.position().line << ":" << e.position().column
              << ": error: " << e.bare_message() << "\n";
  } catch (const std::exception& e) {
    std::cerr << path.string() << ": error: " << e.what() << "\n";
  }
  return dsl::kExitError;
}

int emit(const std::string& text, const Options& o) {
  if (o.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << o.out << "\n";
    return dsl::kExitError;
  }
  f << text;
  return 0;
}

fs::path script_dir() {
  if (const char* env = std::getenv("EXOTICA_SCRIPT_DIR"); env && *env) return env;
  return EXOTICA_DEFAULT_SCRIPT_DIR;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget", o.budget, "Coset budget for enumerations")->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o.out, "Write the report to FILE");
  cmd->add_flag("--parallel-asserts", o.parallel, "Evaluate assertions concurrently");
  cmd->add_flag("--no-timings", o.no_timings, "Report elapsed_ms as 0");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exotica: verify 4-manifold constructions written as scripts"};
  app.require_subcommand(1);
  Options o;
  std::string script;

  auto* run = app.add_subcommand("run", "Run one script");
  run->add_option("script", script, "Script file (.exo)")->required();
  add_common(run, o);

  auto* all = app.add_subcommand("check-all", "Run every bundled script");
  add_common(all, o);

  auto* functions = app.add_subcommand("functions", "List builtin functions");
  auto* bundled = app.add_subcommand("bundled", "List bundled data items");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dsl::kExitError;
  }

  if (*functions) {
    for (const auto& s : dsl::builtin_signatures()) std::cout << s << "\n";
    return 0;
  }
  if (*bundled) {
    try {
      for (const auto& name : constructions::bundled_names())
        std::cout << name << ": " << constructions::bundled(name).citation << "\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return dsl::kExitError;
    }
    return 0;
  }

  std::string rendered;
  int code = 0;
  if (*run) {
    code = run_one(script, o, rendered);
  } else {
    std::vector<fs::path> scripts;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(script_dir(), ec))
      if (entry.path().extension() == ".exo") scripts.push_back(entry.path());
    if (ec || scripts.empty()) {
      std::cerr << "no scripts found in " << script_dir().string() << "\n";
      return dsl::kExitError;
    }
    std::sort(scripts.begin(), scripts.end());
    if (o.format == "json") rendered += "[\n";
    for (std::size_t i = 0; i < scripts.size(); ++i) {
      std::string one;
      code = std::max(code, run_one(scripts[i], o, one));
      if (o.format == "json") {
        rendered += one.empty() ? "null" : one.substr(0, one.size() - 1);
        rendered += i + 1 < scripts.size() ? ",\n" : "\n";
      } else {
        rendered += one;
      }
    }
    if (o.format == "json") rendered += "]\n";
  }
  if (const int e = emit(rendered, o)) return e;
  return code;
}
