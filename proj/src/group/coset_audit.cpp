#include "exotica/group/coset_audit.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace exotica::group {

namespace {

struct Compiled {
  std::vector<std::vector<int>> relators;
  std::vector<std::vector<int>> subgroup;
  bool foreign = false;
};

std::vector<int> compile(const Word& w, const CosetTable& t, bool& foreign) {
  std::vector<int> cols;
  for (const auto& l : w.letters()) {
    std::size_t g = 0;
    while (g < t.generators().size() && t.generators()[g] != l.gen) ++g;
    if (g == t.generators().size()) {
      foreign = true;
      return {};
    }
    cols.push_back(static_cast<int>(2 * g + (l.sign > 0 ? 0 : 1)));
  }
  return cols;
}

Compiled compile_all(const CosetTable& t, const Presentation& p, std::span<const Word> subgroup) {
  Compiled c;
  for (const auto& r : p.relators()) c.relators.push_back(compile(r, t, c.foreign));
  for (const auto& w : subgroup) c.subgroup.push_back(compile(w, t, c.foreign));
  return c;
}

// Empty string when coset `c` passes every local check.
std::string check_coset(const CosetTable& t, const Compiled& c, std::int32_t coset) {
  const auto n = static_cast<std::int32_t>(t.index());
  const std::size_t ncols = t.columns();
  for (std::size_t x = 0; x < ncols; ++x) {
    const std::int32_t d = t.image(coset, x);
    if (d < 0 || d >= n)
      return "coset " + std::to_string(coset) + ": undefined entry in column " + std::to_string(x);
    if (t.image(d, x ^ 1u) != coset)
      return "coset " + std::to_string(coset) + ": column " + std::to_string(x) +
             " not inverted by its partner";
  }
  for (std::size_t r = 0; r < c.relators.size(); ++r) {
    std::int32_t cur = coset;
    for (int x : c.relators[r]) cur = t.image(cur, static_cast<std::size_t>(x));
    if (cur != coset)
      return "coset " + std::to_string(coset) + ": relator " + std::to_string(r) + " does not close";
  }
  return {};
}

std::string precheck(const CosetTable& t, const Compiled& c) {
  if (!t.complete()) return "table is not complete";
  if (c.foreign) return "word uses a generator absent from the table";
  if (t.action().size() != static_cast<std::size_t>(t.index()) * t.columns()) return "malformed action";
  for (std::size_t s = 0; s < c.subgroup.size(); ++s) {
    std::int32_t cur = 0;
    for (int x : c.subgroup[s]) cur = t.image(cur, static_cast<std::size_t>(x));
    if (cur != 0) return "subgroup generator " + std::to_string(s) + " does not fix coset 0";
  }
  return {};
}

}  // namespace

AuditResult audit_serial(const CosetTable& table, const Presentation& p,
                         std::span<const Word> subgroup_gens) {
  const Compiled c = compile_all(table, p, subgroup_gens);
  if (auto f = precheck(table, c); !f.empty()) return {false, f};
  const auto n = static_cast<std::int32_t>(table.index());
  for (std::int32_t coset = 0; coset < n; ++coset)
    if (auto f = check_coset(table, c, coset); !f.empty()) return {false, f};
  return {true, {}};
}

AuditResult audit_parallel(const CosetTable& table, const Presentation& p,
                           std::span<const Word> subgroup_gens) {
  const Compiled c = compile_all(table, p, subgroup_gens);
  if (auto f = precheck(table, c); !f.empty()) return {false, f};
  const auto n = static_cast<std::int32_t>(table.index());

  // Lowest failing coset, so the report matches the serial scan.
  std::int32_t first_bad = std::numeric_limits<std::int32_t>::max();
#pragma omp parallel for schedule(static) reduction(min : first_bad)
  for (std::int32_t coset = 0; coset < n; ++coset) {
    if (coset < first_bad && !check_coset(table, c, coset).empty()) first_bad = coset;
  }
  if (first_bad == std::numeric_limits<std::int32_t>::max()) return {true, {}};
  return {false, check_coset(table, c, first_bad)};
}

}  // namespace exotica::group
