#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "exotica/constructions/constructions.hpp"
#include "exotica/group/coset.hpp"
#include "exotica/group/coset_audit.hpp"

using namespace exotica;
using namespace exotica::group;

namespace {

// Coxeter presentation of the symmetric group S_n.
Presentation symmetric(int n) {
  std::string gens, rels;
  for (int i = 1; i < n; ++i) {
    gens += (i > 1 ? ", s" : "s") + std::to_string(i);
    rels += (i > 1 ? ", s" : "s") + std::to_string(i) + "^2";
  }
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::string si = "s" + std::to_string(i), sj = "s" + std::to_string(j);
      rels += ", (" + si + "*" + sj + ")^" + (j == i + 1 ? "3" : "2");
    }
  return parse_presentation("gens: " + gens + "; rels: " + rels + ";");
}

struct Case {
  Presentation p;
  CosetTable table;
};

const Case& symmetric_case(int n) {
  static std::map<int, Case> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto p = symmetric(n);
    auto t = coset_enumerate(p, {}, 2000000);
    it = cache.emplace(n, Case{std::move(p), std::move(t)}).first;
  }
  return it->second;
}

void BM_AuditSerial(benchmark::State& state) {
  const auto& c = symmetric_case(static_cast<int>(state.range(0)));
  if (!c.table.complete()) state.SkipWithError("enumeration incomplete");
  for (auto _ : state) benchmark::DoNotOptimize(audit_serial(c.table, c.p, {}));
  state.counters["cosets"] = static_cast<double>(c.table.index());
}

void BM_AuditParallel(benchmark::State& state) {
  const auto& c = symmetric_case(static_cast<int>(state.range(0)));
  if (!c.table.complete()) state.SkipWithError("enumeration incomplete");
  for (auto _ : state) benchmark::DoNotOptimize(audit_parallel(c.table, c.p, {}));
  state.counters["cosets"] = static_cast<double>(c.table.index());
}

void BM_Enumerate(benchmark::State& state) {
  const auto p = symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(coset_enumerate(p, {}, 2000000));
}

void BM_CertifyX(benchmark::State& state) {
  using namespace exotica::constructions;
  const auto p = glue(std::get<BoundaryData>(bundled("X_K_complement").value),
                      std::get<BoundaryData>(bundled("Z_complement").value),
                      std::get<GluingMap>(bundled("psi").value));
  for (auto _ : state) {
    const auto t = coset_enumerate(p, {});
    benchmark::DoNotOptimize(audit_parallel(t, p, {}));
  }
}

}  // namespace

BENCHMARK(BM_AuditSerial)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AuditParallel)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyX)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
