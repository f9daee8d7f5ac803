#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "exotica/group/presentation.hpp"

namespace exotica::group {

inline constexpr std::int64_t kDefaultCosetBudget = 200000;

enum class CosetStatus { Complete, Exhausted };

// Result of a Todd-Coxeter run.
//
// When Complete, rows are the live cosets renumbered in breadth-first order
// from the subgroup coset 0, and column 2*g (2*g + 1) holds the action of
// generator g (its inverse). When Exhausted the action is empty and nothing
// can be concluded about the index.
class CosetTable {
 public:
  CosetTable(CosetStatus status, std::int64_t budget, std::int64_t defined,
             std::vector<std::string> generators, std::vector<std::int32_t> action);

  CosetStatus status() const noexcept { return status_; }
  bool complete() const noexcept { return status_ == CosetStatus::Complete; }
  std::int64_t index() const noexcept;  // 0 when exhausted
  std::int64_t budget() const noexcept { return budget_; }
  std::int64_t cosets_defined() const noexcept { return defined_; }

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  std::size_t columns() const noexcept { return 2 * generators_.size(); }
  const std::vector<std::int32_t>& action() const noexcept { return action_; }

  std::int32_t image(std::int32_t coset, std::size_t column) const {
    return action_[static_cast<std::size_t>(coset) * columns() + column];
  }
  // Follows `w` from `coset`; -1 if it leaves the table.
  std::int32_t trace(std::int32_t coset, const Word& w) const;

 private:
  CosetStatus status_;
  std::int64_t budget_;
  std::int64_t defined_;
  std::vector<std::string> generators_;
  std::vector<std::int32_t> action_;
};

// HLT enumeration: every live coset in definition order is scanned against
// every relator (filling gaps with new cosets), then its row is completed.
// Coincidences are processed eagerly. `budget` bounds the total number of
// cosets ever defined. Throws on budget < 1 or foreign subgroup generators.
CosetTable coset_enumerate(const Presentation& p, std::span<const Word> subgroup_gens,
                           std::int64_t budget = kDefaultCosetBudget);

enum class Triviality { Trivial, Finite, Unknown };

struct TrivialityResult {
  Triviality kind = Triviality::Unknown;
  std::int64_t order = 0;  // group order for Trivial (1) and Finite
  std::int64_t cosets_defined = 0;
};

// Enumerates over the trivial subgroup. Trivial and Finite are only reported
// for complete tables that pass the certificate audit.
TrivialityResult is_trivial(const Presentation& p, std::int64_t budget = kDefaultCosetBudget);

std::string to_string(Triviality t);

}  // namespace exotica::group
