#pragma once

#include <span>
#include <string>

#include "exotica/group/coset.hpp"

namespace exotica::group {

// Certificate check for a complete coset table:
//   - every entry is a valid coset,
//   - columns g and g^-1 are mutually inverse permutations,
//   - every relator traced from every coset returns to that coset,
//   - every subgroup generator fixes coset 0.
struct AuditResult {
  bool ok = false;
  std::string failure;  // first failure found (lowest coset), empty when ok
};

// Reference implementation.
AuditResult audit_serial(const CosetTable& table, const Presentation& p,
                         std::span<const Word> subgroup_gens);

// OpenMP over cosets; reports the same failure as audit_serial.
AuditResult audit_parallel(const CosetTable& table, const Presentation& p,
                           std::span<const Word> subgroup_gens);

}  // namespace exotica::group
