#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exotica/group/presentation.hpp"
#include "exotica/matrix.hpp"

namespace exotica::group {

// Nonzero diagonal of the Smith normal form, d1 | d2 | ... | dk, all positive.
struct SmithForm {
  std::vector<std::int64_t> invariant_factors;
  std::size_t rank_deficiency = 0;  // zero entries on the min(rows, cols) diagonal

  std::size_t rank() const noexcept { return invariant_factors.size(); }
  bool operator==(const SmithForm&) const = default;
};

// Pivot: smallest nonzero absolute value in the active block, row-major tie-break.
SmithForm smith_normal_form(IntMatrix m);

// Z^free_rank + Z/t1 + ... with t1 | t2 | ... and every ti > 1.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;

  bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  // "0", "Z", "Z^2", "Z/2", "Z + Z/3 + Z/6", ...
  std::string to_string() const;
  bool operator==(const AbelianGroup&) const = default;
};

// Parses the form produced by AbelianGroup::to_string. Unsorted or
// non-canonical sums such as "Z/2 + Z + Z/3" are accepted and normalized.
AbelianGroup parse_abelian_group(const std::string& text);

// Rows = relators, columns = generators, entries = exponent sums.
IntMatrix relation_matrix(const Presentation& p);

std::vector<std::int64_t> exponent_vector(const Word& w, const std::vector<std::string>& generators);

AbelianGroup abelianize(const Presentation& p);

}  // namespace exotica::group
