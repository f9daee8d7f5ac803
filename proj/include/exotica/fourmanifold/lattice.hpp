#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "exotica/matrix.hpp"

namespace exotica::fourmanifold {

using ClassVector = std::vector<std::int64_t>;

// Integral second homology with its intersection form in a named basis.
class IntersectionLattice {
 public:
  IntersectionLattice(std::vector<std::string> basis, IntMatrix gram);

  const std::vector<std::string>& basis() const noexcept { return basis_; }
  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return basis_.size(); }

  // Linear combination such as "2U + S - E1 - E2".
  ClassVector parse_class(std::string_view text) const;
  std::string format_class(const ClassVector& v) const;

  std::int64_t pairing(const ClassVector& x, const ClassVector& y) const;
  std::int64_t square(const ClassVector& x) const { return pairing(x, x); }

 private:
  std::vector<std::string> basis_;
  IntMatrix gram_;
};

// Orthogonal sum: block-diagonal Gram matrix, bases concatenated.
IntersectionLattice orthogonal_sum(const IntersectionLattice& a, const IntersectionLattice& b);

// <x, y> with x.x = y.y = 0 and x.y = 1.
IntersectionLattice hyperbolic(const std::string& x, const std::string& y);

// n copies of <-1> (or <+1>) with the given names.
IntersectionLattice diagonal(const std::vector<std::string>& names, std::int64_t square);

// Genus of an embedded symplectic curve in class C from the adjunction
// equality: 1 + (K.C + C.C) / 2. Throws when K.C + C.C is odd.
std::int64_t adjunction_genus(const IntersectionLattice& l, const ClassVector& c, const ClassVector& k);

}  // namespace exotica::fourmanifold
