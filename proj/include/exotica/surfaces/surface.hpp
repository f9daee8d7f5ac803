#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "exotica/group/presentation.hpp"
#include "exotica/matrix.hpp"

namespace exotica::surfaces {

// First homology of a closed genus-g surface in the basis a1, b1, ..., ag, bg
// with the standard symplectic pairing <a_i, b_i> = 1.
class SurfaceHomology {
 public:
  explicit SurfaceHomology(int genus);

  int genus() const noexcept { return genus_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(2 * genus_); }
  const std::vector<std::string>& basis() const noexcept { return basis_; }
  const IntMatrix& pairing_matrix() const noexcept { return pairing_; }

  std::int64_t pairing(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;

 private:
  int genus_;
  std::vector<std::string> basis_;
  IntMatrix pairing_;
};

// Integer coefficients in the surface basis.
struct HomologyClass {
  std::vector<std::int64_t> coefficients;
  bool operator==(const HomologyClass&) const = default;
};

// Curves of a product of Dehn twists written left to right.
struct TwistSequence {
  std::vector<HomologyClass> curves;
};

HomologyClass class_of_word(const group::Word& w, const SurfaceHomology& s);

// x -> x + <x, c> c
IntMatrix transvection(const HomologyClass& c, const SurfaceHomology& s);

// T(c1) * T(c2) * ... * T(cn): the rightmost twist acts first.
IntMatrix compose(const TwistSequence& seq, const SurfaceHomology& s);

// True when M^T J M = J.
bool preserves_pairing(const IntMatrix& m, const SurfaceHomology& s);

// prod [a_i, b_i]
group::Word surface_relator(int genus);

// <a1, b1, ..., ag, bg | prod [a_i, b_i], cycles...>
group::Presentation lefschetz_pi1(int genus, std::span<const group::Word> cycles);

}  // namespace exotica::surfaces
