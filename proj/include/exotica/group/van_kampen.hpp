#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "exotica/group/presentation.hpp"

namespace exotica::group {

// Fundamental group of a surface-bundle boundary side: the complement's
// presentation, the images of the 2g surface generators, and the meridian.
struct BoundaryData {
  Presentation presentation;
  std::vector<Word> surface_images;
  Word meridian;

  std::size_t genus() const noexcept { return surface_images.size() / 2; }
  void validate() const;  // throws on foreign generators or odd image count
};

using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

// pi1 of the fiber sum. Generators of `b` that collide with those of `a` are
// renamed with a numeric suffix. Relators: both relator sets, one
// identification image_a[i] * image_b[j]^-1 per matched pair, the meridian
// identification m_a * m_b^-1, and when `kill_meridians` is set both
// meridians as relators.
Presentation van_kampen_fiber_sum(const BoundaryData& a, const BoundaryData& b,
                                  const Matching& matching, bool kill_meridians);

}  // namespace exotica::group
