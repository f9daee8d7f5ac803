#include "exotica/group/van_kampen.hpp"

#include <map>
#include <set>

#include "exotica/error.hpp"

namespace exotica::group {

void BoundaryData::validate() const {
  if (surface_images.size() % 2 != 0) throw Error("surface image count must be even (2g)");
  for (const auto& w : surface_images) presentation.check_word(w);
  presentation.check_word(meridian);
}

Presentation van_kampen_fiber_sum(const BoundaryData& a, const BoundaryData& b,
                                  const Matching& matching, bool kill_meridians) {
  a.validate();
  b.validate();
  if (a.surface_images.size() != b.surface_images.size())
    throw Error("genus mismatch: " + std::to_string(a.genus()) + " vs " + std::to_string(b.genus()));
  const std::size_t n = a.surface_images.size();
  if (matching.size() != n) throw Error("matching must pair every surface generator");
  std::set<std::size_t> seen_a, seen_b;
  for (const auto& [i, j] : matching) {
    if (i >= n || j >= n) throw Error("matching index out of range");
    if (!seen_a.insert(i).second || !seen_b.insert(j).second) throw Error("matching is not a bijection");
  }

  std::set<std::string> taken(a.presentation.generators().begin(), a.presentation.generators().end());
  std::map<std::string, std::string> rename;
  std::vector<std::string> gens = a.presentation.generators();
  for (const auto& g : b.presentation.generators()) {
    std::string fresh = g;
    for (int k = 2; taken.count(fresh) != 0; ++k) fresh = g + "_" + std::to_string(k);
    taken.insert(fresh);
    if (fresh != g) rename[g] = fresh;
    gens.push_back(fresh);
  }

  std::vector<Word> rels = a.presentation.relators();
  for (const auto& r : b.presentation.relators()) rels.push_back(r.rename(rename));
  for (const auto& [i, j] : matching)
    rels.push_back(a.surface_images[i] * b.surface_images[j].rename(rename).inverse());
  const Word mb = b.meridian.rename(rename);
  rels.push_back(a.meridian * mb.inverse());
  if (kill_meridians) {
    rels.push_back(a.meridian);
    rels.push_back(mb);
  }
  return Presentation(std::move(gens), std::move(rels));
}

}  // namespace exotica::group
