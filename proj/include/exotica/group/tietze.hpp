#pragma once

#include <optional>
#include <string>

#include "exotica/group/presentation.hpp"

namespace exotica::group {

// Removes `gen`, which must be defined by some relator equal, up to cyclic
// permutation and inversion, to gen * defining^-1 (with `defining` free of
// gen). That relator is dropped and gen is substituted everywhere else.
Presentation tietze_eliminate(const Presentation& p, const std::string& gen, const Word& defining);

// A word w with gen = w, read off the first relator in which gen occurs
// exactly once.
std::optional<Word> find_definition(const Presentation& p, const std::string& gen);

// Repeatedly eliminates the generator with the shortest available definition
// until none is left. The abelianization is unchanged.
Presentation simplify(const Presentation& p);

}  // namespace exotica::group
