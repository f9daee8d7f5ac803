#include "exotica/group/tietze.hpp"

#include <algorithm>

#include "exotica/error.hpp"

namespace exotica::group {

Presentation tietze_eliminate(const Presentation& p, const std::string& gen, const Word& defining) {
  if (!p.has_generator(gen)) throw Error("unknown generator '" + gen + "'");
  if (defining.uses(gen)) throw Error("defining word for '" + gen + "' involves it");
  p.check_word(defining);

  const Word target = (Word::generator(gen) * defining.inverse()).cyclically_reduced();
  std::optional<std::size_t> used;
  for (std::size_t i = 0; i < p.relators().size() && !used; ++i) {
    const auto conj = p.relators()[i].cyclic_conjugates();
    if (std::find(conj.begin(), conj.end(), target) != conj.end()) used = i;
  }
  if (!used) throw Error("no relator defines '" + gen + "' as " + defining.to_string());

  std::vector<std::string> gens;
  for (const auto& g : p.generators())
    if (g != gen) gens.push_back(g);
  std::vector<Word> rels;
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    if (i != *used) rels.push_back(p.relators()[i].substitute(gen, defining));
  return Presentation(std::move(gens), std::move(rels));
}

std::optional<Word> find_definition(const Presentation& p, const std::string& gen) {
  for (const auto& r : p.relators()) {
    const Word c = r.cyclically_reduced();
    if (c.occurrences(gen) != 1) continue;
    const auto& ls = c.letters();
    const auto k = static_cast<std::size_t>(
        std::find_if(ls.begin(), ls.end(), [&](const Letter& l) { return l.gen == gen; }) - ls.begin());
    // Rotate so gen^e leads: gen^e * rest = 1.
    std::vector<Letter> rest(ls.begin() + static_cast<std::ptrdiff_t>(k) + 1, ls.end());
    rest.insert(rest.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k));
    const Word w{std::move(rest)};
    return ls[k].sign > 0 ? w.inverse() : w;
  }
  return std::nullopt;
}

namespace {

std::size_t total_length(const Presentation& p) {
  std::size_t n = 0;
  for (const auto& r : p.relators()) n += r.length();
  return n;
}

}  // namespace

// Greedy: eliminate the generator whose removal leaves the shortest relators.
Presentation simplify(const Presentation& p) {
  Presentation cur = p;
  while (true) {
    std::optional<Presentation> best;
    for (const auto& g : cur.generators()) {
      if (auto def = find_definition(cur, g)) {
        Presentation next = tietze_eliminate(cur, g, *def);
        if (!best || total_length(next) < total_length(*best)) best = std::move(next);
      }
    }
    if (!best) return cur;
    cur = std::move(*best);
  }
}

}  // namespace exotica::group
