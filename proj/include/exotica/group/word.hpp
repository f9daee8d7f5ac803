#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace exotica::group {

// A generator symbol raised to +1 or -1.
struct Letter {
  std::string gen;
  int sign = 1;

  Letter inverse() const { return {gen, -sign}; }
  auto operator<=>(const Letter&) const = default;
};

// Freely reduced word in a free group. The empty word is the identity.
class Word {
 public:
  Word() = default;

  // Freely reduces `raw`; cancellation is stack based, so the result does not
  // depend on the order in which adjacent pairs are cancelled.
  explicit Word(std::vector<Letter> raw);

  static Word generator(const std::string& gen, int power = 1);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }

  Word inverse() const;
  Word pow(int n) const;
  Word operator*(const Word& rhs) const;

  // Replaces every occurrence of `gen` by `image` (and gen^-1 by image^-1).
  Word substitute(const std::string& gen, const Word& image) const;
  Word rename(const std::map<std::string, std::string>& names) const;

  int exponent_sum(const std::string& gen) const;
  int occurrences(const std::string& gen) const;
  bool uses(const std::string& gen) const { return occurrences(gen) > 0; }

  // Cyclically reduced conjugate: strips matching first/last letters.
  Word cyclically_reduced() const;
  // All cyclic permutations of the cyclically reduced word and its inverse.
  std::vector<Word> cyclic_conjugates() const;

  // Canonical text: runs grouped with exponents, `*` separated, identity `1`.
  std::string to_string() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// [g, h] = g h g^-1 h^-1
Word commutator(const Word& g, const Word& h);

// Reduces `raw`, rejecting letters whose generator is not in `declared`.
Word reduce(std::span<const Letter> raw, std::span<const std::string> declared);

}  // namespace exotica::group
