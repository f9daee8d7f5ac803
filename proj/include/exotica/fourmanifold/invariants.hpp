#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace exotica::fourmanifold {

enum class Parity { Odd, Even, Unknown };

enum class Flag { SimplyConnected, Symplectic, Minimal, Irreducible, SWNontrivial, SWTrivial, Standard };

std::string to_string(Parity p);
std::string to_string(Flag f);
Parity parse_parity(std::string_view s);
Flag parse_flag(std::string_view s);

// Characteristic numbers of a closed oriented 4-manifold.
//
// e and sigma are stored; c1sq = 3 sigma + 2 e and chi_h = (e + sigma) / 4 are
// derived from them, so the two bookkeeping formulas can never disagree. b1 is
// "pending" (nullopt) after cut-and-paste operations until the fundamental
// group computation supplies it.
class InvariantRecord {
 public:
  InvariantRecord() = default;
  InvariantRecord(std::string name, std::int64_t e, std::int64_t sigma, std::optional<std::int64_t> b1,
                  Parity parity = Parity::Unknown, std::set<Flag> flags = {});

  // From (c1sq, sigma, chi_h): e = 4 chi_h - sigma. Throws if an explicit e
  // disagrees.
  static InvariantRecord from_characteristic_numbers(std::string name, std::int64_t c1sq,
                                                     std::int64_t sigma, std::int64_t chi_h,
                                                     std::optional<std::int64_t> b1);

  const std::string& name() const noexcept { return name_; }
  std::int64_t euler() const noexcept { return e_; }
  std::int64_t signature() const noexcept { return sigma_; }
  std::optional<std::int64_t> b1() const noexcept { return b1_; }
  std::int64_t c1sq() const noexcept { return 3 * sigma_ + 2 * e_; }
  // Defined when e + sigma is divisible by 4.
  std::optional<std::int64_t> chi_h() const noexcept;
  // Throw while b1 is pending.
  std::int64_t b2_plus() const;
  std::int64_t b2_minus() const;

  Parity parity() const noexcept { return parity_; }
  const std::set<Flag>& flags() const noexcept { return flags_; }
  bool has(Flag f) const { return flags_.count(f) != 0; }

  InvariantRecord renamed(std::string name) const;
  InvariantRecord with_b1(std::int64_t b1) const;
  InvariantRecord with_parity(Parity p) const;
  InvariantRecord with_flag(Flag f) const;
  InvariantRecord without_flag(Flag f) const;

  // Throws if the record violates Betti-number constraints or claims to be
  // simply connected and symplectic with non-integral chi_h.
  void validate() const;

  // `name: "X", e: 12, sigma: -4, b1: 0, c1sq: 12, chi_h: 2, parity: odd, flags: [symplectic]`
  std::string to_block() const;

  bool operator==(const InvariantRecord&) const = default;

 private:
  std::string name_;
  std::int64_t e_ = 0;
  std::int64_t sigma_ = 0;
  std::optional<std::int64_t> b1_;
  Parity parity_ = Parity::Unknown;
  std::set<Flag> flags_;
};

// Parses the body of an `invariants { ... }` block. Keys: name, e, sigma,
// c1sq, chi_h, b1, parity, flags. Either e or chi_h must determine the Euler
// characteristic; every redundant key given is cross-checked.
InvariantRecord parse_record(std::string_view body, int line = 1, int column = 1);

// Catalog: S4, CP2, CP2bar, S2xS2, T2xS2, and "p CP2 # q CP2bar" sums
// ("3CP2 # 7CP2bar", "CP2 # 5CP2bar", "2CP2", ...).
InvariantRecord standard(std::string_view name);

// Connected sum with n copies of CP2bar.
InvariantRecord blow_up(const InvariantRecord& a, std::int64_t n);

// Generalized fiber sum along a genus-g surface of square zero:
// e = e_A + e_B - 2(2 - 2g), sigma adds. b1 becomes pending; the result is
// symplectic when both summands are.
InvariantRecord fiber_sum(const InvariantRecord& a, const InvariantRecord& b, std::int64_t genus);

InvariantRecord connected_sum(const InvariantRecord& a, const InvariantRecord& b);

// Homeomorphism type of a simply connected manifold with odd (or empty)
// intersection form: "3CP2 # 7CP2bar", "CP2", "S4", ...
std::string freedman_type(const InvariantRecord& a);

std::string standard_sum_name(std::int64_t p, std::int64_t q);

}  // namespace exotica::fourmanifold
