#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "exotica/fourmanifold/invariants.hpp"

namespace exotica::fourmanifold {

// Hypotheses of the minimality theorem for a symplectic fiber sum Z = A #_F B.
struct FiberSumDescription {
  std::string result;
  std::string first;
  std::string second;
  // Case (i): a summand complement contains a symplectic -1 sphere disjoint
  // from the gluing surface.
  bool first_has_disjoint_exceptional_sphere = false;
  bool second_has_disjoint_exceptional_sphere = false;
  // Case (ii): name of a summand that is an S2-bundle with the gluing
  // surface as a section.
  std::optional<std::string> sphere_bundle_summand;
};

enum class MinimalityKind { Minimal, NotMinimal, ConditionallyMinimal };

struct MinimalityVerdict {
  MinimalityKind kind = MinimalityKind::Minimal;
  std::string depends_on;  // the other summand, for ConditionallyMinimal
  std::string reason;
};

MinimalityVerdict usher_minimality(const FiberSumDescription& d);
std::string to_string(MinimalityKind k);

// Premise-gated declarations that no arithmetic can establish.
struct DeclaredProperty {
  enum class Kind { PositiveScalarCurvature, RationalOrRuled };
  Kind kind;
  std::string manifold;
};

using DeductionFact = std::variant<InvariantRecord, FiberSumDescription, DeclaredProperty>;

struct DeductionStep {
  std::string rule;
  std::vector<std::string> premises;
  std::string conclusion;
};

// Forward-chained conclusions. Atoms are strings such as
// "homeomorphic(X, 3CP2 # 7CP2bar)" or "minimal(X)".
class DeductionReport {
 public:
  const std::vector<DeductionStep>& steps() const noexcept { return steps_; }
  const std::set<std::string>& atoms() const noexcept { return atoms_; }
  bool holds(const std::string& atom) const { return atoms_.count(atom) != 0; }

  // Rules cited on the way to `atom` (its own step first, then premises).
  std::vector<std::string> rules_for(const std::string& atom) const;
  // "exotic", "not diffeomorphic", "homeomorphic", or "no conclusion".
  std::string verdict(const std::string& x, const std::string& n) const;

  std::string to_text() const;

 private:
  friend class DeductionEngine;
  bool add(DeductionStep step);

  std::vector<DeductionStep> steps_;
  std::set<std::string> atoms_;
};

// Rules:
//  R1 symplectic, b2+ > 1                      -> sw_nontrivial
//  R2 standard p CP2 # q CP2bar, p >= 2        -> sw_trivial
//  R3 both simply connected, same (b2+, b2-, parity) with the second standard
//                                              -> homeomorphic
//  R4 sw_nontrivial(X), sw_trivial(N)          -> not_diffeomorphic(X, N)
//  R5 fiber-sum minimality (cases i/ii/iii)    -> minimal / not_minimal
//  R6 minimal, symplectic, simply connected    -> irreducible
//  R7 irreducible(X), N standard with p + q >= 2, q >= 1
//                                              -> not_diffeomorphic(X, N)
//  R8 b2+ = 1, minimal, declared psc           <-> rational_or_ruled
//  V  homeomorphic and not_diffeomorphic       -> exotic
// Facts are sorted by name before chaining. Throws on contradictions
// (sw_trivial with sw_nontrivial, minimal with not_minimal) or on facts that
// name unknown manifolds.
DeductionReport deduce(std::vector<DeductionFact> facts);

}  // namespace exotica::fourmanifold
