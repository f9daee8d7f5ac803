#include "exotica/fourmanifold/deduction.hpp"

#include <algorithm>
#include <map>

#include "exotica/error.hpp"

namespace exotica::fourmanifold {

MinimalityVerdict usher_minimality(const FiberSumDescription& d) {
  const bool case_i = d.first_has_disjoint_exceptional_sphere || d.second_has_disjoint_exceptional_sphere;
  if (d.sphere_bundle_summand && *d.sphere_bundle_summand != d.first && *d.sphere_bundle_summand != d.second)
    throw Error("sphere-bundle summand '" + *d.sphere_bundle_summand + "' is not a summand of " + d.result);
  if (case_i && d.sphere_bundle_summand)
    throw Error("contradictory fiber-sum description for " + d.result +
                ": both a disjoint -1 sphere and a sphere-bundle summand declared");
  if (case_i) return {MinimalityKind::NotMinimal, {}, "case (i): a summand complement contains a disjoint -1 sphere"};
  if (d.sphere_bundle_summand) {
    const std::string other = *d.sphere_bundle_summand == d.first ? d.second : d.first;
    return {MinimalityKind::ConditionallyMinimal, other,
            "case (ii): " + *d.sphere_bundle_summand + " is an S2-bundle with the surface as a section"};
  }
  return {MinimalityKind::Minimal, {}, "case (iii): no disjoint -1 sphere and no sphere-bundle summand"};
}

std::string to_string(MinimalityKind k) {
  switch (k) {
    case MinimalityKind::Minimal:
      return "minimal";
    case MinimalityKind::NotMinimal:
      return "not minimal";
    case MinimalityKind::ConditionallyMinimal:
      break;
  }
  return "conditionally minimal";
}

namespace {

std::string atom(const std::string& pred, const std::string& x) { return pred + "(" + x + ")"; }
std::string atom(const std::string& pred, const std::string& x, const std::string& y) {
  return pred + "(" + x + ", " + y + ")";
}

std::string fact_name(const DeductionFact& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InvariantRecord>) return v.name();
        if constexpr (std::is_same_v<T, FiberSumDescription>) return v.result;
        if constexpr (std::is_same_v<T, DeclaredProperty>) return v.manifold;
      },
      f);
}

}  // namespace

bool DeductionReport::add(DeductionStep step) {
  if (!atoms_.insert(step.conclusion).second) return false;
  steps_.push_back(std::move(step));
  return true;
}

std::vector<std::string> DeductionReport::rules_for(const std::string& target) const {
  std::vector<std::string> out;
  std::vector<std::string> todo{target};
  std::set<std::string> visited;
  while (!todo.empty()) {
    const std::string a = todo.front();
    todo.erase(todo.begin());
    if (!visited.insert(a).second) continue;
    auto it = std::find_if(steps_.begin(), steps_.end(), [&](const DeductionStep& s) { return s.conclusion == a; });
    if (it == steps_.end()) continue;
    if (it->rule != "given" && std::find(out.begin(), out.end(), it->rule) == out.end()) out.push_back(it->rule);
    for (const auto& p : it->premises) todo.push_back(p);
  }
  return out;
}

std::string DeductionReport::verdict(const std::string& x, const std::string& n) const {
  if (holds(atom("exotic", x, n))) return "exotic";
  if (holds(atom("not_diffeomorphic", x, n))) return "not diffeomorphic";
  if (holds(atom("homeomorphic", x, n))) return "homeomorphic";
  return "no conclusion";
}

std::string DeductionReport::to_text() const {
  std::string out;
  for (const auto& s : steps_) {
    if (s.rule == "given") continue;
    out += "[" + s.rule + "] ";
    for (std::size_t i = 0; i < s.premises.size(); ++i) out += (i ? ", " : "") + s.premises[i];
    out += " => " + s.conclusion + "\n";
  }
  return out;
}

class DeductionEngine {
 public:
  explicit DeductionEngine(std::vector<DeductionFact> facts) {
    std::stable_sort(facts.begin(), facts.end(), [](const DeductionFact& a, const DeductionFact& b) {
      if (a.index() != b.index()) return a.index() < b.index();
      return fact_name(a) < fact_name(b);
    });
    for (auto& f : facts) {
      if (auto* r = std::get_if<InvariantRecord>(&f)) {
        r->validate();
        if (records_.count(r->name()) && !(records_.at(r->name()) == *r))
          throw Error("two different records named '" + r->name() + "'");
        records_.emplace(r->name(), *r);
      } else if (auto* d = std::get_if<FiberSumDescription>(&f)) {
        sums_.push_back(*d);
      } else {
        decls_.push_back(std::get<DeclaredProperty>(f));
      }
    }
    for (const auto& d : decls_)
      if (!records_.count(d.manifold)) throw Error("declaration names unknown manifold '" + d.manifold + "'");
  }

  DeductionReport run() {
    for (const auto& [name, r] : records_) {
      for (auto flag : r.flags()) give(atom(to_string(flag), name));
    }
    for (const auto& d : decls_)
      give(atom(d.kind == DeclaredProperty::Kind::PositiveScalarCurvature ? "psc" : "rational_or_ruled", d.manifold));
    while (round()) {
    }
    return std::move(report_);
  }

 private:
  void give(const std::string& a) { conclude({"given", {"declared"}, a}); }

  bool conclude(DeductionStep step) {
    if (!report_.add(std::move(step))) return false;
    check_contradictions();
    return true;
  }

  void check_contradictions() const {
    for (const auto& [name, r] : records_) {
      if (holds(atom("sw_trivial", name)) && holds(atom("sw_nontrivial", name)))
        throw Error("contradictory facts: '" + name + "' has both trivial and nontrivial SW invariants");
      if (holds(atom("minimal", name)) && holds(atom("not_minimal", name)))
        throw Error("contradictory facts: '" + name + "' is both minimal and not minimal");
    }
    for (const auto& s : sums_)
      if (holds(atom("minimal", s.result)) && holds(atom("not_minimal", s.result)))
        throw Error("contradictory facts: '" + s.result + "' is both minimal and not minimal");
  }

  bool holds(const std::string& a) const { return report_.holds(a); }

  static std::optional<std::int64_t> b2p(const InvariantRecord& r) {
    if (!r.b1()) return std::nullopt;
    return r.b2_plus();
  }

  static std::string b2_premise(const InvariantRecord& r) {
    return "b2+(" + r.name() + ") = " + std::to_string(r.b2_plus());
  }

  static bool standard_sum(const InvariantRecord& n) {
    return n.has(Flag::Standard) && n.has(Flag::SimplyConnected) && n.parity() == Parity::Odd && n.b1() == 0;
  }

  bool round() {
    bool changed = false;
    for (const auto& [x, r] : records_) {
      const auto p = b2p(r);
      // R1
      if (holds(atom("symplectic", x)) && p && *p > 1)
        changed |= conclude({"R1 Taubes", {atom("symplectic", x), b2_premise(r)}, atom("sw_nontrivial", x)});
      // R2
      if (standard_sum(r) && p && *p >= 2)
        changed |= conclude({"R2 connected-sum vanishing", {atom("standard", x), b2_premise(r)},
                             atom("sw_trivial", x)});
    }
    // R3
    for (const auto& [x, rx] : records_)
      for (const auto& [n, rn] : records_) {
        if (x == n || !rn.has(Flag::Standard)) continue;
        if (!holds(atom("simply_connected", x)) || !holds(atom("simply_connected", n))) continue;
        if (rx.parity() == Parity::Unknown || rx.parity() != rn.parity() || !rx.b1() || !rn.b1()) continue;
        if (rx.b2_plus() != rn.b2_plus() || rx.b2_minus() != rn.b2_minus()) continue;
        const std::string form = "(b2+, b2-, parity) = (" + std::to_string(rx.b2_plus()) + ", " +
                                 std::to_string(rx.b2_minus()) + ", " + to_string(rx.parity()) + ")";
        changed |= conclude({"R3 Freedman",
                             {atom("simply_connected", x), atom("simply_connected", n), form},
                             atom("homeomorphic", x, n)});
      }
    // R4
    for (const auto& [x, rx] : records_)
      for (const auto& [n, rn] : records_)
        if (x != n && holds(atom("sw_nontrivial", x)) && holds(atom("sw_trivial", n)))
          changed |= conclude({"R4 SW distinguishes", {atom("sw_nontrivial", x), atom("sw_trivial", n)},
                               atom("not_diffeomorphic", x, n)});
    // R5
    for (const auto& s : sums_) {
      const auto v = usher_minimality(s);
      const std::string sum = "fiber_sum(" + s.result + " = " + s.first + " # " + s.second + ")";
      if (v.kind == MinimalityKind::Minimal)
        changed |= conclude({"R5 Usher", {sum, v.reason}, atom("minimal", s.result)});
      else if (v.kind == MinimalityKind::NotMinimal)
        changed |= conclude({"R5 Usher", {sum, v.reason}, atom("not_minimal", s.result)});
      else if (holds(atom("minimal", v.depends_on)))
        changed |= conclude({"R5 Usher", {sum, v.reason, atom("minimal", v.depends_on)}, atom("minimal", s.result)});
      else if (holds(atom("not_minimal", v.depends_on)))
        changed |= conclude(
            {"R5 Usher", {sum, v.reason, atom("not_minimal", v.depends_on)}, atom("not_minimal", s.result)});
    }
    for (const auto& [x, r] : records_) {
      const auto p = b2p(r);
      // R6
      if (holds(atom("minimal", x)) && holds(atom("symplectic", x)) && holds(atom("simply_connected", x)) && p &&
          *p >= 1) {
        const std::string rule = *p > 1 ? "R6 minimal symplectic is irreducible (b2+ > 1)"
                                        : "R6 minimal symplectic is irreducible (b2+ = 1)";
        changed |= conclude({rule, {atom("minimal", x), atom("symplectic", x), atom("simply_connected", x), b2_premise(r)},
                             atom("irreducible", x)});
      }
      // R8
      if (p && *p == 1 && holds(atom("minimal", x))) {
        if (holds(atom("psc", x)))
          changed |= conclude({"R8 Liu / Ohta-Ono", {atom("minimal", x), b2_premise(r), atom("psc", x)},
                               atom("rational_or_ruled", x)});
        if (holds(atom("rational_or_ruled", x)))
          changed |= conclude({"R8 Liu / Ohta-Ono", {atom("minimal", x), b2_premise(r), atom("rational_or_ruled", x)},
                               atom("psc", x)});
      }
    }
    // R7
    for (const auto& [x, rx] : records_)
      for (const auto& [n, rn] : records_) {
        if (x == n || !holds(atom("irreducible", x)) || !standard_sum(rn)) continue;
        const std::int64_t p = rn.b2_plus();
        const std::int64_t q = rn.b2_minus();
        if (q < 1 || p + q < 2) continue;
        changed |= conclude({"R7 irreducible vs blown-up standard",
                             {atom("irreducible", x), atom("standard", n),
                              "(b2+, b2-)(" + n + ") = (" + std::to_string(p) + ", " + std::to_string(q) + ")"},
                             atom("not_diffeomorphic", x, n)});
      }
    // V
    for (const auto& [x, rx] : records_)
      for (const auto& [n, rn] : records_)
        if (x != n && holds(atom("homeomorphic", x, n)) && holds(atom("not_diffeomorphic", x, n)))
          changed |= conclude({"V exotic", {atom("homeomorphic", x, n), atom("not_diffeomorphic", x, n)},
                               atom("exotic", x, n)});
    return changed;
  }

  std::map<std::string, InvariantRecord> records_;
  std::vector<FiberSumDescription> sums_;
  std::vector<DeclaredProperty> decls_;
  DeductionReport report_;
};

DeductionReport deduce(std::vector<DeductionFact> facts) { return DeductionEngine(std::move(facts)).run(); }

}  // namespace exotica::fourmanifold
