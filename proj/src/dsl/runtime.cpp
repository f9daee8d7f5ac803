#include "exotica/dsl/runtime.hpp"

#include <omp.h>

#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <variant>

#include "exotica/constructions/constructions.hpp"
#include "exotica/fourmanifold/deduction.hpp"
#include "exotica/fourmanifold/invariants.hpp"
#include "exotica/fourmanifold/lattice.hpp"
#include "exotica/group/abelian.hpp"
#include "exotica/group/coset_audit.hpp"
#include "exotica/group/tietze.hpp"
#include "exotica/surfaces/surface.hpp"
#include "json.hpp"

namespace exotica::dsl {

using constructions::CurveList;
using constructions::GluingMap;
using constructions::KnotRecord;
using fourmanifold::DeclaredProperty;
using fourmanifold::DeductionReport;
using fourmanifold::FiberSumDescription;
using fourmanifold::IntersectionLattice;
using fourmanifold::InvariantRecord;
using group::AbelianGroup;
using group::BoundaryData;
using group::Presentation;
using group::Word;

namespace {

struct Unknown {
  std::string reason;
};

struct Value;

struct List {
  std::vector<Value> items;
};

using Variant = std::variant<std::int64_t, bool, std::string, Word, Presentation, AbelianGroup, BoundaryData,
                             GluingMap, KnotRecord, CurveList, IntMatrix, InvariantRecord, IntersectionLattice,
                             FiberSumDescription, DeclaredProperty, DeductionReport, List, Unknown>;

struct Value {
  Variant v;
};

const char* const kTypeNames[] = {"integer",     "boolean",        "string",      "word",
                                  "presentation", "abelian group", "boundary",    "glue map",
                                  "knot",        "curve list",     "matrix",      "invariant record",
                                  "lattice",     "fiber-sum description", "declaration", "deduction report",
                                  "list",        "unknown"};

std::string type_name(const Value& v) { return kTypeNames[v.v.index()]; }

template <class T, std::size_t I = 0>
constexpr std::size_t index_of() {
  if constexpr (std::is_same_v<std::variant_alternative_t<I, Variant>, T>)
    return I;
  else
    return index_of<T, I + 1>();
}

template <class T>
bool is(const Value& v) {
  return std::holds_alternative<T>(v.v);
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string show(const Value& v);

std::string show_words(const std::vector<Word>& ws) {
  std::string out = "[";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + ws[i].to_string();
  return out + "]";
}

std::string show(const Value& value) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        if constexpr (std::is_same_v<T, std::string>) return quote(x);
        if constexpr (std::is_same_v<T, Word> || std::is_same_v<T, Presentation> ||
                      std::is_same_v<T, AbelianGroup> || std::is_same_v<T, IntMatrix>)
          return x.to_string();
        if constexpr (std::is_same_v<T, BoundaryData>)
          return "boundary(" + x.presentation.to_string() + " images " + show_words(x.surface_images) +
                 " meridian " + x.meridian.to_string() + ")";
        if constexpr (std::is_same_v<T, GluingMap>) {
          std::string out = "glue {";
          for (std::size_t i = 0; i < x.assignments.size(); ++i)
            out += (i ? ", " : " ") + x.assignments[i].first.to_string() + " -> " + x.assignments[i].second.to_string();
          return out + "; meridian -> " + x.meridian_image.to_string() + " }";
        }
        if constexpr (std::is_same_v<T, KnotRecord>) return "knot " + x.name;
        if constexpr (std::is_same_v<T, CurveList>)
          return "curves(" + std::to_string(x.genus) + ", " + show_words(x.curves) + ")";
        if constexpr (std::is_same_v<T, InvariantRecord>) return "{" + x.to_block() + "}";
        if constexpr (std::is_same_v<T, IntersectionLattice>) {
          std::string out = "lattice(";
          for (std::size_t i = 0; i < x.basis().size(); ++i) out += (i ? ", " : "") + x.basis()[i];
          return out + "; " + x.gram().to_string() + ")";
        }
        if constexpr (std::is_same_v<T, FiberSumDescription>)
          return "fiber sum " + x.result + " = " + x.first + " # " + x.second;
        if constexpr (std::is_same_v<T, DeclaredProperty>)
          return (x.kind == DeclaredProperty::Kind::PositiveScalarCurvature ? "psc(" : "rational_or_ruled(") +
                 x.manifold + ")";
        if constexpr (std::is_same_v<T, DeductionReport>)
          return "deduction report (" + std::to_string(x.steps().size()) + " steps)";
        if constexpr (std::is_same_v<T, List>) {
          std::string out = "[";
          for (std::size_t i = 0; i < x.items.size(); ++i) out += (i ? ", " : "") + show(x.items[i]);
          return out + "]";
        }
        if constexpr (std::is_same_v<T, Unknown>) return "unknown: " + x.reason;
      },
      value.v);
}

Value from_bundled(const constructions::BundledValue& b) {
  return std::visit([](const auto& x) { return Value{x}; }, b);
}

std::string exhausted(std::int64_t budget) {
  return "coset enumeration exhausted its budget of " + std::to_string(budget) + " cosets";
}

// Arguments of one builtin call.
class Args {
 public:
  Args(const Expr& call, std::vector<Value> positional, std::map<std::string, Value> keywords, std::int64_t budget)
      : call_(call), pos_(std::move(positional)), kw_(std::move(keywords)), budget_(budget) {}

  std::size_t size() const { return pos_.size(); }
  std::int64_t budget() const { return budget_; }
  Position where() const { return call_.pos; }

  [[noreturn]] void fail(const std::string& msg) const { throw ScriptError(call_.text + ": " + msg, call_.pos); }

  const Value& at(std::size_t i) const {
    if (i >= pos_.size()) fail("missing argument " + std::to_string(i + 1));
    return pos_[i];
  }

  Position arg_pos(std::size_t i) const {
    std::size_t k = 0;
    for (const auto& a : call_.args)
      if (a.keyword.empty() && k++ == i) return a.value.front().pos;
    return call_.pos;
  }

  const Value* keyword(const std::string& name) const {
    auto it = kw_.find(name);
    return it == kw_.end() ? nullptr : &it->second;
  }

  template <class T>
  const T& get(std::size_t i) const {
    const Value& v = at(i);
    if (const T* p = std::get_if<T>(&v.v)) return *p;
    mismatch(i, kTypeNames[index_of<T>()], v);
  }

  [[noreturn]] void mismatch(std::size_t i, const std::string& want, const Value& got) const {
    throw ScriptError(call_.text + ": argument " + std::to_string(i + 1) + " must be " + article(want) + ", got " +
                          article(type_name(got)),
                      arg_pos(i));
  }

  std::int64_t integer(std::size_t i) const { return get<std::int64_t>(i); }
  const std::string& string(std::size_t i) const { return get<std::string>(i); }

  Word word(const Value& v, std::size_t i) const {
    if (const auto* w = std::get_if<Word>(&v.v)) return *w;
    if (const auto* s = std::get_if<std::string>(&v.v)) {
      try {
        return group::parse_word(*s);
      } catch (const ParseError& e) {
        throw ScriptError("bad word " + quote(*s) + ": " + e.bare_message(), arg_pos(i));
      }
    }
    mismatch(i, "word", v);
  }
  Word word(std::size_t i) const { return word(at(i), i); }

  std::vector<Word> words(std::size_t i) const {
    const Value& v = at(i);
    if (const auto* c = std::get_if<CurveList>(&v.v)) return c->curves;
    if (const auto* l = std::get_if<List>(&v.v)) {
      std::vector<Word> out;
      for (const auto& item : l->items) out.push_back(word(item, i));
      return out;
    }
    mismatch(i, "list of words", v);
  }

  std::vector<std::int64_t> integers(const Value& v, std::size_t i) const {
    const auto* l = std::get_if<List>(&v.v);
    if (!l) mismatch(i, "list of integers", v);
    std::vector<std::int64_t> out;
    for (const auto& item : l->items) {
      const auto* n = std::get_if<std::int64_t>(&item.v);
      if (!n) mismatch(i, "list of integers", v);
      out.push_back(*n);
    }
    return out;
  }

  std::vector<std::string> strings(std::size_t i) const {
    const Value& v = at(i);
    const auto* l = std::get_if<List>(&v.v);
    if (!l) mismatch(i, "list of strings", v);
    std::vector<std::string> out;
    for (const auto& item : l->items) {
      const auto* s = std::get_if<std::string>(&item.v);
      if (!s) mismatch(i, "list of strings", v);
      out.push_back(*s);
    }
    return out;
  }

  bool flag(const std::string& name, bool fallback) const {
    const Value* v = keyword(name);
    if (!v) return fallback;
    if (const auto* b = std::get_if<bool>(&v->v)) return *b;
    fail("keyword '" + name + "' must be a boolean");
  }

  std::string text(const std::string& name, const std::string& fallback) const {
    const Value* v = keyword(name);
    if (!v) return fallback;
    if (const auto* s = std::get_if<std::string>(&v->v)) return *s;
    fail("keyword '" + name + "' must be a string");
  }

 private:
  static std::string article(const std::string& noun) {
    return (std::string("aeiou").find(noun.front()) != std::string::npos ? "an " : "a ") + noun;
  }

  const Expr& call_;
  std::vector<Value> pos_;
  std::map<std::string, Value> kw_;
  std::int64_t budget_;
};

struct Builtin {
  std::string signature;
  std::size_t min_args;
  std::size_t max_args;
  std::set<std::string> keywords;
  std::function<Value(const Args&)> fn;
};

IntMatrix matrix_from(const Value& v, const Args& a, std::size_t i) {
  if (const auto* m = std::get_if<IntMatrix>(&v.v)) return *m;
  const auto* rows = std::get_if<List>(&v.v);
  if (!rows || rows->items.empty()) a.mismatch(i, "matrix", v);
  std::vector<std::vector<std::int64_t>> data;
  for (const auto& r : rows->items) data.push_back(a.integers(r, i));
  IntMatrix m(data.size(), data.front().size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (data[r].size() != m.cols()) a.fail("matrix rows have different lengths");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = data[r][c];
  }
  return m;
}

Value list_of(const std::vector<std::int64_t>& xs) {
  List l;
  for (auto x : xs) l.items.push_back({x});
  return {l};
}

Value list_of(const std::vector<std::string>& xs) {
  List l;
  for (const auto& x : xs) l.items.push_back({x});
  return {l};
}

surfaces::HomologyClass class_from(const Value& v, const Args& a, std::size_t i, int genus) {
  if (is<List>(v)) {
    auto c = a.integers(v, i);
    if (c.size() != static_cast<std::size_t>(2 * genus)) a.fail("class has the wrong dimension for genus " + std::to_string(genus));
    return {c};
  }
  return surfaces::class_of_word(a.word(v, i), surfaces::SurfaceHomology(genus));
}

int genus_arg(const Args& a, std::size_t i) {
  const auto g = a.integer(i);
  if (g < 1 || g > 64) a.fail("genus must be between 1 and 64");
  return static_cast<int>(g);
}

void collect_facts(const Value& v, std::vector<fourmanifold::DeductionFact>& out, const Args& a, std::size_t i) {
  if (const auto* r = std::get_if<InvariantRecord>(&v.v))
    out.emplace_back(*r);
  else if (const auto* d = std::get_if<FiberSumDescription>(&v.v))
    out.emplace_back(*d);
  else if (const auto* p = std::get_if<DeclaredProperty>(&v.v))
    out.emplace_back(*p);
  else if (const auto* l = std::get_if<List>(&v.v))
    for (const auto& item : l->items) collect_facts(item, out, a, i);
  else
    a.mismatch(i, "record, fiber-sum description or declaration", v);
}

const std::map<std::string, Builtin>& builtins() {
  using fourmanifold::Flag;
  static const std::map<std::string, Builtin> table = [] {
    std::map<std::string, Builtin> t;
    auto add = [&](const std::string& name, std::string sig, std::size_t lo, std::size_t hi,
                   std::set<std::string> kws, std::function<Value(const Args&)> fn) {
      t.emplace(name, Builtin{name + sig, lo, hi, std::move(kws), std::move(fn)});
    };

    // Groups
    add("word", "(text) -> word", 1, 1, {}, [](const Args& a) { return Value{a.word(0)}; });
    add("commutator", "(g, h) -> word", 2, 2, {},
        [](const Args& a) {
          const Word g = a.word(0);
          return Value{group::commutator(g, a.word(1))};
        });
    add("abelianize", "(group) -> abelian group", 1, 1, {},
        [](const Args& a) { return Value{group::abelianize(a.get<Presentation>(0))}; });
    add("free_rank", "(group | abelian group) -> int", 1, 1, {}, [](const Args& a) {
      if (is<AbelianGroup>(a.at(0))) return Value{static_cast<std::int64_t>(a.get<AbelianGroup>(0).free_rank)};
      return Value{static_cast<std::int64_t>(group::abelianize(a.get<Presentation>(0)).free_rank)};
    });
    add("generators", "(group) -> list of strings", 1, 1, {},
        [](const Args& a) { return list_of(a.get<Presentation>(0).generators()); });
    add("relators", "(group) -> list of words", 1, 1, {}, [](const Args& a) {
      List l;
      for (const auto& r : a.get<Presentation>(0).relators()) l.items.push_back({r});
      return Value{l};
    });
    add("order", "(group) -> int; unknown when the budget runs out", 1, 1, {}, [](const Args& a) {
      const auto r = group::is_trivial(a.get<Presentation>(0), a.budget());
      if (r.kind == group::Triviality::Unknown) return Value{Unknown{exhausted(a.budget())}};
      return Value{r.order};
    });
    add("trivial", "(group) -> bool; true only on a certified index-1 table", 1, 1, {}, [](const Args& a) {
      const auto r = group::is_trivial(a.get<Presentation>(0), a.budget());
      if (r.kind == group::Triviality::Unknown) return Value{Unknown{exhausted(a.budget())}};
      return Value{r.kind == group::Triviality::Trivial};
    });
    add("index", "(group, [subgroup words]) -> int", 2, 2, {}, [](const Args& a) {
      const auto& p = a.get<Presentation>(0);
      const auto gens = a.words(1);
      const auto table = group::coset_enumerate(p, gens, a.budget());
      if (!table.complete()) return Value{Unknown{exhausted(a.budget())}};
      const auto audit = group::audit_serial(table, p, gens);
      if (!audit.ok) a.fail("coset table failed its audit: " + audit.failure);
      return Value{table.index()};
    });
    add("quotient", "(group, [words]) -> group", 2, 2, {}, [](const Args& a) {
      const auto& p = a.get<Presentation>(0);
      return Value{group::quotient(p, a.words(1))};
    });
    add("tietze", "(group, generator[, definition]) -> group", 2, 3, {}, [](const Args& a) {
      const auto& p = a.get<Presentation>(0);
      const auto& gen = a.string(1);
      if (a.size() == 3) return Value{group::tietze_eliminate(p, gen, a.word(2))};
      const auto def = group::find_definition(p, gen);
      if (!def) a.fail("no relator defines '" + gen + "'");
      return Value{group::tietze_eliminate(p, gen, *def)};
    });
    add("simplify", "(group) -> group", 1, 1, {},
        [](const Args& a) { return Value{group::simplify(a.get<Presentation>(0))}; });
    add("exponents", "(group, word) -> list of ints", 2, 2, {}, [](const Args& a) {
      const auto& p = a.get<Presentation>(0);
      const Word w = a.word(1);
      p.check_word(w);
      return list_of(group::exponent_vector(w, p.generators()));
    });
    add("boundary", "(group, [surface words], meridian) -> boundary", 3, 3, {}, [](const Args& a) {
      BoundaryData b{a.get<Presentation>(0), a.words(1), a.word(2)};
      b.validate();
      return Value{b};
    });
    add("van_kampen", "(boundary, boundary, glue, kill_meridians = bool) -> group", 3, 3, {"kill_meridians"},
        [](const Args& a) {
          std::optional<bool> kill;
          if (a.keyword("kill_meridians")) kill = a.flag("kill_meridians", false);
          const auto& first = a.get<BoundaryData>(0);
          const auto& second = a.get<BoundaryData>(1);
          return Value{constructions::glue(first, second, a.get<GluingMap>(2), kill)};
        });
    add("complement_group", "(boundary) -> group", 1, 1, {},
        [](const Args& a) { return Value{a.get<BoundaryData>(0).presentation}; });

    // Knots and constructions
    add("bundled", "(name) -> bundled item", 1, 1, {},
        [](const Args& a) { return from_bundled(constructions::bundled(a.string(0)).value); });
    add("knot", "(\"trefoil\" | \"figure8\") -> knot", 1, 1, {},
        [](const Args& a) { return Value{constructions::knot(a.string(0))}; });
    add("knot_group", "(knot) -> group", 1, 1, {}, [](const Args& a) { return Value{a.get<KnotRecord>(0).group}; });
    add("meridian", "(knot) -> word", 1, 1, {}, [](const Args& a) { return Value{a.get<KnotRecord>(0).meridian}; });
    add("longitude", "(knot) -> word", 1, 1, {}, [](const Args& a) { return Value{a.get<KnotRecord>(0).longitude}; });
    add("zero_surgery", "(knot) -> group", 1, 1, {},
        [](const Args& a) { return Value{constructions::zero_surgery(a.get<KnotRecord>(0))}; });
    add("cross_circle", "(group[, generator name]) -> group", 1, 2, {}, [](const Args& a) {
      const auto& p = a.get<Presentation>(0);
      return Value{constructions::cross_circle(p, a.size() == 2 ? a.string(1) : "")};
    });

    // Surfaces
    add("homology_class", "(word, genus) -> list of ints", 2, 2, {}, [](const Args& a) {
      return list_of(surfaces::class_of_word(a.word(0), surfaces::SurfaceHomology(genus_arg(a, 1))).coefficients);
    });
    add("transvection", "(class or word, genus) -> matrix", 2, 2, {}, [](const Args& a) {
      const int g = genus_arg(a, 1);
      return Value{surfaces::transvection(class_from(a.at(0), a, 0, g), surfaces::SurfaceHomology(g))};
    });
    add("compose", "(curves) or (genus, [classes or words]) -> matrix", 1, 2, {}, [](const Args& a) {
      int g = 0;
      surfaces::TwistSequence seq;
      if (a.size() == 1) {
        const auto& c = a.get<CurveList>(0);
        g = c.genus;
        for (const auto& w : c.curves) seq.curves.push_back(class_from(Value{w}, a, 0, g));
      } else {
        g = genus_arg(a, 0);
        const Value& v = a.at(1);
        if (const auto* c = std::get_if<CurveList>(&v.v)) {
          for (const auto& w : c->curves) seq.curves.push_back(class_from(Value{w}, a, 1, g));
        } else if (const auto* l = std::get_if<List>(&v.v)) {
          for (const auto& item : l->items) seq.curves.push_back(class_from(item, a, 1, g));
        } else {
          a.mismatch(1, "list of curves", v);
        }
      }
      return Value{surfaces::compose(seq, surfaces::SurfaceHomology(g))};
    });
    add("lefschetz_pi1", "(curves) or (genus, [words]) -> group", 1, 2, {}, [](const Args& a) {
      if (a.size() == 1) {
        const auto& c = a.get<CurveList>(0);
        return Value{surfaces::lefschetz_pi1(c.genus, c.curves)};
      }
      const auto ws = a.words(1);
      return Value{surfaces::lefschetz_pi1(genus_arg(a, 0), ws)};
    });
    add("preserves_pairing", "(matrix) -> bool", 1, 1, {}, [](const Args& a) {
      const IntMatrix m = matrix_from(a.at(0), a, 0);
      if (m.rows() != m.cols() || m.rows() % 2 || m.rows() == 0) a.fail("expected a square matrix of even size");
      return Value{surfaces::preserves_pairing(m, surfaces::SurfaceHomology(static_cast<int>(m.rows() / 2)))};
    });
    add("matrix", "([[ints]]) -> matrix", 1, 1, {}, [](const Args& a) { return Value{matrix_from(a.at(0), a, 0)}; });
    add("identity", "(n) -> matrix", 1, 1, {}, [](const Args& a) {
      const auto n = a.integer(0);
      if (n < 1 || n > 1024) a.fail("size must be between 1 and 1024");
      return Value{IntMatrix::identity(static_cast<std::size_t>(n))};
    });
    add("power", "(matrix, n) -> matrix", 2, 2, {}, [](const Args& a) {
      const IntMatrix m = matrix_from(a.at(0), a, 0);
      const auto n = a.integer(1);
      if (n < 0) a.fail("exponent must be non-negative");
      if (m.rows() != m.cols()) a.fail("matrix is not square");
      return Value{m.power(static_cast<unsigned>(n))};
    });
    add("mul", "(matrix, matrix) -> matrix", 2, 2, {}, [](const Args& a) {
      const IntMatrix x = matrix_from(a.at(0), a, 0);
      const IntMatrix y = matrix_from(a.at(1), a, 1);
      if (x.cols() != y.rows()) a.fail("matrix shapes do not match");
      return Value{x * y};
    });
    add("apply", "(matrix, [ints]) -> list of ints", 2, 2, {}, [](const Args& a) {
      const IntMatrix m = matrix_from(a.at(0), a, 0);
      const auto v = a.integers(a.at(1), 1);
      if (v.size() != m.cols()) a.fail("vector has the wrong length");
      return list_of(m.apply(v));
    });
    add("det", "(matrix) -> int", 1, 1, {}, [](const Args& a) {
      const IntMatrix m = matrix_from(a.at(0), a, 0);
      if (m.rows() != m.cols()) a.fail("matrix is not square");
      return Value{m.determinant()};
    });

    // Invariant records
    add("standard", "(name) -> record", 1, 1, {}, [](const Args& a) { return Value{fourmanifold::standard(a.string(0))}; });
    add("blow_up", "(record, n) -> record", 2, 2, {},
        [](const Args& a) {
          const auto& r = a.get<InvariantRecord>(0);
          return Value{fourmanifold::blow_up(r, a.integer(1))};
        });
    add("fiber_sum", "(record, record, genus) -> record", 3, 3, {}, [](const Args& a) {
      const auto& first = a.get<InvariantRecord>(0);
      const auto& second = a.get<InvariantRecord>(1);
      return Value{fourmanifold::fiber_sum(first, second, a.integer(2))};
    });
    add("connected_sum", "(record, record) -> record", 2, 2, {}, [](const Args& a) {
      const auto& first = a.get<InvariantRecord>(0);
      return Value{fourmanifold::connected_sum(first, a.get<InvariantRecord>(1))};
    });
    add("named", "(record, name) -> record", 2, 2, {},
        [](const Args& a) { return Value{a.get<InvariantRecord>(0).renamed(a.string(1))}; });
    add("with_b1", "(record, n) -> record", 2, 2, {},
        [](const Args& a) { return Value{a.get<InvariantRecord>(0).with_b1(a.integer(1))}; });
    add("with_parity", "(record, \"odd\" | \"even\") -> record", 2, 2, {}, [](const Args& a) {
      return Value{a.get<InvariantRecord>(0).with_parity(fourmanifold::parse_parity(a.string(1)))};
    });
    add("with_flags", "(record, [flag names]) -> record", 2, 2, {}, [](const Args& a) {
      InvariantRecord r = a.get<InvariantRecord>(0);
      for (const auto& f : a.strings(1)) r = r.with_flag(fourmanifold::parse_flag(f));
      return Value{r};
    });
    add("with_pi1", "(record, group) -> record with b1 and simple connectivity taken from the group", 2, 2, {},
        [](const Args& a) {
          const auto& rec = a.get<InvariantRecord>(0);
          const auto& p = a.get<Presentation>(1);
          const auto h1 = group::abelianize(p);
          InvariantRecord r = rec.with_b1(static_cast<std::int64_t>(h1.free_rank));
          if (!h1.is_trivial()) return Value{r.without_flag(Flag::SimplyConnected)};
          const auto t = group::is_trivial(p, a.budget());
          if (t.kind == group::Triviality::Unknown) return Value{Unknown{exhausted(a.budget())}};
          return Value{t.kind == group::Triviality::Trivial ? r.with_flag(Flag::SimplyConnected)
                                                            : r.without_flag(Flag::SimplyConnected)};
        });
    add("euler", "(record) -> int", 1, 1, {}, [](const Args& a) { return Value{a.get<InvariantRecord>(0).euler()}; });
    add("sigma", "(record) -> int", 1, 1, {},
        [](const Args& a) { return Value{a.get<InvariantRecord>(0).signature()}; });
    add("c1sq", "(record) -> int", 1, 1, {}, [](const Args& a) { return Value{a.get<InvariantRecord>(0).c1sq()}; });
    add("chi_h", "(record) -> int", 1, 1, {}, [](const Args& a) {
      const auto c = a.get<InvariantRecord>(0).chi_h();
      if (!c) a.fail("e + sigma is not divisible by 4");
      return Value{*c};
    });
    add("b1", "(record) -> int", 1, 1, {}, [](const Args& a) {
      const auto b = a.get<InvariantRecord>(0).b1();
      if (!b) a.fail("b1 is pending; supply it with with_pi1 or with_b1");
      return Value{*b};
    });
    add("b2plus", "(record) -> int", 1, 1, {}, [](const Args& a) { return Value{a.get<InvariantRecord>(0).b2_plus()}; });
    add("b2minus", "(record) -> int", 1, 1, {},
        [](const Args& a) { return Value{a.get<InvariantRecord>(0).b2_minus()}; });
    add("characteristic", "(record) -> [c1sq, sigma, chi_h]", 1, 1, {}, [](const Args& a) {
      const auto& r = a.get<InvariantRecord>(0);
      if (!r.chi_h()) a.fail("e + sigma is not divisible by 4");
      return list_of(std::vector<std::int64_t>{r.c1sq(), r.signature(), *r.chi_h()});
    });
    add("parity", "(record) -> string", 1, 1, {},
        [](const Args& a) { return Value{fourmanifold::to_string(a.get<InvariantRecord>(0).parity())}; });
    add("has_flag", "(record, flag) -> bool", 2, 2, {}, [](const Args& a) {
      return Value{a.get<InvariantRecord>(0).has(fourmanifold::parse_flag(a.string(1)))};
    });
    add("freedman_type", "(record) -> string", 1, 1, {},
        [](const Args& a) { return Value{fourmanifold::freedman_type(a.get<InvariantRecord>(0))}; });

    // Lattices
    add("hyperbolic", "(x, y) -> lattice", 2, 2, {},
        [](const Args& a) {
          const auto& x = a.string(0);
          return Value{fourmanifold::hyperbolic(x, a.string(1))};
        });
    add("diagonal", "(square, [names]) -> lattice", 2, 2, {},
        [](const Args& a) {
          const std::int64_t sq = a.integer(0);
          return Value{fourmanifold::diagonal(a.strings(1), sq)};
        });
    add("orthogonal_sum", "(lattice, lattice, ...) -> lattice", 2, 16, {}, [](const Args& a) {
      IntersectionLattice l = a.get<IntersectionLattice>(0);
      for (std::size_t i = 1; i < a.size(); ++i) l = fourmanifold::orthogonal_sum(l, a.get<IntersectionLattice>(i));
      return Value{l};
    });
    add("pairing", "(lattice, class, class) -> int", 3, 3, {}, [](const Args& a) {
      const auto& l = a.get<IntersectionLattice>(0);
      const auto x = l.parse_class(a.string(1));
      return Value{l.pairing(x, l.parse_class(a.string(2)))};
    });
    add("square", "(lattice, class) -> int", 2, 2, {}, [](const Args& a) {
      const auto& l = a.get<IntersectionLattice>(0);
      return Value{l.square(l.parse_class(a.string(1)))};
    });
    add("adjunction_genus", "(lattice, class C, canonical class K) -> int", 3, 3, {}, [](const Args& a) {
      const auto& l = a.get<IntersectionLattice>(0);
      const auto c = l.parse_class(a.string(1));
      return Value{fourmanifold::adjunction_genus(l, c, l.parse_class(a.string(2)))};
    });

    // Deduction
    add("usher", "(result =, first =, second =, first_sphere =, second_sphere =, sphere_bundle =) -> description", 0,
        0, {"result", "first", "second", "first_sphere", "second_sphere", "sphere_bundle"}, [](const Args& a) {
          FiberSumDescription d;
          d.result = a.text("result", "");
          d.first = a.text("first", "");
          d.second = a.text("second", "");
          if (d.result.empty() || d.first.empty() || d.second.empty())
            a.fail("result, first and second are required");
          d.first_has_disjoint_exceptional_sphere = a.flag("first_sphere", false);
          d.second_has_disjoint_exceptional_sphere = a.flag("second_sphere", false);
          if (const std::string s = a.text("sphere_bundle", ""); !s.empty()) d.sphere_bundle_summand = s;
          fourmanifold::usher_minimality(d);
          return Value{d};
        });
    add("minimality", "(description) -> string", 1, 1, {}, [](const Args& a) {
      const auto v = fourmanifold::usher_minimality(a.get<FiberSumDescription>(0));
      std::string out = fourmanifold::to_string(v.kind);
      if (!v.depends_on.empty()) out += " if " + v.depends_on + " is minimal";
      return Value{out};
    });
    add("psc", "(name) -> declaration", 1, 1, {}, [](const Args& a) {
      return Value{DeclaredProperty{DeclaredProperty::Kind::PositiveScalarCurvature, a.string(0)}};
    });
    add("rational_or_ruled", "(name) -> declaration", 1, 1, {}, [](const Args& a) {
      return Value{DeclaredProperty{DeclaredProperty::Kind::RationalOrRuled, a.string(0)}};
    });
    add("deduce", "(facts...) -> report", 1, 64, {}, [](const Args& a) {
      std::vector<fourmanifold::DeductionFact> facts;
      for (std::size_t i = 0; i < a.size(); ++i) collect_facts(a.at(i), facts, a, i);
      return Value{fourmanifold::deduce(std::move(facts))};
    });
    add("holds", "(report, atom) -> bool", 2, 2, {},
        [](const Args& a) { return Value{a.get<DeductionReport>(0).holds(a.string(1))}; });
    add("verdict", "(report, X, N) -> string", 3, 3, {},
        [](const Args& a) {
          const auto& r = a.get<DeductionReport>(0);
          const auto& x = a.string(1);
          return Value{r.verdict(x, a.string(2))};
        });
    add("rules", "(report, atom) -> list of rule names", 2, 2, {},
        [](const Args& a) { return list_of(a.get<DeductionReport>(0).rules_for(a.string(1))); });
    add("cites", "(report, atom, rule id) -> bool", 3, 3, {}, [](const Args& a) {
      const auto& report = a.get<DeductionReport>(0);
      const auto rules = report.rules_for(a.string(1));
      const std::string id = a.string(2) + " ";
      for (const auto& r : rules)
        if ((r + " ").rfind(id, 0) == 0) return Value{true};
      return Value{false};
    });
    add("derivation", "(report) -> string", 1, 1, {},
        [](const Args& a) { return Value{a.get<DeductionReport>(0).to_text()}; });

    // Misc
    add("not", "(bool) -> bool", 1, 1, {}, [](const Args& a) { return Value{!a.get<bool>(0)}; });
    add("len", "(list) -> int", 1, 1, {},
        [](const Args& a) { return Value{static_cast<std::int64_t>(a.get<List>(0).items.size())}; });
    add("show", "(value) -> string", 1, 1, {}, [](const Args& a) {
      const Value& v = a.at(0);
      if (const auto* s = std::get_if<std::string>(&v.v)) return Value{*s};
      return Value{show(v)};
    });
    return t;
  }();
  return table;
}

// nullopt when the two values cannot be compared.
std::optional<bool> equal(const Value& a, const Value& b) {
  if (a.v.index() == b.v.index()) {
    return std::visit(
        [&](const auto& x) -> std::optional<bool> {
          using T = std::decay_t<decltype(x)>;
          const T& y = std::get<T>(b.v);
          if constexpr (std::is_same_v<T, List>) {
            if (x.items.size() != y.items.size()) return false;
            for (std::size_t i = 0; i < x.items.size(); ++i) {
              const auto e = equal(x.items[i], y.items[i]);
              if (!e) return std::nullopt;
              if (!*e) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, IntersectionLattice>) {
            return x.basis() == y.basis() && x.gram() == y.gram();
          } else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, bool> ||
                               std::is_same_v<T, std::string> || std::is_same_v<T, Word> ||
                               std::is_same_v<T, Presentation> || std::is_same_v<T, AbelianGroup> ||
                               std::is_same_v<T, IntMatrix> || std::is_same_v<T, InvariantRecord>) {
            return x == y;
          } else {
            return std::nullopt;
          }
        },
        a.v);
  }
  if (is<std::string>(b) && !is<std::string>(a)) return equal(b, a);
  if (is<List>(a) && is<IntMatrix>(b)) return equal(b, a);
  if (const auto* s = std::get_if<std::string>(&a.v)) {
    if (const auto* g = std::get_if<AbelianGroup>(&b.v)) return group::parse_abelian_group(*s) == *g;
    if (const auto* w = std::get_if<Word>(&b.v)) return group::parse_word(*s) == *w;
    if (const auto* p = std::get_if<Presentation>(&b.v)) return group::parse_presentation(*s) == *p;
    return std::nullopt;
  }
  if (const auto* m = std::get_if<IntMatrix>(&a.v)) {
    const auto* rows = std::get_if<List>(&b.v);
    if (!rows) return std::nullopt;
    if (rows->items.size() != m->rows()) return false;
    for (std::size_t r = 0; r < m->rows(); ++r) {
      const auto* row = std::get_if<List>(&rows->items[r].v);
      if (!row) return std::nullopt;
      if (row->items.size() != m->cols()) return false;
      for (std::size_t c = 0; c < m->cols(); ++c) {
        const auto* n = std::get_if<std::int64_t>(&row->items[c].v);
        if (!n) return std::nullopt;
        if (*n != (*m)(r, c)) return false;
      }
    }
    return true;
  }
  return std::nullopt;
}

class Executor {
 public:
  explicit Executor(const Config& config) : config_(config) {}

  VerificationReport run(const Script& s) {
    VerificationReport report;
    report.script = s.id;
    std::vector<const Statement*> asserts;
    for (const auto& st : s.statements)
      if (st.kind == Statement::Kind::Assert) asserts.push_back(&st);
    report.assertions.resize(asserts.size());

    if (!config_.parallel_asserts) {
      std::size_t k = 0;
      for (const auto& st : s.statements) {
        if (st.kind == Statement::Kind::Let)
          bind(st);
        else
          report.assertions[k] = check(st, k + 1), ++k;
      }
      return report;
    }

    for (const auto& st : s.statements)
      if (st.kind == Statement::Kind::Let) bind(st);
    std::vector<std::exception_ptr> errors(asserts.size());
    const auto n = static_cast<std::int64_t>(asserts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        report.assertions[static_cast<std::size_t>(i)] = check(*asserts[static_cast<std::size_t>(i)], i + 1);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    return report;
  }

 private:
  void bind(const Statement& st) {
    Value v = eval(st.expr.front(), config_.budget);
    if (auto* r = std::get_if<InvariantRecord>(&v.v);
        r && st.expr.front().kind == Expr::Kind::Literal && r->name() == "unnamed")
      *r = r->renamed(st.name);
    env_.emplace(st.name, std::move(v));
  }

  AssertionResult check(const Statement& st, std::size_t index) const {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    AssertionResult out;
    out.index = index;
    out.text = st.source;
    out.citation = st.citation;
    out.pos = st.pos;
    const std::int64_t budget = st.budget.value_or(config_.budget);
    const Value actual = eval(st.expr.front(), budget);
    if (const auto* u = std::get_if<Unknown>(&actual.v)) {
      out.status = Status::Unknown;
      out.detail = u->reason;
    } else if (st.expected.empty()) {
      const auto* b = std::get_if<bool>(&actual.v);
      if (!b)
        throw ScriptError("assertion must be a boolean or a comparison, got " + type_name(actual),
                          st.expr.front().pos);
      out.status = *b ? Status::Pass : Status::Fail;
      out.detail = *b ? "true" : "actual false";
    } else {
      const Value expected = eval(st.expected.front(), budget);
      if (const auto* u = std::get_if<Unknown>(&expected.v)) {
        out.status = Status::Unknown;
        out.detail = u->reason;
      } else {
        std::optional<bool> same;
        try {
          same = equal(actual, expected);
        } catch (const Error& e) {
          throw ScriptError(std::string("bad expected value: ") + e.what(), st.expected.front().pos);
        }
        if (!same)
          throw ScriptError("cannot compare " + type_name(actual) + " with " + type_name(expected),
                            st.expected.front().pos);
        out.status = *same ? Status::Pass : Status::Fail;
        out.detail = *same ? show(actual) : "actual " + show(actual);
      }
    }
    if (config_.record_timings)
      out.elapsed_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return out;
  }

  Value lookup(const Expr& e) const {
    if (auto it = env_.find(e.text); it != env_.end()) return it->second;
    try {
      return from_bundled(constructions::bundled(e.text).value);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ScriptError(err.what(), e.pos);
    }
  }

  Value eval(const Expr& e, std::int64_t budget) const {
    switch (e.kind) {
      case Expr::Kind::Integer:
        return {e.integer};
      case Expr::Kind::Bool:
        return {e.integer != 0};
      case Expr::Kind::String:
        return {e.text};
      case Expr::Kind::Identifier:
        return lookup(e);
      case Expr::Kind::List: {
        List l;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          l.items.push_back(eval(e.arg(i), budget));
          if (is<Unknown>(l.items.back())) return l.items.back();
        }
        return {l};
      }
      case Expr::Kind::Literal:
        return literal(e);
      case Expr::Kind::Call:
        break;
    }
    const auto& table = builtins();
    auto it = table.find(e.text);
    if (it == table.end()) throw ScriptError("unknown function '" + e.text + "'", e.pos);
    const Builtin& b = it->second;
    std::vector<Value> positional;
    std::map<std::string, Value> keywords;
    for (const auto& a : e.args) {
      Value v = eval(a.value.front(), budget);
      if (is<Unknown>(v)) return v;
      if (a.keyword.empty()) {
        positional.push_back(std::move(v));
      } else {
        if (!b.keywords.count(a.keyword))
          throw ScriptError(e.text + ": unknown keyword argument '" + a.keyword + "'", a.value.front().pos);
        keywords.emplace(a.keyword, std::move(v));
      }
    }
    if (positional.size() < b.min_args || positional.size() > b.max_args) {
      const std::string want = b.min_args == b.max_args
                                   ? std::to_string(b.min_args)
                                   : std::to_string(b.min_args) + " to " + std::to_string(b.max_args);
      throw ScriptError(e.text + " expects " + want + " positional arguments, got " +
                            std::to_string(positional.size()),
                        e.pos);
    }
    Args args(e, std::move(positional), std::move(keywords), budget);
    try {
      return b.fn(args);
    } catch (const ScriptError&) {
      throw;
    } catch (const Error& err) {
      throw ScriptError(e.text + ": " + err.what(), e.pos);
    }
  }

  static Value literal(const Expr& e) {
    if (e.text == "presentation") return {group::parse_presentation(e.body, e.body_pos.line, e.body_pos.column)};
    if (e.text == "invariants") return {fourmanifold::parse_record(e.body, e.body_pos.line, e.body_pos.column)};
    return {constructions::parse_gluing(e.body, e.body_pos.line, e.body_pos.column)};
  }

  const Config& config_;
  std::map<std::string, Value> env_;
};

void check_literals(const Expr& e) {
  if (e.kind == Expr::Kind::Literal) {
    if (e.text == "presentation")
      group::parse_presentation(e.body, e.body_pos.line, e.body_pos.column);
    else if (e.text == "invariants")
      fourmanifold::parse_record(e.body, e.body_pos.line, e.body_pos.column);
    else
      constructions::parse_gluing(e.body, e.body_pos.line, e.body_pos.column);
  }
  for (const auto& a : e.args) check_literals(a.value.front());
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Unknown:
      break;
  }
  return "unknown";
}

std::size_t VerificationReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& a : assertions) n += a.status == s;
  return n;
}

int VerificationReport::exit_code() const {
  if (count(Status::Fail)) return 1;
  if (count(Status::Unknown)) return 2;
  return 0;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["script"] = script;
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : assertions) {
    nlohmann::ordered_json e;
    e["index"] = a.index;
    e["text"] = a.text;
    e["status"] = to_string(a.status);
    e["detail"] = a.detail;
    e["citation"] = a.citation ? nlohmann::ordered_json(*a.citation) : nlohmann::ordered_json(nullptr);
    e["elapsed_ms"] = a.elapsed_ms;
    j["assertions"].push_back(std::move(e));
  }
  j["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"unknown", count(Status::Unknown)}};
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "script " << script << "\n";
  for (const auto& a : assertions) {
    std::string tag = to_string(a.status);
    for (auto& c : tag) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << "[" << tag << "] " << a.index << " (line " << a.pos.line << ") " << a.text << "\n";
    os << "    " << a.detail << "\n";
    if (a.citation) os << "    cite: " << *a.citation << "\n";
  }
  os << "summary: " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, "
     << count(Status::Unknown) << " unknown\n";
  return os.str();
}

ParseOptions script_parse_options() {
  ParseOptions o;
  for (const auto& [name, b] : builtins()) o.functions.insert(name);
  for (const auto& name : constructions::bundled_names()) o.predefined.insert(name);
  return o;
}

Script parse(std::string_view text, std::string id) {
  Script s = parse_script(text, std::move(id), script_parse_options());
  for (const auto& st : s.statements) {
    for (const auto& e : st.expr) check_literals(e);
    for (const auto& e : st.expected) check_literals(e);
  }
  return s;
}

VerificationReport execute(const Script& s, const Config& config) { return Executor(config).run(s); }

std::vector<std::string> builtin_signatures() {
  std::vector<std::string> out;
  for (const auto& [name, b] : builtins()) out.push_back(b.signature);
  return out;
}

}  // namespace exotica::dsl
