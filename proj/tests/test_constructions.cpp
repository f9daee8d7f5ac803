#include "doctest.h"
#include "exotica/constructions/constructions.hpp"
#include "exotica/error.hpp"
#include "exotica/group/abelian.hpp"
#include "exotica/group/coset.hpp"
#include "oracles.hpp"

using namespace exotica;
using namespace exotica::group;
using namespace exotica::constructions;

namespace {

Word w(const char* s) { return parse_word(s); }

const Presentation& pres_item(const char* name) { return std::get<Presentation>(bundled(name).value); }
const BoundaryData& boundary_item(const char* name) { return std::get<BoundaryData>(bundled(name).value); }
const GluingMap& glue_item(const char* name) { return std::get<GluingMap>(bundled(name).value); }

Presentation with_relator(const Presentation& p, const Word& r) {
  auto rels = p.relators();
  rels.push_back(r);
  return Presentation(p.generators(), rels);
}

std::int64_t order_of(const Presentation& p) {
  const auto r = is_trivial(p);
  REQUIRE(r.kind != Triviality::Unknown);
  return r.kind == Triviality::Trivial ? 1 : r.order;
}

}  // namespace

TEST_CASE("every bundled item loads with a citation") {
  const auto names = bundled_names();
  CHECK(names.size() >= 18);
  for (const auto& n : names) {
    const auto& item = bundled(n);
    CHECK_MESSAGE(!item.citation.empty(), n);
    if (const auto* b = std::get_if<BoundaryData>(&item.value)) CHECK_NOTHROW(b->validate());
  }
  CHECK_THROWS_AS(bundled("K3"), Error);
  CHECK_FALSE(bundled("X_K").note.empty());
}

TEST_CASE("knot records") {
  for (const char* name : {"trefoil", "figure8"}) {
    const auto k = knot(name);
    CHECK(abelianize(k.group).to_string() == "Z");
    // The longitude is null-homologous: adding it changes nothing in H1.
    CHECK(abelianize(with_relator(k.group, k.longitude)) == abelianize(k.group));
    std::int64_t total = 0;
    for (const auto& g : k.group.generators()) total += k.longitude.exponent_sum(g);
    CHECK(total == 0);
    CHECK(k.fibered_genus == 1);
  }
  CHECK_THROWS_AS(knot("unknot"), Error);
}

TEST_CASE("trefoil presentations agree on finite quotients") {
  // Killing the n-th power of a meridian gives groups of order 6, 24, 96, 600.
  const std::int64_t expected[] = {6, 24, 96, 600};
  for (int n = 2; n <= 5; ++n) {
    const auto e = expected[n - 2];
    CHECK(order_of(with_relator(pres_item("trefoil_group"), w("b").pow(n))) == e);
    CHECK(order_of(with_relator(pres_item("trefoil_wirtinger"), w("a").pow(n))) == e);
    CHECK(order_of(with_relator(pres_item("trefoil_uv"), w("u*v^-1").pow(n))) == e);
  }
}

TEST_CASE("Alexander polynomials by Fox calculus") {
  const auto t = knot("trefoil");
  REQUIRE(t.group.relators().size() == 1);
  CHECK(oracle::normalize(oracle::fox_derivative(t.group.relators()[0], "a")) ==
        std::vector<std::int64_t>{1, -1, 1});
  const auto f = knot("figure8");
  REQUIRE(f.group.relators().size() == 1);
  CHECK(oracle::normalize(oracle::fox_derivative(f.group.relators()[0], "a")) ==
        std::vector<std::int64_t>{1, -3, 1});
}

TEST_CASE("longitudes commute with meridians in every map to S5") {
  const auto perms = oracle::all_perms<5>();
  for (const char* name : {"trefoil", "figure8"}) {
    const auto k = knot(name);
    const auto& gens = k.group.generators();
    REQUIRE(gens.size() == 2);
    int homs = 0;
    for (const auto& x : perms)
      for (const auto& y : perms) {
        const std::map<std::string, oracle::Perm<5>> img{{gens[0], x}, {gens[1], y}};
        bool ok = true;
        for (const auto& r : k.group.relators())
          if (oracle::evaluate(r, img) != perms.front()) ok = false;
        if (!ok) continue;
        ++homs;
        const auto m = oracle::evaluate(k.meridian, img);
        const auto l = oracle::evaluate(k.longitude, img);
        CHECK(oracle::compose(m, l) == oracle::compose(l, m));
      }
    CHECK(homs > 120);
  }
}

TEST_CASE("surgery and products") {
  const auto k = knot("trefoil");
  const auto mk = zero_surgery(k);
  CHECK(mk == pres_item("M_K"));
  CHECK(abelianize(mk).to_string() == "Z");
  const auto mks1 = cross_circle(mk);
  CHECK(mks1 == pres_item("M_K_x_S1"));
  CHECK(mks1.generators().size() == 3);
  CHECK(abelianize(mks1).free_rank == abelianize(mk).free_rank + 1);
  CHECK(cross_circle(mks1).generators().back() == "x2");
  CHECK_THROWS_AS(cross_circle(mk, "a"), Error);
}

TEST_CASE("homology of the bundled building blocks") {
  CHECK(abelianize(pres_item("C_F")).to_string() == "Z^2");
  CHECK(abelianize(pres_item("C_B")).to_string() == "Z^2");
  CHECK(abelianize(pres_item("Y_K")).to_string() == "Z^2");
  CHECK(abelianize(pres_item("X_K")).to_string() == "0");
  CHECK(abelianize(pres_item("Z")).to_string() == "Z^2");
}

TEST_CASE("gluing maps") {
  const auto& psi = glue_item("psi");
  CHECK(psi.assignments.size() == 4);
  CHECK(psi.kills_meridians());
  const auto g = parse_gluing("a -> p, b -> q; meridian -> m");
  CHECK(g.assignments.size() == 2);
  CHECK(g.meridian_image == w("m"));
  CHECK_FALSE(g.kills_meridians());
  CHECK(parse_gluing("[a, b] -> p").assignments.front().first == w("[a, b]"));
  CHECK_THROWS_AS(parse_gluing("a -> "), ParseError);
  CHECK_THROWS_AS(parse_gluing("a p"), ParseError);
}

TEST_CASE("fiber sums of the bundled pieces") {
  const auto x = glue(boundary_item("X_K_complement"), boundary_item("Z_complement"), glue_item("psi"));
  const auto rx = is_trivial(x);
  CHECK(rx.kind == Triviality::Trivial);
  const auto y = glue(boundary_item("Y_K_complement"), boundary_item("Z_complement"), glue_item("phi"));
  CHECK(is_trivial(y).kind == Triviality::Trivial);
  // Without killing the meridian H1 can only grow.
  const auto loose = glue(boundary_item("Y_K_complement"), boundary_item("Z_complement"), glue_item("phi"), false);
  CHECK(abelianize(loose).free_rank >= abelianize(y).free_rank);
}

TEST_CASE("gluing errors") {
  const auto& xk = boundary_item("X_K_complement");
  const auto& z = boundary_item("Z_complement");
  CHECK_THROWS_AS(glue(xk, z, parse_gluing("a^-1*b -> a2, d -> a1, y -> b1")), Error);
  CHECK_THROWS_AS(glue(xk, z, parse_gluing("a -> a2, b^-1*a*b*a^-1 -> b2, d -> a1, y -> b1")), Error);
  CHECK_THROWS_AS(glue(xk, z, parse_gluing("a^-1*b -> a2, b^-1*a*b*a^-1 -> a2, d -> a1, y -> b1")), Error);
  CHECK_THROWS_AS(glue(xk, z, parse_gluing("a^-1*b -> a2, b^-1*a*b*a^-1 -> b2, d -> a1, y -> q9")), Error);
}

TEST_CASE("bundled file grammar is enforced") {
  CHECK(load_bundled("let P = presentation { gens: a; rels: a^2; } cite \"c\"\n", "t").size() == 1);
  CHECK_THROWS_AS(load_bundled("let P = presentation { gens: a; rels: a^2; }\n", "t"), Error);
  CHECK_THROWS_AS(load_bundled("let P = order(presentation { gens: a; rels: ; }) cite \"c\"\n", "t"), Error);
  CHECK_THROWS_AS(load_bundled("assert 1 == 1 cite \"c\"\n", "t"), Error);
  CHECK_THROWS_AS(load_bundled("let P = presentation { gens: a; rels: b; } cite \"c\"\n", "t"), Error);
}

TEST_CASE("zero surgery matches the u, v form on finite quotients") {
  const auto mk = zero_surgery(knot("trefoil"));
  const auto uv = with_relator(pres_item("trefoil_uv"), w("u^2*(u*v^-1)^-6"));
  CHECK(abelianize(mk) == abelianize(uv));
  for (int n = 2; n <= 5; ++n) {
    const auto a = is_trivial(with_relator(mk, w("b").pow(n)));
    const auto b = is_trivial(with_relator(uv, w("u*v^-1").pow(n)));
    REQUIRE(a.kind != Triviality::Unknown);
    CHECK(a.kind == b.kind);
    CHECK(a.order == b.order);
  }
  // Extra quotients by a word in the other generator.
  for (int n = 2; n <= 4; ++n) {
    const auto a = is_trivial(with_relator(mk, w("a*b").pow(n)));
    const auto b = is_trivial(with_relator(uv, w("v").pow(n)));
    CHECK(a.kind == b.kind);
    CHECK(a.order == b.order);
  }
}

TEST_CASE("degenerate constructions") {
  const KnotRecord unknot{"unknot", parse_presentation("gens: a; rels: ;"), w("a"), w("1"), 0};
  CHECK(abelianize(zero_surgery(unknot)).to_string() == "Z");
  CHECK(abelianize(cross_circle(parse_presentation("gens: ; rels: ;"))).to_string() == "Z");
}

TEST_CASE("bundled presentations round-trip through text") {
  for (const auto& n : bundled_names()) {
    const auto& v = bundled(n).value;
    const Presentation* p = std::get_if<Presentation>(&v);
    if (const auto* b = std::get_if<BoundaryData>(&v)) p = &b->presentation;
    if (const auto* k = std::get_if<KnotRecord>(&v)) p = &k->group;
    if (!p) continue;
    const std::string text = p->to_string();
    CHECK_MESSAGE(parse_presentation(text).to_string() == text, n);
    CHECK(parse_presentation(text) == *p);
  }
}

TEST_CASE("gluing data matches the displayed maps") {
  const std::vector<Word> sources{w("a^-1*b"), w("b^-1*a*b*a^-1"), w("d"), w("y")};
  const std::vector<Word> targets{w("a2"), w("b2"), w("a1"), w("b1")};
  for (const char* name : {"psi", "phi"}) {
    const auto& g = glue_item(name);
    std::vector<Word> src, dst;
    for (const auto& [s, d] : g.assignments) {
      src.push_back(s);
      dst.push_back(d);
    }
    CHECK(src == sources);
    CHECK(dst == targets);
    CHECK(g.kills_meridians());
  }
  CHECK(boundary_item("X_K_complement").meridian == w("[x, b]*[z, f]^-1"));
  CHECK(boundary_item("Z_complement").meridian.is_identity());
  const auto& xk = boundary_item("X_K_complement");
  CHECK(abelianize(with_relator(xk.presentation, xk.meridian)).to_string() == "0");
}
