#include <random>

#include "doctest.h"
#include "exotica/error.hpp"
#include "exotica/group/abelian.hpp"
#include "exotica/surfaces/surface.hpp"

using namespace exotica;
using namespace exotica::surfaces;

namespace {

group::Word w(const char* s) { return group::parse_word(s); }

// Independent symplectic form on Z^{2g}: <a_i, b_i> = 1, <b_i, a_i> = -1.
std::int64_t omega(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  std::int64_t out = 0;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) out += x[i] * y[i + 1] - x[i + 1] * y[i];
  return out;
}

std::vector<std::int64_t> column(const IntMatrix& m, std::size_t c) {
  std::vector<std::int64_t> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
  return out;
}

const std::vector<group::Word>& matsumoto() {
  static const std::vector<group::Word> words{w("b1*b2"), w("[a1, b1]"), w("b2*a2*b2^-1*a1"), w("b2*a2*a1*b1")};
  return words;
}

}  // namespace

TEST_CASE("surface homology basis and pairing") {
  const SurfaceHomology s(2);
  CHECK(s.basis() == std::vector<std::string>{"a1", "b1", "a2", "b2"});
  const IntMatrix& j = s.pairing_matrix();
  CHECK(j.transpose() * IntMatrix{{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}} == j);
  CHECK(j.determinant() == 1);
  const std::vector<std::int64_t> a1{1, 0, 0, 0}, b1{0, 1, 0, 0};
  CHECK(s.pairing(a1, b1) == 1);
  CHECK(s.pairing(b1, a1) == -1);
  CHECK_THROWS_AS(SurfaceHomology(0), Error);
}

TEST_CASE("classes of words") {
  const SurfaceHomology s(2);
  CHECK(class_of_word(w("b1*b2"), s).coefficients == std::vector<std::int64_t>{0, 1, 0, 1});
  CHECK(class_of_word(w("[a1, b1]"), s).coefficients == std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK(class_of_word(w("b2*a2*b2^-1*a1"), s).coefficients == std::vector<std::int64_t>{1, 0, 1, 0});
  CHECK(class_of_word(w("b2*a2*a1*b1"), s).coefficients == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK_THROWS_AS(class_of_word(w("c"), s), Error);
}

TEST_CASE("transvections preserve the intersection pairing") {
  const SurfaceHomology s(2);
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    HomologyClass c{{coeff(rng), coeff(rng), coeff(rng), coeff(rng)}};
    const IntMatrix m = transvection(c, s);
    const IntMatrix& j = s.pairing_matrix();
    CHECK(m.transpose() * j * m == j);
    CHECK(preserves_pairing(m, s));
    CHECK(m.determinant() == 1);
    // Defining formula on every basis vector, against the independent form.
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<std::int64_t> e(4, 0);
      e[k] = 1;
      std::vector<std::int64_t> expected = e;
      const std::int64_t t = omega(e, c.coefficients);
      for (std::size_t i = 0; i < 4; ++i) expected[i] += t * c.coefficients[i];
      CHECK(column(m, k) == expected);
    }
  }
}

TEST_CASE("compose applies the rightmost twist first") {
  const SurfaceHomology s(1);
  const HomologyClass a{{1, 0}}, b{{0, 1}};
  const IntMatrix ta = transvection(a, s), tb = transvection(b, s);
  CHECK(compose(TwistSequence{{a, b}}, s) == ta * tb);
  CHECK(compose(TwistSequence{{b, a}}, s) == tb * ta);
  // Braid relation on the torus holds at the level of H1.
  CHECK(ta * tb * ta == tb * ta * tb);
  CHECK((ta * tb).power(6) == IntMatrix::identity(2));
  CHECK_THROWS_AS(compose(TwistSequence{}, s), Error);
}

TEST_CASE("Matsumoto relation on H1") {
  const SurfaceHomology s(2);
  TwistSequence seq;
  for (const auto& word : matsumoto()) seq.curves.push_back(class_of_word(word, s));
  const IntMatrix once = compose(seq, s);
  CHECK(once == IntMatrix{{0, 0, -1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
  CHECK(once.power(2) == IntMatrix::identity(4));
  CHECK(preserves_pairing(once, s));
}

TEST_CASE("Lefschetz fibration fundamental group") {
  const auto p = lefschetz_pi1(2, matsumoto());
  CHECK(p.generators() == std::vector<std::string>{"a1", "b1", "a2", "b2"});
  CHECK(p.relators().size() == 5);
  CHECK(group::abelianize(p).to_string() == "Z^2");
  CHECK(surface_relator(2) == w("[a1, b1]*[a2, b2]"));
  CHECK(group::abelianize(lefschetz_pi1(1, {})).to_string() == "Z^2");
}
