#include "exotica/surfaces/surface.hpp"

#include "exotica/error.hpp"
#include "exotica/group/abelian.hpp"

namespace exotica::surfaces {

SurfaceHomology::SurfaceHomology(int genus) : genus_(genus) {
  if (genus < 1) throw Error("surface genus must be at least 1");
  pairing_ = IntMatrix(rank(), rank());
  for (int i = 1; i <= genus; ++i) {
    basis_.push_back("a" + std::to_string(i));
    basis_.push_back("b" + std::to_string(i));
    const auto k = static_cast<std::size_t>(2 * (i - 1));
    pairing_(k, k + 1) = 1;
    pairing_(k + 1, k) = -1;
  }
}

std::int64_t SurfaceHomology::pairing(std::span<const std::int64_t> x,
                                      std::span<const std::int64_t> y) const {
  if (x.size() != rank() || y.size() != rank()) throw Error("homology class has wrong dimension");
  const auto jy = pairing_.apply(y);
  std::int64_t out = 0;
  for (std::size_t i = 0; i < rank(); ++i) out = checked_add(out, checked_mul(x[i], jy[i]));
  return out;
}

HomologyClass class_of_word(const group::Word& w, const SurfaceHomology& s) {
  for (const auto& l : w.letters()) {
    bool known = false;
    for (const auto& b : s.basis()) known = known || b == l.gen;
    if (!known) throw Error("'" + l.gen + "' is not a surface generator of genus " + std::to_string(s.genus()));
  }
  return {group::exponent_vector(w, s.basis())};
}

IntMatrix transvection(const HomologyClass& c, const SurfaceHomology& s) {
  const std::size_t n = s.rank();
  if (c.coefficients.size() != n) throw Error("homology class has wrong dimension");
  // M = I + c (J c)^T
  const auto jc = s.pairing_matrix().apply(c.coefficients);
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = checked_add(m(i, j), checked_mul(c.coefficients[i], jc[j]));
  return m;
}

IntMatrix compose(const TwistSequence& seq, const SurfaceHomology& s) {
  if (seq.curves.empty()) throw Error("twist sequence is empty");
  IntMatrix m = IntMatrix::identity(s.rank());
  for (const auto& c : seq.curves) m = m * transvection(c, s);
  return m;
}

bool preserves_pairing(const IntMatrix& m, const SurfaceHomology& s) {
  if (m.rows() != s.rank() || m.cols() != s.rank()) return false;
  return m.transpose() * s.pairing_matrix() * m == s.pairing_matrix();
}

group::Word surface_relator(int genus) {
  group::Word r;
  for (int i = 1; i <= genus; ++i)
    r = r * group::commutator(group::Word::generator("a" + std::to_string(i)),
                              group::Word::generator("b" + std::to_string(i)));
  return r;
}

group::Presentation lefschetz_pi1(int genus, std::span<const group::Word> cycles) {
  const SurfaceHomology s(genus);
  std::vector<group::Word> rels{surface_relator(genus)};
  rels.insert(rels.end(), cycles.begin(), cycles.end());
  return group::Presentation(s.basis(), std::move(rels));
}

}  // namespace exotica::surfaces
