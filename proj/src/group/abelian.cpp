#include "exotica/group/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <utility>

#include "exotica/error.hpp"

namespace exotica::group {

namespace {

struct Pos {
  std::size_t r;
  std::size_t c;
};

std::optional<Pos> smallest_nonzero(const IntMatrix& m, std::size_t t) {
  std::optional<Pos> best;
  std::int64_t best_abs = 0;
  for (std::size_t r = t; r < m.rows(); ++r)
    for (std::size_t c = t; c < m.cols(); ++c) {
      const std::int64_t v = std::abs(m(r, c));
      if (v != 0 && (!best || v < best_abs)) {
        best = Pos{r, c};
        best_abs = v;
      }
    }
  return best;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] -= q * row[src]
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) = checked_add(m(dst, c), -checked_mul(q, m(src, c)));
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) = checked_add(m(r, dst), -checked_mul(q, m(r, src)));
}

}  // namespace

SmithForm smith_normal_form(IntMatrix m) {
  SmithForm out;
  const std::size_t diag = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  while (t < diag) {
    auto pivot = smallest_nonzero(m, t);
    if (!pivot) break;
    swap_rows(m, t, pivot->r);
    swap_cols(m, t, pivot->c);

    bool clean = false;
    while (!clean) {
      clean = true;
      const std::int64_t p = m(t, t);
      for (std::size_t r = t + 1; r < m.rows(); ++r)
        if (m(r, t) != 0) row_axpy(m, r, t, m(r, t) / p);
      for (std::size_t c = t + 1; c < m.cols(); ++c)
        if (m(t, c) != 0) col_axpy(m, c, t, m(t, c) / p);

      // Nonzero remainders are smaller than the pivot: re-pivot and repeat.
      bool line_dirty = false;
      for (std::size_t r = t + 1; r < m.rows() && !line_dirty; ++r) line_dirty = m(r, t) != 0;
      for (std::size_t c = t + 1; c < m.cols() && !line_dirty; ++c) line_dirty = m(t, c) != 0;
      if (line_dirty) {
        auto p2 = smallest_nonzero(m, t);
        swap_rows(m, t, p2->r);
        swap_cols(m, t, p2->c);
        clean = false;
        continue;
      }
      // Divisibility: fold an offending row into row t and go again.
      for (std::size_t r = t + 1; r < m.rows() && clean; ++r)
        for (std::size_t c = t + 1; c < m.cols(); ++c)
          if (m(r, c) % p != 0) {
            row_axpy(m, t, r, -1);
            clean = false;
            break;
          }
    }
    out.invariant_factors.push_back(std::abs(m(t, t)));
    ++t;
  }
  out.rank_deficiency = diag - out.invariant_factors.size();
  return out;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank == 1) out = "Z";
  if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
  for (auto t : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + std::to_string(t);
  }
  return out;
}

AbelianGroup parse_abelian_group(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  AbelianGroup g;
  if (s == "0" || s == "1") return g;
  std::size_t pos = 0;
  auto read_int = [&](std::size_t& p) {
    std::size_t start = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (start == p) throw Error("malformed abelian group '" + text + "'");
    return std::stoll(s.substr(start, p - start));
  };
  while (pos < s.size()) {
    if (s[pos] != 'Z') throw Error("malformed abelian group '" + text + "'");
    ++pos;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      const auto n = read_int(pos);
      if (n > 1) g.torsion.push_back(n);
    } else if (pos < s.size() && s[pos] == '^') {
      ++pos;
      g.free_rank += static_cast<std::size_t>(read_int(pos));
    } else {
      g.free_rank += 1;
    }
    if (pos < s.size()) {
      if (s[pos] != '+') throw Error("malformed abelian group '" + text + "'");
      ++pos;
    }
  }
  // Canonicalize arbitrary cyclic factors into a divisibility chain.
  if (!g.torsion.empty()) {
    IntMatrix d(g.torsion.size(), g.torsion.size());
    for (std::size_t i = 0; i < g.torsion.size(); ++i) d(i, i) = g.torsion[i];
    auto snf = smith_normal_form(d);
    g.torsion.clear();
    for (auto f : snf.invariant_factors)
      if (f > 1) g.torsion.push_back(f);
  }
  return g;
}

std::vector<std::int64_t> exponent_vector(const Word& w, const std::vector<std::string>& generators) {
  std::vector<std::int64_t> v(generators.size(), 0);
  for (const auto& l : w.letters()) {
    auto it = std::find(generators.begin(), generators.end(), l.gen);
    if (it == generators.end()) throw Error("unknown generator '" + l.gen + "'");
    v[static_cast<std::size_t>(it - generators.begin())] += l.sign;
  }
  return v;
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(p.relators().size(), p.generators().size());
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    auto v = exponent_vector(p.relators()[r], p.generators());
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[c];
  }
  return m;
}

AbelianGroup abelianize(const Presentation& p) {
  const auto snf = smith_normal_form(relation_matrix(p));
  AbelianGroup g;
  g.free_rank = p.generators().size() - snf.rank();
  for (auto f : snf.invariant_factors)
    if (f > 1) g.torsion.push_back(f);
  return g;
}

}  // namespace exotica::group
