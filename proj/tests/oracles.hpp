#pragma once

// Independent reference computations used only by the tests. They avoid the
// library's own algorithms: minors by cofactor expansion, reduction by
// repeated scanning, Fox calculus over Laurent polynomials, brute-force
// permutation representations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "exotica/group/coset.hpp"
#include "exotica/group/word.hpp"
#include "exotica/matrix.hpp"

namespace oracle {

inline std::vector<exotica::group::Letter> naive_reduce(std::vector<exotica::group::Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline std::int64_t det(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    out += (j % 2 ? -1 : 1) * m[0][j] * det(minor);
  }
  return out;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors s_k = d_k / d_{k-1}, d_k the gcd of all k x k minors.
inline std::vector<std::int64_t> invariant_factors(const exotica::IntMatrix& m) {
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rows);
    subsets(m.cols(), k, 0, cur, cols);
    std::int64_t g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        std::vector<std::vector<std::int64_t>> sub;
        for (auto r : rs) {
          std::vector<std::int64_t> row;
          for (auto c : cs) row.push_back(m(r, c));
          sub.push_back(row);
        }
        g = std::gcd(g, det(sub));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Traces every relator from every coset using only table lookups.
inline bool relators_close(const exotica::group::CosetTable& t, const exotica::group::Presentation& p) {
  std::map<std::string, std::size_t> col;
  for (std::size_t g = 0; g < t.generators().size(); ++g) col[t.generators()[g]] = 2 * g;
  for (std::int64_t c = 0; c < t.index(); ++c)
    for (const auto& r : p.relators()) {
      std::int32_t x = static_cast<std::int32_t>(c);
      for (const auto& l : r.letters()) x = t.image(x, col.at(l.gen) + (l.sign < 0 ? 1 : 0));
      if (x != c) return false;
    }
  return true;
}

// Laurent polynomials in t, as exponent -> coefficient.
using Laurent = std::map<int, std::int64_t>;

inline void add_term(Laurent& p, int e, std::int64_t c) {
  p[e] += c;
  if (p[e] == 0) p.erase(e);
}

// Fox derivative d r / d gen, abelianized by sending every generator to t.
inline Laurent fox_derivative(const exotica::group::Word& r, const std::string& gen) {
  Laurent out;
  int prefix = 0;  // exponent of t for the prefix read so far
  for (const auto& l : r.letters()) {
    if (l.sign > 0) {
      if (l.gen == gen) add_term(out, prefix, 1);
      prefix += 1;
    } else {
      prefix -= 1;
      if (l.gen == gen) add_term(out, prefix, -1);
    }
  }
  return out;
}

// Shift to lowest degree 0 and make the leading coefficient positive.
inline std::vector<std::int64_t> normalize(const Laurent& p) {
  if (p.empty()) return {};
  const int lo = p.begin()->first;
  const int hi = p.rbegin()->first;
  std::vector<std::int64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [e, c] : p) out[static_cast<std::size_t>(e - lo)] = c;
  if (out.back() < 0)
    for (auto& c : out) c = -c;
  return out;
}

// Permutations of {0..n-1}; composition applies the left factor first, so
// words are read left to right as in the coset table.
template <std::size_t N>
using Perm = std::array<int, N>;

template <std::size_t N>
Perm<N> compose(const Perm<N>& a, const Perm<N>& b) {
  Perm<N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = b[static_cast<std::size_t>(a[i])];
  return out;
}

template <std::size_t N>
Perm<N> inverse(const Perm<N>& a) {
  Perm<N> out{};
  for (std::size_t i = 0; i < N; ++i) out[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return out;
}

template <std::size_t N>
std::vector<Perm<N>> all_perms() {
  Perm<N> p{};
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm<N>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

template <std::size_t N>
Perm<N> evaluate(const exotica::group::Word& w, const std::map<std::string, Perm<N>>& images) {
  Perm<N> out{};
  std::iota(out.begin(), out.end(), 0);
  for (const auto& l : w.letters()) {
    const auto& g = images.at(l.gen);
    out = compose(out, l.sign > 0 ? g : inverse(g));
  }
  return out;
}

}  // namespace oracle
