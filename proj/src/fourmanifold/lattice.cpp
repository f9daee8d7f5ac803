#include "exotica/fourmanifold/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "exotica/error.hpp"

namespace exotica::fourmanifold {

IntersectionLattice::IntersectionLattice(std::vector<std::string> basis, IntMatrix gram)
    : basis_(std::move(basis)), gram_(std::move(gram)) {
  if (gram_.rows() != basis_.size() || gram_.cols() != basis_.size())
    throw Error("Gram matrix does not match the basis size");
  if (gram_.transpose() != gram_) throw Error("Gram matrix is not symmetric");
  std::set<std::string> seen;
  for (const auto& b : basis_)
    if (!seen.insert(b).second) throw Error("duplicate basis class '" + b + "'");
}

ClassVector IntersectionLattice::parse_class(std::string_view text) const {
  ClassVector v(rank(), 0);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw Error("bad class '" + std::string(text) + "': " + msg);
  };
  bool first = true;
  skip();
  if (pos < text.size() && text[pos] == '0') {
    ++pos;
    skip();
    if (pos != text.size()) fail("trailing input");
    return v;
  }
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) fail("empty");
      break;
    }
    std::int64_t sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    std::int64_t coeff = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        coeff = coeff * 10 + (text[pos++] - '0');
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    std::string name;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      name += text[pos++];
    if (name.empty()) fail("expected a basis class");
    auto it = std::find(basis_.begin(), basis_.end(), name);
    if (it == basis_.end()) fail("unknown basis class '" + name + "'");
    v[static_cast<std::size_t>(it - basis_.begin())] += sign * coeff;
    first = false;
  }
  return v;
}

std::string IntersectionLattice::format_class(const ClassVector& v) const {
  if (v.size() != rank()) throw Error("class vector has wrong dimension");
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t c = v[i];
    if (c == 0) continue;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a);
    out += basis_[i];
  }
  return out.empty() ? "0" : out;
}

std::int64_t IntersectionLattice::pairing(const ClassVector& x, const ClassVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw Error("class vector has wrong dimension");
  const auto gy = gram_.apply(y);
  std::int64_t out = 0;
  for (std::size_t i = 0; i < rank(); ++i) out = checked_add(out, checked_mul(x[i], gy[i]));
  return out;
}

IntersectionLattice orthogonal_sum(const IntersectionLattice& a, const IntersectionLattice& b) {
  std::vector<std::string> basis = a.basis();
  basis.insert(basis.end(), b.basis().begin(), b.basis().end());
  IntMatrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  return IntersectionLattice(std::move(basis), std::move(g));
}

IntersectionLattice hyperbolic(const std::string& x, const std::string& y) {
  return IntersectionLattice({x, y}, IntMatrix{{0, 1}, {1, 0}});
}

IntersectionLattice diagonal(const std::vector<std::string>& names, std::int64_t square) {
  IntMatrix g(names.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) g(i, i) = square;
  return IntersectionLattice(names, std::move(g));
}

std::int64_t adjunction_genus(const IntersectionLattice& l, const ClassVector& c, const ClassVector& k) {
  const std::int64_t total = l.pairing(k, c) + l.square(c);
  if (total % 2 != 0)
    throw Error("K.C + C.C = " + std::to_string(total) + " is odd; class data is inconsistent");
  return 1 + total / 2;
}

}  // namespace exotica::fourmanifold
