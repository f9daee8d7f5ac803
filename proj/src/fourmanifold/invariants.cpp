#include <algorithm>
#include "exotica/fourmanifold/invariants.hpp"

#include <cctype>
#include <map>
#include <regex>
#include <vector>

#include "exotica/error.hpp"

namespace exotica::fourmanifold {

namespace {

const std::map<Flag, std::string>& flag_names() {
  static const std::map<Flag, std::string> names{
      {Flag::SimplyConnected, "simply_connected"}, {Flag::Symplectic, "symplectic"},
      {Flag::Minimal, "minimal"},                  {Flag::Irreducible, "irreducible"},
      {Flag::SWNontrivial, "sw_nontrivial"},       {Flag::SWTrivial, "sw_trivial"},
      {Flag::Standard, "standard"}};
  return names;
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0) throw Error(std::string("non-integral ") + what);
  return num / den;
}

}  // namespace

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Odd:
      return "odd";
    case Parity::Even:
      return "even";
    case Parity::Unknown:
      break;
  }
  return "unknown";
}

std::string to_string(Flag f) { return flag_names().at(f); }

Parity parse_parity(std::string_view s) {
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  if (s == "unknown") return Parity::Unknown;
  throw Error("unknown parity '" + std::string(s) + "'");
}

Flag parse_flag(std::string_view s) {
  for (const auto& [f, n] : flag_names())
    if (n == s) return f;
  throw Error("unknown flag '" + std::string(s) + "'");
}

InvariantRecord::InvariantRecord(std::string name, std::int64_t e, std::int64_t sigma,
                                 std::optional<std::int64_t> b1, Parity parity, std::set<Flag> flags)
    : name_(std::move(name)), e_(e), sigma_(sigma), b1_(b1), parity_(parity), flags_(std::move(flags)) {}

InvariantRecord InvariantRecord::from_characteristic_numbers(std::string name, std::int64_t c1sq,
                                                             std::int64_t sigma, std::int64_t chi_h,
                                                             std::optional<std::int64_t> b1) {
  InvariantRecord r(std::move(name), 4 * chi_h - sigma, sigma, b1);
  if (r.c1sq() != c1sq)
    throw Error("inconsistent characteristic numbers: c1sq " + std::to_string(c1sq) +
                " but 3 sigma + 2 e = " + std::to_string(r.c1sq()));
  return r;
}

std::optional<std::int64_t> InvariantRecord::chi_h() const noexcept {
  if ((e_ + sigma_) % 4 != 0) return std::nullopt;
  return (e_ + sigma_) / 4;
}

std::int64_t InvariantRecord::b2_plus() const {
  if (!b1_) throw Error("b1 of '" + name_ + "' is pending");
  return exact_div(e_ - 2 + 2 * *b1_ + sigma_, 2, "b2+");
}

std::int64_t InvariantRecord::b2_minus() const { return b2_plus() - sigma_; }

InvariantRecord InvariantRecord::renamed(std::string name) const {
  InvariantRecord r = *this;
  r.name_ = std::move(name);
  return r;
}

InvariantRecord InvariantRecord::with_b1(std::int64_t b1) const {
  if (b1 < 0) throw Error("b1 must be non-negative");
  InvariantRecord r = *this;
  r.b1_ = b1;
  return r;
}

InvariantRecord InvariantRecord::with_parity(Parity p) const {
  InvariantRecord r = *this;
  r.parity_ = p;
  return r;
}

InvariantRecord InvariantRecord::with_flag(Flag f) const {
  InvariantRecord r = *this;
  r.flags_.insert(f);
  return r;
}

InvariantRecord InvariantRecord::without_flag(Flag f) const {
  InvariantRecord r = *this;
  r.flags_.erase(f);
  return r;
}

void InvariantRecord::validate() const {
  if (b1_) {
    if (*b1_ < 0) throw Error("'" + name_ + "': negative b1");
    const std::int64_t twice = e_ - 2 + 2 * *b1_ + sigma_;
    if (twice % 2 != 0) throw Error("'" + name_ + "': e - 2 + 2 b1 + sigma is odd");
    if (b2_plus() < 0 || b2_minus() < 0) throw Error("'" + name_ + "': negative b2+ or b2-");
    if (has(Flag::SimplyConnected) && *b1_ != 0) throw Error("'" + name_ + "': simply connected with b1 != 0");
  }
  if (has(Flag::SimplyConnected) && has(Flag::Symplectic) && !chi_h())
    throw Error("'" + name_ + "': symplectic and simply connected but (e + sigma)/4 is not integral");
  if (has(Flag::SWTrivial) && has(Flag::SWNontrivial))
    throw Error("'" + name_ + "': both SW trivial and SW nontrivial");
}

std::string InvariantRecord::to_block() const {
  std::string out = "name: \"" + name_ + "\", e: " + std::to_string(e_) + ", sigma: " + std::to_string(sigma_);
  if (b1_) out += ", b1: " + std::to_string(*b1_);
  out += ", c1sq: " + std::to_string(c1sq());
  if (auto chi = chi_h()) out += ", chi_h: " + std::to_string(*chi);
  out += ", parity: " + to_string(parity_) + ", flags: [";
  bool first = true;
  for (auto f : flags_) {
    if (!first) out += ", ";
    out += to_string(f);
    first = false;
  }
  return out + "]";
}

namespace {

class BlockParser {
 public:
  BlockParser(std::string_view text, int line, int column) : text_(text), line_(line), col_(column) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    std::string out;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-' ||
            text_[pos_] == '+')) {
      out += text_[pos_];
      advance();
    }
    if (out.empty()) fail("expected a value");
    return out;
  }
  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      out += text_[pos_];
      advance();
    }
    expect('"');
    return out;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

std::int64_t to_int(const std::string& s, const BlockParser& p) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used != s.size()) p.fail("expected integer, found '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    p.fail("expected integer, found '" + s + "'");
  }
}

}  // namespace

InvariantRecord parse_record(std::string_view body, int line, int column) {
  BlockParser p(body, line, column);
  std::string name = "unnamed";
  std::map<std::string, std::int64_t> ints;
  Parity parity = Parity::Unknown;
  std::set<Flag> flags;
  std::set<std::string> seen;
  while (!p.at_end()) {
    const int kl = p.line();
    const int kc = p.column();
    const std::string key = p.word();
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", kl, kc);
    p.expect(':');
    if (key == "name") {
      name = p.peek('"') ? p.quoted() : p.word();
    } else if (key == "parity") {
      try {
        parity = parse_parity(p.word());
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        p.fail(e.what());
      }
    } else if (key == "flags") {
      p.expect('[');
      if (!p.accept(']')) {
        do {
          try {
            flags.insert(parse_flag(p.word()));
          } catch (const ParseError&) {
            throw;
          } catch (const Error& e) {
            p.fail(e.what());
          }
        } while (p.accept(','));
        p.expect(']');
      }
    } else if (key == "e" || key == "sigma" || key == "c1sq" || key == "chi_h" || key == "b1") {
      ints[key] = to_int(p.word(), p);
    } else {
      throw ParseError("unknown record key '" + key + "'", kl, kc);
    }
    if (!p.accept(',')) {
      if (!p.at_end()) p.fail("expected ',' between record fields");
    }
  }

  if (!ints.count("sigma")) throw ParseError("record needs 'sigma'", line, column);
  const std::int64_t sigma = ints["sigma"];
  std::int64_t e = 0;
  if (ints.count("e")) {
    e = ints["e"];
  } else if (ints.count("chi_h")) {
    e = 4 * ints["chi_h"] - sigma;
  } else if (ints.count("c1sq")) {
    const std::int64_t twice_e = ints["c1sq"] - 3 * sigma;
    if (twice_e % 2 != 0) throw ParseError("c1sq - 3 sigma must be even", line, column);
    e = twice_e / 2;
  } else {
    throw ParseError("record needs 'e', 'chi_h' or 'c1sq'", line, column);
  }
  std::optional<std::int64_t> b1;
  if (ints.count("b1")) b1 = ints["b1"];
  InvariantRecord r(name, e, sigma, b1, parity, flags);
  if (ints.count("c1sq") && ints["c1sq"] != r.c1sq())
    throw ParseError("c1sq " + std::to_string(ints["c1sq"]) + " disagrees with 3 sigma + 2 e = " +
                         std::to_string(r.c1sq()),
                     line, column);
  if (ints.count("chi_h") && r.chi_h() != ints["chi_h"])
    throw ParseError("chi_h " + std::to_string(ints["chi_h"]) + " disagrees with (e + sigma)/4", line, column);
  try {
    r.validate();
  } catch (const Error& err) {
    throw ParseError(err.what(), line, column);
  }
  return r;
}

std::string standard_sum_name(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) return "S4";
  auto term = [](std::int64_t n, const char* base) {
    return (n == 1 ? std::string() : std::to_string(n)) + base;
  };
  std::string out;
  if (p > 0) out = term(p, "CP2");
  if (q > 0) out += (out.empty() ? "" : " # ") + term(q, "CP2bar");
  return out;
}

InvariantRecord standard(std::string_view name) {
  std::string key;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c))) key += c;
  const std::set<Flag> sc_std{Flag::SimplyConnected, Flag::Standard};

  if (key == "S4") return {"S4", 2, 0, 0, Parity::Even, sc_std};
  if (key == "S2xS2") {
    auto f = sc_std;
    f.insert(Flag::Symplectic);
    return {"S2xS2", 4, 0, 0, Parity::Even, f};
  }
  if (key == "T2xS2") return {"T2xS2", 0, 0, 2, Parity::Even, {Flag::Standard, Flag::Symplectic}};

  static const std::regex term_re("^([0-9]*)(CP2bar|CP2)$");
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::size_t start = 0;
  bool any = false;
  while (start <= key.size()) {
    const std::size_t hash = key.find('#', start);
    const std::string term = key.substr(start, hash == std::string::npos ? std::string::npos : hash - start);
    std::smatch m;
    if (!std::regex_match(term, m, term_re)) throw Error("unknown standard manifold '" + std::string(name) + "'");
    const std::int64_t count = m[1].length() == 0 ? 1 : std::stoll(m[1].str());
    if (count < 1) throw Error("unknown standard manifold '" + std::string(name) + "'");
    (m[2] == "CP2" ? p : q) += count;
    any = true;
    if (hash == std::string::npos) break;
    start = hash + 1;
  }
  if (!any) throw Error("unknown standard manifold '" + std::string(name) + "'");
  auto flags = sc_std;
  if (p == 1) flags.insert(Flag::Symplectic);
  return {standard_sum_name(p, q), 2 + p + q, p - q, 0, Parity::Odd, flags};
}

InvariantRecord blow_up(const InvariantRecord& a, std::int64_t n) {
  if (n < 0) throw Error("blow-up count must be non-negative");
  if (n == 0) return a;
  std::set<Flag> flags;
  for (auto f : {Flag::SimplyConnected, Flag::Symplectic, Flag::Standard})
    if (a.has(f)) flags.insert(f);
  // Merge with a trailing "# kCP2bar" so repeated blow-ups name the same manifold.
  std::string base = a.name();
  std::int64_t total = n;
  if (const auto hash = base.rfind(" # "); hash != std::string::npos && base.ends_with("CP2bar")) {
    const std::string count = base.substr(hash + 3, base.size() - hash - 3 - 6);
    if (count.empty() || std::all_of(count.begin(), count.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      total += count.empty() ? 1 : std::stoll(count);
      base = base.substr(0, hash);
    }
  }
  const std::string name = base + " # " + (total == 1 ? std::string() : std::to_string(total)) + "CP2bar";
  return {name, a.euler() + n, a.signature() - n, a.b1(), Parity::Odd, flags};
}

InvariantRecord fiber_sum(const InvariantRecord& a, const InvariantRecord& b, std::int64_t genus) {
  if (genus < 0) throw Error("fiber sum genus must be non-negative");
  const std::int64_t surface_euler = 2 - 2 * genus;
  std::set<Flag> flags;
  if (a.has(Flag::Symplectic) && b.has(Flag::Symplectic)) flags.insert(Flag::Symplectic);
  return {a.name() + " #_" + std::to_string(genus) + " " + b.name(),
          a.euler() + b.euler() - 2 * surface_euler,
          a.signature() + b.signature(),
          std::nullopt,
          Parity::Unknown,
          flags};
}

bool is_four_sphere(const InvariantRecord& r) {
  return r.has(Flag::Standard) && r.has(Flag::SimplyConnected) && r.euler() == 2 && r.signature() == 0 &&
         r.b1() == 0;
}

InvariantRecord connected_sum(const InvariantRecord& a, const InvariantRecord& b) {
  if (is_four_sphere(b)) return a;
  if (is_four_sphere(a)) return b;
  std::optional<std::int64_t> b1;
  if (a.b1() && b.b1()) b1 = *a.b1() + *b.b1();
  Parity parity = Parity::Unknown;
  if (a.parity() == Parity::Odd || b.parity() == Parity::Odd)
    parity = Parity::Odd;
  else if (a.parity() == Parity::Even && b.parity() == Parity::Even)
    parity = Parity::Even;
  std::set<Flag> flags;
  for (auto f : {Flag::SimplyConnected, Flag::Standard})
    if (a.has(f) && b.has(f)) flags.insert(f);
  std::string name = a.name() + " # " + b.name();
  if (a.has(Flag::Standard) && b.has(Flag::Standard) && a.has(Flag::SimplyConnected) &&
      b.has(Flag::SimplyConnected) && parity == Parity::Odd && b1 == 0) {
    InvariantRecord tmp(name, a.euler() + b.euler() - 2, a.signature() + b.signature(), b1, parity, flags);
    name = standard_sum_name(tmp.b2_plus(), tmp.b2_minus());
    if (tmp.b2_plus() == 1) flags.insert(Flag::Symplectic);
  }
  return {name, a.euler() + b.euler() - 2, a.signature() + b.signature(), b1, parity, flags};
}

std::string freedman_type(const InvariantRecord& a) {
  if (!a.has(Flag::SimplyConnected)) throw Error("'" + a.name() + "' is not known to be simply connected");
  if (!a.b1()) throw Error("'" + a.name() + "' has pending b1");
  if (*a.b1() != 0) throw Error("'" + a.name() + "': inconsistent Betti data (simply connected with b1 != 0)");
  const std::int64_t twice = a.euler() - 2 + a.signature();
  if (twice % 2 != 0) throw Error("'" + a.name() + "': inconsistent Betti data (e + sigma odd)");
  const std::int64_t p = a.b2_plus();
  const std::int64_t q = a.b2_minus();
  if (p < 0 || q < 0) throw Error("'" + a.name() + "': inconsistent Betti data (negative b2)");
  if (p == 0 && q == 0) return "S4";
  if (a.parity() == Parity::Even) throw Error("'" + a.name() + "': even intersection forms are not classified here");
  if (a.parity() == Parity::Unknown) throw Error("'" + a.name() + "': intersection form parity is unknown");
  return standard_sum_name(p, q);
}

}  // namespace exotica::fourmanifold
