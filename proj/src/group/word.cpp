#include "exotica/group/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "exotica/error.hpp"

namespace exotica::group {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

Word::Word(std::vector<Letter> raw) {
  letters_.reserve(raw.size());
  for (auto& l : raw) {
    if (l.sign != 1 && l.sign != -1) throw Error("letter exponent must be +1 or -1");
    push_reduced(letters_, l);
  }
}

Word Word::generator(const std::string& gen, int power) {
  return Word({Letter{gen, 1}}).pow(power);
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

Word Word::pow(int n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  for (const auto& l : rhs.letters_) push_reduced(out.letters_, l);
  return out;
}

Word Word::substitute(const std::string& gen, const Word& image) const {
  const Word image_inv = image.inverse();
  Word out;
  for (const auto& l : letters_) {
    if (l.gen != gen) {
      push_reduced(out.letters_, l);
      continue;
    }
    for (const auto& m : (l.sign > 0 ? image : image_inv).letters_) push_reduced(out.letters_, m);
  }
  return out;
}

Word Word::rename(const std::map<std::string, std::string>& names) const {
  std::vector<Letter> raw = letters_;
  for (auto& l : raw)
    if (auto it = names.find(l.gen); it != names.end()) l.gen = it->second;
  return Word(std::move(raw));
}

int Word::exponent_sum(const std::string& gen) const {
  int sum = 0;
  for (const auto& l : letters_)
    if (l.gen == gen) sum += l.sign;
  return sum;
}

int Word::occurrences(const std::string& gen) const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                        [&](const Letter& l) { return l.gen == gen; }));
}

Word Word::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo].gen == letters_[hi - 1].gen &&
         letters_[lo].sign == -letters_[hi - 1].sign) {
    ++lo;
    --hi;
  }
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                      letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return out;
}

std::vector<Word> Word::cyclic_conjugates() const {
  std::vector<Word> out;
  const Word base = cyclically_reduced();
  for (const Word& w : {base, base.inverse()}) {
    const auto& ls = w.letters_;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      Word rot;
      rot.letters_.reserve(ls.size());
      rot.letters_.insert(rot.letters_.end(), ls.begin() + static_cast<std::ptrdiff_t>(k), ls.end());
      rot.letters_.insert(rot.letters_.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k));
      out.push_back(std::move(rot));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const int exp = static_cast<int>(j - i) * letters_[i].sign;
    if (!out.empty()) out += '*';
    out += letters_[i].gen;
    if (exp != 1) out += "^" + std::to_string(exp);
    i = j;
  }
  return out;
}

Word commutator(const Word& g, const Word& h) { return g * h * g.inverse() * h.inverse(); }

Word reduce(std::span<const Letter> raw, std::span<const std::string> declared) {
  for (const auto& l : raw)
    if (std::find(declared.begin(), declared.end(), l.gen) == declared.end())
      throw Error("unknown generator '" + l.gen + "'");
  return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

}  // namespace exotica::group
