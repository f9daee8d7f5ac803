#include "exotica/group/coset.hpp"

#include <limits>

#include "exotica/error.hpp"
#include "exotica/group/coset_audit.hpp"

namespace exotica::group {

CosetTable::CosetTable(CosetStatus status, std::int64_t budget, std::int64_t defined,
                       std::vector<std::string> generators, std::vector<std::int32_t> action)
    : status_(status),
      budget_(budget),
      defined_(defined),
      generators_(std::move(generators)),
      action_(std::move(action)) {}

std::int64_t CosetTable::index() const noexcept {
  if (!complete()) return 0;
  if (columns() == 0) return 1;
  return static_cast<std::int64_t>(action_.size() / columns());
}

std::int32_t CosetTable::trace(std::int32_t coset, const Word& w) const {
  for (const auto& l : w.letters()) {
    if (coset < 0) return -1;
    std::size_t g = 0;
    while (g < generators_.size() && generators_[g] != l.gen) ++g;
    if (g == generators_.size()) return -1;
    coset = image(coset, 2 * g + (l.sign > 0 ? 0 : 1));
  }
  return coset;
}

namespace {

using Columns = std::vector<int>;

Columns to_columns(const Word& w, const Presentation& p) {
  Columns out;
  out.reserve(w.length());
  for (const auto& l : w.letters()) {
    const int g = p.generator_index(l.gen);
    if (g < 0) throw Error("unknown generator '" + l.gen + "'");
    out.push_back(2 * g + (l.sign > 0 ? 0 : 1));
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(int ncols, std::int64_t budget) : ncols_(ncols), budget_(budget) { define_first(); }

  bool exhausted() const noexcept { return exhausted_; }
  std::int64_t defined() const noexcept { return static_cast<std::int64_t>(parent_.size()); }
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  void run(const std::vector<Columns>& relators, const std::vector<Columns>& subgroup) {
    for (const auto& w : subgroup) {
      scan_and_fill(0, w);
      if (exhausted_) return;
    }
    for (int alpha = 0; alpha < static_cast<int>(parent_.size()); ++alpha) {
      for (const auto& r : relators) {
        if (!live(alpha)) break;
        scan_and_fill(alpha, r);
        if (exhausted_) return;
      }
      for (int x = 0; x < ncols_ && live(alpha); ++x) {
        if (at(alpha, x) < 0) define(alpha, x);
        if (exhausted_) return;
      }
    }
  }

  // Live cosets renumbered breadth-first from coset 0.
  std::vector<std::int32_t> compact() const {
    const std::size_t n = parent_.size();
    std::vector<std::int32_t> order(n, -1);
    std::vector<int> bfs{0};
    order[0] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i)
      for (int x = 0; x < ncols_; ++x) {
        const int d = at(bfs[i], x);
        if (order[static_cast<std::size_t>(d)] < 0) {
          order[static_cast<std::size_t>(d)] = static_cast<std::int32_t>(bfs.size());
          bfs.push_back(d);
        }
      }
    std::vector<std::int32_t> action(bfs.size() * static_cast<std::size_t>(ncols_));
    for (std::size_t i = 0; i < bfs.size(); ++i)
      for (int x = 0; x < ncols_; ++x)
        action[i * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(x)] =
            order[static_cast<std::size_t>(at(bfs[i], x))];
    return action;
  }

 private:
  std::int32_t& at(int c, int x) {
    return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(x)];
  }
  std::int32_t at(int c, int x) const {
    return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(x)];
  }

  void define_first() {
    parent_.push_back(0);
    table_.assign(static_cast<std::size_t>(ncols_), -1);
  }

  int define(int from, int x) {
    if (defined() >= budget_) {
      exhausted_ = true;
      return -1;
    }
    const int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + static_cast<std::size_t>(ncols_), -1);
    at(from, x) = c;
    at(c, x ^ 1) = from;
    return c;
  }

  void scan_and_fill(int alpha, const Columns& w) {
    const int len = static_cast<int>(w.size());
    int f = alpha;
    int b = alpha;
    int i = 0;
    int j = len - 1;
    while (true) {
      while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, w[j] ^ 1) >= 0) b = at(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1) = f;
        return;
      }
      if (define(f, w[i]) < 0) return;
    }
  }

  int rep(int k) {
    int r = k;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(k)] != r) {
      const int next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  }

  void merge(int k, int l) {
    const int a = rep(k);
    const int b = rep(l);
    if (a == b) return;
    const int mu = std::min(a, b);
    const int nu = std::max(a, b);
    parent_[static_cast<std::size_t>(nu)] = mu;
    dead_queue_.push_back(nu);
  }

  void coincidence(int a, int b) {
    dead_queue_.clear();
    merge(a, b);
    for (std::size_t q = 0; q < dead_queue_.size(); ++q) {
      const int g = dead_queue_[q];
      for (int x = 0; x < ncols_; ++x) {
        const int d = at(g, x);
        if (d < 0) continue;
        at(d, x ^ 1) = -1;
        const int mu = rep(g);
        const int nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x));
        } else if (at(nu, x ^ 1) >= 0) {
          merge(mu, at(nu, x ^ 1));
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1) = mu;
        }
      }
    }
  }

  int ncols_;
  std::int64_t budget_;
  bool exhausted_ = false;
  std::vector<std::int32_t> table_;
  std::vector<int> parent_;
  std::vector<int> dead_queue_;
};

}  // namespace

CosetTable coset_enumerate(const Presentation& p, std::span<const Word> subgroup_gens,
                           std::int64_t budget) {
  if (budget < 1) throw Error("coset budget must be at least 1");
  if (budget > std::numeric_limits<std::int32_t>::max()) throw Error("coset budget too large");

  std::vector<Columns> relators;
  for (const auto& r : p.relators()) {
    auto cols = to_columns(r.cyclically_reduced(), p);
    if (!cols.empty()) relators.push_back(std::move(cols));
  }
  std::vector<Columns> subgroup;
  for (const auto& w : subgroup_gens) {
    auto cols = to_columns(w, p);
    if (!cols.empty()) subgroup.push_back(std::move(cols));
  }

  const int ncols = static_cast<int>(2 * p.generators().size());
  if (ncols == 0) return CosetTable(CosetStatus::Complete, budget, 1, {}, {});

  Enumerator e(ncols, budget);
  e.run(relators, subgroup);
  if (e.exhausted()) return CosetTable(CosetStatus::Exhausted, budget, e.defined(), p.generators(), {});
  return CosetTable(CosetStatus::Complete, budget, e.defined(), p.generators(), e.compact());
}

TrivialityResult is_trivial(const Presentation& p, std::int64_t budget) {
  const auto table = coset_enumerate(p, {}, budget);
  TrivialityResult out;
  out.cosets_defined = table.cosets_defined();
  if (!table.complete()) return out;
  if (!audit_serial(table, p, {}).ok) return out;
  out.order = table.index();
  out.kind = out.order == 1 ? Triviality::Trivial : Triviality::Finite;
  return out;
}

std::string to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial:
      return "trivial";
    case Triviality::Finite:
      return "finite";
    case Triviality::Unknown:
      break;
  }
  return "unknown";
}

}  // namespace exotica::group
