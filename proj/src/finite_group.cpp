#include "qk/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qk/errors.hpp"

namespace qk {

FiniteGroup FiniteGroup::symmetric(std::size_t m) {
  if (m == 0) throw InvalidGroup("symmetric group needs at least one point");
  if (m > kMaxSymmetricDegree) {
    throw BudgetExceeded("symmetric coefficient groups are limited to " + std::to_string(kMaxSymmetricDegree) +
                         " points");
  }
  std::vector<Point> images(m);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Perm> perms;
  do {
    perms.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return from_permutations(std::move(perms), "Sym" + std::to_string(m));
}

FiniteGroup FiniteGroup::abelian(const FinAbGroup& a) {
  if (a.order() > kMaxTableGroupOrder) {
    throw BudgetExceeded("abelian coefficient group too large for a Cayley table");
  }
  FiniteGroup g;
  g.order_ = a.order();
  g.table_.resize(g.order_ * g.order_);
  std::vector<AbElem> elems(g.order_);
  for (std::size_t i = 0; i < g.order_; ++i) elems[i] = a.element_at(i);
  for (std::size_t i = 0; i < g.order_; ++i) {
    for (std::size_t j = 0; j < g.order_; ++j) {
      g.table_[i * g.order_ + j] = static_cast<GElem>(a.index_of(a.add(elems[i], elems[j])));
    }
  }
  for (const AbElem& x : elems) g.labels_.push_back(a.rank() == 1 ? std::to_string(x[0]) : to_string(x));
  g.descriptor_ = to_string(a);
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<GElem>> table, std::vector<std::string> labels,
                                    std::string descriptor) {
  const std::size_t n = table.size();
  if (n == 0) throw InvalidGroup("group table is empty");
  if (n > kMaxTableGroupOrder) throw BudgetExceeded("group table too large");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidGroup("group table is not square");
    for (GElem v : row) {
      if (v >= n) throw InvalidGroup("group table entry out of range");
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw InvalidGroup("label count does not match group order");

  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (!e) throw InvalidGroup("group table has no identity");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw InvalidGroup("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")");
        }
      }
    }
  }
  // Relabel so that the identity sits at index 0.
  std::vector<GElem> to_new(n);
  std::iota(to_new.begin(), to_new.end(), GElem{0});
  std::swap(to_new[0], to_new[*e]);
  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(n * n);
  g.labels_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    g.labels_[to_new[a]] = labels[a];
    for (std::size_t b = 0; b < n; ++b) g.table_[to_new[a] * n + to_new[b]] = to_new[table[a][b]];
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < n && !has_inverse; ++b) has_inverse = g.table_[a * n + b] == 0;
    if (!has_inverse) throw InvalidGroup("element " + g.labels_[a] + " has no inverse");
  }
  g.descriptor_ = std::move(descriptor);
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(std::vector<Perm> elements, std::string descriptor) {
  if (elements.empty()) throw InvalidGroup("permutation group has no elements");
  if (elements.size() > kMaxTableGroupOrder) throw BudgetExceeded("permutation group too large for a table");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const std::size_t degree = elements.front().degree();
  if (elements.front() != Perm::identity(degree)) throw InvalidGroup("permutation set lacks the identity");
  FiniteGroup g;
  g.order_ = elements.size();
  g.perms_ = std::move(elements);
  g.table_.resize(g.order_ * g.order_);
  for (std::size_t a = 0; a < g.order_; ++a) {
    for (std::size_t b = 0; b < g.order_; ++b) {
      auto c = g.element_of(compose(g.perms_[a], g.perms_[b]));
      if (!c) throw InvalidGroup("permutation set is not closed under composition");
      g.table_[a * g.order_ + b] = *c;
    }
    g.labels_.push_back(cycle_string(g.perms_[a]));
  }
  g.descriptor_ = std::move(descriptor);
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  inverse_.assign(order_, 0);
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) {
      if (table_[a * order_ + b] == 0) {
        inverse_[a] = static_cast<GElem>(b);
        break;
      }
    }
  }
  class_of_.assign(order_, static_cast<GElem>(order_));
  for (GElem a = 0; a < order_; ++a) {
    if (class_of_[a] != order_) continue;
    for (GElem s = 0; s < order_; ++s) class_of_[conj(s, a)] = a;
  }
}

bool FiniteGroup::is_abelian() const {
  for (GElem a = 0; a < order_; ++a) {
    for (GElem b = a + 1; b < order_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::optional<GElem> FiniteGroup::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<GElem>(i);
  }
  return std::nullopt;
}

std::optional<GElem> FiniteGroup::element_of(const Perm& p) const {
  auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
  if (it == perms_.end() || *it != p) return std::nullopt;
  return static_cast<GElem>(it - perms_.begin());
}

std::size_t FiniteGroup::class_count() const {
  std::size_t count = 0;
  for (GElem a = 0; a < order_; ++a) count += class_of_[a] == a;
  return count;
}

std::string cycle_string(const Perm& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.degree(), false);
  for (Point i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out << '(';
    for (Point j = i; !seen[j]; j = p(j)) {
      if (j != i) out << ' ';
      out << j;
      seen[j] = true;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::vector<Perm> left_regular(const FiniteGroup& g) {
  std::vector<Perm> out;
  out.reserve(g.order());
  for (GElem a = 0; a < g.order(); ++a) {
    std::vector<Point> images(g.order());
    for (GElem x = 0; x < g.order(); ++x) images[x] = g.mul(a, x);
    out.emplace_back(std::move(images));
  }
  return out;
}

std::vector<GElem> hom_images(const AbHom& alpha) {
  const FinAbGroup& a = alpha.source();
  std::vector<GElem> out(a.order());
  for (std::uint64_t i = 0; i < a.order(); ++i) {
    out[i] = static_cast<GElem>(alpha.target().index_of(alpha(a.element_at(i))));
  }
  return out;
}

}  // namespace qk
