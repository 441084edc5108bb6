#include "qk/quandle.hpp"

#include <algorithm>
#include <numeric>

#include "qk/errors.hpp"

namespace qk {

QuandleAxiomError::QuandleAxiomError(Kind kind, std::uint32_t x, std::uint32_t y, std::uint32_t z)
    : Error(std::string(qk::to_string(kind)) + " at (" + std::to_string(x) + "," + std::to_string(y) + "," +
            std::to_string(z) + ")"),
      kind_(kind),
      x_(x),
      y_(y),
      z_(z) {}

const char* to_string(QuandleAxiomError::Kind kind) {
  switch (kind) {
    case QuandleAxiomError::Kind::NotLeftQuasigroup:
      return "not a left quasigroup";
    case QuandleAxiomError::Kind::NotLeftDistributive:
      return "not left distributive";
    case QuandleAxiomError::Kind::NotIdempotent:
      return "not idempotent";
  }
  return "unknown axiom";
}

Quandle Quandle::from_table(const std::vector<std::vector<Elem>>& table, Exec exec) {
  const std::size_t n = table.size();
  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw ParseError("quandle table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_flat(n, std::move(flat), exec);
}

Quandle Quandle::from_flat(std::size_t n, std::vector<Elem> flat, Exec exec) {
  using Kind = QuandleAxiomError::Kind;
  if (n == 0) throw ParseError("quandle must have at least one element");
  if (flat.size() != n * n) throw ParseError("quandle table has the wrong number of entries");
  for (Elem v : flat) {
    if (v >= n) throw ParseError("quandle table entry " + std::to_string(v) + " out of range");
  }
  Quandle q;
  q.n_ = n;
  q.table_ = std::move(flat);
  q.left_inv_.assign(n * n, 0);
  for (Elem x = 0; x < n; ++x) {
    std::vector<std::int64_t> first(n, -1);
    std::optional<std::pair<Elem, Elem>> clash;
    for (Elem y = 0; y < n; ++y) {
      Elem v = q.op(x, y);
      if (first[v] >= 0) {
        std::pair<Elem, Elem> c{static_cast<Elem>(first[v]), y};
        if (!clash || c < *clash) clash = c;
      } else {
        first[v] = y;
        q.left_inv_[std::size_t{x} * n + v] = y;
      }
    }
    if (clash) throw QuandleAxiomError(Kind::NotLeftQuasigroup, x, clash->first, clash->second);
  }
  for (Elem x = 0; x < n; ++x) {
    if (q.op(x, x) != x) throw QuandleAxiomError(Kind::NotIdempotent, x, x, x);
  }
  if (auto w = find_ld_violation(n, q.table_, exec)) {
    throw QuandleAxiomError(Kind::NotLeftDistributive, w->x, w->y, w->z);
  }
  for (Elem x = 0; x < n; ++x) {
    q.left_.emplace_back(std::vector<Point>(q.table_.begin() + std::size_t{x} * n,
                                            q.table_.begin() + std::size_t{x + 1} * n));
  }
  q.latin_ = true;
  q.right_inv_.assign(n * n, 0);
  for (Elem y = 0; y < n && q.latin_; ++y) {
    std::vector<bool> hit(n, false);
    for (Elem x = 0; x < n; ++x) {
      Elem v = q.op(x, y);
      if (hit[v]) {
        q.latin_ = false;
        break;
      }
      hit[v] = true;
      q.right_inv_[std::size_t{y} * n + v] = x;
    }
  }
  if (!q.latin_) q.right_inv_.clear();
  return q;
}

std::vector<std::vector<Elem>> Quandle::table() const {
  std::vector<std::vector<Elem>> out(n_);
  for (std::size_t x = 0; x < n_; ++x) out[x].assign(table_.begin() + x * n_, table_.begin() + (x + 1) * n_);
  return out;
}

Elem Quandle::right_divide(Elem x, Elem y) const {
  if (!latin_) throw NotLatin("right division needs a latin quandle");
  return right_inv_[std::size_t{y} * n_ + x];
}

Quandle projection_quandle(std::size_t n) {
  std::vector<Elem> flat(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) flat[x * n + y] = static_cast<Elem>(y);
  }
  return Quandle::from_flat(n, std::move(flat));
}

Quandle conjugation_quandle(std::span<const Perm> elements) {
  const std::size_t n = elements.size();
  std::vector<Elem> flat(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const Perm xinv = inverse(elements[x]);
    for (std::size_t y = 0; y < n; ++y) {
      Perm c = compose(compose(elements[x], elements[y]), xinv);
      auto it = std::find(elements.begin(), elements.end(), c);
      if (it == elements.end()) throw NotClosedUnderConjugation("conjugate " + to_string(c) + " is missing");
      flat[x * n + y] = static_cast<Elem>(it - elements.begin());
    }
  }
  return Quandle::from_flat(n, std::move(flat));
}

Quandle conjugation_quandle(const FiniteGroup& g, std::span<const GElem> elements) {
  const std::size_t n = elements.size();
  std::vector<std::int64_t> pos(g.order(), -1);
  for (std::size_t i = 0; i < n; ++i) pos.at(elements[i]) = static_cast<std::int64_t>(i);
  std::vector<Elem> flat(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      GElem c = g.conj(elements[x], elements[y]);
      if (pos[c] < 0) throw NotClosedUnderConjugation("conjugate " + g.label(c) + " is missing");
      flat[x * n + y] = static_cast<Elem>(pos[c]);
    }
  }
  return Quandle::from_flat(n, std::move(flat));
}

AffineQuandle affine(const FinAbGroup& base, const AbHom& alpha) {
  if (!(alpha.source() == base) || !is_automorphism(alpha)) {
    throw NotAutomorphism("affine quandle needs an automorphism of " + to_string(base));
  }
  const AbHom one_minus = sub(AbHom::identity(base), alpha);
  const std::size_t n = base.order();
  std::vector<AbElem> elems(n), a_img(n), b_img(n);
  for (std::size_t i = 0; i < n; ++i) {
    elems[i] = base.element_at(i);
    a_img[i] = alpha(elems[i]);
    b_img[i] = one_minus(elems[i]);
  }
  std::vector<Elem> flat(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) flat[x * n + y] = static_cast<Elem>(base.index_of(base.add(b_img[x], a_img[y])));
  }
  return AffineQuandle{base, alpha, Quandle::from_flat(n, std::move(flat))};
}

AffineQuandle affine_cyclic(std::int64_t m, std::int64_t n) {
  FinAbGroup z = FinAbGroup::cyclic(m);
  return affine(z, AbHom::scalar(z, n));
}

CosetQuandle coset_quandle(const FiniteGroup& g, std::vector<GElem> subgroup, std::vector<GElem> alpha) {
  const std::size_t order = g.order();
  if (alpha.size() != order) throw NotAutomorphism("automorphism must list one image per group element");
  std::vector<bool> hit(order, false);
  for (GElem a : alpha) {
    if (a >= order || hit[a]) throw NotAutomorphism("map is not a bijection of the group");
    hit[a] = true;
  }
  for (GElem a = 0; a < order; ++a) {
    for (GElem b = 0; b < order; ++b) {
      if (alpha[g.mul(a, b)] != g.mul(alpha[a], alpha[b])) throw NotAutomorphism("map is not a homomorphism");
    }
  }
  std::sort(subgroup.begin(), subgroup.end());
  subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
  std::vector<bool> in_h(order, false);
  for (GElem h : subgroup) {
    if (h >= order) throw InvalidGroup("subgroup element out of range");
    in_h[h] = true;
  }
  if (subgroup.empty() || !in_h[g.identity()]) throw InvalidGroup("subgroup must contain the identity");
  for (GElem a : subgroup) {
    for (GElem b : subgroup) {
      if (!in_h[g.mul(a, b)]) throw InvalidGroup("subgroup is not closed under multiplication");
    }
  }
  for (GElem h : subgroup) {
    if (alpha[h] != h) throw SubgroupNotFixed("element " + g.label(h) + " is moved by the automorphism");
  }

  CosetQuandle c{g, subgroup, alpha, {}, std::vector<Elem>(order, 0), projection_quandle(1)};
  std::vector<bool> placed(order, false);
  for (GElem x = 0; x < order; ++x) {
    if (placed[x]) continue;
    std::vector<GElem> coset;
    for (GElem h : subgroup) coset.push_back(g.mul(x, h));
    std::sort(coset.begin(), coset.end());
    for (GElem y : coset) {
      placed[y] = true;
      c.coset_of[y] = static_cast<Elem>(c.cosets.size());
    }
    c.cosets.push_back(std::move(coset));
  }
  const std::size_t n = c.cosets.size();
  std::vector<std::int64_t> flat(n * n, -1);
  for (GElem x = 0; x < order; ++x) {
    for (GElem y = 0; y < order; ++y) {
      Elem value = c.coset_of[g.mul(x, alpha[g.mul(g.inv(x), y)])];
      std::int64_t& slot = flat[std::size_t{c.coset_of[x]} * n + c.coset_of[y]];
      if (slot >= 0 && slot != value) throw SubgroupNotFixed("coset operation is not well defined");
      slot = value;
    }
  }
  c.quandle = Quandle::from_flat(n, std::vector<Elem>(flat.begin(), flat.end()));
  return c;
}

PermGroup lmlt(const Quandle& q, std::size_t cap) {
  return PermGroup(q.size(), q.left_sections()).enumerated(cap);
}

bool is_connected(const Quandle& q) { return orbit(q.left_sections(), 0).size() == q.size(); }

bool is_doubly_transitive(const Quandle& q) {
  return is_doubly_transitive(PermGroup(q.size(), q.left_sections()));
}

std::optional<std::size_t> semiregular_length(const Quandle& q) {
  std::size_t common = 0;
  for (const Perm& l : q.left_sections()) {
    for (std::size_t len : cycle_structure(l)) {
      if (len == 1) continue;
      if (common == 0) common = len;
      if (len != common) return std::nullopt;
    }
  }
  return common == 0 ? 1 : common;
}

bool affine_is_connected(const FinAbGroup& base, const AbHom& alpha) {
  if (!(alpha.source() == base) || !is_automorphism(alpha)) {
    throw NotAutomorphism("affine quandle needs an automorphism of " + to_string(base));
  }
  return is_automorphism(sub(AbHom::identity(base), alpha));
}

std::optional<std::vector<Elem>> find_isomorphism(const Quandle& a, const Quandle& b) {
  const std::size_t n = a.size();
  if (n > kMaxIsomorphismSize || b.size() > kMaxIsomorphismSize) {
    throw BudgetExceeded("isomorphism search is limited to " + std::to_string(kMaxIsomorphismSize) + " elements");
  }
  if (b.size() != n) return std::nullopt;
  std::vector<Elem> phi(n);
  std::iota(phi.begin(), phi.end(), Elem{0});
  do {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) {
      for (Elem y = 0; y < n && ok; ++y) ok = phi[a.op(x, y)] == b.op(phi[x], phi[y]);
    }
    if (ok) return phi;
  } while (std::next_permutation(phi.begin(), phi.end()));
  return std::nullopt;
}

std::vector<Elem> subquandle_generated(const Quandle& q, std::span<const Elem> gens) {
  std::vector<bool> in(q.size(), false);
  std::vector<Elem> members;
  for (Elem g : gens) {
    if (g >= q.size()) throw InvalidElement("generator out of range");
    if (!in[g]) {
      in[g] = true;
      members.push_back(g);
    }
  }
  // Closed under ▷ and \ since every left translation has finite order.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        Elem v = q.op(members[i], members[j]);
        if (!in[v]) {
          in[v] = true;
          members.push_back(v);
          grew = true;
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_connected_subquandle(const Quandle& q, std::span<const Elem> subset) {
  if (subset.empty()) return false;
  std::vector<Elem> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (subquandle_generated(q, sorted) != sorted) return false;
  std::vector<bool> seen(q.size(), false);
  std::vector<Elem> queue{sorted.front()};
  seen[sorted.front()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Elem x : sorted) {
      Elem v = q.op(x, queue[head]);
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return queue.size() == sorted.size();
}

}  // namespace qk
