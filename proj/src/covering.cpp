#include "qk/covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "qk/errors.hpp"

namespace qk {

DynamicalCocycle::DynamicalCocycle(QuandlePtr q, std::size_t fiber, std::vector<std::uint32_t> images)
    : q_(std::move(q)), m_(fiber), images_(std::move(images)) {
  if (!q_) throw std::invalid_argument("dynamical cocycle needs a quandle");
  if (m_ == 0) throw InvalidCocycle("fiber must be nonempty");
  const std::size_t n = q_->size();
  if (images_.size() != n * n * m_ * m_) throw InvalidCocycle("dynamical cocycle needs n*n*m*m images");
  std::vector<char> seen(m_);
  for (std::size_t base = 0; base < images_.size(); base += m_) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t t = 0; t < m_; ++t) {
      const auto v = images_[base + t];
      if (v >= m_ || seen[v]) {
        const std::size_t s = (base / m_) % m_, xy = base / (m_ * m_);
        throw InvalidCocycle("beta(" + std::to_string(xy / n) + "," + std::to_string(xy % n) + "," +
                             std::to_string(s) + ") is not a permutation");
      }
      seen[v] = 1;
    }
  }
}

DynamicalCocycle DynamicalCocycle::trivial(QuandlePtr q, std::size_t fiber) {
  const std::size_t n = q ? q->size() : 0;
  std::vector<std::uint32_t> images(n * n * fiber * fiber);
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<std::uint32_t>(i % fiber);
  return DynamicalCocycle(std::move(q), fiber, std::move(images));
}

DynamicalCocycle DynamicalCocycle::from_constant(const ConstantCocycle& b) {
  const FiniteGroup& g = b.group();
  std::vector<Perm> perms = g.permutations();
  if (perms.empty()) perms = left_regular(g);
  const std::size_t n = b.quandle().size();
  const std::size_t m = perms.front().degree();
  std::vector<std::uint32_t> images;
  images.reserve(n * n * m * m);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Perm& p = perms[b(x, y)];
      for (std::size_t s = 0; s < m; ++s) images.insert(images.end(), p.images().begin(), p.images().end());
    }
  }
  return DynamicalCocycle(b.quandle_ptr(), m, std::move(images));
}

Perm DynamicalCocycle::map(Elem x, Elem y, std::uint32_t s) const {
  const std::size_t base = ((std::size_t{x} * q_->size() + y) * m_ + s) * m_;
  return Perm(std::vector<Point>(images_.begin() + base, images_.begin() + base + m_));
}

bool DynamicalCocycle::is_constant_in_third() const {
  const std::size_t block = m_ * m_;
  for (std::size_t base = 0; base < images_.size(); base += block) {
    for (std::size_t s = 1; s < m_; ++s) {
      if (!std::equal(images_.begin() + base, images_.begin() + base + m_, images_.begin() + base + s * m_)) {
        return false;
      }
    }
  }
  return true;
}

std::optional<ConstantCocycle> DynamicalCocycle::as_constant(Exec exec) const {
  if (!is_constant_in_third()) return std::nullopt;
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(m_));
  const std::size_t n = q_->size();
  std::vector<GElem> values(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) values[x * n + y] = *g->element_of(map(x, y, 0));
  }
  return ConstantCocycle(q_, std::move(g), std::move(values), exec);
}

std::optional<DynamicalViolation> find_dynamical_violation(const DynamicalCocycle& b, Exec exec) {
  const Quandle& q = b.quandle();
  const std::size_t m = b.fiber();
  if (auto w = find_dynamical_violation(q.size(), q.flat(), m, b.images(), exec)) {
    return DynamicalViolation{DynamicalViolation::Kind::Cocycle, *w};
  }
  for (Elem x = 0; x < q.size(); ++x) {
    for (std::uint32_t s = 0; s < m; ++s) {
      if (b.apply(x, x, s, s) != s) return DynamicalViolation{DynamicalViolation::Kind::Quandle, {x, x, x, s, s}};
    }
  }
  return std::nullopt;
}

Extension extend(const DynamicalCocycle& b, Exec exec) {
  if (auto v = find_dynamical_violation(b, exec)) {
    const auto& w = v->at;
    if (v->kind == DynamicalViolation::Kind::Quandle) {
      throw InvalidCocycle("beta(" + std::to_string(w.x) + "," + std::to_string(w.x) + "," + std::to_string(w.s) +
                           ") moves " + std::to_string(w.s));
    }
    throw InvalidCocycle("dynamical cocycle condition fails at (" + std::to_string(w.x) + "," + std::to_string(w.y) +
                         "," + std::to_string(w.z) + "," + std::to_string(w.s) + "," + std::to_string(w.t) + ")");
  }
  const Quandle& x = b.quandle();
  const std::size_t n = x.size(), m = b.fiber(), total = n * m;
  std::vector<Elem> flat(total * total);
  for (Elem a = 0; a < n; ++a) {
    for (std::uint32_t s = 0; s < m; ++s) {
      for (Elem c = 0; c < n; ++c) {
        for (std::uint32_t t = 0; t < m; ++t) {
          flat[(a * m + s) * total + c * m + t] = static_cast<Elem>(x.op(a, c) * m + b.apply(a, c, s, t));
        }
      }
    }
  }
  std::vector<Elem> projection(total);
  for (std::size_t i = 0; i < total; ++i) projection[i] = static_cast<Elem>(i / m);
  // Both conditions hold, so this is a quandle; from_flat re-verifies.
  auto y = std::make_shared<const Quandle>(Quandle::from_flat(total, std::move(flat), exec));
  return Extension{b.quandle_ptr(), m, b, std::nullopt, std::move(y), std::move(projection)};
}

Extension extend(const ConstantCocycle& b, Exec exec) {
  Extension e = extend(DynamicalCocycle::from_constant(b), exec);
  e.constant = b;
  return e;
}

bool Congruence::is_uniform() const {
  return std::all_of(blocks.begin(), blocks.end(), [&](const auto& b) { return b.size() == blocks.front().size(); });
}

Congruence make_congruence(std::span<const std::uint32_t> labels) {
  Congruence c;
  c.block_of.resize(labels.size());
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = renumber.emplace(labels[i], static_cast<std::uint32_t>(renumber.size()));
    if (fresh) c.blocks.emplace_back();
    c.block_of[i] = it->second;
    c.blocks[it->second].push_back(static_cast<Elem>(i));
  }
  return c;
}

Congruence identity_congruence(std::size_t n) {
  std::vector<std::uint32_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0u);
  return make_congruence(labels);
}

bool is_compatible(const Quandle& q, const Congruence& c) {
  const std::size_t n = q.size();
  if (c.block_of.size() != n) return false;
  const std::size_t k = c.size();
  std::vector<std::int64_t> image(k * k, -1);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      auto& slot = image[c.block_of[a] * k + c.block_of[b]];
      const auto blk = static_cast<std::int64_t>(c.block_of[q.op(a, b)]);
      if (slot < 0) slot = blk;
      else if (slot != blk) return false;
    }
  }
  return true;
}

QuotientResult quotient(const Quandle& y, const Congruence& c, Exec exec) {
  if (!is_compatible(y, c)) throw NotCompatible("partition is not compatible with the operation");
  if (!c.is_uniform()) throw NotUniform("congruence blocks differ in size");
  const std::size_t k = c.size(), m = c.blocks.front().size();

  std::vector<Elem> qflat(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) qflat[a * k + b] = c.block_of[y.op(c.blocks[a][0], c.blocks[b][0])];
  }
  auto x = std::make_shared<const Quandle>(Quandle::from_flat(k, std::move(qflat), exec));

  // h_[x] sends the i-th smallest element of a block to i.
  std::vector<std::uint32_t> pos(y.size());
  for (const auto& blk : c.blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) pos[blk[i]] = static_cast<std::uint32_t>(i);
  }
  // β([a],[b],s)(t) = h_[ab] L_{h_[a]⁻¹(s)} h_[b]⁻¹(t)
  std::vector<std::uint32_t> images(k * k * m * m);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t t = 0; t < m; ++t) {
          images[((a * k + b) * m + s) * m + t] = pos[y.op(c.blocks[a][s], c.blocks[b][t])];
        }
      }
    }
  }
  DynamicalCocycle beta(x, m, std::move(images));
  Extension e = extend(beta, exec);

  std::vector<Elem> iso(y.size());
  for (Elem v = 0; v < y.size(); ++v) iso[v] = static_cast<Elem>(c.block_of[v] * m + pos[v]);
  if (!is_homomorphism(y, *e.total, iso)) throw std::logic_error("quotient: reconstruction is not an isomorphism");
  return QuotientResult{std::move(x), c, std::move(beta), std::move(iso)};
}

Congruence ker_left_section(const Quandle& q) {
  std::map<Perm, std::uint32_t> rows;
  std::vector<std::uint32_t> labels(q.size());
  for (Elem a = 0; a < q.size(); ++a) {
    labels[a] = rows.emplace(q.left_section(a), static_cast<std::uint32_t>(rows.size())).first->second;
  }
  Congruence c = make_congruence(labels);
  if (!is_compatible(q, c)) throw std::logic_error("ker L is not compatible");
  return c;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Smallest congruence coarser than the union-find state.
Congruence close(const Quandle& q, UnionFind& uf) {
  const std::size_t n = q.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (uf.find(a) != uf.find(b)) continue;
        for (Elem z = 0; z < n; ++z) {
          changed |= uf.unite(q.op(z, a), q.op(z, b));
          changed |= uf.unite(q.op(a, z), q.op(b, z));
        }
      }
    }
  }
  std::vector<std::uint32_t> labels(n);
  for (Elem a = 0; a < n; ++a) labels[a] = uf.find(a);
  return make_congruence(labels);
}

}  // namespace

Congruence principal_congruence(const Quandle& q, Elem a, Elem b) {
  if (a >= q.size() || b >= q.size()) throw InvalidElement("element out of range");
  UnionFind uf(q.size());
  uf.unite(a, b);
  return close(q, uf);
}

Congruence join(const Quandle& q, const Congruence& a, const Congruence& b) {
  UnionFind uf(q.size());
  for (const auto* c : {&a, &b}) {
    for (const auto& blk : c->blocks) {
      for (Elem v : blk) uf.unite(blk.front(), v);
    }
  }
  return close(q, uf);
}

std::vector<Congruence> all_congruences(const Quandle& q) {
  const std::size_t n = q.size();
  if (n > kMaxCongruenceSize) {
    throw BudgetExceeded("congruence enumeration is limited to " + std::to_string(kMaxCongruenceSize) + " elements");
  }
  auto key = [](const Congruence& c) { return c.block_of; };
  std::map<std::vector<std::uint32_t>, Congruence> found;
  std::vector<Congruence> principal;
  found.emplace(key(identity_congruence(n)), identity_congruence(n));
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      Congruence c = principal_congruence(q, a, b);
      if (found.emplace(key(c), c).second) principal.push_back(c);
    }
  }
  // Every congruence is a join of principal ones.
  std::vector<Congruence> frontier = principal;
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& c : frontier) {
      for (const auto& p : principal) {
        Congruence j = join(q, c, p);
        if (found.emplace(key(j), j).second) next.push_back(j);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Congruence> out;
  for (auto& [k, c] : found) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Congruence& a, const Congruence& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.block_of < b.block_of;
  });
  return out;
}

bool is_homomorphism(const Quandle& from, const Quandle& to, std::span<const Elem> map) {
  if (map.size() != from.size()) return false;
  for (Elem v : map) {
    if (v >= to.size()) return false;
  }
  for (Elem a = 0; a < from.size(); ++a) {
    for (Elem b = 0; b < from.size(); ++b) {
      if (map[from.op(a, b)] != to.op(map[a], map[b])) return false;
    }
  }
  return true;
}

bool is_covering(const Quandle& y, const Quandle& x, std::span<const Elem> map, ConnectivityCheck check) {
  if (!is_homomorphism(y, x, map)) throw NotHomomorphism("map is not a quandle homomorphism");
  std::vector<char> hit(x.size());
  for (Elem v : map) hit[v] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw NotSurjective("map is not surjective");
  if (check == ConnectivityCheck::Required && !is_connected(y)) throw NotConnected("covering space is not connected");
  for (Elem a = 0; a < y.size(); ++a) {
    for (Elem b = a + 1; b < y.size(); ++b) {
      if (map[a] == map[b] && y.left_section(a) != y.left_section(b)) return false;
    }
  }
  return true;
}

Covering covering_of(const Extension& e) { return {e.total, e.base, e.projection}; }

namespace {

class EquivalenceSearch {
 public:
  EquivalenceSearch(const Covering& a, const Covering& b) : y_(*a.total), z_(*b.total), f_(a.map), g_(b.map) {
    const std::size_t n = y_.size();
    phi_.assign(n, kNone);
    used_.assign(n, 0);
  }

  std::optional<std::vector<Elem>> run() {
    if (dfs()) return phi_;
    return std::nullopt;
  }

 private:
  static constexpr Elem kNone = ~Elem{0};

  bool set(Elem v, Elem w) {
    if (phi_[v] != kNone) return phi_[v] == w;
    if (used_[w] || g_[w] != f_[v]) return false;
    phi_[v] = w;
    used_[w] = 1;
    trail_.push_back(v);
    return true;
  }

  // Closes the partial map under φ(a▷b) = φ(a)▷φ(b).
  bool propagate(std::size_t from) {
    for (std::size_t i = from; i < trail_.size(); ++i) {
      const Elem v = trail_[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const Elem w = trail_[j];
        if (!set(y_.op(v, w), z_.op(phi_[v], phi_[w]))) return false;
        if (!set(y_.op(w, v), z_.op(phi_[w], phi_[v]))) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      used_[phi_[trail_.back()]] = 0;
      phi_[trail_.back()] = kNone;
      trail_.pop_back();
    }
  }

  bool dfs() {
    const std::size_t n = y_.size();
    Elem v = 0;
    while (v < n && phi_[v] != kNone) ++v;
    if (v == n) return true;
    for (Elem w = 0; w < n; ++w) {
      const std::size_t mark = trail_.size();
      if (set(v, w) && propagate(mark) && dfs()) return true;
      undo(mark);
    }
    return false;
  }

  const Quandle& y_;
  const Quandle& z_;
  std::span<const Elem> f_;
  std::span<const Elem> g_;
  std::vector<Elem> phi_;
  std::vector<char> used_;
  std::vector<Elem> trail_;
};

}  // namespace

std::optional<std::vector<Elem>> find_covering_equivalence(const Covering& a, const Covering& b,
                                                           std::size_t max_size) {
  if (!(*a.base == *b.base)) throw std::invalid_argument("coverings of different quandles");
  if (a.total->size() > max_size || b.total->size() > max_size) {
    throw BudgetExceeded("covering equivalence search is limited to " + std::to_string(max_size) + " elements");
  }
  if (a.total->size() != b.total->size()) return std::nullopt;
  auto phi = EquivalenceSearch(a, b).run();
  if (phi && !is_homomorphism(*a.total, *b.total, *phi)) {
    throw std::logic_error("covering equivalence search returned a non-homomorphism");
  }
  return phi;
}

bool coverings_equivalent(const Covering& a, const Covering& b, std::size_t max_size) {
  return find_covering_equivalence(a, b, max_size).has_value();
}

bool coverings_equivalent(const Extension& a, const Extension& b, std::size_t max_size) {
  if (!(*a.base == *b.base)) throw std::invalid_argument("extensions of different quandles");
  if (a.fiber != b.fiber) return false;
  if (a.fiber <= kMaxSymmetricDegree) {
    auto ca = a.cocycle.as_constant();
    auto cb = b.cocycle.as_constant();
    if (ca && cb) return cohomologous(*ca, *cb).has_value();
  }
  return coverings_equivalent(covering_of(a), covering_of(b), max_size);
}

}  // namespace qk
