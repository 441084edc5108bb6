#include "qk/cocycle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qk/errors.hpp"

namespace qk {

std::optional<CocycleViolation> find_cocycle_violation(const Quandle& q, const FiniteGroup& g,
                                                       std::span<const GElem> values, Exec exec) {
  const std::size_t n = q.size();
  if (values.size() != n * n) throw InvalidCocycle("cocycle needs n*n values");
  for (GElem v : values) {
    if (v >= g.order()) throw InvalidCocycle("cocycle value outside the coefficient group");
  }
  if (auto w = find_cc_violation(n, q.flat(), g.order(), g.table(), values, exec)) {
    return CocycleViolation{CocycleViolation::Kind::Cocycle, *w};
  }
  for (Elem x = 0; x < n; ++x) {
    if (values[std::size_t{x} * n + x] != g.identity()) return CocycleViolation{CocycleViolation::Kind::Quandle, {x, x, x}};
  }
  return std::nullopt;
}

ConstantCocycle::ConstantCocycle(QuandlePtr q, GroupPtr g, std::vector<GElem> values, Exec exec)
    : q_(std::move(q)), g_(std::move(g)), values_(std::move(values)) {
  if (!q_ || !g_) throw std::invalid_argument("cocycle needs a quandle and a group");
  if (auto v = find_cocycle_violation(*q_, *g_, values_, exec)) {
    const Triple& t = v->at;
    if (v->kind == CocycleViolation::Kind::Quandle) {
      throw InvalidCocycle("beta(" + std::to_string(t.x) + "," + std::to_string(t.x) + ") is not the identity");
    }
    throw InvalidCocycle("cocycle condition fails at (" + std::to_string(t.x) + "," + std::to_string(t.y) + "," +
                         std::to_string(t.z) + ")");
  }
}

ConstantCocycle ConstantCocycle::trivial(QuandlePtr q, GroupPtr g) {
  const std::size_t n = q->size();
  return ConstantCocycle(std::move(q), std::move(g), std::vector<GElem>(n * n, 0));
}

bool ConstantCocycle::is_trivial() const {
  return std::all_of(values_.begin(), values_.end(), [](GElem v) { return v == 0; });
}

bool weak_cocycle_check(const ConstantCocycle& b) {
  const Quandle& q = b.quandle();
  const std::size_t n = q.size();
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        bool lhs = b(q.op(x, y), q.op(x, z)) == b(x, q.op(y, z));
        bool rhs = b(x, z) == b(y, z);
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

bool is_u_normalized(const ConstantCocycle& b, Elem u) {
  for (Elem x = 0; x < b.quandle().size(); ++x) {
    if (b(x, u) != 0) return false;
  }
  return true;
}

ConstantCocycle normalize(const ConstantCocycle& b, Elem u) {
  const Quandle& q = b.quandle();
  const FiniteGroup& g = b.group();
  if (!q.is_latin()) throw NotLatin("normalization needs a latin quandle");
  const std::size_t n = q.size();
  std::vector<GElem> values(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      GElem left = g.inv(b(q.right_divide(q.op(x, y), u), u));
      GElem right = b(q.right_divide(y, u), u);
      values[std::size_t{x} * n + y] = g.mul(g.mul(left, b(x, y)), right);
    }
  }
  return ConstantCocycle(b.quandle_ptr(), b.group_ptr(), std::move(values));
}

ConstantCocycle conjugate_cocycle(const ConstantCocycle& b, GElem sigma) {
  const FiniteGroup& g = b.group();
  if (sigma >= g.order()) throw InvalidElement("conjugator outside the coefficient group");
  std::vector<GElem> values(b.values().begin(), b.values().end());
  for (GElem& v : values) v = g.conj(sigma, v);
  return ConstantCocycle(b.quandle_ptr(), b.group_ptr(), std::move(values));
}

bool is_coboundary_witness(const ConstantCocycle& a, const ConstantCocycle& b, std::span<const GElem> gamma) {
  const Quandle& q = a.quandle();
  const FiniteGroup& g = a.group();
  if (gamma.size() != q.size()) return false;
  for (Elem x = 0; x < q.size(); ++x) {
    for (Elem y = 0; y < q.size(); ++y) {
      if (b(x, y) != g.mul(g.mul(gamma[q.op(x, y)], a(x, y)), g.inv(gamma[y]))) return false;
    }
  }
  return true;
}

namespace {

void check_same_setting(const ConstantCocycle& a, const ConstantCocycle& b) {
  if (!(a.quandle() == b.quandle()) || !(a.group() == b.group())) {
    throw std::invalid_argument("cocycles live over different quandles or groups");
  }
}

}  // namespace

std::optional<CoboundaryWitness> cohomologous(const ConstantCocycle& a, const ConstantCocycle& b, Elem u) {
  check_same_setting(a, b);
  const Quandle& q = a.quandle();
  if (!q.is_latin()) {
    auto gamma = cohomologous_general(a, b);
    if (!gamma) return std::nullopt;
    return CoboundaryWitness{std::move(*gamma), std::nullopt};
  }
  const FiniteGroup& g = a.group();
  const ConstantCocycle an = normalize(a, u);
  const ConstantCocycle bn = normalize(b, u);
  const std::size_t n = q.size();
  for (GElem s = 0; s < g.order(); ++s) {
    bool match = true;
    for (std::size_t i = 0; i < n * n && match; ++i) match = bn.values()[i] == g.conj(s, an.values()[i]);
    if (!match) continue;
    // a_u = γ_a·a with γ_a(z) = a(z/u, u)⁻¹, likewise for b, and b_u = σ a_u σ⁻¹.
    std::vector<GElem> gamma(n);
    for (Elem z = 0; z < n; ++z) {
      GElem ga = g.inv(a(q.right_divide(z, u), u));
      GElem gb = g.inv(b(q.right_divide(z, u), u));
      gamma[z] = g.mul(g.mul(g.inv(gb), s), ga);
    }
    if (!is_coboundary_witness(a, b, gamma)) throw std::logic_error("cohomologous: witness check failed");
    return CoboundaryWitness{std::move(gamma), s};
  }
  return std::nullopt;
}

std::optional<std::vector<GElem>> cohomologous_general(const ConstantCocycle& a, const ConstantCocycle& b) {
  check_same_setting(a, b);
  const Quandle& q = a.quandle();
  const FiniteGroup& g = a.group();
  const std::size_t n = q.size();
  std::vector<GElem> gamma(n, 0);
  std::vector<bool> done(n, false);
  for (Elem root = 0; root < n; ++root) {
    if (done[root]) continue;
    const std::vector<Point> component = orbit(q.left_sections(), root);
    bool found = false;
    for (GElem start = 0; start < g.order() && !found; ++start) {
      // γ(xy) = b(x,y) γ(y) a(x,y)⁻¹ determines γ on the component.
      std::vector<std::int64_t> trial(n, -1);
      trial[root] = start;
      std::vector<Elem> queue{root};
      bool ok = true;
      for (std::size_t head = 0; head < queue.size() && ok; ++head) {
        const Elem y = queue[head];
        for (Elem x = 0; x < n && ok; ++x) {
          const Elem xy = q.op(x, y);
          const GElem want = g.mul(g.mul(b(x, y), static_cast<GElem>(trial[y])), g.inv(a(x, y)));
          if (trial[xy] < 0) {
            trial[xy] = want;
            queue.push_back(xy);
          } else if (static_cast<GElem>(trial[xy]) != want) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      found = true;
      for (Point p : component) {
        gamma[p] = static_cast<GElem>(trial[p]);
        done[p] = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!is_coboundary_witness(a, b, gamma)) throw std::logic_error("cohomologous_general: witness check failed");
  return gamma;
}

ConstantCocycle embed_coeffs(const ConstantCocycle& b) {
  const FiniteGroup& g = b.group();
  auto sym = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(g.order()));
  const std::vector<Perm> regular = left_regular(g);
  std::vector<GElem> image(g.order());
  for (GElem a = 0; a < g.order(); ++a) image[a] = *sym->element_of(regular[a]);
  std::vector<GElem> values(b.values().begin(), b.values().end());
  for (GElem& v : values) v = image[v];
  return ConstantCocycle(b.quandle_ptr(), std::move(sym), std::move(values));
}

PairMaps::PairMaps(QuandlePtr q, Elem u) : q_(std::move(q)), u_(u) {
  if (!q_->is_latin()) throw NotLatin("pair maps need a latin quandle");
  if (u_ >= q_->size()) throw InvalidElement("base point out of range");
}

Pair PairMaps::f(Pair p) const {
  const auto [x, y] = p;
  return {q_->op(x, q_->right_divide(y, u_)), q_->op(x, u_)};
}

Pair PairMaps::g(Pair p) const { return {q_->op(u_, p.first), q_->op(u_, p.second)}; }

Pair PairMaps::h(Pair p) const {
  const auto [x, y] = p;
  return {q_->op(q_->right_divide(y, q_->left_divide(x, u_)), x), y};
}

Pair PairMaps::k(Pair p) const {
  const auto [x, y] = p;
  return {q_->right_divide(u_, q_->left_divide(q_->right_divide(q_->op(x, y), u_), y)), y};
}

namespace {

std::vector<Pair> images_under(const PairMaps& m, unsigned maps, Pair p) {
  std::vector<Pair> out;
  if (maps & kMapF) out.push_back(m.f(p));
  if (maps & kMapG) out.push_back(m.g(p));
  if (maps & kMapH) out.push_back(m.h(p));
  return out;
}

}  // namespace

std::vector<Pair> orbit_of_pair(const PairMaps& m, unsigned maps, Pair p) {
  const std::size_t n = m.quandle().size();
  std::vector<bool> seen(n * n, false);
  std::vector<Pair> out{p};
  seen[m.index(p)] = true;
  // The maps are bijections of a finite set, so forward closure is the orbit.
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Pair next : images_under(m, maps, out[head])) {
      if (!seen[m.index(next)]) {
        seen[m.index(next)] = true;
        out.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

OrbitPartition full_partition(const PairMaps& m, unsigned maps) {
  const std::size_t n = m.quandle().size();
  const std::uint32_t unset = static_cast<std::uint32_t>(-1);
  OrbitPartition part;
  part.block_of.assign(n * n, unset);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (part.block_of[i] != unset) continue;
    std::vector<Pair> block = orbit_of_pair(m, maps, m.pair(i));
    for (Pair p : block) part.block_of[m.index(p)] = static_cast<std::uint32_t>(part.blocks.size());
    part.blocks.push_back(std::move(block));
  }
  return part;
}

GOrbitStructure g_orbit_structure(const PairMaps& m) {
  GOrbitStructure s;
  s.g_orbits = full_partition(m, kMapG);
  const OrbitPartition& part = s.g_orbits;
  for (const auto& block : part.blocks) {
    s.f_action.push_back(part.block(m, m.f(block.front())));
    s.h_action.push_back(part.block(m, m.h(block.front())));
  }
  const Quandle& q = m.quandle();
  const Elem u = m.base_point();
  s.base_orbit = part.block(m, {u, u});
  for (Elem x = 0; x < q.size(); ++x) {
    if (x == u) continue;
    s.f_family.push_back(part.block(m, {x, q.op(x, u)}));
    s.u_family.push_back(part.block(m, {x, q.left_divide(x, u)}));
  }
  for (auto* fam : {&s.f_family, &s.u_family}) {
    std::sort(fam->begin(), fam->end());
    fam->erase(std::unique(fam->begin(), fam->end()), fam->end());
  }
  return s;
}

std::size_t cycle_length(std::span<const std::uint32_t> action, std::uint32_t start) {
  std::size_t len = 1;
  for (std::uint32_t i = action[start]; i != start; i = action[i]) {
    if (++len > action.size()) throw std::logic_error("cycle_length: action is not a permutation");
  }
  return len;
}

std::size_t f_orbit_length(const PairMaps& m, Pair p) {
  std::size_t len = 1;
  const std::size_t limit = m.quandle().size() * m.quandle().size();
  for (Pair cur = m.f(p); cur != p; cur = m.f(cur)) {
    if (++len > limit) throw std::logic_error("f_orbit_length: no return to the start");
  }
  return len;
}

std::size_t f_orbit_length_recursive(const PairMaps& m, Pair p) {
  const Quandle& q = m.quandle();
  const auto [x, y] = p;
  const Elem y_over_u = q.right_divide(y, m.base_point());
  auto phi = [&](Elem z) { return q.op(x, q.op(y_over_u, z)); };
  Elem odd = y_over_u;  // φ^j(y/u)
  Elem even = x;        // φ^j(x)
  for (std::size_t j = 1; j <= q.size() + 1; ++j) {
    odd = phi(odd);
    if (odd == x) return 2 * j - 1;
    even = phi(even);
    if (even == x) return 2 * j;
  }
  throw std::logic_error("f_orbit_length_recursive: orbit longer than |X|");
}

std::size_t f_orbit_length_affine(const AffineQuandle& a, Pair p) {
  const FinAbGroup& base = a.base;
  const AbElem z = base.sub(base.element_at(p.first), base.element_at(a.quandle.right_divide(p.second, 0)));
  AbElem power = z;
  AbElem sum = base.zero();
  const std::size_t limit = 2 * base.order() + 2;
  for (std::size_t k = 1; k <= limit; ++k) {
    power = a.alpha(power);
    sum = (k % 2 == 1) ? base.sub(sum, power) : base.add(sum, power);
    if (sum == base.zero()) return k;
  }
  throw std::logic_error("f_orbit_length_affine: no vanishing alternating sum");
}

namespace {

struct Constraint {
  // val[a]·val[b] = val[c]·val[d]
  std::uint32_t a, b, c, d;
  auto operator<=>(const Constraint&) const = default;
};

class Search {
 public:
  Search(const FiniteGroup& g, std::size_t orbits, std::vector<Constraint> constraints, std::uint64_t budget)
      : g_(g), cons_(std::move(constraints)), touching_(orbits), value_(orbits, -1), budget_(budget) {
    for (std::size_t i = 0; i < cons_.size(); ++i) {
      const Constraint& c = cons_[i];
      std::uint32_t ids[4] = {c.a, c.b, c.c, c.d};
      for (int j = 0; j < 4; ++j) {
        bool repeat = false;
        for (int k = 0; k < j; ++k) repeat |= ids[k] == ids[j];
        if (!repeat) touching_[ids[j]].push_back(i);
      }
    }
  }

  /// Pins an orbit before the search; false on contradiction.
  bool pin(std::uint32_t orbit, GElem v) { return assign(orbit, v); }

  void run(const std::vector<std::uint32_t>& order, std::vector<std::vector<GElem>>& out) {
    for (const Constraint& c : cons_) {
      if (!consistent(c)) return;
    }
    dfs(order, 0, out);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool known(std::uint32_t o) const { return value_[o] >= 0; }
  GElem val(std::uint32_t o) const { return static_cast<GElem>(value_[o]); }

  bool consistent(const Constraint& c) const {
    if (!known(c.a) || !known(c.b) || !known(c.c) || !known(c.d)) return true;
    return g_.mul(val(c.a), val(c.b)) == g_.mul(val(c.c), val(c.d));
  }

  // Sets `orbit` and everything forced by single-unknown constraints.
  bool assign(std::uint32_t orbit, GElem v) {
    std::vector<std::uint32_t> queue{orbit};
    set(orbit, v);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t ci : touching_[queue[head]]) {
        const Constraint& c = cons_[ci];
        const std::uint32_t ids[4] = {c.a, c.b, c.c, c.d};
        int unknown = -1;
        int positions = 0;
        bool several = false;
        for (int j = 0; j < 4; ++j) {
          if (known(ids[j])) continue;
          if (unknown >= 0 && ids[unknown] != ids[j]) several = true;
          unknown = j;
          ++positions;
        }
        if (positions == 0) {
          if (!consistent(c)) return false;
          continue;
        }
        if (several || positions > 1) continue;
        GElem solved = 0;
        switch (unknown) {
          case 0:
            solved = g_.mul(g_.mul(val(c.c), val(c.d)), g_.inv(val(c.b)));
            break;
          case 1:
            solved = g_.mul(g_.inv(val(c.a)), g_.mul(val(c.c), val(c.d)));
            break;
          case 2:
            solved = g_.mul(g_.mul(val(c.a), val(c.b)), g_.inv(val(c.d)));
            break;
          default:
            solved = g_.mul(g_.inv(val(c.c)), g_.mul(val(c.a), val(c.b)));
            break;
        }
        set(ids[unknown], solved);
        queue.push_back(ids[unknown]);
        if (!consistent(c)) return false;
      }
    }
    return true;
  }

  void set(std::uint32_t orbit, GElem v) {
    value_[orbit] = v;
    trail_.push_back(orbit);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  void dfs(const std::vector<std::uint32_t>& order, std::size_t pos, std::vector<std::vector<GElem>>& out) {
    while (pos < order.size() && known(order[pos])) ++pos;
    if (pos == order.size()) {
      std::vector<GElem> solution(value_.size());
      for (std::size_t i = 0; i < value_.size(); ++i) solution[i] = static_cast<GElem>(value_[i]);
      out.push_back(std::move(solution));
      return;
    }
    for (GElem v = 0; v < g_.order(); ++v) {
      if (++nodes_ > budget_) throw BudgetExceeded("h2c search exceeded its node budget");
      const std::size_t mark = trail_.size();
      if (assign(order[pos], v)) dfs(order, pos + 1, out);
      undo(mark);
    }
  }

  const FiniteGroup& g_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<std::int64_t> value_;
  std::vector<std::uint32_t> trail_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

H2cResult h2c(QuandlePtr q, GroupPtr g, const H2cOptions& options) {
  if (!q->is_latin()) throw NotLatin("h2c needs a latin quandle");
  const std::size_t n = q->size();
  const Elem u = options.base_point;
  const PairMaps maps(q, u);
  const OrbitPartition part = full_partition(maps, kMapAll);
  const std::size_t orbits = part.size();

  std::set<Constraint> unique;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        Constraint c{part.block(maps, {q->op(x, y), q->op(x, z)}), part.block(maps, {x, z}),
                     part.block(maps, {x, q->op(y, z)}), part.block(maps, {y, z})};
        if (c.a == c.c && c.b == c.d) continue;
        unique.insert(c);
      }
    }
  }

  Search search(*g, orbits, std::vector<Constraint>(unique.begin(), unique.end()), options.node_budget);
  std::vector<bool> pinned(orbits, false);
  for (Elem x = 0; x < n; ++x) {
    pinned[part.block(maps, {x, u})] = true;
    pinned[part.block(maps, {x, x})] = true;
  }
  H2cResult result;
  result.orbit_count = orbits;
  bool feasible = true;
  std::vector<std::uint32_t> order;
  for (std::uint32_t o = 0; o < orbits; ++o) {
    if (pinned[o]) {
      feasible = feasible && search.pin(o, g->identity());
    } else {
      order.push_back(o);
    }
  }
  result.unknown_orbits = order.size();
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return part.blocks[a].size() < part.blocks[b].size();
  });

  std::vector<std::vector<GElem>> solutions;
  if (feasible) search.run(order, solutions);
  result.nodes = search.nodes();

  auto expand = [&](const std::vector<GElem>& orbit_values) {
    std::vector<GElem> values(n * n);
    for (std::size_t i = 0; i < n * n; ++i) values[i] = orbit_values[part.block_of[i]];
    return ConstantCocycle(q, g, std::move(values), options.exec);
  };

  if (!solutions.empty() && g->order() > options.max_conjugator_order) {
    throw BudgetExceeded("coefficient group too large for conjugacy bucketing");
  }
  std::map<std::vector<GElem>, std::size_t> classes;
  for (const auto& s : solutions) {
    ConstantCocycle c = expand(s);
    if (!is_u_normalized(c, u)) throw std::logic_error("h2c produced a cocycle that is not normalized");
    result.normalized.push_back(std::move(c));
    std::vector<GElem> best = s;
    for (GElem sigma = 1; sigma < g->order(); ++sigma) {
      std::vector<GElem> conj(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) conj[i] = g->conj(sigma, s[i]);
      if (conj < best) best = std::move(conj);
    }
    ++classes[best];
  }
  for (const auto& [canonical, size] : classes) {
    result.representatives.push_back(expand(canonical));
    result.class_sizes.push_back(size);
  }
  return result;
}

bool h2c_is_trivial(QuandlePtr q, GroupPtr g, const H2cOptions& options) {
  return h2c(std::move(q), std::move(g), options).class_count() == 1;
}

std::vector<std::size_t> h2c_counts_by_base_point(QuandlePtr q, GroupPtr g, H2cOptions options) {
  std::vector<std::size_t> counts;
  for (Elem u = 0; u < q->size(); ++u) {
    options.base_point = u;
    counts.push_back(h2c(q, g, options).class_count());
  }
  return counts;
}

}  // namespace qk
