#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qk/finite_group.hpp"
#include "qk/kernels.hpp"
#include "qk/quandle.hpp"

namespace qk {

using QuandlePtr = std::shared_ptr<const Quandle>;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct CocycleViolation {
  enum class Kind { Cocycle, Quandle };
  Kind kind;
  /// For Kind::Quandle all three coordinates are the offending x.
  Triple at;
};

/// First violation of β(xy,xz)β(x,z) = β(x,yz)β(y,z) or β(x,x) = 1, in
/// that order of checks; `values` is n×n row-major.
std::optional<CocycleViolation> find_cocycle_violation(const Quandle& q, const FiniteGroup& g,
                                                       std::span<const GElem> values, Exec exec = Exec::Auto);

/// Constant quandle cocycle β: X×X → G. Construction validates both
/// conditions and throws InvalidCocycle naming the witness.
class ConstantCocycle {
 public:
  ConstantCocycle(QuandlePtr q, GroupPtr g, std::vector<GElem> values, Exec exec = Exec::Auto);

  static ConstantCocycle trivial(QuandlePtr q, GroupPtr g);

  const Quandle& quandle() const { return *q_; }
  const FiniteGroup& group() const { return *g_; }
  const QuandlePtr& quandle_ptr() const { return q_; }
  const GroupPtr& group_ptr() const { return g_; }

  GElem operator()(Elem x, Elem y) const { return values_[std::size_t{x} * q_->size() + y]; }
  std::span<const GElem> values() const { return values_; }
  bool is_trivial() const;

  friend bool operator==(const ConstantCocycle& a, const ConstantCocycle& b) { return a.values_ == b.values_; }

 private:
  QuandlePtr q_;
  GroupPtr g_;
  std::vector<GElem> values_;
};

/// β(xy,xz) = β(x,yz) exactly when β(x,z) = β(y,z), for all triples.
bool weak_cocycle_check(const ConstantCocycle& b);

bool is_u_normalized(const ConstantCocycle& b, Elem u);
/// β_u(x,y) = β((xy)/u,u)⁻¹ β(x,y) β(y/u,u). Throws NotLatin.
ConstantCocycle normalize(const ConstantCocycle& b, Elem u);
/// σ β(x,y) σ⁻¹
ConstantCocycle conjugate_cocycle(const ConstantCocycle& b, GElem sigma);

struct CoboundaryWitness {
  /// b(x,y) = γ(xy) a(x,y) γ(y)⁻¹
  std::vector<GElem> gamma;
  /// Conjugator relating the u-normalized forms (latin inputs only).
  std::optional<GElem> sigma;
};

/// Checks the witness equation on every pair.
bool is_coboundary_witness(const ConstantCocycle& a, const ConstantCocycle& b, std::span<const GElem> gamma);

/// Latin quandles: normalize both at u and look for one conjugator.
/// Other quandles: falls back to cohomologous_general.
std::optional<CoboundaryWitness> cohomologous(const ConstantCocycle& a, const ConstantCocycle& b, Elem u = 0);
/// Search for γ component by component of the LMlt action; works for any
/// quandle.
std::optional<std::vector<GElem>> cohomologous_general(const ConstantCocycle& a, const ConstantCocycle& b);

/// j(β)(x,y) = left regular image of β(x,y), as a cocycle over Sym(|G|).
ConstantCocycle embed_coeffs(const ConstantCocycle& b);

using Pair = std::pair<Elem, Elem>;

/// The bijections of X×X used to pin down u-normalized cocycles:
///   f(x,y) = (x▷(y/u), x▷u)
///   g(x,y) = (u▷x, u▷y)
///   h(x,y) = ((y/(x\u))▷x, y)
///   k(x,y) = (u/(((x▷y)/u)\y), y), the inverse of h.
class PairMaps {
 public:
  /// Throws NotLatin.
  PairMaps(QuandlePtr q, Elem u);

  const Quandle& quandle() const { return *q_; }
  Elem base_point() const { return u_; }
  std::size_t index(Pair p) const { return std::size_t{p.first} * q_->size() + p.second; }
  Pair pair(std::size_t i) const {
    return {static_cast<Elem>(i / q_->size()), static_cast<Elem>(i % q_->size())};
  }

  Pair f(Pair p) const;
  Pair g(Pair p) const;
  Pair h(Pair p) const;
  Pair k(Pair p) const;
  /// x▷y
  Elem product(Pair p) const { return q_->op(p.first, p.second); }

 private:
  QuandlePtr q_;
  Elem u_;
};

enum MapSet : unsigned { kMapF = 1, kMapG = 2, kMapH = 4, kMapAll = 7 };

/// Orbit of `p` under the group generated by the chosen maps, sorted.
std::vector<Pair> orbit_of_pair(const PairMaps& m, unsigned maps, Pair p);

/// Blocks are sorted internally and listed by their smallest pair.
struct OrbitPartition {
  std::vector<std::vector<Pair>> blocks;
  /// Block id of pair index x*n + y.
  std::vector<std::uint32_t> block_of;

  std::size_t size() const { return blocks.size(); }
  std::uint32_t block(const PairMaps& m, Pair p) const { return block_of[m.index(p)]; }
};

OrbitPartition full_partition(const PairMaps& m, unsigned maps);

/// The g-orbits with the induced actions of f and h and the two
/// distinguished families {O_g(x, x▷u)} and {O_g(x, x\u)}, x ≠ u.
struct GOrbitStructure {
  OrbitPartition g_orbits;
  std::vector<std::uint32_t> f_action;
  std::vector<std::uint32_t> h_action;
  std::uint32_t base_orbit = 0;
  std::vector<std::uint32_t> f_family;
  std::vector<std::uint32_t> u_family;
};

GOrbitStructure g_orbit_structure(const PairMaps& m);

/// Cycle length of `start` under a map given as an index table.
std::size_t cycle_length(std::span<const std::uint32_t> action, std::uint32_t start);

/// |O_f(x,y)| by iterating f.
std::size_t f_orbit_length(const PairMaps& m, Pair p);
/// Smallest k ≥ 1 with f_k(x,y) = x, where f_k = φ^{k/2}(x) for even k and
/// φ^{(k+1)/2}(y/u) for odd k, φ = L_x L_{y/u}.
std::size_t f_orbit_length_recursive(const PairMaps& m, Pair p);
/// Smallest n ≥ 1 with Σ_{j=1..n} (−1)^j α^j(x − y/0) = 0 (base point 0).
std::size_t f_orbit_length_affine(const AffineQuandle& a, Pair p);

struct H2cOptions {
  Elem base_point = 0;
  std::uint64_t node_budget = 50'000'000;
  std::uint64_t max_conjugator_order = 10'000;
  Exec exec = Exec::Auto;
};

struct H2cResult {
  /// One u-normalized cocycle per class; the trivial class comes first.
  std::vector<ConstantCocycle> representatives;
  /// Number of u-normalized cocycles in each class.
  std::vector<std::size_t> class_sizes;
  /// Every u-normalized cocycle found, in search order.
  std::vector<ConstantCocycle> normalized;
  std::size_t orbit_count = 0;
  std::size_t unknown_orbits = 0;
  std::uint64_t nodes = 0;

  std::size_t class_count() const { return representatives.size(); }
};

/// H²_c(X, G) for latin X. Throws NotLatin or BudgetExceeded.
H2cResult h2c(QuandlePtr q, GroupPtr g, const H2cOptions& options = {});
bool h2c_is_trivial(QuandlePtr q, GroupPtr g, const H2cOptions& options = {});
/// Class count for every base point.
std::vector<std::size_t> h2c_counts_by_base_point(QuandlePtr q, GroupPtr g, H2cOptions options = {});

}  // namespace qk
