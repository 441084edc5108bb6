#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qk/cocycle.hpp"
#include "qk/kernels.hpp"
#include "qk/quandle.hpp"

namespace qk {

/// β: X×X×S → Sym(S), stored as images: map(x,y,s)(t) at
/// ((x*n + y)*m + s)*m + t. Construction only checks that every β(x,y,s)
/// is a permutation; the cocycle conditions are checked separately.
class DynamicalCocycle {
 public:
  DynamicalCocycle(QuandlePtr q, std::size_t fiber, std::vector<std::uint32_t> images);

  static DynamicalCocycle trivial(QuandlePtr q, std::size_t fiber);
  /// Constant cocycle acting through its permutation form; groups without
  /// one act by their left regular representation.
  static DynamicalCocycle from_constant(const ConstantCocycle& b);

  const Quandle& quandle() const { return *q_; }
  const QuandlePtr& quandle_ptr() const { return q_; }
  std::size_t fiber() const { return m_; }
  std::span<const std::uint32_t> images() const { return images_; }

  std::uint32_t apply(Elem x, Elem y, std::uint32_t s, std::uint32_t t) const {
    return images_[((std::size_t{x} * q_->size() + y) * m_ + s) * m_ + t];
  }
  Perm map(Elem x, Elem y, std::uint32_t s) const;

  /// β(x,y,s) independent of s.
  bool is_constant_in_third() const;
  /// The cocycle over Sym(fiber) when constant in the third argument.
  std::optional<ConstantCocycle> as_constant(Exec exec = Exec::Auto) const;

 private:
  QuandlePtr q_;
  std::size_t m_;
  std::vector<std::uint32_t> images_;
};

struct DynamicalViolation {
  enum class Kind { Cocycle, Quandle };
  Kind kind;
  /// For Kind::Quandle only x and s are meaningful.
  Quintuple at;
};

/// First violation of
///   β(xy,xz,β(x,y,s)(t))∘β(x,z,s) = β(x,yz,s)∘β(y,z,t)
/// or of β(x,x,s)(s) = s.
std::optional<DynamicalViolation> find_dynamical_violation(const DynamicalCocycle& b, Exec exec = Exec::Auto);
inline bool is_dynamical_cocycle(const DynamicalCocycle& b, Exec exec = Exec::Auto) {
  return !find_dynamical_violation(b, exec).has_value();
}

/// X×_β S with (x,s)▷(y,t) = (xy, β(x,y,s)(t)); (x,s) has index x*|S| + s.
struct Extension {
  QuandlePtr base;
  std::size_t fiber;
  DynamicalCocycle cocycle;
  std::optional<ConstantCocycle> constant;
  QuandlePtr total;
  std::vector<Elem> projection;
};

/// Throws InvalidCocycle.
Extension extend(const DynamicalCocycle& b, Exec exec = Exec::Auto);
Extension extend(const ConstantCocycle& b, Exec exec = Exec::Auto);

/// Partition of a quandle's elements; blocks are numbered by their
/// smallest element and listed sorted.
struct Congruence {
  std::vector<std::uint32_t> block_of;
  std::vector<std::vector<Elem>> blocks;

  std::size_t size() const { return blocks.size(); }
  bool is_uniform() const;
  friend bool operator==(const Congruence& a, const Congruence& b) { return a.block_of == b.block_of; }
};

/// Canonical form of an arbitrary labeling.
Congruence make_congruence(std::span<const std::uint32_t> labels);
Congruence identity_congruence(std::size_t n);
/// Block of a▷b depends only on the blocks of a and b.
bool is_compatible(const Quandle& q, const Congruence& c);

struct QuotientResult {
  QuandlePtr quotient;
  Congruence congruence;
  /// Rebuilt from the order-preserving block enumerations h_[x].
  DynamicalCocycle cocycle;
  /// y ↦ ([y], h_[y](y)) as an element index of quotient ×_cocycle S.
  std::vector<Elem> iso;
};

/// Throws NotCompatible, NotUniform.
QuotientResult quotient(const Quandle& y, const Congruence& c, Exec exec = Exec::Auto);

/// Partition by equal left translations.
Congruence ker_left_section(const Quandle& q);
/// Smallest congruence identifying a and b.
Congruence principal_congruence(const Quandle& q, Elem a, Elem b);
/// Smallest congruence containing both.
Congruence join(const Quandle& q, const Congruence& a, const Congruence& b);

inline constexpr std::size_t kMaxCongruenceSize = 12;
/// Every congruence, sorted by block count descending then block_of.
/// Throws BudgetExceeded above kMaxCongruenceSize elements.
std::vector<Congruence> all_congruences(const Quandle& q);

bool is_homomorphism(const Quandle& from, const Quandle& to, std::span<const Elem> map);

enum class ConnectivityCheck { Required, NotRequired };

/// Surjective homomorphism under which equal images force equal left
/// translations. Throws NotHomomorphism, NotSurjective, and NotConnected
/// when the check is required.
bool is_covering(const Quandle& y, const Quandle& x, std::span<const Elem> map,
                 ConnectivityCheck check = ConnectivityCheck::NotRequired);

struct Covering {
  QuandlePtr total;
  QuandlePtr base;
  std::vector<Elem> map;
};

Covering covering_of(const Extension& e);

inline constexpr std::size_t kDefaultEquivalenceSize = 12;

/// An isomorphism φ: Y → Y′ with f′∘φ = f, found by backtracking in
/// lexicographic image order. Throws BudgetExceeded when |Y| > max_size.
std::optional<std::vector<Elem>> find_covering_equivalence(const Covering& a, const Covering& b,
                                                           std::size_t max_size = kDefaultEquivalenceSize);

/// Extensions constant in the third argument are compared through
/// cohomologous(); anything else goes to the isomorphism search.
bool coverings_equivalent(const Extension& a, const Extension& b, std::size_t max_size = kDefaultEquivalenceSize);
bool coverings_equivalent(const Covering& a, const Covering& b, std::size_t max_size = kDefaultEquivalenceSize);

}  // namespace qk
