#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qk/abgrp.hpp"
#include "qk/finite_group.hpp"
#include "qk/kernels.hpp"
#include "qk/perm.hpp"

namespace qk {

/// Element index of a quandle.
using Elem = std::uint32_t;

inline constexpr std::size_t kMaxIsomorphismSize = 8;

/// Finite quandle stored as its full Cayley table, table[x][y] = x▷y.
/// Construction checks all three axioms and reports the smallest witness.
class Quandle {
 public:
  static Quandle from_table(const std::vector<std::vector<Elem>>& table, Exec exec = Exec::Auto);
  static Quandle from_flat(std::size_t n, std::vector<Elem> flat, Exec exec = Exec::Auto);

  std::size_t size() const { return n_; }
  Elem op(Elem x, Elem y) const { return table_[std::size_t{x} * n_ + y]; }
  std::span<const Elem> flat() const { return table_; }
  std::vector<std::vector<Elem>> table() const;

  /// L_x as a permutation.
  const Perm& left_section(Elem x) const { return left_[x]; }
  const std::vector<Perm>& left_sections() const { return left_; }

  /// x\y, the unique z with x▷z = y.
  Elem left_divide(Elem x, Elem y) const { return left_inv_[std::size_t{x} * n_ + y]; }
  /// x/y, the unique z with z▷y = x. Throws NotLatin.
  Elem right_divide(Elem x, Elem y) const;
  bool is_latin() const { return latin_; }

  friend bool operator==(const Quandle& a, const Quandle& b) { return a.table_ == b.table_; }

 private:
  Quandle() = default;

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> left_inv_;
  std::vector<Elem> right_inv_;  // right_inv_[y*n + x] = x/y when latin
  std::vector<Perm> left_;
  bool latin_ = false;
};

Quandle projection_quandle(std::size_t n);

/// x▷y = x∘y∘x⁻¹ on the given conjugation-closed set of permutations, in
/// the given order. Throws NotClosedUnderConjugation.
Quandle conjugation_quandle(std::span<const Perm> elements);
/// Same on a subset of a FiniteGroup given by element indices.
Quandle conjugation_quandle(const FiniteGroup& g, std::span<const GElem> elements);

/// Q(A, α): x▷y = (1−α)(x) + α(y); element i is `base.element_at(i)`.
struct AffineQuandle {
  FinAbGroup base;
  AbHom alpha;
  Quandle quandle;
};

/// Throws NotAutomorphism.
AffineQuandle affine(const FinAbGroup& base, const AbHom& alpha);
/// Q(Z_m, λ_n)
AffineQuandle affine_cyclic(std::int64_t m, std::int64_t n);

/// Q(G, H, α) on left cosets xH with xH▷yH = xα(x⁻¹y)H. Cosets are listed
/// by their smallest element.
struct CosetQuandle {
  FiniteGroup group;
  std::vector<GElem> subgroup;
  std::vector<GElem> alpha;
  std::vector<std::vector<GElem>> cosets;
  std::vector<Elem> coset_of;
  Quandle quandle;
};

/// `alpha[g]` is the image of g. Throws NotAutomorphism, InvalidGroup (H
/// not a subgroup) or SubgroupNotFixed.
CosetQuandle coset_quandle(const FiniteGroup& g, std::vector<GElem> subgroup, std::vector<GElem> alpha);

/// LMlt(X) with its elements enumerated (subject to `cap`).
PermGroup lmlt(const Quandle& q, std::size_t cap = kDefaultClosureCap);
bool is_connected(const Quandle& q);
bool is_doubly_transitive(const Quandle& q);
/// Common length of all nontrivial cycles of all left translations, or
/// nullopt if two lengths differ. A quandle without nontrivial cycles
/// reports 1.
std::optional<std::size_t> semiregular_length(const Quandle& q);
inline bool is_semiregular(const Quandle& q) { return semiregular_length(q).has_value(); }

/// Connectivity of Q(A, α) through bijectivity of 1−α.
bool affine_is_connected(const FinAbGroup& base, const AbHom& alpha);

/// Some φ with φ(x▷y) = φ(x)▷φ(y), searched in lexicographic image order.
/// Throws BudgetExceeded above kMaxIsomorphismSize elements.
std::optional<std::vector<Elem>> find_isomorphism(const Quandle& a, const Quandle& b);

/// Smallest subquandle containing `gens`, sorted.
std::vector<Elem> subquandle_generated(const Quandle& q, std::span<const Elem> gens);
/// Whether `subset` is a subquandle on which its own left translations act
/// transitively.
bool is_connected_subquandle(const Quandle& q, std::span<const Elem> subset);

}  // namespace qk
