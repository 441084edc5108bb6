#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qk {

/// Element of a FinAbGroup: one residue per cyclic factor.
using AbElem = std::vector<std::int64_t>;

inline constexpr std::uint64_t kDefaultSubgroupCap = 1'000'000;

/// Z_{d_1} x ... x Z_{d_k}, kept in the moduli form it was given in.
///
/// A modulus of 1 is allowed and denotes a trivial factor (tensor squares
/// produce them, e.g. gcd(2, 3) = 1). Elements are enumerated in
/// lexicographic order by `index_of` / `element_at`, first coordinate most
/// significant, so index 0 is the zero element.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<std::int64_t> moduli);

  static FinAbGroup cyclic(std::int64_t m) { return FinAbGroup({m}); }
  static FinAbGroup elementary(std::int64_t p, std::size_t rank) {
    return FinAbGroup(std::vector<std::int64_t>(rank, p));
  }

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::int64_t modulus(std::size_t i) const { return moduli_[i]; }
  std::uint64_t order() const { return order_; }

  AbElem zero() const { return AbElem(rank(), 0); }
  AbElem basis(std::size_t i) const;
  bool contains(const AbElem& x) const;
  /// Reduces arbitrary integer coordinates into range.
  AbElem reduce(AbElem x) const;

  AbElem add(const AbElem& x, const AbElem& y) const;
  AbElem neg(const AbElem& x) const;
  AbElem sub(const AbElem& x, const AbElem& y) const;
  AbElem scale(std::int64_t n, const AbElem& x) const;
  /// Smallest n > 0 with n·x = 0.
  std::uint64_t element_order(const AbElem& x) const;

  std::uint64_t index_of(const AbElem& x) const;
  AbElem element_at(std::uint64_t index) const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.moduli_ == b.moduli_; }

 private:
  void check(const AbElem& x) const;

  std::vector<std::int64_t> moduli_;
  std::uint64_t order_ = 1;
};

/// `Z 2 x Z 2`; the trivial group prints as `1`.
std::string to_string(const FinAbGroup& g);
/// Accepts `Z 2 x Z 4`, `Z2xZ4`, `Z_2 x Z_4`, and `1` / `trivial` / `0`.
FinAbGroup parse_ab_group(std::string_view text);
std::string to_string(const AbElem& x);

/// Homomorphism given by an integer matrix: rows index target factors,
/// columns index source factors, entry (i, j) reduced modulo target
/// modulus i. Construction rejects matrices that are not well defined.
class AbHom {
 public:
  AbHom(FinAbGroup source, FinAbGroup target, std::vector<std::vector<std::int64_t>> matrix);

  static AbHom identity(const FinAbGroup& g);
  static AbHom zero(const FinAbGroup& source, const FinAbGroup& target);
  /// x ↦ n·x
  static AbHom scalar(const FinAbGroup& g, std::int64_t n);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const std::vector<std::vector<std::int64_t>>& matrix() const { return matrix_; }
  bool is_endomorphism() const { return source_ == target_; }

  AbElem operator()(const AbElem& x) const;

  friend bool operator==(const AbHom&, const AbHom&) = default;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  std::vector<std::vector<std::int64_t>> matrix_;
};

/// Bijectivity by image enumeration (source order must not exceed `cap`).
bool is_automorphism(const AbHom& h, std::uint64_t cap = kDefaultSubgroupCap);

/// a∘b
AbHom compose(const AbHom& a, const AbHom& b);
AbHom add(const AbHom& a, const AbHom& b);
AbHom sub(const AbHom& a, const AbHom& b);
/// Throws NotAutomorphism.
AbHom inverse(const AbHom& h);
/// Negative exponents require an automorphism.
AbHom pow(const AbHom& h, std::int64_t n);
/// Multiplicative order of an automorphism.
std::uint64_t hom_order(const AbHom& h);

/// Row-major JSON-style matrix, e.g. `[[1,1],[1,0]]`.
std::string to_string(const AbHom& h);
std::vector<std::vector<std::int64_t>> parse_matrix(std::string_view text);

/// G⊗G for G = Z_{d_1} x ... x Z_{d_k}: one factor Z_gcd(d_i,d_j) per
/// ordered pair, stored at position i*k + j.
class TensorSquare {
 public:
  explicit TensorSquare(FinAbGroup base);

  const FinAbGroup& base() const { return base_; }
  const FinAbGroup& group() const { return group_; }
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * base_.rank() + j; }

  /// x⊗y = Σ x_i y_j e_(i,j)
  AbElem pure_tensor(const AbElem& x, const AbElem& y) const;

 private:
  FinAbGroup base_;
  FinAbGroup group_;
};

TensorSquare tensor_square(const FinAbGroup& g);

/// e_i⊗e_j − e_j⊗α(e_i) for all i, j; these generate I(G, α) because
/// (x, y) ↦ x⊗y − y⊗α(x) is biadditive.
std::vector<AbElem> clauwens_relators(const TensorSquare& t, const AbHom& alpha);

struct SubgroupData {
  FinAbGroup ambient;
  std::vector<AbElem> generators;
  /// Sorted element indices (see FinAbGroup::index_of).
  std::vector<std::uint64_t> element_indices;
  std::vector<bool> membership;

  std::uint64_t order() const { return element_indices.size(); }
  bool contains(const AbElem& x) const { return membership[ambient.index_of(x)]; }
};

/// Breadth-first closure; throws CapExceeded when the ambient group has
/// more than `cap` elements.
SubgroupData subgroup_generated(const FinAbGroup& g, std::span<const AbElem> gens,
                                std::uint64_t cap = kDefaultSubgroupCap);

/// Invariant factors (each > 1, ascending divisibility chain) of
/// g / ⟨gens⟩ via Smith normal form of [diag(moduli) | gens].
std::vector<std::int64_t> quotient_invariants(const FinAbGroup& g, std::span<const AbElem> gens);
std::vector<std::int64_t> quotient_invariants(const FinAbGroup& g, const SubgroupData& s);

}  // namespace qk
