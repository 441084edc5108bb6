#pragma once

#include <cstdint>
#include <vector>

#include "qk/abgrp.hpp"
#include "qk/quandle.hpp"

namespace qk {

/// G⊗G, the subgroup I(G,α) spanned by x⊗y − y⊗α(x), and the quotient
/// S(G,α) = (G⊗G)/I(G,α).
struct ClauwensData {
  FinAbGroup base;
  AbHom alpha;
  std::uint64_t alpha_order;
  TensorSquare tensor;
  std::vector<AbElem> relators;
  SubgroupData ideal;
  /// Invariant factors of S(G,α); empty when S is trivial.
  std::vector<std::int64_t> invariants;
  /// For each element index of G⊗G, the index of the smallest element of
  /// its coset (element indices follow lexicographic order).
  std::vector<std::uint64_t> coset_rep;

  std::uint64_t s_order() const;
  /// Lexicographically smallest element of t + I(G,α).
  AbElem reduce(const AbElem& t) const;
};

/// Throws NotAutomorphism; CapExceeded if G⊗G has more than `cap` elements.
ClauwensData s_group(const FinAbGroup& g, const AbHom& alpha, std::uint64_t cap = kDefaultSubgroupCap);

/// Element (k, x, a) of F(G,α) = Z × G × S(G,α); `a` is kept as its coset
/// representative in G⊗G.
struct FElement {
  std::int64_t k = 0;
  AbElem x;
  AbElem a;
  friend bool operator==(const FElement&, const FElement&) = default;
};

FElement f_identity(const ClauwensData& d);
/// Validates and reduces the components.
FElement f_element(const ClauwensData& d, std::int64_t k, const AbElem& x, const AbElem& a);
/// (k,x,a)·(m,y,b) = (k+m, α^m(x)+y, a+b+α^m(x)⊗y). Throws
/// std::overflow_error if k+m leaves the int64 range.
FElement f_multiply(const ClauwensData& d, const FElement& p, const FElement& q);
FElement f_inverse(const ClauwensData& d, const FElement& p);

/// Invariant factors of π₁ of a connected affine quandle. Throws
/// NotConnected.
std::vector<std::int64_t> pi1_affine(const AffineQuandle& q);
bool is_simply_connected_affine(const AffineQuandle& q);

}  // namespace qk
