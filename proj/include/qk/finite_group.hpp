#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qk/abgrp.hpp"
#include "qk/perm.hpp"

namespace qk {

/// Index of an element of a FiniteGroup.
using GElem = std::uint32_t;

inline constexpr std::size_t kMaxSymmetricDegree = 6;
inline constexpr std::uint64_t kMaxTableGroupOrder = 4096;

/// Finite group held as a Cayley table. Three constructors cover every
/// coefficient group we need: symmetric groups, finite abelian groups and
/// explicit tables. Element 0 is always the identity.
class FiniteGroup {
 public:
  /// Sym(m) with elements in lexicographic image order. m ≤ 6, otherwise
  /// BudgetExceeded.
  static FiniteGroup symmetric(std::size_t m);
  /// Element i is `a.element_at(i)`.
  static FiniteGroup abelian(const FinAbGroup& a);
  /// Validates closure, associativity, identity and inverses. The identity
  /// is moved to index 0 if needed; `labels` follow their elements.
  static FiniteGroup from_table(std::vector<std::vector<GElem>> table, std::vector<std::string> labels = {},
                                std::string descriptor = "table");
  /// The given permutations must form a group; element order is sorted.
  static FiniteGroup from_permutations(std::vector<Perm> elements, std::string descriptor = "perm");

  std::size_t order() const { return order_; }
  GElem identity() const { return 0; }
  GElem mul(GElem a, GElem b) const { return table_[std::size_t{a} * order_ + b]; }
  GElem inv(GElem a) const { return inverse_[a]; }
  /// s a s⁻¹
  GElem conj(GElem s, GElem a) const { return mul(mul(s, a), inv(s)); }
  bool is_abelian() const;

  std::span<const GElem> table() const { return table_; }
  const std::string& label(GElem a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<GElem> find_label(std::string_view label) const;
  const std::string& descriptor() const { return descriptor_; }

  /// Permutation form when the group was built from permutations.
  const std::vector<Perm>& permutations() const { return perms_; }
  std::optional<GElem> element_of(const Perm& p) const;

  /// Class id = smallest element index in the conjugacy class.
  GElem class_of(GElem a) const { return class_of_[a]; }
  std::size_t class_count() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_ && a.labels_ == b.labels_;
  }

 private:
  FiniteGroup() = default;
  void finish();

  std::size_t order_ = 0;
  std::vector<GElem> table_;
  std::vector<GElem> inverse_;
  std::vector<GElem> class_of_;
  std::vector<std::string> labels_;
  std::vector<Perm> perms_;
  std::string descriptor_;
};

/// Cycle notation, e.g. `(0 1)(2 3)`; identity prints as `()`.
std::string cycle_string(const Perm& p);

/// Image of the left regular representation g ↦ (x ↦ g·x) as Perms.
std::vector<Perm> left_regular(const FiniteGroup& g);

/// α as a map on element indices of FiniteGroup::abelian(α.source()).
std::vector<GElem> hom_images(const AbHom& alpha);

}  // namespace qk
