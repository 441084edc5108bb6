#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qk {

using Point = std::uint32_t;

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// Permutation of {0, ..., n-1}; position i holds the image of i.
class Perm {
 public:
  /// Validates that `images` is a permutation.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}} on 4 points.
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }
  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  struct Unchecked {};
  Perm(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;

  friend Perm compose(const Perm& a, const Perm& b);
  friend Perm inverse(const Perm& a);
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

/// a∘b: apply b first, then a.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
/// Multiplicative order.
std::uint64_t order(const Perm& a);
/// Lengths of all cycles, fixed points included, in descending order.
std::vector<std::size_t> cycle_structure(const Perm& a);

/// `3: [1,0,2]`
std::string to_string(const Perm& p);
Perm parse_perm(std::string_view text);

/// Breadth-first closure of `gens` under composition. Throws CapExceeded
/// when the group has more than `cap` elements. The result is sorted.
std::vector<Perm> closure(std::size_t degree, std::span<const Perm> gens,
                          std::size_t cap = kDefaultClosureCap);

/// Smallest gens-invariant set containing `point`, sorted.
std::vector<Point> orbit(std::span<const Perm> gens, Point point);

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  /// Copy of this group with its element set enumerated.
  PermGroup enumerated(std::size_t cap = kDefaultClosureCap) const;
  bool is_enumerated() const { return elements_.has_value(); }
  /// Requires an enumerated group.
  const std::vector<Perm>& elements() const;
  std::uint64_t order() const { return elements().size(); }

 private:
  std::size_t degree_;
  std::vector<Perm> generators_;
  std::optional<std::vector<Perm>> elements_;
};

bool is_transitive(const PermGroup& g);
/// Orbit of the ordered pair (0, 1) under the induced action on pairs.
bool is_doubly_transitive(const PermGroup& g);

}  // namespace qk
