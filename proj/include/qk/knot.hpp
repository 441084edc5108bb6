#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qk/cocycle.hpp"
#include "qk/quandle.hpp"

namespace qk {

struct Crossing {
  /// Label used in the Gauss code.
  std::uint32_t label;
  std::uint32_t over;
  std::uint32_t in;
  std::uint32_t out;
  int sign;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Crossings are listed in the order their under-passages are met. Arc i
/// leaves the i-th under-passage and enters the next one, so
/// crossings[i].out == i and crossings[i].in == i-1 (cyclically).
struct KnotDiagram {
  std::size_t arcs = 1;
  std::vector<Crossing> crossings;

  std::size_t crossing_count() const { return crossings.size(); }
  friend bool operator==(const KnotDiagram&, const KnotDiagram&) = default;
};

/// Signed Gauss code such as "O1+ U2+ O3+ U1+ O2+ U3+"; tokens may also be
/// separated by commas. The single token "unknot" is the diagram without
/// crossings. Throws MalformedCode or InconsistentSigns.
KnotDiagram parse_gauss(std::string_view code);
/// Inverse of parse_gauss up to crossing labels.
std::string to_gauss(const KnotDiagram& k);

/// Moves the base point forward past `steps` under-passages.
KnotDiagram rotate(const KnotDiagram& k, std::size_t steps);
/// Same knot type with every crossing flipped.
KnotDiagram mirror(const KnotDiagram& k);

/// Standard: outgoing under = over ▷ incoming under at positive crossings,
/// over \ incoming under at negative ones. Mirrored swaps the two cases.
enum class CrossingConvention { Standard, Mirrored };

using Coloring = std::vector<Elem>;

/// Every coloring, sorted lexicographically.
std::vector<Coloring> colorings(const KnotDiagram& k, const Quandle& x,
                                CrossingConvention conv = CrossingConvention::Standard);
/// Colorings that use more than one element.
std::size_t col_count(const KnotDiagram& k, const Quandle& x, CrossingConvention conv = CrossingConvention::Standard);
bool is_coloring(const KnotDiagram& k, const Quandle& x, const Coloring& c,
                 CrossingConvention conv = CrossingConvention::Standard);

/// Weight of one crossing: β(over, source)^ε, where the source is the under
/// arc the over color acts on (incoming at crossings where
/// out = over ▷ in, outgoing otherwise).
GElem crossing_weight(const Crossing& c, const ConstantCocycle& b, const Coloring& col,
                      CrossingConvention conv = CrossingConvention::Standard);
/// B(τ_k)···B(τ_1), the monodromy of the coloring lifted to the covering.
GElem coloring_product(const KnotDiagram& k, const ConstantCocycle& b, const Coloring& col,
                       CrossingConvention conv = CrossingConvention::Standard);

/// Conjugacy class ids (smallest element of the class) of the products
/// over all colorings, monochromatic ones included, sorted.
std::vector<GElem> cocycle_invariant(const KnotDiagram& k, const ConstantCocycle& b,
                                     CrossingConvention conv = CrossingConvention::Standard);
/// Labels of the class ids.
std::vector<std::string> class_labels(const FiniteGroup& g, const std::vector<GElem>& classes);

}  // namespace qk
