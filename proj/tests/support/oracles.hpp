#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qk/finite_group.hpp"
#include "qk/knot.hpp"
#include "qk/quandle.hpp"

// Brute-force reference computations. They only use Cayley tables and plain
// loops so they stay independent of the searches they check.

namespace qk::testing {

using Values = std::vector<GElem>;

/// (CC) and (CQ) by direct evaluation.
bool brute_is_cocycle(const Quandle& q, const FiniteGroup& g, const Values& beta);

/// Every constant cocycle, by odometer over the off-diagonal entries. With
/// `normalized_at` set, β(x, u) = 1 is imposed as well.
std::vector<Values> brute_cocycles(const Quandle& q, const FiniteGroup& g, std::optional<Elem> normalized_at = {});

/// Same set as brute_cocycles, found by backtracking over the entries in
/// index order and checking each (CC) instance once its four entries are set.
std::vector<Values> search_cocycles(const Quandle& q, const FiniteGroup& g, std::optional<Elem> normalized_at = {});

/// γ·β(x,y) = γ(xy) β(x,y) γ(y)⁻¹
Values twist(const Quandle& q, const FiniteGroup& g, const Values& beta, const std::vector<GElem>& gamma);

/// Number of orbits of G^X acting on the given cocycles by twisting.
/// The set must be closed under the action.
std::size_t brute_class_count(const Quandle& q, const FiniteGroup& g, const std::vector<Values>& cocycles);

/// Both dynamical cocycle conditions by direct evaluation; images are laid
/// out as in DynamicalCocycle.
bool brute_is_dynamical(const Quandle& q, std::size_t m, const std::vector<std::uint32_t>& images);

/// Every dynamical cocycle with β(x,y,s) drawn from `perms` (each given as
/// an image vector on m points).
std::vector<std::vector<std::uint32_t>> brute_dynamical_cocycles(const Quandle& q, std::size_t m,
                                                                 const std::vector<std::vector<std::uint32_t>>& perms);

/// All n^arcs assignments filtered by the crossing relation.
std::vector<std::vector<Elem>> brute_colorings(const KnotDiagram& k, const Quandle& x, bool mirrored = false);

/// |I(G,α)| by closing {x⊗y − y⊗α(x) : x, y ∈ G} under addition.
std::uint64_t brute_ideal_order(const FinAbGroup& g, const AbHom& alpha);

/// Signed Gauss code of the closure of a braid word on `strands` strands;
/// letter ±i is σ_i^{±1}. Throws if the closure has several components.
std::string braid_closure_gauss(std::size_t strands, const std::vector<int>& word);

}  // namespace qk::testing
