#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qk/abgrp.hpp"
#include "qk/cocycle.hpp"
#include "qk/finite_group.hpp"
#include "qk/quandle.hpp"

// Quandle and coefficient corpus shared by the unit tests and the
// acceptance gate. Everything here is generated, nothing is read from disk.

namespace qk::testing {

struct AffineEntry {
  std::string name;
  AffineQuandle q;
  QuandlePtr ptr;
};

/// Invariant-factor lists d_1 | d_2 | ... with product n.
std::vector<FinAbGroup> abelian_groups(std::uint64_t n);

/// Every matrix that defines an endomorphism of g.
std::vector<AbHom> endomorphisms(const FinAbGroup& g);
std::vector<AbHom> automorphisms(const FinAbGroup& g);

/// One Q(A, α) per conjugacy class of α in Aut(A) with 1−α invertible,
/// over every abelian group of order 2..max_order.
const std::vector<AffineEntry>& connected_affine_corpus(std::uint64_t max_order = 16);

AffineEntry make_entry(AffineQuandle q);

/// Q(Z_3, −1), the three-element dihedral quandle.
AffineEntry r3();
/// Q(Z_2², [[1,1],[1,0]]), the four-element tetrahedral quandle.
AffineEntry order4();
/// Q(Z_3², [[0,1],[1,2]]), α of order 8.
AffineEntry z3sq_8cycle();
/// Q(Z_2³, companion matrix of x³+x+1), α of order 7.
AffineEntry z2cube_7cycle();
AffineEntry cyclic(std::int64_t m, std::int64_t n);

QuandlePtr share(Quandle q);
GroupPtr sym(std::size_t m);
GroupPtr zgroup(std::string_view descriptor);

}  // namespace qk::testing
