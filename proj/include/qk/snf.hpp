#pragma once

#include <cstdint>
#include <vector>

namespace qk {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Diagonal of the Smith normal form of an integer matrix, in the
/// divisibility order d_1 | d_2 | ... (length = min(rows, cols), zeros last).
///
/// Pivoting always takes the smallest nonzero |entry| of the remaining
/// block, scanning rows then columns. Throws std::overflow_error if an
/// intermediate value leaves the int64 range.
std::vector<std::int64_t> smith_diagonal(IntMatrix m);

/// Invariant factors of Z^rows / (column span of m) when that quotient is
/// finite: the SNF diagonal with 1s dropped. The lattice is assumed to
/// contain `exponent`·Z^rows, which lets entries be kept reduced modulo
/// `exponent` during elimination; a zero diagonal entry then stands for
/// the factor Z_exponent.
std::vector<std::int64_t> finite_cokernel_invariants(IntMatrix m, std::int64_t exponent);

}  // namespace qk
