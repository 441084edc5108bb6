#pragma once

#include <cstdint>
#include <optional>
#include <span>

// Triple-scan kernels behind axiom and cocycle validation. Each has a
// serial reference and an OpenMP version; both return the lexicographically
// smallest witness so results never depend on thread scheduling.

namespace qk {

enum class Exec { Serial, Parallel, Auto };

struct Triple {
  std::uint32_t x, y, z;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct Quintuple {
  std::uint32_t x, y, z, s, t;
  friend bool operator==(const Quintuple&, const Quintuple&) = default;
};

/// True when this build has OpenMP.
bool parallel_available();

/// Smallest (x, y, z) with x▷(y▷z) ≠ (x▷y)▷(x▷z). `table` is n×n row-major.
std::optional<Triple> find_ld_violation(std::size_t n, std::span<const std::uint32_t> table,
                                        Exec exec = Exec::Auto);

/// Smallest (x, y, z) with β(xy,xz)β(x,z) ≠ β(x,yz)β(y,z). `beta` is n×n
/// row-major over element indices of a group with Cayley table `gmul`.
std::optional<Triple> find_cc_violation(std::size_t n, std::span<const std::uint32_t> table, std::size_t gorder,
                                        std::span<const std::uint32_t> gmul, std::span<const std::uint32_t> beta,
                                        Exec exec = Exec::Auto);

/// Smallest (x, y, z, s, t) with
/// β(xy,xz,β(x,y,s)(t))∘β(x,z,s) ≠ β(x,yz,s)∘β(y,z,t) as maps of S.
/// `beta[((x*n + y)*m + s)*m + r]` is the image of r under β(x,y,s).
std::optional<Quintuple> find_dynamical_violation(std::size_t n, std::span<const std::uint32_t> table, std::size_t m,
                                                  std::span<const std::uint32_t> beta, Exec exec = Exec::Auto);

}  // namespace qk
