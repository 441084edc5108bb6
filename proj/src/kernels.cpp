#include "qk/kernels.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef QK_HAVE_OPENMP
#include <omp.h>
#endif

namespace qk {
namespace {

constexpr std::size_t kAutoParallelWork = std::size_t{1} << 18;

bool use_parallel(Exec exec, std::size_t work) {
  if (!parallel_available()) return false;
  switch (exec) {
    case Exec::Serial:
      return false;
    case Exec::Parallel:
      return true;
    case Exec::Auto:
      return work >= kAutoParallelWork;
  }
  return false;
}

// Runs `first_in_row(x)` for every leading coordinate x and returns the
// result of the smallest x that reported a witness. In parallel mode rows
// past the best witness found so far are skipped.
template <class Witness, class RowScan>
std::optional<Witness> scan_rows(std::size_t n, bool parallel, RowScan first_in_row) {
  if (!parallel) {
    for (std::size_t x = 0; x < n; ++x) {
      if (auto w = first_in_row(x)) return w;
    }
    return std::nullopt;
  }
  std::vector<std::optional<Witness>> found(n);
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
#ifdef QK_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::size_t x = 0; x < n; ++x) {
    if (x > best.load(std::memory_order_relaxed)) continue;
    found[x] = first_in_row(x);
    if (!found[x]) continue;
    std::size_t current = best.load(std::memory_order_relaxed);
    while (x < current && !best.compare_exchange_weak(current, x, std::memory_order_relaxed)) {
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (found[x]) return found[x];
  }
  return std::nullopt;
}

void check_size(std::span<const std::uint32_t> s, std::size_t want, const char* what) {
  if (s.size() != want) throw std::invalid_argument(std::string(what) + ": wrong array size");
}

}  // namespace

bool parallel_available() {
#ifdef QK_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

std::optional<Triple> find_ld_violation(std::size_t n, std::span<const std::uint32_t> t, Exec exec) {
  check_size(t, n * n, "find_ld_violation");
  auto row = [&](std::size_t x) -> std::optional<Triple> {
    const std::uint32_t* tx = t.data() + x * n;
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint32_t xy = tx[y];
      const std::uint32_t* txy = t.data() + std::size_t{xy} * n;
      const std::uint32_t* ty = t.data() + y * n;
      for (std::size_t z = 0; z < n; ++z) {
        if (tx[ty[z]] != txy[tx[z]]) {
          return Triple{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z)};
        }
      }
    }
    return std::nullopt;
  };
  return scan_rows<Triple>(n, use_parallel(exec, n * n * n), row);
}

std::optional<Triple> find_cc_violation(std::size_t n, std::span<const std::uint32_t> t, std::size_t gorder,
                                        std::span<const std::uint32_t> gmul, std::span<const std::uint32_t> beta,
                                        Exec exec) {
  check_size(t, n * n, "find_cc_violation");
  check_size(gmul, gorder * gorder, "find_cc_violation");
  check_size(beta, n * n, "find_cc_violation");
  auto mul = [&](std::uint32_t a, std::uint32_t b) { return gmul[std::size_t{a} * gorder + b]; };
  auto b = [&](std::size_t x, std::size_t y) { return beta[x * n + y]; };
  auto row = [&](std::size_t x) -> std::optional<Triple> {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = t[x * n + y];
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t xz = t[x * n + z];
        const std::size_t yz = t[y * n + z];
        if (mul(b(xy, xz), b(x, z)) != mul(b(x, yz), b(y, z))) {
          return Triple{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z)};
        }
      }
    }
    return std::nullopt;
  };
  return scan_rows<Triple>(n, use_parallel(exec, n * n * n), row);
}

std::optional<Quintuple> find_dynamical_violation(std::size_t n, std::span<const std::uint32_t> t, std::size_t m,
                                                  std::span<const std::uint32_t> beta, Exec exec) {
  check_size(t, n * n, "find_dynamical_violation");
  check_size(beta, n * n * m * m, "find_dynamical_violation");
  auto map = [&](std::size_t x, std::size_t y, std::size_t s) { return beta.data() + ((x * n + y) * m + s) * m; };
  auto row = [&](std::size_t x) -> std::optional<Quintuple> {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = t[x * n + y];
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t xz = t[x * n + z];
        const std::size_t yz = t[y * n + z];
        for (std::size_t s = 0; s < m; ++s) {
          const std::uint32_t* bxys = map(x, y, s);
          const std::uint32_t* bxzs = map(x, z, s);
          const std::uint32_t* bxyzs = map(x, yz, s);
          for (std::size_t u = 0; u < m; ++u) {
            const std::uint32_t* lhs_outer = map(xy, xz, bxys[u]);
            const std::uint32_t* rhs_inner = map(y, z, u);
            for (std::size_t r = 0; r < m; ++r) {
              if (lhs_outer[bxzs[r]] != bxyzs[rhs_inner[r]]) {
                return Quintuple{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                                 static_cast<std::uint32_t>(z), static_cast<std::uint32_t>(s),
                                 static_cast<std::uint32_t>(u)};
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  };
  return scan_rows<Quintuple>(n, use_parallel(exec, n * n * n * m * m * m), row);
}

}  // namespace qk
