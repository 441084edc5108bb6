#include "qk/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace qk {
namespace {

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
    throw std::overflow_error("smith normal form: int64 overflow");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("smith normal form: int64 overflow");
  return out;
}

class Eliminator {
 public:
  Eliminator(IntMatrix m, std::int64_t modulus) : a_(std::move(m)), mod_(modulus) {
    rows_ = a_.size();
    cols_ = rows_ ? a_[0].size() : 0;
    for (auto& row : a_) {
      if (row.size() != cols_) throw std::invalid_argument("smith normal form: ragged matrix");
      for (auto& v : row) v = reduce(v);
    }
  }

  std::vector<std::int64_t> run() {
    const std::size_t diag = std::min(rows_, cols_);
    for (std::size_t t = 0; t < diag; ++t) {
      if (!pivot_block(t)) break;
      eliminate(t);
    }
    std::vector<std::int64_t> d(diag);
    for (std::size_t t = 0; t < diag; ++t) d[t] = std::llabs(a_[t][t]);
    return d;
  }

 private:
  std::int64_t reduce(std::int64_t v) const { return mod_ ? v % mod_ : v; }

  // Moves the smallest nonzero |entry| of the block (t.., t..) to (t, t).
  bool pivot_block(std::size_t t) {
    std::size_t bi = rows_, bj = cols_;
    std::int64_t best = 0;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        std::int64_t v = std::llabs(a_[i][j]);
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Smallest nonzero entry of row t / column t (from t on) moved to (t, t).
  void pivot_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    std::int64_t best = std::llabs(a_[t][t]);
    for (std::size_t i = t + 1; i < rows_; ++i) {
      std::int64_t v = std::llabs(a_[i][t]);
      if (v != 0 && (best == 0 || v < best)) {
        best = v;
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < cols_; ++j) {
      std::int64_t v = std::llabs(a_[t][j]);
      if (v != 0 && (best == 0 || v < best)) {
        best = v;
        bi = t;
        bj = j;
      }
    }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  void eliminate(std::size_t t) {
    for (;;) {
      if (a_[t][t] == 0) {
        pivot_cross(t);
        if (a_[t][t] == 0) {
          // Row and column t are zero; the block may still have entries.
          if (!pivot_block(t)) return;
        }
      }
      bool clean = true;
      const std::int64_t p = a_[t][t];
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (a_[i][t] == 0) continue;
        std::int64_t q = a_[i][t] / p;
        for (std::size_t j = t; j < cols_; ++j) a_[i][j] = reduce(checked_sub_mul(a_[i][j], q, a_[t][j]));
        if (a_[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (a_[t][j] == 0) continue;
        std::int64_t q = a_[t][j] / p;
        for (std::size_t i = t; i < rows_; ++i) a_[i][j] = reduce(checked_sub_mul(a_[i][j], q, a_[i][t]));
        if (a_[t][j] != 0) clean = false;
      }
      if (!clean) {
        pivot_cross(t);
        continue;
      }
      // Divisibility: fold an offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows_ && divides; ++i) {
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (a_[i][j] % p != 0) {
            for (std::size_t k = t; k < cols_; ++k) a_[t][k] = reduce(checked_add(a_[t][k], a_[i][k]));
            divides = false;
            break;
          }
        }
      }
      if (divides) return;
    }
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i != k) std::swap(a_[i], a_[k]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (auto& row : a_) std::swap(row[j], row[k]);
  }

  IntMatrix a_;
  std::int64_t mod_;
  std::size_t rows_ = 0, cols_ = 0;
};

}  // namespace

std::vector<std::int64_t> smith_diagonal(IntMatrix m) { return Eliminator(std::move(m), 0).run(); }

std::vector<std::int64_t> finite_cokernel_invariants(IntMatrix m, std::int64_t exponent) {
  if (exponent <= 0) throw std::domain_error("cokernel exponent must be positive");
  const std::size_t rows = m.size();
  std::vector<std::int64_t> diag = Eliminator(std::move(m), exponent).run();
  diag.resize(rows, 0);
  std::vector<std::int64_t> out;
  for (std::int64_t d : diag) {
    std::int64_t f = std::gcd(d, exponent);
    if (f > 1) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qk
