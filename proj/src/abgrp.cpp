#include "qk/abgrp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qk/errors.hpp"
#include "qk/snf.hpp"

namespace qk {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

}  // namespace

FinAbGroup::FinAbGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  for (std::int64_t d : moduli_) {
    if (d < 1) throw InvalidElement("cyclic factor moduli must be positive");
    if (__builtin_mul_overflow(order_, static_cast<std::uint64_t>(d), &order_)) {
      throw CapExceeded("abelian group order overflows 64 bits");
    }
  }
}

AbElem FinAbGroup::basis(std::size_t i) const {
  AbElem e = zero();
  e.at(i) = moduli_[i] > 1 ? 1 : 0;
  return e;
}

bool FinAbGroup::contains(const AbElem& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] < 0 || x[i] >= moduli_[i]) return false;
  }
  return true;
}

void FinAbGroup::check(const AbElem& x) const {
  if (!contains(x)) throw InvalidElement("element " + to_string(x) + " is not in " + qk::to_string(*this));
}

AbElem FinAbGroup::reduce(AbElem x) const {
  if (x.size() != rank()) throw InvalidElement("element has wrong rank");
  for (std::size_t i = 0; i < rank(); ++i) x[i] = mod(x[i], moduli_[i]);
  return x;
}

AbElem FinAbGroup::add(const AbElem& x, const AbElem& y) const {
  check(x);
  check(y);
  AbElem r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = (x[i] + y[i]) % moduli_[i];
  return r;
}

AbElem FinAbGroup::neg(const AbElem& x) const {
  check(x);
  AbElem r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = x[i] == 0 ? 0 : moduli_[i] - x[i];
  return r;
}

AbElem FinAbGroup::sub(const AbElem& x, const AbElem& y) const { return add(x, neg(y)); }

AbElem FinAbGroup::scale(std::int64_t n, const AbElem& x) const {
  check(x);
  AbElem r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mulmod(mod(n, moduli_[i]), x[i], moduli_[i]);
  return r;
}

std::uint64_t FinAbGroup::element_order(const AbElem& x) const {
  check(x);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    auto d = static_cast<std::uint64_t>(moduli_[i]);
    result = std::lcm(result, d / std::gcd(d, static_cast<std::uint64_t>(x[i])));
  }
  return result;
}

std::uint64_t FinAbGroup::index_of(const AbElem& x) const {
  check(x);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * static_cast<std::uint64_t>(moduli_[i]) + x[i];
  return idx;
}

AbElem FinAbGroup::element_at(std::uint64_t index) const {
  if (index >= order_) throw InvalidElement("element index out of range");
  AbElem x(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    auto d = static_cast<std::uint64_t>(moduli_[i]);
    x[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return x;
}

std::string to_string(const FinAbGroup& g) {
  if (g.rank() == 0) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) out << " x ";
    out << "Z " << g.modulus(i);
  }
  return out.str();
}

std::string to_string(const AbElem& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ',';
    out << x[i];
  }
  out << ')';
  return out.str();
}

FinAbGroup parse_ab_group(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') s.push_back(c);
  }
  if (s.empty() || s == "1" || s == "0" || s == "trivial") return FinAbGroup();
  std::vector<std::int64_t> moduli;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != 'Z') throw ParseError("abelian group factors must look like `Z n`: " + std::string(text));
    ++pos;
    std::int64_t d = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), d);
    if (ec != std::errc{} || d < 1) throw ParseError("bad cyclic factor in " + std::string(text));
    pos = static_cast<std::size_t>(ptr - s.data());
    moduli.push_back(d);
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != '*') throw ParseError("expected `x` between factors in " + std::string(text));
      ++pos;
    }
  }
  return FinAbGroup(std::move(moduli));
}

AbHom::AbHom(FinAbGroup source, FinAbGroup target, std::vector<std::vector<std::int64_t>> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.size() != target_.rank()) {
    throw InvalidHomomorphism("matrix needs one row per target factor");
  }
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    if (matrix_[i].size() != source_.rank()) {
      throw InvalidHomomorphism("matrix needs one column per source factor");
    }
    for (std::size_t j = 0; j < source_.rank(); ++j) {
      std::int64_t& m = matrix_[i][j];
      m = mod(m, target_.modulus(i));
      // The image of e_j must be killed by the order of e_j.
      if (mulmod(source_.modulus(j), m, target_.modulus(i)) != 0) {
        throw InvalidHomomorphism("column " + std::to_string(j) + " is not a homomorphism: " +
                                  std::to_string(source_.modulus(j)) + " * " + std::to_string(m) +
                                  " != 0 mod " + std::to_string(target_.modulus(i)));
      }
    }
  }
}

AbHom AbHom::identity(const FinAbGroup& g) { return scalar(g, 1); }

AbHom AbHom::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return AbHom(source, target,
               std::vector<std::vector<std::int64_t>>(target.rank(), std::vector<std::int64_t>(source.rank(), 0)));
}

AbHom AbHom::scalar(const FinAbGroup& g, std::int64_t n) {
  std::vector<std::vector<std::int64_t>> m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = n;
  return AbHom(g, g, std::move(m));
}

AbElem AbHom::operator()(const AbElem& x) const {
  if (!source_.contains(x)) throw InvalidElement("homomorphism argument outside source group");
  AbElem y(target_.rank(), 0);
  for (std::size_t i = 0; i < target_.rank(); ++i) {
    const std::int64_t d = target_.modulus(i);
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < source_.rank(); ++j) acc = (acc + mulmod(matrix_[i][j], x[j], d)) % d;
    y[i] = acc;
  }
  return y;
}

bool is_automorphism(const AbHom& h, std::uint64_t cap) {
  if (!h.is_endomorphism()) return false;
  const FinAbGroup& g = h.source();
  if (g.order() > cap) throw CapExceeded("automorphism test: group order exceeds cap");
  // Injective iff the kernel is trivial.
  for (std::uint64_t i = 1; i < g.order(); ++i) {
    if (g.index_of(h(g.element_at(i))) == 0) return false;
  }
  return true;
}

AbHom compose(const AbHom& a, const AbHom& b) {
  if (!(b.target() == a.source())) throw InvalidHomomorphism("compose: incompatible groups");
  const FinAbGroup& src = b.source();
  std::vector<std::vector<std::int64_t>> m(a.target().rank(), std::vector<std::int64_t>(src.rank(), 0));
  for (std::size_t j = 0; j < src.rank(); ++j) {
    AbElem col = a(b(src.basis(j)));
    for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
  }
  return AbHom(src, a.target(), std::move(m));
}

static AbHom combine(const AbHom& a, const AbHom& b, int sign) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw InvalidHomomorphism("hom arithmetic: incompatible groups");
  }
  auto m = a.matrix();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] += sign * b.matrix()[i][j];
  }
  return AbHom(a.source(), a.target(), std::move(m));
}

AbHom add(const AbHom& a, const AbHom& b) { return combine(a, b, 1); }
AbHom sub(const AbHom& a, const AbHom& b) { return combine(a, b, -1); }

AbHom inverse(const AbHom& h) {
  if (!is_automorphism(h)) throw NotAutomorphism("inverse: map is not an automorphism");
  const FinAbGroup& g = h.source();
  std::vector<std::uint64_t> preimage(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i) preimage[g.index_of(h(g.element_at(i)))] = i;
  std::vector<std::vector<std::int64_t>> m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
  for (std::size_t j = 0; j < g.rank(); ++j) {
    AbElem col = g.element_at(preimage[g.index_of(g.basis(j))]);
    for (std::size_t i = 0; i < g.rank(); ++i) m[i][j] = col[i];
  }
  return AbHom(g, g, std::move(m));
}

AbHom pow(const AbHom& h, std::int64_t n) {
  if (!h.is_endomorphism()) throw InvalidHomomorphism("pow: not an endomorphism");
  AbHom base = n < 0 ? inverse(h) : h;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  AbHom result = AbHom::identity(h.source());
  while (e) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return result;
}

std::uint64_t hom_order(const AbHom& h) {
  if (!is_automorphism(h)) throw NotAutomorphism("hom_order: map is not an automorphism");
  const AbHom id = AbHom::identity(h.source());
  AbHom p = h;
  std::uint64_t k = 1;
  while (!(p == id)) {
    p = compose(h, p);
    ++k;
  }
  return k;
}

std::string to_string(const AbHom& h) { return nlohmann::json(h.matrix()).dump(); }

std::vector<std::vector<std::int64_t>> parse_matrix(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw ParseError("matrix must be a JSON array of rows");
    auto rows = j.get<std::vector<std::vector<std::int64_t>>>();
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad matrix: ") + e.what());
  }
}

TensorSquare::TensorSquare(FinAbGroup base) : base_(std::move(base)) {
  std::vector<std::int64_t> moduli;
  moduli.reserve(base_.rank() * base_.rank());
  for (std::size_t i = 0; i < base_.rank(); ++i) {
    for (std::size_t j = 0; j < base_.rank(); ++j) moduli.push_back(std::gcd(base_.modulus(i), base_.modulus(j)));
  }
  group_ = FinAbGroup(std::move(moduli));
}

AbElem TensorSquare::pure_tensor(const AbElem& x, const AbElem& y) const {
  if (!base_.contains(x) || !base_.contains(y)) throw InvalidElement("pure_tensor: argument outside base group");
  AbElem t(group_.rank());
  for (std::size_t i = 0; i < base_.rank(); ++i) {
    for (std::size_t j = 0; j < base_.rank(); ++j) {
      std::size_t p = pair_index(i, j);
      t[p] = mulmod(x[i], y[j], group_.modulus(p));
    }
  }
  return t;
}

TensorSquare tensor_square(const FinAbGroup& g) { return TensorSquare(g); }

std::vector<AbElem> clauwens_relators(const TensorSquare& t, const AbHom& alpha) {
  const FinAbGroup& g = t.base();
  if (!(alpha.source() == g) || !is_automorphism(alpha)) {
    throw NotAutomorphism("clauwens_relators: alpha is not an automorphism of the base group");
  }
  std::vector<AbElem> out;
  out.reserve(g.rank() * g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const AbElem ei = g.basis(i);
    const AbElem alpha_ei = alpha(ei);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      const AbElem ej = g.basis(j);
      out.push_back(t.group().sub(t.pure_tensor(ei, ej), t.pure_tensor(ej, alpha_ei)));
    }
  }
  return out;
}

SubgroupData subgroup_generated(const FinAbGroup& g, std::span<const AbElem> gens, std::uint64_t cap) {
  if (g.order() > cap) throw CapExceeded("subgroup enumeration: ambient order exceeds cap");
  SubgroupData s;
  s.ambient = g;
  s.generators.assign(gens.begin(), gens.end());
  for (const AbElem& x : gens) {
    if (!g.contains(x)) throw InvalidElement("subgroup generator outside ambient group");
  }
  s.membership.assign(g.order(), false);
  std::vector<std::uint64_t> queue{0};
  s.membership[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const AbElem cur = g.element_at(queue[head]);
    for (const AbElem& x : gens) {
      std::uint64_t next = g.index_of(g.add(cur, x));
      if (!s.membership[next]) {
        s.membership[next] = true;
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  s.element_indices = std::move(queue);
  return s;
}

std::vector<std::int64_t> quotient_invariants(const FinAbGroup& g, std::span<const AbElem> gens) {
  const std::size_t k = g.rank();
  IntMatrix m(k, std::vector<std::int64_t>(k + gens.size(), 0));
  std::int64_t exponent = 1;
  for (std::size_t i = 0; i < k; ++i) {
    m[i][i] = g.modulus(i);
    exponent = std::lcm(exponent, g.modulus(i));
  }
  for (std::size_t c = 0; c < gens.size(); ++c) {
    if (!g.contains(gens[c])) throw InvalidElement("quotient generator outside ambient group");
    for (std::size_t i = 0; i < k; ++i) m[i][k + c] = gens[c][i];
  }
  if (k == 0) return {};
  return finite_cokernel_invariants(std::move(m), exponent);
}

std::vector<std::int64_t> quotient_invariants(const FinAbGroup& g, const SubgroupData& s) {
  return quotient_invariants(g, std::span<const AbElem>(s.generators));
}

}  // namespace qk
