#include "qk/pi1.hpp"

#include <stdexcept>

#include "qk/errors.hpp"

namespace qk {

std::uint64_t ClauwensData::s_order() const { return tensor.group().order() / ideal.order(); }

AbElem ClauwensData::reduce(const AbElem& t) const {
  const FinAbGroup& tg = tensor.group();
  return tg.element_at(coset_rep[tg.index_of(tg.reduce(t))]);
}

ClauwensData s_group(const FinAbGroup& g, const AbHom& alpha, std::uint64_t cap) {
  if (!(alpha.source() == g) || !is_automorphism(alpha)) {
    throw NotAutomorphism("Clauwens data needs an automorphism of " + to_string(g));
  }
  TensorSquare t = tensor_square(g);
  std::vector<AbElem> relators = clauwens_relators(t, alpha);
  SubgroupData ideal = subgroup_generated(t.group(), relators, cap);
  std::vector<std::int64_t> invariants = quotient_invariants(t.group(), ideal);

  const FinAbGroup& tg = t.group();
  const std::uint64_t none = tg.order();
  std::vector<std::uint64_t> rep(tg.order(), none);
  std::vector<AbElem> members;
  members.reserve(ideal.element_indices.size());
  for (std::uint64_t i : ideal.element_indices) members.push_back(tg.element_at(i));
  // Scanning in index order makes the first element of each coset its
  // representative.
  for (std::uint64_t i = 0; i < tg.order(); ++i) {
    if (rep[i] != none) continue;
    const AbElem base = tg.element_at(i);
    for (const AbElem& h : members) rep[tg.index_of(tg.add(base, h))] = i;
  }
  const std::uint64_t order = hom_order(alpha);
  return ClauwensData{g,         alpha,  order, std::move(t), std::move(relators), std::move(ideal),
                      std::move(invariants), std::move(rep)};
}

FElement f_identity(const ClauwensData& d) { return {0, d.base.zero(), d.tensor.group().zero()}; }

FElement f_element(const ClauwensData& d, std::int64_t k, const AbElem& x, const AbElem& a) {
  if (!d.base.contains(x)) throw InvalidElement("F element: x outside the base group");
  if (!d.tensor.group().contains(a)) throw InvalidElement("F element: a outside the tensor square");
  return {k, x, d.reduce(a)};
}

namespace {

AbHom alpha_power(const ClauwensData& d, std::int64_t m) {
  const auto ord = static_cast<std::int64_t>(d.alpha_order);
  std::int64_t e = m % ord;
  if (e < 0) e += ord;
  return pow(d.alpha, e);
}

}  // namespace

FElement f_multiply(const ClauwensData& d, const FElement& p, const FElement& q) {
  std::int64_t k = 0;
  if (__builtin_add_overflow(p.k, q.k, &k)) throw std::overflow_error("F(G,alpha): integer component overflows");
  const AbElem ax = alpha_power(d, q.k)(p.x);
  const FinAbGroup& tg = d.tensor.group();
  AbElem a = tg.add(tg.add(p.a, q.a), d.tensor.pure_tensor(ax, q.x));
  return {k, d.base.add(ax, q.x), d.reduce(a)};
}

FElement f_inverse(const ClauwensData& d, const FElement& p) {
  if (p.k == INT64_MIN) throw std::overflow_error("F(G,alpha): integer component overflows");
  // (k,x,a)(−k,y,b) = (0, α^{−k}(x)+y, a+b+α^{−k}(x)⊗y)
  const AbElem ax = alpha_power(d, -p.k)(p.x);
  const AbElem y = d.base.neg(ax);
  const FinAbGroup& tg = d.tensor.group();
  AbElem b = tg.neg(tg.add(p.a, d.tensor.pure_tensor(ax, y)));
  return {-p.k, y, d.reduce(b)};
}

std::vector<std::int64_t> pi1_affine(const AffineQuandle& q) {
  if (!affine_is_connected(q.base, q.alpha)) {
    throw NotConnected("affine quandle over " + to_string(q.base) + " is not connected");
  }
  // Only the invariant factors are needed, so skip the coset enumeration.
  TensorSquare t = tensor_square(q.base);
  return quotient_invariants(t.group(), clauwens_relators(t, q.alpha));
}

bool is_simply_connected_affine(const AffineQuandle& q) { return pi1_affine(q).empty(); }

}  // namespace qk
