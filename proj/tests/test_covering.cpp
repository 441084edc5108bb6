#include <algorithm>
#include <numeric>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qk/covering.hpp"
#include "qk/errors.hpp"

using namespace qk;

namespace {

// X × P_m with (x,s)▷(y,t) = (xy, t), element (x,s) at x*m + s.
Quandle times_projection(const Quandle& x, std::size_t m) {
  const std::size_t n = x.size();
  std::vector<std::vector<Elem>> t(n * m, std::vector<Elem>(n * m));
  for (Elem a = 0; a < n * m; ++a) {
    for (Elem b = 0; b < n * m; ++b) t[a][b] = static_cast<Elem>(x.op(a / m, b / m) * m + b % m);
  }
  return Quandle::from_table(t);
}

std::vector<std::uint32_t> fiber_labels(std::size_t n, std::size_t m) {
  std::vector<std::uint32_t> l(n * m);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<std::uint32_t>(i / m);
  return l;
}

// iso is a bijection with iso[a▷b] = iso[a]▷iso[b].
bool is_isomorphism(const Quandle& y, const Quandle& z, const std::vector<Elem>& iso) {
  if (y.size() != z.size() || iso.size() != y.size()) return false;
  std::vector<Elem> sorted = iso;
  std::sort(sorted.begin(), sorted.end());
  for (Elem i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) return false;
  }
  for (Elem a = 0; a < y.size(); ++a) {
    for (Elem b = 0; b < y.size(); ++b) {
      if (iso[y.op(a, b)] != z.op(iso[a], iso[b])) return false;
    }
  }
  return true;
}

std::uint64_t bell(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = next;
  }
  return row.front();
}

std::vector<std::vector<std::uint32_t>> sym2_images() { return {{0, 1}, {1, 0}}; }

}  // namespace

TEST_CASE("trivial extensions are products with projection quandles") {
  const auto r3 = testing::r3().ptr;
  const auto e = extend(ConstantCocycle::trivial(r3, testing::sym(2)));
  CHECK(*e.total == times_projection(*r3, 2));
  CHECK(e.projection == std::vector<Elem>{0, 0, 1, 1, 2, 2});
  const auto one = extend(DynamicalCocycle::trivial(r3, 1));
  CHECK(*one.total == *r3);
}

TEST_CASE("dynamical cocycle checks") {
  const auto r3 = testing::r3().ptr;
  CHECK(is_dynamical_cocycle(DynamicalCocycle::trivial(r3, 3)));
  const auto o4 = testing::order4().ptr;
  for (const auto& b : h2c(o4, testing::sym(3)).normalized) {
    const auto d = DynamicalCocycle::from_constant(b);
    CHECK(is_dynamical_cocycle(d, Exec::Serial));
    CHECK(is_dynamical_cocycle(d, Exec::Parallel));
    CHECK(d.is_constant_in_third());
    REQUIRE(d.as_constant().has_value());
    CHECK(extend(*d.as_constant()).total->size() == 12);
  }
  // β ≡ (0 1) satisfies the cocycle identity but moves (x,s)▷(x,s).
  const auto base = DynamicalCocycle::trivial(r3, 2);
  const auto plain = std::vector<std::uint32_t>(base.images().begin(), base.images().end());
  std::vector<std::uint32_t> images(plain.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<std::uint32_t>(1 - i % 2);
  const auto v = find_dynamical_violation(DynamicalCocycle(r3, 2, images));
  REQUIRE(v.has_value());
  CHECK(v->kind == DynamicalViolation::Kind::Quandle);
  CHECK_THROWS_AS(extend(DynamicalCocycle(r3, 2, images)), InvalidCocycle);
  auto not_perm = plain;
  not_perm[1] = 0;
  CHECK_THROWS(DynamicalCocycle(r3, 2, not_perm));
}

TEST_CASE("dynamical cocycles on R3 with two-point fibers") {
  const auto r3 = testing::r3().ptr;
  const auto all = testing::brute_dynamical_cocycles(*r3, 2, sym2_images());
  std::size_t constant = 0, nonconstant = 0;
  for (const auto& images : all) {
    const DynamicalCocycle d(r3, 2, images);
    CHECK(is_dynamical_cocycle(d));
    const auto e = extend(d);
    // The projection is a covering exactly when β ignores its third argument.
    CHECK(is_covering(*e.total, *r3, e.projection) == d.is_constant_in_third());
    ++(d.is_constant_in_third() ? constant : nonconstant);
  }
  CHECK(constant == testing::brute_cocycles(*r3, *testing::sym(2)).size());
  CHECK(nonconstant > 0);
}

TEST_CASE("quotients rebuild the extension") {
  std::mt19937 rng(9);
  for (const auto& e : testing::connected_affine_corpus(8)) {
    for (const auto& g : {testing::sym(2), testing::sym(3)}) {
      CAPTURE(e.name);
      const auto r = h2c(e.ptr, g);
      for (const auto& b : r.normalized) {
        std::vector<GElem> gamma(e.q.quandle.size());
        for (auto& x : gamma) x = static_cast<GElem>(rng() % g->order());
        const ConstantCocycle twisted(
            e.ptr, g, testing::twist(e.q.quandle, *g, {b.values().begin(), b.values().end()}, gamma));
        const auto ext = extend(twisted);
        const auto c = make_congruence(fiber_labels(e.q.quandle.size(), ext.fiber));
        CHECK(is_compatible(*ext.total, c));
        const auto q = quotient(*ext.total, c);
        CHECK(*q.quotient == e.q.quandle);
        const auto rebuilt = extend(q.cocycle);
        CHECK(is_isomorphism(*ext.total, *rebuilt.total, q.iso));
        CHECK(is_covering(*ext.total, e.q.quandle, ext.projection));
      }
    }
  }
}

TEST_CASE("quotient edge cases") {
  const auto r3 = testing::r3();
  const Quandle y = times_projection(r3.q.quandle, 2);
  const auto id = quotient(y, identity_congruence(6));
  CHECK(*id.quotient == y);
  std::vector<std::uint32_t> one(6, 0);
  const auto all = quotient(y, make_congruence(one));
  CHECK(all.quotient->size() == 1);
  const auto fibers = quotient(y, make_congruence(fiber_labels(3, 2)));
  CHECK(*fibers.quotient == r3.q.quandle);
  // A singleton block or one fiber against the rest breaks compatibility.
  std::vector<std::uint32_t> lonely{0, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(quotient(y, make_congruence(lonely)), NotCompatible);
  std::vector<std::uint32_t> odd{0, 0, 1, 1, 1, 1};
  CHECK(is_compatible(y, make_congruence(odd)) == false);
  const Quandle p3 = projection_quandle(3);
  std::vector<std::uint32_t> uneven{0, 0, 1};
  CHECK(is_compatible(p3, make_congruence(uneven)));
  CHECK_THROWS_AS(quotient(p3, make_congruence(uneven)), NotUniform);
}

TEST_CASE("congruences") {
  CHECK(make_congruence(std::vector<std::uint32_t>{5, 3, 5}).block_of == std::vector<std::uint32_t>{0, 1, 0});
  const Quandle y = times_projection(testing::r3().q.quandle, 2);
  CHECK(ker_left_section(y) == make_congruence(fiber_labels(3, 2)));
  CHECK(ker_left_section(testing::order4().q.quandle) == identity_congruence(4));
  CHECK(ker_left_section(projection_quandle(4)).size() == 1);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(all_congruences(projection_quandle(n)).size() == bell(n));
  CHECK(all_congruences(testing::r3().q.quandle).size() == 2);
  CHECK(all_congruences(testing::order4().q.quandle).size() == 2);
  CHECK_THROWS_AS(all_congruences(testing::cyclic(13, 2).q.quandle), BudgetExceeded);

  for (const auto& e : testing::connected_affine_corpus(12)) {
    CAPTURE(e.name);
    for (const auto& c : all_congruences(e.q.quandle)) {
      CHECK(is_compatible(e.q.quandle, c));
      CHECK(c.is_uniform());
    }
  }
  const Quandle& z9 = testing::cyclic(9, 2).q.quandle;
  const auto p = principal_congruence(z9, 0, 3);
  CHECK(p.block_of[0] == p.block_of[3]);
  CHECK(p.size() == 3);
  const auto j = join(z9, p, principal_congruence(z9, 0, 1));
  CHECK(j.size() == 1);
  CHECK(join(z9, p, identity_congruence(9)) == p);
}

TEST_CASE("covering predicate") {
  const Quandle& r3 = testing::r3().q.quandle;
  const std::vector<Elem> id{0, 1, 2};
  CHECK(is_covering(r3, r3, id));
  const Quandle p1 = projection_quandle(1);
  CHECK_FALSE(is_covering(r3, p1, std::vector<Elem>{0, 0, 0}));
  CHECK_THROWS_AS(is_covering(r3, r3, std::vector<Elem>{0, 0, 1}), NotHomomorphism);
  CHECK_THROWS_AS(is_covering(r3, projection_quandle(2), std::vector<Elem>{0, 0, 0}), NotSurjective);
  const Quandle y = times_projection(r3, 2);
  CHECK(is_covering(y, r3, std::vector<Elem>{0, 0, 1, 1, 2, 2}));
  CHECK_THROWS_AS(is_covering(y, r3, std::vector<Elem>{0, 0, 1, 1, 2, 2}, ConnectivityCheck::Required),
                  NotConnected);
}

TEST_CASE("coset quandles cover coset quandles over larger subgroups") {
  const auto v = FinAbGroup::elementary(3, 2);
  const FiniteGroup g = FiniteGroup::abelian(v);
  const auto alpha = hom_images(AbHom(v, v, {{0, 1}, {1, 0}}));
  const auto small = coset_quandle(g, {0}, alpha);
  const auto big = coset_quandle(g, {0, 4, 8}, alpha);
  std::vector<Elem> psi(small.quandle.size());
  for (Elem c = 0; c < psi.size(); ++c) psi[c] = big.coset_of[small.cosets[c].front()];
  CHECK(is_homomorphism(small.quandle, big.quandle, psi));
  CHECK(is_covering(small.quandle, big.quandle, psi));
  std::vector<std::size_t> fiber(big.quandle.size(), 0);
  for (Elem e : psi) ++fiber[e];
  CHECK(std::all_of(fiber.begin(), fiber.end(), [](std::size_t s) { return s == 3; }));
}

TEST_CASE("equivalence of coverings") {
  const auto r3 = testing::r3().ptr;
  const auto s2 = testing::sym(2);
  const auto trivial = extend(ConstantCocycle::trivial(r3, s2));
  for (const auto& v : testing::brute_cocycles(*r3, *s2)) {
    const auto e = extend(ConstantCocycle(r3, s2, v));
    CHECK(coverings_equivalent(e, trivial));
    CHECK(find_covering_equivalence(covering_of(e), covering_of(trivial)).has_value());
  }

  const auto o4 = testing::order4().ptr;
  std::vector<GElem> beta(16, 0);
  for (Elem x = 1; x < 4; ++x) {
    for (Elem y = 1; y < 4; ++y) {
      if (x != y) beta[x * 4 + y] = 1;
    }
  }
  const auto twisted = extend(ConstantCocycle(o4, s2, beta));
  const auto plain = extend(ConstantCocycle::trivial(o4, s2));
  CHECK_FALSE(coverings_equivalent(twisted, plain));
  CHECK_FALSE(find_covering_equivalence(covering_of(twisted), covering_of(plain)).has_value());
  CHECK(coverings_equivalent(twisted, twisted));
  CHECK(coverings_equivalent(covering_of(twisted), covering_of(twisted)));

  const auto big = extend(ConstantCocycle::trivial(testing::cyclic(5, 2).ptr, testing::sym(3)));
  CHECK_THROWS_AS(find_covering_equivalence(covering_of(big), covering_of(big)), BudgetExceeded);
  CHECK(find_covering_equivalence(covering_of(big), covering_of(big), 15).has_value());
}
