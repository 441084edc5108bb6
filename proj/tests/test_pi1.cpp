#include <limits>
#include <numeric>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qk/errors.hpp"
#include "qk/pi1.hpp"

using namespace qk;

namespace {

FElement random_element(const ClauwensData& d, std::mt19937& rng) {
  const FinAbGroup& g = d.base;
  const FinAbGroup& t = d.tensor.group();
  const auto k = std::uniform_int_distribution<std::int64_t>(-7, 7)(rng);
  const auto x = g.element_at(std::uniform_int_distribution<std::uint64_t>(0, g.order() - 1)(rng));
  const auto a = t.element_at(std::uniform_int_distribution<std::uint64_t>(0, t.order() - 1)(rng));
  return f_element(d, k, x, a);
}

}  // namespace

TEST_CASE("the order-4 quandle has fundamental group Z2") {
  const auto g = FinAbGroup::elementary(2, 2);
  const AbHom a(g, g, {{1, 1}, {1, 0}});
  const auto d = s_group(g, a);
  CHECK(d.tensor.group().order() == 16);
  CHECK(d.ideal.order() == 8);
  CHECK(d.invariants == std::vector<std::int64_t>{2});
  CHECK(d.s_order() == 2);
  CHECK(d.alpha_order == 3);
  CHECK(pi1_affine(testing::order4().q) == std::vector<std::int64_t>{2});
  CHECK_FALSE(is_simply_connected_affine(testing::order4().q));
}

TEST_CASE("ideal order matches closure of all generators") {
  for (const auto& e : testing::connected_affine_corpus(16)) {
    CAPTURE(e.name);
    const auto d = s_group(e.q.base, e.q.alpha);
    CHECK(d.ideal.order() == testing::brute_ideal_order(e.q.base, e.q.alpha));
    CHECK(d.s_order() * d.ideal.order() == d.tensor.group().order());
  }
}

TEST_CASE("cyclic connected affine quandles are simply connected") {
  for (std::int64_t m = 2; m <= 30; ++m) {
    for (std::int64_t n = 1; n < m; ++n) {
      if (std::gcd(m, n) != 1 || std::gcd(m, ((1 - n) % m + m) % m) != 1) continue;
      CAPTURE(m);
      CAPTURE(n);
      CHECK(pi1_affine(affine_cyclic(m, n)).empty());
    }
  }
}

TEST_CASE("doubly transitive instances") {
  CHECK(is_simply_connected_affine(testing::z2cube_7cycle().q));
  CHECK(is_simply_connected_affine(testing::z3sq_8cycle().q));
  CHECK(is_simply_connected_affine(affine_cyclic(5, 2)));
  CHECK(is_simply_connected_affine(affine_cyclic(5, 3)));
}

TEST_CASE("refusals") {
  CHECK_THROWS_AS(pi1_affine(affine_cyclic(4, 3)), NotConnected);
  const auto g = FinAbGroup::elementary(2, 2);
  CHECK_THROWS_AS(s_group(g, AbHom::zero(g, g)), NotAutomorphism);
  const auto d = s_group(g, AbHom(g, g, {{1, 1}, {1, 0}}));
  CHECK_THROWS_AS(f_element(d, 0, {2, 0}, {0, 0, 0, 0}), InvalidElement);
  CHECK_THROWS_AS(f_element(d, 0, {0, 0}, {0, 0, 0}), InvalidElement);
}

TEST_CASE("coset representatives") {
  const auto e = testing::order4();
  const auto d = s_group(e.q.base, e.q.alpha);
  const FinAbGroup& t = d.tensor.group();
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const AbElem x = t.element_at(i);
    const AbElem r = d.reduce(x);
    CHECK(t.index_of(r) <= i);
    CHECK(d.ideal.contains(t.sub(x, r)));
    for (const auto& rel : d.relators) CHECK(d.reduce(t.add(x, rel)) == r);
  }
}

TEST_CASE("F(G, alpha) is a group") {
  std::mt19937 rng(41);
  for (const auto& e : {testing::order4(), testing::z3sq_8cycle(), testing::cyclic(9, 2), testing::cyclic(7, 3)}) {
    CAPTURE(e.name);
    const auto d = s_group(e.q.base, e.q.alpha);
    const FElement one = f_identity(d);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = random_element(d, rng), q = random_element(d, rng), r = random_element(d, rng);
      CHECK(f_multiply(d, f_multiply(d, p, q), r) == f_multiply(d, p, f_multiply(d, q, r)));
      CHECK(f_multiply(d, p, one) == p);
      CHECK(f_multiply(d, one, p) == p);
      CHECK(f_multiply(d, p, f_inverse(d, p)) == one);
      CHECK(f_multiply(d, f_inverse(d, p), p) == one);
    }
  }
}

TEST_CASE("F(G, alpha) multiplication by hand") {
  const auto e = testing::order4();
  const auto d = s_group(e.q.base, e.q.alpha);
  const auto& t = d.tensor;
  // (0, x, 0)(1, y, 0) = (1, α(x) + y, α(x)⊗y)
  const AbElem x{1, 0}, y{0, 1};
  const AbElem ax = e.q.alpha(x);
  const FElement p = f_element(d, 0, x, t.group().zero());
  const FElement q = f_element(d, 1, y, t.group().zero());
  const FElement want = f_element(d, 1, e.q.base.add(ax, y), t.pure_tensor(ax, y));
  CHECK(f_multiply(d, p, q) == want);
}

TEST_CASE("integer overflow is reported") {
  const auto e = testing::order4();
  const auto d = s_group(e.q.base, e.q.alpha);
  const auto zero = d.tensor.group().zero();
  const auto big = f_element(d, std::numeric_limits<std::int64_t>::max(), e.q.base.zero(), zero);
  const auto one = f_element(d, 1, e.q.base.zero(), zero);
  CHECK_THROWS_AS(f_multiply(d, big, one), std::overflow_error);
  const auto low = f_element(d, std::numeric_limits<std::int64_t>::min(), e.q.base.zero(), zero);
  CHECK_THROWS_AS(f_inverse(d, low), std::overflow_error);
}
