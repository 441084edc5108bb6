#include <algorithm>
#include <numeric>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "qk/errors.hpp"
#include "qk/perm.hpp"

using namespace qk;

namespace {

Perm random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), Point{0});
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

// a∘b straight from the definition: i ↦ a(b(i)).
std::vector<Point> hand_compose(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

}  // namespace

TEST_CASE("compose applies the right factor first") {
  const Perm id = Perm::identity(3);
  const Perm t = Perm::from_cycles(3, {{0, 1}});
  const Perm c = Perm::from_cycles(3, {{0, 1, 2}});
  CHECK(compose(id, c) == c);
  CHECK(compose(t, t).is_identity());
  const std::vector<Point> cv(c.images().begin(), c.images().end()), tv(t.images().begin(), t.images().end());
  const Perm ct = compose(c, t);
  CHECK(std::vector<Point>(ct.images().begin(), ct.images().end()) == hand_compose(cv, tv));
  CHECK(compose(c, t) == Perm({2, 1, 0}));
  CHECK_THROWS_AS(compose(t, Perm::identity(4)), DegreeMismatch);
}

TEST_CASE("inverse is two-sided and composition associative") {
  CHECK(inverse(Perm::identity(5)).is_identity());
  CHECK(inverse(Perm::from_cycles(3, {{0, 1, 2}})) == Perm::from_cycles(3, {{0, 2, 1}}));
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Perm a = random_perm(8, rng), b = random_perm(8, rng), c = random_perm(8, rng);
    CHECK(compose(a, inverse(a)).is_identity());
    CHECK(compose(inverse(a), a).is_identity());
    CHECK(compose(a, compose(b, c)) == compose(compose(a, b), c));
  }
}

TEST_CASE("Perm rejects non-permutations and round-trips through text") {
  CHECK_THROWS(Perm({0, 0, 1}));
  CHECK_THROWS(Perm({0, 3}));
  const Perm p({1, 0, 2});
  CHECK(to_string(p) == "3: [1,0,2]");
  CHECK(parse_perm("3: [1,0,2]") == p);
  CHECK(parse_perm(" 4 : [ 3, 2, 1, 0 ] ") == Perm({3, 2, 1, 0}));
  CHECK_THROWS_AS(parse_perm("3: [1,0]"), ParseError);
  CHECK_THROWS_AS(parse_perm("[1,0]"), ParseError);
}

TEST_CASE("closure enumerates small groups and honors the cap") {
  const Perm t = Perm::from_cycles(3, {{0, 1}});
  const Perm c = Perm::from_cycles(3, {{0, 1, 2}});
  std::vector<Perm> one{t};
  CHECK(closure(3, one).size() == 2);
  std::vector<Perm> two{t, c};
  auto s3 = closure(3, two);
  CHECK(s3.size() == 6);
  CHECK(std::is_sorted(s3.begin(), s3.end()));
  std::vector<Point> ten(10);
  std::iota(ten.begin(), ten.end(), Point{0});
  std::vector<Perm> rot{Perm::from_cycles(10, {ten})};
  CHECK_THROWS_AS(closure(10, rot, 5), CapExceeded);
  CHECK(closure(10, rot, 10).size() == 10);
}

TEST_CASE("closure order divides the factorial of the degree") {
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + i % 5;
    std::vector<Perm> gens{random_perm(n, rng)};
    if (i % 2) gens.push_back(random_perm(n, rng));
    std::uint64_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    CHECK(fact % closure(n, gens).size() == 0);
  }
}

TEST_CASE("orbits") {
  std::vector<Perm> id{Perm::identity(3)};
  CHECK(orbit(id, 0) == std::vector<Point>{0});
  std::vector<Perm> c{Perm::from_cycles(3, {{0, 1, 2}})};
  CHECK(orbit(c, 1) == std::vector<Point>{0, 1, 2});
  const auto r3 = testing::r3();
  CHECK(orbit(r3.q.quandle.left_sections(), 0) == std::vector<Point>{0, 1, 2});
}

TEST_CASE("transitivity tests") {
  PermGroup cyc(3, {Perm::from_cycles(3, {{0, 1, 2}})});
  CHECK(is_transitive(cyc));
  CHECK_FALSE(is_doubly_transitive(cyc));
  PermGroup s3(3, {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})});
  CHECK(is_doubly_transitive(s3));
  const auto o4 = testing::order4();
  PermGroup lm(4, o4.q.quandle.left_sections());
  CHECK(is_doubly_transitive(lm));

  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    PermGroup g(5, {random_perm(5, rng), random_perm(5, rng)});
    if (is_doubly_transitive(g)) CHECK(is_transitive(g));
  }
}

TEST_CASE("cycle structures") {
  CHECK(cycle_structure(Perm::identity(4)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(cycle_structure(Perm::from_cycles(4, {{0, 1, 2}})) == std::vector<std::size_t>{3, 1});
  CHECK(cycle_structure(testing::order4().q.quandle.left_section(0)) == std::vector<std::size_t>{3, 1});
  CHECK(order(Perm::from_cycles(5, {{0, 1}, {2, 3, 4}})) == 6);
}

TEST_CASE("left sections satisfy L_y L_x L_y^-1 = L_(y x)") {
  for (const auto& e : testing::connected_affine_corpus(9)) {
    const Quandle& q = e.q.quandle;
    for (Elem x = 0; x < q.size(); ++x) {
      for (Elem y = 0; y < q.size(); ++y) {
        CHECK(compose(q.left_section(y), compose(q.left_section(x), inverse(q.left_section(y)))) ==
              q.left_section(q.op(y, x)));
      }
    }
  }
}
