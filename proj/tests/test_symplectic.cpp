#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "iia/catalog.hpp"
#include "iia/symplectic.hpp"
#include "util.hpp"

using namespace iia;
using testutil::random_form;

namespace {

KForm<Rat> mono(std::initializer_list<int> idx, long num = 1, long den = 1) {
  return KForm<Rat>::monomial(blade_of(idx), rat(num, den));
}

KForm<Rat> random_primitive3(const SymplecticStructure<Rat>& ss, std::mt19937_64& g) {
  auto [p, alpha] = lefschetz_parts_3form(ss, random_form<Rat>(3, g));
  (void)alpha;
  return p;
}

}  // namespace

TEST_CASE("standard structure: inverse bivector and volume") {
  auto ss = make_symplectic(standard_omega<Rat>());
  CHECK(ss.vol_coeff == rat(1));
  CHECK(ss.volume() == mono({1, 2, 3, 4, 5, 6}));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Rat expect(0);
      if (i / 2 == j / 2) expect = (j == i + 1) ? rat(-1) : (i == j + 1 ? rat(1) : rat(0));
      CHECK(ss.pi[i][j] == expect);
    }

  // a non-standard symplectic form inverts correctly too: omega = 2e12+e34+e56-e14
  KForm<Rat> w(2);
  w.add(blade_of({1, 2}), rat(2));
  w.add(blade_of({3, 4}), rat(1));
  w.add(blade_of({5, 6}), rat(1));
  w.add(blade_of({1, 4}), rat(-1));
  auto ss2 = make_symplectic(w);
  // W * Pi = Id
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Rat acc(0);
      for (int k = 0; k < 6; ++k) {
        Blade bik = static_cast<Blade>(blade_bit(std::min(i, k) + 1) | blade_bit(std::max(i, k) + 1));
        Rat wik = i == k ? Rat(0) : (i < k ? w.coeff(bik) : -w.coeff(bik));
        acc += wik * ss2.pi[k][j];
      }
      CHECK(acc == (i == j ? rat(1) : rat(0)));
    }

  CHECK_THROWS_WITH_AS(make_symplectic(mono({1, 2}) + mono({3, 4})), doctest::Contains("degenerate"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_symplectic(KForm<Rat>(3)), std::invalid_argument);
}

TEST_CASE("dual Lefschetz operator on reference inputs") {
  auto ss = make_symplectic(standard_omega<Rat>());
  CHECK(lambda(ss, ss.omega).coeff(0) == rat(3));
  CHECK(lambda(ss, mono({1, 2, 3, 4})) == mono({1, 2}) + mono({3, 4}));
  CHECK(lambda(ss, mono({1, 2, 5, 6})) == mono({1, 2}) + mono({5, 6}));
  CHECK(lambda(ss, mono({1, 3, 5})).empty());
  CHECK(lambda(ss, mono({1, 2, 3})) == mono({3}));
  // Lambda(omega^2) = 4 omega, Lambda^2(omega^2) = 12
  KForm<Rat> w2 = wedge(ss.omega, ss.omega);
  CHECK(lambda(ss, w2) == rat(4) * ss.omega);
  CHECK(lambda(ss, lambda(ss, w2)).coeff(0) == rat(12));
}

TEST_CASE("commutator [L, Lambda] = (k - 3) id on k-forms") {
  auto ss = make_symplectic(standard_omega<Rat>());
  std::mt19937_64 g(31);
  for (int iter = 0; iter < 10; ++iter) {
    for (int k = 0; k <= 6; ++k) {
      KForm<Rat> a = random_form<Rat>(k, g);
      // L Lambda a is zero below degree 2; Lambda L a is zero above degree 4
      KForm<Rat> first = k >= 2 ? L(ss, lambda(ss, a)) : KForm<Rat>(k);
      KForm<Rat> second = k <= 4 ? lambda(ss, L(ss, a)) : KForm<Rat>(k);
      CHECK(first - second == rat(k - 3) * a);
    }
  }
}

TEST_CASE("Lefschetz splits reassemble and their parts are primitive") {
  auto ss = make_symplectic(standard_omega<Rat>());
  std::mt19937_64 g(37);
  for (int iter = 0; iter < 20; ++iter) {
    KForm<Rat> a3 = random_form<Rat>(3, g);
    auto [p, alpha] = lefschetz_parts_3form(ss, a3);
    CHECK(is_primitive(ss, p));
    CHECK(p + wedge(ss.omega, alpha) == a3);
    // primitive 3-forms are annihilated by L
    CHECK(wedge(ss.omega, p).empty());

    KForm<Rat> a2 = random_form<Rat>(2, g);
    auto [q, c] = lefschetz_parts_2form(ss, a2);
    CHECK(is_primitive(ss, q));
    CHECK(q + c * ss.omega == a2);

    KForm<Rat> a4 = random_form<Rat>(4, g);
    auto [r, c4] = lefschetz_parts_4form(ss, a4);
    CHECK(is_primitive(ss, r));
    CHECK(wedge(ss.omega, r) + c4 * wedge(ss.omega, ss.omega) == a4);
  }
}

TEST_CASE("d splits on primitive forms") {
  auto nil = nilpotent_algebra();
  auto ss = make_symplectic(standard_omega<Rat>());
  std::mt19937_64 g(41);

  // 1-forms: d p = d_+ p + (d_- p) omega
  for (int iter = 0; iter < 15; ++iter) {
    KForm<Rat> p = random_form<Rat>(1, g);
    auto s = dpm_split(nil, ss, p);
    CHECK(is_primitive(ss, s.plus));
    CHECK(s.plus + s.minus.coeff(0) * ss.omega == nil.d(p));
  }
  // 2-forms: d p = d_+ p + omega ^ d_- p
  for (int iter = 0; iter < 15; ++iter) {
    auto [p, c] = lefschetz_parts_2form(ss, random_form<Rat>(2, g));
    (void)c;
    auto s = dpm_split(nil, ss, p);
    CHECK(is_primitive(ss, s.plus));
    CHECK(s.plus + wedge(ss.omega, s.minus) == nil.d(p));
  }
  // 3-forms: no primitive 4-forms, so d p = omega ^ d_- p
  for (int iter = 0; iter < 15; ++iter) {
    KForm<Rat> p = random_primitive3(ss, g);
    auto s = dpm_split(nil, ss, p);
    CHECK(s.plus.empty());
    CHECK(is_primitive(ss, s.minus));
    CHECK(wedge(ss.omega, s.minus) == nil.d(p));
  }

  CHECK_THROWS_WITH_AS(dpm_split(nil, ss, mono({1, 2}) + mono({1, 3})), doctest::Contains("not primitive"),
                       std::invalid_argument);
}

TEST_CASE("second-order operator equals d Lambda d on primitive 3-forms") {
  auto ss = make_symplectic(standard_omega<Rat>());
  std::mt19937_64 g(43);
  for (auto spec : {nilpotent_algebra(), solvable_rational_algebra()}) {
    for (int iter = 0; iter < 20; ++iter) {
      KForm<Rat> p = random_primitive3(ss, g);
      CHECK(dpd_minus(spec, ss, p) == d_lambda_d(spec, ss, p));
    }
  }
}

TEST_CASE("reference second-order values on the nilpotent algebra") {
  auto nil = nilpotent_algebra();
  auto ss = make_symplectic(standard_omega<Rat>());
  // d+d-(e246) = -2 e135
  CHECK(dpd_minus(nil, ss, mono({2, 4, 6})) == mono({1, 3, 5}, -2));
  CHECK(d_lambda_d(nil, ss, mono({2, 4, 6})) == mono({1, 3, 5}, -2));
}
