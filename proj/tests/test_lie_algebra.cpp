#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "iia/algebra_io.hpp"
#include "iia/catalog.hpp"
#include "iia/lie_algebra.hpp"
#include "util.hpp"

using namespace iia;
using testutil::random_form;

TEST_CASE("tuple notation parses to the expected differentials") {
  auto d = parse_salamon<Rat>("(0,0,0,e15,0,e13)");
  CHECK(d[0].empty());
  CHECK(d[1].empty());
  CHECK(d[2].empty());
  CHECK(d[3] == KForm<Rat>::monomial(blade_of({1, 5}), rat(1)));
  CHECK(d[4].empty());
  CHECK(d[5] == KForm<Rat>::monomial(blade_of({1, 3}), rat(1)));

  auto s = parse_salamon<Rat>("(-e15,e25,-e36,e46,0,0)");
  CHECK(s[0] == KForm<Rat>::monomial(blade_of({1, 5}), rat(-1)));
  CHECK(s[1] == KForm<Rat>::monomial(blade_of({2, 5}), rat(1)));
  CHECK(s[2] == KForm<Rat>::monomial(blade_of({3, 6}), rat(-1)));
  CHECK(s[3] == KForm<Rat>::monomial(blade_of({4, 6}), rat(1)));

  // braces, explicit scalars, parameters, whitespace
  auto t = parse_salamon<Rat>("( 3/2*e^{12} - e34 + 0 , 0, 0, 0, 0, 2*e12+e12 )");
  KForm<Rat> want(2);
  want.add(blade_of({1, 2}), rat(3, 2));
  want.add(blade_of({3, 4}), rat(-1));
  CHECK(t[0] == want);
  CHECK(t[5] == KForm<Rat>::monomial(blade_of({1, 2}), rat(3)));

  std::map<std::string, Rat> params{{"a", rat(2, 3)}};
  auto u = parse_salamon<Rat>("(a*e12,-a*e34,0,0,0,0)", params);
  CHECK(u[0] == KForm<Rat>::monomial(blade_of({1, 2}), rat(2, 3)));
  CHECK(u[1] == KForm<Rat>::monomial(blade_of({3, 4}), rat(-2, 3)));

  auto dec = parse_salamon<Rat>("(0.25*e12,0,0,0,0,0)");
  CHECK(dec[0] == KForm<Rat>::monomial(blade_of({1, 2}), rat(1, 4)));
}

TEST_CASE("parse errors carry the offending position") {
  struct Bad {
    const char* text;
    size_t pos;
  };
  const Bad cases[] = {
      {"", 0},
      {"(0,0,0)", 6},
      {"(0,0,0,0,0,0", 12},
      {"(0,0,0,0,0,0))", 13},
      {"(e1,0,0,0,0,0)", 1},
      {"(e123,0,0,0,0,0)", 1},
      {"(e17,0,0,0,0,0)", 1},
      {"(e11,0,0,0,0,0)", 1},
      {"(e21,0,0,0,0,0)", 1},
      {"(e^15,0,0,0,0,0)", 3},
      {"(e^{15,0,0,0,0,0)", 6},
      {"(3,0,0,0,0,0)", 2},
      {"(x*e12,0,0,0,0,0)", 1},
      {"(1/0*e12,0,0,0,0,0)", 1},
      {"(1.*e12,0,0,0,0,0)", 3},
      {"(+,0,0,0,0,0)", 2},
      {"(0,0,0,0,0,0),x", 13},
      {"(e12 e34,0,0,0,0,0)", 5},
      {"0,0,0,0,0", 9},
      {"(1/,0,0,0,0,0)", 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    try {
      parse_salamon<Rat>(c.text);
      FAIL_CHECK("expected a parse error for ", c.text);
    } catch (const ParseError& e) {
      CHECK(e.position() == c.pos);
    }
  }
}

TEST_CASE("printing round-trips") {
  for (const char* text : {"(0,0,0,e15,0,e13)", "(-e15,e25,-e36,e46,0,0)", "(3/2*e12-e34+e56,0,e12,0,0,-2*e45)"}) {
    LieAlgebraSpec<Rat> spec("t", parse_salamon<Rat>(text));
    std::string printed = print_salamon(spec);
    LieAlgebraSpec<Rat> again("t", parse_salamon<Rat>(printed));
    CHECK(again.d_images() == spec.d_images());
    CHECK(print_salamon(again) == printed);
  }
  CHECK(print_salamon(nilpotent_algebra()) == "(0,0,0,e15,0,e13)");
}

TEST_CASE("structure constants and brackets") {
  auto spec = nilpotent_algebra();
  // d e^4 = e^{15} means c^4_{15} = -1, i.e. [e1,e5] = -e4
  CHECK(spec.structure_const(4, 1, 5) == rat(-1));
  CHECK(spec.structure_const(4, 5, 1) == rat(1));
  CHECK(spec.structure_const(6, 1, 3) == rat(-1));
  CHECK(spec.structure_const(1, 1, 5) == rat(0));
  auto br = spec.bracket(1, 5);
  for (int k = 0; k < 6; ++k) CHECK(br[k] == (k == 3 ? rat(-1) : rat(0)));
}

TEST_CASE("differential: graded Leibniz and d^2 = 0") {
  auto spec = nilpotent_algebra();
  std::mt19937_64 g(23);
  for (int iter = 0; iter < 25; ++iter) {
    int ka = 1 + static_cast<int>(g() % 3);
    int kb = 1 + static_cast<int>(g() % 2);
    KForm<Rat> a = random_form<Rat>(ka, g);
    KForm<Rat> b = random_form<Rat>(kb, g);
    KForm<Rat> lhs = spec.d(wedge(a, b));
    KForm<Rat> rhs = wedge(spec.d(a), b);
    KForm<Rat> second = wedge(a, spec.d(b));
    if (ka % 2 == 1) second *= rat(-1);
    rhs += second;
    CHECK(lhs == rhs);
    CHECK(spec.d(spec.d(a)).empty());
  }
}

TEST_CASE("validation of the bundled algebras") {
  for (auto spec : {nilpotent_algebra(), solvable_rational_algebra(), abelian_algebra()}) {
    auto rep = validate(spec, standard_omega<Rat>());
    CAPTURE(spec.name());
    CAPTURE(rep.detail);
    CHECK(rep.jacobi_ok);
    CHECK(rep.unimodular_ok);
    CHECK(rep.omega_closed);
    CHECK(rep.omega_nondegenerate);
    CHECK(rep.ok());
  }
  auto flow = solvable_flow_algebra();
  auto repf = validate(flow, standard_omega<double>());
  CHECK(repf.ok());
}

TEST_CASE("validation failures are reported") {
  // d e^2 = e14 breaks d^2 = 0: d(d e^2) = e234
  LieAlgebraSpec<Rat> bad_jacobi("bad", parse_salamon<Rat>("(e23,e14,0,0,0,0)"));
  auto r1 = validate(bad_jacobi, standard_omega<Rat>());
  CHECK(!r1.jacobi_ok);

  // d e^1 = e12 gives tr(ad e_2) != 0
  LieAlgebraSpec<Rat> not_unimodular("bad", parse_salamon<Rat>("(e12,0,0,0,0,0)"));
  auto r2 = validate(not_unimodular, standard_omega<Rat>());
  CHECK(r2.jacobi_ok);
  CHECK(!r2.unimodular_ok);

  // omega with d omega != 0 on the nilpotent algebra: d(e46) = e156 - e134
  KForm<Rat> w = standard_omega<Rat>();
  w.add(blade_of({4, 6}), rat(1));
  auto r3 = validate(nilpotent_algebra(), w);
  CHECK(!r3.omega_closed);

  auto r4 = validate(abelian_algebra(), KForm<Rat>::monomial(blade_of({1, 2}), rat(1)));
  CHECK(!r4.omega_nondegenerate);
}

TEST_CASE("ideal tests") {
  auto spec = nilpotent_algebra();
  CHECK(kernel_distribution_is_ideal(spec, {2, 4, 6}));
  // span{e1} is not an ideal: [e1,e5] = -e4
  CHECK(!kernel_distribution_is_ideal(spec, {1}));
  Mat<Rat> rows{{rat(0), rat(1), rat(0), rat(0), rat(0), rat(0)},
                {rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)},
                {rat(0), rat(0), rat(0), rat(0), rat(0), rat(1)}};
  CHECK(subspace_is_ideal(spec, rows));
  Mat<Rat> bad{{rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)}};
  CHECK(!subspace_is_ideal(spec, bad));
}

TEST_CASE("algebra files load in both scalar modes") {
  std::string dir = IIA_DATA_DIR;
  auto nil = load_algebra<Rat>(dir + "/nilpotent.json");
  CHECK(nil.spec.d_images() == nilpotent_algebra().d_images());
  CHECK(nil.omega == standard_omega<Rat>());

  auto sr = load_algebra<Rat>(dir + "/solvable_rational.json");
  CHECK(sr.spec.d_images() == solvable_rational_algebra().d_images());

  auto ab = load_algebra<Rat>(dir + "/abelian.json");
  for (const auto& f : ab.spec.d_images()) CHECK(f.empty());

  auto sf = load_algebra<double>(dir + "/solvable_flow.json");
  double l = solvable_lambda();
  CHECK(sf.spec.d_images()[0].coeff(blade_of({1, 5})) == doctest::Approx(-l).epsilon(1e-15));
  CHECK(sf.spec.d_images()[3].coeff(blade_of({4, 6})) == doctest::Approx(l).epsilon(1e-15));

  // the scaled presentation cannot be used exactly
  CHECK_THROWS_WITH_AS(load_algebra<Rat>(dir + "/solvable_flow.json"),
                       doctest::Contains("not a rational literal"), std::runtime_error);
}

TEST_CASE("parameter expressions") {
  CHECK(eval_param_expr("log((3+sqrt(5))/2)") == doctest::Approx(0.9624236501192069).epsilon(1e-15));
  CHECK(eval_param_expr("1/2 + 1/2") == doctest::Approx(1.0));
  CHECK(eval_param_expr("-2*exp(0)") == doctest::Approx(-2.0));
  CHECK_THROWS_AS(eval_param_expr("log(0)"), ParseError);
  CHECK_THROWS_AS(eval_param_expr("sqrt(-1)"), ParseError);
  CHECK_THROWS_AS(eval_param_expr("foo(1)"), ParseError);
  CHECK_THROWS_AS(eval_param_expr("1+"), ParseError);
  CHECK_THROWS_AS(eval_param_expr("(1"), ParseError);
  CHECK_THROWS_AS(eval_param_expr("1/0"), ParseError);
}
