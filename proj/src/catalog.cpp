#include "iia/catalog.hpp"

#include <cmath>

namespace iia {

namespace {

KForm<Rat> m3(int i, int j, int k) { return KForm<Rat>::monomial(blade_of({i, j, k}), rat(1)); }
KForm<Rat> m2(int i, int j) { return KForm<Rat>::monomial(blade_of({i, j}), rat(1)); }
KForm<Rat> e1f(int i) { return KForm<Rat>::monomial(blade_bit(i), rat(1)); }

// e^i ^ (e^{ab} + s e^{cd})
KForm<Rat> mixed(int i, int a, int b, int s, int c, int d) {
  KForm<Rat> two = m2(a, b) + rat(s) * m2(c, d);
  return wedge(e1f(i), two);
}

}  // namespace

double solvable_lambda() { return std::log((3.0 + std::sqrt(5.0)) / 2.0); }

LieAlgebraSpec<Rat> nilpotent_algebra() {
  return LieAlgebraSpec<Rat>("nilpotent", parse_salamon<Rat>("(0,0,0,e15,0,e13)"));
}

LieAlgebraSpec<Rat> solvable_rational_algebra() {
  return LieAlgebraSpec<Rat>("solvable_rational", parse_salamon<Rat>("(-e15,e25,-e36,e46,0,0)"));
}

LieAlgebraSpec<double> solvable_flow_algebra() {
  std::map<std::string, double> params{{"\xCE\xBB", solvable_lambda()}};  // λ
  return LieAlgebraSpec<double>("solvable_flow",
                                parse_salamon<double>("(-\xCE\xBB*e15,\xCE\xBB*e25,-\xCE\xBB*e36,\xCE\xBB*e46,0,0)", params));
}

LieAlgebraSpec<Rat> abelian_algebra() {
  return LieAlgebraSpec<Rat>("abelian", parse_salamon<Rat>("(0,0,0,0,0,0)"));
}

ReferenceData nilpotent_reference() {
  ReferenceData r;
  using Op = RefIdentity::Op;

  r.closed3 = {m3(1, 3, 5),
               m3(1, 3, 6),
               m3(1, 4, 5),
               m3(1, 4, 6),
               m3(2, 3, 5),
               m3(2, 3, 6),
               m3(2, 4, 5),
               mixed(1, 3, 4, -1, 5, 6),
               mixed(3, 1, 2, -1, 5, 6),
               mixed(5, 1, 2, -1, 3, 4),
               mixed(1, 3, 4, +1, 5, 6),
               mixed(2, 3, 4, +1, 5, 6),
               mixed(3, 1, 2, +1, 5, 6),
               mixed(5, 1, 2, +1, 3, 4),
               m3(1, 2, 4),
               m3(1, 2, 6)};

  r.closed_primitive3 = {m3(1, 3, 5),
                         m3(1, 3, 6),
                         m3(1, 4, 5),
                         m3(1, 4, 6),
                         m3(2, 3, 5),
                         m3(2, 3, 6),
                         m3(2, 4, 5),
                         mixed(1, 3, 4, -1, 5, 6),
                         mixed(3, 1, 2, -1, 5, 6),
                         mixed(5, 1, 2, -1, 3, 4)};

  r.exact3 = {m3(1, 3, 5), mixed(1, 3, 4, -1, 5, 6), m3(1, 2, 3), m3(1, 2, 5)};
  r.exact_primitive3 = {m3(1, 3, 5), mixed(1, 3, 4, -1, 5, 6)};

  r.ppclosed_primitive3 = {m3(1, 3, 5),
                           m3(1, 3, 6),
                           m3(1, 4, 5),
                           m3(1, 4, 6),
                           m3(2, 3, 5),
                           m3(2, 3, 6),
                           m3(2, 4, 5),
                           mixed(1, 3, 4, -1, 5, 6),
                           mixed(2, 3, 4, -1, 5, 6),
                           mixed(3, 1, 2, -1, 5, 6),
                           mixed(4, 1, 2, -1, 5, 6),
                           mixed(5, 1, 2, -1, 3, 4),
                           mixed(6, 1, 2, -1, 3, 4)};

  r.ppexact_primitive3 = {m3(1, 3, 5)};
  r.dplus_exact3 = {m3(1, 3, 5), mixed(1, 3, 4, -1, 5, 6), mixed(3, 1, 2, -1, 5, 6), mixed(5, 1, 2, -1, 3, 4)};

  r.identities = {
      {m3(1, 3, 5), Op::D, m2(3, 4), rat(1), "e135 = d(e34)"},
      {m3(1, 3, 5), Op::D, m2(5, 6), rat(-1), "e135 = -d(e56)"},
      {mixed(1, 3, 4, -1, 5, 6), Op::D, m2(4, 6), rat(-1), "e1(e34-e56) = -d(e46)"},
      {m3(1, 2, 3), Op::D, m2(2, 6), rat(1), "e123 = d(e26)"},
      {m3(1, 2, 5), Op::D, m2(2, 4), rat(1), "e125 = d(e24)"},
      {m3(1, 3, 5), Op::DplusDminus, m3(2, 4, 6), rat(-1, 2), "e135 = -1/2 d+d-(e246)"},
      {m3(1, 3, 5), Op::Dplus, m2(3, 4) - m2(5, 6), rat(1, 2), "e135 = 1/2 d+(e34-e56)"},
      {mixed(1, 3, 4, -1, 5, 6), Op::Dplus, m2(4, 6), rat(-1), "e1(e34-e56) = -d+(e46)"},
      {mixed(3, 1, 2, -1, 5, 6), Op::Dplus, m2(2, 6), rat(2), "e3(e12-e56) = 2 d+(e26)"},
      {mixed(5, 1, 2, -1, 3, 4), Op::Dplus, m2(2, 4), rat(2), "e5(e12-e34) = 2 d+(e24)"},
  };

  r.dim_h3 = 12;
  r.dim_ph3 = 8;
  r.dim_shp3 = 9;
  r.dim_shm3 = 9;

  r.basis_h3 = {m3(1, 3, 6), m3(1, 4, 5), m3(1, 4, 6), m3(2, 3, 5), m3(2, 3, 6), m3(2, 4, 5),
                mixed(2, 3, 4, +1, 5, 6), m3(1, 3, 4), m3(1, 2, 4), m3(1, 2, 6), m3(3, 5, 6), m3(3, 4, 5)};
  r.basis_ph3 = {m3(1, 3, 6), m3(1, 4, 5), m3(1, 4, 6), m3(2, 3, 5),
                 m3(2, 3, 6), m3(2, 4, 5), mixed(3, 1, 2, -1, 5, 6), mixed(5, 1, 2, -1, 3, 4)};
  r.basis_shp3 = {m3(1, 3, 6), m3(1, 4, 5), m3(1, 4, 6), m3(2, 3, 5), m3(2, 3, 6),
                  m3(2, 4, 5), mixed(2, 3, 4, -1, 5, 6), mixed(4, 1, 2, -1, 5, 6), mixed(6, 1, 2, -1, 3, 4)};
  r.basis_shm3 = {m3(1, 3, 6), m3(1, 4, 5), m3(1, 4, 6), m3(2, 3, 5), m3(2, 3, 6),
                  m3(2, 4, 5), mixed(1, 3, 4, -1, 5, 6), mixed(3, 1, 2, -1, 5, 6), mixed(5, 1, 2, -1, 3, 4)};
  return r;
}

ReferenceData solvable_reference() {
  ReferenceData r;
  using Op = RefIdentity::Op;

  KForm<Rat> a135p136 = m3(1, 3, 5) + m3(1, 3, 6);
  KForm<Rat> a145m146 = m3(1, 4, 5) - m3(1, 4, 6);
  KForm<Rat> a235m236 = m3(2, 3, 5) - m3(2, 3, 6);
  KForm<Rat> a245p246 = m3(2, 4, 5) + m3(2, 4, 6);

  r.closed3 = {a135p136,
               a145m146,
               a235m236,
               a245p246,
               mixed(5, 1, 2, -1, 3, 4),
               mixed(6, 1, 2, -1, 3, 4),
               mixed(5, 1, 2, +1, 3, 4),
               mixed(6, 1, 2, +1, 3, 4),
               m3(1, 5, 6),
               m3(2, 5, 6),
               m3(3, 5, 6),
               m3(4, 5, 6)};

  r.closed_primitive3 = {a135p136, a145m146, a235m236, a245p246, mixed(5, 1, 2, -1, 3, 4), mixed(6, 1, 2, -1, 3, 4)};

  r.exact3 = {a135p136, a145m146, a235m236, a245p246, m3(1, 5, 6), m3(2, 5, 6), m3(3, 5, 6), m3(4, 5, 6)};
  r.exact_primitive3 = {a135p136, a145m146, a235m236, a245p246};

  r.ppclosed_primitive3 = {a135p136,
                           a145m146,
                           a235m236,
                           a245p246,
                           mixed(1, 3, 4, -1, 5, 6),
                           mixed(2, 3, 4, -1, 5, 6),
                           mixed(3, 1, 2, -1, 5, 6),
                           mixed(4, 1, 2, -1, 5, 6),
                           mixed(5, 1, 2, -1, 3, 4),
                           mixed(6, 1, 2, -1, 3, 4)};

  r.ppexact_primitive3 = {a135p136, a145m146, a235m236, a245p246};
  r.dplus_exact3 = {a135p136,
                    a145m146,
                    a235m236,
                    a245p246,
                    mixed(1, 3, 4, -1, 5, 6),
                    mixed(2, 3, 4, -1, 5, 6),
                    mixed(3, 1, 2, -1, 5, 6),
                    mixed(4, 1, 2, -1, 5, 6)};

  // identities for the lambda = 1 presentation; the scaled presentation
  // carries an extra 1/lambda^2 on the d+d- preimages
  r.identities = {
      {a135p136, Op::D, m2(1, 3), rat(1), "e135+e136 = d(e13)"},
      {a145m146, Op::D, m2(1, 4), rat(1), "e145-e146 = d(e14)"},
      {a235m236, Op::D, m2(2, 3), rat(-1), "e235-e236 = -d(e23)"},
      {a245p246, Op::D, m2(2, 4), rat(-1), "e245+e246 = -d(e24)"},
      {m3(1, 5, 6), Op::D, m2(1, 6), rat(-1), "e156 = -d(e16)"},
      {m3(2, 5, 6), Op::D, m2(2, 6), rat(1), "e256 = d(e26)"},
      {m3(3, 5, 6), Op::D, m2(3, 5), rat(1), "e356 = d(e35)"},
      {m3(4, 5, 6), Op::D, m2(4, 5), rat(-1), "e456 = -d(e45)"},
      {a135p136, Op::DplusDminus, m3(1, 3, 5), rat(-1), "e135+e136 = -d+d-(e135)"},
      {a135p136, Op::DplusDminus, m3(1, 3, 6), rat(1), "e135+e136 = d+d-(e136)"},
      {a145m146, Op::DplusDminus, m3(1, 4, 5), rat(1), "e145-e146 = d+d-(e145)"},
      {a145m146, Op::DplusDminus, m3(1, 4, 6), rat(1), "e145-e146 = d+d-(e146)"},
      {a235m236, Op::DplusDminus, m3(2, 3, 5), rat(1), "e235-e236 = d+d-(e235)"},
      {a235m236, Op::DplusDminus, m3(2, 3, 6), rat(1), "e235-e236 = d+d-(e236)"},
      {a245p246, Op::DplusDminus, m3(2, 4, 5), rat(-1), "e245+e246 = -d+d-(e245)"},
      {a245p246, Op::DplusDminus, m3(2, 4, 6), rat(1), "e245+e246 = d+d-(e246)"},
      {a135p136, Op::Dplus, m2(1, 3), rat(1), "e135+e136 = d+(e13)"},
      {a145m146, Op::Dplus, m2(1, 4), rat(1), "e145-e146 = d+(e14)"},
      {a235m236, Op::Dplus, m2(2, 3), rat(-1), "e235-e236 = -d+(e23)"},
      {a245p246, Op::Dplus, m2(2, 4), rat(-1), "e245+e246 = -d+(e24)"},
      {mixed(1, 3, 4, -1, 5, 6), Op::Dplus, m2(1, 6), rat(2), "e1(e34-e56) = 2 d+(e16)"},
      {mixed(2, 3, 4, -1, 5, 6), Op::Dplus, m2(2, 6), rat(-2), "e2(e34-e56) = -2 d+(e26)"},
      {mixed(3, 1, 2, -1, 5, 6), Op::Dplus, m2(3, 5), rat(-2), "e3(e12-e56) = -2 d+(e35)"},
      {mixed(4, 1, 2, -1, 5, 6), Op::Dplus, m2(4, 5), rat(2), "e4(e12-e56) = 2 d+(e45)"},
  };

  r.dim_h3 = 4;
  r.dim_ph3 = 2;
  r.dim_shp3 = 2;
  r.dim_shm3 = 2;

  r.basis_h3 = {mixed(5, 1, 2, -1, 3, 4), mixed(6, 1, 2, -1, 3, 4), mixed(5, 1, 2, +1, 3, 4),
                mixed(6, 1, 2, +1, 3, 4)};
  r.basis_ph3 = {mixed(5, 1, 2, -1, 3, 4), mixed(6, 1, 2, -1, 3, 4)};
  r.basis_shp3 = r.basis_ph3;
  r.basis_shm3 = r.basis_ph3;
  return r;
}

}  // namespace iia
