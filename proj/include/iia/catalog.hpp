#pragma once

#include <vector>

#include "iia/kform.hpp"
#include "iia/lie_algebra.hpp"

namespace iia {

// omega = e12 + e34 + e56
template <class S>
KForm<S> standard_omega() {
  KForm<S> w(2);
  w.add(blade_of({1, 2}), S(1));
  w.add(blade_of({3, 4}), S(1));
  w.add(blade_of({5, 6}), S(1));
  return w;
}

// log((3+sqrt 5)/2), the structure constant of the bundled solvable algebra
double solvable_lambda();

// (0,0,0,e15,0,e13), the nilpotent example
LieAlgebraSpec<Rat> nilpotent_algebra();

// (-e15,e25,-e36,e46,0,0): the solvable example with the scale factor rolled
// into the basis, suitable for exact arithmetic. All four degree-3 cohomologies
// agree with the scaled presentation (they are invariant under omega -> c omega).
LieAlgebraSpec<Rat> solvable_rational_algebra();

// (-l e15, l e25, -l e36, l e46, 0, 0) with l = log((3+sqrt5)/2), for numerics.
LieAlgebraSpec<double> solvable_flow_algebra();

LieAlgebraSpec<Rat> abelian_algebra();

// Known spanning sets and quotient bases for the two examples, used to
// cross-check the computed cohomology spaces. lhs = factor * op(arg) identities
// pin the stated preimages exactly.
struct RefIdentity {
  enum class Op { D, Dplus, DplusDminus };
  KForm<Rat> lhs;
  Op op;
  KForm<Rat> arg;
  Rat factor;
  const char* label;
};

struct ReferenceData {
  // spanning sets for the seven spaces, in the listed order
  std::vector<KForm<Rat>> closed3;
  std::vector<KForm<Rat>> closed_primitive3;
  std::vector<KForm<Rat>> exact3;
  std::vector<KForm<Rat>> exact_primitive3;
  std::vector<KForm<Rat>> ppclosed_primitive3;  // ker d_+d_-
  std::vector<KForm<Rat>> ppexact_primitive3;   // im d_+d_-
  std::vector<KForm<Rat>> dplus_exact3;         // im d_+ from primitive 2-forms
  std::vector<RefIdentity> identities;
  // expected quotient dimensions: H3, PH3, SH+3, SH-3
  int dim_h3 = 0, dim_ph3 = 0, dim_shp3 = 0, dim_shm3 = 0;
  // quotient bases (classes of these forms are a basis)
  std::vector<KForm<Rat>> basis_h3, basis_ph3, basis_shp3, basis_shm3;
};

ReferenceData nilpotent_reference();
ReferenceData solvable_reference();

}  // namespace iia
