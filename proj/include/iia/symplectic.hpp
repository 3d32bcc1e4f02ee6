#pragma once

#include <array>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "iia/kform.hpp"
#include "iia/lie_algebra.hpp"

namespace iia {

// Symplectic data on the 6-dimensional algebra: omega, its inverse bivector,
// and the volume form omega^3/3!.
//
// Convention for the dual Lefschetz operator: with Pi = omega^{-1} as a matrix,
//   Lambda = 1/2 sum_{i,j} Pi^{ij} iota_{e_i} iota_{e_j} = sum_{i<j} Pi^{ij} iota_i iota_j.
// This normalization gives Lambda(omega) = 3 and [L, Lambda] = (k-3) id on
// k-forms; both are pinned by tests, and the flow reduction checks below fix
// any residual freedom (there is none left).
template <class S>
struct SymplecticStructure {
  KForm<S> omega{2};
  std::array<std::array<S, 6>, 6> pi{};  // inverse bivector, antisymmetric
  S vol_coeff{0};                        // omega^3/3! = vol_coeff * e^{123456}

  KForm<S> volume() const { return KForm<S>::monomial(kFullBlade, vol_coeff); }
};

template <class S>
SymplecticStructure<S> make_symplectic(const KForm<S>& omega) {
  if (omega.degree() != 2) throw std::invalid_argument("omega must be a 2-form");
  SymplecticStructure<S> ss;
  ss.omega = omega;

  KForm<S> w3 = wedge(wedge(omega, omega), omega);
  S six(6);
  ss.vol_coeff = w3.coeff(kFullBlade) / six;
  if (is_zero(ss.vol_coeff)) throw std::invalid_argument("omega is degenerate (omega^3 = 0)");

  // coefficient matrix W_ij = omega(e_i, e_j); invert by Gauss-Jordan
  std::array<std::array<S, 12>, 6> aug{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      S v(0);
      if (i < j)
        v = omega.coeff(static_cast<Blade>(blade_bit(i + 1) | blade_bit(j + 1)));
      else if (i > j)
        v = S(-1) * omega.coeff(static_cast<Blade>(blade_bit(j + 1) | blade_bit(i + 1)));
      aug[i][j] = v;
      aug[i][6 + j] = S(i == j ? 1 : 0);
    }
  for (int c = 0; c < 6; ++c) {
    int p = -1;
    for (int r = c; r < 6; ++r)
      if (!is_zero(aug[r][c])) {
        p = r;
        break;
      }
    if (p < 0) throw std::invalid_argument("omega is degenerate");
    std::swap(aug[c], aug[p]);
    S inv = S(1) / aug[c][c];
    for (int j = 0; j < 12; ++j) aug[c][j] *= inv;
    for (int r = 0; r < 6; ++r) {
      if (r == c || is_zero(aug[r][c])) continue;
      S f = aug[r][c];
      for (int j = 0; j < 12; ++j) aug[r][j] -= f * aug[c][j];
    }
  }
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) ss.pi[i][j] = aug[i][6 + j];
  return ss;
}

template <class S>
KForm<S> L(const SymplecticStructure<S>& ss, const KForm<S>& a) {
  return wedge(ss.omega, a);
}

template <class S>
KForm<S> lambda(const SymplecticStructure<S>& ss, const KForm<S>& a) {
  if (a.degree() < 2) return KForm<S>(0);
  KForm<S> out(a.degree() - 2);
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j) {
      if (is_zero(ss.pi[i - 1][j - 1])) continue;
      out += ss.pi[i - 1][j - 1] * interior(i, interior(j, a));
    }
  return out;
}

// Primitivity = Lambda a = 0 (equivalent to omega^{4-k} ^ a = 0 for k <= 3).
// eps > 0 relaxes the test for floating point inputs.
template <class S>
bool is_primitive(const SymplecticStructure<S>& ss, const KForm<S>& a, const S& eps = S(0)) {
  if (a.degree() <= 1) return true;
  KForm<S> la = lambda(ss, a);
  if (is_zero(eps)) return la.empty();
  return !(eps < la.linf_norm());
}

// Lefschetz split of a 3-form: a = p + omega ^ alpha with p primitive,
// alpha = Lambda(a)/2.
template <class S>
std::pair<KForm<S>, KForm<S>> lefschetz_parts_3form(const SymplecticStructure<S>& ss, const KForm<S>& a) {
  if (a.degree() != 3) throw std::invalid_argument("expected a 3-form");
  KForm<S> alpha = lambda(ss, a) * (S(1) / S(2));
  KForm<S> p = a - wedge(ss.omega, alpha);
  return {p, alpha};
}

// Lefschetz split of a 2-form: a = p + c omega, c = Lambda(a)/3.
template <class S>
std::pair<KForm<S>, S> lefschetz_parts_2form(const SymplecticStructure<S>& ss, const KForm<S>& a) {
  if (a.degree() != 2) throw std::invalid_argument("expected a 2-form");
  S c = lambda(ss, a).coeff(0) / S(3);
  KForm<S> p = a - c * ss.omega;
  return {p, c};
}

// Lefschetz split of a 4-form: a = omega ^ q + c omega^2 with q primitive;
// q = Lambda(a) - (Lambda^2(a)/3) omega, c = Lambda^2(a)/12.
template <class S>
std::pair<KForm<S>, S> lefschetz_parts_4form(const SymplecticStructure<S>& ss, const KForm<S>& a) {
  if (a.degree() != 4) throw std::invalid_argument("expected a 4-form");
  KForm<S> la = lambda(ss, a);
  S c = lambda(ss, la).coeff(0) / S(12);
  KForm<S> q = la - (S(4) * c) * ss.omega;
  return {q, c};
}

template <class S>
struct DpmSplit {
  KForm<S> plus;   // primitive (k+1)-form
  KForm<S> minus;  // primitive (k-1)-form
};

// d restricted to primitive forms: d p = d_+ p + omega ^ d_- p. Defined for
// primitive forms of degree <= 3; degree-3 forms have d_+ = 0 (no primitive
// 4-forms in dimension 6).
template <class S>
DpmSplit<S> dpm_split(const LieAlgebraSpec<S>& spec, const SymplecticStructure<S>& ss, const KForm<S>& p) {
  int k = p.degree();
  if (k > 3) throw std::invalid_argument("dpm_split needs degree <= 3");
  S prim_eps(0);
  if constexpr (std::is_same_v<S, double>) prim_eps = 1e-9 * (1.0 + p.linf_norm());
  if (!is_primitive(ss, p, prim_eps)) throw std::invalid_argument("dpm_split input is not primitive");
  KForm<S> dp = spec.d(p);
  DpmSplit<S> out{KForm<S>(k + 1), KForm<S>(k > 0 ? k - 1 : 0)};
  switch (k) {
    case 0:
      // invariant functions are constants; d = 0
      break;
    case 1: {
      auto [prim, c] = lefschetz_parts_2form(ss, dp);
      out.plus = prim;
      out.minus = KForm<S>::monomial(0, c);
      break;
    }
    case 2: {
      auto [prim, alpha] = lefschetz_parts_3form(ss, dp);
      out.plus = prim;
      out.minus = alpha;
      break;
    }
    case 3: {
      auto [q, c] = lefschetz_parts_4form(ss, dp);
      bool c_vanishes;
      if constexpr (std::is_same_v<S, double>) {
        c_vanishes = std::fabs(c) <= 1e-9 * (1.0 + dp.linf_norm());
      } else {
        c_vanishes = is_zero(c);
      }
      if (!c_vanishes) throw std::runtime_error("dpm_split: omega^2 component should vanish on primitive 3-forms");
      out.plus = KForm<S>(4);  // zero: primitive 4-forms vanish
      out.minus = q;
      break;
    }
  }
  return out;
}

// d_+ d_- as one operator on primitive 3-forms; equals d Lambda d there.
template <class S>
KForm<S> dpd_minus(const LieAlgebraSpec<S>& spec, const SymplecticStructure<S>& ss, const KForm<S>& p) {
  DpmSplit<S> s1 = dpm_split(spec, ss, p);
  DpmSplit<S> s2 = dpm_split(spec, ss, s1.minus);
  return s2.plus;
}

// d Lambda d without primitivity bookkeeping; the flow right-hand side uses
// this composition directly.
template <class S>
KForm<S> d_lambda_d(const LieAlgebraSpec<S>& spec, const SymplecticStructure<S>& ss, const KForm<S>& a) {
  return spec.d(lambda(ss, spec.d(a)));
}

}  // namespace iia
