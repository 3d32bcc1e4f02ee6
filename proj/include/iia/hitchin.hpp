#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "iia/kform.hpp"
#include "iia/symplectic.hpp"

namespace iia {

// Endomorphisms of the 6-dimensional space in the fixed basis. Columns are the
// images of the basis vectors: (M v)_i = sum_j M[i][j] v_j.
template <class S>
using Endo6 = std::array<std::array<S, 6>, 6>;

template <class S>
Endo6<S> endo_mul(const Endo6<S>& a, const Endo6<S>& b) {
  Endo6<S> out{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      if (is_zero(a[i][k])) continue;
      for (int j = 0; j < 6; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

template <class S>
std::array<S, 6> endo_apply(const Endo6<S>& m, const std::array<S, 6>& v) {
  std::array<S, 6> out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out[i] += m[i][j] * v[j];
  return out;
}

template <class S>
S endo_trace(const Endo6<S>& m) {
  S t(0);
  for (int i = 0; i < 6; ++i) t += m[i][i];
  return t;
}

template <class S>
S endo_linf(const Endo6<S>& m) {
  S mx(0);
  for (const auto& row : m)
    for (const auto& v : row)
      if (abs_val(v) > mx) mx = abs_val(v);
  return mx;
}

// Value of a 3-form on a triple of basis vectors (any order, with sign).
template <class S>
S form_value3(const KForm<S>& phi, int i, int j, int k) {
  if (i == j || j == k || i == k) return S(0);
  int sign = 1;
  if (i > j) { std::swap(i, j); sign = -sign; }
  if (j > k) { std::swap(j, k); sign = -sign; }
  if (i > j) { std::swap(i, j); sign = -sign; }
  return S(sign) * phi.coeff(blade_of({i, j, k}));
}

// The quadratic endomorphism of a 3-form: column j is -iota_{e_j} phi ^ phi,
// read through the canonical identification of 5-forms with vectors and
// normalized by the volume omega^3/3!. Homogeneous of degree 2 in phi.
template <class S>
Endo6<S> K_def(const SymplecticStructure<S>& ss, const KForm<S>& phi) {
  if (phi.degree() != 3) throw std::invalid_argument("K_def needs a 3-form");
  Endo6<S> K{};
  for (int j = 1; j <= kDim; ++j) {
    auto col = five_form_to_vector(wedge(interior(j, phi), phi));
    for (int i = 0; i < 6; ++i) K[i][j - 1] = S(-1) * col[i] / ss.vol_coeff;
  }
  return K;
}

// The cubic 3-form companion: F(v1,v2,v3) = -2 phi(K v1, v2, v3), evaluated on
// increasing basis triples.
template <class S>
KForm<S> F_def(const SymplecticStructure<S>& ss, const KForm<S>& phi) {
  Endo6<S> K = K_def(ss, phi);
  KForm<S> F(3);
  for (Blade bl : blades_of_degree(3)) {
    int idx[3], n = 0;
    for (int i = 1; i <= kDim; ++i)
      if (bl & blade_bit(i)) idx[n++] = i;
    S val(0);
    for (int i = 1; i <= kDim; ++i) {
      if (is_zero(K[i - 1][idx[0] - 1])) continue;
      val += K[i - 1][idx[0] - 1] * form_value3(phi, i, idx[1], idx[2]);
    }
    F.add(bl, S(-2) * val);
  }
  return F;
}

// The quartic invariant: Q = -(phi ^ F(phi)) / (omega^3/3!).
template <class S>
S Q_def(const SymplecticStructure<S>& ss, const KForm<S>& phi) {
  return S(-1) * wedge(phi, F_def(ss, phi)).coeff(kFullBlade) / ss.vol_coeff;
}

// Max-abs residuals of the three structural identities tying K, F, Q together:
//   K^2 = (Q/4) id,    K(F(phi)) = -Q K(phi),    F(F(phi)) = -Q^2 phi.
// All three vanish identically; in rational arithmetic the residuals are
// exactly zero.
template <class S>
std::array<S, 3> kfq_identity_residuals(const SymplecticStructure<S>& ss, const KForm<S>& phi) {
  Endo6<S> K = K_def(ss, phi);
  KForm<S> F = F_def(ss, phi);
  S Q = Q_def(ss, phi);
  S quarter = Q / S(4);

  Endo6<S> K2 = endo_mul(K, K);
  for (int i = 0; i < 6; ++i) K2[i][i] -= quarter;

  Endo6<S> KF = K_def(ss, F);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) KF[i][j] += Q * K[i][j];

  KForm<S> FF = F_def(ss, F) + (Q * Q) * phi;

  return {endo_linf(K2), endo_linf(KF), FF.linf_norm()};
}

// Derived almost-complex data, available when Q < 0:
//   norm_sq = sqrt(-Q),  J = 2K/norm_sq (J^2 = -id),  phi_hat = F/norm_sq.
struct ComplexData {
  Endo6<double> K{};
  KForm<double> F{3};
  double Q = 0;
  bool has_complex = false;
  Endo6<double> J{};
  double norm_sq = 0;
  KForm<double> phi_hat{3};
};

inline ComplexData complex_data(const SymplecticStructure<double>& ss, const KForm<double>& phi) {
  ComplexData out;
  out.K = K_def(ss, phi);
  out.F = F_def(ss, phi);
  out.Q = Q_def(ss, phi);
  if (out.Q < 0) {
    out.has_complex = true;
    out.norm_sq = std::sqrt(-out.Q);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) out.J[i][j] = 2.0 * out.K[i][j] / out.norm_sq;
    out.phi_hat = (1.0 / out.norm_sq) * out.F;
  }
  return out;
}

}  // namespace iia
