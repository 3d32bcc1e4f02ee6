#pragma once

#include <array>
#include <stdexcept>

#include "iia/kform.hpp"

namespace iia {

// Coordinates on 3-forms adapted to the standard symplectic basis
// (omega = e12 + e34 + e56). The first 8 entries are the coefficients of the
// blades picking one index from each of {1,2}, {3,4}, {5,6}. The remaining 12
// pair each left-over direction with the two-form combinations e34-e56,
// e12-e56, e12-e34 (entries 8..13) and e34+e56, e12+e56, e12+e34 (14..19).
// A 3-form is primitive for the standard omega exactly when the last six
// entries vanish.
enum Coeff20Index : int {
  cA, cB, cC, cD, cE, cF, cG, cH,  // e135, e136, e145, e146, e235, e236, e245, e246
  cI, cJ,                          // e1, e2 against e34 - e56
  cK, cL,                          // e3, e4 against e12 - e56
  cM, cN,                          // e5, e6 against e12 - e34
  cO, cP,                          // e1, e2 against e34 + e56
  cQ, cR,                          // e3, e4 against e12 + e56
  cS, cT                           // e5, e6 against e12 + e34
};

inline char coeff20_letter(int i) {
  if (i < 0 || i >= 20) throw std::out_of_range("coefficient index out of range");
  return static_cast<char>('A' + i);
}

template <class S>
struct Coeff20 {
  std::array<S, 20> x{};

  S& operator[](int i) { return x[static_cast<size_t>(i)]; }
  const S& operator[](int i) const { return x[static_cast<size_t>(i)]; }

  bool operator==(const Coeff20& o) const { return x == o.x; }
  bool operator!=(const Coeff20& o) const { return !(*this == o); }
};

template <class S>
Coeff20<S> operator*(const S& s, const Coeff20<S>& c) {
  Coeff20<S> out;
  for (int i = 0; i < 20; ++i) out[i] = s * c[i];
  return out;
}

template <class S>
bool coeff20_is_primitive(const Coeff20<S>& c) {
  for (int i = cO; i <= cT; ++i)
    if (!is_zero(c[i])) return false;
  return true;
}

template <class S>
KForm<S> to_form(const Coeff20<S>& c) {
  KForm<S> f(3);
  f.add(blade_of({1, 3, 5}), c[cA]);
  f.add(blade_of({1, 3, 6}), c[cB]);
  f.add(blade_of({1, 4, 5}), c[cC]);
  f.add(blade_of({1, 4, 6}), c[cD]);
  f.add(blade_of({2, 3, 5}), c[cE]);
  f.add(blade_of({2, 3, 6}), c[cF]);
  f.add(blade_of({2, 4, 5}), c[cG]);
  f.add(blade_of({2, 4, 6}), c[cH]);
  f.add(blade_of({1, 3, 4}), c[cI] + c[cO]);
  f.add(blade_of({1, 5, 6}), c[cO] - c[cI]);
  f.add(blade_of({2, 3, 4}), c[cJ] + c[cP]);
  f.add(blade_of({2, 5, 6}), c[cP] - c[cJ]);
  f.add(blade_of({1, 2, 3}), c[cK] + c[cQ]);
  f.add(blade_of({3, 5, 6}), c[cQ] - c[cK]);
  f.add(blade_of({1, 2, 4}), c[cL] + c[cR]);
  f.add(blade_of({4, 5, 6}), c[cR] - c[cL]);
  f.add(blade_of({1, 2, 5}), c[cM] + c[cS]);
  f.add(blade_of({3, 4, 5}), c[cS] - c[cM]);
  f.add(blade_of({1, 2, 6}), c[cN] + c[cT]);
  f.add(blade_of({3, 4, 6}), c[cT] - c[cN]);
  return f;
}

template <class S>
Coeff20<S> coeff20_from_form(const KForm<S>& f) {
  if (f.degree() != 3) throw std::invalid_argument("coeff20_from_form needs a 3-form");
  auto g = [&](int i, int j, int k) { return f.coeff(blade_of({i, j, k})); };
  S half = S(1) / S(2);
  Coeff20<S> c;
  c[cA] = g(1, 3, 5);
  c[cB] = g(1, 3, 6);
  c[cC] = g(1, 4, 5);
  c[cD] = g(1, 4, 6);
  c[cE] = g(2, 3, 5);
  c[cF] = g(2, 3, 6);
  c[cG] = g(2, 4, 5);
  c[cH] = g(2, 4, 6);
  c[cI] = (g(1, 3, 4) - g(1, 5, 6)) * half;
  c[cO] = (g(1, 3, 4) + g(1, 5, 6)) * half;
  c[cJ] = (g(2, 3, 4) - g(2, 5, 6)) * half;
  c[cP] = (g(2, 3, 4) + g(2, 5, 6)) * half;
  c[cK] = (g(1, 2, 3) - g(3, 5, 6)) * half;
  c[cQ] = (g(1, 2, 3) + g(3, 5, 6)) * half;
  c[cL] = (g(1, 2, 4) - g(4, 5, 6)) * half;
  c[cR] = (g(1, 2, 4) + g(4, 5, 6)) * half;
  c[cM] = (g(1, 2, 5) - g(3, 4, 5)) * half;
  c[cS] = (g(1, 2, 5) + g(3, 4, 5)) * half;
  c[cN] = (g(1, 2, 6) - g(3, 4, 6)) * half;
  c[cT] = (g(1, 2, 6) + g(3, 4, 6)) * half;
  return c;
}

}  // namespace iia
