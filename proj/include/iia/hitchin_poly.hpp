#pragma once

#include <string>
#include <vector>

#include "iia/catalog.hpp"
#include "iia/coeff20.hpp"
#include "iia/hitchin.hpp"

// Expanded polynomial formulas for K, F, Q in the 20 canonical coefficients.
// They are only valid in a basis where omega takes the standard form
// e12+e34+e56. The contraction-based operators in hitchin.hpp are the
// reference implementation; these tables were recorded by hand, so
// compare_poly_vs_def itemizes any disagreement entry by entry (an exact
// mismatch means a typo in the tables, not a rounding problem). The test
// suite gates the tables on exact agreement over large random batches.

namespace iia {

template <class S>
void require_standard_omega(const SymplecticStructure<S>& ss) {
  if (!(ss.omega == standard_omega<S>()))
    throw std::invalid_argument(
        "coefficient tables require the standard symplectic form e12+e34+e56; "
        "use the contraction-based operators for other bases");
}

// Quadratic endomorphism, column by column.
template <class S>
Endo6<S> K_poly(const Coeff20<S>& c) {
  const S &A = c[cA], &B = c[cB], &C = c[cC], &D = c[cD], &E = c[cE], &F = c[cF], &G = c[cG], &H = c[cH];
  const S &I = c[cI], &J = c[cJ], &K = c[cK], &L = c[cL], &M = c[cM], &N = c[cN];
  const S &O = c[cO], &P = c[cP], &Q = c[cQ], &R = c[cR], &T = c[cT];
  const S &Sc = c[cS];
  Endo6<S> k{};

  k[0][0] = A * H - B * G - C * F + D * E + 2 * I * J - 2 * K * R + 2 * L * Q - 2 * M * T + 2 * N * Sc - 2 * O * P;
  k[1][0] = -2 * (A * D - B * C + I * I - O * O);
  k[2][0] = -2 * (C * (N + T) - D * (M + Sc) - (I - O) * (L + R));
  k[3][0] = 2 * (A * (N + T) - B * (M + Sc) - (I - O) * (K + Q));
  k[4][0] = 2 * (B * (L + R) - D * (K + Q) - (I + O) * (N + T));
  k[5][0] = -2 * (A * (L + R) - C * (K + Q) - (I + O) * (M + Sc));

  k[0][1] = 2 * (E * H - F * G + J * J - P * P);
  k[1][1] = -(A * H - B * G - C * F + D * E + 2 * I * J + 2 * K * R - 2 * L * Q + 2 * M * T - 2 * N * Sc - 2 * O * P);
  k[2][1] = -2 * (G * (N + T) - H * (M + Sc) - (J - P) * (L + R));
  k[3][1] = 2 * (E * (N + T) - F * (M + Sc) - (J - P) * (K + Q));
  k[4][1] = 2 * (F * (L + R) - H * (K + Q) - (J + P) * (N + T));
  k[5][1] = -2 * (E * (L + R) - G * (K + Q) - (J + P) * (M + Sc));

  k[0][2] = -2 * (E * (N - T) - F * (M - Sc) - (J + P) * (K - Q));
  k[1][2] = 2 * (A * (N - T) - B * (M - Sc) - (I + O) * (K - Q));
  k[2][2] = A * H - B * G + C * F - D * E - 2 * I * P + 2 * J * O + 2 * K * L + 2 * M * T - 2 * N * Sc - 2 * Q * R;
  k[3][2] = -2 * (A * F - B * E + K * K - Q * Q);
  k[4][2] = -2 * (B * (J + P) - F * (I + O) - (K + Q) * (N - T));
  k[5][2] = 2 * (A * (J + P) - E * (I + O) - (K + Q) * (M - Sc));

  k[0][3] = -2 * (G * (N - T) - H * (M - Sc) - (J + P) * (L - R));
  k[1][3] = 2 * (C * (N - T) - D * (M - Sc) - (I + O) * (L - R));
  k[2][3] = 2 * (C * H - D * G + L * L - R * R);
  k[3][3] = -(A * H - B * G + C * F - D * E + 2 * I * P - 2 * J * O + 2 * K * L - 2 * M * T + 2 * N * Sc - 2 * Q * R);
  k[4][3] = -2 * (D * (J + P) - H * (I + O) - (L + R) * (N - T));
  k[5][3] = 2 * (C * (J + P) - G * (I + O) - (L + R) * (M - Sc));

  k[0][4] = 2 * (E * (L - R) - G * (K - Q) - (J - P) * (M - Sc));
  k[1][4] = -2 * (A * (L - R) - C * (K - Q) - (I - O) * (M - Sc));
  k[2][4] = -2 * (C * (J - P) - G * (I - O) - (L - R) * (M + Sc));
  k[3][4] = 2 * (A * (J - P) - E * (I - O) - (K - Q) * (M + Sc));
  k[4][4] = A * H + B * G - C * F - D * E + 2 * I * P - 2 * J * O + 2 * K * R - 2 * L * Q + 2 * M * N - 2 * Sc * T;
  k[5][4] = -2 * (A * G - C * E + M * M - Sc * Sc);

  k[0][5] = 2 * (F * (L - R) - H * (K - Q) - (J - P) * (N - T));
  k[1][5] = -2 * (B * (L - R) - D * (K - Q) - (I - O) * (N - T));
  k[2][5] = -2 * (D * (J - P) - H * (I - O) - (L - R) * (N + T));
  k[3][5] = 2 * (B * (J - P) - F * (I - O) - (K - Q) * (N + T));
  k[4][5] = 2 * (B * H - D * F + N * N - T * T);
  k[5][5] = -(A * H + B * G - C * F - D * E - 2 * I * P + 2 * J * O - 2 * K * R + 2 * L * Q + 2 * M * N - 2 * Sc * T);

  return k;
}

// The twenty coefficients of -F/2 in the same coordinates.
template <class S>
Coeff20<S> hat_coeffs(const Coeff20<S>& c) {
  const S &A = c[cA], &B = c[cB], &C = c[cC], &D = c[cD], &E = c[cE], &F = c[cF], &G = c[cG], &H = c[cH];
  const S &I = c[cI], &J = c[cJ], &K = c[cK], &L = c[cL], &M = c[cM], &N = c[cN];
  const S &O = c[cO], &P = c[cP], &Q = c[cQ], &R = c[cR], &T = c[cT];
  const S &Sc = c[cS];
  Coeff20<S> h;

  h[cA] = A * (A * H - B * G - C * F - D * E + 2 * I * J + 2 * K * L + 2 * M * N - 2 * O * P - 2 * Q * R - 2 * Sc * T)
        - 2 * (B * (M * M - Sc * Sc) + C * (K * K - Q * Q) + E * (I * I - O * O) - B * C * E)
        - 4 * (I * K * M + O * K * Sc - I * Q * Sc - O * Q * M);

  h[cB] = B * (A * H - B * G + C * F + D * E + 2 * I * J + 2 * K * L - 2 * M * N - 2 * O * P - 2 * Q * R + 2 * Sc * T)
        - 2 * (-A * (N * N - T * T) + D * (K * K - Q * Q) + F * (I * I - O * O) + A * D * F)
        - 4 * (I * K * N + O * K * T - I * Q * T - O * Q * N);

  h[cC] = C * (A * H + B * G - C * F + D * E + 2 * I * J - 2 * K * L + 2 * M * N - 2 * O * P + 2 * Q * R - 2 * Sc * T)
        - 2 * (-A * (L * L - R * R) + D * (M * M - Sc * Sc) + G * (I * I - O * O) + A * D * G)
        - 4 * (I * L * M + O * L * Sc - I * R * Sc - O * R * M);

  h[cD] = D * (-A * H - B * G - C * F + D * E + 2 * I * J - 2 * K * L - 2 * M * N - 2 * O * P + 2 * Q * R + 2 * Sc * T)
        - 2 * (-B * (L * L - R * R) - C * (N * N - T * T) + H * (I * I - O * O) - B * C * H)
        - 4 * (I * L * N + O * L * T - I * R * T - O * R * N);

  h[cE] = E * (A * H + B * G + C * F - D * E - 2 * I * J + 2 * K * L + 2 * M * N + 2 * O * P - 2 * Q * R - 2 * Sc * T)
        - 2 * (-A * (J * J - P * P) + F * (M * M - Sc * Sc) + G * (K * K - Q * Q) + A * F * G)
        - 4 * (J * K * M + P * K * Sc - J * Q * Sc - P * Q * M);

  h[cF] = F * (-A * H - B * G + C * F - D * E - 2 * I * J + 2 * K * L - 2 * M * N + 2 * O * P - 2 * Q * R + 2 * Sc * T)
        - 2 * (-B * (J * J - P * P) + H * (K * K - Q * Q) - E * (N * N - T * T) - B * E * H)
        - 4 * (J * K * N + P * K * T - J * Q * T - P * Q * N);

  h[cG] = G * (-A * H + B * G - C * F - D * E - 2 * I * J - 2 * K * L + 2 * M * N + 2 * O * P + 2 * Q * R - 2 * Sc * T)
        - 2 * (-C * (J * J - P * P) - E * (L * L - R * R) + H * (M * M - Sc * Sc) - C * E * H)
        - 4 * (J * L * M + P * L * Sc - J * R * Sc - P * R * M);

  h[cH] = H * (-A * H + B * G + C * F + D * E - 2 * I * J - 2 * K * L - 2 * M * N + 2 * O * P + 2 * Q * R + 2 * Sc * T)
        - 2 * (-D * (J * J - P * P) - F * (L * L - R * R) - G * (N * N - T * T) + D * F * G)
        - 4 * (J * L * N + P * L * T - J * R * T - P * R * N);

  h[cI] = I * (A * H - B * G - C * F + D * E) - 2 * J * (A * D - B * C)
        + 2 * (A * (L * N - R * T) - B * (L * M - R * Sc) - C * (K * N - Q * T) + D * (K * M - Q * Sc))
        - 2 * O * (I * P - J * O + K * R - L * Q - M * T + N * Sc);

  h[cJ] = J * (-A * H + B * G + C * F - D * E) + 2 * I * (E * H - F * G)
        + 2 * (E * (L * N - R * T) - F * (L * M - R * Sc) - G * (K * N - Q * T) + H * (K * M - Q * Sc))
        - 2 * P * (I * P - J * O + K * R - L * Q - M * T + N * Sc);

  h[cK] = K * (A * H - B * G + C * F - D * E) - 2 * L * (A * F - B * E)
        + 2 * (A * (J * N + P * T) - B * (J * M + P * Sc) - E * (I * N + O * T) + F * (I * M + O * Sc))
        - 2 * Q * (I * P - J * O + K * R - L * Q + M * T - N * Sc);

  h[cL] = L * (-A * H + B * G - C * F + D * E) + 2 * K * (C * H - D * G)
        + 2 * (C * (J * N + P * T) - D * (J * M + P * Sc) - G * (I * N + O * T) + H * (I * M + O * Sc))
        - 2 * R * (I * P - J * O + K * R - L * Q + M * T - N * Sc);

  h[cM] = M * (A * H + B * G - C * F - D * E) - 2 * N * (A * G - C * E)
        + 2 * (A * (J * L - P * R) - C * (J * K - P * Q) - E * (I * L - O * R) + G * (I * K - O * Q))
        + 2 * Sc * (I * P - J * O - K * R + L * Q - M * T + N * Sc);

  h[cN] = N * (-A * H - B * G + C * F + D * E) + 2 * M * (B * H - D * F)
        + 2 * (B * (J * L - P * R) - D * (J * K - P * Q) - F * (I * L - O * R) + H * (I * K - O * Q))
        + 2 * T * (I * P - J * O - K * R + L * Q - M * T + N * Sc);

  h[cO] = O * (A * H - B * G - C * F + D * E) - 2 * P * (A * D - B * C)
        - 2 * (A * (L * T - R * N) - B * (L * Sc - R * M) - C * (K * T - Q * N) + D * (K * Sc - Q * M))
        - 2 * I * (I * P - J * O + K * R - L * Q - M * T + N * Sc);

  h[cP] = P * (-A * H + B * G + C * F - D * E) + 2 * O * (E * H - F * G)
        - 2 * (E * (L * T - R * N) - F * (L * Sc - R * M) - G * (K * T - Q * N) + H * (K * Sc - Q * M))
        - 2 * J * (I * P - J * O + K * R - L * Q - M * T + N * Sc);

  h[cQ] = Q * (A * H - B * G + C * F - D * E) - 2 * R * (A * F - B * E)
        + 2 * (A * (J * T + P * N) - B * (J * Sc + P * M) - E * (I * T + O * N) + F * (I * Sc + O * M))
        - 2 * K * (I * P - J * O + K * R - L * Q + M * T - N * Sc);

  h[cR] = R * (-A * H + B * G - C * F + D * E) + 2 * Q * (C * H - D * G)
        + 2 * (C * (J * T + P * N) - D * (J * Sc + P * M) - G * (I * T + O * N) + H * (I * Sc + O * M))
        - 2 * L * (I * P - J * O + K * R - L * Q + M * T - N * Sc);

  h[cS] = Sc * (A * H + B * G - C * F - D * E) - 2 * T * (A * G - C * E)
        + 2 * (A * (J * R - P * L) - C * (J * Q - P * K) - E * (I * R - O * L) + G * (I * Q - O * K))
        + 2 * M * (I * P - J * O - K * R + L * Q - M * T + N * Sc);

  h[cT] = T * (-A * H - B * G + C * F + D * E) + 2 * Sc * (B * H - D * F)
        + 2 * (B * (J * R - P * L) - D * (J * Q - P * K) - F * (I * R - O * L) + H * (I * Q - O * K))
        + 2 * N * (I * P - J * O - K * R + L * Q - M * T + N * Sc);

  return h;
}

template <class S>
Coeff20<S> F_poly(const Coeff20<S>& c) {
  return S(-2) * hat_coeffs(c);
}

// Quartic invariant over 4.
template <class S>
S Q_quarter_poly(const Coeff20<S>& c) {
  const S &A = c[cA], &B = c[cB], &C = c[cC], &D = c[cD], &E = c[cE], &F = c[cF], &G = c[cG], &H = c[cH];
  const S &I = c[cI], &J = c[cJ], &K = c[cK], &L = c[cL], &M = c[cM], &N = c[cN];
  const S &O = c[cO], &P = c[cP], &Q = c[cQ], &R = c[cR], &T = c[cT];
  const S &Sc = c[cS];

  S ah = A * H, bg = B * G, cf = C * F, de = D * E;
  S q = 2 * (ah * ah + bg * bg + cf * cf + de * de) - (ah + bg + cf + de) * (ah + bg + cf + de)
      + 4 * (A * D * F * G + B * C * E * H);
  q += 4 * (I * I - O * O) * (F * G - E * H) + 4 * (J * J - P * P) * (B * C - A * D)
     + 4 * (I * J - O * P) * (ah - bg - cf + de);
  q += 4 * (K * K - Q * Q) * (D * G - C * H) + 4 * (L * L - R * R) * (B * E - A * F)
     + 4 * (K * L - Q * R) * (ah - bg + cf - de);
  q += 4 * (M * M - Sc * Sc) * (D * F - B * H) + 4 * (N * N - T * T) * (C * E - A * G)
     + 4 * (M * N - Sc * T) * (ah + bg - cf - de);
  q += 8 * A * (J * L * N - J * R * T + P * L * T - P * R * N) - 8 * B * (J * L * M - J * R * Sc + P * L * Sc - P * R * M);
  q += -8 * C * (J * K * N - J * Q * T + P * K * T - P * Q * N) + 8 * D * (J * K * M - J * Q * Sc + P * K * Sc - P * Q * M);
  q += -8 * E * (I * L * N - I * R * T + O * L * T - O * R * N) + 8 * F * (I * L * M - I * R * Sc + O * L * Sc - O * R * M);
  q += 8 * G * (I * K * N - I * Q * T + O * K * T - O * Q * N) - 8 * H * (I * K * M - I * Q * Sc + O * K * Sc - O * Q * M);
  S ip = I * P - J * O, lq = L * Q - K * R, mt = M * T - N * Sc;
  q += 8 * (ip * ip + lq * lq + mt * mt) - 4 * (ip + lq + mt) * (ip + lq + mt);
  return q;
}

// Partial derivatives of Q, expressed through the hatted coefficients. The
// scale factors differ between the first eight directions (weight 8) and the
// paired directions (weight 16) because the latter each occupy two blades.
// Consequence of the variational identity dQ = -4 (dphi ^ F)/(omega^3/3!).
template <class S>
Coeff20<S> Q_gradient(const Coeff20<S>& c) {
  Coeff20<S> h = hat_coeffs(c);
  Coeff20<S> g;
  g[cA] = -8 * h[cH];
  g[cH] = 8 * h[cA];
  g[cB] = 8 * h[cG];
  g[cG] = -8 * h[cB];
  g[cC] = 8 * h[cF];
  g[cF] = -8 * h[cC];
  g[cD] = -8 * h[cE];
  g[cE] = 8 * h[cD];
  g[cI] = -16 * h[cJ];
  g[cJ] = 16 * h[cI];
  g[cK] = -16 * h[cL];
  g[cL] = 16 * h[cK];
  g[cM] = -16 * h[cN];
  g[cN] = 16 * h[cM];
  g[cO] = 16 * h[cP];
  g[cP] = -16 * h[cO];
  g[cQ] = 16 * h[cR];
  g[cR] = -16 * h[cQ];
  g[cS] = 16 * h[cT];
  g[cT] = -16 * h[cS];
  return g;
}

// Antisymmetric pairing of a coefficient vector against a hatted vector;
// with h = hat_coeffs(c) it evaluates to Q(c)/2. (The displayed source for
// this pairing carries an obvious sign slip in the M/N pair; this is the
// corrected, consistently antisymmetric version, pinned against Q_def by
// tests.)
template <class S>
S q_half_pairing(const Coeff20<S>& c, const Coeff20<S>& h) {
  return -c[cA] * h[cH] + c[cB] * h[cG] + c[cC] * h[cF] - c[cD] * h[cE]
       + c[cE] * h[cD] - c[cF] * h[cC] - c[cG] * h[cB] + c[cH] * h[cA]
       - 2 * c[cI] * h[cJ] + 2 * c[cJ] * h[cI]
       - 2 * c[cK] * h[cL] + 2 * c[cL] * h[cK]
       - 2 * c[cM] * h[cN] + 2 * c[cN] * h[cM]
       + 2 * c[cO] * h[cP] - 2 * c[cP] * h[cO]
       + 2 * c[cQ] * h[cR] - 2 * c[cR] * h[cQ]
       + 2 * c[cS] * h[cT] - 2 * c[cT] * h[cS];
}

struct PolyVsDefReport {
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Entry-by-entry comparison of the recorded tables against the
// contraction-based operators. Any line here points at a typo in the tables.
template <class S>
PolyVsDefReport compare_poly_vs_def(const SymplecticStructure<S>& ss, const Coeff20<S>& c) {
  require_standard_omega(ss);
  PolyVsDefReport rep;
  KForm<S> phi = to_form(c);

  Endo6<S> kt = K_poly(c);
  Endo6<S> kd = K_def(ss, phi);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (!is_zero(kt[i][j] - kd[i][j]))
        rep.mismatches.push_back("K[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                                 "]: table=" + scalar_str(kt[i][j]) + " contraction=" + scalar_str(kd[i][j]));

  Coeff20<S> ft = F_poly(c);
  Coeff20<S> fd = coeff20_from_form(F_def(ss, phi));
  for (int i = 0; i < 20; ++i)
    if (!is_zero(ft[i] - fd[i]))
      rep.mismatches.push_back(std::string("F coefficient ") + coeff20_letter(i) + ": table=" + scalar_str(ft[i]) +
                               " contraction=" + scalar_str(fd[i]));

  S qt = S(4) * Q_quarter_poly(c);
  S qd = Q_def(ss, phi);
  if (!is_zero(qt - qd))
    rep.mismatches.push_back("Q: table=" + scalar_str(qt) + " contraction=" + scalar_str(qd));

  return rep;
}

}  // namespace iia
