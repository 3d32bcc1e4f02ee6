#pragma once

// Time evolution of a 3-form under the degenerate parabolic system
//
//     d/dt phi = d Lambda_omega d F(phi),
//
// on a fixed symplectic Lie algebra. The right-hand side only ever produces
// primitive directions, so the non-primitive part of the state is frozen and
// carried through integration bit for bit.
//
// Besides the generic adaptive integrator this header carries the pieces that
// are special to the two bundled non-abelian examples:
//
//  * the nilpotent algebra (0,0,0,e15,0,e13), where the flow collapses to a
//    scalar linear ODE for the e135-coefficient and has a closed-form
//    solution (nilpotent_exact);
//  * the solvable family (-l e15, l e25, -l e36, l e46, 0, 0), where the flow
//    moves only four coefficient combinations; solvable_reduce extracts that
//    reduced state, positivity_check tests the definiteness condition that
//    forces finite-time blow-up, and blowup_analysis integrates the reduced
//    system to the singularity, estimating the blow-up time and the
//    normalized limit direction.
//
// limit_geometry inspects a limiting 3-form: the kernel distribution of the
// contraction map, whether it is Lagrangian, and whether it is an ideal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iia/coeff20.hpp"
#include "iia/hitchin.hpp"
#include "iia/hitchin_poly.hpp"
#include "iia/kform.hpp"
#include "iia/lie_algebra.hpp"
#include "iia/linalg.hpp"
#include "iia/rational.hpp"
#include "iia/symplectic.hpp"

namespace iia {

// Exact right-hand side, any scalar type, any symplectic basis.
template <class S>
KForm<S> flow_rhs(const LieAlgebraSpec<S>& spec, const SymplecticStructure<S>& ss, const KForm<S>& phi) {
  return d_lambda_d(spec, ss, F_def(ss, phi));
}

struct FlowConfig {
  double dt0 = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-12;  // also the stationarity threshold on |rhs|_inf
  double t_max = 10.0;
  double blowup_threshold = 1e12;
  int sample_stride = 1;  // record every n-th accepted step

  void validate() const {
    if (!(dt0 > 0) || !(rtol > 0) || !(atol > 0) || !(t_max > 0) || !(blowup_threshold > 0) || sample_stride <= 0)
      throw std::invalid_argument("FlowConfig fields must all be positive");
  }
};

inline constexpr double kDtMin = 1e-14;        // step underflow cutoff
inline constexpr int kConvergenceRun = 5;      // accepted steps with tiny rhs
inline constexpr double kGrowthFactor = 1e3;   // underflow + this much growth = blow-up

enum class FlowOutcomeKind { converged_to, linear_divergent, blow_up, horizon_reached };

inline const char* outcome_name(FlowOutcomeKind k) {
  switch (k) {
    case FlowOutcomeKind::converged_to: return "converged_to";
    case FlowOutcomeKind::linear_divergent: return "linear_divergent";
    case FlowOutcomeKind::blow_up: return "blow_up";
    case FlowOutcomeKind::horizon_reached: return "horizon_reached";
  }
  return "?";
}

struct FlowOutcome {
  FlowOutcomeKind kind = FlowOutcomeKind::horizon_reached;
  KForm<double> phi_star;          // converged_to: the stationary endpoint
  KForm<double> direction;         // linear_divergent: drift velocity scaled so the largest entry is +1
  double T_est = std::numeric_limits<double>::quiet_NaN();  // blow_up
  KForm<double> normalized_limit;  // blow_up: final state scaled by its largest entry
  bool stiffness_suspected = false;  // step underflow without coefficient growth
};

struct FlowSample {
  double t = 0;
  Coeff20<double> coeffs;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;  // strictly increasing t, first at t=0
  FlowOutcome outcome;
};

namespace flow_detail {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
double linf(const Vec<N>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Dormand-Prince 5(4). k1 = f(y) comes in, k7 = f(y5) goes out (FSAL).
template <std::size_t N, class RHS>
void dp_step(const RHS& f, const Vec<N>& y, const Vec<N>& k1, double dt, Vec<N>& y5, Vec<N>& err, Vec<N>& k7) {
  Vec<N> k2, k3, k4, k5, k6, yt;
  auto stage = [&](const std::initializer_list<std::pair<const Vec<N>*, double>>& terms) {
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0;
      for (const auto& [k, a] : terms) s += a * (*k)[i];
      yt[i] = y[i] + dt * s;
    }
  };
  stage({{&k1, 1.0 / 5}});
  k2 = f(yt);
  stage({{&k1, 3.0 / 40}, {&k2, 9.0 / 40}});
  k3 = f(yt);
  stage({{&k1, 44.0 / 45}, {&k2, -56.0 / 15}, {&k3, 32.0 / 9}});
  k4 = f(yt);
  stage({{&k1, 19372.0 / 6561}, {&k2, -25360.0 / 2187}, {&k3, 64448.0 / 6561}, {&k4, -212.0 / 729}});
  k5 = f(yt);
  stage({{&k1, 9017.0 / 3168}, {&k2, -355.0 / 33}, {&k3, 46732.0 / 5247}, {&k4, 49.0 / 176}, {&k5, -5103.0 / 18656}});
  k6 = f(yt);
  stage({{&k1, 35.0 / 384}, {&k3, 500.0 / 1113}, {&k4, 125.0 / 192}, {&k5, -2187.0 / 6784}, {&k6, 11.0 / 84}});
  y5 = yt;
  k7 = f(y5);
  // embedded 4th-order weights
  for (std::size_t i = 0; i < N; ++i) {
    double y4 = y[i] + dt * (5179.0 / 57600 * k1[i] + 7571.0 / 16695 * k3[i] + 393.0 / 640 * k4[i] -
                             92097.0 / 339200 * k5[i] + 187.0 / 2100 * k6[i] + 1.0 / 40 * k7[i]);
    err[i] = y5[i] - y4;
  }
}

template <std::size_t N>
double error_norm(const Vec<N>& y, const Vec<N>& y5, const Vec<N>& err, double atol, double rtol) {
  double m = 0;
  for (std::size_t i = 0; i < N; ++i) {
    double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    m = std::max(m, std::abs(err[i]) / sc);
  }
  return m;
}

// PI controller, order 5.
inline double accept_factor(double e, double e_prev) {
  if (e <= 1e-300) return 5.0;
  return std::clamp(0.9 * std::pow(e, -0.14) * std::pow(e_prev, 0.08), 0.2, 5.0);
}
inline double reject_factor(double e) { return std::max(0.2, 0.9 * std::pow(e, -0.2)); }

// Estimates the time where 1/max|coeff| reaches zero: Neville extrapolation
// of t as a function of y = 1/max|coeff| through recent accepted points.
struct BlowupEstimator {
  std::vector<std::array<double, 2>> pts;  // (y, t), newest last

  void push(double y, double t) {
    pts.push_back({y, t});
    if (pts.size() > 64) pts.erase(pts.begin(), pts.begin() + 32);
  }

  double estimate() const {
    std::vector<double> xs, ts;
    double last = -1;  // walking backwards in time, y grows; keep spaced points
    for (auto it = pts.rbegin(); it != pts.rend() && xs.size() < 8; ++it) {
      double y = (*it)[0];
      if (last >= 0 && !(y > 1.05 * last)) continue;
      xs.push_back(y);
      ts.push_back((*it)[1]);
      last = y;
    }
    std::size_t n = xs.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    for (std::size_t m = 1; m < n; ++m)
      for (std::size_t i = 0; i + m < n; ++i)
        ts[i] = (xs[i + m] * ts[i] - xs[i] * ts[i + m]) / (xs[i + m] - xs[i]);
    return ts[0];
  }
};

inline Vec<20> to_vec(const Coeff20<double>& c) {
  Vec<20> y;
  for (int i = 0; i < 20; ++i) y[static_cast<std::size_t>(i)] = c[i];
  return y;
}

inline Coeff20<double> to_coeffs(const Vec<20>& y) {
  Coeff20<double> c;
  for (int i = 0; i < 20; ++i) c[i] = y[static_cast<std::size_t>(i)];
  return c;
}

// Scale a coefficient vector by its largest-magnitude entry (signed), so the
// dominant entry becomes +1.
inline KForm<double> scale_by_largest(const Coeff20<double>& c) {
  int arg = 0;
  for (int i = 1; i < 20; ++i)
    if (std::abs(c[i]) > std::abs(c[arg])) arg = i;
  double s = c[arg];
  if (s == 0.0) return KForm<double>(3);
  return to_form((1.0 / s) * c);
}

}  // namespace flow_detail

// Adaptive integration of the full 20-coefficient system. The state is the
// coefficient vector in the standard symplectic basis, so the standard form
// is required; the right-hand side is evaluated through the closed-form
// coefficient polynomials. The six non-primitive entries are never updated.
inline FlowTrajectory integrate(const LieAlgebraSpec<double>& spec, const SymplecticStructure<double>& ss,
                                const Coeff20<double>& c0, const FlowConfig& cfg) {
  using namespace flow_detail;
  cfg.validate();
  require_standard_omega(ss);

  auto rhs = [&](const Vec<20>& yv) -> Vec<20> {
    Coeff20<double> c = to_coeffs(yv);
    KForm<double> f = to_form(F_poly(c));
    Coeff20<double> out = coeff20_from_form(d_lambda_d(spec, ss, f));
    for (int i = cO; i <= cT; ++i) out[i] = 0.0;  // frozen directions
    return to_vec(out);
  };

  FlowTrajectory traj;
  Vec<20> y = to_vec(c0);
  double t = 0, dt = cfg.dt0, e_prev = 1e-4;
  Vec<20> k1 = rhs(y), y5, err, k7;
  const Vec<20> k_start = k1;
  double k_dev = 0;  // how far the rhs has moved from its initial value
  const double initial_max = linf(y);

  BlowupEstimator est;
  est.push(1.0 / std::max(linf(y), 1e-300), 0.0);
  traj.samples.push_back({0.0, c0});
  long accepted = 0;
  int conv_run = 0;
  bool last_sampled = true;

  auto push_sample = [&]() {
    traj.samples.push_back({t, to_coeffs(y)});
    last_sampled = true;
  };
  auto finish_linear_or_horizon = [&]() {
    double rn = linf(k1);
    if (rn > cfg.atol && k_dev <= 1e-8 * (1.0 + linf(k_start))) {
      traj.outcome.kind = FlowOutcomeKind::linear_divergent;
      traj.outcome.direction = scale_by_largest(to_coeffs(k1));
    } else {
      traj.outcome.kind = FlowOutcomeKind::horizon_reached;
    }
  };

  while (true) {
    bool final_step = false;
    if (t + dt >= cfg.t_max) {
      dt = cfg.t_max - t;
      final_step = true;
    }
    if (dt < kDtMin) {
      if (linf(y) > kGrowthFactor * std::max(1.0, initial_max)) {
        traj.outcome.kind = FlowOutcomeKind::blow_up;
        traj.outcome.T_est = est.estimate();
        traj.outcome.normalized_limit = scale_by_largest(to_coeffs(y));
      } else {
        traj.outcome.kind = FlowOutcomeKind::horizon_reached;
        traj.outcome.stiffness_suspected = true;
      }
      break;
    }
    dp_step(rhs, y, k1, dt, y5, err, k7);
    double e = error_norm(y, y5, err, cfg.atol, cfg.rtol);
    if (e <= 1.0) {
      t = final_step ? cfg.t_max : t + dt;
      y = y5;
      k1 = k7;
      ++accepted;
      double dev = 0;
      for (std::size_t i = 0; i < 20; ++i) dev = std::max(dev, std::abs(k1[i] - k_start[i]));
      k_dev = std::max(k_dev, dev);
      est.push(1.0 / std::max(linf(y), 1e-300), t);
      last_sampled = false;
      if (accepted % cfg.sample_stride == 0) push_sample();
      conv_run = linf(k1) < cfg.atol ? conv_run + 1 : 0;
      if (linf(y) > cfg.blowup_threshold) {
        traj.outcome.kind = FlowOutcomeKind::blow_up;
        traj.outcome.T_est = est.estimate();
        traj.outcome.normalized_limit = scale_by_largest(to_coeffs(y));
        break;
      }
      if (conv_run >= kConvergenceRun) {
        traj.outcome.kind = FlowOutcomeKind::converged_to;
        traj.outcome.phi_star = to_form(to_coeffs(y));
        break;
      }
      if (final_step) {
        finish_linear_or_horizon();
        break;
      }
      double e_old = e_prev;
      e_prev = std::max(e, 1e-4);
      dt *= accept_factor(e, e_old);
    } else {
      dt *= reject_factor(e);
    }
  }
  if (!last_sampled) push_sample();
  return traj;
}

// ---------------------------------------------------------------------------
// Nilpotent example: closed-form drift solution.
//
// On (0,0,0,e15,0,e13) the right-hand side lies in the e135-direction and the
// e135-coefficient A satisfies  dA/dt = -4 A H^2 + R  with every other
// coefficient constant. R is evaluated from the verified coefficient
// polynomials, not transcribed separately.

struct NilpotentSolution {
  double H = 0;
  double R = 0;  // constant part of the drift: dA/dt = -4 A H^2 + R
  double a0 = 0;
  FlowOutcomeKind asymptote = FlowOutcomeKind::converged_to;
  double a_limit = 0;  // valid when asymptote == converged_to

  double a(double t) const {
    if (H == 0.0) return a0 + R * t;
    double w = 4.0 * H * H;
    return R / w + (a0 - R / w) * std::exp(-w * t);
  }
};

namespace flow_detail {

inline bool is_nilpotent_example(const LieAlgebraSpec<double>& spec) {
  const auto& im = spec.d_images();
  auto mono = [](int i, int j) { return KForm<double>::monomial(blade_of({i, j}), 1.0); };
  return im[0].empty() && im[1].empty() && im[2].empty() && im[3] == mono(1, 5) && im[4].empty() &&
         im[5] == mono(1, 3);
}

}  // namespace flow_detail

inline NilpotentSolution nilpotent_exact(const LieAlgebraSpec<double>& spec, const Coeff20<double>& c0) {
  if (!flow_detail::is_nilpotent_example(spec))
    throw std::invalid_argument("closed-form drift solution is only available for the nilpotent algebra (0,0,0,e15,0,e13)");
  NilpotentSolution sol;
  sol.H = c0[cH];
  sol.a0 = c0[cA];
  // dA/dt equals four times the e246-entry of the dual coefficient vector;
  // peel off its A-linear part to expose the constant drift.
  sol.R = 4.0 * hat_coeffs(c0)[cH] + 4.0 * sol.a0 * sol.H * sol.H;
  if (sol.H != 0.0) {
    sol.asymptote = FlowOutcomeKind::converged_to;
    sol.a_limit = sol.R / (4.0 * sol.H * sol.H);
  } else if (sol.R == 0.0) {
    sol.asymptote = FlowOutcomeKind::converged_to;
    sol.a_limit = sol.a0;
  } else {
    sol.asymptote = FlowOutcomeKind::linear_divergent;
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Solvable example: reduction to four moving coefficients.
//
// For the family (-l e15, l e25, -l e36, l e46, 0, 0) the right-hand side
// lies in the span of
//
//   e135+e136,  e145-e146,  e235-e236,  e245+e246,
//
// so in the adapted letters
//
//   alpha = (A+B)/2, beta = (C-D)/2, gamma = (E-F)/2, delta = -(G+H)/2,
//
// only alpha, beta, gamma, delta evolve; the complementary combinations
// (alpha_p = (A-B)/2 etc.) and the twelve remaining letters are constants of
// the motion. The evolution is polynomial in the state with constant
// offsets R1..R4; the offsets are frozen once from the full right-hand side
// at the initial data, and for d-closed primitive data they vanish.

struct SolvableReduction {
  double lambda2 = 1.0;  // square of the structure-constant scale
  // moving part
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
  // frozen complementary combinations
  double alpha_p = 0, beta_p = 0, gamma_p = 0, delta_p = 0;
  // frozen letters
  double I = 0, J = 0, K = 0, L = 0, M = 0, N = 0;
  double O = 0, P = 0, Q = 0, R = 0, S = 0, T = 0;
  // frozen offsets of the four evolution equations (units of 4*lambda2)
  double R1 = 0, R2 = 0, R3 = 0, R4 = 0;
  bool closed_primitive = false;

  Coeff20<double> coefficients() const {
    Coeff20<double> c;
    c[cA] = alpha + alpha_p;
    c[cB] = alpha - alpha_p;
    c[cC] = beta_p + beta;
    c[cD] = beta_p - beta;
    c[cE] = gamma_p + gamma;
    c[cF] = gamma_p - gamma;
    c[cG] = delta_p - delta;
    c[cH] = -delta - delta_p;
    c[cI] = I; c[cJ] = J; c[cK] = K; c[cL] = L; c[cM] = M; c[cN] = N;
    c[cO] = O; c[cP] = P; c[cQ] = Q; c[cR] = R; c[cS] = S; c[cT] = T;
    return c;
  }
};

// Structure-constant scale of a solvable-family presentation, or throws.
inline double solvable_scale(const LieAlgebraSpec<double>& spec) {
  const auto& im = spec.d_images();
  double l = -im[0].coeff(blade_of({1, 5}));
  auto mono = [](int i, int j, double c) { return KForm<double>::monomial(blade_of({i, j}), c); };
  bool ok = l > 0 && im[0] == mono(1, 5, -l) && im[1] == mono(2, 5, l) && im[2] == mono(3, 6, -l) &&
            im[3] == mono(4, 6, l) && im[4].empty() && im[5].empty();
  if (!ok)
    throw std::invalid_argument("expected a solvable-family presentation (-l e15, l e25, -l e36, l e46, 0, 0) with l > 0");
  return l;
}

namespace flow_detail {

// The four moving combinations of a 20-coefficient vector.
inline std::array<double, 4> moving_part(const Coeff20<double>& c) {
  return {(c[cA] + c[cB]) / 2, (c[cC] - c[cD]) / 2, (c[cE] - c[cF]) / 2, -(c[cG] + c[cH]) / 2};
}

// The polynomial part of the four evolution equations, in units of
// 4*lambda2 and without the constant offsets.
inline std::array<double, 4> solvable_rows(const SolvableReduction& s) {
  double a = s.alpha, b = s.beta, g = s.gamma, d = s.delta;
  double mm = s.M - s.N, mp = s.M + s.N, sm = s.S - s.T, sp = s.S + s.T;
  double ii = s.I * s.I - s.O * s.O;
  double kk = s.K * s.K - s.Q * s.Q;
  double jj = s.J * s.J - s.P * s.P;
  double ll = s.L * s.L - s.R * s.R;
  double c1 = a * s.delta_p + b * s.gamma_p + g * s.beta_p + d * s.alpha_p;
  double c2 = -a * s.delta_p - b * s.gamma_p + g * s.beta_p + d * s.alpha_p;
  double c3 = -a * s.delta_p + b * s.gamma_p - g * s.beta_p + d * s.alpha_p;
  double c4 = a * s.delta_p - b * s.gamma_p - g * s.beta_p + d * s.alpha_p;
  return {
      4 * a * b * g - a * (mm * mm - sm * sm) - 2 * b * kk - 2 * g * ii - 2 * s.alpha_p * c1,
      4 * a * b * d - b * (mp * mp - sp * sp) - 2 * a * ll - 2 * d * ii - 2 * s.beta_p * c2,
      4 * a * g * d - g * (mp * mp - sp * sp) - 2 * a * jj - 2 * d * kk - 2 * s.gamma_p * c3,
      4 * b * g * d - d * (mm * mm - sm * sm) - 2 * b * jj - 2 * g * ll - 2 * s.delta_p * c4,
  };
}

}  // namespace flow_detail

inline SolvableReduction solvable_reduce(const LieAlgebraSpec<double>& spec, const SymplecticStructure<double>& ss,
                                         const Coeff20<double>& c0) {
  require_standard_omega(ss);
  double l = solvable_scale(spec);
  SolvableReduction s;
  s.lambda2 = l * l;
  auto mv = flow_detail::moving_part(c0);
  s.alpha = mv[0]; s.beta = mv[1]; s.gamma = mv[2]; s.delta = mv[3];
  s.alpha_p = (c0[cA] - c0[cB]) / 2;
  s.beta_p = (c0[cC] + c0[cD]) / 2;
  s.gamma_p = (c0[cE] + c0[cF]) / 2;
  s.delta_p = (c0[cG] - c0[cH]) / 2;
  s.I = c0[cI]; s.J = c0[cJ]; s.K = c0[cK]; s.L = c0[cL]; s.M = c0[cM]; s.N = c0[cN];
  s.O = c0[cO]; s.P = c0[cP]; s.Q = c0[cQ]; s.R = c0[cR]; s.S = c0[cS]; s.T = c0[cT];
  s.closed_primitive = s.alpha_p == 0 && s.beta_p == 0 && s.gamma_p == 0 && s.delta_p == 0 && s.I == 0 &&
                       s.J == 0 && s.K == 0 && s.L == 0 && s.O == 0 && s.P == 0 && s.Q == 0 && s.R == 0 &&
                       s.S == 0 && s.T == 0;
  // Freeze the constant offsets from the full right-hand side.
  Coeff20<double> rhs = coeff20_from_form(flow_rhs(spec, ss, to_form(c0)));
  auto full = flow_detail::moving_part(rhs);
  auto rows = flow_detail::solvable_rows(s);
  s.R1 = full[0] / (4 * s.lambda2) - rows[0];
  s.R2 = full[1] / (4 * s.lambda2) - rows[1];
  s.R3 = full[2] / (4 * s.lambda2) - rows[2];
  s.R4 = full[3] / (4 * s.lambda2) - rows[3];
  return s;
}

// Time derivative of (alpha, beta, gamma, delta). With closed_primitive_form
// the four equations collapse to
//   alpha' = 4 l^2 alpha (4 beta gamma - (M-N)^2),   delta' likewise,
//   beta'  = 4 l^2 beta  (4 alpha delta - (M+N)^2),  gamma' likewise.
inline std::array<double, 4> solvable_reduced_rhs(const SolvableReduction& s, bool closed_primitive_form) {
  double f = 4 * s.lambda2;
  if (closed_primitive_form) {
    double mm2 = (s.M - s.N) * (s.M - s.N), mp2 = (s.M + s.N) * (s.M + s.N);
    return {f * s.alpha * (4 * s.beta * s.gamma - mm2), f * s.beta * (4 * s.alpha * s.delta - mp2),
            f * s.gamma * (4 * s.alpha * s.delta - mp2), f * s.delta * (4 * s.beta * s.gamma - mm2)};
  }
  auto rows = flow_detail::solvable_rows(s);
  return {f * (rows[0] + s.R1), f * (rows[1] + s.R2), f * (rows[2] + s.R3), f * (rows[3] + s.R4)};
}

// ---------------------------------------------------------------------------
// Positivity criterion for finite-time blow-up of the closed primitive
// reduced system. Two independent routes are evaluated and must agree:
//
//  (a) positive definiteness of a 6x6 coefficient matrix, via Sylvester's
//      leading principal minors;
//  (b) the explicit inequalities: alpha..delta of one sign,
//      alpha delta + beta gamma > M^2 and > N^2, and Q < 0 at the state.

struct PositivityReport {
  bool matrix_positive = false;
  bool inequalities_positive = false;
  std::array<double, 6> minors{};
  double q_sixteenth = 0;  // Q/16 at the state; negative is required
  bool agree() const { return matrix_positive == inequalities_positive; }
};

namespace flow_detail {

inline double leading_minor(std::array<std::array<double, 6>, 6> m, int k) {
  double det = 1;
  for (int c = 0; c < k; ++c) {
    int p = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < k; ++r) {
      double f = m[r][c] / m[c][c];
      for (int j = c; j < k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace flow_detail

inline PositivityReport positivity_report(const SolvableReduction& s) {
  double a = s.alpha, b = s.beta, g = s.gamma, d = s.delta, M = s.M, N = s.N;
  PositivityReport rep;
  std::array<std::array<double, 6>, 6> m{{
      {2 * a * b, 0, a * (N - M), b * (M + N), 0, 0},
      {0, 2 * g * d, g * (M + N), d * (M - N), 0, 0},
      {a * (N - M), g * (M + N), 2 * a * g, 0, 0, 0},
      {b * (M + N), d * (M - N), 0, 2 * b * d, 0, 0},
      {0, 0, 0, 0, a * d + b * g - M * M, a * d - b * g - M * N},
      {0, 0, 0, 0, a * d - b * g - M * N, a * d + b * g - N * N},
  }};
  rep.matrix_positive = true;
  for (int k = 1; k <= 6; ++k) {
    rep.minors[static_cast<std::size_t>(k - 1)] = flow_detail::leading_minor(m, k);
    if (!(rep.minors[static_cast<std::size_t>(k - 1)] > 0)) rep.matrix_positive = false;
  }
  bool same_sign = (a > 0 && b > 0 && g > 0 && d > 0) || (a < 0 && b < 0 && g < 0 && d < 0);
  double ad_bg = a * d + b * g;
  rep.q_sixteenth = -4 * a * b * g * d + a * d * (M - N) * (M - N) + b * g * (M + N) * (M + N);
  rep.inequalities_positive = same_sign && ad_bg > M * M && ad_bg > N * N && rep.q_sixteenth < 0;
  return rep;
}

inline bool positivity_check(const SolvableReduction& s) {
  PositivityReport rep = positivity_report(s);
  if (!rep.agree()) {
    std::ostringstream os;
    os << "positivity routes disagree (matrix " << rep.matrix_positive << ", inequalities "
       << rep.inequalities_positive << ") at alpha=" << s.alpha << " beta=" << s.beta << " gamma=" << s.gamma
       << " delta=" << s.delta << " M=" << s.M << " N=" << s.N;
    throw std::logic_error(os.str());
  }
  return rep.matrix_positive;
}

// ---------------------------------------------------------------------------
// Comparison bound on the blow-up time. With u = 4 alpha delta,
// v = 4 beta gamma and S = max((M+N)^2, (M-N)^2), the reduced closed
// primitive system dominates
//
//     u' = mu l^2 u (v - S),   v' = mu l^2 v (u - S),
//
// whose solution through (u0, v0) reaches infinity at
//
//     T' = -log(1 + (S/C0) log(v0/u0)) / (mu l^2 S),   C0 = u0 - v0,
//
// with the obvious limits when S or C0 vanishes. Differentiating the reduced
// system gives mu = 8; mu = 2 reproduces a weaker constant obtained when the
// chain-rule factor is dropped, and is kept selectable for comparison.
inline double comparison_blowup_time(double u0, double v0, double big_s, double lambda2, double mu) {
  if (!(u0 > 0) || !(v0 > 0) || big_s < 0 || !(lambda2 > 0) || !(mu > 0))
    throw std::invalid_argument("comparison_blowup_time needs u0, v0 > 0, S >= 0, lambda2 > 0, mu > 0");
  double rate = mu * lambda2;
  double c0 = u0 - v0;
  double lr = std::log1p(-c0 / u0);  // log(v0/u0), accurate for u0 close to v0
  if (big_s == 0.0) {
    if (c0 == 0.0) return 1.0 / (rate * u0);
    return -lr / (rate * c0);
  }
  double inc = c0 == 0.0 ? -big_s / u0 : (big_s / c0) * lr;
  if (!(inc > -1.0))  // comparison solution does not reach the exponential regime
    return std::numeric_limits<double>::quiet_NaN();
  return -std::log1p(inc) / (rate * big_s);
}

// ---------------------------------------------------------------------------
// Integration of the reduced closed primitive system up to its singularity.

struct BlowupReport {
  bool blew_up = false;
  double T_numeric = std::numeric_limits<double>::quiet_NaN();
  double T_bound = std::numeric_limits<double>::quiet_NaN();      // comparison bound, mu = 8
  double T_bound_alt = std::numeric_limits<double>::quiet_NaN();  // same bound with mu = 2
  std::vector<std::array<double, 5>> state_trace;                 // (t, alpha, beta, gamma, delta)
  std::vector<std::array<double, 2>> uv_trace;                    // (t, u/v)
  std::array<double, 4> final_state{};
  double uv_ratio_final = std::numeric_limits<double>::quiet_NaN();
  double acs_residual = std::numeric_limits<double>::quiet_NaN();  // |ad - bg| / |ad| at the end
  double thin_ratio_final = std::numeric_limits<double>::quiet_NaN();  // (u-v)^2 / u at the end
  KForm<double> normalized_limit;  // phi(t)/alpha(t) at the end
  bool positivity_held = true;
};

inline BlowupReport blowup_analysis(const SolvableReduction& st0, const FlowConfig& cfg) {
  using namespace flow_detail;
  cfg.validate();
  if (!st0.closed_primitive)
    throw std::invalid_argument("blow-up analysis needs d-closed primitive data: only alpha..delta and M, N may be nonzero");
  if (!positivity_check(st0))
    throw std::domain_error("blow-up analysis precondition failed: initial state does not satisfy the positivity criterion");

  SolvableReduction s = st0;
  auto rhs = [&s](const Vec<4>& y) -> Vec<4> {
    SolvableReduction w = s;
    w.alpha = y[0]; w.beta = y[1]; w.gamma = y[2]; w.delta = y[3];
    auto r = solvable_reduced_rhs(w, true);
    return {r[0], r[1], r[2], r[3]};
  };
  auto check_positivity = [&](const Vec<4>& y, double t) {
    double scale = std::max({1.0, std::abs(y[0] * y[3]), std::abs(y[1] * y[2])});
    double tol = 1e-7 * scale;
    bool same_sign = (y[0] > -tol && y[1] > -tol && y[2] > -tol && y[3] > -tol) ||
                     (y[0] < tol && y[1] < tol && y[2] < tol && y[3] < tol);
    double ad_bg = y[0] * y[3] + y[1] * y[2];
    double q16 = -4 * y[0] * y[1] * y[2] * y[3] + y[0] * y[3] * (s.M - s.N) * (s.M - s.N) +
                 y[1] * y[2] * (s.M + s.N) * (s.M + s.N);
    bool ok = same_sign && ad_bg > s.M * s.M - tol && ad_bg > s.N * s.N - tol && q16 < tol;
    if (!ok) {
      std::ostringstream os;
      os << "positivity lost during reduced integration at t=" << t << ": alpha=" << y[0] << " beta=" << y[1]
         << " gamma=" << y[2] << " delta=" << y[3];
      throw std::runtime_error(os.str());
    }
  };

  BlowupReport rep;
  double u0 = 4 * st0.alpha * st0.delta, v0 = 4 * st0.beta * st0.gamma;
  double big_s = std::max((st0.M + st0.N) * (st0.M + st0.N), (st0.M - st0.N) * (st0.M - st0.N));
  rep.T_bound = comparison_blowup_time(u0, v0, big_s, st0.lambda2, 8.0);
  rep.T_bound_alt = comparison_blowup_time(u0, v0, big_s, st0.lambda2, 2.0);

  Vec<4> y = {st0.alpha, st0.beta, st0.gamma, st0.delta};
  double t = 0, dt = cfg.dt0, e_prev = 1e-4;
  Vec<4> k1 = rhs(y), y5, err, k7;
  const double initial_max = linf(y);
  BlowupEstimator est;
  est.push(1.0 / std::max(linf(y), 1e-300), 0.0);
  auto record = [&]() {
    rep.state_trace.push_back({t, y[0], y[1], y[2], y[3]});
    double u = 4 * y[0] * y[3], v = 4 * y[1] * y[2];
    rep.uv_trace.push_back({t, u / v});
  };
  record();
  long accepted = 0;
  bool recorded = true;

  while (true) {
    bool final_step = false;
    if (t + dt >= cfg.t_max) {
      dt = cfg.t_max - t;
      final_step = true;
    }
    if (dt < kDtMin) {
      if (linf(y) > kGrowthFactor * std::max(1.0, initial_max)) {
        rep.blew_up = true;
        rep.T_numeric = est.estimate();
      }
      break;
    }
    dp_step(rhs, y, k1, dt, y5, err, k7);
    double e = error_norm(y, y5, err, cfg.atol, cfg.rtol);
    if (e <= 1.0) {
      t = final_step ? cfg.t_max : t + dt;
      y = y5;
      k1 = k7;
      ++accepted;
      check_positivity(y, t);
      est.push(1.0 / std::max(linf(y), 1e-300), t);
      recorded = false;
      if (accepted % cfg.sample_stride == 0) {
        record();
        recorded = true;
      }
      if (linf(y) > cfg.blowup_threshold) {
        rep.blew_up = true;
        rep.T_numeric = est.estimate();
        break;
      }
      if (final_step) break;
      double e_old = e_prev;
      e_prev = std::max(e, 1e-4);
      dt *= accept_factor(e, e_old);
    } else {
      dt *= reject_factor(e);
    }
  }
  if (!recorded) record();

  rep.final_state = {y[0], y[1], y[2], y[3]};
  double u = 4 * y[0] * y[3], v = 4 * y[1] * y[2];
  rep.uv_ratio_final = u / v;
  rep.acs_residual = std::abs(y[0] * y[3] - y[1] * y[2]) / std::abs(y[0] * y[3]);
  rep.thin_ratio_final = (u - v) * (u - v) / u;
  // phi(t)/alpha(t): the moving directions with unit leading combination.
  {
    KForm<double> f(3);
    auto add = [&f](int i, int j, int k, double c) {
      if (c != 0.0) f += KForm<double>::monomial(blade_of({i, j, k}), c);
    };
    double b = y[1] / y[0], g = y[2] / y[0], d = y[3] / y[0];
    add(1, 3, 5, 1); add(1, 3, 6, 1);
    add(1, 4, 5, b); add(1, 4, 6, -b);
    add(2, 3, 5, g); add(2, 3, 6, -g);
    add(2, 4, 5, -d); add(2, 4, 6, -d);
    rep.normalized_limit = f;
  }
  return rep;
}

// Direct measurement, against the full right-hand side, of the constant mu in
// u' = mu l^2 u (v - (M-N)^2) at a closed primitive state.
inline double measure_uv_factor(const LieAlgebraSpec<double>& spec, const SymplecticStructure<double>& ss,
                                const Coeff20<double>& c0) {
  SolvableReduction s = solvable_reduce(spec, ss, c0);
  if (!s.closed_primitive)
    throw std::invalid_argument("uv factor measurement needs d-closed primitive data");
  Coeff20<double> rhs = coeff20_from_form(flow_rhs(spec, ss, to_form(c0)));
  auto mv = flow_detail::moving_part(rhs);
  double u = 4 * s.alpha * s.delta, v = 4 * s.beta * s.gamma;
  double u_dot = 4 * (mv[0] * s.delta + s.alpha * mv[3]);
  double denom = s.lambda2 * u * (v - (s.M - s.N) * (s.M - s.N));
  if (denom == 0.0) throw std::invalid_argument("uv factor measurement is degenerate at this state");
  return u_dot / denom;
}

// ---------------------------------------------------------------------------
// Geometry of a limiting 3-form.

struct LimitGeometry {
  Mat<Rat> kernel;  // rows: basis of {v : i_v phi = 0} in e1..e6 coordinates
  bool is_lagrangian = false;
  bool is_ideal = false;
  bool acs_applicable = false;  // the form matches the solvable limit shape
  Rat acs_residual = Rat(0);    // |ad - bg| for that shape
  bool acs_harmonic_criterion = false;
};

inline LimitGeometry limit_geometry(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss,
                                    const KForm<Rat>& phi_inf) {
  if (phi_inf.degree() != 3 || phi_inf.empty())
    throw std::invalid_argument("limit geometry needs a nonzero 3-form");
  LimitGeometry out;
  const auto& two_blades = blades_of_degree(2);
  Mat<Rat> m(two_blades.size(), std::vector<Rat>(6, Rat(0)));
  for (int i = 1; i <= 6; ++i) {
    KForm<Rat> contracted = interior(i, phi_inf);
    for (std::size_t r = 0; r < two_blades.size(); ++r)
      m[r][static_cast<std::size_t>(i - 1)] = contracted.coeff(two_blades[r]);
  }
  out.kernel = nullspace(m);
  if (out.kernel.size() == 3) {
    bool isotropic = true;
    auto pairing = [&](const std::vector<Rat>& v, const std::vector<Rat>& w) -> Rat {
      Rat s(0);
      for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
          s += ss.omega.coeff(blade_of({i, j})) * (v[static_cast<std::size_t>(i - 1)] * w[static_cast<std::size_t>(j - 1)] -
                                                   v[static_cast<std::size_t>(j - 1)] * w[static_cast<std::size_t>(i - 1)]);
      return s;
    };
    for (std::size_t a = 0; a < 3 && isotropic; ++a)
      for (std::size_t b = a + 1; b < 3 && isotropic; ++b)
        if (!is_zero(pairing(out.kernel[a], out.kernel[b]))) isotropic = false;
    out.is_lagrangian = isotropic;
  }
  if (!out.kernel.empty()) out.is_ideal = subspace_is_ideal(spec, out.kernel);

  // Solvable limit shape: a(e135+e136) + b(e145-e146) + g(e235-e236) - d(e245+e246).
  Coeff20<Rat> c = coeff20_from_form(phi_inf);
  bool shape = c[cA] == c[cB] && c[cC] == -c[cD] && c[cE] == -c[cF] && c[cG] == c[cH];
  for (int i = cI; i <= cT && shape; ++i)
    if (!is_zero(c[i])) shape = false;
  if (shape) {
    out.acs_applicable = true;
    Rat a = c[cA], b = c[cC], g = c[cE], d = -c[cG];
    out.acs_residual = abs_val(a * d - b * g);
    out.acs_harmonic_criterion = is_zero(out.acs_residual);
  }
  return out;
}

// Nearest small rational, coefficient by coefficient; used to hand numeric
// limit directions to the exact geometry routines.
inline Rat snap_scalar(double x, double tol = 1e-9, long max_den = 1000000) {
  if (std::abs(x) < tol) return Rat(0);
  // continued fraction convergents
  double v = x;
  long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(v)), q1 = 1;
  double frac = v - std::floor(v);
  for (int it = 0; it < 40; ++it) {
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= tol && q1 <= max_den) return Rat(p1) / Rat(q1);
    if (frac == 0.0) break;
    v = 1.0 / frac;
    long a = static_cast<long>(std::floor(v));
    frac = v - std::floor(v);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (q1 > max_den) break;
  }
  throw std::domain_error("coefficient is not close to a small rational");
}

inline KForm<Rat> snap_form(const KForm<double>& f, double tol = 1e-9) {
  KForm<Rat> out(f.degree());
  for (Blade b : blades_of_degree(f.degree())) {
    Rat c = snap_scalar(f.coeff(b), tol);
    if (!is_zero(c)) out += KForm<Rat>::monomial(b, c);
  }
  return out;
}

}  // namespace iia
