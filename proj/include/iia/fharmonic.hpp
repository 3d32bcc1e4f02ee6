#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iia/coeff20.hpp"
#include "iia/hitchin.hpp"
#include "iia/hitchin_poly.hpp"
#include "iia/lie_algebra.hpp"
#include "iia/symplectic.hpp"

// F-harmonicity diagnostics: a 3-form phi is F-harmonic for (g, omega) when
// both phi and F(phi) are d-closed. The generic entry point measures the two
// residual norms directly. For the two bundled algebras the condition is also
// available as an explicit polynomial system in the 20 coefficients, which is
// what the locus classification below is built on; tests pin the system route
// against the direct route on large batches, so keep both intact.

namespace iia {

template <class S>
struct FHarmonicResidual {
  S d_phi_norm;    // |d phi|_inf
  S dF_phi_norm;   // |d F(phi)|_inf
  bool is_closed;
  bool is_fharmonic;
};

template <class S>
FHarmonicResidual<S> fharmonic_residual(const LieAlgebraSpec<S>& spec,
                                        const SymplecticStructure<S>& ss,
                                        const KForm<S>& phi,
                                        S tol = S(0)) {
  FHarmonicResidual<S> r{};
  r.d_phi_norm = spec.d(phi).linf_norm();
  r.dF_phi_norm = spec.d(F_def(ss, phi)).linf_norm();
  r.is_closed = !(tol < r.d_phi_norm);
  r.is_fharmonic = r.is_closed && !(tol < r.dF_phi_norm);
  return r;
}

namespace detail {

template <class S>
void append_violation(std::vector<std::string>& out, const char* name, const S& value) {
  if (!is_zero(value)) out.push_back(std::string(name) + " = " + scalar_str(value));
}

[[noreturn]] inline void throw_not_closed(const char* algebra,
                                          const std::vector<std::string>& violations) {
  std::ostringstream os;
  os << "coefficients do not describe a d-closed 3-form on the " << algebra
     << " algebra; violated constraints:";
  for (const auto& v : violations) os << ' ' << v << ';';
  throw std::domain_error(os.str());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Nilpotent example (0,0,0,0,e12,e34): closedness pins H = J = 0, L = R, N = T.

template <class S>
std::vector<std::string> nilpotent_closedness_violations(const Coeff20<S>& c) {
  std::vector<std::string> out;
  detail::append_violation(out, "H", c[cH]);
  detail::append_violation(out, "J", c[cJ]);
  detail::append_violation(out, "L-R", S(c[cL] - c[cR]));
  detail::append_violation(out, "N-T", S(c[cN] - c[cT]));
  return out;
}

// The four polynomials whose simultaneous vanishing makes a closed phi
// F-harmonic. Only the second one involves the exact parameter I; the class
// data enters through D, F, G, P, R, T and the combinations K-Q, M-S.
template <class S>
std::array<S, 4> nilpotent_fharmonic_system(const Coeff20<S>& c) {
  auto violations = nilpotent_closedness_violations(c);
  if (!violations.empty()) detail::throw_not_closed("nilpotent", violations);
  const S& D = c[cD];
  S kq = c[cK] - c[cQ];
  S ms = c[cM] - c[cS];
  S p = c[cP] * c[cP] + c[cF] * c[cG];
  S u = c[cG] * kq - c[cP] * ms;
  S v = c[cP] * kq + c[cF] * ms;
  return {S(D * p), S(c[cI] * p + c[cT] * u + c[cR] * v), S(D * u), S(D * v)};
}

// Classification of a de Rham class by its F-harmonic representatives. The
// class is described by any closed representative; the verdict only depends
// on the coefficients that are constant across the class.
enum class LocusStratum {
  none,             // no representative is F-harmonic
  unique_exact,     // exactly one value of the exact parameter I works
  degenerate,       // D = 0 boundary case, every representative works
  rank_drop,        // D != 0 with the 2x3 coefficient matrix of rank <= 1
};

struct LocusVerdict {
  bool has_harmonic_representative = false;
  bool all_representatives_harmonic = false;
  LocusStratum stratum = LocusStratum::none;
};

template <class S>
LocusVerdict nilpotent_class_locus(const Coeff20<S>& c) {
  auto violations = nilpotent_closedness_violations(c);
  if (!violations.empty()) detail::throw_not_closed("nilpotent", violations);
  S kq = c[cK] - c[cQ];
  S ms = c[cM] - c[cS];
  S p = c[cP] * c[cP] + c[cF] * c[cG];
  S u = c[cG] * kq - c[cP] * ms;
  S v = c[cP] * kq + c[cF] * ms;
  S w = c[cT] * u + c[cR] * v;
  bool rank_le1 = is_zero(p) && is_zero(u) && is_zero(v);

  LocusVerdict verdict;
  if (is_zero(c[cD])) {
    if (!is_zero(p)) {
      verdict = {true, false, LocusStratum::unique_exact};
    } else if (is_zero(w)) {
      verdict = {true, true, LocusStratum::degenerate};
    }
  } else if (rank_le1) {
    verdict = {true, true, LocusStratum::rank_drop};
  }
  return verdict;
}

// For primitive closed classes the same question can be asked in the
// primitive and symplectic quotients, where different subsets of
// {A, I, K, M} become exact directions. has_* answers "does some choice of
// the exact parameters give an F-harmonic form", all_* answers "does every
// choice". Requires a closed primitive coefficient vector.
struct PrimitiveClassTable {
  bool ph_has_rep, ph_all_reps;
  bool shplus_has_rep, shplus_all_reps;
  bool shminus_has_rep, shminus_all_reps;
};

template <class S>
PrimitiveClassTable nilpotent_primitive_class_table(const Coeff20<S>& c) {
  auto violations = nilpotent_closedness_violations(c);
  if (!violations.empty()) detail::throw_not_closed("nilpotent", violations);
  if (!coeff20_is_primitive(c))
    throw std::domain_error("coefficients do not describe a primitive 3-form");
  const S &D = c[cD], &F = c[cF], &G = c[cG], &I = c[cI], &K = c[cK], &M = c[cM];
  bool dfg = is_zero(S(D * F * G));
  bool ifg = is_zero(S(I * F * G));
  bool dfm = is_zero(S(D * F * M));
  bool dgk = is_zero(S(D * G * K));
  bool fg = is_zero(S(F * G));
  bool df = is_zero(S(D * F));
  bool dg = is_zero(S(D * G));

  PrimitiveClassTable t{};
  t.ph_has_rep = dfg && dfm && dgk;
  t.ph_all_reps = fg && dfm && dgk;
  t.shplus_has_rep = dfg;
  t.shplus_all_reps = fg && df && dg;
  t.shminus_has_rep = dfg && ifg && dfm && dgk;
  t.shminus_all_reps = t.shminus_has_rep;
  return t;
}

// ---------------------------------------------------------------------------
// Solvable example (-l e15, l e25, -l e36, l e46, 0, 0): closedness pins
// A = B, D = -C, F = -E, H = G, O = -I, P = -J, Q = -K, R = -L. The scale l
// of the bracket does not change the kernel of d, so the same system serves
// both bundled presentations.

template <class S>
std::vector<std::string> solvable_closedness_violations(const Coeff20<S>& c) {
  std::vector<std::string> out;
  detail::append_violation(out, "A-B", S(c[cA] - c[cB]));
  detail::append_violation(out, "C+D", S(c[cC] + c[cD]));
  detail::append_violation(out, "E+F", S(c[cE] + c[cF]));
  detail::append_violation(out, "G-H", S(c[cG] - c[cH]));
  detail::append_violation(out, "I+O", S(c[cI] + c[cO]));
  detail::append_violation(out, "J+P", S(c[cJ] + c[cP]));
  detail::append_violation(out, "K+Q", S(c[cK] + c[cQ]));
  detail::append_violation(out, "L+R", S(c[cL] + c[cR]));
  return out;
}

// F-harmonicity system for a closed phi. M, N, S, T are the class
// parameters; A, C, E, G parameterize exact directions, so every class has a
// harmonic representative (set them to zero) and no class consists solely of
// harmonic representatives.
template <class S>
std::array<S, 4> solvable_fharmonic_system(const Coeff20<S>& c) {
  auto violations = solvable_closedness_violations(c);
  if (!violations.empty()) detail::throw_not_closed("solvable", violations);
  const S &A = c[cA], &C = c[cC], &E = c[cE], &G = c[cG];
  const S &M = c[cM], &N = c[cN], &T = c[cT];
  const S& Sc = c[cS];
  S b1 = 4 * C * E - (M - N) * (M - N) + (Sc - T) * (Sc - T);
  S b2 = 4 * A * G + (M + N) * (M + N) - (Sc + T) * (Sc + T);
  return {S(A * b1), S(C * b2), S(E * b2), S(G * b1)};
}

// Q/4 of a closed phi in factored form: the product of the two brackets from
// the harmonicity system plus a square. Vanishing of either bracket, or of
// A, C, E, G together, forces Q >= 0; those are exactly the harmonic cases.
template <class S>
S solvable_Q_quarter_closed(const Coeff20<S>& c) {
  auto violations = solvable_closedness_violations(c);
  if (!violations.empty()) detail::throw_not_closed("solvable", violations);
  const S &A = c[cA], &C = c[cC], &E = c[cE], &G = c[cG];
  const S &M = c[cM], &N = c[cN], &T = c[cT];
  const S& Sc = c[cS];
  S b1 = 4 * C * E - (M - N) * (M - N) + (Sc - T) * (Sc - T);
  S b2 = 4 * A * G + (M + N) * (M + N) - (Sc + T) * (Sc + T);
  S r = M * M - N * N - Sc * Sc + T * T;
  return S(b1 * b2 + r * r);
}

// ---------------------------------------------------------------------------
// Numeric search for an F-harmonic representative inside a fixed cohomology
// class: minimizes |d F(phi0 + sum t_i b_i)|^2 over the exact directions b_i
// by damped steepest descent with a finite-difference gradient. Restarts are
// drawn from the seeded generator; the evaluation budget is shared across
// restarts and the best point found is returned either way.

struct RepresentativeSearch {
  KForm<double> phi;
  double objective = 0.0;      // |d F(phi)|^2 at the returned point
  bool converged = false;      // objective dropped below tol2
  int evaluations = 0;
  int restarts_used = 0;
};

inline RepresentativeSearch find_representative(
    const LieAlgebraSpec<double>& spec, const SymplecticStructure<double>& ss,
    const KForm<double>& phi0, const std::vector<KForm<double>>& exact_basis,
    std::uint64_t seed, int max_evaluations = 100000, int restarts = 10,
    double tol2 = 1e-16) {
  const bool standard = ss.omega == standard_omega<double>();
  int evals = 0;

  auto objective = [&](const std::vector<double>& t) {
    ++evals;
    KForm<double> phi = phi0;
    for (std::size_t i = 0; i < t.size(); ++i)
      phi = phi + t[i] * exact_basis[i];
    KForm<double> f =
        standard ? to_form(F_poly(coeff20_from_form(phi))) : F_def(ss, phi);
    return spec.d(f).coeff_norm_sq();
  };
  auto rebuild = [&](const std::vector<double>& t) {
    KForm<double> phi = phi0;
    for (std::size_t i = 0; i < t.size(); ++i)
      phi = phi + t[i] * exact_basis[i];
    return phi;
  };

  const std::size_t dim = exact_basis.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-3.0, 3.0);

  RepresentativeSearch best;
  std::vector<double> best_t(dim, 0.0);
  bool have_best = false;

  for (int r = 0; r < restarts && evals < max_evaluations; ++r) {
    best.restarts_used = r + 1;
    std::vector<double> t(dim, 0.0);
    if (r > 0)
      for (auto& ti : t) ti = box(rng);
    double f = objective(t);
    double step = 0.25;
    while (evals < max_evaluations && f >= tol2 && step > 1e-14) {
      std::vector<double> grad(dim, 0.0);
      double gnorm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(t[i]));
        auto tp = t, tm = t;
        tp[i] += h;
        tm[i] -= h;
        grad[i] = (objective(tp) - objective(tm)) / (2.0 * h);
        gnorm += grad[i] * grad[i];
      }
      if (gnorm == 0.0) break;  // flat point: either done or stuck
      bool accepted = false;
      while (step > 1e-14 && evals < max_evaluations) {
        auto trial = t;
        const double scale = step / std::sqrt(gnorm);
        for (std::size_t i = 0; i < dim; ++i) trial[i] -= scale * grad[i];
        double ftrial = objective(trial);
        if (ftrial < f) {
          t = trial;
          f = ftrial;
          step *= 1.5;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    if (!have_best || f < best.objective) {
      have_best = true;
      best.objective = f;
      best_t = t;
      best.converged = f < tol2;
    }
    if (best.converged) break;
  }
  best.phi = rebuild(best_t);
  best.evaluations = evals;
  return best;
}

// Samples Q over random points of a cohomology class (phi0 plus a box in the
// exact directions). A class whose representatives are all F-harmonic shows
// a constant Q; a class that merely admits one shows a strict extremum there.
struct ClassQSample {
  double q_min = 0.0, q_max = 0.0;
  double q_at_base = 0.0;  // Q(phi0)
  bool constant = false;
};

inline ClassQSample sample_Q_over_class(const SymplecticStructure<double>& ss,
                                        const KForm<double>& phi0,
                                        const std::vector<KForm<double>>& exact_basis,
                                        int samples, double radius,
                                        std::uint64_t seed, double tol = 1e-9) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-radius, radius);
  ClassQSample out;
  out.q_at_base = Q_def(ss, phi0);
  out.q_min = out.q_max = out.q_at_base;
  for (int s = 0; s < samples; ++s) {
    KForm<double> phi = phi0;
    for (const auto& b : exact_basis) phi = phi + box(rng) * b;
    double q = Q_def(ss, phi);
    out.q_min = std::min(out.q_min, q);
    out.q_max = std::max(out.q_max, q);
  }
  double scale = std::max({1.0, std::abs(out.q_min), std::abs(out.q_max)});
  out.constant = (out.q_max - out.q_min) <= tol * scale;
  return out;
}

}  // namespace iia
