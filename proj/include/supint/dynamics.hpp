#pragma once

#include <span>
#include <string>
#include <vector>

#include "supint/core.hpp"
#include "supint/phase_function.hpp"

namespace supint {

enum class Scheme { implicit_midpoint, rk4_oracle };

Scheme scheme_from_string(const std::string& name);
const char* scheme_name(Scheme scheme);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  SystemParams params;
  std::string scheme;
  double step = 0.0;
};

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_rel_drift = 0.0;
};

struct DriftReport {
  std::vector<DriftEntry> entries;
  double bound = 0.0;
  bool pass = false;
};

// Radial observables x = kappa + q^2, J_0, J_+, E = 2H along a trajectory,
// with centered-difference residuals of their evolution equations
//   xdot = 2 J_0 / x,  J_0dot = (J_+ + E (x - kappa)) / x,  J_+dot = 2 E J_0 / x
// at the interior samples (res_*[k-1] belongs to times[k]). The Casimir
// identity C = -x^2 xdot^2 / 4 + E x^2 + (c - E kappa) x - c kappa is checked
// per sample; eqx_residual is the same check divided by x^2 / 4, i.e. the
// residual of xdot^2 = 4 E [(x - alpha)^2 - gamma^2] / x^2.
struct RadialObservables {
  std::vector<double> times;
  std::vector<double> x, j0, jplus, energy;
  std::vector<double> res_dx, res_dj0, res_djplus;
  std::vector<double> casimir_identity_abs;
  std::vector<double> eqx_residual;
  double max_res_dx = 0.0, max_res_dj0 = 0.0, max_res_djplus = 0.0;
  double max_casimir_identity = 0.0, max_eqx = 0.0;
};

// One implicit-midpoint step: solves z' = z + h X_H((z + z')/2) by fixed
// point iteration (residual 1e-13, at most 50 sweeps) with a damped-Newton
// fallback. Symmetric, symplectic, order 2; required because the kinetic
// term couples q and p.
PhasePoint step_implicit_midpoint(const SystemParams& params, const PhasePoint& s, double h);

// Classical explicit RK4; the cross-check oracle only, not symplectic.
PhasePoint step_rk4(const SystemParams& params, const PhasePoint& s, double h);

// The sampling grid of integrate: multiples of h up to t_final, plus t_final
// itself when it is not a multiple.
std::vector<double> sample_times(double t_final, double h);

// Fixed-step integration from t = 0, sampled at multiples of h with a final
// partial step when t_final is not a multiple. Halts with NumericalError if
// any |q_i| with b_i > 0 drops below 1e-4.
Trajectory integrate(const SystemParams& params, const PhasePoint& s0, double t_final, double h,
                     Scheme scheme = Scheme::implicit_midpoint);

DriftReport drift_report(const Trajectory& traj, std::span<const PhaseFunction> integrals,
                         double bound = 1e-8);

RadialObservables radial_observables(const Trajectory& traj);

}  // namespace supint
