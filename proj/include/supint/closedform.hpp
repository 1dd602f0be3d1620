#pragma once

#include <vector>

#include "supint/core.hpp"
#include "supint/dynamics.hpp"

namespace supint {

// Which half-orbit of the time-radius relation
//   +-2 sqrt(E) (t - tau) = sqrt((x-alpha)^2 - gamma^2)
//                           + alpha acosh((x-alpha)/gamma)
// is meant: outgoing means xdot > 0 (equivalently J_0 > 0).
enum class Branch { incoming, outgoing };

// Constants of the exact E > 0 solution. The radial motion is
//   x(t) with x = kappa + q^2,  x^2 xdot^2 = 4 E [(x-alpha)^2 - gamma^2],
// and each squared coordinate follows Q_i = alpha_i + gamma_i cosh(X + phi_i)
// with X = +-acosh((x-alpha)/gamma) (sign = branch). Signs of q_i are fixed
// at the anchor state; coordinates with b_i = 0 and alpha_i < 0 pass through
// q_i = 0 and flip sign exactly where X + phi_i = 0.
struct OrbitConstants {
  double energy = 0.0;   // E = 2H
  double casimir = 0.0;  // C
  double alpha = 0.0;
  double gamma = 0.0;
  double tau = 0.0;
  std::vector<double> alpha_i;
  std::vector<double> gamma_i;
  std::vector<double> phi_i;
  std::vector<int> signs;      // sign of q_i at the anchor (p_i sign if q_i = 0)
  std::vector<bool> crossing;  // q_i may cross zero (b_i = 0, alpha_i < 0)
  std::vector<int> sigma;      // orientation of sqrt(Q_i): calibrated at the
                               // anchor so crossing coordinates flip exactly
                               // where X + phi_i = 0
  double kappa = 0.0;
  double c = 0.0;
};

// Derives the orbit constants from a state at time t0. Requires E > 0 and
// c != 0; throws UnsupportedRegimeError otherwise. An initial radius below
// the pericenter alpha + gamma (beyond tolerance) throws DomainError, as it
// cannot happen on a genuine orbit.
OrbitConstants constants_from_state(const SystemParams& params, const PhasePoint& s0, double t0);

// t(x) on the given branch; requires x >= alpha + gamma.
double time_of_radius(const OrbitConstants& oc, double x, Branch branch);

// Inverse of time_of_radius by a bracketed bisection/secant hybrid, to
// |t(x) - t| < 1e-12 max(1, |t|). The branch is decided by sign(t - tau).
double radius_of_time(const OrbitConstants& oc, double t);

// Position vector at radius x on the given branch.
std::vector<double> coords_of_radius(const OrbitConstants& oc, double x, Branch branch);

// Full phase-space state at time t (positions and momenta, the latter via
// p_i = (kappa + q^2) qdot_i with qdot_i evaluated analytically).
PhasePoint state_at_time(const OrbitConstants& oc, double t);

// Exact trajectory sampled at `times`; s0 is the state at t = 0.
Trajectory trajectory_closed_form(const SystemParams& params, const PhasePoint& s0,
                                  const std::vector<double>& times);

}  // namespace supint
