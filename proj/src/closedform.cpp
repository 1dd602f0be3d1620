#include "supint/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supint/algebra.hpp"

namespace supint {

namespace {

constexpr double kConsistencyTol = 1e-10;

// All internals run on the hyperbolic phase X with x = alpha + gamma cosh X,
// signed so that X grows monotonically in time (negative incoming, zero at
// the turning point, positive outgoing). Parametrizing by x instead would
// lose half the working precision near the pericenter, where
// acosh((x-alpha)/gamma) has a square-root singularity.

// 2 sqrt(E) (t - tau) as a function of the signed phase; odd and strictly
// increasing (derivative gamma cosh X + alpha >= alpha + gamma > 0).
double time_profile(const OrbitConstants& oc, double x_phase) {
  return oc.gamma * std::sinh(x_phase) + oc.alpha * x_phase;
}

// Inverse of time_profile by a bracketed bisection/secant hybrid; the
// stopping rule mirrors |t(x) - t| < 1e-12 max(1, |t|).
double phase_of_time(const OrbitConstants& oc, double t) {
  const double sqrt_e = std::sqrt(oc.energy);
  const double target = 2.0 * sqrt_e * (t - oc.tau);
  if (target == 0.0) return 0.0;
  const double magnitude = std::abs(target);
  const double gtol = 1e-12 * std::max(1.0, std::abs(t)) * 2.0 * sqrt_e;

  double lo = 0.0, glo = -magnitude;
  double hi = std::max(1.0, std::asinh(magnitude / oc.gamma));
  double ghi = time_profile(oc, hi) - magnitude;
  while (ghi < 0.0) {
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    ghi = time_profile(oc, hi) - magnitude;
  }

  double x_phase = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double cand = hi - ghi * (hi - lo) / (ghi - glo);
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    x_phase = cand;
    const double g = time_profile(oc, x_phase) - magnitude;
    if (std::abs(g) <= gtol || hi - lo <= 1e-15 * std::max(1.0, x_phase)) break;
    if (g < 0.0) {
      lo = x_phase;
      glo = g;
    } else {
      hi = x_phase;
      ghi = g;
    }
  }
  return target > 0.0 ? x_phase : -x_phase;
}

double phase_of_radius(const OrbitConstants& oc, double x, Branch branch) {
  const double w = std::max((x - oc.alpha) / oc.gamma, 1.0);
  const double mag = std::acosh(w);
  return branch == Branch::outgoing ? mag : -mag;
}

struct CoordState {
  std::vector<double> q;
  std::vector<double> qdot;
};

// Q_i = alpha_i + gamma_i cosh(u_i) with u_i = X + phi_i. Crossing
// coordinates (b_i = 0, alpha_i = -gamma_i) use Q_i = 2 gamma_i sinh^2(u_i/2),
// whose signed square root sigma_i sqrt(2 gamma_i) sinh(u_i/2) continues q_i
// smoothly through zero.
CoordState coords_at_phase(const OrbitConstants& oc, double x, double x_phase) {
  const std::size_t n = oc.alpha_i.size();
  CoordState out;
  out.q.resize(n);
  out.qdot.resize(n);
  const double sqrt_e = std::sqrt(oc.energy);
  const double phase_rate = 2.0 * sqrt_e / x;  // dX/dt
  for (std::size_t i = 0; i < n; ++i) {
    if (oc.gamma_i[i] == 0.0) {
      out.q[i] = 0.0;
      out.qdot[i] = 0.0;
      continue;
    }
    const double u = x_phase + oc.phi_i[i];
    if (oc.crossing[i]) {
      const double amp = std::sqrt(2.0 * oc.gamma_i[i]);
      const double s = static_cast<double>(oc.sigma[i]);
      out.q[i] = s * amp * std::sinh(0.5 * u);
      out.qdot[i] = s * amp * std::cosh(0.5 * u) * 0.5 * phase_rate;
    } else {
      const double qi2 = std::max(oc.alpha_i[i] + oc.gamma_i[i] * std::cosh(u), 0.0);
      const double qi = static_cast<double>(oc.sigma[i]) * std::sqrt(qi2);
      out.q[i] = qi;
      // Qdot = gamma_i sinh(u) dX/dt, qdot = Qdot / (2 q).
      out.qdot[i] = oc.gamma_i[i] * std::sinh(u) * phase_rate / (2.0 * qi);
    }
  }
  return out;
}

}  // namespace

OrbitConstants constants_from_state(const SystemParams& params, const PhasePoint& s0, double t0) {
  validate_state(params, s0);

  OrbitConstants oc;
  oc.kappa = params.kappa;
  oc.c = params.c;
  oc.energy = 2.0 * hamiltonian(params, s0);
  if (!(oc.energy > 0.0))
    throw UnsupportedRegimeError("closed-form solution requires positive energy E = 2H, got E = " +
                                 std::to_string(oc.energy));
  if (oc.c == 0.0)
    throw UnsupportedRegimeError("closed-form solution requires c = kappa * omega^2 != 0");

  const double e = oc.energy;
  const double sqrt_e = std::sqrt(e);
  oc.casimir = casimir(params, s0);
  oc.alpha = 0.5 * (params.kappa - oc.c / e);
  const double gamma_sq = 0.25 * std::pow(params.kappa + oc.c / e, 2) + oc.casimir / e;
  oc.gamma = std::sqrt(gamma_sq);

  const double x0 = params.kappa + dot<double>(s0.q, s0.q);
  if (x0 - oc.alpha < oc.gamma * (1.0 - kConsistencyTol))
    throw DomainError("initial radius below the pericenter: (x0-alpha)^2 < gamma^2");

  // The signed anchor phase comes from J_0 (xdot = 2 J_0 / x together with
  // Eq. x gives gamma sinh X = J_0 / sqrt(E)); asinh keeps full precision
  // however close the anchor sits to the turning point.
  const double j0 = dot<double>(s0.q, s0.p);
  const double x0_phase = std::asinh(j0 / (sqrt_e * oc.gamma));
  oc.tau = t0 - time_profile(oc, x0_phase) / (2.0 * sqrt_e);

  const auto n = static_cast<std::size_t>(params.n);
  oc.alpha_i.resize(n);
  oc.gamma_i.resize(n);
  oc.phi_i.resize(n);
  oc.signs.resize(n);
  oc.sigma.resize(n);
  oc.crossing.assign(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    const double ii = extra_integral(params, s0, static_cast<int>(i) + 1);
    oc.alpha_i[i] = -ii / (2.0 * e);
    oc.gamma_i[i] = std::sqrt(std::max(oc.alpha_i[i] * oc.alpha_i[i] + params.b[i] / e, 0.0));

    const double qi = s0.q[i];
    const double pi = s0.p[i];
    oc.signs[i] = qi != 0.0 ? (qi < 0.0 ? -1 : 1) : (pi < 0.0 ? -1 : 1);
    oc.sigma[i] = oc.signs[i];

    if (oc.gamma_i[i] == 0.0) {
      // gamma_i = 0 forces I_i = b_i = 0; only the fiber q_i = p_i = 0 has a
      // finite-parameter representation (anything else sits in the
      // exponential limit of the cosh family).
      oc.phi_i[i] = 0.0;
      if (qi * qi > kConsistencyTol || pi * pi > kConsistencyTol)
        throw DomainError("degenerate integral I_" + std::to_string(i + 1) +
                          " = 0 with b = 0 but q_i != 0: orbit not representable in closed form");
      continue;
    }

    // Qdot_i = 2 q_i p_i / x = gamma_i sinh(u_i) * 2 sqrt(E) / x pins the
    // phase u_i = X_0 + phi_i uniquely; cosh consistency is automatic from
    // the definition of I_i.
    const double u0 = std::asinh(qi * pi / (sqrt_e * oc.gamma_i[i]));
    oc.phi_i[i] = u0 - x0_phase;
    oc.crossing[i] = params.b[i] == 0.0 && oc.alpha_i[i] < 0.0;
    if (oc.crossing[i] && u0 != 0.0) {
      // q_i = sigma_i sqrt(2 gamma_i) sinh(u_i / 2): calibrate the
      // orientation against the anchor's side of the crossing.
      oc.sigma[i] = u0 > 0.0 ? oc.signs[i] : -oc.signs[i];
    }
  }
  return oc;
}

double time_of_radius(const OrbitConstants& oc, double x, Branch branch) {
  if (x < oc.alpha + oc.gamma - kConsistencyTol * std::max(1.0, std::abs(oc.gamma)))
    throw DomainError("time_of_radius: x = " + std::to_string(x) +
                      " below the pericenter alpha + gamma");
  const double x_phase = phase_of_radius(oc, x, branch);
  return oc.tau + time_profile(oc, x_phase) / (2.0 * std::sqrt(oc.energy));
}

double radius_of_time(const OrbitConstants& oc, double t) {
  const double x_phase = phase_of_time(oc, t);
  return oc.alpha + oc.gamma * std::cosh(x_phase);
}

std::vector<double> coords_of_radius(const OrbitConstants& oc, double x, Branch branch) {
  if (x < oc.alpha + oc.gamma - kConsistencyTol * std::max(1.0, std::abs(oc.gamma)))
    throw DomainError("coords_of_radius: x below the pericenter alpha + gamma");
  const double x_phase = phase_of_radius(oc, x, branch);
  // Negative Q_i beyond roundoff means the constants are inconsistent.
  for (std::size_t i = 0; i < oc.alpha_i.size(); ++i) {
    if (oc.gamma_i[i] == 0.0) continue;
    const double u = x_phase + oc.phi_i[i];
    const double qi2 = oc.alpha_i[i] + oc.gamma_i[i] * std::cosh(u);
    if (qi2 < -1e-12)
      throw DomainError("coords_of_radius: negative Q_" + std::to_string(i + 1) +
                        " signals inconsistent orbit constants");
  }
  return coords_at_phase(oc, x, x_phase).q;
}

PhasePoint state_at_time(const OrbitConstants& oc, double t) {
  const double x_phase = phase_of_time(oc, t);
  const double x = oc.alpha + oc.gamma * std::cosh(x_phase);
  const CoordState cs = coords_at_phase(oc, x, x_phase);
  PhasePoint s;
  s.q = cs.q;
  s.p.resize(cs.q.size());
  for (std::size_t i = 0; i < cs.q.size(); ++i) s.p[i] = x * cs.qdot[i];
  return s;
}

Trajectory trajectory_closed_form(const SystemParams& params, const PhasePoint& s0,
                                  const std::vector<double>& times) {
  const OrbitConstants oc = constants_from_state(params, s0, 0.0);
  Trajectory traj;
  traj.params = params;
  traj.scheme = "closed-form";
  traj.step = times.size() > 1 ? times[1] - times[0] : 0.0;
  traj.times = times;
  traj.states.reserve(times.size());
  for (double t : times) traj.states.push_back(state_at_time(oc, t));
  return traj;
}

}  // namespace supint
