#include "supint/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "supint/algebra.hpp"

namespace supint {

namespace {

constexpr double kSingularGuard = 1e-4;
constexpr double kSolveTol = 1e-13;
constexpr int kMaxFixedPoint = 50;
constexpr int kMaxNewton = 50;

void guard_coordinates(const SystemParams& params, std::span<const double> z) {
  for (int i = 0; i < params.n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    if (params.b[ii] > 0.0 && std::abs(z[ii]) < kSingularGuard)
      throw NumericalError("trajectory crossed into |q[" + std::to_string(i) + "]| < 1e-4 with b[" +
                           std::to_string(i) + "] > 0; the step size is too large for this state");
  }
}

void guarded_rhs(const SystemParams& params, std::span<const double> z, std::span<double> dz) {
  guard_coordinates(params, z);
  eom_rhs_eval<double>(params, z, dz);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Damped Newton on G(w) = w - z - h X((z + w)/2).
std::vector<double> newton_solve(const SystemParams& params, std::span<const double> z, double h,
                                 std::vector<double> w, double tol) {
  const std::size_t dim = z.size();
  std::vector<double> mid(dim), gval(dim), rhs(dim), wnew(dim);
  std::vector<Dual1> mid_d(dim), rhs_d(dim);

  auto residual = [&](std::span<const double> wv, std::span<double> out) {
    for (std::size_t i = 0; i < dim; ++i) mid[i] = 0.5 * (z[i] + wv[i]);
    guarded_rhs(params, mid, rhs);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] = wv[i] - z[i] - h * rhs[i];
      norm = std::max(norm, std::abs(out[i]));
    }
    return norm;
  };

  double gnorm = residual(w, gval);
  for (int iter = 0; iter < kMaxNewton; ++iter) {
    if (gnorm < tol) return w;
    // dG/dw = I - (h/2) dX/dz at the midpoint.
    for (std::size_t i = 0; i < dim; ++i) mid_d[i] = Dual1(0.5 * (z[i] + w[i]), 0.0);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
      mid_d[col].b = 1.0;
      eom_rhs_eval<Dual1>(params, mid_d, rhs_d);
      mid_d[col].b = 0.0;
      for (std::size_t row = 0; row < dim; ++row)
        jac(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) -=
            0.5 * h * rhs_d[row].b;
    }
    Eigen::VectorXd g(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) g(static_cast<Eigen::Index>(i)) = gval[i];
    const Eigen::VectorXd delta = jac.partialPivLu().solve(-g);

    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      for (std::size_t i = 0; i < dim; ++i)
        wnew[i] = w[i] + lambda * delta(static_cast<Eigen::Index>(i));
      std::vector<double> gnew(dim);
      double nnew;
      try {
        nnew = residual(wnew, gnew);
      } catch (const NumericalError&) {
        lambda *= 0.5;
        continue;
      }
      if (std::isfinite(nnew) && nnew < gnorm) {
        w = wnew;
        gval = gnew;
        gnorm = nnew;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (gnorm < tol) return w;
  throw NumericalError("implicit midpoint failed to converge; reduce the step size h");
}

std::vector<double> midpoint_step_z(const SystemParams& params, std::span<const double> z,
                                    double h) {
  const std::size_t dim = z.size();
  const double scale = [&] {
    double m = 1.0;
    for (double v : z) m = std::max(m, std::abs(v));
    return m;
  }();
  const double tol = kSolveTol * scale;

  std::vector<double> w(dim), wnext(dim), mid(dim), rhs(dim);
  // Explicit Euler predictor.
  guarded_rhs(params, z, rhs);
  for (std::size_t i = 0; i < dim; ++i) w[i] = z[i] + h * rhs[i];

  bool polish = false;  // one extra sweep once converged, to kill the
                        // contraction lag that would otherwise bias every step
  for (int iter = 0; iter < kMaxFixedPoint; ++iter) {
    for (std::size_t i = 0; i < dim; ++i) mid[i] = 0.5 * (z[i] + w[i]);
    guarded_rhs(params, mid, rhs);
    for (std::size_t i = 0; i < dim; ++i) wnext[i] = z[i] + h * rhs[i];
    const double res = max_abs_diff(w, wnext);
    w.swap(wnext);
    if (polish) {
      guard_coordinates(params, w);
      return w;
    }
    if (std::isfinite(res) && res <= tol) {
      polish = true;
      continue;
    }
    if (!std::isfinite(res)) break;
  }
  w = newton_solve(params, z, h, std::move(w), tol);
  guard_coordinates(params, w);
  return w;
}

std::vector<double> rk4_step_z(const SystemParams& params, std::span<const double> z, double h) {
  const std::size_t dim = z.size();
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim), out(dim);
  guarded_rhs(params, z, k1);
  for (std::size_t i = 0; i < dim; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
  guarded_rhs(params, tmp, k2);
  for (std::size_t i = 0; i < dim; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
  guarded_rhs(params, tmp, k3);
  for (std::size_t i = 0; i < dim; ++i) tmp[i] = z[i] + h * k3[i];
  guarded_rhs(params, tmp, k4);
  for (std::size_t i = 0; i < dim; ++i)
    out[i] = z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace

Scheme scheme_from_string(const std::string& name) {
  if (name == "implicit-midpoint") return Scheme::implicit_midpoint;
  if (name == "rk4-oracle") return Scheme::rk4_oracle;
  throw ValidationError("integrator.scheme: unknown scheme '" + name +
                        "' (expected implicit-midpoint or rk4-oracle)");
}

const char* scheme_name(Scheme scheme) {
  return scheme == Scheme::implicit_midpoint ? "implicit-midpoint" : "rk4-oracle";
}

PhasePoint step_implicit_midpoint(const SystemParams& params, const PhasePoint& s, double h) {
  validate_state(params, s);
  if (h == 0.0) throw ValidationError("step size h must be nonzero");
  const std::vector<double> z = pack_state(s);
  return unpack_state(midpoint_step_z(params, z, h));
}

PhasePoint step_rk4(const SystemParams& params, const PhasePoint& s, double h) {
  validate_state(params, s);
  const std::vector<double> z = pack_state(s);
  return unpack_state(rk4_step_z(params, z, h));
}

std::vector<double> sample_times(double t_final, double h) {
  if (!(h > 0.0)) throw ValidationError("integrator.step: must be > 0");
  if (!(t_final >= 0.0)) throw ValidationError("integrator.t_final: must be >= 0");
  std::vector<double> times{0.0};
  const auto n_steps = static_cast<long long>(std::floor(t_final / h + 1e-9));
  for (long long k = 1; k <= n_steps; ++k) times.push_back(static_cast<double>(k) * h);
  if (t_final - times.back() > 1e-12 * std::max(1.0, std::abs(t_final)))
    times.push_back(t_final);
  return times;
}

Trajectory integrate(const SystemParams& params, const PhasePoint& s0, double t_final, double h,
                     Scheme scheme) {
  validate_state(params, s0);

  Trajectory traj;
  traj.params = params;
  traj.scheme = scheme_name(scheme);
  traj.step = h;
  traj.times = sample_times(t_final, h);

  std::vector<double> z = pack_state(s0);
  guard_coordinates(params, z);
  traj.states.reserve(traj.times.size());
  traj.states.push_back(s0);

  const auto advance = [&](std::span<const double> zin, double dt) {
    return scheme == Scheme::implicit_midpoint ? midpoint_step_z(params, zin, dt)
                                               : rk4_step_z(params, zin, dt);
  };

  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    z = advance(z, traj.times[k] - traj.times[k - 1]);
    traj.states.push_back(unpack_state(z));
  }
  return traj;
}

DriftReport drift_report(const Trajectory& traj, std::span<const PhaseFunction> integrals,
                         double bound) {
  if (traj.states.empty()) throw ValidationError("drift report: empty trajectory");
  DriftReport report;
  report.bound = bound;
  report.pass = true;
  for (const auto& f : integrals) {
    DriftEntry entry;
    entry.name = f.name();
    entry.initial = f(traj.states.front());
    const double denom = std::max(1.0, std::abs(entry.initial));
    for (const auto& s : traj.states) {
      const double drift = std::abs(f(s) - entry.initial) / denom;
      if (drift > entry.max_rel_drift) entry.max_rel_drift = drift;
    }
    if (entry.max_rel_drift >= bound) report.pass = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

RadialObservables radial_observables(const Trajectory& traj) {
  const std::size_t n_samples = traj.states.size();
  if (n_samples < 3)
    throw ValidationError("radial observables need at least 3 trajectory samples");

  const SystemParams& params = traj.params;
  RadialObservables obs;
  obs.times = traj.times;
  obs.x.reserve(n_samples);
  for (const auto& s : traj.states) {
    obs.x.push_back(params.kappa + dot<double>(s.q, s.q));
    obs.j0.push_back(dot<double>(s.q, s.p));
    obs.jplus.push_back(j_plus_eval<double>(params, s.q, s.p));
    obs.energy.push_back(2.0 * hamiltonian_eval<double>(params, s.q, s.p));
  }

  for (std::size_t k = 1; k + 1 < n_samples; ++k) {
    const double dt = traj.times[k + 1] - traj.times[k - 1];
    const double xdot = (obs.x[k + 1] - obs.x[k - 1]) / dt;
    const double j0dot = (obs.j0[k + 1] - obs.j0[k - 1]) / dt;
    const double jpdot = (obs.jplus[k + 1] - obs.jplus[k - 1]) / dt;
    const double xk = obs.x[k];
    const double ek = obs.energy[k];

    obs.res_dx.push_back(std::abs(xdot - 2.0 * obs.j0[k] / xk));
    obs.res_dj0.push_back(
        std::abs(j0dot - (obs.jplus[k] + ek * (xk - params.kappa)) / xk));
    obs.res_djplus.push_back(std::abs(jpdot - 2.0 * ek * obs.j0[k] / xk));

    const double ck = casimir_eval<double>(params, traj.states[k].q, traj.states[k].p);
    const double rhs = -0.25 * xk * xk * xdot * xdot + ek * xk * xk +
                       (params.c - ek * params.kappa) * xk - params.c * params.kappa;
    const double identity = std::abs(ck - rhs);
    obs.casimir_identity_abs.push_back(identity);
    obs.eqx_residual.push_back(4.0 * identity / (xk * xk));
  }

  const auto vec_max = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double value : v) m = std::max(m, value);
    return m;
  };
  obs.max_res_dx = vec_max(obs.res_dx);
  obs.max_res_dj0 = vec_max(obs.res_dj0);
  obs.max_res_djplus = vec_max(obs.res_djplus);
  obs.max_casimir_identity = vec_max(obs.casimir_identity_abs);
  obs.max_eqx = vec_max(obs.eqx_residual);
  return obs;
}

}  // namespace supint
