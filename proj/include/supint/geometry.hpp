#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "supint/core.hpp"
#include "supint/dual.hpp"
#include "supint/dynamics.hpp"

namespace supint {

struct MetricSample {
  std::vector<double> q;
  double conformal_factor = 0.0;  // kappa + q^2
  double scalar_curvature = 0.0;
};

struct IntrinsicPotentials {
  double kepler = 0.0;  // K sqrt(kappa + q^2) / |q|
  double harm = 0.0;    // K q^2 / (kappa + q^2)
};

// Separation data of the Hamilton-Jacobi equation in Cartesian coordinates:
// lambda_i = I_i and sum_i lambda_i = c + kappa E.
struct SWCorrespondence {
  double energy = 0.0;
  std::vector<double> lambda;
  double constraint_value = 0.0;  // c + kappa E
};

// R = -(n-1) (3 (n-2) q^2 + 2 kappa n) / (kappa + q^2)^3; negative everywhere.
double scalar_curvature(const SystemParams& params, std::span<const double> q);

MetricSample metric_sample(const SystemParams& params, std::span<const double> q);

// Scalar curvature from first principles: Christoffel symbols of
// g_ij = conformal_factor(q) delta_ij by central finite differences, then the
// Ricci contraction. Verification oracle, not a performance path.
double scalar_curvature_fd(const std::function<double(std::span<const double>)>& conformal_factor,
                           std::span<const double> q);

// The oracle specialized to this metric; n <= 4 (the Christoffel tables grow
// as n^4 and the closed formula is dimension-generic anyway).
double curvature_oracle(const SystemParams& params, std::span<const double> q);

double green_function(const SystemParams& params, double r);

IntrinsicPotentials intrinsic_potentials(const SystemParams& params, double k,
                                         std::span<const double> q);

// Squared cotangent norm p^2 / (kappa + q^2).
double cotangent_norm(const SystemParams& params, std::span<const double> p,
                      std::span<const double> q);

SWCorrespondence sw_hj_check(const SystemParams& params, const PhasePoint& s0);

// max_i,t |p_i^2 - (lambda_i + E q_i^2 - b_i q_i^-2)| along a trajectory.
double sw_separation_residual(const SystemParams& params, const Trajectory& traj,
                              const SWCorrespondence& sw);

// Radial part of the Laplace-Beltrami operator on the three-dimensional
// space, as displayed:
//   Delta f = [r^2 (kappa + r^2)]^-1 d/dr ( r^2 sqrt(kappa + r^2) f'(r) ).
// f is any callable evaluatable on nested duals; derivatives are exact to
// rounding. Internally runs in long double: harmonicity of the Green
// function at r ~ 1e-2 cancels terms ~ 1/r, and double precision would leave
// ~1e-10 of noise right at the certification tolerance.
template <class F>
double laplace_beltrami_radial(const SystemParams& params, F&& f, double r) {
  if (!(r > 0.0)) throw DomainError("laplace_beltrami_radial: r must be > 0");
  using LD = long double;
  using D2 = Dual<Dual<LD>>;
  const D2 x(Dual<LD>(static_cast<LD>(r), LD(1)), Dual<LD>(LD(1), LD(0)));
  const D2 y = f(x);
  const LD f1 = y.a.b;  // f'(r)
  const LD f2 = y.b.b;  // f''(r)
  const LD rl = static_cast<LD>(r);
  const LD lam = static_cast<LD>(params.kappa) + rl * rl;
  const LD sq = std::sqrt(lam);
  const LD weight = rl * rl * sq;                     // r^2 sqrt(kappa + r^2)
  const LD weight_prime = 2.0L * rl * sq + rl * rl * rl / sq;
  return static_cast<double>((weight_prime * f1 + weight * f2) / (rl * rl * lam));
}

// The Green-function profile v(r) = sqrt(kappa + r^2) / r as a generic
// callable (harmonic for r > 0).
inline auto green_function_profile(const SystemParams& params) {
  const double kappa = params.kappa;
  return [kappa](const auto& r) {
    using std::sqrt;
    using supint::sqrt;
    return sqrt(r * r + kappa) / r;
  };
}

}  // namespace supint
