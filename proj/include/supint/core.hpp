#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "supint/dual.hpp"
#include "supint/errors.hpp"

namespace supint {

// Parameters of the n-dimensional system: metric constant kappa > 0,
// oscillator strength omega_sq >= 0 and centrifugal coefficients b_j >= 0.
// c = kappa * omega_sq is derived at construction and kept in sync.
struct SystemParams {
  int n = 0;
  double kappa = 0.0;
  double omega_sq = 0.0;
  std::vector<double> b;
  double c = 0.0;

  // Fully validated construction: kappa > 0, omega_sq >= 0, all b_j >= 0.
  static SystemParams make(int n, double kappa, double omega_sq, std::vector<double> b);

  // Same but allows b_j < 0; the sl(2) realization accepts any real b_j, so
  // bracket experiments may use it. Dynamics and the CLI only ever see
  // make().
  static SystemParams make_algebra(int n, double kappa, double omega_sq, std::vector<double> b);
};

struct PhasePoint {
  std::vector<double> q;
  std::vector<double> p;
};

struct EomRhs {
  std::vector<double> dq;
  std::vector<double> dp;
};

// Throws SingularStateError if q_i = 0 while b_i > 0, ValidationError on a
// size mismatch.
void validate_state(const SystemParams& params, const PhasePoint& s);

// --- scalar kernels -------------------------------------------------------
//
// All evaluations are templated on the scalar type so the same code runs on
// plain doubles and on (nested) dual numbers. Phase-space layout is the
// concatenation z = (q_1..q_n, p_1..p_n).

template <class T>
T dot(std::span<const T> x, std::span<const T> y) {
  T acc(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

// sum_j b_j / q_j^2 with the 0 * q^-2 = 0 convention when b_j = 0.
template <class T>
T centrifugal_sum(const SystemParams& params, std::span<const T> q) {
  T acc(0.0);
  for (int j = 0; j < params.n; ++j) {
    if (params.b[static_cast<std::size_t>(j)] != 0.0) {
      const T& qj = q[static_cast<std::size_t>(j)];
      acc += params.b[static_cast<std::size_t>(j)] / (qj * qj);
    }
  }
  return acc;
}

template <class T>
T conformal_factor_eval(const SystemParams& params, std::span<const T> q) {
  return dot(q, q) + params.kappa;
}

// H = (p^2 - c + sum_j b_j q_j^-2) / (2 (kappa + q^2))
template <class T>
T hamiltonian_eval(const SystemParams& params, std::span<const T> q, std::span<const T> p) {
  const T num = dot(p, p) - params.c + centrifugal_sum(params, q);
  return num / (2.0 * conformal_factor_eval(params, q));
}

template <class T>
T hamiltonian_eval_z(const SystemParams& params, std::span<const T> z) {
  const auto n = static_cast<std::size_t>(params.n);
  return hamiltonian_eval(params, z.subspan(0, n), z.subspan(n, n));
}

// Natural Hamiltonian of the metric: kinetic term plus potential,
// (p^2 + omega^2 q^2 + sum_j b_j q_j^-2) / (kappa + q^2). Equals 2H + omega^2.
template <class T>
T hamiltonian_natural_eval(const SystemParams& params, std::span<const T> q, std::span<const T> p) {
  const T num = dot(p, p) + params.omega_sq * dot(q, q) + centrifugal_sum(params, q);
  return num / conformal_factor_eval(params, q);
}

template <class T>
T potential_eval(const SystemParams& params, std::span<const T> q) {
  const T num = params.omega_sq * dot(q, q) + centrifugal_sum(params, q);
  return num / conformal_factor_eval(params, q);
}

// dq_i/dt = p_i / (kappa + q^2), dp_i/dt = (2 H q_i + b_i q_i^-3) / (kappa + q^2).
template <class T>
void eom_rhs_eval(const SystemParams& params, std::span<const T> z, std::span<T> dz) {
  const auto n = static_cast<std::size_t>(params.n);
  const auto q = z.subspan(0, n);
  const auto p = z.subspan(n, n);
  const T factor = conformal_factor_eval(params, q);
  const T two_h = 2.0 * hamiltonian_eval(params, q, p);
  for (std::size_t i = 0; i < n; ++i) {
    dz[i] = p[i] / factor;
    T force = two_h * q[i];
    if (params.b[i] != 0.0) force += params.b[i] / (q[i] * q[i] * q[i]);
    dz[n + i] = force / factor;
  }
}

// --- double-precision convenience wrappers --------------------------------

double hamiltonian(const SystemParams& params, const PhasePoint& s);
double hamiltonian_natural(const SystemParams& params, const PhasePoint& s);
double potential(const SystemParams& params, std::span<const double> q);
EomRhs eom_rhs(const SystemParams& params, const PhasePoint& s);

std::vector<double> pack_state(const PhasePoint& s);
PhasePoint unpack_state(std::span<const double> z);

}  // namespace supint
