#include "supint/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "supint/algebra.hpp"

namespace supint {

namespace {

constexpr double kMetricStep = 1e-5;       // first derivatives of g_ij
constexpr double kChristoffelStep = 1e-4;  // outer derivatives of Gamma

using ChristoffelTable = std::vector<Eigen::MatrixXd>;  // [k](i, j)

Eigen::MatrixXd metric_at(const std::function<double(std::span<const double>)>& factor,
                          std::span<const double> q) {
  const auto n = static_cast<Eigen::Index>(q.size());
  return factor(q) * Eigen::MatrixXd::Identity(n, n);
}

ChristoffelTable christoffel_fd(const std::function<double(std::span<const double>)>& factor,
                                std::span<const double> q) {
  const std::size_t n = q.size();
  std::vector<double> point(q.begin(), q.end());

  // dg[l] = d g / d q_l by central differences.
  std::vector<Eigen::MatrixXd> dg(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double saved = point[l];
    point[l] = saved + kMetricStep;
    const Eigen::MatrixXd gp = metric_at(factor, point);
    point[l] = saved - kMetricStep;
    const Eigen::MatrixXd gm = metric_at(factor, point);
    point[l] = saved;
    dg[l] = (gp - gm) / (2.0 * kMetricStep);
  }

  const Eigen::MatrixXd ginv = metric_at(factor, point).inverse();
  ChristoffelTable gamma(n, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l)
          acc += ginv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) *
                 (dg[i](static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) +
                  dg[j](static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(i)) -
                  dg[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        gamma[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.5 * acc;
      }
  return gamma;
}

}  // namespace

double scalar_curvature(const SystemParams& params, std::span<const double> q) {
  const double q2 = dot(q, q);
  const double n = params.n;
  const double lam = params.kappa + q2;
  return -(n - 1.0) * (3.0 * (n - 2.0) * q2 + 2.0 * params.kappa * n) / (lam * lam * lam);
}

MetricSample metric_sample(const SystemParams& params, std::span<const double> q) {
  MetricSample sample;
  sample.q.assign(q.begin(), q.end());
  sample.conformal_factor = params.kappa + dot(q, q);
  sample.scalar_curvature = scalar_curvature(params, q);
  return sample;
}

double scalar_curvature_fd(const std::function<double(std::span<const double>)>& conformal_factor,
                           std::span<const double> q) {
  const std::size_t n = q.size();
  std::vector<double> point(q.begin(), q.end());

  const ChristoffelTable gamma0 = christoffel_fd(conformal_factor, point);

  // dGamma[m][k](i,j) = d Gamma^k_ij / d q_m.
  std::vector<ChristoffelTable> dgamma(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double saved = point[m];
    point[m] = saved + kChristoffelStep;
    const ChristoffelTable gp = christoffel_fd(conformal_factor, point);
    point[m] = saved - kChristoffelStep;
    const ChristoffelTable gm = christoffel_fd(conformal_factor, point);
    point[m] = saved;
    dgamma[m].resize(n);
    for (std::size_t k = 0; k < n; ++k)
      dgamma[m][k] = (gp[k] - gm[k]) / (2.0 * kChristoffelStep);
  }

  const Eigen::MatrixXd ginv = metric_at(conformal_factor, point).inverse();
  double scalar = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // R_ij = d_k Gamma^k_ij - d_j Gamma^k_ik + Gamma^k_kl Gamma^l_ij
      //        - Gamma^k_jl Gamma^l_ik
      double ricci = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        ricci += dgamma[k][k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        ricci -= dgamma[j][k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        for (std::size_t l = 0; l < n; ++l) {
          ricci += gamma0[k](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) *
                   gamma0[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          ricci -= gamma0[k](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) *
                   gamma0[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
      }
      scalar += ginv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * ricci;
    }
  return scalar;
}

double curvature_oracle(const SystemParams& params, std::span<const double> q) {
  if (params.n > 4)
    throw ValidationError("curvature_oracle: restricted to n <= 4 (cost grows as n^4)");
  if (q.size() != static_cast<std::size_t>(params.n))
    throw ValidationError("curvature_oracle: q must have n entries");
  const double kappa = params.kappa;
  return scalar_curvature_fd(
      [kappa](std::span<const double> point) { return kappa + dot(point, point); }, q);
}

double green_function(const SystemParams& params, double r) {
  if (!(r > 0.0)) throw DomainError("green_function: r must be > 0");
  return std::sqrt(params.kappa + r * r) / r;
}

IntrinsicPotentials intrinsic_potentials(const SystemParams& params, double k,
                                         std::span<const double> q) {
  const double q2 = dot(q, q);
  if (q2 == 0.0)
    throw DomainError("intrinsic_potentials: the Kepler potential is singular at q = 0");
  const double lam = params.kappa + q2;
  IntrinsicPotentials out;
  out.kepler = k * std::sqrt(lam) / std::sqrt(q2);
  out.harm = k * q2 / lam;
  return out;
}

double cotangent_norm(const SystemParams& params, std::span<const double> p,
                      std::span<const double> q) {
  return dot(p, p) / (params.kappa + dot(q, q));
}

SWCorrespondence sw_hj_check(const SystemParams& params, const PhasePoint& s0) {
  validate_state(params, s0);
  SWCorrespondence sw;
  sw.energy = 2.0 * hamiltonian(params, s0);
  for (int i = 1; i <= params.n; ++i) sw.lambda.push_back(extra_integral(params, s0, i));
  sw.constraint_value = params.c + params.kappa * sw.energy;
  return sw;
}

double sw_separation_residual(const SystemParams& params, const Trajectory& traj,
                              const SWCorrespondence& sw) {
  double max_res = 0.0;
  for (const auto& s : traj.states) {
    for (std::size_t i = 0; i < s.q.size(); ++i) {
      double rhs = sw.lambda[i] + sw.energy * s.q[i] * s.q[i];
      if (params.b[i] != 0.0) rhs -= params.b[i] / (s.q[i] * s.q[i]);
      max_res = std::max(max_res, std::abs(s.p[i] * s.p[i] - rhs));
    }
  }
  return max_res;
}

}  // namespace supint
