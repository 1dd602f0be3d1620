#include "supint/core.hpp"

#include <string>

namespace supint {

namespace {

SystemParams build(int n, double kappa, double omega_sq, std::vector<double> b,
                   bool require_nonneg_b) {
  if (n < 1) throw ValidationError("system.n: must be >= 1");
  if (!(kappa > 0.0)) throw ValidationError("system.kappa: must be > 0");
  if (!(omega_sq >= 0.0)) throw ValidationError("system.omega_sq: must be >= 0");
  if (b.size() != static_cast<std::size_t>(n))
    throw ValidationError("system.b: expected " + std::to_string(n) + " entries, got " +
                          std::to_string(b.size()));
  if (require_nonneg_b) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!(b[j] >= 0.0))
        throw ValidationError("system.b[" + std::to_string(j) + "]: must be >= 0");
    }
  }
  SystemParams params;
  params.n = n;
  params.kappa = kappa;
  params.omega_sq = omega_sq;
  params.b = std::move(b);
  params.c = kappa * omega_sq;
  return params;
}

}  // namespace

SystemParams SystemParams::make(int n, double kappa, double omega_sq, std::vector<double> b) {
  return build(n, kappa, omega_sq, std::move(b), true);
}

SystemParams SystemParams::make_algebra(int n, double kappa, double omega_sq,
                                        std::vector<double> b) {
  return build(n, kappa, omega_sq, std::move(b), false);
}

void validate_state(const SystemParams& params, const PhasePoint& s) {
  const auto n = static_cast<std::size_t>(params.n);
  if (s.q.size() != n || s.p.size() != n)
    throw ValidationError("state: q and p must each have " + std::to_string(params.n) +
                          " entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (params.b[i] > 0.0 && s.q[i] == 0.0)
      throw SingularStateError("state: q[" + std::to_string(i) +
                               "] = 0 with b[" + std::to_string(i) + "] > 0");
  }
}

double hamiltonian(const SystemParams& params, const PhasePoint& s) {
  validate_state(params, s);
  return hamiltonian_eval<double>(params, s.q, s.p);
}

double hamiltonian_natural(const SystemParams& params, const PhasePoint& s) {
  validate_state(params, s);
  return hamiltonian_natural_eval<double>(params, s.q, s.p);
}

double potential(const SystemParams& params, std::span<const double> q) {
  if (q.size() != static_cast<std::size_t>(params.n))
    throw ValidationError("potential: q must have " + std::to_string(params.n) + " entries");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (params.b[i] > 0.0 && q[i] == 0.0)
      throw SingularStateError("potential: q[" + std::to_string(i) + "] = 0 with b > 0");
  }
  return potential_eval<double>(params, q);
}

EomRhs eom_rhs(const SystemParams& params, const PhasePoint& s) {
  validate_state(params, s);
  const auto n = static_cast<std::size_t>(params.n);
  std::vector<double> z = pack_state(s);
  std::vector<double> dz(2 * n);
  eom_rhs_eval<double>(params, z, dz);
  EomRhs out;
  out.dq.assign(dz.begin(), dz.begin() + static_cast<std::ptrdiff_t>(n));
  out.dp.assign(dz.begin() + static_cast<std::ptrdiff_t>(n), dz.end());
  return out;
}

std::vector<double> pack_state(const PhasePoint& s) {
  std::vector<double> z;
  z.reserve(s.q.size() + s.p.size());
  z.insert(z.end(), s.q.begin(), s.q.end());
  z.insert(z.end(), s.p.begin(), s.p.end());
  return z;
}

PhasePoint unpack_state(std::span<const double> z) {
  const std::size_t n = z.size() / 2;
  PhasePoint s;
  s.q.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
  s.p.assign(z.begin() + static_cast<std::ptrdiff_t>(n), z.end());
  return s;
}

}  // namespace supint
