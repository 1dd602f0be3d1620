#pragma once

#include <span>
#include <string>
#include <vector>

#include "supint/core.hpp"
#include "supint/phase_function.hpp"

namespace supint {

// The sl(2) triple realized at a phase point:
//   J_- = q^2,  J_0 = p.q,  J_+ = p^2 + sum_j b_j q_j^-2.
struct SL2Generators {
  double j_minus = 0.0;
  double j_zero = 0.0;
  double j_plus = 0.0;
};

enum class FamilyKind { left_casimirs, right_casimirs, extra_integrals };

struct IntegralFamily {
  std::vector<std::string> labels;
  std::vector<double> values;
  FamilyKind kind = FamilyKind::left_casimirs;
};

// --- scalar kernels -------------------------------------------------------

template <class T>
T j_plus_eval(const SystemParams& params, std::span<const T> q, std::span<const T> p) {
  return dot(p, p) + centrifugal_sum(params, q);
}

// C = J_- J_+ - J_0^2 = L^2 + sum_j b_j q^2 / q_j^2.
template <class T>
T casimir_eval(const SystemParams& params, std::span<const T> q, std::span<const T> p) {
  return dot(q, q) * j_plus_eval(params, q, p) - dot(q, p) * dot(q, p);
}

// Left partial Casimir over the first m coordinates,
//   C^(m) = sum_{i<j<=m} [(q_i p_j - q_j p_i)^2 + b_i q_j^2/q_i^2 + b_j q_i^2/q_j^2]
//           + sum_{i<=m} b_i.
template <class T>
T partial_casimir_eval(const SystemParams& params, std::span<const T> q, std::span<const T> p,
                       int first, int last) {
  T acc(0.0);
  for (int i = first; i < last; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (int j = i + 1; j < last; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const T ang = q[ii] * p[jj] - q[jj] * p[ii];
      acc += ang * ang;
      if (params.b[ii] != 0.0) acc += params.b[ii] * (q[jj] * q[jj]) / (q[ii] * q[ii]);
      if (params.b[jj] != 0.0) acc += params.b[jj] * (q[ii] * q[ii]) / (q[jj] * q[jj]);
    }
    acc += params.b[ii];
  }
  return acc;
}

// I_i = p_i^2 - 2 H q_i^2 + b_i q_i^-2  (index 1-based).
template <class T>
T extra_integral_eval(const SystemParams& params, std::span<const T> q, std::span<const T> p,
                      int i) {
  const auto k = static_cast<std::size_t>(i - 1);
  T acc = p[k] * p[k] - 2.0 * hamiltonian_eval(params, q, p) * (q[k] * q[k]);
  if (params.b[k] != 0.0) acc += params.b[k] / (q[k] * q[k]);
  return acc;
}

// --- double-precision operations ------------------------------------------

SL2Generators realize_sl2(const SystemParams& params, const PhasePoint& s);
double casimir(const SystemParams& params, const PhasePoint& s);

// 1 < m <= n; left uses coordinates 1..m, right uses n-m+1..n.
double partial_casimir_left(const SystemParams& params, const PhasePoint& s, int m);
double partial_casimir_right(const SystemParams& params, const PhasePoint& s, int m);

double extra_integral(const SystemParams& params, const PhasePoint& s, int i);

// The canonical maximal independent set
//   (H, C^(2)..C^(n-1), C_(2)..C_(n), I_extra)
// of 2n-1 values; for n = 1 it degenerates to (H). The extra integral index
// defaults to 1 and is configurable (any I_i works).
std::vector<double> full_integral_set(const SystemParams& params, const PhasePoint& s,
                                      int extra_index = 1);

// --- observables as PhaseFunctions ----------------------------------------

PhaseFunction hamiltonian_function(const SystemParams& params);
PhaseFunction hamiltonian_natural_function(const SystemParams& params);
PhaseFunction j_minus_function(const SystemParams& params);
PhaseFunction j_zero_function(const SystemParams& params);
PhaseFunction j_plus_function(const SystemParams& params);
PhaseFunction casimir_function(const SystemParams& params);
PhaseFunction partial_casimir_left_function(const SystemParams& params, int m);
PhaseFunction partial_casimir_right_function(const SystemParams& params, int m);
PhaseFunction extra_integral_function(const SystemParams& params, int i);

// Matches full_integral_set element by element.
std::vector<PhaseFunction> full_integral_set_functions(const SystemParams& params,
                                                       int extra_index = 1);

// {H, C^(m)}, {H, C_(m)} or {H, I_1..I_n} depending on kind.
std::vector<PhaseFunction> family_functions(const SystemParams& params, FamilyKind kind);
IntegralFamily evaluate_family(const SystemParams& params, const PhasePoint& s, FamilyKind kind);

const char* family_kind_name(FamilyKind kind);

}  // namespace supint
