#include "supint/algebra.hpp"

#include <stdexcept>
#include <string>

namespace supint {

namespace {

void check_m(const SystemParams& params, int m) {
  if (m <= 1 || m > params.n)
    throw ValidationError("partial Casimir index m = " + std::to_string(m) +
                          " outside (1, n] with n = " + std::to_string(params.n));
}

void check_i(const SystemParams& params, int i) {
  if (i < 1 || i > params.n)
    throw ValidationError("integral index i = " + std::to_string(i) + " outside [1, n]");
}

std::vector<bool> singular_mask(const SystemParams& params) {
  std::vector<bool> mask(static_cast<std::size_t>(params.n), false);
  for (int i = 0; i < params.n; ++i)
    mask[static_cast<std::size_t>(i)] = params.b[static_cast<std::size_t>(i)] > 0.0;
  return mask;
}

std::vector<bool> singular_mask_range(const SystemParams& params, int first, int last) {
  std::vector<bool> mask(static_cast<std::size_t>(params.n), false);
  for (int i = first; i < last; ++i)
    mask[static_cast<std::size_t>(i)] = params.b[static_cast<std::size_t>(i)] > 0.0;
  return mask;
}

template <class T>
std::pair<std::span<const T>, std::span<const T>> split(const SystemParams& params,
                                                        std::span<const T> z) {
  const auto n = static_cast<std::size_t>(params.n);
  return {z.subspan(0, n), z.subspan(n, n)};
}

}  // namespace

SL2Generators realize_sl2(const SystemParams& params, const PhasePoint& s) {
  validate_state(params, s);
  SL2Generators g;
  g.j_minus = dot<double>(s.q, s.q);
  g.j_zero = dot<double>(s.q, s.p);
  g.j_plus = j_plus_eval<double>(params, s.q, s.p);
  return g;
}

double casimir(const SystemParams& params, const PhasePoint& s) {
  validate_state(params, s);
  return casimir_eval<double>(params, s.q, s.p);
}

double partial_casimir_left(const SystemParams& params, const PhasePoint& s, int m) {
  check_m(params, m);
  validate_state(params, s);
  return partial_casimir_eval<double>(params, s.q, s.p, 0, m);
}

double partial_casimir_right(const SystemParams& params, const PhasePoint& s, int m) {
  check_m(params, m);
  validate_state(params, s);
  return partial_casimir_eval<double>(params, s.q, s.p, params.n - m, params.n);
}

double extra_integral(const SystemParams& params, const PhasePoint& s, int i) {
  check_i(params, i);
  validate_state(params, s);
  return extra_integral_eval<double>(params, s.q, s.p, i);
}

std::vector<double> full_integral_set(const SystemParams& params, const PhasePoint& s,
                                      int extra_index) {
  std::vector<double> values;
  for (const auto& f : full_integral_set_functions(params, extra_index)) values.push_back(f(s));
  return values;
}

PhaseFunction hamiltonian_function(const SystemParams& params) {
  return PhaseFunction("H", singular_mask(params), [params]<class T>(std::span<const T> z) {
    return hamiltonian_eval_z(params, z);
  });
}

PhaseFunction hamiltonian_natural_function(const SystemParams& params) {
  return PhaseFunction("calH", singular_mask(params), [params]<class T>(std::span<const T> z) {
    const auto [q, p] = split(params, z);
    return hamiltonian_natural_eval(params, q, p);
  });
}

PhaseFunction j_minus_function(const SystemParams& params) {
  return PhaseFunction("J_-", [params]<class T>(std::span<const T> z) {
    const auto q = z.subspan(0, static_cast<std::size_t>(params.n));
    return dot(q, q);
  });
}

PhaseFunction j_zero_function(const SystemParams& params) {
  return PhaseFunction("J_0", [params]<class T>(std::span<const T> z) {
    const auto [q, p] = split(params, z);
    return dot(q, p);
  });
}

PhaseFunction j_plus_function(const SystemParams& params) {
  return PhaseFunction("J_+", singular_mask(params), [params]<class T>(std::span<const T> z) {
    const auto [q, p] = split(params, z);
    return j_plus_eval(params, q, p);
  });
}

PhaseFunction casimir_function(const SystemParams& params) {
  return PhaseFunction("C", singular_mask(params), [params]<class T>(std::span<const T> z) {
    const auto [q, p] = split(params, z);
    return casimir_eval(params, q, p);
  });
}

PhaseFunction partial_casimir_left_function(const SystemParams& params, int m) {
  check_m(params, m);
  const std::string name = m == params.n ? "C" : "C^(" + std::to_string(m) + ")";
  return PhaseFunction(name, singular_mask_range(params, 0, m),
                       [params, m]<class T>(std::span<const T> z) {
                         const auto [q, p] = split(params, z);
                         return partial_casimir_eval(params, q, p, 0, m);
                       });
}

PhaseFunction partial_casimir_right_function(const SystemParams& params, int m) {
  check_m(params, m);
  const std::string name = m == params.n ? "C" : "C_(" + std::to_string(m) + ")";
  return PhaseFunction(name, singular_mask_range(params, params.n - m, params.n),
                       [params, m]<class T>(std::span<const T> z) {
                         const auto [q, p] = split(params, z);
                         return partial_casimir_eval(params, q, p, params.n - m, params.n);
                       });
}

PhaseFunction extra_integral_function(const SystemParams& params, int i) {
  check_i(params, i);
  // I_i depends on H, so it inherits every singular direction.
  return PhaseFunction("I_" + std::to_string(i), singular_mask(params),
                       [params, i]<class T>(std::span<const T> z) {
                         const auto [q, p] = split(params, z);
                         return extra_integral_eval(params, q, p, i);
                       });
}

std::vector<PhaseFunction> full_integral_set_functions(const SystemParams& params,
                                                       int extra_index) {
  std::vector<PhaseFunction> set;
  set.push_back(hamiltonian_function(params));
  if (params.n >= 2) {
    check_i(params, extra_index);
    for (int m = 2; m < params.n; ++m) set.push_back(partial_casimir_left_function(params, m));
    for (int m = 2; m <= params.n; ++m) set.push_back(partial_casimir_right_function(params, m));
    set.push_back(extra_integral_function(params, extra_index));
  }
  return set;
}

std::vector<PhaseFunction> family_functions(const SystemParams& params, FamilyKind kind) {
  std::vector<PhaseFunction> family;
  family.push_back(hamiltonian_function(params));
  switch (kind) {
    case FamilyKind::left_casimirs:
      for (int m = 2; m <= params.n; ++m) family.push_back(partial_casimir_left_function(params, m));
      break;
    case FamilyKind::right_casimirs:
      for (int m = 2; m <= params.n; ++m)
        family.push_back(partial_casimir_right_function(params, m));
      break;
    case FamilyKind::extra_integrals:
      for (int i = 1; i <= params.n; ++i) family.push_back(extra_integral_function(params, i));
      break;
  }
  return family;
}

IntegralFamily evaluate_family(const SystemParams& params, const PhasePoint& s, FamilyKind kind) {
  IntegralFamily out;
  out.kind = kind;
  for (const auto& f : family_functions(params, kind)) {
    out.labels.push_back(f.name());
    out.values.push_back(f(s));
  }
  return out;
}

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::left_casimirs:
      return "left-casimirs";
    case FamilyKind::right_casimirs:
      return "right-casimirs";
    case FamilyKind::extra_integrals:
      return "extra-Ii";
  }
  return "unknown";
}

PhaseFunction linear_combination(double a, const PhaseFunction& f1, double b,
                                 const PhaseFunction& f2) {
  std::vector<bool> mask = f1.singular_q();
  const auto& m2 = f2.singular_q();
  if (mask.size() < m2.size()) mask.resize(m2.size(), false);
  for (std::size_t i = 0; i < m2.size(); ++i) if (m2[i]) mask[i] = true;
  return PhaseFunction(
      "(" + std::to_string(a) + "*" + f1.name() + " + " + std::to_string(b) + "*" + f2.name() +
          ")",
      std::move(mask), [a, f1, b, f2]<class T>(std::span<const T> z) {
        return a * f1(z) + b * f2(z);
      });
}

}  // namespace supint
