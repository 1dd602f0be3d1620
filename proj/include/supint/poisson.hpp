#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "supint/core.hpp"
#include "supint/phase_function.hpp"

namespace supint {

struct BracketPair {
  std::string f;
  std::string g;
  double max_abs = 0.0;
};

struct BracketReport {
  std::vector<std::string> names;
  std::vector<PhasePoint> sample_states;
  std::vector<BracketPair> pairs;
  double max_abs = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool pass = false;
};

// Exact-to-rounding gradient (df/dq, df/dp) via dual-number forward mode.
// Throws NumericalError when |q_i| < 1e-6 on a direction the function has
// declared singular.
std::vector<double> gradient(const PhaseFunction& f, const PhasePoint& s);

// Central finite differences with step eps^(1/3) * max(1, |z_k|); the
// independent oracle for the dual-number backend.
std::vector<double> gradient_fd(const PhaseFunction& f, const PhasePoint& s);

// {f, g} = df/dq . dg/dp - df/dp . dg/dq.
double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& s);

// {f, g} as a PhaseFunction; supports one level of nesting ({f, {g, h}}),
// enough for Jacobi-identity checks.
PhaseFunction bracket_function(const PhaseFunction& f, const PhaseFunction& g);

// Reproducible test states: q_i uniform in [0.2, 2.0] (sign-randomized only
// where b_i = 0, so barrier directions stay positive), p_i uniform in
// [-2, 2]. The uniform deviates come straight from the mt19937_64 bit
// stream, so a seed pins the sequence on every platform.
class StateSampler {
 public:
  StateSampler(SystemParams params, std::uint64_t seed);
  PhasePoint next();
  const SystemParams& params() const { return params_; }

 private:
  double uniform01();
  SystemParams params_;
  std::mt19937_64 rng_;
};

// All pairwise brackets of `family` at n_samples sampled states; pass iff
// every |{f_i, f_j}| stays below tol.
BracketReport involution_report(std::span<const PhaseFunction> family, const SystemParams& params,
                                int n_samples, double tol, std::uint64_t seed);

// Numerical rank of the (family x 2n) Jacobian by SVD; singular values below
// tol * sigma_max count as zero.
int independence_rank(std::span<const PhaseFunction> family, const PhasePoint& s,
                      double tol = 1e-8);

}  // namespace supint
