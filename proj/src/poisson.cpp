#include "supint/poisson.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace supint {

namespace {

void check_singularity_distance(const PhaseFunction& f, std::span<const double> z) {
  const auto& mask = f.singular_q();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] && std::abs(z[i]) < 1e-6)
      throw NumericalError("gradient of " + f.name() + ": |q[" + std::to_string(i) +
                           "]| < 1e-6 is too close to the singular set");
  }
}

// Gradient at scalar level T by seeding Dual<T> coordinates one at a time.
template <class T>
std::vector<T> gradient_t(const PhaseFunction& f, std::span<const T> z) {
  const std::size_t dim = z.size();
  std::vector<Dual<T>> zd(dim);
  for (std::size_t j = 0; j < dim; ++j) zd[j] = Dual<T>(z[j], T(0.0));
  std::vector<T> grad(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    zd[k].b = T(1.0);
    grad[k] = f(std::span<const Dual<T>>(zd)).b;
    zd[k].b = T(0.0);
  }
  return grad;
}

template <class T>
T bracket_eval_t(const PhaseFunction& f, const PhaseFunction& g, std::span<const T> z) {
  const std::vector<T> gf = gradient_t<T>(f, z);
  const std::vector<T> gg = gradient_t<T>(g, z);
  const std::size_t n = z.size() / 2;
  T acc(0.0);
  for (std::size_t i = 0; i < n; ++i)
    acc += gf[i] * gg[n + i] - gf[n + i] * gg[i];
  return acc;
}

struct BracketModel final : PhaseFunction::EvalConcept {
  PhaseFunction f, g;
  BracketModel(PhaseFunction f_, PhaseFunction g_) : f(std::move(f_)), g(std::move(g_)) {}
  double eval(std::span<const double> z) const override { return bracket_eval_t<double>(f, g, z); }
  Dual1 eval(std::span<const Dual1> z) const override { return bracket_eval_t<Dual1>(f, g, z); }
  Dual2 eval(std::span<const Dual2>) const override {
    throw std::logic_error("bracket functions support at most one level of nesting");
  }
};

}  // namespace

std::vector<double> gradient(const PhaseFunction& f, const PhasePoint& s) {
  const std::vector<double> z = pack_state(s);
  check_singularity_distance(f, z);
  return gradient_t<double>(f, z);
}

std::vector<double> gradient_fd(const PhaseFunction& f, const PhasePoint& s) {
  std::vector<double> z = pack_state(s);
  check_singularity_distance(f, z);
  const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  std::vector<double> grad(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double h = cbrt_eps * std::max(1.0, std::abs(z[k]));
    const double saved = z[k];
    z[k] = saved + h;
    const double fp = f(std::span<const double>(z));
    z[k] = saved - h;
    const double fm = f(std::span<const double>(z));
    z[k] = saved;
    grad[k] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& s) {
  const std::vector<double> z = pack_state(s);
  check_singularity_distance(f, z);
  check_singularity_distance(g, z);
  return bracket_eval_t<double>(f, g, z);
}

PhaseFunction bracket_function(const PhaseFunction& f, const PhaseFunction& g) {
  std::vector<bool> mask = f.singular_q();
  const auto& m2 = g.singular_q();
  if (mask.size() < m2.size()) mask.resize(m2.size(), false);
  for (std::size_t i = 0; i < m2.size(); ++i)
    if (m2[i]) mask[i] = true;
  return PhaseFunction::from_impl("{" + f.name() + "," + g.name() + "}", std::move(mask),
                                  std::make_shared<const BracketModel>(f, g));
}

StateSampler::StateSampler(SystemParams params, std::uint64_t seed)
    : params_(std::move(params)), rng_(seed) {}

double StateSampler::uniform01() {
  // 53 top bits of the generator output, exactly reproducible everywhere.
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

PhasePoint StateSampler::next() {
  const auto n = static_cast<std::size_t>(params_.n);
  PhasePoint s;
  s.q.resize(n);
  s.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double qi = 0.2 + 1.8 * uniform01();
    if (params_.b[i] == 0.0 && uniform01() < 0.5) qi = -qi;
    s.q[i] = qi;
  }
  for (std::size_t i = 0; i < n; ++i) s.p[i] = -2.0 + 4.0 * uniform01();
  return s;
}

BracketReport involution_report(std::span<const PhaseFunction> family, const SystemParams& params,
                                int n_samples, double tol, std::uint64_t seed) {
  BracketReport report;
  report.tol = tol;
  report.seed = seed;
  for (const auto& f : family) report.names.push_back(f.name());

  StateSampler sampler(params, seed);
  for (int k = 0; k < n_samples; ++k) report.sample_states.push_back(sampler.next());

  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      BracketPair pair{family[i].name(), family[j].name(), 0.0};
      for (const auto& s : report.sample_states) {
        const double v = std::abs(poisson_bracket(family[i], family[j], s));
        if (v > pair.max_abs) pair.max_abs = v;
      }
      report.max_abs = std::max(report.max_abs, pair.max_abs);
      report.pairs.push_back(std::move(pair));
    }
  }
  report.pass = report.max_abs < tol;
  return report;
}

int independence_rank(std::span<const PhaseFunction> family, const PhasePoint& s, double tol) {
  if (family.empty()) return 0;
  const auto rows = static_cast<Eigen::Index>(family.size());
  const auto cols = static_cast<Eigen::Index>(s.q.size() + s.p.size());
  Eigen::MatrixXd jac(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::vector<double> grad = gradient(family[static_cast<std::size_t>(r)], s);
    for (Eigen::Index c = 0; c < cols; ++c) jac(r, c) = grad[static_cast<std::size_t>(c)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double cutoff = tol * sigma(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++rank;
  return rank;
}

}  // namespace supint
