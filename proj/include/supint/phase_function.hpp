#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supint/core.hpp"
#include "supint/dual.hpp"

namespace supint {

// A named phase-space observable f(q, p) evaluatable on doubles and on
// (nested) dual numbers, so gradients and second derivatives are exact to
// rounding. `singular_q[i]` marks coordinates where f blows up at q_i = 0
// (the b_i > 0 directions); the gradient engine refuses to differentiate
// too close to that set.
class PhaseFunction {
  struct Concept {
    virtual ~Concept() = default;
    virtual double eval(std::span<const double> z) const = 0;
    virtual Dual1 eval(std::span<const Dual1> z) const = 0;
    virtual Dual2 eval(std::span<const Dual2> z) const = 0;
  };

  template <class F>
  struct Model final : Concept {
    F fn;
    explicit Model(F f) : fn(std::move(f)) {}
    double eval(std::span<const double> z) const override { return fn(z); }
    Dual1 eval(std::span<const Dual1> z) const override { return fn(z); }
    Dual2 eval(std::span<const Dual2> z) const override { return fn(z); }
  };

 public:
  PhaseFunction() = default;

  template <class F>
  PhaseFunction(std::string name, F fn)
      : name_(std::move(name)), impl_(std::make_shared<Model<F>>(std::move(fn))) {}

  template <class F>
  PhaseFunction(std::string name, std::vector<bool> singular_q, F fn)
      : name_(std::move(name)),
        singular_q_(std::move(singular_q)),
        impl_(std::make_shared<Model<F>>(std::move(fn))) {}

  const std::string& name() const { return name_; }
  const std::vector<bool>& singular_q() const { return singular_q_; }

  template <class T>
  T operator()(std::span<const T> z) const {
    return impl_->eval(z);
  }

  double operator()(const PhasePoint& s) const {
    const std::vector<double> z = pack_state(s);
    return impl_->eval(std::span<const double>(z));
  }

  // Escape hatch for implementations that dispatch on the scalar level
  // themselves (the nested-bracket functions do).
  using EvalConcept = Concept;
  static PhaseFunction from_impl(std::string name, std::vector<bool> singular_q,
                                 std::shared_ptr<const Concept> impl) {
    PhaseFunction f;
    f.name_ = std::move(name);
    f.singular_q_ = std::move(singular_q);
    f.impl_ = std::move(impl);
    return f;
  }

 private:
  std::string name_;
  std::vector<bool> singular_q_;
  std::shared_ptr<const Concept> impl_;
};

// f(z) = a * f1(z) + b * f2(z); keeps the union of the singular sets.
PhaseFunction linear_combination(double a, const PhaseFunction& f1, double b,
                                 const PhaseFunction& f2);

}  // namespace supint
