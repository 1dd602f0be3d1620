#include <cmath>
#include <vector>

#include "doctest.h"
#include "supint/algebra.hpp"
#include "supint/poisson.hpp"

using namespace supint;

namespace {

SystemParams params3() { return SystemParams::make(3, 1.0, 1.0, {1.0, 0.5, 2.0}); }

PhaseFunction coordinate(int index, const char* label) {
  return PhaseFunction(label, [index]<class T>(std::span<const T> z) {
    return z[static_cast<std::size_t>(index)];
  });
}

}  // namespace

TEST_CASE("dual gradient vs finite differences for H") {
  const SystemParams params = params3();
  const PhaseFunction h = hamiltonian_function(params);
  StateSampler sampler(params, 17);
  for (int k = 0; k < 20; ++k) {
    const PhasePoint s = sampler.next();
    const std::vector<double> ad = gradient(h, s);
    const std::vector<double> fd = gradient_fd(h, s);
    for (std::size_t i = 0; i < ad.size(); ++i)
      CHECK(std::abs(ad[i] - fd[i]) < 1e-6 * std::max(1.0, std::abs(ad[i])));
  }
}

TEST_CASE("gradient of simple observables") {
  const SystemParams params = params3();
  const PhaseFunction jm = j_minus_function(params);
  const PhasePoint s{{1.0, -0.5, 2.0}, {0.3, 0.4, -0.2}};
  const std::vector<double> grad = gradient(jm, s);
  for (int i = 0; i < 3; ++i) {
    CHECK(grad[static_cast<std::size_t>(i)] == doctest::Approx(2.0 * s.q[static_cast<std::size_t>(i)]));
    CHECK(grad[static_cast<std::size_t>(i) + 3] == 0.0);
  }

  const PhaseFunction constant("one", []<class T>(std::span<const T>) { return T(1.0); });
  for (double v : gradient(constant, s)) CHECK(v == 0.0);
}

TEST_CASE("gradient refuses states too close to the singular set") {
  const SystemParams params = params3();
  const PhaseFunction h = hamiltonian_function(params);
  const PhasePoint close{{1e-7, 1.0, 1.0}, {0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(gradient(h, close), NumericalError);
  // Singular-direction guard only applies where b_i > 0.
  const SystemParams free_dir = SystemParams::make(3, 1.0, 1.0, {0.0, 0.5, 2.0});
  const PhaseFunction h2 = hamiltonian_function(free_dir);
  CHECK_NOTHROW(gradient(h2, close));
}

TEST_CASE("canonical bracket relations") {
  const SystemParams params = params3();
  StateSampler sampler(params, 23);
  const PhasePoint s = sampler.next();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const PhaseFunction qi = coordinate(i, "q");
      const PhaseFunction pj = coordinate(3 + j, "p");
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(poisson_bracket(qi, pj, s) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("bracket of J_0 and J_+ at the worked state") {
  const SystemParams params = SystemParams::make(2, 1.0, 1.0, {1.0, 1.0});
  const PhasePoint s{{1.0, 1.0}, {1.0, -1.0}};
  const double bracket = poisson_bracket(j_zero_function(params), j_plus_function(params), s);
  CHECK(bracket == doctest::Approx(8.0).epsilon(1e-14));  // 2 J_+ with J_+ = 4
}

TEST_CASE("bracket antisymmetry and bilinearity") {
  const SystemParams params = params3();
  const PhaseFunction h = hamiltonian_function(params);
  const PhaseFunction c = casimir_function(params);
  const PhaseFunction i2 = extra_integral_function(params, 2);
  StateSampler sampler(params, 29);
  for (int k = 0; k < 25; ++k) {
    const PhasePoint s = sampler.next();
    const double fg = poisson_bracket(h, c, s);
    const double gf = poisson_bracket(c, h, s);
    CHECK(std::abs(fg + gf) < 1e-12 * std::max(1.0, std::abs(fg)));

    const PhaseFunction combo = linear_combination(2.5, h, -1.25, i2);
    const double lhs = poisson_bracket(combo, c, s);
    const double rhs = 2.5 * fg - 1.25 * poisson_bracket(i2, c, s);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("jacobi identity for the sl2 triple") {
  const SystemParams params = params3();
  const PhaseFunction jm = j_minus_function(params);
  const PhaseFunction j0 = j_zero_function(params);
  const PhaseFunction jp = j_plus_function(params);
  StateSampler sampler(params, 31);
  for (int k = 0; k < 20; ++k) {
    const PhasePoint s = sampler.next();
    const double cyc = poisson_bracket(jm, bracket_function(j0, jp), s) +
                       poisson_bracket(j0, bracket_function(jp, jm), s) +
                       poisson_bracket(jp, bracket_function(jm, j0), s);
    CHECK(std::abs(cyc) < 1e-8);
  }
}

TEST_CASE("extra integrals commute pairwise") {
  const SystemParams params = params3();
  std::vector<PhaseFunction> integrals;
  for (int i = 1; i <= 3; ++i) integrals.push_back(extra_integral_function(params, i));
  StateSampler sampler(params, 37);
  for (int k = 0; k < 100; ++k) {
    const PhasePoint s = sampler.next();
    for (std::size_t a = 0; a < integrals.size(); ++a)
      for (std::size_t b = a + 1; b < integrals.size(); ++b)
        CHECK(std::abs(poisson_bracket(integrals[a], integrals[b], s)) < 1e-9);
  }
}

TEST_CASE("every member of the full set commutes with H") {
  const SystemParams params = params3();
  const PhaseFunction h = hamiltonian_function(params);
  const std::vector<PhaseFunction> set = full_integral_set_functions(params);
  StateSampler sampler(params, 41);
  for (int k = 0; k < 100; ++k) {
    const PhasePoint s = sampler.next();
    for (const PhaseFunction& f : set) CHECK(std::abs(poisson_bracket(h, f, s)) < 1e-9);
  }
}

TEST_CASE("involution report for the three families") {
  const SystemParams params = params3();
  for (FamilyKind kind :
       {FamilyKind::left_casimirs, FamilyKind::right_casimirs, FamilyKind::extra_integrals}) {
    const std::vector<PhaseFunction> family = family_functions(params, kind);
    const BracketReport report = involution_report(family, params, 50, 1e-9, 42);
    CHECK(report.pass);
    CHECK(report.max_abs < 1e-9);
    CHECK(report.seed == 42);
  }

  // Cross-family pairs are informational: the bracket need not vanish.
  const PhaseFunction i1 = extra_integral_function(params, 1);
  const PhaseFunction cl2 = partial_casimir_left_function(params, 2);
  const std::vector<PhaseFunction> cross{i1, cl2};
  const BracketReport cross_report = involution_report(cross, params, 10, 1e-9, 42);
  CHECK(cross_report.pairs.size() == 1);
  CHECK(std::isfinite(cross_report.max_abs));
}

TEST_CASE("involution report detects a corrupted integral") {
  const SystemParams params = params3();
  std::vector<PhaseFunction> family = family_functions(params, FamilyKind::extra_integrals);
  const PhaseFunction q1("q1", []<class T>(std::span<const T> z) { return z[0]; });
  family[1] = linear_combination(1.0, family[1], 1.0, q1);  // I_1 + q_1
  const BracketReport report = involution_report(family, params, 20, 1e-9, 42);
  CHECK_FALSE(report.pass);
}

TEST_CASE("independence rank of the full set") {
  const SystemParams params2 = SystemParams::make(2, 1.0, 1.0, {1.0, 1.0});
  StateSampler sampler(params2, 43);
  const PhasePoint s = sampler.next();
  const std::vector<PhaseFunction> set = full_integral_set_functions(params2);
  CHECK(independence_rank(set, s) == 3);

  std::vector<PhaseFunction> enlarged = set;
  enlarged.push_back(extra_integral_function(params2, 2));
  CHECK(independence_rank(enlarged, s) == 3);
}

TEST_CASE("rank of a dependent pair is one") {
  const SystemParams params = params3();
  const PhaseFunction h = hamiltonian_function(params);
  const PhaseFunction two_h = linear_combination(2.0, h, 0.0, h);
  StateSampler sampler(params, 47);
  const PhasePoint s = sampler.next();
  const std::vector<PhaseFunction> family{h, two_h};
  CHECK(independence_rank(family, s) == 1);
}

TEST_CASE("state sampler is reproducible and respects barriers") {
  const SystemParams params = params3();
  StateSampler a(params, 99), b(params, 99);
  for (int k = 0; k < 10; ++k) {
    const PhasePoint sa = a.next();
    const PhasePoint sb = b.next();
    for (std::size_t i = 0; i < sa.q.size(); ++i) {
      CHECK(sa.q[i] == sb.q[i]);
      CHECK(sa.p[i] == sb.p[i]);
      CHECK(sa.q[i] >= 0.2);  // all b_i > 0 here, so signs stay positive
      CHECK(sa.q[i] <= 2.0);
      CHECK(std::abs(sa.p[i]) <= 2.0);
    }
  }
}
