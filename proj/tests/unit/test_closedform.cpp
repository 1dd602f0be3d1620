#include <cmath>
#include <vector>

#include "doctest.h"
#include "supint/algebra.hpp"
#include "supint/closedform.hpp"
#include "supint/dynamics.hpp"
#include "supint/poisson.hpp"

using namespace supint;

namespace {

SystemParams worked_params() { return SystemParams::make(2, 1.0, 1.0, {1.0, 1.0}); }
PhasePoint worked_state() { return PhasePoint{{1.0, 1.0}, {1.0, -1.0}}; }

OrbitConstants worked_orbit() { return constants_from_state(worked_params(), worked_state(), 0.0); }

double state_distance(const PhasePoint& a, const PhasePoint& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.q.size(); ++i) {
    m = std::max(m, std::abs(a.q[i] - b.q[i]));
    m = std::max(m, std::abs(a.p[i] - b.p[i]));
  }
  return m;
}

// Draws states with E > 0.05 (and away from coordinate turning points, where
// nothing special is required but conditioning is poorest).
PhasePoint positive_energy_state(const SystemParams& params, StateSampler& sampler) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const PhasePoint s = sampler.next();
    if (2.0 * hamiltonian(params, s) > 0.05) return s;
  }
  throw std::runtime_error("no positive-energy state found");
}

}  // namespace

TEST_CASE("worked orbit constants") {
  const OrbitConstants oc = worked_orbit();
  CHECK(oc.energy == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(oc.casimir == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(oc.alpha == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(oc.gamma == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(oc.tau == doctest::Approx(0.0).epsilon(1e-12));
  const double half_sqrt5 = std::sqrt(5.0) / 2.0;
  for (int i = 0; i < 2; ++i) {
    CHECK(oc.alpha_i[static_cast<std::size_t>(i)] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(oc.gamma_i[static_cast<std::size_t>(i)] == doctest::Approx(half_sqrt5).epsilon(1e-12));
    CHECK(std::cosh(oc.phi_i[static_cast<std::size_t>(i)]) ==
          doctest::Approx(3.0 / std::sqrt(5.0)).epsilon(1e-12));
  }
  // cosh phi = 3/sqrt(5) and gamma_i sinh phi_i = -+1 pin phi = +-ln(5)/2;
  // q_1 p_1 > 0 selects the positive root for the first coordinate.
  CHECK(oc.phi_i[0] == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-12));
  CHECK(oc.phi_i[1] == doctest::Approx(-0.5 * std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("unsupported regimes are rejected") {
  // p = 0, b = 0, omega > 0 has E = -c/x0 < 0.
  const SystemParams params = SystemParams::make(2, 1.0, 1.0, {0.0, 0.0});
  const PhasePoint rest{{0.5, 0.4}, {0.0, 0.0}};
  CHECK_THROWS_AS(constants_from_state(params, rest, 0.0), UnsupportedRegimeError);

  // c = 0 (omega = 0) is out of scope even with E > 0.
  const SystemParams geo = SystemParams::make(2, 1.0, 0.0, {0.0, 0.0});
  const PhasePoint moving{{0.5, 0.4}, {1.0, -0.5}};
  CHECK(hamiltonian(geo, moving) > 0.0);
  CHECK_THROWS_AS(constants_from_state(geo, moving, 0.0), UnsupportedRegimeError);
}

TEST_CASE("compatibility conditions hold for random positive-energy states") {
  const SystemParams params = SystemParams::make(3, 1.0, 1.0, {1.0, 0.0, 0.5});
  StateSampler sampler(params, 61);
  for (int k = 0; k < 50; ++k) {
    const PhasePoint s = positive_energy_state(params, sampler);
    const OrbitConstants oc = constants_from_state(params, s, 0.0);

    double sum_alpha = 0.0, sum_cosh = 0.0, sum_sinh = 0.0;
    for (std::size_t i = 0; i < oc.alpha_i.size(); ++i) {
      sum_alpha += oc.alpha_i[i];
      sum_cosh += oc.gamma_i[i] * std::cosh(oc.phi_i[i]);
      sum_sinh += oc.gamma_i[i] * std::sinh(oc.phi_i[i]);
    }
    CHECK(std::abs(sum_alpha + params.kappa - oc.alpha) < 1e-10);
    CHECK(std::abs(sum_cosh - oc.gamma) < 1e-10);
    CHECK(std::abs(sum_sinh) < 1e-10);
    // E recovered from the alpha_i.
    CHECK(std::abs(-params.c / (params.kappa + 2.0 * sum_alpha) - oc.energy) < 1e-12);
  }
}

TEST_CASE("time of radius on the worked orbit") {
  const OrbitConstants oc = worked_orbit();
  CHECK(time_of_radius(oc, 3.0, Branch::outgoing) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(time_of_radius(oc, 3.0, Branch::incoming) == doctest::Approx(0.0).epsilon(1e-14));
  const double t6 = std::sqrt(27.0) / 2.0;
  CHECK(time_of_radius(oc, 6.0, Branch::outgoing) == doctest::Approx(t6).epsilon(1e-14));
  CHECK(time_of_radius(oc, 6.0, Branch::incoming) == doctest::Approx(-t6).epsilon(1e-14));
  CHECK_THROWS_AS(time_of_radius(oc, 2.5, Branch::outgoing), DomainError);

  // Strict monotonicity on a grid.
  double prev = time_of_radius(oc, 3.0, Branch::outgoing);
  for (double x = 3.1; x < 40.0; x += 0.7) {
    const double t = time_of_radius(oc, x, Branch::outgoing);
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("radius of time inverts the time-radius relation") {
  const OrbitConstants oc = worked_orbit();
  CHECK(radius_of_time(oc, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(radius_of_time(oc, std::sqrt(27.0) / 2.0) == doctest::Approx(6.0).epsilon(1e-10));

  // Round trip over a log grid up to alpha + gamma + 1e3 on both branches.
  for (double offset = 1e-6; offset <= 1.0e3; offset *= 10.0) {
    const double x = oc.alpha + oc.gamma + offset;
    for (Branch branch : {Branch::outgoing, Branch::incoming}) {
      const double t = time_of_radius(oc, x, branch);
      CHECK(std::abs(radius_of_time(oc, t) - x) < 1e-10 * std::max(1.0, x));
    }
  }
}

TEST_CASE("coords of radius reproduce the worked anchor") {
  const OrbitConstants oc = worked_orbit();
  const std::vector<double> q = coords_of_radius(oc, 3.0, Branch::outgoing);
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("squared coordinates sum to the radius") {
  const OrbitConstants oc = worked_orbit();
  for (double x = 3.0; x < 200.0; x *= 1.7) {
    for (Branch branch : {Branch::outgoing, Branch::incoming}) {
      const std::vector<double> q = coords_of_radius(oc, x, branch);
      double sum = oc.kappa;
      for (double v : q) sum += v * v;
      CHECK(std::abs(sum - x) < 1e-10 * std::max(1.0, x));
    }
  }
}

TEST_CASE("expanded form of the coordinate solution") {
  // Q_i = alpha_i + gamma_i cosh phi_i (x-alpha)/gamma
  //       +- gamma_i sinh phi_i |1 - ((x-alpha)/gamma)^2|^(1/2),
  // the cosh-addition expansion with the sign tracking the branch.
  const OrbitConstants oc = worked_orbit();
  for (double x : {3.0, 4.5, 9.0, 50.0}) {
    const double w = (x - oc.alpha) / oc.gamma;
    const double root = std::sqrt(std::abs(1.0 - w * w));
    for (Branch branch : {Branch::outgoing, Branch::incoming}) {
      const double sign = branch == Branch::outgoing ? 1.0 : -1.0;
      const std::vector<double> q = coords_of_radius(oc, x, branch);
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double expanded = oc.alpha_i[i] + oc.gamma_i[i] * std::cosh(oc.phi_i[i]) * w +
                                sign * oc.gamma_i[i] * std::sinh(oc.phi_i[i]) * root;
        CHECK(q[i] * q[i] == doctest::Approx(expanded).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("asymptotic direction of the coordinates") {
  const OrbitConstants oc = worked_orbit();
  const double x = 1e6;
  const std::vector<double> q_out = coords_of_radius(oc, x, Branch::outgoing);
  for (std::size_t i = 0; i < 2; ++i) {
    const double expected = oc.gamma_i[i] *
                            (std::cosh(oc.phi_i[i]) + std::sinh(oc.phi_i[i])) / oc.gamma;
    CHECK(q_out[i] * q_out[i] / x == doctest::Approx(expected).epsilon(1e-5));
  }
  const std::vector<double> q_in = coords_of_radius(oc, x, Branch::incoming);
  for (std::size_t i = 0; i < 2; ++i) {
    const double expected = oc.gamma_i[i] *
                            (std::cosh(oc.phi_i[i]) - std::sinh(oc.phi_i[i])) / oc.gamma;
    CHECK(q_in[i] * q_in[i] / x == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("inconsistent constants are caught") {
  OrbitConstants bad;
  bad.energy = 1.0;
  bad.casimir = 1.0;
  bad.alpha = 0.0;
  bad.gamma = 1.0;
  bad.tau = 0.0;
  bad.kappa = 1.0;
  bad.c = 1.0;
  bad.alpha_i = {-5.0};
  bad.gamma_i = {1.0};  // Q = -5 + cosh(u) < 0 near the pericenter
  bad.phi_i = {0.0};
  bad.signs = {1};
  bad.crossing = {false};
  CHECK_THROWS_AS(coords_of_radius(bad, 1.5, Branch::outgoing), DomainError);
}

TEST_CASE("closed-form trajectory reproduces the anchor state") {
  const std::vector<double> times{0.0};
  const Trajectory traj = trajectory_closed_form(worked_params(), worked_state(), times);
  CHECK(state_distance(traj.states[0], worked_state()) < 1e-10);
}

TEST_CASE("closed form matches the symplectic integrator on the worked orbit") {
  const SystemParams params = worked_params();
  const double h = 1e-4;
  const Trajectory numeric = integrate(params, worked_state(), 10.0, h);
  const Trajectory exact = trajectory_closed_form(params, worked_state(), numeric.times);
  double max_dq = 0.0, max_dp = 0.0;
  for (std::size_t k = 0; k < numeric.states.size(); ++k) {
    for (std::size_t i = 0; i < 2; ++i) {
      max_dq = std::max(max_dq, std::abs(numeric.states[k].q[i] - exact.states[k].q[i]));
      max_dp = std::max(max_dp, std::abs(numeric.states[k].p[i] - exact.states[k].p[i]));
    }
  }
  CHECK(max_dq < 1e-6);
  CHECK(max_dp < 1e-6);
}

TEST_CASE("integrals are constant along the closed-form trajectory") {
  const SystemParams params = worked_params();
  const std::vector<double> times = sample_times(10.0, 1e-2);
  const Trajectory traj = trajectory_closed_form(params, worked_state(), times);
  const std::vector<PhaseFunction> set = full_integral_set_functions(params);
  const DriftReport report = drift_report(traj, set, 1e-9);
  for (const auto& entry : report.entries) CHECK(entry.max_rel_drift < 1e-9);
}

TEST_CASE("radial equation residual along the closed-form trajectory") {
  // x^2 xdot^2 = 4E[(x-alpha)^2 - gamma^2] with xdot by centered differences;
  // the dense grid keeps the differencing error at O(h^2) ~ 4e-10.
  const SystemParams params = worked_params();
  const OrbitConstants oc = worked_orbit();
  for (double t_center : {0.01, 1.5}) {
    const double h = 1e-5;
    std::vector<double> times;
    for (int k = -1000; k <= 1000; ++k) times.push_back(t_center + k * h);
    const Trajectory traj = trajectory_closed_form(params, worked_state(), times);
    std::vector<double> x;
    for (const auto& s : traj.states) x.push_back(params.kappa + dot<double>(s.q, s.q));
    for (std::size_t k = 1; k + 1 < x.size(); ++k) {
      const double xdot = (x[k + 1] - x[k - 1]) / (2.0 * h);
      const double lhs = x[k] * x[k] * xdot * xdot;
      const double rhs = 4.0 * oc.energy *
                         ((x[k] - oc.alpha) * (x[k] - oc.alpha) - oc.gamma * oc.gamma);
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("constants computed on the incoming branch close the orbit") {
  const SystemParams params = worked_params();
  const OrbitConstants oc = worked_orbit();
  const PhasePoint past = state_at_time(oc, -1.0);
  CHECK(dot<double>(past.q, past.p) < 0.0);  // incoming

  const OrbitConstants oc2 = constants_from_state(params, past, -1.0);
  CHECK(oc2.tau == doctest::Approx(0.0).epsilon(1e-10));
  const PhasePoint back = state_at_time(oc2, 0.0);
  CHECK(state_distance(back, worked_state()) < 1e-9);
}

TEST_CASE("coordinates with b = 0 cross the origin") {
  const SystemParams params = SystemParams::make(2, 1.0, 1.0, {0.0, 0.0});
  const PhasePoint s0{{1.0, 0.5}, {-1.2, 0.8}};
  REQUIRE(2.0 * hamiltonian(params, s0) > 0.0);

  const double h = 1e-4;
  const Trajectory numeric = integrate(params, s0, 5.0, h);
  const Trajectory exact = trajectory_closed_form(params, s0, numeric.times);
  double max_dq = 0.0;
  for (std::size_t k = 0; k < numeric.states.size(); ++k)
    for (std::size_t i = 0; i < 2; ++i)
      max_dq = std::max(max_dq, std::abs(numeric.states[k].q[i] - exact.states[k].q[i]));
  CHECK(max_dq < 1e-6);

  // q_1 starts positive with negative velocity and I_1 > 0: it must cross.
  bool crossed = false;
  for (const auto& s : exact.states) crossed = crossed || s.q[0] < 0.0;
  CHECK(crossed);
}

TEST_CASE("closed-form states away from the anchor are genuine phase points") {
  const SystemParams params = worked_params();
  const OrbitConstants oc = worked_orbit();
  const PhasePoint far = state_at_time(oc, 7.3);
  // H evaluated at the reconstructed state reproduces E/2.
  CHECK(hamiltonian(params, far) == doctest::Approx(oc.energy / 2.0).epsilon(1e-10));
  CHECK(casimir(params, far) == doctest::Approx(oc.casimir).epsilon(1e-10));
}
