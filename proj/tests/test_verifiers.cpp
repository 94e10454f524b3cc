#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/verifiers.hpp"
#include "oracles.hpp"

using namespace hardylab;
using doctest::Approx;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("trial seeds and rng are reproducible") {
  CHECK(trial_seed(42, 0) == trial_seed(42, 0));
  CHECK(trial_seed(42, 0) != trial_seed(42, 1));
  CHECK(trial_seed(42, 0) != trial_seed(43, 0));
  TrialRng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  TrialRng c(9);
  for (int i = 0; i < 1000; ++i) {
    const int k = c.integer(1, 3);
    CHECK(k >= 1);
    CHECK(k <= 3);
    const double v = c.log_uniform(1e-3, 1e3);
    CHECK(v >= 1e-3);
    CHECK(v <= 1e3);
  }
  TrialConfig bad;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("interpolation constants") {
  const InterpolationTriple t(1, 2, 3);
  CHECK(t.lambda() == Approx(0.25));
  CHECK(t.D() == Approx(2.0));
  const InterpolationTriple ti(2, 3, inf);
  CHECK(ti.lambda() == Approx(2.0 / 3.0));
  CHECK(ti.D() == Approx(std::cbrt(3.0)));
  // r -> inf limit of the finite-r formulas
  const InterpolationTriple big(2, 3, 1e9);
  CHECK(big.lambda() == Approx(ti.lambda()).epsilon(1e-8));
  CHECK(big.D() == Approx(ti.D()).epsilon(1e-8));
  for (const auto& tr : {InterpolationTriple(1, 2, 3), InterpolationTriple(1.5, 2, 6), InterpolationTriple(2, 3, 50)}) {
    CHECK(tr.lambda() > 0.0);
    CHECK(tr.lambda() < 1.0);
    CHECK(tr.D() >= 1.0);
  }
  CHECK_THROWS_AS(InterpolationTriple(2, 2, 3), InvalidArgument);
  CHECK_THROWS_AS(InterpolationTriple(0.5, 2, 3), InvalidArgument);
  CHECK_THROWS_AS(InterpolationTriple(1, 3, 2), InvalidArgument);
}

TEST_CASE("interpolation on a slab in closed form") {
  // slab (1, V): ||u||_q = V^{1/q}, weak norms V^{1/p}, V^{1/r}
  const double V = 3.0;
  const StepFunction slab({{1.0, V}}, 2);
  const InterpolationTriple t(1.5, 2, 6);
  const auto s = interpolation_sides(slab, t);
  CHECK(s.norm_q == Approx(std::pow(V, 0.5)));
  CHECK(s.weak_p == Approx(std::pow(V, 1.0 / 1.5)));
  CHECK(s.weak_r == Approx(std::pow(V, 1.0 / 6.0)));
  const double lam = t.lambda();
  // the exponents collapse: lam/p + (1 - lam)/r = 1/q
  CHECK(lam / 1.5 + (1 - lam) / 6.0 == Approx(0.5));
  CHECK(s.bound == Approx(t.D() * std::pow(V, 0.5)));
  CHECK(s.norm_q <= s.bound);
  CHECK(std::pow(s.norm_q, 2.0) <= s.optimum);
  CHECK(s.optimum == Approx(std::pow(s.bound, 2.0)).epsilon(1e-12));
}

TEST_CASE("interpolation suite has no violations") {
  TrialConfig cfg;
  cfg.trials = 2000;
  for (const auto& r : run_suite("interpolation", cfg)) {
    CHECK_MESSAGE(r.passed(), r.name);
    CHECK(r.skipped == 0);
  }
}

TEST_CASE("holder failure") {
  const double eps = 0.01;
  // N = 2, q = 3: ||f||_3 = (2 pi / (3 eps))^{1/3}
  const double fq = std::pow(2 * std::numbers::pi / (3 * eps), 1.0 / 3.0);
  const double fg = std::sqrt(2 * std::numbers::pi / (2 * eps));
  const double gw = std::pow(std::numbers::pi, 1.0 / 1.5);
  CHECK(holder_failure_ratio(eps, 2, 1.5, 3.0) == Approx(fg / (fq * gw)).epsilon(1e-14));
  // norm of f by radial quadrature: int_0^1 r^{-alpha q} r dr
  const double alpha = 2.0 / 3.0 - eps;
  const double fq_quad =
      std::pow(2 * std::numbers::pi * oracle::tanh_sinh([&](double r) { return std::pow(r, 1.0 - 3.0 * alpha); }, 0.0, 1.0), 1.0 / 3.0);
  CHECK(fq_quad == Approx(fq).epsilon(1e-8));

  CHECK(holder_failure_ratio(1e-3, 2, 1.5, 3.0) / holder_failure_ratio(1e-2, 2, 1.5, 3.0) ==
        Approx(std::pow(10.0, 0.5 - 1.0 / 3.0)).epsilon(1e-3));
  const std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4};
  CHECK(std::abs(holder_failure_slope(2, 1.5, 3.0, eps_list) - (1.0 / 3.0 - 0.5)) <= 0.05);
  CHECK(std::abs(holder_failure_slope(3, 1.2, 5.0, eps_list) - (1.0 / 5.0 - 0.5)) <= 0.05);

  CHECK_NOTHROW(holder_failure_ratio(0.5, 2, 1.5, 3.0));
  CHECK_THROWS_AS(holder_failure_ratio(0.7, 2, 1.5, 3.0), InvalidArgument);
  CHECK_THROWS_AS(holder_failure_ratio(0.01, 3, 1.5, 7.0), InvalidArgument);
  CHECK_THROWS_AS(holder_failure_ratio(0.01, 2, 2.5, 3.0), InvalidArgument);
}

TEST_CASE("radial pointwise bound") {
  const RadialProfile zero(3, Profile1D([](double) { return 0.0; }, [](double) { return 0.0; }, {0.0, 10.0}));
  const auto z = check_radial_bound(zero, build_grid({0.0, 10.0}, 101));
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);

  const RadialProfile ex(3, Profile1D([](double r) { return std::exp(-r); }, [](double r) { return -std::exp(-r); }, {0.0, 60.0}));
  const auto e = check_radial_bound(ex, build_grid({0.0, 60.0}, 6001));
  // sup r e^{-r} = 1/e at r = 1; ||f||^2 = 4 pi / 4, ||grad f||^2 = 4 pi / 4
  CHECK(e.lhs == Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(e.rhs == Approx(std::sqrt(2.0 / (4 * std::numbers::pi)) * std::sqrt(std::numbers::pi)).epsilon(1e-10));
  CHECK(e.lhs <= e.rhs);

  TrialConfig cfg;
  cfg.trials = 100;
  const auto rep = run_suite("radial-bound", cfg);
  CHECK(rep.front().passed());
}

TEST_CASE("poincare on the circle") {
  const auto c1 = check_poincare_circle({{0, 0}, {1, 0}});
  CHECK(c1.l2 == Approx(std::numbers::pi));
  CHECK(c1.dirichlet == c1.l2);
  CHECK(c1.equality);
  const auto c2 = check_poincare_circle({{0, 0}, {0, 0}, {1, 0}});
  CHECK(c2.dirichlet == Approx(4.0 * c2.l2));
  CHECK_FALSE(c2.equality);
  CHECK_THROWS_AS(check_poincare_circle({{1, 0}, {1, 0}}), InvalidArgument);
}

TEST_CASE("exponent split") {
  const auto a = exponent_split(2, 4);
  CHECK(a.r == Approx(6.0));
  CHECK(a.r_tilde == Approx(4.0));
  const auto b = exponent_split(3, 3);
  CHECK(b.r == Approx(3.5));
  CHECK(b.r_tilde == Approx(2.75));
  const auto c = exponent_split(1.7, 2);
  CHECK(c.r == Approx(2.0));
  CHECK(c.r_tilde == Approx(2.0));
  CHECK_THROWS_AS(exponent_split(1.0, 3), InvalidArgument);
}

TEST_CASE("1D Hardy") {
  const auto zero = check_hardy_1d(Profile1D([](double) { return 0.0; }, [](double) { return 0.0; }, {1.0, 40.0}), 1.0,
                                   build_grid({1.0, 40.0}, 101));
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  const Profile1D f([](double t) { return (t - 1) * std::exp(-t); }, [](double t) { return (2 - t) * std::exp(-t); }, {1.0, 60.0});
  const auto r = check_hardy_1d(f, 1.0, build_grid({1.0, 60.0}, 6001));
  const double lhs = oracle::tanh_sinh([](double t) { return (2 - t) * (2 - t) * std::exp(-2 * t); }, 1.0, 60.0);
  const double rhs = 0.25 * oracle::tanh_sinh([](double t) { return (t - 1) * (t - 1) * std::exp(-2 * t) / (t * t); }, 1.0, 60.0);
  CHECK(r.lhs == Approx(lhs).epsilon(1e-10));
  CHECK(r.rhs == Approx(rhs).epsilon(1e-10));
  CHECK(r.gap > 0.0);

  const Profile1D bad([](double t) { return t; }, [](double) { return 1.0; }, {1.0, 2.0});
  CHECK_THROWS_AS(check_hardy_1d(bad, 1.0, build_grid({1.0, 2.0}, 11)), InvalidArgument);

  TrialConfig cfg;
  cfg.trials = 50;
  const auto rep = run_suite("hardy-1d", cfg).front();
  CHECK(rep.passed());
  // the near-extremal sweep reports a shrinking relative gap
  std::vector<double> gaps;
  for (const auto& [k, v] : rep.metrics) gaps.push_back(v);
  REQUIRE(gaps.size() == 4);
  for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
}

TEST_CASE("polya-szego for piecewise linear profiles") {
  // decreasing profile: symmetrization is the identity
  const auto d = polya_szego_piecewise_linear({0, 0.5, 1, 2}, {2, 1.5, 0.5, 0}, 3);
  CHECK(d.symmetrized_energy == Approx(d.energy).epsilon(1e-10));
  // a tent is strictly improved
  const auto t = polya_szego_piecewise_linear({0, 1, 2}, {0, 1, 0}, 2);
  CHECK(t.symmetrized_energy < t.energy);
  // tent in N = 2: {f > l} has area 4 pi (1 - l), so u#(rho) = 1 - rho^2/4 with energy 2 pi
  CHECK(t.energy == Approx(2 * std::numbers::pi * (0.5 + 1.5)));
  CHECK(t.symmetrized_energy == Approx(2 * std::numbers::pi).epsilon(1e-10));
  CHECK_THROWS_AS(polya_szego_piecewise_linear({0, 1}, {1, 1}, 2), InvalidArgument);

  TrialConfig cfg;
  cfg.trials = 100;
  CHECK(run_suite("polya-szego", cfg).front().passed());
}

TEST_CASE("every suite passes and reports are deterministic") {
  TrialConfig cfg;
  cfg.trials = 100;
  const auto a = run_suite("all", cfg);
  cfg.threads = 4;
  const auto b = run_suite("all", cfg);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == suite_names().size() + 3);  // interpolation runs four triples
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_MESSAGE(a[i].passed(), a[i].name);
    CHECK(a[i].worst == b[i].worst);
  }
  CHECK(to_junit_xml(a) == to_junit_xml(b));
  CHECK(to_junit_xml(a).find("failures=\"0\"") != std::string::npos);
  CHECK_THROWS_AS(run_suite("nope", cfg), InvalidArgument);
}
