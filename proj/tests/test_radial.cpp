#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/grid.hpp"
#include "hardylab/radial.hpp"
#include "oracles.hpp"

using namespace hardylab;
using doctest::Approx;

namespace {

RadialProfile closed(int dim, std::function<double(double)> f, std::function<double(double)> df, double hi = 1.0) {
  return RadialProfile(dim, Profile1D(std::move(f), std::move(df), {0.0, hi}));
}

}  // namespace

TEST_CASE("build_grid uniform and geometric") {
  const Grid g = build_grid({0.0, 1.0}, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == Approx(0.5).epsilon(1e-15));
  CHECK(g[2] == 1.0);

  const Grid w = build_grid({1.0, 41.0}, 4001);
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] - w[i - 1] == Approx(0.01).epsilon(1e-11));

  const Grid geo = build_grid({0.0, 1.0}, 100, Grading::geometric_low(0.9));
  CHECK(geo.front() > 0.0);
  for (std::size_t i = 0; i + 1 < geo.size(); ++i) CHECK(geo[i] / geo[i + 1] == Approx(0.9).epsilon(1e-12));

  CHECK_THROWS_AS(build_grid({1.0, 1.0}, 5), InvalidArgument);
  CHECK_THROWS_AS(build_grid({0.0, 1.0}, 1), InvalidArgument);
  CHECK_THROWS_AS(build_grid({0.0, 1.0}, 10, Grading::geometric_low(1.5)), InvalidArgument);
}

TEST_CASE("sphere area") {
  CHECK(sphere_area(2) == Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(sphere_area(3) == Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(sphere_area(4) == Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("angular modes") {
  CHECK(AngularMode(0, 3).eigenvalue() == 0.0);
  CHECK(AngularMode(1, 5).eigenvalue() == 4.0);
  CHECK(AngularMode(1, 2).l2_mass() == Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(AngularMode(3, 2).l2_mass() == Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(AngularMode(0, 2).l2_mass() == Approx(2.0 * std::numbers::pi).epsilon(1e-13));
  // |cos 2 theta|^3 over the circle against adaptive quadrature
  const double ref = oracle::kronrod([](double t) { return std::pow(std::abs(std::cos(2 * t)), 3.0); }, 0.0,
                                     2.0 * std::numbers::pi);
  CHECK(AngularMode(2, 2).lq_mass(3.0) == Approx(ref).epsilon(1e-12));
  // x_1 on S^2: int x_1^2 = 4 pi / 3
  CHECK(AngularMode(1, 3).l2_mass() == Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-13));
}

TEST_CASE("integrate closed forms") {
  const auto one = closed(2, [](double) { return 1.0; }, [](double) { return 0.0; });
  CHECK(integrate(one, WeightSpec::plain_mass(), build_grid({0.0, 1.0}, 101)).value == Approx(0.5).epsilon(1e-14));

  const auto lin = closed(3, [](double r) { return r; }, [](double) { return 1.0; });
  CHECK(integrate(lin, WeightSpec::classical_hardy(), build_grid({0.0, 1.0}, 101)).value ==
        Approx(1.0 / 3.0).epsilon(1e-13));

  // integrable log singularity at r = 0: compare on the same span as the oracle
  const auto ramp = closed(2, [](double r) { return 1.0 - r; }, [](double) { return -1.0; });
  const Grid g = log_grid(1e-6, 1.0, 400.0);
  const double got = integrate(ramp, WeightSpec::critical_hardy(std::exp(1.0)), g).value;
  const double ref = oracle::tanh_sinh(
      [](double r) {
        const double l = 1.0 - std::log(r);
        return (1.0 - r) * (1.0 - r) / (r * l * l);
      },
      1e-6, 1.0);
  CHECK(got == Approx(ref).epsilon(1e-8));
}

TEST_CASE("integrate converges at order >= 2 and is quadratic in f") {
  const auto f = closed(3, [](double r) { return std::sin(3 * r) + r * r; }, [](double r) { return 3 * std::cos(3 * r) + 2 * r; });
  const double ref = oracle::kronrod([](double r) { const double v = std::sin(3 * r) + r * r; return v * v * r * r; }, 0.0, 1.0);
  double prev = 0.0;
  for (std::size_t n : {6u, 11u, 21u, 41u}) {
    const double err = std::abs(integrate(f, WeightSpec::plain_mass(), build_grid({0.0, 1.0}, n)).value - ref);
    if (prev > 0.0) CHECK(prev / err >= 3.5);
    prev = err;
  }
  const auto f3 = closed(3, [](double r) { return 3.0 * (std::sin(3 * r) + r * r); }, [](double r) { return 3.0 * (3 * std::cos(3 * r) + 2 * r); });
  const Grid g = build_grid({0.0, 1.0}, 101);
  CHECK(integrate(f3, WeightSpec::plain_mass(), g).value ==
        Approx(9.0 * integrate(f, WeightSpec::plain_mass(), g).value).epsilon(1e-12));
}

TEST_CASE("integrate rejects bad input") {
  const auto nanf = closed(2, [](double r) { return r > 0.5 ? std::nan("") : 1.0; }, [](double) { return 0.0; });
  CHECK_THROWS_AS(integrate(nanf, WeightSpec::plain_mass(), build_grid({0.0, 1.0}, 11)), InvalidArgument);
  // CriticalHardy with a = 1 is singular at r = 1, an interior node once the grid runs past it
  const auto one = closed(2, [](double) { return 1.0; }, [](double) { return 0.0; }, 2.0);
  CHECK_THROWS(integrate(one, WeightSpec::critical_hardy(1.0), build_grid({0.1, 2.0}, 20)));
  CHECK_THROWS_AS(WeightSpec::critical_hardy(2.0).validate(3), InvalidArgument);
  CHECK_THROWS_AS(WeightSpec::critical_hardy(0.5).validate(2), InvalidArgument);
}

TEST_CASE("mode energy") {
  const auto lin2 = closed(2, [](double r) { return r; }, [](double) { return 1.0; });
  CHECK(mode_energy(lin2, AngularMode(1, 2), build_grid({0.0, 1.0}, 51)).value == Approx(1.0).epsilon(1e-13));
  const auto lin3 = closed(3, [](double r) { return r; }, [](double) { return 1.0; });
  CHECK(mode_energy(lin3, AngularMode(0, 3), build_grid({0.0, 1.0}, 51)).value == Approx(1.0 / 3.0).epsilon(1e-13));

  const auto bump = closed(3, [](double r) { return r * (1 - r); }, [](double r) { return 1 - 2 * r; });
  const Grid g = build_grid({0.0, 1.0}, 101);
  double prev = -1.0;
  for (int k = 0; k <= 4; ++k) {
    const double e = mode_energy(bump, AngularMode(k, 3), g).value;
    CHECK(e >= prev);
    prev = e;
  }

  const auto flat = closed(2, [](double) { return 1.0; }, [](double) { return 0.0; });
  CHECK_THROWS_AS(mode_energy(flat, AngularMode(1, 2), build_grid({0.0, 1.0}, 11)), InvalidArgument);
}

TEST_CASE("quadrature keeps order across kinks") {
  // |x - 1/3| has a derivative jump at a node; the kink rule integrates it exactly piecewise
  std::vector<double> nodes;
  for (int i = 0; i <= 30; ++i) nodes.push_back(i / 30.0);
  const double k = 10.0 / 30.0;
  const std::vector<double> kinks{k};
  const auto r = composite_quadrature([&](double x) { return x < k ? (k - x) * (k - x) : 2.0 * (x - k); }, nodes, kinks);
  const double exact = k * k * k / 3.0 + (1.0 - k) * (1.0 - k);
  CHECK(r.value == Approx(exact).epsilon(1e-13));
}

TEST_CASE("profile csv") {
  const auto p = parse_profile_csv("r,value\n0,0\n0.5,0.25\n1,1\n", 2);
  CHECK(p.value(0.5) == Approx(0.25));
  CHECK(p.value(0.75) == Approx(0.5625).epsilon(1e-2));
  CHECK_THROWS_AS(parse_profile_csv("r,value\n0,0\n0,1\n", 2), InvalidArgument);
  CHECK_THROWS_AS(parse_profile_csv("r,value\n0.5,0\n0.2,1\n", 2), InvalidArgument);
  CHECK_THROWS_AS(parse_profile_csv("x,y\n0,0\n1,1\n", 2), InvalidArgument);

  // sampled slopes are second order: x^2 sampled on 21 points
  std::vector<double> x, f;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(i / 20.0);
    f.push_back(x.back() * x.back());
  }
  const auto s = Profile1D::from_samples(x, f);
  CHECK(s.derivative(0.0) == Approx(0.0).epsilon(1e-12));
  CHECK(s.derivative(1.0) == Approx(2.0).epsilon(1e-12));
  CHECK(s.derivative(0.5) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dirichlet validation") {
  const RadialProfile good(2, Profile1D([](double r) { return 1 - r; }, [](double) { return -1.0; }, {0.0, 1.0}), true);
  CHECK_NOTHROW(good.validate_on(build_grid({0.0, 1.0}, 11)));
  const RadialProfile bad(2, Profile1D([](double r) { return 2 - r; }, [](double) { return -1.0; }, {0.0, 1.0}), true);
  CHECK_THROWS_AS(bad.validate_on(build_grid({0.0, 1.0}, 11)), InvalidArgument);
}
