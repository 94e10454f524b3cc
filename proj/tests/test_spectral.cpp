#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/spectral.hpp"
#include "oracles.hpp"

using namespace hardylab;
using doctest::Approx;

TEST_CASE("reduce_mode") {
  const auto cd = reduce_mode(ModeProblem::critical_disk(std::exp(1.0), 1));
  CHECK(cd.lower == Approx(1.0).epsilon(1e-15));
  CHECK(cd.numerator.kind == Density::Kind::Unit);
  CHECK(cd.potential == 1.0);
  CHECK(cd.denominator.kind == Density::Kind::InverseSquare);

  const auto cd3 = reduce_mode(ModeProblem::critical_disk(2.0, 3));
  CHECK(cd3.potential == 9.0);

  const auto ball = reduce_mode(ModeProblem::classical_ball(3, 1));
  CHECK(ball.numerator.kind == Density::Kind::Exponential);
  CHECK(ball.numerator.rate == 1.0);
  CHECK(ball.potential == 2.0);
  CHECK(ball.known_lower_bound == Approx(2.25));
  CHECK(reduce_mode(ModeProblem::classical_ball(5, 2)).known_lower_bound == Approx(9.0 / 4.0 + 2.0 * 5.0));
  CHECK(reduce_mode(ModeProblem::whole_space(4, 1)).two_sided);

  CHECK_THROWS_AS(reduce_mode(ModeProblem::critical_disk(2.0, 0)), InvalidArgument);
  CHECK_THROWS_WITH_AS(reduce_mode(ModeProblem::critical_disk(0.5, 1)), "a must exceed 1", InvalidArgument);
  CHECK_THROWS_AS(reduce_mode(ModeProblem::critical_disk(1.0, 1)), InvalidArgument);
  CHECK_THROWS_AS(reduce_mode(ModeProblem::classical_ball(2, 1)), InvalidArgument);
}

TEST_CASE("density moments against quadrature") {
  for (const Density d : {Density{Density::Kind::InverseSquare, 0.0}, Density{Density::Kind::Exponential, 1.0},
                          Density{Density::Kind::Exponential, 3.0}}) {
    for (double t1 : {0.01, 1.0, 7.5}) {
      for (double h : {1e-4, 0.01, 0.5}) {
        const auto m = d.moments(t1, h);
        for (int j = 0; j < 3; ++j) {
          // depth 10 is ample here; at depth 20 the tiny j = 2 moments never meet the tolerance
          const double ref = oracle::kronrod([&](double t) { return std::pow(t - t1, j) * d(t); }, t1, t1 + h, 10);
          CHECK(m[j] == Approx(ref).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("P1 Laplacian on (0, pi)") {
  SLProblem1D lap;
  const Grid mesh = build_grid({0.0, std::numbers::pi}, 1001);
  const auto pair = assemble(lap, mesh);
  CHECK(pair.size() == 999);
  const auto e = smallest_eigen(pair);
  CHECK(e.value == Approx(1.0).epsilon(1e-5));
  CHECK(e.value >= 1.0);  // conforming
  CHECK(e.residual <= 1e-10);

  CHECK_THROWS_AS(assemble(lap, build_grid({0.0, 1.0}, 2)), InvalidArgument);
}

TEST_CASE("proportional pair gives its ratio") {
  TridiagPair p;
  p.m_diag = {2.0, 3.0, 4.0};
  p.m_off = {0.5, 0.25};
  for (double v : p.m_diag) p.k_diag.push_back(2.0 * v);
  for (double v : p.m_off) p.k_off.push_back(2.0 * v);
  CHECK(smallest_eigen(p).value == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("critical disk at a = e lies above 5/4 and matches shooting") {
  const auto slp = reduce_mode(ModeProblem::critical_disk(std::exp(1.0), 1));
  const Grid mesh = make_mesh(slp, 41.0, 0.01);
  const auto e = smallest_eigen(assemble(slp, mesh));
  CHECK(e.value >= 1.25);
  const double ref = oracle::critical_disk_shooting(std::exp(1.0), 1, mesh.back());
  CHECK(e.value >= ref * (1.0 - 1e-12));
  CHECK(e.value == Approx(ref).epsilon(1e-4));
}

TEST_CASE("meshes are nested") {
  const auto slp = reduce_mode(ModeProblem::critical_disk(1.1, 1));
  const Grid coarse = make_mesh(slp, 11.0, 0.02);
  const Grid fine = make_mesh(slp, 21.0, 0.01);
  for (double x : coarse.nodes()) {
    const auto it = std::lower_bound(fine.nodes().begin(), fine.nodes().end(), x - 1e-12);
    REQUIRE(it != fine.nodes().end());
    CHECK(*it == Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("sharp constants and trace monotonicity") {
  const auto cd = sharp_constant(ModeProblem::critical_disk(std::exp(1.0)), RefinementPlan{{11, 21, 41}, {0.02, 0.01, 0.005}, 3});
  CHECK(cd.value > 1.25);
  CHECK(cd.one_sided);
  CHECK(cd.trace_monotone);
  CHECK(cd.mode_monotone);
  REQUIRE(cd.mode_values.size() == 3);
  CHECK(cd.mode_values[0] < cd.mode_values[1]);
  for (std::size_t i = 1; i < cd.trace.size(); ++i) CHECK(cd.trace[i].value <= cd.trace[i - 1].value + 1e-10);

  const auto ball = sharp_constant(ModeProblem::classical_ball(3));
  for (const auto& t : ball.trace) CHECK(t.value >= 2.25);
  CHECK(ball.trace_monotone);

  const auto ws = sharp_constant(ModeProblem::whole_space(3));
  for (const auto& t : ws.trace) CHECK(t.value >= 2.25);
  CHECK(ws.trace.back().value < ws.trace.front().value);

  // N = 5: (N-2)^2/4 + N - 1 = 25/4
  const auto b5 = sharp_constant(ModeProblem::classical_ball(5));
  CHECK(b5.value >= 6.25);
  CHECK(b5.value < 6.5);

  CHECK_THROWS_AS(sharp_constant(ModeProblem::critical_disk(2.0), RefinementPlan{{21, 11}, {0.02, 0.01}, 1}),
                  InvalidArgument);
  CHECK_THROWS_AS(sharp_constant(ModeProblem::critical_disk(2.0), RefinementPlan{{11, 21}, {0.01}, 1}),
                  InvalidArgument);
}

TEST_CASE("sweep toward a = 1 decreases and agrees with shooting") {
  double prev = 1e300;
  for (double a : {2.0, 1.5, 1.1, 1.01}) {
    const auto e = sharp_constant(ModeProblem::critical_disk(a));
    CHECK(e.value > 0.25);
    CHECK(e.value < prev);
    prev = e.value;
    const double ref = oracle::critical_disk_shooting(a, 1, e.trace.back().T);
    CHECK(e.value == Approx(ref).epsilon(5e-4));
  }
}

TEST_CASE("L^q quotient upper bound") {
  LqOptions opts;
  const auto near2 = minimize_lq_quotient(std::exp(1.0), 2.0001, opts);
  const auto slp = reduce_mode(ModeProblem::critical_disk(std::exp(1.0), 1));
  const double eig = smallest_eigen(assemble(slp, make_mesh(slp, opts.T, opts.h))).value;
  CHECK(near2.value == Approx(eig).epsilon(1e-2));

  const auto q4 = minimize_lq_quotient(std::exp(1.0), 4.0, opts);
  CHECK(q4.value > 0.0);
  CHECK(std::isfinite(q4.value));
  for (std::size_t i = 1; i < q4.objective.size(); ++i) CHECK(q4.objective[i] < q4.objective[i - 1]);

  LqOptions scaled = opts;
  scaled.init = [](double t) { return 10.0 * (t - 1.0) * std::exp(-(t - 1.0)); };
  CHECK(minimize_lq_quotient(std::exp(1.0), 4.0, scaled).value == Approx(q4.value).epsilon(1e-6));

  LqOptions other = opts;
  other.init = [](double t) { return (t - 1.0) * std::exp(-0.3 * (t - 1.0)); };
  CHECK(minimize_lq_quotient(std::exp(1.0), 4.0, other).value == Approx(q4.value).epsilon(1e-4));

  CHECK_THROWS_AS(minimize_lq_quotient(std::exp(1.0), 2.0, opts), InvalidArgument);
  CHECK_THROWS_AS(minimize_lq_quotient(0.9, 4.0, opts), InvalidArgument);
}

TEST_CASE("cos power integral") {
  CHECK(cos_power_integral(2.0) == Approx(std::numbers::pi).epsilon(1e-14));
  const double ref = oracle::kronrod([](double t) { return std::pow(std::abs(std::cos(t)), 3.3); }, 0.0, 2.0 * std::numbers::pi);
  CHECK(cos_power_integral(3.3) == Approx(ref).epsilon(1e-12));
}
