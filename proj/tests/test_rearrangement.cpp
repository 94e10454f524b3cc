#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/rearrangement.hpp"
#include "hardylab/verifiers.hpp"

using namespace hardylab;
using doctest::Approx;

namespace {
constexpr double inf = LorentzParams::inf;

StepFunction step(std::vector<StepPiece> p, int dim = 3) { return StepFunction(std::move(p), dim); }
}  // namespace

TEST_CASE("decreasing rearrangement") {
  const auto one = decreasing_rearrangement(step({{1, 2.0}}));
  REQUIRE(one.pieces().size() == 1);
  CHECK(one.pieces()[0].value == 1.0);
  CHECK(one.pieces()[0].measure == 2.0);

  const auto s = decreasing_rearrangement(step({{1, 1.0}, {3, 0.5}, {2, 0.25}}));
  REQUIRE(s.pieces().size() == 3);
  CHECK(s.pieces()[0].value == 3.0);
  CHECK(s.pieces()[1].value == 2.0);
  CHECK(s.pieces()[2].value == 1.0);
  CHECK(s.pieces()[1].measure == 0.25);
  CHECK(s.canonical());

  const auto merged = decreasing_rearrangement(step({{2, 1.0}, {1, 1.0}, {2, 0.5}}));
  REQUIRE(merged.pieces().size() == 2);
  CHECK(merged.pieces()[0].measure == 1.5);

  CHECK_THROWS_AS(step({{-1, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(step({{1, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(step({}), InvalidArgument);
}

TEST_CASE("rearrangement is equimeasurable on a 100-piece input") {
  TrialConfig cfg;
  cfg.min_pieces = cfg.max_pieces = 100;
  TrialRng rng(trial_seed(7, 0));
  const auto raw = random_step(rng, cfg, 3);
  const auto u = decreasing_rearrangement(raw);
  for (double s : {1.0, 2.0, 3.0}) {
    double direct = 0.0;
    for (const auto& p : raw.pieces()) direct += std::pow(p.value, s) * p.measure;
    CHECK(power_sum(u, s) == Approx(direct).epsilon(1e-12));
  }
  for (std::size_t i = 1; i < u.pieces().size(); ++i) CHECK(u.pieces()[i].value < u.pieces()[i - 1].value);
}

TEST_CASE("rearranged and symmetrized values") {
  const auto u = decreasing_rearrangement(step({{3, 0.5}, {1, 1.0}}, 2));
  CHECK(rearranged_value(u, 0.0) == 3.0);
  CHECK(rearranged_value(u, 0.49) == 3.0);
  CHECK(rearranged_value(u, 0.5) == 1.0);  // right-continuous
  CHECK(rearranged_value(u, 2.0) == 0.0);
  const double r = std::sqrt(0.25 / std::numbers::pi);  // pi r^2 = 0.25
  CHECK(symmetrized_value(u, r) == 3.0);
}

TEST_CASE("lorentz norms of a slab") {
  const auto slab = step({{1, 4.0}});
  CHECK(lorentz_norm(slab, {2, 2}) == Approx(2.0).epsilon(1e-15));
  CHECK(lorentz_norm(slab, {2, inf}) == Approx(2.0).epsilon(1e-15));
  CHECK(lorentz_norm(slab, {3, 2}) == Approx(std::pow(1.5, 0.5) * std::pow(4.0, 1.0 / 3.0)).epsilon(1e-14));
  CHECK(lorentz_norm(slab, {1.5, 1}) == Approx(1.5 * std::pow(4.0, 1.0 / 1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(lorentz_norm(slab, {0.5, 2}), InvalidArgument);
  CHECK_THROWS_AS(lorentz_norm(slab, {2, 0.5}), InvalidArgument);
}

TEST_CASE("L^{p,p} equals L^p") {
  TrialConfig cfg;
  for (std::uint64_t i = 0; i < 50; ++i) {
    TrialRng rng(trial_seed(11, i));
    const auto u = decreasing_rearrangement(random_step(rng, cfg, 3));
    for (double p : {1.0, 2.0, 3.7}) {
      double direct = 0.0;
      for (const auto& pc : u.pieces()) direct += std::pow(pc.value, p) * pc.measure;
      CHECK(lorentz_norm(u, {p, p}) == Approx(std::pow(direct, 1.0 / p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("weak sup is attained at a right endpoint") {
  const auto u = decreasing_rearrangement(step({{5, 0.1}, {2, 1.0}, {1, 3.0}}));
  double best = 0.0, t = 0.0;
  for (const auto& pc : u.pieces()) {
    t += pc.measure;
    best = std::max(best, pc.value * std::sqrt(t));
  }
  CHECK(lorentz_norm(u, {2, inf}) == Approx(best).epsilon(1e-15));
}

TEST_CASE("dilation law") {
  TrialConfig cfg;
  for (std::uint64_t i = 0; i < 50; ++i) {
    TrialRng rng(trial_seed(3, i));
    const auto u = decreasing_rearrangement(random_step(rng, cfg, 3));
    const double m = rng.log_uniform(1e-2, 1e2);
    const double beta = 0.5;
    for (double p : {1.5, 3.0, 5.0}) {
      for (double q : {1.0, 2.0, p, inf}) {
        const double lhs = lorentz_norm(dilate(u, m, beta), {p, q});
        CHECK(lhs == Approx(std::pow(m, beta - 3.0 / p) * lorentz_norm(u, {p, q})).epsilon(1e-12));
      }
    }
    CHECK(lorentz_norm(vanishing(u, m), {2, 2}) == Approx(lorentz_norm(u, {2, 2})).epsilon(1e-12));
    // the concentration sequence keeps the L^{2*} norm (2* = 6 in N = 3)
    CHECK(lorentz_norm(concentration(u, m), {6, 6}) == Approx(lorentz_norm(u, {6, 6})).epsilon(1e-12));
  }
  const auto u = step({{2, 1.0}});
  CHECK(lorentz_norm(dilate(u, 1.0, 7.0), {2, 2}) == lorentz_norm(u, {2, 2}));
  CHECK_THROWS_AS(dilate(u, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(dilate(u, -1.0, 1.0), InvalidArgument);
}

TEST_CASE("divergent norms are +inf, weak norm finite (L^p strictly inside L^{p,inf})") {
  // u*(t) = t^{-1/p} beyond t = 1
  const double p = 1.5;
  const StepFunction u({{1.0, 1.0}}, 3, PowerTail{1.0, 1.0 / p});
  CHECK(lorentz_norm(u, {p, inf}) == Approx(1.0).epsilon(1e-14));
  CHECK(std::isinf(lorentz_norm(u, {p, p})));
  CHECK(std::isinf(power_sum(u, p)));
  // finite windows of the same profile have L^p norms growing like log of the window
  double prev = 0.0;
  for (int n : {10, 100, 1000}) {
    std::vector<StepPiece> pcs;
    for (int i = 1; i <= n; ++i) pcs.push_back({std::pow(static_cast<double>(i), -1.0 / p), 1.0});
    const double v = lorentz_norm(StepFunction(pcs, 3), {p, p});
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("tail and head bounds") {
  const auto slab = step({{1, 1.0}});
  const auto b = tail_head_bound(slab, 1.0, 2.0, BoundSide::Tail);
  CHECK(b.lhs == 0.0);
  CHECK(b.rhs > 0.0);

  // t^{-1/p} sampled as n steps with right-endpoint values, exact tail beyond
  const double p = 1.5;
  double prev = 0.0;
  for (int n : {50, 200, 800, 3200}) {
    std::vector<StepPiece> pcs;
    const double T = 50.0;
    for (int i = 1; i <= n; ++i) pcs.push_back({std::pow(T * i / n, -1.0 / p), T / n});
    const StepFunction u(pcs, 3, PowerTail{1.0, 1.0 / p});
    const auto r = tail_head_bound(u, p, 1.0, BoundSide::Tail);
    CHECK(r.lhs <= r.rhs);
    CHECK(r.lhs / r.rhs > prev);
    prev = r.lhs / r.rhs;
  }
  CHECK(prev > 0.99);

  CHECK_THROWS_AS(tail_head_bound(slab, 2.5, 1.0, BoundSide::Tail), InvalidArgument);
  CHECK_THROWS_AS(tail_head_bound(slab, 5.0, 1.0, BoundSide::Head), InvalidArgument);  // needs p > 6 in N = 3
  const StepFunction heavy({{1.0, 1.0}}, 3, PowerTail{1.0, 0.5});
  CHECK_THROWS_AS(tail_head_bound(heavy, 1.2, 1.0, BoundSide::Tail), NumericalError);
}

TEST_CASE("symmetrize radial profiles") {
  const Grid g = build_grid({0.0, 1.0}, 101);
  const RadialProfile dec(2, Profile1D([](double r) { return 1 - r; }, [](double) { return -1.0; }, {0.0, 1.0}));
  const auto sd = symmetrize_radial(dec, g);
  REQUIRE(sd.pieces().size() == 100);
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(sd.pieces()[i].value == Approx(1.0 - g[i]).epsilon(1e-15));
    CHECK(sd.pieces()[i].measure == Approx(std::numbers::pi * (g[i + 1] * g[i + 1] - g[i] * g[i])).epsilon(1e-12));
  }

  const RadialProfile inc(2, Profile1D([](double r) { return r; }, [](double) { return 1.0; }, {0.0, 1.0}));
  const auto si = symmetrize_radial(inc, g);
  CHECK(si.total_measure() == Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(si.pieces().front().value == Approx(g[99]));
  double raw2 = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) raw2 += g[i] * g[i] * std::numbers::pi * (g[i + 1] * g[i + 1] - g[i] * g[i]);
  CHECK(power_sum(si, 2.0) == Approx(raw2).epsilon(1e-12));

  const RadialProfile neg(2, Profile1D([](double r) { return r - 0.5; }, [](double) { return 1.0; }, {0.0, 1.0}));
  CHECK_THROWS_AS(symmetrize_radial(neg, g), InvalidArgument);
}

TEST_CASE("step csv") {
  const auto u = parse_step_csv("value,measure\n1,1\n3,0.5\n", 3);
  CHECK(u.canonical());
  CHECK(u.pieces()[0].value == 3.0);
  CHECK_THROWS_AS(parse_step_csv("value,measure\n1\n", 3), InvalidArgument);
  CHECK_THROWS_AS(parse_step_csv("v,m\n1,1\n", 3), InvalidArgument);
  CHECK_THROWS_AS(load_step_csv("/nonexistent/file.csv", 3), InvalidArgument);
}
