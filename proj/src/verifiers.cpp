#include "hardylab/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardylab/errors.hpp"
#include "hardylab/parallel.hpp"

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Per-trial outcome; merged in index order.
struct Outcome {
  bool violated = false;
  bool skipped = false;
  double excess = -kInf;
  std::string message;
};

SuiteReport merge(std::string name, const std::vector<Outcome>& outs) {
  SuiteReport rep;
  rep.name = std::move(name);
  rep.trials = static_cast<long>(outs.size());
  rep.worst = -kInf;
  for (const auto& o : outs) {
    if (o.skipped) {
      ++rep.skipped;
      continue;
    }
    rep.worst = std::max(rep.worst, o.excess);
    if (o.violated) {
      ++rep.violations;
      if (rep.messages.size() < 10) rep.messages.push_back(o.message);
    }
  }
  if (!std::isfinite(rep.worst)) rep.worst = 0.0;
  return rep;
}

template <class Fn>
SuiteReport run_trials(const std::string& name, const TrialConfig& cfg, std::uint64_t stream, Fn&& fn) {
  std::vector<Outcome> outs(static_cast<std::size_t>(cfg.trials));
  const std::uint64_t root = splitmix64(cfg.seed ^ (stream * 0xD1B54A32D192ED03ULL));
  parallel_for(outs.size(), cfg.threads, [&](std::size_t i) {
    TrialRng rng(trial_seed(root, i));
    outs[i] = fn(rng, i);
  });
  return merge(name, outs);
}

double rel_excess(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : kInf;
  return (lhs - rhs) / std::abs(rhs);
}

}  // namespace

void TrialConfig::validate() const {
  require(trials >= 1, "trials must be >= 1");
  require(min_pieces >= 1 && max_pieces >= min_pieces, "piece count range is invalid");
  require(value_lo > 0.0 && value_hi >= value_lo, "value range is invalid");
  require(measure_lo > 0.0 && measure_hi >= measure_lo, "measure range is invalid");
  require(threads >= 1, "threads must be >= 1");
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root ^ splitmix64(index));
}

double TrialRng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double TrialRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double TrialRng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

int TrialRng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

StepFunction random_step(TrialRng& rng, const TrialConfig& cfg, int dim) {
  const int n = rng.integer(cfg.min_pieces, cfg.max_pieces);
  std::vector<StepPiece> pieces(n);
  for (auto& pc : pieces) {
    pc.value = rng.log_uniform(cfg.value_lo, cfg.value_hi);
    pc.measure = rng.log_uniform(cfg.measure_lo, cfg.measure_hi);
  }
  return StepFunction(std::move(pieces), dim);
}

// --- interpolation ---------------------------------------------------------

InterpolationTriple::InterpolationTriple(double p_, double q_, double r_) : p(p_), q(q_), r(r_) {
  require(p >= 1.0 && std::isfinite(p), "interpolation: p must lie in [1, inf)");
  require(p < q && std::isfinite(q), "interpolation: need p < q < inf");
  require(q < r, "interpolation: need q < r");
}

double InterpolationTriple::lambda() const { return std::isinf(r) ? p / q : p * (r - q) / (q * (r - p)); }

double InterpolationTriple::D() const {
  if (std::isinf(r)) return std::pow(q / (q - p), 1.0 / q);
  return std::pow(q * (r - p) / ((r - q) * (q - p)), 1.0 / q);
}

double InterpolationTriple::a() const { return std::isinf(r) ? 1.0 : (r - q) / r; }

double InterpolationTriple::b() const { return (q - p) / p; }

InterpolationSides interpolation_sides(const StepFunction& u, const InterpolationTriple& t) {
  InterpolationSides s;
  s.norm_q = std::pow(power_sum(u, t.q), 1.0 / t.q);
  s.weak_p = lorentz_norm(u, {t.p, kInf});
  if (std::isinf(t.r)) {
    double mx = 0.0;
    for (const auto& pc : u.pieces()) mx = std::max(mx, pc.value);
    s.weak_r = mx;
  } else {
    s.weak_r = lorentz_norm(u, {t.r, kInf});
  }
  const double lam = t.lambda();
  s.bound = t.D() * std::pow(s.weak_p, lam) * std::pow(s.weak_r, 1.0 - lam);
  if (s.weak_r > 0.0) {
    const double A = std::pow(s.weak_r, t.q) / t.a();
    const double B = std::pow(s.weak_p, t.q) / t.b();
    const double ratio = s.weak_p / s.weak_r;
    s.s_star = std::isinf(t.r) ? std::pow(ratio, t.p) : std::pow(ratio, t.p * t.r / (t.r - t.p));
    s.optimum = A * std::pow(s.s_star, t.a()) + B * std::pow(s.s_star, -t.b());
  }
  return s;
}

SuiteReport check_interpolation(const InterpolationTriple& t, const TrialConfig& cfg) {
  cfg.validate();
  const std::string label = "interpolation(" + fmt("%g,%g,", t.p, t.q) + (std::isinf(t.r) ? "inf" : fmt("%g", t.r)) + ")";
  double worst_identity = 0.0;
  std::vector<double> identity(static_cast<std::size_t>(cfg.trials), 0.0);
  auto rep = run_trials(label, cfg, 1, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const StepFunction u = decreasing_rearrangement(random_step(rng, cfg, 2));
    const auto s = interpolation_sides(u, t);
    if (!(s.weak_r > 0.0)) {
      o.skipped = true;
      return o;
    }
    const double tol = 1e-12;
    const double e1 = rel_excess(s.norm_q, s.bound);
    const double e2 = rel_excess(std::pow(s.norm_q, t.q), s.optimum);
    identity[i] = std::abs(s.optimum - std::pow(s.bound, t.q)) / std::pow(s.bound, t.q);
    o.excess = std::max(e1, e2);
    if (e1 > tol || e2 > tol) {
      o.violated = true;
      o.message = fmt("trial %g: ||u||_q = %.17g > bound %.17g", static_cast<double>(i), s.norm_q, s.bound);
    }
    return o;
  });
  for (double v : identity) worst_identity = std::max(worst_identity, v);
  rep.metrics.push_back({"lambda", t.lambda()});
  rep.metrics.push_back({"D", t.D()});
  rep.metrics.push_back({"optimum_identity_max_rel_error", worst_identity});
  return rep;
}

// --- Holder failure ----------------------------------------------------------

double holder_failure_ratio(double eps, int dim, double p, double q) {
  require(dim >= 2, "holder: dimension must be >= 2");
  require(p >= 1.0 && p < 2.0 && q > 2.0, "holder: need 1 <= p < 2 < q");
  if (dim >= 3) require(q < 2.0 * dim / (dim - 2.0), "holder: need q < 2N/(N-2)");
  require(eps > 0.0, "holder: eps must be positive");
  const double alpha = dim / q - eps;
  require(alpha > 0.0, "holder: eps too large (alpha = N/q - eps must be positive)");
  const double w = sphere_area(dim);
  const double fg = std::sqrt(w / (2.0 * eps));
  const double fq = std::pow(w / (q * eps), 1.0 / q);
  const double gw = std::pow(w / dim, 1.0 / p);
  return fg / (fq * gw);
}

double holder_failure_slope(int dim, double p, double q, const std::vector<double>& eps) {
  require(eps.size() >= 2, "holder slope: need at least two eps values");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps.size());
  for (double e : eps) {
    const double x = std::log(e), y = std::log(holder_failure_ratio(e, dim, p, q));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- radial lemma ----------------------------------------------------------

RadialBoundReport check_radial_bound(const RadialProfile& profile, const Grid& grid) {
  const int n = profile.dim();
  const double w = sphere_area(n);
  RadialBoundReport rep;
  for (double r : grid.nodes()) {
    const double v = std::abs(profile.value(r)) * std::pow(r, 0.5 * (n - 1));
    if (v > rep.lhs) {
      rep.lhs = v;
      rep.argmax = r;
    }
  }
  const double l2 = w * integrate(profile, WeightSpec::plain_mass(), grid).value;
  const double grad = w * mode_energy(profile, AngularMode(0, n), grid).value;
  if (!std::isfinite(l2) || !std::isfinite(grad)) throw InvalidArgument("radial bound: infinite norms");
  rep.rhs = std::sqrt(2.0 / w) * std::pow(l2, 0.25) * std::pow(grad, 0.25);
  return rep;
}

// --- Poincare ----------------------------------------------------------------

PoincareReport check_poincare_circle(const std::vector<std::pair<double, double>>& coeffs) {
  require(!coeffs.empty(), "poincare: no coefficients");
  require(coeffs[0].first == 0.0 && coeffs[0].second == 0.0, "poincare: constant term present (g must have zero mean)");
  PoincareReport rep;
  bool higher = false, any = false;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const double e = coeffs[k].first * coeffs[k].first + coeffs[k].second * coeffs[k].second;
    const double kk = static_cast<double>(k);
    rep.l2 += std::numbers::pi * e;
    rep.dirichlet += std::numbers::pi * kk * kk * e;
    if (e > 0.0) {
      any = true;
      if (k >= 2) higher = true;
    }
  }
  rep.equality = !higher || !any;
  return rep;
}

// --- exponents ----------------------------------------------------------------

ExponentSplit exponent_split(double p, double q) {
  require(p > 1.0 && std::isfinite(p), "exponent_split: p must exceed 1");
  require(q >= 2.0 && std::isfinite(q), "exponent_split: q must be >= 2");
  ExponentSplit s;
  s.r = q + (q - 2.0) / (p - 1.0);
  s.r_tilde = p / (p - 1.0) * (1.0 + 0.5 * q - 2.0 / p);
  s.identity_error = std::abs(s.r_tilde - (0.5 * s.r + 1.0)) / s.r_tilde;
  return s;
}

// --- Hardy 1D -----------------------------------------------------------------

HardyReport check_hardy_1d(const Profile1D& f, double L, const Grid& grid) {
  require(L >= 0.0, "hardy 1d: L must be nonnegative");
  require(std::abs(grid.front() - L) <= 1e-12 * std::max(1.0, L), "hardy 1d: grid must start at L");
  double mx = 0.0;
  for (double t : grid.nodes()) mx = std::max(mx, std::abs(f.value(t)));
  require(std::abs(f.value(L)) <= 1e-12 * std::max(mx, 1e-300), "hardy 1d: boundary violation f(L) != 0");
  const auto kinks = f.breakpoints();
  HardyReport rep;
  rep.lhs = composite_quadrature([&](double t) { const double d = f.derivative(t); return d * d; }, grid.nodes(), kinks).value;
  rep.rhs = 0.25 * composite_quadrature([&](double t) { const double v = f.value(t); return v * v / (t * t); }, grid.nodes(), kinks).value;
  rep.gap = rep.lhs - rep.rhs;
  return rep;
}

// --- Polya-Szego ------------------------------------------------------------

PolyaSzegoReport polya_szego_piecewise_linear(const std::vector<double>& r, const std::vector<double>& f, int dim) {
  require(r.size() == f.size() && r.size() >= 2, "polya-szego: need matching samples");
  require(dim >= 1, "polya-szego: dimension must be positive");
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(f[i] >= 0.0, "polya-szego: profile must be nonnegative");
    if (i > 0) require(r[i] > r[i - 1], "polya-szego: radii must increase");
  }
  require(r.front() == 0.0, "polya-szego: profile must start at r = 0");
  require(f.back() == 0.0, "polya-szego: profile must vanish at the outer radius");
  const double w = sphere_area(dim);
  const double n = dim;
  PolyaSzegoReport rep;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double s = (f[i + 1] - f[i]) / (r[i + 1] - r[i]);
    rep.energy += w * s * s * (std::pow(r[i + 1], n) - std::pow(r[i], n)) / n;
  }
  // mu(lambda) = |{f > lambda}| and |mu'(lambda)| from the crossings
  auto level = [&](double lam, double& mu, double& dmu) {
    mu = 0.0;
    dmu = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double a = f[i], b = f[i + 1];
      const double ra = r[i], rb = r[i + 1];
      if (a > lam && b > lam) {
        mu += w * (std::pow(rb, n) - std::pow(ra, n)) / n;
      } else if ((a > lam) != (b > lam)) {
        const double rc = ra + (lam - a) / (b - a) * (rb - ra);
        mu += a > lam ? w * (std::pow(rc, n) - std::pow(ra, n)) / n : w * (std::pow(rb, n) - std::pow(rc, n)) / n;
        dmu += w * std::pow(rc, n - 1.0) * (rb - ra) / std::abs(b - a);
      }
    }
  };
  std::vector<double> levels(f.begin(), f.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const GaussRule& g = gauss_legendre(16);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      double mu, dmu;
      level(mid + half * g.nodes[k], mu, dmu);
      if (dmu <= 0.0) continue;
      const double rho = std::pow(n * mu / w, 1.0 / n);
      const double area = w * std::pow(rho, n - 1.0);
      sum += g.weights[k] * area * area / dmu;
    }
    return half * sum;
  };
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    const double lo = levels[j], hi = levels[j + 1];
    const double d = 0.5 * (hi - lo);
    // dyadic panels toward both ends absorb the endpoint power singularities
    for (int side = 0; side < 2; ++side) {
      double outer = d;
      for (int k = 0; k < 48; ++k) {
        const double inner = 0.5 * outer;
        rep.symmetrized_energy += side == 0 ? panel(lo + inner, lo + outer) : panel(hi - outer, hi - inner);
        outer = inner;
      }
    }
  }
  return rep;
}

// --- suites -------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"interpolation", "holder",      "radial-bound",    "poincare",          "tail-head",
          "exponent-split", "hardy-1d",   "lorentz-scaling", "equimeasurability", "polya-szego"};
}

namespace {

SuiteReport holder_suite() {
  SuiteReport rep;
  rep.name = "holder";
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  struct Case {
    int dim;
    double p, q;
  };
  for (const Case c : {Case{2, 1.5, 3.0}, Case{3, 1.5, 4.0}, Case{3, 1.2, 5.0}}) {
    ++rep.trials;
    const double slope = holder_failure_slope(c.dim, c.p, c.q, eps);
    const double expect = 1.0 / c.q - 0.5;
    const double ratio10 = holder_failure_ratio(1e-3, c.dim, c.p, c.q) / holder_failure_ratio(1e-2, c.dim, c.p, c.q);
    const double expect10 = std::pow(10.0, 0.5 - 1.0 / c.q);
    rep.metrics.push_back({fmt("slope_N%g_p%g_q%g", c.dim, c.p, c.q), slope});
    const double dev = std::abs(slope - expect);
    rep.worst = std::max(rep.worst, dev);
    if (dev > 0.05 || std::abs(ratio10 / expect10 - 1.0) > 1e-3) {
      ++rep.violations;
      rep.messages.push_back(fmt("slope %.6f differs from %.6f", slope, expect));
    }
  }
  return rep;
}

SuiteReport radial_bound_suite(const TrialConfig& cfg) {
  auto rep = run_trials("radial-bound", cfg, 3, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const int dim = (i % 2 == 0) ? 3 : 4;
    const int k = rng.integer(1, 4);
    std::vector<double> amp(k), ctr(k), wid(k);
    double reach = 0.0;
    for (int j = 0; j < k; ++j) {
      amp[j] = rng.uniform(-2.0, 2.0);
      ctr[j] = rng.uniform(0.0, 5.0);
      wid[j] = rng.uniform(0.2, 1.5);
      reach = std::max(reach, ctr[j] + 12.0 * wid[j]);
    }
    auto val = [=](double r) {
      double s = 0.0;
      for (int j = 0; j < k; ++j) s += amp[j] * std::exp(-0.5 * (r - ctr[j]) * (r - ctr[j]) / (wid[j] * wid[j]));
      return s;
    };
    auto der = [=](double r) {
      double s = 0.0;
      for (int j = 0; j < k; ++j)
        s -= amp[j] * (r - ctr[j]) / (wid[j] * wid[j]) * std::exp(-0.5 * (r - ctr[j]) * (r - ctr[j]) / (wid[j] * wid[j]));
      return s;
    };
    const RadialProfile prof(dim, Profile1D(val, der, {0.0, reach}));
    const auto res = check_radial_bound(prof, build_grid({0.0, reach}, 2001));
    o.excess = res.rhs > 0.0 ? (res.lhs - res.rhs) / res.rhs : 0.0;
    if (res.lhs > res.rhs + 1e-10) {
      o.violated = true;
      o.message = fmt("lhs %.12g > rhs %.12g at r = %g", res.lhs, res.rhs, res.argmax);
    }
    return o;
  });
  // the smooth reference case e^{-r} in N = 3
  const RadialProfile ref(3, Profile1D([](double r) { return std::exp(-r); }, [](double r) { return -std::exp(-r); }, {0.0, 60.0}));
  const auto res = check_radial_bound(ref, build_grid({0.0, 60.0}, 6001));
  rep.metrics.push_back({"exp_lhs", res.lhs});
  rep.metrics.push_back({"exp_rhs", res.rhs});
  if (res.lhs > res.rhs + 1e-10) {
    ++rep.violations;
    rep.messages.push_back("e^{-r} reference violates the bound");
  }
  return rep;
}

SuiteReport poincare_suite(const TrialConfig& cfg) {
  return run_trials("poincare", cfg, 4, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    std::vector<std::pair<double, double>> c(11, {0.0, 0.0});
    const bool only_first = rng.uniform() < 0.1;
    for (int k = 1; k <= 10; ++k) {
      if (only_first && k > 1) break;
      if (rng.uniform() < 0.3) continue;
      c[k] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    const auto rep = check_poincare_circle(c);
    o.excess = rep.dirichlet > 0.0 ? (rep.l2 - rep.dirichlet) / rep.dirichlet : 0.0;
    const bool strict = rep.dirichlet > rep.l2;
    const bool equal = rep.dirichlet == rep.l2;
    if (!(strict || equal) || (rep.equality != equal)) {
      o.violated = true;
      o.message = fmt("trial %g: l2 %.17g dirichlet %.17g", static_cast<double>(i), rep.l2, rep.dirichlet);
    }
    return o;
  });
}

SuiteReport tail_head_suite(const TrialConfig& cfg) {
  return run_trials("tail-head", cfg, 5, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const StepFunction u = decreasing_rearrangement(random_step(rng, cfg, 3));
    std::vector<double> cum;
    double acc = 0.0;
    for (const auto& pc : u.pieces()) cum.push_back(acc += pc.measure);
    const double R = cum[cum.size() / 2];
    const auto tail = tail_head_bound(u, 1.2, R, BoundSide::Tail);
    const auto head = tail_head_bound(u, 8.0, R, BoundSide::Head);
    o.excess = std::max(rel_excess(tail.lhs, tail.rhs), rel_excess(head.lhs, head.rhs));
    if (tail.lhs > tail.rhs * (1.0 + 1e-12) || head.lhs > head.rhs * (1.0 + 1e-12)) {
      o.violated = true;
      o.message = fmt("trial %g: tail %.6g/%.6g", static_cast<double>(i), tail.lhs, tail.rhs);
    }
    return o;
  });
}

SuiteReport exponent_suite(const TrialConfig& cfg) {
  return run_trials("exponent-split", cfg, 6, [&](TrialRng& rng, std::size_t) {
    Outcome o;
    const double p = rng.uniform(1.1, 10.0), q = rng.uniform(2.1, 20.0);
    const auto s = exponent_split(p, q);
    o.excess = s.identity_error;
    if (s.identity_error > 1e-14) {
      o.violated = true;
      o.message = fmt("p=%.17g q=%.17g error %.3g", p, q, s.identity_error);
    }
    return o;
  });
}

// (t - L) sum c_j e^{-d_j (t - L)} on a log-spaced grid from L
SuiteReport hardy_suite(const TrialConfig& cfg) {
  auto rep = run_trials("hardy-1d", cfg, 7, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const double L = rng.uniform(0.05, 3.0);
    const int k = rng.integer(1, 3);
    std::vector<double> c(k), d(k);
    double dmin = kInf;
    for (int j = 0; j < k; ++j) {
      c[j] = rng.uniform(-1.0, 1.0);
      d[j] = rng.uniform(0.3, 3.0);
      dmin = std::min(dmin, d[j]);
    }
    auto val = [=](double t) {
      double s = 0.0;
      for (int j = 0; j < k; ++j) s += c[j] * std::exp(-d[j] * (t - L));
      return (t - L) * s;
    };
    auto der = [=](double t) {
      double s = 0.0;
      for (int j = 0; j < k; ++j) s += c[j] * (1.0 - d[j] * (t - L)) * std::exp(-d[j] * (t - L));
      return s;
    };
    const double T = L + 60.0 / dmin;
    std::vector<double> nodes;
    const std::size_t count = 3001;
    for (std::size_t j = 0; j < count; ++j) nodes.push_back(L * std::pow(T / L, static_cast<double>(j) / (count - 1)));
    nodes.front() = L;
    nodes.back() = T;
    const Grid grid(std::move(nodes), {L, T});
    const auto res = check_hardy_1d(Profile1D(val, der, {L, T}), L, grid);
    o.excess = rel_excess(res.rhs, res.lhs);
    if (!(res.gap > 0.0)) {
      o.violated = true;
      o.message = fmt("trial %g: gap %.6g", static_cast<double>(i), res.gap);
    }
    return o;
  });
  // near-extremal sqrt(t) sin^2(pi log t / W): the relative gap must shrink with W
  double prev = kInf;
  for (double W : {2.0, 4.0, 8.0, 16.0}) {
    auto val = [W](double t) {
      const double s = std::sin(std::numbers::pi * std::log(t) / W);
      return std::sqrt(t) * s * s;
    };
    auto der = [W](double t) {
      const double x = std::numbers::pi * std::log(t) / W;
      const double s = std::sin(x), c = std::cos(x);
      return (0.5 * s * s + 2.0 * s * c * std::numbers::pi / W) / std::sqrt(t);
    };
    const double T = std::exp(W);
    std::vector<double> nodes;
    const std::size_t count = 4001;
    for (std::size_t j = 0; j < count; ++j) nodes.push_back(std::exp(W * static_cast<double>(j) / (count - 1)));
    nodes.front() = 1.0;
    nodes.back() = T;
    const auto res = check_hardy_1d(Profile1D(val, der, {1.0, T}), 1.0, Grid(std::move(nodes), {1.0, T}));
    const double rel = res.gap / res.rhs;
    rep.metrics.push_back({fmt("near_extremal_rel_gap_W%g", W), rel});
    if (!(rel > 0.0 && rel < prev)) {
      ++rep.violations;
      rep.messages.push_back(fmt("near-extremal gap did not shrink at W = %g", W));
    }
    prev = rel;
  }
  return rep;
}

SuiteReport lorentz_scaling_suite(const TrialConfig& cfg) {
  return run_trials("lorentz-scaling", cfg, 8, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const int n = 3;
    const StepFunction u = decreasing_rearrangement(random_step(rng, cfg, n));
    const double m = rng.log_uniform(1e-2, 1e2);
    const double beta = 0.5 * (n - 2);
    double worst = 0.0;
    for (const auto& [p, q] : std::vector<std::pair<double, double>>{{5.0, 2.0}, {3.0, kInf}, {2.0, 2.0}}) {
      const double lhs = lorentz_norm(dilate(u, m, beta), {p, q});
      const double rhs = std::pow(m, beta - n / p) * lorentz_norm(u, {p, q});
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    // vanishing sequence m^{-N/2} u(x/m) keeps the L^2 norm
    const double l2 = lorentz_norm(u, {2.0, 2.0});
    worst = std::max(worst, std::abs(lorentz_norm(vanishing(u, m), {2.0, 2.0}) - l2) / l2);
    o.excess = worst;
    if (worst > 1e-12) {
      o.violated = true;
      o.message = fmt("trial %g: relative error %.3g", static_cast<double>(i), worst);
    }
    return o;
  });
}

SuiteReport equimeasurability_suite(const TrialConfig& cfg) {
  return run_trials("equimeasurability", cfg, 9, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const StepFunction raw = random_step(rng, cfg, 2);
    const StepFunction canon = decreasing_rearrangement(raw);
    double worst = 0.0;
    for (double s : {1.0, 2.0, 2.5, 6.0}) {
      double direct = 0.0;
      for (const auto& pc : raw.pieces()) direct += std::pow(pc.value, s) * pc.measure;
      worst = std::max(worst, std::abs(power_sum(canon, s) - direct) / direct);
    }
    bool sorted = canon.canonical();
    o.excess = worst;
    if (worst > 1e-12 || !sorted) {
      o.violated = true;
      o.message = fmt("trial %g: relative error %.3g", static_cast<double>(i), worst);
    }
    return o;
  });
}

SuiteReport polya_szego_suite(const TrialConfig& cfg) {
  return run_trials("polya-szego", cfg, 10, [&](TrialRng& rng, std::size_t i) {
    Outcome o;
    const int dim = (i % 2 == 0) ? 2 : 3;
    const int nodes = rng.integer(3, 10);
    std::vector<double> r(nodes), f(nodes);
    const bool monotone = rng.uniform() < 0.25;
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      if (j > 0) acc += rng.uniform(0.1, 1.0);
      r[j] = acc;
      f[j] = j + 1 == nodes ? 0.0 : rng.uniform(0.1, 2.0);
    }
    if (monotone) std::sort(f.begin(), f.end(), std::greater<>());
    const auto rep = polya_szego_piecewise_linear(r, f, dim);
    o.excess = rel_excess(rep.symmetrized_energy, rep.energy);
    if (rep.symmetrized_energy > rep.energy * (1.0 + 1e-9)) {
      o.violated = true;
      o.message = fmt("trial %g: E(u#) %.12g > E(u) %.12g", static_cast<double>(i), rep.symmetrized_energy, rep.energy);
    }
    return o;
  });
}

}  // namespace

std::vector<SuiteReport> run_suite(const std::string& name, const TrialConfig& cfg) {
  cfg.validate();
  if (name == "interpolation") {
    std::vector<SuiteReport> out;
    for (const auto& t : {InterpolationTriple(1, 2, 3), InterpolationTriple(1.5, 2, 6), InterpolationTriple(2, 3, 50),
                          InterpolationTriple(2, 3, kInf)}) {
      out.push_back(check_interpolation(t, cfg));
    }
    return out;
  }
  if (name == "holder") return {holder_suite()};
  if (name == "radial-bound") return {radial_bound_suite(cfg)};
  if (name == "poincare") return {poincare_suite(cfg)};
  if (name == "tail-head") return {tail_head_suite(cfg)};
  if (name == "exponent-split") return {exponent_suite(cfg)};
  if (name == "hardy-1d") return {hardy_suite(cfg)};
  if (name == "lorentz-scaling") return {lorentz_scaling_suite(cfg)};
  if (name == "equimeasurability") return {equimeasurability_suite(cfg)};
  if (name == "polya-szego") return {polya_szego_suite(cfg)};
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw InvalidArgument("unknown suite '" + name + "'");
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_junit_xml(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  long failures = 0;
  for (const auto& r : reports) failures += r.passed() ? 0 : 1;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuites name=\"hardylab\" tests=\"" << reports.size() << "\" failures=\"" << failures << "\">\n";
  for (const auto& r : reports) {
    os << "  <testsuite name=\"" << xml_escape(r.name) << "\" tests=\"" << r.trials << "\" failures=\"" << r.violations
       << "\" skipped=\"" << r.skipped << "\">\n";
    os << "    <testcase name=\"" << xml_escape(r.name) << "\" classname=\"hardylab.verify\">\n";
    if (!r.passed()) {
      os << "      <failure message=\"" << r.violations << " violation(s)\">";
      for (const auto& m : r.messages) os << xml_escape(m) << "\n";
      os << "</failure>\n";
    }
    os << "    </testcase>\n  </testsuite>\n";
  }
  os << "</testsuites>\n";
  return os.str();
}

}  // namespace hardylab
