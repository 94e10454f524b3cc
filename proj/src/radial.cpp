#include "hardylab/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "hardylab/errors.hpp"

namespace hardylab {

double sphere_area(int dim) {
  require(dim >= 1, "sphere_area: dimension must be positive");
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

// --- Profile1D -------------------------------------------------------------

Profile1D::Profile1D(Fn value, Fn derivative, Interval domain, std::vector<double> breakpoints)
    : value_(std::move(value)), derivative_(std::move(derivative)), domain_(domain),
      breakpoints_(std::move(breakpoints)) {
  require(static_cast<bool>(value_) && static_cast<bool>(derivative_), "profile: missing value or derivative");
  require(domain_.hi > domain_.lo, "profile: degenerate domain");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  for (double b : breakpoints_) require(b > domain_.lo && b < domain_.hi, "profile: breakpoint outside domain");
}

namespace {

struct Samples {
  std::vector<double> x, f, slope;

  // Index i with x[i] <= t <= x[i+1].
  std::size_t locate(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    auto i = static_cast<std::size_t>(std::distance(x.begin(), it));
    if (i == 0) return 0;
    return std::min(i - 1, x.size() - 2);
  }
};

std::vector<double> fd_slopes(const std::vector<double>& x, const std::vector<double>& f) {
  const std::size_t n = x.size();
  std::vector<double> s(n);
  if (n == 2) {
    s[0] = s[1] = (f[1] - f[0]) / (x[1] - x[0]);
    return s;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    s[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
  }
  {
    const double h1 = x[1] - x[0];
    const double h2 = x[2] - x[1];
    s[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] - h1 / (h2 * (h1 + h2)) * f[2];
  }
  {
    const double h1 = x[n - 2] - x[n - 3];
    const double h2 = x[n - 1] - x[n - 2];
    s[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
               (2 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1];
  }
  return s;
}

}  // namespace

Profile1D Profile1D::from_samples(std::vector<double> x, std::vector<double> f) {
  require(x.size() == f.size(), "samples: size mismatch");
  require(x.size() >= 2, "samples: need at least two samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && !std::isnan(f[i]), "samples: non-finite entry");
    if (i > 0) require(x[i] > x[i - 1], "samples: abscissae must be strictly increasing");
  }
  auto data = std::make_shared<Samples>();
  data->slope = fd_slopes(x, f);
  data->x = std::move(x);
  data->f = std::move(f);
  const Interval dom{data->x.front(), data->x.back()};

  auto value = [data](double t) {
    if (t < data->x.front() || t > data->x.back()) return std::nan("");
    const std::size_t i = data->locate(t);
    const double h = data->x[i + 1] - data->x[i];
    const double s = (t - data->x[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * data->f[i] + (s3 - 2 * s2 + s) * h * data->slope[i] +
           (-2 * s3 + 3 * s2) * data->f[i + 1] + (s3 - s2) * h * data->slope[i + 1];
  };
  auto derivative = [data](double t) {
    if (t < data->x.front() || t > data->x.back()) return std::nan("");
    const std::size_t i = data->locate(t);
    const double h = data->x[i + 1] - data->x[i];
    const double s = (t - data->x[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * data->f[i] + (-6 * s2 + 6 * s) * data->f[i + 1]) / h +
           (3 * s2 - 4 * s + 1) * data->slope[i] + (3 * s2 - 2 * s) * data->slope[i + 1];
  };
  std::vector<double> interior(data->x.begin() + 1, data->x.end() - 1);
  return Profile1D(std::move(value), std::move(derivative), dom, std::move(interior));
}

// --- RadialProfile ---------------------------------------------------------

RadialProfile::RadialProfile(int dim, Profile1D f, bool dirichlet_outer)
    : dim_(dim), f_(std::move(f)), dirichlet_outer_(dirichlet_outer) {
  require(dim_ >= 2, "radial profile: dimension must be at least 2");
  require(f_.domain().lo >= 0.0, "radial profile: domain must lie in [0, inf)");
}

void RadialProfile::validate_on(const Grid& grid) const {
  double max_abs = 0.0;
  for (double r : grid.nodes()) {
    require(domain().contains(r), "radial profile: grid node outside the profile domain");
    const double v = value(r);
    require(std::isfinite(v), "radial profile: value not finite at r = " + std::to_string(r));
    if (r > 0.0) {
      require(std::isfinite(derivative(r)), "radial profile: derivative not finite at r = " + std::to_string(r));
    }
    max_abs = std::max(max_abs, std::abs(v));
  }
  if (dirichlet_outer_) {
    const double edge = std::abs(value(outer_radius()));
    require(edge <= 1e-12 * max_abs, "radial profile: Dirichlet condition violated at the outer radius");
  }
}

namespace {

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

}  // namespace

RadialProfile parse_profile_csv(const std::string& text, int dim) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "profile csv: empty input");
  require(trim(line) == "r,value", "profile csv: expected header 'r,value'");
  std::vector<double> r, v;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "profile csv: missing comma on line " + std::to_string(lineno));
    char* end = nullptr;
    const std::string a = trim(line.substr(0, comma)), b = trim(line.substr(comma + 1));
    const double x = std::strtod(a.c_str(), &end);
    require(end && *end == '\0' && !a.empty(), "profile csv: bad radius on line " + std::to_string(lineno));
    const double y = std::strtod(b.c_str(), &end);
    require(end && *end == '\0' && !b.empty(), "profile csv: bad value on line " + std::to_string(lineno));
    if (!r.empty()) {
      require(x != r.back(), "profile csv: duplicate radius on line " + std::to_string(lineno));
      require(x > r.back(), "profile csv: radii not increasing on line " + std::to_string(lineno));
    }
    r.push_back(x);
    v.push_back(y);
  }
  require(r.size() >= 2, "profile csv: need at least two rows");
  return RadialProfile(dim, Profile1D::from_samples(std::move(r), std::move(v)));
}

RadialProfile load_profile_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  require(in.good(), "profile csv: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_profile_csv(buf.str(), dim);
}

// --- Weights and modes -----------------------------------------------------

double WeightSpec::operator()(double r) const {
  switch (kind) {
    case Kind::PlainMass:
      return 1.0;
    case Kind::ClassicalHardy:
      return 1.0 / (r * r);
    case Kind::CriticalHardy:
      return std::pow(std::log(a / r), -1.0 - 0.5 * q) / (r * r);
  }
  return std::nan("");
}

void WeightSpec::validate(int dim) const {
  if (kind != Kind::CriticalHardy) return;
  require(dim == 2, "critical Hardy weight requires dimension 2");
  require(a >= 1.0, "critical Hardy weight requires a >= 1");
  require(q >= 2.0, "critical Hardy weight requires q >= 2");
}

AngularMode::AngularMode(int k_, int dim_) : k(k_), dim(dim_) {
  require(k >= 0, "angular mode: k must be nonnegative");
  require(dim >= 2, "angular mode: dimension must be at least 2");
}

double AngularMode::l2_mass() const { return lq_mass(2.0); }

double AngularMode::lq_mass(double q) const {
  require(q > 0.0, "angular mode: exponent must be positive");
  const double area = sphere_area(dim);
  if (k == 0) return area;
  // |Re (x1 + i x2)^k|^q = rho^{kq} |cos k phi|^q with rho^2 ~ Beta(1, (N-2)/2)
  // independent of the uniformly distributed angle phi.
  const double s = 0.5 * k * q;
  const double half_n = 0.5 * dim;
  const double radial = std::exp(std::lgamma(1.0 + s) + std::lgamma(half_n) - std::lgamma(half_n + s));
  const double cos_q = 2.0 * std::sqrt(std::numbers::pi) *
                       std::exp(std::lgamma(0.5 * (q + 1.0)) - std::lgamma(0.5 * q + 1.0));
  return area * radial * cos_q / (2.0 * std::numbers::pi);
}

// --- Quadrature ------------------------------------------------------------

QuadResult composite_quadrature(const std::function<double(double)>& g, std::span<const double> nodes,
                                std::span<const double> kinks) {
  require(nodes.size() >= 2, "quadrature: need at least two nodes");
  const std::size_t n = nodes.size();
  std::vector<double> fx(n);
  for (std::size_t i = 0; i < n; ++i) {
    fx[i] = g(nodes[i]);
    if (i > 0 && i + 1 < n && !std::isfinite(fx[i])) {
      throw InvalidArgument("quadrature: integrand singular at interior node " + std::to_string(nodes[i]));
    }
  }
  auto checked = [&](double x) {
    const double v = g(x);
    if (!std::isfinite(v)) throw NumericalError("quadrature: integrand not finite at " + std::to_string(x));
    return v;
  };
  double total = 0.0, diff = 0.0;
  std::vector<double> kink(kinks.begin(), kinks.end());
  std::sort(kink.begin(), kink.end());
  auto is_kink = [&](double x) { return std::binary_search(kink.begin(), kink.end(), x); };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = nodes[i], b = nodes[i + 1], h = b - a;
    double coarse, fine;
    double fa = fx[i], fb = fx[i + 1];
    // one-sided limit, extrapolated linearly from two points just inside, so
    // rounding in the caller's breakpoint bookkeeping cannot pick the wrong piece
    const double d = 1e-7 * h;
    if (i > 0 && is_kink(a)) fa = 2.0 * g(a + d) - g(a + 2.0 * d);
    if (i + 2 < n && is_kink(b)) fb = 2.0 * g(b - d) - g(b - 2.0 * d);
    if (std::isfinite(fa) && std::isfinite(fb)) {
      const double fm = checked(0.5 * (a + b));
      coarse = 0.5 * h * (fa + fb);
      fine = 0.25 * h * (fa + 2.0 * fm + fb);
    } else {
      coarse = h * checked(0.5 * (a + b));
      fine = 0.5 * h * (checked(a + 0.25 * h) + checked(a + 0.75 * h));
    }
    const double corr = (fine - coarse) / 3.0;
    total += fine + corr;
    diff += corr;
  }
  return {total, std::abs(diff)};
}

namespace {

double checked_value(const RadialProfile& p, double r) {
  const double v = p.value(r);
  if (std::isnan(v)) throw InvalidArgument("profile value is NaN at r = " + std::to_string(r));
  return v;
}

}  // namespace

namespace {

void check_weight_span(const WeightSpec& weight, const Grid& grid) {
  if (weight.kind == WeightSpec::Kind::CriticalHardy) {
    require(grid.nodes().back() <= weight.a, "critical Hardy weight is only defined for r <= a");
  }
}

}  // namespace

QuadResult integrate(const RadialProfile& profile, const WeightSpec& weight, const Grid& grid, double power) {
  weight.validate(profile.dim());
  check_weight_span(weight, grid);
  require(power > 0.0, "integrate: power must be positive");
  const double nm1 = profile.dim() - 1.0;
  auto integrand = [&](double r) {
    const double f = std::abs(checked_value(profile, r));
    const double fp = power == 2.0 ? f * f : std::pow(f, power);
    return fp * weight(r) * std::pow(r, nm1);
  };
  return composite_quadrature(integrand, grid.nodes(), profile.breakpoints());
}

QuadResult mode_energy(const RadialProfile& profile, const AngularMode& mode, const Grid& grid) {
  require(mode.dim == profile.dim(), "mode_energy: mode dimension differs from profile dimension");
  if (mode.k >= 1 && profile.domain().lo == 0.0) {
    double scale = 0.0;
    for (double r : grid.nodes()) scale = std::max(scale, std::abs(profile.value(r)));
    const double f0 = profile.value(0.0);
    if (std::isfinite(f0) && std::abs(f0) > 1e-12 * std::max(scale, 1e-300)) {
      throw InvalidArgument("mode_energy: f(0) != 0 with k >= 1 has infinite energy");
    }
  }
  const double mu = mode.eigenvalue();
  const double nm1 = profile.dim() - 1.0;
  auto integrand = [&](double r) {
    const double f = checked_value(profile, r);
    const double df = profile.derivative(r);
    const double angular = mu == 0.0 ? 0.0 : mu * f * f / (r * r);
    return (df * df + angular) * std::pow(r, nm1);
  };
  return composite_quadrature(integrand, grid.nodes(), profile.breakpoints());
}

QuadResult weighted_inner_product(const RadialProfile& f, const RadialProfile& g, const WeightSpec& weight,
                                  const Grid& grid) {
  require(f.dim() == g.dim(), "inner product: dimension mismatch");
  weight.validate(f.dim());
  check_weight_span(weight, grid);
  const double nm1 = f.dim() - 1.0;
  auto integrand = [&](double r) {
    return checked_value(f, r) * checked_value(g, r) * weight(r) * std::pow(r, nm1);
  };
  std::vector<double> kinks(f.breakpoints().begin(), f.breakpoints().end());
  kinks.insert(kinks.end(), g.breakpoints().begin(), g.breakpoints().end());
  return composite_quadrature(integrand, grid.nodes(), kinks);
}

// --- Gauss-Legendre --------------------------------------------------------

namespace {

constexpr int kMaxGauss = 64;

GaussRule make_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int points) {
  require(points >= 1 && points <= kMaxGauss, "gauss_legendre: 1..64 points supported");
  static const std::array<GaussRule, kMaxGauss + 1> table = [] {
    std::array<GaussRule, kMaxGauss + 1> t;
    t[1] = GaussRule{{0.0}, {2.0}};
    for (int n = 2; n <= kMaxGauss; ++n) t[n] = make_gauss(n);
    return t;
  }();
  return table[points];
}

}  // namespace hardylab
