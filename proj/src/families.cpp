#include "hardylab/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "hardylab/errors.hpp"

namespace hardylab {

FamilySpec FamilySpec::u_alpha(double alpha, double a) {
  FamilySpec s;
  s.kind = Kind::UAlpha;
  s.alpha = alpha;
  s.a = a;
  s.dim = 2;
  return s;
}

FamilySpec FamilySpec::v_m(int m, int dim) {
  FamilySpec s;
  s.kind = Kind::VM;
  s.m = m;
  s.dim = dim;
  return s;
}

FamilySpec FamilySpec::fa_ball(double exponent, int dim) {
  FamilySpec s;
  s.kind = Kind::FABall;
  s.exponent = exponent;
  s.dim = dim;
  return s;
}

FamilySpec FamilySpec::fa_whole_space(double exponent, int dim) {
  FamilySpec s;
  s.kind = Kind::FAWholeSpace;
  s.exponent = exponent;
  s.dim = dim;
  return s;
}

FamilySpec FamilySpec::u_lambda(double lambda, double a, double alpha) {
  FamilySpec s;
  s.kind = Kind::ULambda;
  s.lambda = lambda;
  s.a = a;
  s.alpha = alpha;
  s.dim = 2;
  return s;
}

std::string family_name(FamilySpec::Kind kind) {
  switch (kind) {
    case FamilySpec::Kind::UAlpha:
      return "u_alpha";
    case FamilySpec::Kind::VM:
      return "v_m";
    case FamilySpec::Kind::FABall:
      return "f_a_ball";
    case FamilySpec::Kind::FAWholeSpace:
      return "f_a_whole";
    case FamilySpec::Kind::ULambda:
      return "u_lambda";
  }
  return "?";
}

FamilySpec::Kind parse_family(const std::string& name) {
  for (auto k : {FamilySpec::Kind::UAlpha, FamilySpec::Kind::VM, FamilySpec::Kind::FABall,
                 FamilySpec::Kind::FAWholeSpace, FamilySpec::Kind::ULambda}) {
    if (family_name(k) == name) return k;
  }
  throw InvalidArgument("unknown family '" + name + "'");
}

// --- closed-form helpers ---------------------------------------------------

double integrate_power_terms(const std::vector<PowerTerm>& terms, double lo, double hi) {
  require(lo > 0.0 || std::all_of(terms.begin(), terms.end(), [](const PowerTerm& t) { return t.exponent > -1.0 || t.coeff == 0.0; }),
          "power terms: divergent at r = 0");
  require(hi > lo, "power terms: empty interval");
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    const double e1 = t.exponent + 1.0;
    if (std::isinf(hi)) {
      require(e1 < 0.0, "power terms: divergent at infinity");
      sum += t.coeff * (-std::pow(lo, e1)) / e1;
    } else if (e1 == 0.0) {
      sum += t.coeff * std::log(hi / lo);
    } else {
      sum += t.coeff * (std::pow(hi, e1) - std::pow(lo, e1)) / e1;
    }
  }
  return sum;
}

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Polynomials in r, coefficients by increasing degree.
using Poly = std::vector<double>;

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

// p(c0 + c1 r)
Poly poly_compose_linear(const Poly& p, double c0, double c1) {
  Poly out{0.0}, pw{1.0};
  for (double coef : p) {
    if (out.size() < pw.size()) out.resize(pw.size(), 0.0);
    for (std::size_t i = 0; i < pw.size(); ++i) out[i] += coef * pw[i];
    pw = poly_mul(pw, {c0, c1});
  }
  return out;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
  return out;
}

double poly_eval(const Poly& p, double x) {
  double s = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

void append_poly_terms(std::vector<PowerTerm>& terms, const Poly& p, double scale, double shift) {
  for (std::size_t i = 0; i < p.size(); ++i) terms.push_back({scale * p[i], static_cast<double>(i) + shift});
}

// The C^1 cutoff on [1/2, 1] for FABall: cubic Hermite from (r^a, a r^{a-1}) at
// 1/2 to (0, 0) at 1.
Poly fa_cutoff(double a) {
  const double y0 = std::pow(0.5, a);
  const double d0 = a * std::pow(0.5, a - 1.0);
  // in s = 2r - 1: H(s) = y0 (2s^3 - 3s^2 + 1) + (d0/2)(s^3 - 2s^2 + s)
  const Poly hs{y0, 0.5 * d0, -3.0 * y0 - d0, 2.0 * y0 + 0.5 * d0};
  return poly_compose_linear(hs, -1.0, 2.0);
}

struct Pieces {
  std::vector<std::function<double(double)>> value, deriv;
  std::vector<double> junctions;  // junctions[i] separates piece i and i+1

  std::size_t piece(double r) const {
    std::size_t i = 0;
    while (i < junctions.size() && r > junctions[i]) ++i;
    return i;
  }
};

Profile1D make_piecewise(std::shared_ptr<const Pieces> pcs, Interval dom) {
  auto value = [pcs](double r) { return pcs->value[pcs->piece(r)](r); };
  auto deriv = [pcs](double r) { return pcs->deriv[pcs->piece(r)](r); };
  return Profile1D(value, deriv, dom, pcs->junctions);
}

std::vector<double> gaps(const Pieces& pcs) {
  std::vector<double> out;
  for (std::size_t i = 0; i < pcs.junctions.size(); ++i) {
    const double b = pcs.junctions[i];
    const double l = pcs.value[i](b), r = pcs.value[i + 1](b);
    out.push_back(std::abs(l - r));
  }
  return out;
}

}  // namespace

// --- families --------------------------------------------------------------

Family make_family(const FamilySpec& spec) {
  auto pcs = std::make_shared<Pieces>();
  Interval dom{0.0, 1.0};
  bool dirichlet = true;
  int dim = spec.dim;
  AngularMode mode(1, std::max(dim, 2));
  WeightSpec weight = WeightSpec::classical_hardy();

  switch (spec.kind) {
    case FamilySpec::Kind::UAlpha: {
      require(spec.alpha > 0.5, "u_alpha requires alpha > 1/2");
      require(spec.a >= 1.0, "u_alpha requires a >= 1");
      require(spec.q >= 2.0, "u_alpha requires q >= 2");
      dim = 2;
      mode = AngularMode(1, 2);
      weight = WeightSpec::critical_hardy(spec.a, spec.q);
      const double al = spec.alpha;
      const double c = 2.0 * std::pow(kLn2, al);
      pcs->junctions = {0.5};
      pcs->value = {[c](double r) { return c * r; },
                    [al](double r) { return r >= 1.0 ? 0.0 : std::pow(std::log(1.0 / r), al); }};
      pcs->deriv = {[c](double) { return c; },
                    [al](double r) { return -al * std::pow(std::log(1.0 / r), al - 1.0) / r; }};
      break;
    }
    case FamilySpec::Kind::VM: {
      require(spec.m >= 2, "v_m requires an integer m >= 2");
      require(dim >= 3, "v_m requires N >= 3");
      mode = AngularMode(1, dim);
      const double m = spec.m;
      const double beta = 0.5 * (dim - 2.0);
      const double r0 = 0.5 / m;
      const double c = 2.0 * m * (std::pow(m, beta) - 1.0);
      pcs->junctions = {r0, 1.0 / m};
      pcs->value = {[](double) { return 0.0; }, [c, r0](double r) { return c * (r - r0); },
                    [beta](double r) { return std::pow(r, -beta) - 1.0; }};
      pcs->deriv = {[](double) { return 0.0; }, [c](double) { return c; },
                    [beta](double r) { return -beta * std::pow(r, -beta - 1.0); }};
      break;
    }
    case FamilySpec::Kind::FABall: {
      require(spec.exponent > 0.0, "f_a ball requires a positive exponent");
      require(dim >= 3, "f_a ball requires N >= 3");
      mode = AngularMode(1, dim);
      const double a = spec.exponent;
      const Poly h = fa_cutoff(a);
      const Poly dh = poly_derivative(h);
      pcs->junctions = {0.5};
      pcs->value = {[a](double r) { return std::pow(r, a); }, [h](double r) { return poly_eval(h, r); }};
      pcs->deriv = {[a](double r) { return a * std::pow(r, a - 1.0); }, [dh](double r) { return poly_eval(dh, r); }};
      break;
    }
    case FamilySpec::Kind::FAWholeSpace: {
      require(dim >= 3, "f_a whole space requires N >= 3");
      require(spec.exponent > 0.5 * (dim - 2.0), "f_a whole space requires exponent > (N-2)/2 (denominator diverges)");
      require(spec.r_max > 1.0, "f_a whole space requires r_max > 1");
      mode = AngularMode(1, dim);
      const double a = spec.exponent;
      dom = {0.0, spec.r_max};
      dirichlet = false;
      pcs->junctions = {1.0};
      pcs->value = {[](double r) { return r; }, [a](double r) { return std::pow(r, -a); }};
      pcs->deriv = {[](double) { return 1.0; }, [a](double r) { return -a * std::pow(r, -a - 1.0); }};
      break;
    }
    case FamilySpec::Kind::ULambda: {
      FamilySpec base_spec = FamilySpec::u_alpha(spec.alpha, spec.a);
      base_spec.q = spec.q;
      const Family base = make_family(base_spec);
      RadialProfile prof = transform_u_lambda(base.profile, spec.lambda, spec.a);
      return Family{spec, std::move(prof), AngularMode(0, 2), WeightSpec::critical_hardy(spec.a, spec.q),
                    base.junction_gaps};
    }
  }
  const auto g = gaps(*pcs);
  for (double gap : g) {
    if (gap > 1e-12) throw NumericalError("family '" + family_name(spec.kind) + "' is discontinuous at a junction");
  }
  RadialProfile prof(dim, make_piecewise(pcs, dom), dirichlet);
  return Family{spec, std::move(prof), mode, weight, g};
}

RadialProfile transform_u_lambda(const RadialProfile& base, double lambda, double a) {
  require(lambda > 0.0 && lambda <= 1.0, "u_lambda requires lambda in (0, 1]");
  require(std::isfinite(a) && a > 1.0, "a must exceed 1");
  require(base.dim() == 2, "u_lambda requires a two-dimensional base");
  require(base.domain().lo == 0.0 && base.domain().hi <= 1.0, "u_lambda: base must be supported in the unit disk");
  const double support = base.domain().hi * std::pow(a, 1.0 - 1.0 / lambda);
  const double scale = 1.0 / std::sqrt(lambda);
  auto fb = std::make_shared<RadialProfile>(base);
  auto to_base = [a, lambda](double r) { return a * std::pow(r / a, lambda); };
  auto value = [fb, to_base, scale](double r) { return scale * fb->value(std::min(to_base(r), fb->domain().hi)); };
  auto deriv = [fb, to_base, scale, lambda](double r) {
    const double s = std::min(to_base(r), fb->domain().hi);
    return scale * fb->derivative(s) * lambda * s / r;
  };
  std::vector<double> bps;
  for (double b : base.breakpoints()) bps.push_back(a * std::pow(b / a, 1.0 / lambda));
  std::sort(bps.begin(), bps.end());
  return RadialProfile(2, Profile1D(value, deriv, {0.0, support}, std::move(bps)), base.dirichlet_outer());
}

// --- quotients -------------------------------------------------------------

QuotientReport quotient(const RadialProfile& profile, const AngularMode& mode, const WeightSpec& weight,
                        const Grid& grid) {
  const double q = weight.kind == WeightSpec::Kind::CriticalHardy ? weight.q : 2.0;
  const QuadResult num = mode_energy(profile, mode, grid);
  const QuadResult den = integrate(profile, weight, grid, q);
  if (!(den.value > 0.0)) throw InvalidArgument("quotient: zero denominator");
  QuotientReport rep;
  rep.numerator = num.value;
  rep.denominator = den.value;
  rep.q = q;
  rep.numerator_angular = mode.l2_mass();
  rep.denominator_angular = mode.lq_mass(q);
  if (q == 2.0) {
    rep.quotient = num.value / den.value;
  } else {
    rep.quotient = rep.numerator_angular * num.value / std::pow(rep.denominator_angular * den.value, 2.0 / q);
  }
  rep.error = std::abs(rep.quotient) * (num.error / std::max(std::abs(num.value), 1e-300) + (2.0 / q) * den.error / den.value);
  return rep;
}

Grid family_grid(const Family& family, double per_unit) {
  const auto& prof = family.profile;
  const double hi = prof.outer_radius();
  double lo = hi * 1e-12;
  if (family.spec.kind == FamilySpec::Kind::ULambda) lo = hi * std::exp(-15.0 / family.spec.lambda);
  if (family.spec.kind == FamilySpec::Kind::VM) lo = std::min(lo, 1e-3 / family.spec.m);
  std::vector<double> bps(prof.breakpoints().begin(), prof.breakpoints().end());
  return log_grid(lo, hi, per_unit, bps);
}

namespace {

QuotientReport exact_report(double num, double den, const AngularMode& mode) {
  QuotientReport rep;
  rep.numerator = num;
  rep.denominator = den;
  rep.quotient = num / den;
  rep.numerator_angular = rep.denominator_angular = mode.l2_mass();
  rep.exact = true;
  rep.error = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(rep.quotient);
  return rep;
}

// int_0^{ln 2} s^{2 alpha} / (s + l)^2 ds on dyadic panels toward 0
double u_alpha_outer(double alpha, double l) {
  const GaussRule& g = gauss_legendre(20);
  double sum = 0.0;
  double hi = kLn2;
  for (int panel = 0; panel < 200 && hi > 1e-300; ++panel) {
    const double lo = 0.5 * hi;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double part = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double s = mid + half * g.nodes[i];
      part += g.weights[i] * std::pow(s, 2.0 * alpha) / ((s + l) * (s + l));
    }
    sum += half * part;
    if (half * part < 1e-18 * sum) break;
    hi = lo;
  }
  return sum;
}

}  // namespace

QuotientReport family_quotient(const FamilySpec& spec) {
  const Family fam = make_family(spec);
  const int n = fam.profile.dim();
  const double mu = fam.mode.eigenvalue();
  switch (spec.kind) {
    case FamilySpec::Kind::UAlpha: {
      if (spec.q != 2.0) break;
      const double al = spec.alpha;
      const double num = std::pow(kLn2, 2 * al) + al * al * std::pow(kLn2, 2 * al - 1) / (2 * al - 1) +
                         std::pow(kLn2, 2 * al + 1) / (2 * al + 1);
      const double c = 2.0 * std::pow(kLn2, al);
      const double x = std::log(2.0 * spec.a);
      // int_x^inf e^{-2u} u^{-2} du = e^{-2x}/x - 2 E1(2x), and std::expint(-y) = -E1(y)
      const double inner = c * c * spec.a * spec.a * (std::exp(-2.0 * x) / x + 2.0 * std::expint(-2.0 * x));
      const double outer = spec.a == 1.0 ? std::pow(kLn2, 2 * al - 1) / (2 * al - 1) : u_alpha_outer(al, std::log(spec.a));
      return exact_report(num, inner + outer, fam.mode);
    }
    case FamilySpec::Kind::VM: {
      const double m = spec.m;
      const double beta = 0.5 * (n - 2.0);
      const double r0 = 0.5 / m, r1 = 1.0 / m;
      const double c = 2.0 * m * (std::pow(m, beta) - 1.0);
      const double c2 = c * c;
      // (r - r0)^2 r^{N-3}
      const std::vector<PowerTerm> ramp_sq{{1.0, n - 1.0}, {-2.0 * r0, n - 2.0}, {r0 * r0, n - 3.0}};
      // (r^-beta - 1)^2 r^{N-3}
      const std::vector<PowerTerm> tail_sq{{1.0, -1.0}, {-2.0, 0.5 * (n - 4.0)}, {1.0, n - 3.0}};
      const double ramp_den = c2 * integrate_power_terms(ramp_sq, r0, r1);
      const double tail_den = integrate_power_terms(tail_sq, r1, 1.0);
      const double ramp_num = c2 * integrate_power_terms({{1.0, n - 1.0}}, r0, r1) + mu * ramp_den;
      const double tail_num = beta * beta * std::log(m) + mu * tail_den;
      return exact_report(ramp_num + tail_num, ramp_den + tail_den, fam.mode);
    }
    case FamilySpec::Kind::FABall: {
      const double a = spec.exponent;
      const Poly h = fa_cutoff(a);
      const Poly dh = poly_derivative(h);
      const double inner_den = integrate_power_terms({{1.0, 2 * a + n - 3.0}}, 0.0, 0.5);
      const double inner_num = (a * a + mu) * inner_den;
      std::vector<PowerTerm> den_terms, num_terms;
      append_poly_terms(den_terms, poly_mul(h, h), 1.0, n - 3.0);
      append_poly_terms(num_terms, poly_mul(dh, dh), 1.0, n - 1.0);
      append_poly_terms(num_terms, poly_mul(h, h), mu, n - 3.0);
      const double outer_den = integrate_power_terms(den_terms, 0.5, 1.0);
      const double outer_num = integrate_power_terms(num_terms, 0.5, 1.0);
      return exact_report(inner_num + outer_num, inner_den + outer_den, fam.mode);
    }
    case FamilySpec::Kind::FAWholeSpace: {
      const double a = spec.exponent;
      const double inner_den = 1.0 / n;
      const double inner_num = (1.0 + mu) / n;
      const double outer_den = integrate_power_terms({{1.0, -2 * a + n - 3.0}}, 1.0, std::numeric_limits<double>::infinity());
      const double outer_num = (a * a + mu) * outer_den;
      return exact_report(inner_num + outer_num, inner_den + outer_den, fam.mode);
    }
    case FamilySpec::Kind::ULambda:
      break;
  }
  return quotient(fam.profile, fam.mode, fam.weight, family_grid(fam));
}

double whole_space_quotient_bound(double exponent, int dim) {
  require(dim >= 3 && exponent > 0.5 * (dim - 2.0), "whole-space bound: need N >= 3 and exponent > (N-2)/2");
  return exponent * exponent + (dim - 1.0) + (2.0 * exponent - dim + 2.0);
}

}  // namespace hardylab
