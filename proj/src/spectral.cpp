#include "hardylab/spectral.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "hardylab/errors.hpp"

namespace hardylab {

std::string geometry_name(Geometry g) {
  switch (g) {
    case Geometry::CriticalDisk:
      return "critical-disk";
    case Geometry::ClassicalBall:
      return "classical-ball";
    case Geometry::ClassicalWholeSpace:
      return "classical-whole-space";
  }
  return "?";
}

Geometry parse_geometry(const std::string& name) {
  if (name == "critical-disk") return Geometry::CriticalDisk;
  if (name == "classical-ball") return Geometry::ClassicalBall;
  if (name == "classical-whole-space" || name == "whole-space") return Geometry::ClassicalWholeSpace;
  throw InvalidArgument("unknown geometry '" + name + "'");
}

void ModeProblem::validate() const {
  require(k >= 1, "mode k must be >= 1 (k = 0 violates the zero spherical average constraint)");
  if (geometry == Geometry::CriticalDisk) {
    require(std::isfinite(a) && a > 1.0, "a must exceed 1");
    require(dim == 2, "critical disk requires dimension 2");
  } else {
    require(dim >= 3, "classical geometries require dimension >= 3");
  }
  require(q >= 2.0, "exponent q must be >= 2");
}

// --- densities -------------------------------------------------------------

double Density::operator()(double t) const {
  switch (kind) {
    case Kind::Unit:
      return 1.0;
    case Kind::InverseSquare:
      return 1.0 / (t * t);
    case Kind::Exponential:
      return std::exp(-rate * t);
  }
  return std::nan("");
}

namespace {

// int_0^eps v^k / (1+v)^2 dv, k = 0, 1, 2
std::array<double, 3> inverse_square_j(double eps) {
  std::array<double, 3> j{};
  j[0] = eps / (1.0 + eps);
  if (eps < 0.5) {
    double j1 = 0.0, j2 = 0.0, pw = eps;
    for (int n = 2; n <= 80; ++n) {
      pw *= eps;  // eps^n
      const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      j1 += sgn * pw * (n - 1.0) / n;
      if (n >= 3) j2 -= sgn * pw * (n - 2.0) / n;
      if (pw < 1e-20 * std::max(std::abs(j1), 1e-300)) break;
    }
    j[1] = j1;
    j[2] = j2;
  } else {
    const double l = std::log1p(eps);
    j[1] = l - eps / (1.0 + eps);
    j[2] = eps - 2.0 * l + eps / (1.0 + eps);
  }
  return j;
}

// int_0^1 u^k e^{-x u} du, k = 0, 1, 2
std::array<double, 3> exp_moments(double x) {
  std::array<double, 3> e{};
  if (x < 2.0) {
    for (int k = 0; k < 3; ++k) {
      double term = 1.0, sum = 0.0;
      for (int j = 0; j < 60; ++j) {
        if (j > 0) term *= -x / j;
        const double add = term / (k + j + 1.0);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      }
      e[k] = sum;
    }
  } else {
    const double ex = std::exp(-x);
    e[0] = -std::expm1(-x) / x;
    e[1] = (e[0] - ex) / x;
    e[2] = (2.0 * e[1] - ex) / x;
  }
  return e;
}

}  // namespace

std::array<double, 3> Density::moments(double t1, double h) const {
  require(h > 0.0, "density moments: element length must be positive");
  switch (kind) {
    case Kind::Unit:
      return {h, 0.5 * h * h, h * h * h / 3.0};
    case Kind::InverseSquare: {
      require(t1 > 0.0, "inverse-square density needs t > 0");
      const auto j = inverse_square_j(h / t1);
      return {j[0] / t1, j[1], j[2] * t1};
    }
    case Kind::Exponential: {
      const auto e = exp_moments(rate * h);
      const double s = std::exp(-rate * t1);
      return {s * h * e[0], s * h * h * e[1], s * h * h * h * e[2]};
    }
  }
  return {};
}

// --- reduction and meshes --------------------------------------------------

SLProblem1D reduce_mode(const ModeProblem& problem) {
  problem.validate();
  SLProblem1D slp;
  switch (problem.geometry) {
    case Geometry::CriticalDisk:
      slp.lower = std::log(problem.a);
      slp.numerator = {Density::Kind::Unit, 0.0};
      slp.potential = static_cast<double>(problem.k) * problem.k;
      slp.denominator = {Density::Kind::InverseSquare, 0.0};
      slp.known_lower_bound = 0.25;
      break;
    case Geometry::ClassicalBall:
    case Geometry::ClassicalWholeSpace: {
      const double c = problem.dim - 2.0;
      slp.lower = 0.0;
      slp.two_sided = problem.geometry == Geometry::ClassicalWholeSpace;
      slp.numerator = {Density::Kind::Exponential, c};
      slp.potential = AngularMode(problem.k, problem.dim).eigenvalue();
      slp.denominator = {Density::Kind::Exponential, c};
      slp.known_lower_bound = 0.25 * c * c + slp.potential;
      break;
    }
  }
  return slp;
}

Grid make_mesh(const SLProblem1D& slp, double T, double h) {
  require(h > 0.0 && std::isfinite(h), "mesh: h must be positive");
  require(std::isfinite(T) && T > slp.lower, "mesh: T must exceed the lower end");
  std::vector<double> nodes;
  const double L = slp.lower;
  if (slp.two_sided) {
    const auto n = static_cast<long>(std::ceil(T / h - 1e-9));
    for (long j = -n; j <= n; ++j) nodes.push_back(static_cast<double>(j) * h);
    const Interval dom{nodes.front(), nodes.back()};
    return Grid(std::move(nodes), dom);
  }
  const bool graded = slp.denominator.kind == Density::Kind::InverseSquare && L < 1.0;
  if (!graded) {
    const auto n = static_cast<long>(std::ceil((T - L) / h - 1e-9));
    for (long j = 0; j <= n; ++j) nodes.push_back(L + static_cast<double>(j) * h);
  } else {
    require(L > 0.0, "mesh: graded mesh needs a positive lower end");
    nodes.push_back(L);
    const double xi0 = std::log(L);
    for (auto j = static_cast<long>(std::floor(xi0 / h)) + 1; j <= 0; ++j) {
      const double t = std::exp(static_cast<double>(j) * h);
      if (t - nodes.back() > 1e-9 * L) nodes.push_back(t);
    }
    const auto n = static_cast<long>(std::ceil(std::max(T - 1.0, 0.0) / h - 1e-9));
    for (long j = 1; j <= std::max(n, 1L); ++j) nodes.push_back(1.0 + static_cast<double>(j) * h);
  }
  const Interval dom{nodes.front(), nodes.back()};
  return Grid(std::move(nodes), dom);
}

// --- assembly --------------------------------------------------------------

TridiagPair assemble(const SLProblem1D& slp, const Grid& mesh) {
  require(mesh.size() >= 3, "assemble: mesh has no interior nodes");
  if (!slp.two_sided) {
    require(std::abs(mesh.front() - slp.lower) <= 1e-12 * std::max(1.0, std::abs(slp.lower)),
            "assemble: mesh does not start at the lower end of the problem");
  }
  const std::size_t nodes = mesh.size();
  const std::size_t n = nodes - 2;
  TridiagPair out;
  out.k_diag.assign(n, 0.0);
  out.m_diag.assign(n, 0.0);
  out.k_off.assign(n > 0 ? n - 1 : 0, 0.0);
  out.m_off.assign(n > 0 ? n - 1 : 0, 0.0);
  out.mesh.assign(mesh.nodes().begin(), mesh.nodes().end());

  auto mass = [](const std::array<double, 3>& I, double h) {
    const double h2 = h * h;
    return std::array<double, 3>{(h2 * I[0] - 2.0 * h * I[1] + I[2]) / h2, (h * I[1] - I[2]) / h2, I[2] / h2};
  };
  for (std::size_t e = 0; e + 1 < nodes; ++e) {
    const double t1 = mesh[e];
    const double h = mesh[e + 1] - t1;
    const auto In = slp.numerator.moments(t1, h);
    const auto Id = slp.denominator.moments(t1, h);
    const double s = In[0] / (h * h);
    const auto mn = mass(In, h);
    const auto md = mass(Id, h);
    const double kll = s + slp.potential * mn[0];
    const double klr = -s + slp.potential * mn[1];
    const double krr = s + slp.potential * mn[2];
    const bool left_in = e >= 1;
    const bool right_in = e + 1 <= nodes - 2;
    if (left_in) {
      out.k_diag[e - 1] += kll;
      out.m_diag[e - 1] += md[0];
    }
    if (right_in) {
      out.k_diag[e] += krr;
      out.m_diag[e] += md[2];
    }
    if (left_in && right_in) {
      out.k_off[e - 1] += klr;
      out.m_off[e - 1] += md[1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(out.k_diag[i] > 0.0) || !(out.m_diag[i] > 0.0) || !std::isfinite(out.k_diag[i]) ||
        !std::isfinite(out.m_diag[i])) {
      throw NumericalError("assemble: matrices are not positive definite");
    }
  }
  return out;
}

// --- eigen solver ----------------------------------------------------------

namespace {

// Number of negative pivots in the LDL^T factorization of (d, e).
std::size_t negative_count(const std::vector<double>& d, const std::vector<double>& e) {
  std::size_t neg = 0;
  double piv = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    piv = i == 0 ? d[0] : d[i] - e[i - 1] * e[i - 1] / piv;
    if (piv == 0.0) piv = -std::numeric_limits<double>::min();
    if (piv < 0.0) ++neg;
  }
  return neg;
}

// Solves (d, e) x = b for a symmetric tridiagonal matrix.
std::vector<double> tridiag_solve(const std::vector<double>& d, const std::vector<double>& e, std::vector<double> b) {
  const std::size_t n = d.size();
  std::vector<double> piv(n);
  piv[0] = d[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double l = e[i - 1] / piv[i - 1];
    piv[i] = d[i] - l * e[i - 1];
    b[i] -= l * b[i - 1];
  }
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) b[i] -= e[i] * b[i + 1];
    b[i] /= piv[i];
  }
  return b;
}

std::vector<double> tridiag_mul(const std::vector<double>& d, const std::vector<double>& e,
                                const std::vector<double>& x) {
  const std::size_t n = d.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = d[i] * x[i];
    if (i > 0) s += e[i - 1] * x[i - 1];
    if (i + 1 < n) s += e[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

EigenResult smallest_eigen(const TridiagPair& pair, double tol) {
  const std::size_t n = pair.size();
  require(n >= 1, "smallest_eigen: empty system");
  require(pair.m_diag.size() == n && pair.k_off.size() + 1 == n && pair.m_off.size() + 1 == n,
          "smallest_eigen: inconsistent matrix sizes");
  require(tol > 0.0 && tol < 1.0, "smallest_eigen: tol must lie in (0, 1)");

  // congruence scaling so that diag(M) = 1
  std::vector<double> D(n), kd(n), md(n), ko(n - 1), mo(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pair.m_diag[i] > 0.0)) throw NumericalError("smallest_eigen: mass matrix is not positive definite");
    D[i] = 1.0 / std::sqrt(pair.m_diag[i]);
    kd[i] = pair.k_diag[i] * D[i] * D[i];
    md[i] = 1.0;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ko[i] = pair.k_off[i] * D[i] * D[i + 1];
    mo[i] = pair.m_off[i] * D[i] * D[i + 1];
  }
  if (negative_count(kd, ko) != 0) throw NumericalError("smallest_eigen: stiffness matrix is not positive definite");
  if (negative_count(md, mo) != 0) throw NumericalError("smallest_eigen: mass matrix is not positive definite");

  std::vector<double> shifted_d(n), shifted_e(n - 1);
  auto count_below = [&](double sigma) {
    for (std::size_t i = 0; i < n; ++i) shifted_d[i] = kd[i] - sigma * md[i];
    for (std::size_t i = 0; i + 1 < n; ++i) shifted_e[i] = ko[i] - sigma * mo[i];
    return negative_count(shifted_d, shifted_e);
  };

  double lo = 0.0;
  double hi = *std::min_element(kd.begin(), kd.end());
  hi *= 1.0 + 1e-8;
  int widen = 0;
  while (count_below(hi) == 0) {
    if (++widen > 60) throw NumericalError("smallest_eigen: bisection bracket failure");
    lo = hi;
    hi *= 2.0;
  }
  // bisect well below tol so the residual check has room for rounding
  const double target = std::max(0.01 * tol, 4.0 * std::numeric_limits<double>::epsilon());
  int it = 0;
  for (; hi - lo > target * hi; ++it) {
    if (it >= 400) throw NumericalError("smallest_eigen: bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);

  // inverse iteration at a shift just below lambda keeps the solve definite
  const double sigma = lo - (hi - lo);
  for (std::size_t i = 0; i < n; ++i) shifted_d[i] = kd[i] - sigma * md[i];
  for (std::size_t i = 0; i + 1 < n; ++i) shifted_e[i] = ko[i] - sigma * mo[i];
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
  for (int pass = 0; pass < 4; ++pass) {
    x = tridiag_solve(shifted_d, shifted_e, tridiag_mul(md, mo, x));
    const double nrm = std::sqrt(dot(x, tridiag_mul(md, mo, x)));
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalError("smallest_eigen: inverse iteration broke down");
    for (double& v : x) v /= nrm;
  }
  const auto kx = tridiag_mul(kd, ko, x);
  const auto mx = tridiag_mul(md, mo, x);
  double rn = 0.0, kn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = kx[i] - lambda * mx[i];
    rn += r * r;
    kn += kx[i] * kx[i];
  }
  EigenResult out;
  out.value = lambda;
  out.residual = std::sqrt(rn / kn);
  out.iterations = it;
  if (!(out.residual <= tol)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "smallest_eigen: residual %.3e exceeds tolerance %.3e", out.residual, tol);
    throw NumericalError(buf);
  }
  // fix the sign so the vector is positive where it is largest
  const auto imax = static_cast<std::size_t>(
      std::distance(x.begin(), std::max_element(x.begin(), x.end(), [](double p, double q) { return std::abs(p) < std::abs(q); })));
  const double sgn = x[imax] < 0.0 ? -1.0 : 1.0;
  out.vector.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.vector[i] = sgn * x[i] * D[i];
  return out;
}

// --- sharp constants -------------------------------------------------------

void RefinementPlan::validate() const {
  require(!T_list.empty(), "refinement plan: empty T list");
  require(T_list.size() == h_list.size(), "refinement plan: T and h lists must have equal length");
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    require(T_list[i] > 0.0 && h_list[i] > 0.0, "refinement plan: T and h must be positive");
    if (i > 0) {
      require(T_list[i] >= T_list[i - 1], "refinement plan: T list must be increasing");
      require(h_list[i] <= h_list[i - 1], "refinement plan: h list must be decreasing");
    }
  }
  require(k_max >= 1, "refinement plan: k_max must be >= 1");
  require(tol > 0.0 && tol < 1.0, "refinement plan: tol must lie in (0, 1)");
}

SharpEstimate sharp_constant(const ModeProblem& problem, const RefinementPlan& plan) {
  problem.validate();
  plan.validate();
  SharpEstimate est;
  est.problem = problem;
  est.mode = 1;
  const double slack = 1e-10;
  for (std::size_t lvl = 0; lvl < plan.T_list.size(); ++lvl) {
    const double T = plan.T_list[lvl], h = plan.h_list[lvl];
    std::vector<double> modes;
    for (int k = 1; k <= plan.k_max; ++k) {
      ModeProblem pk = problem;
      pk.k = k;
      const SLProblem1D slp = reduce_mode(pk);
      const Grid mesh = make_mesh(slp, T, h);
      const double lam = smallest_eigen(assemble(slp, mesh), plan.tol).value;
      if (lam < slp.known_lower_bound - 1e-9) est.one_sided = false;
      modes.push_back(lam);
    }
    for (std::size_t k = 1; k < modes.size(); ++k) {
      if (modes[k] < modes[k - 1] - slack * std::abs(modes[k - 1])) est.mode_monotone = false;
    }
    if (!est.trace.empty() && modes[0] > est.trace.back().value * (1.0 + slack)) est.trace_monotone = false;
    est.trace.push_back({T, h, modes[0]});
    est.mode_values = modes;
  }
  if (!est.mode_monotone) throw NumericalError("sharp_constant: eigenvalues decrease with the mode index");
  est.value = *std::min_element(est.mode_values.begin(), est.mode_values.end());
  return est;
}

// --- L^q quotient ----------------------------------------------------------

double cos_power_integral(double q) {
  require(q > 0.0, "cos_power_integral: q must be positive");
  return 2.0 * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(0.5 * (q + 1.0)) - std::lgamma(0.5 * q + 1.0));
}

namespace {

struct LqFunctional {
  std::vector<double> t;  // full mesh
  double q;
  const GaussRule* rule;

  // returns Q and accumulates dQ/dx into grad (interior indexing) when given
  double eval(const std::vector<double>& x, std::vector<double>* grad) const {
    const std::size_t nodes = t.size();
    if (grad) grad->assign(x.size(), 0.0);
    double Q = 0.0;
    for (std::size_t e = 0; e + 1 < nodes; ++e) {
      const double xl = e >= 1 ? x[e - 1] : 0.0;
      const double xr = e + 1 <= nodes - 2 ? x[e] : 0.0;
      const double mid = 0.5 * (t[e] + t[e + 1]);
      const double half = 0.5 * (t[e + 1] - t[e]);
      double gl = 0.0, gr = 0.0;
      for (std::size_t g = 0; g < rule->nodes.size(); ++g) {
        const double xi = rule->nodes[g];
        const double tt = mid + half * xi;
        const double pl = 0.5 * (1.0 - xi), pr = 0.5 * (1.0 + xi);
        const double f = xl * pl + xr * pr;
        const double af = std::abs(f);
        const double rho = std::pow(tt, -1.0 - 0.5 * q) * rule->weights[g] * half;
        Q += std::pow(af, q) * rho;
        if (grad && af > 0.0) {
          const double d = q * std::pow(af, q - 2.0) * f * rho;
          gl += d * pl;
          gr += d * pr;
        }
      }
      if (grad) {
        if (e >= 1) (*grad)[e - 1] += gl;
        if (e + 1 <= nodes - 2) (*grad)[e] += gr;
      }
    }
    return Q;
  }
};

}  // namespace

LqResult minimize_lq_quotient(double a, double q, const LqOptions& opts) {
  require(std::isfinite(a) && a > 1.0, "a must exceed 1");
  require(std::isfinite(q) && q > 2.0, "minimize_lq_quotient: q must exceed 2");
  require(opts.tol > 0.0, "minimize_lq_quotient: tol must be positive");
  require(opts.max_iter >= 1, "minimize_lq_quotient: max_iter must be >= 1");
  const SLProblem1D slp = reduce_mode(ModeProblem::critical_disk(a, 1));
  const Grid mesh = make_mesh(slp, opts.T, opts.h);
  const TridiagPair pair = assemble(slp, mesh);
  const std::size_t n = pair.size();
  const double L = slp.lower;

  LqFunctional func{std::vector<double>(mesh.nodes().begin(), mesh.nodes().end()), q, &gauss_legendre(opts.gauss_points)};
  const double cq = cos_power_integral(q);
  const double angular = AngularMode(1, 2).l2_mass();  // pi

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = mesh[i + 1];
    x[i] = opts.init ? opts.init(t) : (t - L) * std::exp(-(t - L));
    if (!std::isfinite(x[i])) throw InvalidArgument("minimize_lq_quotient: initial guess not finite");
  }
  auto normalize = [&](std::vector<double>& v) {
    const double e = dot(v, tridiag_mul(pair.k_diag, pair.k_off, v));
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("minimize_lq_quotient: initial guess has zero energy");
    const double s = 1.0 / std::sqrt(e);
    for (double& z : v) z *= s;
  };
  auto objective = [&](const std::vector<double>& v, double energy, std::vector<double>* dq, double* Qout) {
    const double Q = func.eval(v, dq);
    if (Qout) *Qout = Q;
    return angular * energy / std::pow(cq * Q, 2.0 / q);
  };
  normalize(x);

  LqResult res{0.0, {}, {}, {}, 0, false,
               RadialProfile(2, Profile1D([](double) { return 0.0; }, [](double) { return 0.0; }, {0.0, 1.0}))};
  std::vector<double> dq;
  double Q = 0.0;
  double J = objective(x, 1.0, &dq, &Q);
  res.objective.push_back(J);
  double alpha = 1.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    // gradient of J at a K-normalized point
    const auto kx = tridiag_mul(pair.k_diag, pair.k_off, x);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = J * (2.0 * kx[i] - (2.0 / q) * dq[i] / Q);
    const auto d = tridiag_solve(pair.k_diag, pair.k_off, g);
    const double gd = dot(g, d);
    if (gd < opts.tol * J) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    std::vector<double> trial(n), trial_dq;
    double trial_Q = 0.0, trial_J = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - alpha * d[i];
      normalize(trial);
      trial_J = objective(trial, 1.0, &trial_dq, &trial_Q);
      if (trial_J < J && trial_J <= J - 1e-4 * alpha * gd) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) throw NumericalError("minimize_lq_quotient: objective did not decrease after backtracking");
    x.swap(trial);
    dq.swap(trial_dq);
    Q = trial_Q;
    J = trial_J;
    res.objective.push_back(J);
    res.iterations = it + 1;
    alpha = std::min(2.0 * alpha, 16.0);
  }
  res.value = J;
  res.nodes = func.t;
  res.values.assign(func.t.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) res.values[i + 1] = x[i];

  auto data = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(res.nodes, res.values);
  const double r_min = a * std::exp(-res.nodes.back());
  auto locate = [data](double t) {
    const auto& tn = data->first;
    auto it = std::upper_bound(tn.begin(), tn.end(), t);
    std::size_t i = it == tn.begin() ? 0 : static_cast<std::size_t>(it - tn.begin()) - 1;
    return std::min(i, tn.size() - 2);
  };
  auto value = [data, locate, a](double r) {
    const double t = std::log(a / r);
    const std::size_t i = locate(t);
    const auto& tn = data->first;
    const auto& fv = data->second;
    const double w = (t - tn[i]) / (tn[i + 1] - tn[i]);
    return (1.0 - w) * fv[i] + w * fv[i + 1];
  };
  auto deriv = [data, locate, a](double r) {
    const double t = std::log(a / r);
    const std::size_t i = locate(t);
    const auto& tn = data->first;
    const auto& fv = data->second;
    return -(fv[i + 1] - fv[i]) / (tn[i + 1] - tn[i]) / r;
  };
  std::vector<double> bps;
  for (std::size_t i = res.nodes.size() - 2; i >= 1; --i) bps.push_back(a * std::exp(-res.nodes[i]));
  res.profile = RadialProfile(2, Profile1D(value, deriv, {r_min, 1.0}, std::move(bps)), true);
  return res;
}

}  // namespace hardylab
