#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardylab/grid.hpp"

namespace hardylab {

// Surface area of the unit sphere S^{N-1} in R^N.
double sphere_area(int dim);

// A real function on an interval with its derivative. Breakpoints mark
// interior points where the function is only piecewise smooth; grids built
// for it should contain them.
class Profile1D {
 public:
  using Fn = std::function<double(double)>;

  Profile1D(Fn value, Fn derivative, Interval domain, std::vector<double> breakpoints = {});

  double value(double x) const { return value_(x); }
  double derivative(double x) const { return derivative_(x); }
  const Interval& domain() const { return domain_; }
  std::span<const double> breakpoints() const { return breakpoints_; }

  // Samples (x_i, f_i) joined by the cubic Hermite interpolant whose nodal
  // slopes are second-order finite differences (central inside, one-sided at
  // the ends).
  static Profile1D from_samples(std::vector<double> x, std::vector<double> f);

 private:
  Fn value_;
  Fn derivative_;
  Interval domain_;
  std::vector<double> breakpoints_;
};

// Radial factor f(r) of a function on R^N (or on a ball). r = 0 is never
// evaluated by the quadratures below.
class RadialProfile {
 public:
  RadialProfile(int dim, Profile1D f, bool dirichlet_outer = false);

  int dim() const { return dim_; }
  const Profile1D& function() const { return f_; }
  double value(double r) const { return f_.value(r); }
  double derivative(double r) const { return f_.derivative(r); }
  const Interval& domain() const { return f_.domain(); }
  double outer_radius() const { return f_.domain().hi; }
  std::span<const double> breakpoints() const { return f_.breakpoints(); }
  bool dirichlet_outer() const { return dirichlet_outer_; }

  // Finite values and derivatives on every node; for Dirichlet profiles also
  // |f(R)| <= 1e-12 max|f| over the grid. Throws InvalidArgument otherwise.
  void validate_on(const Grid& grid) const;

 private:
  int dim_;
  Profile1D f_;
  bool dirichlet_outer_;
};

// CSV with header `r,value`. Rejects duplicate or decreasing radii.
RadialProfile load_profile_csv(const std::string& path, int dim);
RadialProfile parse_profile_csv(const std::string& text, int dim);

struct WeightSpec {
  enum class Kind { PlainMass, ClassicalHardy, CriticalHardy };

  Kind kind = Kind::PlainMass;
  double a = 1.0;  // CriticalHardy only
  double q = 2.0;  // CriticalHardy only

  static WeightSpec plain_mass() { return {}; }
  static WeightSpec classical_hardy() { return {Kind::ClassicalHardy, 1.0, 2.0}; }
  static WeightSpec critical_hardy(double a, double q = 2.0) { return {Kind::CriticalHardy, a, q}; }

  // Weight relative to r^{N-1} dr.
  //   PlainMass 1, ClassicalHardy r^-2, CriticalHardy r^-2 (log(a/r))^(-1-q/2).
  double operator()(double r) const;
  void validate(int dim) const;
};

// Laplace-Beltrami mode k on S^{N-1}, represented by the harmonic
// Re (x_1 + i x_2)^k (cos k theta for N = 2, the coordinate x_1 for k = 1).
struct AngularMode {
  int k = 1;
  int dim = 2;

  AngularMode(int k, int dim);

  double eigenvalue() const { return static_cast<double>(k) * (k + dim - 2); }
  // Integrals of |g|^2 and |g|^q over the sphere.
  double l2_mass() const;
  double lq_mass(double q) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Composite trapezoid on `nodes` with one Richardson halving step. Intervals
// whose end node gives a non-finite integrand (only allowed at the first and
// last node) switch to the open midpoint rule with the same extrapolation.
// Nodes listed in `kinks` are evaluated as one-sided limits from each side, so
// piecewise integrands keep full order when their junctions are nodes.
QuadResult composite_quadrature(const std::function<double(double)>& integrand, std::span<const double> nodes,
                                std::span<const double> kinks = {});

// int |f|^power w(r) r^{N-1} dr over the grid span; angular factor excluded.
QuadResult integrate(const RadialProfile& profile, const WeightSpec& weight, const Grid& grid, double power = 2.0);

// int (f'^2 + mu_k f^2 / r^2) r^{N-1} dr over the grid span.
QuadResult mode_energy(const RadialProfile& profile, const AngularMode& mode, const Grid& grid);

// int f g w r^{N-1} dr for two profiles of the same dimension.
QuadResult weighted_inner_product(const RadialProfile& f, const RadialProfile& g, const WeightSpec& weight,
                                  const Grid& grid);

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int points);

}  // namespace hardylab
