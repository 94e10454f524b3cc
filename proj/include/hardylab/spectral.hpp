#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/radial.hpp"

namespace hardylab {

enum class Geometry { CriticalDisk, ClassicalBall, ClassicalWholeSpace };

std::string geometry_name(Geometry g);  // "critical-disk", "classical-ball", "classical-whole-space"
Geometry parse_geometry(const std::string& name);

struct ModeProblem {
  Geometry geometry = Geometry::CriticalDisk;
  double a = 2.718281828459045;  // CriticalDisk only
  int dim = 2;
  int k = 1;
  double q = 2.0;

  static ModeProblem critical_disk(double a, int k = 1, double q = 2.0) { return {Geometry::CriticalDisk, a, 2, k, q}; }
  static ModeProblem classical_ball(int dim, int k = 1) { return {Geometry::ClassicalBall, 1.0, dim, k, 2.0}; }
  static ModeProblem whole_space(int dim, int k = 1) { return {Geometry::ClassicalWholeSpace, 1.0, dim, k, 2.0}; }

  void validate() const;
};

// Densities in the transformed variable.
struct Density {
  enum class Kind { Unit, InverseSquare, Exponential };
  Kind kind = Kind::Unit;
  double rate = 0.0;  // e^{-rate t} for Exponential

  double operator()(double t) const;
  // int_{t1}^{t1+h} (t - t1)^j rho(t) dt for j = 0, 1, 2, in closed form.
  std::array<double, 3> moments(double t1, double h) const;
};

// Quotient int rho_n (f'^2 + V f^2) / int rho_d f^2 on (lower, inf), or on the
// whole line when two_sided, with f vanishing at the finite end.
struct SLProblem1D {
  double lower = 0.0;
  bool two_sided = false;
  Density numerator;
  double potential = 0.0;
  Density denominator;
  double known_lower_bound = 0.0;  // continuum infimum, or a proven floor for it
};

// Exact reduction of mode k of the problem.
//   CriticalDisk:  t = log(a/r) on (log a, inf), (f'^2 + k^2 f^2) / (f^2 t^-2)
//   ClassicalBall: s = log(1/r) on (0, inf), weight e^{-(N-2)s} on both sides, V = mu_k
//   WholeSpace:    the same on the whole line
SLProblem1D reduce_mode(const ModeProblem& problem);

// Mesh for truncation at T with spacing h, anchored so that halving h or
// growing T gives nested meshes. The last node is the first anchored node
// >= T. For CriticalDisk with log a < 1 the spacing is uniform in log t on
// (log a, 1) and in t beyond, which resolves the t^-2 weight near the end.
Grid make_mesh(const SLProblem1D& slp, double T, double h);

struct TridiagPair {
  // interior unknowns only (Dirichlet at both mesh ends)
  std::vector<double> k_diag, k_off;
  std::vector<double> m_diag, m_off;
  std::vector<double> mesh;

  std::size_t size() const { return k_diag.size(); }
};

TridiagPair assemble(const SLProblem1D& slp, const Grid& mesh);

struct EigenResult {
  double value = 0.0;
  std::vector<double> vector;  // M-normalized, interior nodes
  double residual = 0.0;       // ||Kx - lambda Mx|| / ||Kx||
  int iterations = 0;
};

// Smallest eigenvalue of K x = lambda M x by inertia bisection, then inverse
// iteration for the vector.
EigenResult smallest_eigen(const TridiagPair& pair, double tol = 1e-10);

struct TraceEntry {
  double T = 0.0;
  double h = 0.0;
  double value = 0.0;
};

struct SharpEstimate {
  ModeProblem problem;
  int mode = 1;
  double value = 0.0;
  std::vector<TraceEntry> trace;             // k = 1 per refinement level
  std::vector<double> mode_values;           // finest level, k = 1..k_max
  bool one_sided = true;
  bool trace_monotone = true;
  bool mode_monotone = true;
};

struct RefinementPlan {
  std::vector<double> T_list{11.0, 21.0, 41.0};
  std::vector<double> h_list{0.02, 0.01, 0.005};
  int k_max = 1;
  double tol = 1e-10;

  void validate() const;
};

SharpEstimate sharp_constant(const ModeProblem& problem, const RefinementPlan& plan = {});

struct LqOptions {
  double T = 21.0;
  double h = 0.01;
  double tol = 1e-10;
  int max_iter = 5000;
  int gauss_points = 4;
  std::function<double(double)> init;  // of t; default (t - L) e^{-(t - L)}
};

struct LqResult {
  double value = 0.0;
  std::vector<double> nodes;     // t mesh including both ends
  std::vector<double> values;    // f at the mesh nodes (zero at the ends)
  std::vector<double> objective; // per accepted iteration, strictly decreasing
  int iterations = 0;
  bool converged = false;
  RadialProfile profile;         // the minimizer as a function of r
};

// Mode-1 upper bound for inf |grad u|_2^2 / |u|_{L^q(w)}^2 on the disk with the
// critical weight w = |x|^-2 (log(a/|x|))^{-1-q/2}. Sobolev-preconditioned
// gradient descent with Armijo backtracking.
LqResult minimize_lq_quotient(double a, double q, const LqOptions& opts = {});

// int_0^{2pi} |cos theta|^q dtheta
double cos_power_integral(double q);

}  // namespace hardylab
