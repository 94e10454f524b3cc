#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/radial.hpp"
#include "hardylab/rearrangement.hpp"

namespace hardylab {

struct TrialConfig {
  long trials = 1000;
  std::uint64_t seed = 42;
  int min_pieces = 1;
  int max_pieces = 50;
  double value_lo = 1e-3, value_hi = 1e3;
  double measure_lo = 1e-3, measure_hi = 1e3;
  unsigned threads = 1;

  void validate() const;
};

// splitmix64 of (root, index); the seed of trial `index`.
std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index);

// mt19937_64 with hand-rolled conversions, so draws are identical across
// standard libraries.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : gen_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 gen_;
};

StepFunction random_step(TrialRng& rng, const TrialConfig& cfg, int dim);

struct SuiteReport {
  std::string name;
  long trials = 0;
  long violations = 0;
  long skipped = 0;
  double worst = 0.0;  // largest relative excess (lhs - rhs) / rhs seen; negative means slack
  std::vector<std::string> messages;
  std::vector<std::pair<std::string, double>> metrics;

  bool passed() const { return violations == 0; }
};

// --- interpolation ---------------------------------------------------------

struct InterpolationTriple {
  double p, q, r;  // 1 <= p < q < r <= inf

  InterpolationTriple(double p, double q, double r);
  double lambda() const;
  double D() const;
  // exponents of A s^a + B s^{-b} in the proof
  double a() const;
  double b() const;
};

struct InterpolationSides {
  double norm_q = 0.0;   // ||u||_q
  double weak_p = 0.0;   // ||u||_{p,inf}
  double weak_r = 0.0;   // ||u||_{r,inf} (sup u for r = inf)
  double bound = 0.0;    // D weak_p^lambda weak_r^(1-lambda)
  double s_star = 0.0;
  double optimum = 0.0;  // A s*^a + B s*^-b, which equals bound^q
};

InterpolationSides interpolation_sides(const StepFunction& u, const InterpolationTriple& t);
SuiteReport check_interpolation(const InterpolationTriple& t, const TrialConfig& cfg);

// --- Holder failure in weak L^p ---------------------------------------------

// ||fg||_2 / (||f||_q ||g||_{p,inf}) for f = |x|^{-alpha} 1_{B1}, g = |x|^{-N/p},
// alpha = N/q - eps, from ||fg||_2^2 = omega/(2 eps), ||f||_q^q = omega/(q eps)
// and ||g||_{p,inf} = (omega/N)^{1/p}.
double holder_failure_ratio(double eps, int dim, double p, double q);
// least-squares slope of log ratio against log eps
double holder_failure_slope(int dim, double p, double q, const std::vector<double>& eps);

// --- radial lemma ----------------------------------------------------------

struct RadialBoundReport {
  double lhs = 0.0;  // sup over grid of |f(r)| r^{(N-1)/2}
  double rhs = 0.0;  // sqrt(2/omega) ||f||_2^{1/2} ||grad f||_2^{1/2}
  double argmax = 0.0;
};
RadialBoundReport check_radial_bound(const RadialProfile& profile, const Grid& grid);

// --- Poincare on the circle ------------------------------------------------

struct PoincareReport {
  double l2 = 0.0;         // int |g|^2
  double dirichlet = 0.0;  // int |g'|^2
  bool equality = false;   // only the k = 1 mode is present
};
// coeffs[k] = (a_k, b_k) of a_k cos k theta + b_k sin k theta; coeffs[0] must vanish.
PoincareReport check_poincare_circle(const std::vector<std::pair<double, double>>& coeffs);

// --- exponent algebra ------------------------------------------------------

struct ExponentSplit {
  double r = 0.0;
  double r_tilde = 0.0;
  double identity_error = 0.0;  // |r_tilde - (r/2 + 1)| / r_tilde
};
ExponentSplit exponent_split(double p, double q);

// --- 1D Hardy --------------------------------------------------------------

struct HardyReport {
  double lhs = 0.0;  // int f'^2
  double rhs = 0.0;  // (1/4) int f^2 / t^2
  double gap = 0.0;
};
// f on (L, T) with f(L) = 0; integrals over the grid (nodes in t).
HardyReport check_hardy_1d(const Profile1D& f, double L, const Grid& grid);

// Energy of the Schwarz symmetrization of a nonnegative piecewise-linear
// radial profile through the coarea formula, and the profile's own energy.
struct PolyaSzegoReport {
  double energy = 0.0;
  double symmetrized_energy = 0.0;
};
PolyaSzegoReport polya_szego_piecewise_linear(const std::vector<double>& r, const std::vector<double>& f, int dim);

// --- suites ----------------------------------------------------------------

std::vector<std::string> suite_names();
std::vector<SuiteReport> run_suite(const std::string& name, const TrialConfig& cfg);

std::string to_junit_xml(const std::vector<SuiteReport>& reports);

}  // namespace hardylab
