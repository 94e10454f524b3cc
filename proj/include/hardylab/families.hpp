#pragma once

#include <string>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/radial.hpp"

namespace hardylab {

struct FamilySpec {
  enum class Kind { UAlpha, VM, FABall, FAWholeSpace, ULambda };

  Kind kind = Kind::UAlpha;
  double alpha = 1.0;     // UAlpha, and the base of ULambda
  double a = 1.0;         // log offset of the critical weight (UAlpha, ULambda)
  int m = 2;              // VM
  int dim = 2;
  double exponent = 1.0;  // FABall, FAWholeSpace
  double lambda = 1.0;    // ULambda
  double q = 2.0;         // exponent of the weighted norm in the quotient
  double r_max = 1e6;     // truncation radius for FAWholeSpace profiles

  static FamilySpec u_alpha(double alpha, double a = 1.0);
  static FamilySpec v_m(int m, int dim = 3);
  static FamilySpec fa_ball(double exponent, int dim = 3);
  static FamilySpec fa_whole_space(double exponent, int dim = 3);
  static FamilySpec u_lambda(double lambda, double a, double alpha = 1.0);
};

std::string family_name(FamilySpec::Kind kind);  // u_alpha, v_m, f_a_ball, f_a_whole, u_lambda
FamilySpec::Kind parse_family(const std::string& name);

struct Family {
  FamilySpec spec;
  RadialProfile profile;
  AngularMode mode;                  // k = 1 except ULambda (radial, k = 0)
  WeightSpec weight;                 // denominator weight of the natural quotient
  std::vector<double> junction_gaps; // |left - right| at each piece junction
};

// Builds the radial factor with closed-form derivatives and checks junction
// continuity to 1e-12.
Family make_family(const FamilySpec& spec);

// u_l(r) = l^{-1/2} f(a (r/a)^l), supported in r <= a^{1 - 1/l}. Base must
// live in the unit disk (N = 2).
RadialProfile transform_u_lambda(const RadialProfile& base, double lambda, double a);

struct QuotientReport {
  double numerator = 0.0;
  double denominator = 0.0;
  double quotient = 0.0;
  double error = 0.0;
  double numerator_angular = 1.0;    // angular L^2 mass of the mode
  double denominator_angular = 1.0;  // angular L^q mass of the mode
  double q = 2.0;
  bool exact = false;                // closed-form piece integrals were used
};

// numerator = mode_energy, denominator = int |f|^q w r^{N-1} dr; for q = 2 the
// angular factors cancel, otherwise quotient = A2 num / (Aq den)^{2/q}.
QuotientReport quotient(const RadialProfile& profile, const AngularMode& mode, const WeightSpec& weight,
                        const Grid& grid);

// Default quadrature grid for a family: graded toward r = 0, containing the
// junctions.
Grid family_grid(const Family& family, double per_unit = 400.0);

// Closed-form quotient where available (UAlpha with q = 2, VM, FABall,
// FAWholeSpace), quadrature on family_grid otherwise.
QuotientReport family_quotient(const FamilySpec& spec);

// Upper bound a^2 + (N - 1) + (2a - N + 2) for the whole-space family.
double whole_space_quotient_bound(double exponent, int dim);

// int_lo^hi sum c_j r^{e_j} dr in closed form; hi may be +inf when every
// exponent is < -1.
struct PowerTerm {
  double coeff = 0.0;
  double exponent = 0.0;
};
double integrate_power_terms(const std::vector<PowerTerm>& terms, double lo, double hi);

}  // namespace hardylab
