#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/radial.hpp"

namespace hardylab {

struct StepPiece {
  double value = 0.0;
  double measure = 0.0;
};

// u*(t) = coeff * t^-exponent for t beyond the pieces. Lets a step function
// carry an exact power-law tail, which is how weak-L^p extremals are written.
struct PowerTail {
  double coeff = 0.0;
  double exponent = 0.0;
};

// Layer-cake function on R^N: value v_i on a set of measure m_i. Canonical
// form lists values strictly decreasing with equal values merged; the pieces
// of a canonical function read left to right are u* on consecutive intervals.
class StepFunction {
 public:
  StepFunction(std::vector<StepPiece> pieces, int dim, std::optional<PowerTail> tail = std::nullopt);

  const std::vector<StepPiece>& pieces() const { return pieces_; }
  int dim() const { return dim_; }
  const std::optional<PowerTail>& tail() const { return tail_; }
  double total_measure() const;  // of the pieces; the tail adds infinite measure
  bool canonical() const;

 private:
  std::vector<StepPiece> pieces_;
  int dim_;
  std::optional<PowerTail> tail_;
};

// Sort by value, merge equal values. Throws on negative values.
StepFunction decreasing_rearrangement(const StepFunction& step);

// u*(t), right-continuous.
double rearranged_value(const StepFunction& step, double t);
// u#(r) = u*(omega r^N / N).
double symmetrized_value(const StepFunction& step, double r);

// Sum v_i^s m_i plus the tail contribution; +inf when the tail is not s-integrable.
double power_sum(const StepFunction& step, double s);

struct LorentzParams {
  static constexpr double inf = std::numeric_limits<double>::infinity();

  double p = 2.0;
  double q = 2.0;  // may be +inf

  void validate() const;
};

// ||u||_{p,q} = (int_0^inf (t^{1/p} u*(t))^q dt/t)^{1/q}, or sup t^{1/p} u*(t)
// for q = inf. Closed form per piece; +inf for divergent norms.
double lorentz_norm(const StepFunction& step, const LorentzParams& params);

// Layer cake of x -> m^beta u(m x).
StepFunction dilate(const StepFunction& step, double m, double beta);
// x -> m^{-N/2} u(x/m), i.e. dilate(step, 1/m, N/2); L^2-invariant.
StepFunction vanishing(const StepFunction& step, double m);
// x -> m^{(N-2)/2} u(m x)
StepFunction concentration(const StepFunction& step, double m);

enum class BoundSide { Tail, Head };

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Tail: int_R^inf (u*)^2 dt <= ||u||_{p,inf}^2 int_R^inf t^{-2/p} dt, p < 2.
// Head: int_0^R (u*)^s dt <= ||u||_{p,inf}^s int_0^R t^{-s/p} dt with
// s = 2N/(N-2), p > s.
BoundPair tail_head_bound(const StepFunction& step, double p, double R, BoundSide side);

// Annulus slabs [r_i, r_{i+1}) carrying f(r_i), then rearranged.
StepFunction symmetrize_radial(const RadialProfile& profile, const Grid& grid);

// CSV with header `value,measure`; canonicalized on load.
StepFunction parse_step_csv(const std::string& text, int dim);
StepFunction load_step_csv(const std::string& path, int dim);

}  // namespace hardylab
