#include "hardylab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// b^a - c^a for b = c + m > c >= 0, without cancellation when m << c.
double power_increment(double c, double m, double a) {
  if (c == 0.0) return std::pow(m, a);
  return std::pow(c, a) * std::expm1(a * std::log1p(m / c));
}

// int_T^inf (c t^-g)^s t^(e-1) dt with e the extra power from the measure.
double tail_power_integral(const PowerTail& tail, double T, double s, double e) {
  const double expo = e - tail.exponent * s;  // integrand ~ t^(expo-1)
  if (expo >= 0.0) return kInf;
  return std::pow(tail.coeff, s) * std::pow(T, expo) / (-expo);
}

}  // namespace

StepFunction::StepFunction(std::vector<StepPiece> pieces, int dim, std::optional<PowerTail> tail)
    : pieces_(std::move(pieces)), dim_(dim), tail_(tail) {
  require(dim_ >= 1, "step function: dimension must be positive");
  require(!pieces_.empty(), "step function: need at least one piece");
  for (const auto& pc : pieces_) {
    require(!std::isnan(pc.value) && std::isfinite(pc.value), "step function: value must be finite");
    require(pc.value >= 0.0, "step function: negative value (apply |u| first)");
    require(std::isfinite(pc.measure) && pc.measure > 0.0, "step function: measures must be positive and finite");
  }
  if (tail_) {
    require(tail_->coeff > 0.0 && std::isfinite(tail_->coeff), "step function: tail coefficient must be positive");
    require(tail_->exponent > 0.0 && std::isfinite(tail_->exponent), "step function: tail exponent must be positive");
    double vmin = kInf;
    for (const auto& pc : pieces_) vmin = std::min(vmin, pc.value);
    const double start = tail_->coeff * std::pow(total_measure(), -tail_->exponent);
    require(start <= vmin * (1.0 + 1e-12), "step function: tail must not exceed the smallest piece value");
  }
}

double StepFunction::total_measure() const {
  double s = 0.0;
  for (const auto& pc : pieces_) s += pc.measure;
  return s;
}

bool StepFunction::canonical() const {
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (!(pieces_[i].value < pieces_[i - 1].value)) return false;
  }
  return true;
}

StepFunction decreasing_rearrangement(const StepFunction& step) {
  std::vector<StepPiece> sorted = step.pieces();
  std::stable_sort(sorted.begin(), sorted.end(), [](const StepPiece& x, const StepPiece& y) { return x.value > y.value; });
  std::vector<StepPiece> merged;
  merged.reserve(sorted.size());
  for (const auto& pc : sorted) {
    if (!merged.empty() && merged.back().value == pc.value) {
      merged.back().measure += pc.measure;
    } else {
      merged.push_back(pc);
    }
  }
  return StepFunction(std::move(merged), step.dim(), step.tail());
}

double rearranged_value(const StepFunction& step, double t) {
  require(t >= 0.0, "rearranged_value: t must be nonnegative");
  const StepFunction canon = step.canonical() ? step : decreasing_rearrangement(step);
  double acc = 0.0;
  for (const auto& pc : canon.pieces()) {
    acc += pc.measure;
    if (t < acc) return pc.value;
  }
  if (canon.tail()) return canon.tail()->coeff * std::pow(std::max(t, acc), -canon.tail()->exponent);
  return 0.0;
}

double symmetrized_value(const StepFunction& step, double r) {
  require(r >= 0.0, "symmetrized_value: r must be nonnegative");
  const int n = step.dim();
  return rearranged_value(step, sphere_area(n) * std::pow(r, n) / n);
}

double power_sum(const StepFunction& step, double s) {
  require(s > 0.0, "power_sum: exponent must be positive");
  const StepFunction canon = step.canonical() ? step : decreasing_rearrangement(step);
  double sum = 0.0;
  for (const auto& pc : canon.pieces()) sum += std::pow(pc.value, s) * pc.measure;
  if (canon.tail()) sum += tail_power_integral(*canon.tail(), canon.total_measure(), s, 1.0);
  return sum;
}

void LorentzParams::validate() const {
  require(p >= 1.0 && std::isfinite(p), "lorentz: p must lie in [1, inf)");
  require(q >= 1.0 && !std::isnan(q), "lorentz: q must be >= 1 or inf");
}

double lorentz_norm(const StepFunction& step, const LorentzParams& params) {
  params.validate();
  const StepFunction canon = step.canonical() ? step : decreasing_rearrangement(step);
  const double p = params.p, q = params.q;
  double cum = 0.0;
  if (std::isinf(q)) {
    double sup = 0.0;
    for (const auto& pc : canon.pieces()) {
      cum += pc.measure;
      sup = std::max(sup, pc.value * std::pow(cum, 1.0 / p));
    }
    if (canon.tail()) {
      const auto& tl = *canon.tail();
      const double d = 1.0 / p - tl.exponent;
      if (d > 0.0) return kInf;
      sup = std::max(sup, d == 0.0 ? tl.coeff : tl.coeff * std::pow(cum, d));
    }
    return sup;
  }
  const double a = q / p;
  double sum = 0.0;
  for (const auto& pc : canon.pieces()) {
    if (pc.value > 0.0) sum += std::pow(pc.value, q) * (p / q) * power_increment(cum, pc.measure, a);
    cum += pc.measure;
  }
  if (canon.tail()) sum += tail_power_integral(*canon.tail(), cum, q, a);
  if (std::isinf(sum)) return kInf;
  return std::pow(sum, 1.0 / q);
}

StepFunction dilate(const StepFunction& step, double m, double beta) {
  require(m > 0.0 && std::isfinite(m), "dilate: m must be positive");
  require(std::isfinite(beta), "dilate: beta must be finite");
  const int n = step.dim();
  const double vs = std::pow(m, beta);
  const double ms = std::pow(m, -n);
  std::vector<StepPiece> out = step.pieces();
  for (auto& pc : out) {
    pc.value *= vs;
    pc.measure *= ms;
  }
  std::optional<PowerTail> tail = step.tail();
  if (tail) tail->coeff *= std::pow(m, beta - n * tail->exponent);
  return StepFunction(std::move(out), n, tail);
}

StepFunction vanishing(const StepFunction& step, double m) {
  require(m > 0.0 && std::isfinite(m), "vanishing: m must be positive");
  return dilate(step, 1.0 / m, 0.5 * step.dim());
}

StepFunction concentration(const StepFunction& step, double m) { return dilate(step, m, 0.5 * (step.dim() - 2)); }

BoundPair tail_head_bound(const StepFunction& step, double p, double R, BoundSide side) {
  require(R > 0.0 && std::isfinite(R), "tail_head_bound: R must be positive");
  const StepFunction canon = step.canonical() ? step : decreasing_rearrangement(step);
  const double weak = lorentz_norm(canon, {p, LorentzParams::inf});
  if (!std::isfinite(weak)) throw NumericalError("tail_head_bound: divergent rhs (weak norm is infinite)");
  BoundPair out;
  if (side == BoundSide::Tail) {
    require(p >= 1.0 && p < 2.0, "tail bound needs 1 <= p < 2");
    double cum = 0.0;
    for (const auto& pc : canon.pieces()) {
      const double lo = std::max(cum, R);
      cum += pc.measure;
      if (cum > lo) out.lhs += pc.value * pc.value * (cum - lo);
    }
    if (canon.tail()) out.lhs += tail_power_integral(*canon.tail(), std::max(cum, R), 2.0, 1.0);
    out.rhs = weak * weak * std::pow(R, 1.0 - 2.0 / p) / (2.0 / p - 1.0);
  } else {
    const int n = canon.dim();
    require(n >= 3, "head bound needs N >= 3");
    const double s = 2.0 * n / (n - 2.0);
    require(p > s && std::isfinite(p), "head bound needs p > 2N/(N-2)");
    double cum = 0.0;
    for (const auto& pc : canon.pieces()) {
      if (cum >= R) break;
      const double hi = std::min(cum + pc.measure, R);
      out.lhs += std::pow(pc.value, s) * (hi - cum);
      cum += pc.measure;
    }
    if (canon.tail() && R > cum) {
      const auto& tl = *canon.tail();
      const double e = 1.0 - tl.exponent * s;
      const double c = std::pow(tl.coeff, s);
      out.lhs += e == 0.0 ? c * std::log(R / cum) : c * (std::pow(R, e) - std::pow(cum, e)) / e;
    }
    out.rhs = std::pow(weak, s) * std::pow(R, 1.0 - s / p) / (1.0 - s / p);
  }
  return out;
}

StepFunction symmetrize_radial(const RadialProfile& profile, const Grid& grid) {
  const int n = profile.dim();
  const double area = sphere_area(n);
  std::vector<StepPiece> slabs;
  slabs.reserve(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double r0 = grid[i], r1 = grid[i + 1];
    const double v = profile.value(r0);
    require(!std::isnan(v), "symmetrize_radial: NaN sample");
    require(v >= 0.0, "symmetrize_radial: negative sample (apply |f| first)");
    const double meas = area * (std::pow(r1, n) - std::pow(r0, n)) / n;
    slabs.push_back({v, meas});
  }
  return decreasing_rearrangement(StepFunction(std::move(slabs), n));
}

namespace {

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

}  // namespace

StepFunction parse_step_csv(const std::string& text, int dim) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "step csv: empty input");
  require(trim(line) == "value,measure", "step csv: expected header 'value,measure'");
  std::vector<StepPiece> pieces;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "step csv: missing comma on line " + std::to_string(lineno));
    const std::string a = trim(line.substr(0, comma)), b = trim(line.substr(comma + 1));
    char* end = nullptr;
    const double v = std::strtod(a.c_str(), &end);
    require(!a.empty() && *end == '\0', "step csv: bad value on line " + std::to_string(lineno));
    const double m = std::strtod(b.c_str(), &end);
    require(!b.empty() && *end == '\0', "step csv: bad measure on line " + std::to_string(lineno));
    pieces.push_back({v, m});
  }
  require(!pieces.empty(), "step csv: no rows");
  return decreasing_rearrangement(StepFunction(std::move(pieces), dim));
}

StepFunction load_step_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  require(in.good(), "step csv: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_step_csv(buf.str(), dim);
}

}  // namespace hardylab
