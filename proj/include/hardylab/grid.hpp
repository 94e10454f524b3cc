#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hardylab {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// How nodes are distributed over the interval.
//   Uniform:       equal spacing, both endpoints included.
//   GeometricLow:  x_i - lo = (hi - lo) * ratio^(n-1-i); lo itself is never a node.
//   GeometricHigh: hi - x_i = (hi - lo) * ratio^i reversed; hi itself is never a node.
struct Grading {
  enum class Kind { Uniform, GeometricLow, GeometricHigh };

  Kind kind = Kind::Uniform;
  double ratio = 0.0;  // only for geometric kinds, in (0, 1)

  static Grading uniform() { return {}; }
  static Grading geometric_low(double ratio) { return {Kind::GeometricLow, ratio}; }
  static Grading geometric_high(double ratio) { return {Kind::GeometricHigh, ratio}; }
};

class Grid {
 public:
  // Takes ownership of strictly increasing nodes lying in `domain`.
  Grid(std::vector<double> nodes, Interval domain, Grading grading = Grading::uniform());

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  const Interval& domain() const { return domain_; }
  const Grading& grading() const { return grading_; }

  // Same domain with the interval midpoints inserted.
  Grid refined() const;

  // Union with extra points that fall strictly inside (front, back).
  Grid with_points(std::span<const double> extra) const;

 private:
  std::vector<double> nodes_;
  Interval domain_;
  Grading grading_;
};

Grid build_grid(Interval interval, std::size_t count, Grading grading = Grading::uniform());

// Nodes equally spaced in log r between r_min and r_max, `per_unit` nodes per unit of ln r,
// plus any breakpoints inside the range. Used for radial profiles with features near 0.
Grid log_grid(double r_min, double r_max, double per_unit, std::span<const double> breakpoints = {});

}  // namespace hardylab
