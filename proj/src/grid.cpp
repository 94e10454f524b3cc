#include "hardylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardylab/errors.hpp"

namespace hardylab {

Grid::Grid(std::vector<double> nodes, Interval domain, Grading grading)
    : nodes_(std::move(nodes)), domain_(domain), grading_(grading) {
  require(domain_.hi > domain_.lo, "grid: degenerate interval");
  require(nodes_.size() >= 2, "grid: need at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    require(std::isfinite(nodes_[i]), "grid: non-finite node");
    require(domain_.contains(nodes_[i]), "grid: node " + std::to_string(nodes_[i]) + " outside domain");
    if (i > 0) require(nodes_[i] > nodes_[i - 1], "grid: nodes must be strictly increasing");
  }
  if (grading_.kind != Grading::Kind::Uniform) {
    require(grading_.ratio > 0.0 && grading_.ratio < 1.0, "grid: geometric ratio must lie in (0,1)");
  }
}

Grid Grid::refined() const {
  std::vector<double> out;
  out.reserve(2 * nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    out.push_back(nodes_[i]);
    out.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
  }
  out.push_back(nodes_.back());
  return Grid(std::move(out), domain_, grading_);
}

Grid Grid::with_points(std::span<const double> extra) const {
  std::vector<double> out(nodes_.begin(), nodes_.end());
  for (double x : extra) {
    if (x > nodes_.front() && x < nodes_.back()) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  // drop near-duplicates so the strict-increase invariant holds
  std::vector<double> uniq;
  uniq.reserve(out.size());
  for (double x : out) {
    if (uniq.empty() || x - uniq.back() > 1e-14 * std::max(std::abs(x), std::abs(uniq.back()))) uniq.push_back(x);
  }
  if (uniq.back() != nodes_.back()) uniq.back() = nodes_.back();
  return Grid(std::move(uniq), domain_, grading_);
}

Grid build_grid(Interval interval, std::size_t count, Grading grading) {
  require(interval.hi > interval.lo, "build_grid: degenerate interval");
  require(count >= 2, "build_grid: count must be at least 2");
  const double len = interval.length();
  std::vector<double> nodes(count);
  switch (grading.kind) {
    case Grading::Kind::Uniform: {
      const double n = static_cast<double>(count - 1);
      for (std::size_t i = 0; i < count; ++i) {
        nodes[i] = interval.lo + len * (static_cast<double>(i) / n);
      }
      nodes.back() = interval.hi;
      break;
    }
    case Grading::Kind::GeometricLow: {
      require(grading.ratio > 0.0 && grading.ratio < 1.0, "build_grid: geometric ratio must lie in (0,1)");
      for (std::size_t i = 0; i < count; ++i) {
        nodes[i] = interval.lo + len * std::pow(grading.ratio, static_cast<double>(count - 1 - i));
      }
      nodes.back() = interval.hi;
      require(nodes.front() > interval.lo, "build_grid: geometric grid underflows at the low end");
      break;
    }
    case Grading::Kind::GeometricHigh: {
      require(grading.ratio > 0.0 && grading.ratio < 1.0, "build_grid: geometric ratio must lie in (0,1)");
      for (std::size_t i = 0; i < count; ++i) {
        nodes[i] = interval.hi - len * std::pow(grading.ratio, static_cast<double>(i));
      }
      nodes.front() = interval.lo;
      require(nodes.back() < interval.hi, "build_grid: geometric grid underflows at the high end");
      break;
    }
  }
  return Grid(std::move(nodes), interval, grading);
}

Grid log_grid(double r_min, double r_max, double per_unit, std::span<const double> breakpoints) {
  require(r_min > 0.0 && r_max > r_min, "log_grid: need 0 < r_min < r_max");
  require(per_unit > 0.0, "log_grid: per_unit must be positive");
  const double span = std::log(r_max / r_min);
  const auto count = static_cast<std::size_t>(std::ceil(span * per_unit)) + 1;
  const double ratio = std::exp(-span / static_cast<double>(count - 1));
  auto g = build_grid({0.0, r_max}, std::max<std::size_t>(count, 2), Grading::geometric_low(ratio));
  return g.with_points(breakpoints);
}

}  // namespace hardylab
