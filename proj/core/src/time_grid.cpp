#include "lk/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lk {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    throw std::invalid_argument("TimeGrid: need at least two nodes");
  if (points_.front() != 0.0)
    throw std::invalid_argument("TimeGrid: first node must be 0");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i] > points_[i - 1]))
      throw std::invalid_argument("TimeGrid: nodes must be strictly increasing");
  if (!(points_.back() > 0.0) || !std::isfinite(points_.back()))
    throw std::invalid_argument("TimeGrid: horizon must be positive and finite");
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t segments) {
  if (segments == 0)
    throw std::invalid_argument("TimeGrid::uniform: segments must be positive");
  std::vector<double> pts(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i)
    pts[i] = horizon * static_cast<double>(i) / static_cast<double>(segments);
  pts.front() = 0.0;
  pts.back() = horizon;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::uniform_with(double horizon, std::size_t segments,
                                std::span<const double> extra) {
  TimeGrid base = uniform(horizon, segments);
  std::vector<double> pts = base.points_;
  for (double t : extra) {
    if (t < 0.0 || t > horizon)
      throw std::invalid_argument("TimeGrid::uniform_with: extra node outside [0, T]");
    pts.push_back(t);
  }
  std::sort(pts.begin(), pts.end());
  const double tol = 1e-12 * std::max(1.0, horizon);
  std::vector<double> merged;
  merged.reserve(pts.size());
  for (double t : pts) {
    if (merged.empty() || t - merged.back() > tol)
      merged.push_back(t);
  }
  merged.front() = 0.0;
  merged.back() = horizon;
  return TimeGrid(std::move(merged));
}

std::size_t TimeGrid::find(double t) const noexcept {
  const double tol = 1e-12 * std::max(1.0, horizon());
  auto it = std::lower_bound(points_.begin(), points_.end(), t - tol);
  if (it == points_.end())
    return npos;
  if (std::abs(*it - t) <= tol)
    return static_cast<std::size_t>(it - points_.begin());
  return npos;
}

} // namespace lk
