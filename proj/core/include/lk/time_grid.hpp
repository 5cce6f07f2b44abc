#ifndef LK_TIME_GRID_HPP
#define LK_TIME_GRID_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace lk {

/// Strictly increasing time nodes on [0, T]: first node 0, last node T > 0.
class TimeGrid {
public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit TimeGrid(std::vector<double> points);

  /// Uniform grid with `segments` intervals on [0, horizon].
  static TimeGrid uniform(double horizon, std::size_t segments);

  /// Uniform grid merged with extra nodes (driver breakpoints etc.).
  /// Near-duplicates (within 1e-12 * horizon) are collapsed.
  static TimeGrid uniform_with(double horizon, std::size_t segments,
                               std::span<const double> extra);

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double horizon() const noexcept { return points_.back(); }

  /// Index of the node matching t (within 1e-12 * max(1,T) absolute), or npos.
  std::size_t find(double t) const noexcept;

private:
  std::vector<double> points_;
};

} // namespace lk

#endif
