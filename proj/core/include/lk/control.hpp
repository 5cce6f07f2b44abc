#ifndef LK_CONTROL_HPP
#define LK_CONTROL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lk/driver.hpp"
#include "lk/report.hpp"
#include "lk/time_grid.hpp"

namespace lk {

/// Control function w(s, t) on 0 <= s <= t <= T: nonnegative, continuous,
/// vanishing on the diagonal, super-additive (w(s,t) + w(t,u) <= w(s,u)).
/// Either linear w(s,t) = rate * (t - s) or tabulated on an axis-aligned grid
/// with bilinear interpolation.
class ControlFunction {
public:
  static ControlFunction linear(double rate);
  static ControlFunction tabulated(std::vector<double> s_axis,
                                   std::vector<double> t_axis,
                                   std::vector<double> values); // row-major |s| x |t|

  double operator()(double s, double t) const;

  bool is_linear() const noexcept { return linear_; }
  double rate() const;

private:
  ControlFunction() = default;

  bool linear_ = true;
  double rate_ = 0.0;
  std::vector<double> s_axis_, t_axis_, values_;
};

/// Ordered tuple of positive integers; indexes one iterated integral.
struct Composition {
  std::vector<int> parts;

  int order() const noexcept; // sum of parts
  std::string to_string() const;
};

/// Hard cap on the order: there are 2^(n-1) compositions of n.
inline constexpr int kMaxCompositionOrder = 16;

/// All compositions of n in lexicographic order ((1,1,1), (1,2), (2,1), (3)).
std::vector<Composition> enumerate_compositions(int n);

/// Shared-grid evaluator for the weighted iterated Stieltjes integrals
///
///   V(comp, t) = e^{n x0(t)} * int_{0 <= u_1 < ... < u_p <= t}
///                prod_j e^{-i_j x0(u_j)} dx_{i_j}(u_j),
///
/// computed inner-to-outer with the cumulative product-trapezoid rule, the
/// j-th variable paired with part i_j (u_1 earliest). Parts beyond the stored
/// truncation refer to zero modes and contribute zero. x0 is taken relative
/// to x0(0) to keep the integrating factors bounded.
class IteratedIntegrator {
public:
  /// `resolution`: target uniform node count; breakpoints and `extra` nodes
  /// are merged in.
  IteratedIntegrator(const DriverFamily& family, std::size_t resolution,
                     std::span<const double> extra = {});

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::size_t node_index(double t) const; // throws if t is not a node

  /// V(comp, .) at every node.
  std::vector<Complex> profile(const Composition& comp) const;
  Complex value(const Composition& comp, double t) const;

private:
  const DriverFamily* family_;
  std::vector<double> nodes_;
  std::vector<double> x0_;                        // x0 - x0(0) at nodes
  std::vector<std::vector<Complex>> mode_values_; // stored modes at nodes
};

/// e^{n x0(t)} times the nested integral for one composition; strict form of
/// the operation: every part must refer to a stored mode. `refinement`
/// subdivides each driver segment.
Complex iterated_integral(const DriverFamily& family, const Composition& comp,
                          double t, int refinement = 64);

inline constexpr std::size_t kControlResolution = 4096;
inline constexpr double kControlSlack = 1e-7; // relative slack on the bounds

/// Certifies the two controlled-driver inequalities for every composition of
/// each n <= n_max over the grid: |V(comp,t)| <= w(0,t)^n / n! and
/// |V(comp,t) - V(comp,s)| <= w(s,t) w(0,T)^{n-1} / (n-1)!. One row per
/// (composition, inequality) with the worst margin and its witness.
VerificationReport verify_controlled(const DriverFamily& family,
                                     const ControlFunction& omega, int n_max,
                                     const TimeGrid& grid,
                                     std::size_t resolution = kControlResolution);

/// Checks w(t,t) = 0, nonnegativity and super-additivity over grid triples.
VerificationReport check_superadditive(const ControlFunction& omega,
                                       const TimeGrid& grid);

} // namespace lk

#endif
