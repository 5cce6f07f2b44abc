#ifndef LK_DRIVER_HPP
#define LK_DRIVER_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "lk/report.hpp"

namespace lk {

using Complex = std::complex<double>;

/// Continuous piecewise-linear path on [0, T]. Continuity and bounded
/// variation hold by construction; the induced measure dx has piecewise
/// constant density, so Stieltjes integrals reduce to segment quadrature.
class DriverPath {
public:
  DriverPath(std::vector<double> times, std::vector<Complex> values);

  static DriverPath zero(double horizon);

  Complex operator()(double t) const;
  Complex increment(double s, double t) const { return (*this)(t) - (*this)(s); }

  /// |dx|((s, t]): arc-length sum of increments restricted to (s, t].
  double total_variation(double s, double t) const;
  double total_variation() const { return total_variation(0.0, horizon()); }

  /// Slope of the segment containing t (right-continuous; left limit at T).
  Complex density(double t) const;

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  double horizon() const noexcept { return times_.back(); }
  bool is_real() const noexcept;
  bool is_zero() const noexcept;

private:
  std::size_t segment_of(double t) const;

  std::vector<double> times_;
  std::vector<Complex> values_;
};

DriverPath make_piecewise_linear(std::vector<double> times, std::vector<Complex> values);
DriverPath make_piecewise_linear(std::vector<double> times, std::vector<double> values);

/// |dx|((s, t]) of the path.
double total_variation(const DriverPath& path, double s, double t);

/// Driving family (x0, x1, ..., xM). x0 is real-valued; the infinite tail of
/// modes is truncated at M = modes().size(). Modes beyond M are modelled as
/// identically zero paths starting at zero; `decay_ratio` q, when declared,
/// asserts |dx_n|([0,T]) <= K q^n with K inferred from the stored modes, which
/// quantifies that tail without proving it.
class DriverFamily {
public:
  DriverFamily(DriverPath x0, std::vector<DriverPath> modes,
               std::optional<double> decay_ratio = std::nullopt);

  const DriverPath& x0() const noexcept { return x0_; }
  const std::vector<DriverPath>& modes() const noexcept { return modes_; }

  /// 1-based mode accessor; n > truncation_level() yields the zero path.
  const DriverPath& mode(std::size_t n) const;
  bool mode_stored(std::size_t n) const noexcept { return n >= 1 && n <= modes_.size(); }

  std::size_t truncation_level() const noexcept { return modes_.size(); }
  double horizon() const noexcept { return x0_.horizon(); }
  std::optional<double> decay_ratio() const noexcept { return decay_ratio_; }

  /// K = max_n |dx_n|([0,T]) / q^n over stored modes (0 if all are zero).
  double decay_scale() const;

  /// All breakpoints of x0 and the stored modes, sorted, deduplicated.
  std::vector<double> breakpoints() const;

private:
  DriverPath x0_;
  std::vector<DriverPath> modes_;
  std::optional<double> decay_ratio_;
  DriverPath zero_;
};

struct XiValue {
  Complex value;                    // sum_{n=1}^{M} x_n(t) z^n
  std::optional<double> tail_bound; // bound on the dropped tail, when declared
};

/// Partial sum of xi(x, z)_t = sum x_n(t) z^n over the stored modes.
/// Requires |z| < 1.
XiValue eval_xi(const DriverFamily& family, Complex z, double t);

/// int_s^t g(u) dx(u) for the piecewise-linear path, product-trapezoid rule
/// with `refinement` sub-steps per segment. Exact for g constant; second
/// order in the sub-step for smooth g.
Complex stieltjes_integral(const std::function<Complex(double)>& g,
                           const DriverPath& path, double s, double t,
                           int refinement);

/// Checks x0(0) = 0, finiteness of sum_{n<=M} |dx_n| r^n on sampled r, and
/// reports the declared geometric tail bound. Tail verdicts are labelled
/// "declared, not proven": a truncation cannot certify the infinite family.
VerificationReport check_driver_conditions(const DriverFamily& family);

} // namespace lk

#endif
