#ifndef LK_SERIES_HPP
#define LK_SERIES_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace lk {

/// Parameters of the coefficient majorant |c_n| <= n(n+1) (2 w0T)^n / 4.
/// The majorant converges only when 2 * omega0T < 1.
struct TailParams {
  double omega0T = 0.0;
};

/// Degree-(N+1) polynomial snapshot f(z) = C (z + sum_{n=1}^{N} c_n z^{n+1}).
/// Without tail parameters the series is treated as exact; with them the
/// untracked coefficients beyond N are bounded by the majorant.
class TruncatedSeries {
public:
  TruncatedSeries(std::complex<double> prefactor,
                  std::vector<std::complex<double>> coeffs,
                  std::optional<TailParams> tail = std::nullopt);

  static TruncatedSeries identity(std::optional<TailParams> tail = std::nullopt);

  std::complex<double> eval(std::complex<double> z) const;
  std::complex<double> derivative_eval(std::complex<double> z) const;

  std::complex<double> prefactor() const noexcept { return prefactor_; }
  const std::vector<std::complex<double>>& coeffs() const noexcept { return coeffs_; }
  std::size_t order() const noexcept { return coeffs_.size(); } // N
  const std::optional<TailParams>& tail_params() const noexcept { return tail_; }

  /// Same coefficients with prefactor 1 (the normalized form z + sum c_n z^{n+1}).
  TruncatedSeries normalized() const;

private:
  std::complex<double> prefactor_;
  std::vector<std::complex<double>> coeffs_;
  std::optional<TailParams> tail_;
};

/// d^k/dx^k [ x^{N+1} / (1-x) ] for 0 <= x < 1: the k-th derivative of the
/// geometric tail sum_{n>N} x^n. Building block for all weighted tails.
double geometric_tail_derivative(int k, int N, double x);

/// sum_{n>N} n(n+1)/4 * (2 w)^n * r^(n+1): tail of the coefficient majorant
/// evaluated on the circle |z| = r. Requires 2*w*r < 1.
double majorant_coeff_tail(int N, double omega0T, double r);

/// sum_{m>N} (m+1) * m(m+1)/4 * (2 w)^m: tail of the weighted coefficient sum
/// sum_{n>=2} n |c_{n-1}| under the majorant. Requires 2*w < 1. At N = 0 this
/// is the full closed form x(x+2) / (2 (1-x)^4), x = 2w.
double majorant_alexander_tail(int N, double omega0T);

struct AlexanderSum {
  double partial = 0.0;              // sum_{n=2}^{N+1} n |c_{n-1}|
  std::optional<double> tail;        // majorant tail, empty when unknown
};

/// Weighted coefficient sum of the normalized series. The tail is present
/// only when tail parameters are attached and the majorant converges.
AlexanderSum alexander_sum(const TruncatedSeries& series);

struct RadiusBound {
  enum class Kind { majorant, empirical, unbounded };
  Kind kind = Kind::unbounded;
  double value = 0.0; // lower bound on the convergence radius (ignored when unbounded)
};

/// 1/(2 w0T) from the majorant when tail parameters are present, otherwise a
/// root-test estimate 1 / max |c_n|^{1/n} over the top quartile of indices.
RadiusBound radius_lower_bound(const TruncatedSeries& series);

} // namespace lk

#endif
