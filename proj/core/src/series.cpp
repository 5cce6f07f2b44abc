#include "lk/series.hpp"

#include <cmath>
#include <stdexcept>

namespace lk {

TruncatedSeries::TruncatedSeries(std::complex<double> prefactor,
                                 std::vector<std::complex<double>> coeffs,
                                 std::optional<TailParams> tail)
    : prefactor_(prefactor), coeffs_(std::move(coeffs)), tail_(tail) {
  if (tail_ && !(tail_->omega0T >= 0.0))
    throw std::invalid_argument("TruncatedSeries: omega0T must be >= 0");
}

TruncatedSeries TruncatedSeries::identity(std::optional<TailParams> tail) {
  return TruncatedSeries(1.0, {}, tail);
}

std::complex<double> TruncatedSeries::eval(std::complex<double> z) const {
  // Horner on z + c_1 z^2 + ... + c_N z^{N+1} = z (1 + z (c_1 + z (c_2 + ...))).
  std::complex<double> acc(0.0);
  for (std::size_t i = coeffs_.size(); i >= 1; --i)
    acc = z * (coeffs_[i - 1] + acc);
  return prefactor_ * z * (1.0 + acc);
}

std::complex<double> TruncatedSeries::derivative_eval(std::complex<double> z) const {
  // C (1 + sum (n+1) c_n z^n).
  std::complex<double> acc(0.0);
  for (std::size_t i = coeffs_.size(); i >= 1; --i)
    acc = z * (static_cast<double>(i + 1) * coeffs_[i - 1] + acc);
  return prefactor_ * (1.0 + acc);
}

TruncatedSeries TruncatedSeries::normalized() const {
  return TruncatedSeries(1.0, coeffs_, tail_);
}

double geometric_tail_derivative(int k, int N, double x) {
  if (k < 0)
    throw std::invalid_argument("geometric_tail_derivative: k must be >= 0");
  if (N < 0)
    throw std::invalid_argument("geometric_tail_derivative: N must be >= 0");
  if (!(x >= 0.0 && x < 1.0))
    throw std::domain_error("geometric_tail_derivative: requires 0 <= x < 1");
  // Leibniz on x^{N+1} * (1-x)^{-1}:
  //   sum_{j=0}^{k} C(k,j) * (N+1)_j^fall * x^{N+1-j} * (k-j)! / (1-x)^{k-j+1}
  double sum = 0.0;
  double binom = 1.0;        // C(k, j)
  double falling = 1.0;      // (N+1)(N)...(N+2-j)
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      binom *= static_cast<double>(k - j + 1) / static_cast<double>(j);
      falling *= static_cast<double>(N + 2 - j);
    }
    if (N + 1 - j < 0)
      break; // polynomial term differentiated away
    double fact = 1.0;
    for (int m = 2; m <= k - j; ++m)
      fact *= m;
    sum += binom * falling * std::pow(x, N + 1 - j) * fact /
           std::pow(1.0 - x, k - j + 1);
  }
  return sum;
}

namespace {

// sum_{n>N} P(n) x^n for P given in the falling-factorial basis
// P(n) = a1 n + a2 n(n-1) + a3 n(n-1)(n-2).
double weighted_geometric_tail(int N, double x, double a1, double a2, double a3) {
  double sum = 0.0;
  if (a1 != 0.0)
    sum += a1 * x * geometric_tail_derivative(1, N, x);
  if (a2 != 0.0)
    sum += a2 * x * x * geometric_tail_derivative(2, N, x);
  if (a3 != 0.0)
    sum += a3 * x * x * x * geometric_tail_derivative(3, N, x);
  return sum;
}

} // namespace

double majorant_coeff_tail(int N, double omega0T, double r) {
  if (!(omega0T >= 0.0) || !(r >= 0.0))
    throw std::invalid_argument("majorant_coeff_tail: needs omega0T, r >= 0");
  const double y = 2.0 * omega0T * r;
  if (!(y < 1.0))
    throw std::domain_error("majorant_coeff_tail: majorant diverges (2*w*r >= 1)");
  // n(n+1) = n(n-1) + 2n; the extra r accounts for the z^{n+1} power.
  return 0.25 * r * weighted_geometric_tail(N, y, 2.0, 1.0, 0.0);
}

double majorant_alexander_tail(int N, double omega0T) {
  if (!(omega0T >= 0.0))
    throw std::invalid_argument("majorant_alexander_tail: needs omega0T >= 0");
  const double x = 2.0 * omega0T;
  if (!(x < 1.0))
    throw std::domain_error("majorant_alexander_tail: majorant diverges (2*w >= 1)");
  // m(m+1)^2 = m(m-1)(m-2) + 5 m(m-1) + 4 m.
  return 0.25 * weighted_geometric_tail(N, x, 4.0, 5.0, 1.0);
}

AlexanderSum alexander_sum(const TruncatedSeries& series) {
  AlexanderSum out;
  const auto& c = series.coeffs();
  for (std::size_t m = 1; m <= c.size(); ++m)
    out.partial += static_cast<double>(m + 1) * std::abs(c[m - 1]);
  if (series.tail_params()) {
    const double w = series.tail_params()->omega0T;
    if (2.0 * w < 1.0)
      out.tail = majorant_alexander_tail(static_cast<int>(c.size()), w);
  }
  return out;
}

RadiusBound radius_lower_bound(const TruncatedSeries& series) {
  if (series.tail_params()) {
    const double w = series.tail_params()->omega0T;
    if (w == 0.0)
      return {RadiusBound::Kind::unbounded, 0.0};
    return {RadiusBound::Kind::majorant, 1.0 / (2.0 * w)};
  }
  const auto& c = series.coeffs();
  const std::size_t N = c.size();
  // Root test over the top quartile of indices; widen to all if they vanish.
  double worst = 0.0;
  const std::size_t lo = std::max<std::size_t>(1, N - N / 4 + (N >= 4 ? 1 : 0));
  for (std::size_t pass = 0; pass < 2 && worst == 0.0; ++pass) {
    const std::size_t start = (pass == 0) ? lo : 1;
    for (std::size_t n = start; n <= N; ++n) {
      const double a = std::abs(c[n - 1]);
      if (a > 0.0)
        worst = std::max(worst, std::pow(a, 1.0 / static_cast<double>(n)));
    }
  }
  if (worst == 0.0)
    return {RadiusBound::Kind::unbounded, 0.0};
  return {RadiusBound::Kind::empirical, 1.0 / worst};
}

} // namespace lk
