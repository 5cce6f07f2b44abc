#include "lk/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lk {

double univalence_quartic(double x) {
  return (((2.0 * x - 8.0) * x + 11.0) * x - 10.0) * x + 2.0;
}

namespace {

double quartic_derivative(double x) {
  return ((8.0 * x - 24.0) * x + 22.0) * x - 10.0;
}

} // namespace

double compute_alpha() {
  double lo = 0.0, hi = 0.5;
  if (!(univalence_quartic(lo) > 0.0 && univalence_quartic(hi) < 0.0))
    throw std::logic_error("compute_alpha: sign change lost on [0, 1/2]");
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (univalence_quartic(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 16; ++i) {
    const double q = univalence_quartic(x);
    if (std::abs(q) <= 1e-15)
      break;
    x -= q / quartic_derivative(x);
  }
  return x;
}

double coefficient_bound(int n, double omega0T) {
  if (n < 1)
    throw std::invalid_argument("coefficient_bound: n must be >= 1");
  if (!(omega0T >= 0.0))
    throw std::invalid_argument("coefficient_bound: omega0T must be >= 0");
  return 0.25 * n * (n + 1.0) * std::pow(2.0 * omega0T, n);
}

double alexander_bound_closed_form(double omega0T) {
  if (!(omega0T >= 0.0))
    throw std::invalid_argument("alexander_bound_closed_form: omega0T must be >= 0");
  const double x = 2.0 * omega0T;
  if (!(x < 1.0))
    throw std::domain_error("alexander_bound_closed_form: diverges for omega0T >= 1/2");
  const double d = 1.0 - x;
  return x * (x + 2.0) / (2.0 * d * d * d * d);
}

UnivalenceVerdict check_univalence(const TruncatedSeries& series) {
  const TruncatedSeries f = series.normalized();
  UnivalenceVerdict verdict;
  verdict.threshold_used = compute_alpha() / 2.0;

  const AlexanderSum sum = alexander_sum(f);
  verdict.alexander_partial = sum.partial;
  verdict.alexander_tail = sum.tail;

  const bool tail_known = !f.tail_params() || sum.tail.has_value();
  const double total = sum.partial + sum.tail.value_or(0.0);
  verdict.certified = tail_known && total <= 1.0 + 1e-10;

  double min_re = std::numeric_limits<double>::infinity();
  for (double r : {0.3, 0.6, 0.9}) {
    for (int k = 0; k < 64; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / 64.0;
      const std::complex<double> z = std::polar(r, theta);
      const std::complex<double> fz = f.eval(z);
      if (std::abs(fz) < 1e-300) {
        min_re = -std::numeric_limits<double>::infinity();
        continue;
      }
      min_re = std::min(min_re, (z * f.derivative_eval(z) / fz).real());
    }
  }
  verdict.starlikeness_min = min_re;
  return verdict;
}

namespace {

// splitmix64: portable, deterministic across platforms.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::complex<double> sample_disk(SplitMix64& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, theta);
}

} // namespace

InjectivityReport injectivity_spot_check(const TruncatedSeries& series,
                                         std::uint64_t pairs, std::uint64_t seed) {
  if (pairs < 1)
    throw std::invalid_argument("injectivity_spot_check: pairs must be >= 1");
  InjectivityReport report;
  report.pairs = pairs;
  report.seed = seed;
  report.min_ratio = std::numeric_limits<double>::infinity();

  SplitMix64 rng{seed};
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const std::complex<double> z1 = sample_disk(rng, 0.95);
    std::complex<double> z2 = sample_disk(rng, 0.95);
    if (z2 == z1)
      z2 += std::complex<double>(1e-8, 0.0);
    const double dz = std::abs(z2 - z1);
    const double df = std::abs(series.eval(z2) - series.eval(z1));
    if (df <= 1e-12 * dz)
      ++report.collisions;
    const double ratio = df / dz;
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.witness_z1 = z1;
      report.witness_z2 = z2;
    }
  }
  return report;
}

} // namespace lk
