#ifndef LK_ANALYSIS_HPP
#define LK_ANALYSIS_HPP

#include <complex>
#include <cstdint>
#include <optional>

#include "lk/series.hpp"

namespace lk {

/// q(x) = 2x^4 - 8x^3 + 11x^2 - 10x + 2, the polynomial whose smallest real
/// root is the univalence threshold alpha.
double univalence_quartic(double x);

/// Smallest positive real root of the quartic, bracketed in [0, 1/2] by a
/// certified sign change and polished by Newton to |q| <= 1e-14.
double compute_alpha();

/// Majorant n(n+1) (2 w0T)^n / 4 on |c_n(t)|.
double coefficient_bound(int n, double omega0T);

/// Closed form of sum_{n>=2} n^2 (n-1) (2w)^{n-1} / 4 = x(x+2) / (2 (1-x)^4)
/// with x = 2w: the majorant of the weighted coefficient sum. Equals 1
/// exactly at w = alpha/2. Domain error for w >= 1/2 (the sum diverges).
double alexander_bound_closed_form(double omega0T);

struct UnivalenceVerdict {
  double alexander_partial = 0.0;       // from the stored coefficients
  std::optional<double> alexander_tail; // majorant tail; empty = unknown
  bool certified = false;               // partial + tail <= 1 (tail known)
  double threshold_used = 0.0;          // alpha/2, for context
  double starlikeness_min = 0.0;        // min sampled Re(z f'(z) / f(z))
};

/// Sufficient-condition check: the weighted coefficient sum of the normalized
/// series plus the majorant tail. "Not certified" is inconclusive, never a
/// non-univalence claim. Also samples Re(z f'/f) on |z| in {0.3, 0.6, 0.9}
/// (64 angles each), a necessary condition for starlikeness.
UnivalenceVerdict check_univalence(const TruncatedSeries& series);

struct InjectivityReport {
  std::uint64_t pairs = 0;
  std::uint64_t seed = 0;
  std::uint64_t collisions = 0;   // |f(z1)-f(z2)| <= 1e-12 |z1-z2|
  double min_ratio = 0.0;         // min |f(z1)-f(z2)| / |z1-z2|
  std::complex<double> witness_z1, witness_z2;
};

/// Random-pair separation probe on |z| <= 0.95 with a portable deterministic
/// generator; a necessary-condition test, not a proof of injectivity.
InjectivityReport injectivity_spot_check(const TruncatedSeries& series,
                                         std::uint64_t pairs,
                                         std::uint64_t seed = 0x5eedULL);

} // namespace lk

#endif
