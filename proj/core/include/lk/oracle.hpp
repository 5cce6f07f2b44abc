#ifndef LK_ORACLE_HPP
#define LK_ORACLE_HPP

#include <complex>
#include <span>
#include <vector>

#include "lk/driver.hpp"
#include "lk/solver.hpp"

namespace lk {

struct ResidualReport {
  std::vector<Complex> z_samples;
  std::vector<double> times;              // = table grid nodes
  std::vector<std::vector<double>> residual; // residual[z][time]
  double max_residual = 0.0;
  int refinement = 1;
};

/// Residual of the evolution equation for the tabulated solution:
/// |f_t(z) - z - int_0^t z f_s'(z) {dx0(s) + sum_n dx_n(s) z^n}| at every
/// table node. The right side uses the product-trapezoid rule with
/// `refinement` sub-steps per table segment, coefficients interpolated
/// linearly; convergence statements assume the table grid refines alongside.
/// Requires |z| <= 0.9 for every sample.
ResidualReport lk_residual(const DriverFamily& family, const CoefficientTable& table,
                           std::span<const Complex> z_samples, int refinement);

/// Classical 4th-order explicit stepping of the coupled coefficient system
/// dC = C x0' dt, dc_n = {sum_{k<n} (k+1) c_k x_{n-k}' + n c_n x0'} dt.
/// `steps` are distributed over the driver segments (each segment boundary is
/// a step point). If |C| ever dips below 1e-12 the prefactor integration
/// switches to the log-derivative form, which is exact for piecewise-linear
/// x0, so C never collapses to zero.
CoefficientTable explicit_stepper(const DriverFamily& family, int order, int steps);

} // namespace lk

#endif
