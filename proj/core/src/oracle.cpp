#include "lk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lk {

ResidualReport lk_residual(const DriverFamily& family, const CoefficientTable& table,
                           std::span<const Complex> z_samples, int refinement) {
  if (refinement < 1)
    throw std::invalid_argument("lk_residual: refinement must be >= 1");
  for (const auto& z : z_samples)
    if (std::abs(z) > 0.9)
      throw std::invalid_argument("lk_residual: requires |z| <= 0.9");

  ResidualReport report;
  report.z_samples.assign(z_samples.begin(), z_samples.end());
  report.times = table.grid.points();
  report.refinement = refinement;
  report.residual.assign(z_samples.size(), std::vector<double>(report.times.size()));

  const std::size_t M = family.truncation_level();
  const std::size_t J = report.times.size();

  for (std::size_t zi = 0; zi < z_samples.size(); ++zi) {
    const Complex z = z_samples[zi];

    // mu_z(u) = x0(u) + sum_n x_n(u) z^n; increments of mu are exact.
    auto mu = [&](double u) {
      Complex acc(0.0);
      for (std::size_t n = M; n >= 1; --n)
        acc = z * (family.mode(n)(u) + acc);
      return family.x0()(u) + acc;
    };
    // z f_s'(z) with the table coefficients interpolated linearly in s.
    auto integrand = [&](double s) {
      Complex acc(0.0);
      for (std::size_t n = table.order(); n >= 1; --n)
        acc = z * (static_cast<double>(n + 1) * table.coeff_at(n, s) + acc);
      return z * table.prefactor_at(s) * (1.0 + acc);
    };

    Complex cum(0.0);
    report.residual[zi][0] = std::abs(table.prefactor[0] * z - z); // t = 0 term
    report.max_residual = std::max(report.max_residual, report.residual[zi][0]);
    for (std::size_t j = 1; j < J; ++j) {
      const double a = report.times[j - 1];
      const double b = report.times[j];
      const double h = (b - a) / refinement;
      Complex g0 = integrand(a);
      Complex m0 = mu(a);
      for (int k = 1; k <= refinement; ++k) {
        const double u = (k == refinement) ? b : a + k * h;
        const Complex g1 = integrand(u);
        const Complex m1 = mu(u);
        cum += 0.5 * (g0 + g1) * (m1 - m0);
        g0 = g1;
        m0 = m1;
      }
      // Left side from the table column at the node.
      Complex acc(0.0);
      for (std::size_t n = table.order(); n >= 1; --n)
        acc = z * (table.coeff[n - 1][j] + acc);
      const Complex f_t = table.prefactor[j] * z * (1.0 + acc);
      const double res = std::abs(f_t - z - cum);
      report.residual[zi][j] = res;
      report.max_residual = std::max(report.max_residual, res);
    }
  }
  return report;
}

CoefficientTable explicit_stepper(const DriverFamily& family, int order, int steps) {
  if (order < 1)
    throw std::invalid_argument("explicit_stepper: order must be >= 1");
  if (steps < 1)
    throw std::invalid_argument("explicit_stepper: steps must be >= 1");

  const double T = family.horizon();
  const std::vector<double> bp = family.breakpoints();

  // Distribute steps over segments, at least one per segment.
  std::vector<double> nodes{0.0};
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double len = bp[i + 1] - bp[i];
    const int k = std::max(1, static_cast<int>(std::llround(steps * len / T)));
    for (int s = 1; s <= k; ++s)
      nodes.push_back(bp[i] + len * s / k);
    nodes.back() = bp[i + 1];
  }
  TimeGrid grid{nodes};

  const std::size_t J = grid.size();
  CoefficientTable table{grid, {}, {}, SolveMethod::stepper};
  table.prefactor.assign(J, Complex(1.0));
  table.coeff.assign(order, std::vector<Complex>(J, Complex(0.0)));

  // State y = (C, c_1 .. c_N); densities are constant inside each segment.
  std::vector<Complex> y(order + 1, Complex(0.0));
  y[0] = Complex(1.0);

  auto derivative = [&](const std::vector<Complex>& u, double d0,
                        const std::vector<Complex>& dm, std::vector<Complex>& out) {
    out[0] = u[0] * d0;
    for (int n = 1; n <= order; ++n) {
      Complex acc = static_cast<double>(n) * u[n] * d0;
      for (int k = 0; k < n; ++k) {
        const Complex& density = dm[n - k - 1];
        if (density == Complex(0.0))
          continue;
        const Complex ck = (k == 0) ? Complex(1.0) : u[k];
        acc += static_cast<double>(k + 1) * ck * density;
      }
      out[n] = acc;
    }
  };

  bool log_form = false;
  std::vector<Complex> k1(order + 1), k2(order + 1), k3(order + 1), k4(order + 1);
  std::vector<Complex> tmp(order + 1);
  const double x00 = family.x0()(0.0).real();

  for (std::size_t j = 1; j < J; ++j) {
    const double a = grid[j - 1];
    const double b = grid[j];
    const double h = b - a;
    const double mid = 0.5 * (a + b);

    const double d0 = family.x0().density(mid).real();
    std::vector<Complex> dm(order);
    for (int m = 1; m <= order; ++m)
      dm[m - 1] = family.mode_stored(m) ? family.mode(m).density(mid) : Complex(0.0);

    derivative(y, d0, dm, k1);
    for (int i = 0; i <= order; ++i)
      tmp[i] = y[i] + 0.5 * h * k1[i];
    derivative(tmp, d0, dm, k2);
    for (int i = 0; i <= order; ++i)
      tmp[i] = y[i] + 0.5 * h * k2[i];
    derivative(tmp, d0, dm, k3);
    for (int i = 0; i <= order; ++i)
      tmp[i] = y[i] + h * k3[i];
    derivative(tmp, d0, dm, k4);
    for (int i = 0; i <= order; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if (log_form || std::abs(y[0]) < 1e-12) {
      log_form = true;
      y[0] = Complex(std::exp(family.x0()(b).real() - x00), 0.0);
    }

    table.prefactor[j] = y[0];
    for (int n = 1; n <= order; ++n)
      table.coeff[n - 1][j] = y[n];
  }
  return table;
}

} // namespace lk
