#include "lk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lk {

std::string_view to_string(SolveMethod m) {
  switch (m) {
  case SolveMethod::recurrence: return "recurrence";
  case SolveMethod::compositions: return "compositions";
  case SolveMethod::picard: return "picard";
  case SolveMethod::stepper: return "stepper";
  }
  return "unknown";
}

namespace {

Complex interp_column(const std::vector<double>& ts, const std::vector<Complex>& vs,
                      double t) {
  const double tol = 1e-12 * std::max(1.0, ts.back());
  if (t < ts.front() - tol || t > ts.back() + tol)
    throw std::invalid_argument("CoefficientTable: time outside the grid");
  t = std::min(std::max(t, ts.front()), ts.back());
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t i = static_cast<std::size_t>(it - ts.begin());
  if (i == 0)
    return vs.front();
  if (i >= ts.size())
    return vs.back();
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return vs[i - 1] + w * (vs[i] - vs[i - 1]);
}

// Grid nodes, driver breakpoints, and `refinement` sub-steps per merged
// segment. `out_index` maps output grid nodes into the refined node list.
struct InternalGrid {
  std::vector<double> nodes;
  std::vector<std::size_t> out_index;
};

constexpr std::size_t kMaxInternalNodes = std::size_t{1} << 21;

InternalGrid build_internal_grid(const TimeGrid& grid, const DriverFamily& family,
                                 int refinement) {
  if (refinement < 1)
    throw std::invalid_argument("solver: refinement must be >= 1");
  std::vector<double> base = grid.points();
  for (double b : family.breakpoints())
    if (b >= 0.0 && b <= grid.horizon())
      base.push_back(b);
  std::sort(base.begin(), base.end());
  const double tol = 1e-12 * std::max(1.0, grid.horizon());
  std::vector<double> merged;
  for (double t : base)
    if (merged.empty() || t - merged.back() > tol)
      merged.push_back(t);

  std::size_t r = static_cast<std::size_t>(refinement);
  if ((merged.size() - 1) * r > kMaxInternalNodes)
    r = std::max<std::size_t>(1, kMaxInternalNodes / (merged.size() - 1));

  InternalGrid ig;
  ig.nodes.reserve((merged.size() - 1) * r + 1);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    ig.nodes.push_back(merged[i]);
    for (std::size_t k = 1; k < r; ++k)
      ig.nodes.push_back(merged[i] +
                         (merged[i + 1] - merged[i]) * static_cast<double>(k) /
                             static_cast<double>(r));
  }
  ig.nodes.push_back(merged.back());

  ig.out_index.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    auto it = std::lower_bound(ig.nodes.begin(), ig.nodes.end(), grid[j] - tol);
    if (it == ig.nodes.end() || std::abs(*it - grid[j]) > tol)
      throw std::logic_error("solver: output node missing from refined grid");
    ig.out_index[j] = static_cast<std::size_t>(it - ig.nodes.begin());
  }
  return ig;
}

// Mode values at the internal nodes for modes 1..order; zero / out-of-range
// modes flagged so their terms can be skipped.
struct ModeData {
  std::vector<std::vector<Complex>> values; // values[m-1][j]
  std::vector<bool> active;                 // active[m-1]
};

ModeData sample_modes(const DriverFamily& family, int order,
                      const std::vector<double>& nodes) {
  ModeData md;
  md.values.resize(order);
  md.active.assign(order, false);
  for (int m = 1; m <= order; ++m) {
    if (!family.mode_stored(m))
      continue;
    const DriverPath& path = family.mode(m);
    if (path.is_zero())
      continue;
    md.active[m - 1] = true;
    auto& vals = md.values[m - 1];
    vals.resize(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
      vals[j] = path(nodes[j]);
  }
  return md;
}

} // namespace

Complex CoefficientTable::prefactor_at(double t) const {
  return interp_column(grid.points(), prefactor, t);
}

Complex CoefficientTable::coeff_at(std::size_t n, double t) const {
  if (n < 1 || n > coeff.size())
    throw std::invalid_argument("CoefficientTable::coeff_at: index out of range");
  return interp_column(grid.points(), coeff[n - 1], t);
}

std::vector<Complex> solve_C(const DriverPath& x0, const TimeGrid& grid) {
  if (!x0.is_real())
    throw std::invalid_argument("solve_C: x0 must be real-valued");
  const double x00 = x0(0.0).real();
  std::vector<Complex> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    out[j] = Complex(std::exp(x0(grid[j]).real() - x00), 0.0);
  return out;
}

CoefficientTable solve_coefficients_recurrence(const DriverFamily& family,
                                               int order, const TimeGrid& grid,
                                               int refinement) {
  if (order < 1)
    throw std::invalid_argument("solve_coefficients_recurrence: order must be >= 1");
  if (static_cast<std::size_t>(order) > family.truncation_level())
    throw std::invalid_argument(
        "solve_coefficients_recurrence: order exceeds the stored truncation level");

  const InternalGrid ig = build_internal_grid(grid, family, refinement);
  const std::size_t J = ig.nodes.size();

  const double x00 = family.x0()(0.0).real();
  std::vector<double> x0(J);
  for (std::size_t j = 0; j < J; ++j)
    x0[j] = family.x0()(ig.nodes[j]).real() - x00;

  const ModeData md = sample_modes(family, order, ig.nodes);

  // Integrating-factor weights w_m[j] = e^{-m x0[j]} for m = 1..order.
  std::vector<std::vector<double>> w(order + 1);
  w[0].assign(J, 1.0);
  for (int m = 1; m <= order; ++m) {
    w[m].resize(J);
    if (m == 1)
      for (std::size_t j = 0; j < J; ++j)
        w[1][j] = std::exp(-x0[j]);
    else
      for (std::size_t j = 0; j < J; ++j)
        w[m][j] = w[m - 1][j] * w[1][j];
  }

  // Hat coefficients b_n = e^{-n x0} c_n; b_0 == 1. Each level is one
  // cumulative product-trapezoid sweep:
  //   b_n(t) = sum_{k<n} (k+1) int_0^t w_{n-k}(s) b_k(s) dx_{n-k}(s).
  std::vector<std::vector<Complex>> b(order + 1);
  b[0].assign(J, Complex(1.0));
  for (int n = 1; n <= order; ++n) {
    auto& bn = b[n];
    bn.assign(J, Complex(0.0));
    Complex cum(0.0);
    for (std::size_t j = 1; j < J; ++j) {
      Complex seg(0.0);
      for (int k = 0; k < n; ++k) {
        const int m = n - k;
        if (!md.active[m - 1])
          continue;
        const auto& xm = md.values[m - 1];
        const Complex g0 = w[m][j - 1] * b[k][j - 1];
        const Complex g1 = w[m][j] * b[k][j];
        seg += static_cast<double>(k + 1) * 0.5 * (g0 + g1) * (xm[j] - xm[j - 1]);
      }
      cum += seg;
      bn[j] = cum;
    }
  }

  CoefficientTable table{grid, solve_C(family.x0(), grid), {}, SolveMethod::recurrence};
  table.coeff.assign(order, std::vector<Complex>(grid.size()));
  for (int n = 1; n <= order; ++n)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const std::size_t jj = ig.out_index[j];
      table.coeff[n - 1][j] = std::exp(static_cast<double>(n) * x0[jj]) * b[n][jj];
    }
  return table;
}

double composition_weight(const Composition& comp, WeightConvention convention) {
  const int n = comp.order();
  double weight = 1.0;
  int prefix = 0;
  for (std::size_t j = 0; j + 1 < comp.parts.size(); ++j) {
    prefix += comp.parts[j];
    const int factor =
        (convention == WeightConvention::prefix) ? prefix + 1 : n - prefix + 1;
    weight *= static_cast<double>(factor);
  }
  return weight;
}

CoefficientTable solve_coefficients_compositions_table(
    const DriverFamily& family, int order, const TimeGrid& grid,
    WeightConvention convention, std::size_t resolution) {
  if (order < 1)
    throw std::invalid_argument("solve_coefficients_compositions: order must be >= 1");
  if (order > kMaxCompositionOrder)
    throw std::length_error(
        "solve_coefficients_compositions: order exceeds the composition cap");

  IteratedIntegrator integ(family, resolution, grid.points());
  std::vector<std::size_t> idx(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    idx[j] = integ.node_index(grid[j]);

  auto mode_active = [&](int m) {
    return family.mode_stored(m) && !family.mode(m).is_zero();
  };

  CoefficientTable table{grid, solve_C(family.x0(), grid), {}, SolveMethod::compositions};
  table.coeff.assign(order, std::vector<Complex>(grid.size(), Complex(0.0)));
  for (int n = 1; n <= order; ++n) {
    for (const auto& comp : enumerate_compositions(n)) {
      const bool live = std::all_of(comp.parts.begin(), comp.parts.end(), mode_active);
      if (!live)
        continue; // some factor integrates a zero mode
      const double weight = composition_weight(comp, convention);
      const std::vector<Complex> prof = integ.profile(comp);
      for (std::size_t j = 0; j < grid.size(); ++j)
        table.coeff[n - 1][j] += weight * prof[idx[j]];
    }
  }
  return table;
}

std::vector<Complex> solve_coefficients_compositions(const DriverFamily& family,
                                                     int order, double t,
                                                     WeightConvention convention,
                                                     std::size_t resolution) {
  if (t == 0.0)
    return std::vector<Complex>(order, Complex(0.0));
  const TimeGrid grid({0.0, t});
  CoefficientTable table =
      solve_coefficients_compositions_table(family, order, grid, convention, resolution);
  std::vector<Complex> out(order);
  for (int n = 1; n <= order; ++n)
    out[n - 1] = table.coeff[n - 1].back();
  return out;
}

PicardSolve solve_coefficients_picard(const DriverFamily& family, int order,
                                      const TimeGrid& grid, int iterations,
                                      int refinement) {
  if (order < 1)
    throw std::invalid_argument("solve_coefficients_picard: order must be >= 1");
  if (static_cast<std::size_t>(order) > family.truncation_level())
    throw std::invalid_argument(
        "solve_coefficients_picard: order exceeds the stored truncation level");
  if (iterations < 1)
    throw std::invalid_argument("solve_coefficients_picard: iterations must be >= 1");

  const InternalGrid ig = build_internal_grid(grid, family, refinement);
  const std::size_t J = ig.nodes.size();
  const ModeData md = sample_modes(family, order, ig.nodes);

  std::vector<Complex> x0_vals(J);
  for (std::size_t j = 0; j < J; ++j)
    x0_vals[j] = family.x0()(ig.nodes[j]);
  const bool x0_active = !family.x0().is_zero();

  std::vector<std::vector<Complex>> c(order + 1);
  c[0].assign(J, Complex(1.0));

  PicardSolve out{
      CoefficientTable{grid, solve_C(family.x0(), grid), {}, SolveMethod::picard},
      {},
      0.0};
  out.gaps.assign(iterations, 0.0);

  for (int n = 1; n <= order; ++n) {
    // Forcing part sum_{k<n} (k+1) c_k dx_{n-k} is fixed across iterations.
    std::vector<Complex> forcing(J, Complex(0.0));
    {
      Complex cum(0.0);
      for (std::size_t j = 1; j < J; ++j) {
        Complex seg(0.0);
        for (int k = 0; k < n; ++k) {
          const int m = n - k;
          if (!md.active[m - 1])
            continue;
          const auto& xm = md.values[m - 1];
          seg += static_cast<double>(k + 1) * 0.5 * (c[k][j - 1] + c[k][j]) *
                 (xm[j] - xm[j - 1]);
        }
        cum += seg;
        forcing[j] = cum;
      }
    }

    std::vector<Complex> prev(J, Complex(0.0));
    std::vector<Complex> cur(J);
    for (int it = 0; it < iterations; ++it) {
      if (!x0_active) {
        cur = forcing;
      } else {
        Complex cum(0.0);
        cur[0] = Complex(0.0);
        for (std::size_t j = 1; j < J; ++j) {
          cum += static_cast<double>(n) * 0.5 * (prev[j - 1] + prev[j]) *
                 (x0_vals[j] - x0_vals[j - 1]);
          cur[j] = forcing[j] + cum;
        }
      }
      double gap = 0.0;
      for (std::size_t j = 0; j < J; ++j)
        gap = std::max(gap, std::abs(cur[j] - prev[j]));
      out.gaps[it] = std::max(out.gaps[it], gap);
      prev.swap(cur);
    }
    c[n] = std::move(prev);
  }

  out.final_gap = out.gaps.empty() ? 0.0 : out.gaps.back();
  out.table.coeff.assign(order, std::vector<Complex>(grid.size()));
  for (int n = 1; n <= order; ++n)
    for (std::size_t j = 0; j < grid.size(); ++j)
      out.table.coeff[n - 1][j] = c[n][ig.out_index[j]];
  return out;
}

AssembledSeries assemble_solution(const CoefficientTable& table, double t,
                                  std::optional<TailParams> tail) {
  const std::size_t j = table.grid.find(t);
  AssembledSeries out{TruncatedSeries::identity(tail), false};
  std::vector<Complex> coeffs(table.order());
  Complex prefactor;
  if (j != TimeGrid::npos) {
    prefactor = table.prefactor[j];
    for (std::size_t n = 1; n <= table.order(); ++n)
      coeffs[n - 1] = table.coeff[n - 1][j];
  } else {
    out.interpolated = true;
    prefactor = table.prefactor_at(t);
    for (std::size_t n = 1; n <= table.order(); ++n)
      coeffs[n - 1] = table.coeff_at(n, t);
  }
  out.series = TruncatedSeries(prefactor, std::move(coeffs), tail);
  return out;
}

} // namespace lk
