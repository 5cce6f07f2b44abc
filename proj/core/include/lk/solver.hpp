#ifndef LK_SOLVER_HPP
#define LK_SOLVER_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lk/control.hpp"
#include "lk/driver.hpp"
#include "lk/series.hpp"
#include "lk/time_grid.hpp"

namespace lk {

enum class SolveMethod { recurrence, compositions, picard, stepper };

std::string_view to_string(SolveMethod m);

/// Taylor data of the solution on a time grid: prefactor C(t_j) and the
/// normalized coefficients c_n(t_j), n = 1..N. Always satisfies C(0) = 1 and
/// c_n(0) = 0 (the evolution starts at the identity), and C never vanishes.
struct CoefficientTable {
  TimeGrid grid;
  std::vector<Complex> prefactor;          // C at grid nodes
  std::vector<std::vector<Complex>> coeff; // coeff[n-1][j] = c_n(t_j)
  SolveMethod method = SolveMethod::recurrence;

  std::size_t order() const noexcept { return coeff.size(); }

  /// Linear interpolation between grid nodes.
  Complex prefactor_at(double t) const;
  Complex coeff_at(std::size_t n, double t) const; // n is 1-based
};

/// C(t_j) = e^{x0(t_j) - x0(0)}, the exact solution of the prefactor equation.
std::vector<Complex> solve_C(const DriverPath& x0, const TimeGrid& grid);

/// Production path: solves the coefficient recurrence by variation of
/// constants, c_n = e^{n x0} int e^{-n x0} sum_{k<n} (k+1) c_k dx_{n-k},
/// level by level on the grid refined `refinement`-fold per segment (driver
/// breakpoints included), so no interpolation enters the quadrature. The
/// returned table is the restriction to `grid`.
CoefficientTable solve_coefficients_recurrence(const DriverFamily& family,
                                               int order, const TimeGrid& grid,
                                               int refinement = 64);

/// Pairing of the per-composition weights with the ascending integration
/// order: `prefix` takes prod_j (i_1 + ... + i_j + 1), `suffix` takes
/// prod_j (n - (i_1 + ... + i_j) + 1). The two coincide composition-reversed;
/// `prefix` is the one consistent with the recurrence (pinned by tests).
enum class WeightConvention { prefix, suffix };

double composition_weight(const Composition& comp, WeightConvention convention);

/// Independent route: c_n(t) as the weighted sum of iterated integrals over
/// all compositions of n. Compositions touching modes beyond the stored
/// truncation contribute zero and are skipped.
CoefficientTable solve_coefficients_compositions_table(
    const DriverFamily& family, int order, const TimeGrid& grid,
    WeightConvention convention = WeightConvention::prefix,
    std::size_t resolution = 2048);

std::vector<Complex> solve_coefficients_compositions(
    const DriverFamily& family, int order, double t,
    WeightConvention convention = WeightConvention::prefix,
    std::size_t resolution = 2048);

struct PicardSolve {
  CoefficientTable table;
  std::vector<double> gaps; // sup-norm gap after each iteration
  double final_gap = 0.0;   // gap between the last two iterates
};

/// Fixed-point iteration on the coefficient equations, starting from zero;
/// only the self-coupling term n c_n dx0 iterates, lower levels feed through
/// converged. Runs exactly `iterations` sweeps per level.
PicardSolve solve_coefficients_picard(const DriverFamily& family, int order,
                                      const TimeGrid& grid, int iterations,
                                      int refinement = 64);

struct AssembledSeries {
  TruncatedSeries series;
  bool interpolated = false; // t was not a grid node
};

/// Snapshot f_t as a TruncatedSeries; off-node times interpolate linearly.
AssembledSeries assemble_solution(const CoefficientTable& table, double t,
                                  std::optional<TailParams> tail = std::nullopt);

} // namespace lk

#endif
