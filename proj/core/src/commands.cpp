#include "lk/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lk/analysis.hpp"
#include "lk/io.hpp"
#include "lk/oracle.hpp"

namespace lk {

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

TimeGrid output_grid(const RunConfig& config) {
  const std::vector<double> bp = config.family.breakpoints();
  return TimeGrid::uniform_with(config.horizon(),
                                static_cast<std::size_t>(config.grid_segments), bp);
}

std::optional<double> omega_horizon_value(const RunConfig& config) {
  if (!config.omega)
    return std::nullopt;
  return (*config.omega)(0.0, config.horizon());
}

ordered_json report_to_json(const VerificationReport& report) {
  return ordered_json::parse(report.to_json_string());
}

CoefficientTable solve_with(const RunConfig& config, SolveMethod method,
                            const TimeGrid& grid) {
  switch (method) {
  case SolveMethod::recurrence:
    return solve_coefficients_recurrence(config.family, config.order, grid,
                                         config.refinement);
  case SolveMethod::compositions:
    return solve_coefficients_compositions_table(
        config.family, config.order, grid, WeightConvention::prefix,
        std::max<std::size_t>(2048, grid.size()));
  case SolveMethod::picard:
    return solve_coefficients_picard(config.family, config.order, grid,
                                     config.picard_iterations, config.refinement)
        .table;
  case SolveMethod::stepper:
    return explicit_stepper(config.family, config.order, 4 * config.grid_segments);
  }
  throw std::logic_error("solve_with: unknown method");
}

} // namespace

int cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir,
              std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const TimeGrid grid = output_grid(config);

  std::vector<CoefficientTable> tables;
  tables.reserve(config.methods.size());
  for (SolveMethod method : config.methods)
    tables.push_back(solve_with(config, method, grid));

  write_text_file(out_dir / "coefficients.csv", coefficients_csv(tables));

  const std::optional<double> w0T = omega_horizon_value(config);
  std::optional<TailParams> tail;
  if (w0T)
    tail = TailParams{*w0T};

  const double alpha = compute_alpha();
  const CoefficientTable& main_table = tables.front();

  ordered_json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["T"] = config.horizon();
  summary["N"] = config.order;
  summary["grid_nodes"] = grid.size();
  summary["seed"] = config.seed;
  summary["methods"] = [&] {
    std::vector<std::string> names;
    for (SolveMethod m : config.methods)
      names.emplace_back(to_string(m));
    return names;
  }();
  summary["alpha"] = alpha;
  summary["alpha_half"] = alpha / 2.0;

  if (w0T) {
    summary["omega0T"] = *w0T;
    // Theorem-level certificate: the threshold criterion on omega alone.
    const bool certified = *w0T <= alpha / 2.0 + 1e-12;
    summary["verdict"] = certified ? "certified" : "inconclusive";
    if (2.0 * *w0T < 1.0) {
      if (*w0T == 0.0) {
        summary["radius_bound"] = "unbounded";
      } else {
        const double bound = 1.0 / (2.0 * *w0T);
        summary["radius_bound"] = bound;
        const double r_star = 0.5 * (1.0 + bound);
        summary["extension"] = {
            {"r_star", r_star},
            {"majorant_tail_at_r_star",
             majorant_coeff_tail(config.order, *w0T, r_star)},
        };
      }
    } else {
      summary["radius_bound"] = nullptr; // majorant diverges: not certified
    }
  } else {
    summary["omega0T"] = nullptr;
    summary["verdict"] = "inconclusive";
    const RadiusBound rb =
        radius_lower_bound(assemble_solution(main_table, grid.horizon()).series);
    if (rb.kind == RadiusBound::Kind::unbounded)
      summary["radius_bound"] = "unbounded";
    else
      summary["radius_bound"] = rb.value;
  }

  ordered_json per_time = ordered_json::array();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto assembled = assemble_solution(main_table, grid[j], tail);
    const UnivalenceVerdict verdict = check_univalence(assembled.series);
    ordered_json row;
    row["t"] = grid[j];
    row["series_check"] = verdict.certified ? "certified" : "inconclusive";
    row["alexander_partial"] = verdict.alexander_partial;
    if (verdict.alexander_tail)
      row["alexander_tail"] = *verdict.alexander_tail;
    else
      row["alexander_tail"] = nullptr;
    row["starlikeness_min"] = verdict.starlikeness_min;
    per_time.push_back(std::move(row));
  }
  summary["per_time"] = std::move(per_time);

  {
    const auto series = assemble_solution(main_table, grid.horizon(), tail).series;
    const InjectivityReport inj =
        injectivity_spot_check(series.normalized(), 20000, config.seed);
    summary["injectivity"] = {
        {"pairs", inj.pairs},
        {"seed", inj.seed},
        {"collisions", inj.collisions},
        {"min_separation_ratio", inj.min_ratio},
    };
  }

  write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
  log << "solve: wrote " << (out_dir / "coefficients.csv").string() << " and "
      << (out_dir / "summary.json").string() << "\n";
  log << "solve: verdict = " << summary["verdict"].get<std::string>() << "\n";
  return kExitOk;
}

int cmd_verify_control(const RunConfig& config, const std::filesystem::path& out_dir,
                       std::ostream& log) {
  if (!config.omega) {
    log << "verify-control: config declares no omega\n";
    return kExitUsage;
  }
  std::filesystem::create_directories(out_dir);
  const TimeGrid grid = TimeGrid::uniform_with(
      config.horizon(), static_cast<std::size_t>(config.control_grid),
      config.family.breakpoints());

  const VerificationReport axioms = check_superadditive(*config.omega, grid);
  const VerificationReport controlled =
      verify_controlled(config.family, *config.omega, config.control_nmax, grid);

  const bool passed = axioms.passed() && controlled.passed();

  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["omega0T"] = (*config.omega)(0.0, config.horizon());
  out["n_max"] = config.control_nmax;
  out["passed"] = passed;
  out["verdict"] = passed ? "certified" : "violated";
  out["axioms"] = report_to_json(axioms);
  out["controlled"] = report_to_json(controlled);
  write_text_file(out_dir / "control_report.json", out.dump(2) + "\n");

  log << "verify-control: " << (passed ? "certified" : "violated") << "\n";
  if (!passed) {
    for (const auto* report : {&axioms, &controlled})
      for (const auto& row : report->rows)
        if (row.status == CheckStatus::fail) {
          log << "  first violation: " << row.check << " at " << row.witness
              << " (margin " << row.margin << ")\n";
          return kExitVerificationFailed;
        }
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_alpha(std::ostream& log) {
  const double alpha = compute_alpha();
  const double half = alpha / 2.0;
  log << "alpha            = " << format_double(alpha) << "\n";
  log << "alpha/2          = " << format_double(half) << "\n";
  log << "quartic_residual = " << format_double(std::abs(univalence_quartic(alpha)))
      << "\n";
  log << "bracket(1/8,1/7) = "
      << ((half > 1.0 / 8.0 && half < 1.0 / 7.0) ? "pass" : "fail") << "\n";
  return kExitOk;
}

int cmd_boundary(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::vector<double> times, std::vector<double> radii, bool force,
                 std::ostream& log) {
  const double T = config.horizon();
  if (times.empty())
    times = {T};
  if (radii.empty())
    radii = {0.5, 1.0};
  for (double t : times)
    if (t < 0.0 || t > T) {
      log << "boundary: time " << t << " outside [0, " << T << "]\n";
      return kExitUsage;
    }

  const std::optional<double> w0T = omega_horizon_value(config);
  double cap = 1.0;
  if (w0T && *w0T > 0.0 && 2.0 * *w0T < 1.0)
    cap = std::min(1.05, 1.0 / (2.0 * *w0T));
  else if (w0T && *w0T == 0.0)
    cap = 1.05;
  for (double r : radii) {
    if (!(r > 0.0)) {
      log << "boundary: radius must be positive\n";
      return kExitUsage;
    }
    if (r > cap + 1e-12 && !force) {
      log << "boundary: radius " << r << " exceeds the certified cap " << cap
          << " (use --force to draw it anyway)\n";
      return kExitUsage;
    }
  }

  std::filesystem::create_directories(out_dir);
  const TimeGrid grid = output_grid(config);
  const CoefficientTable table = solve_coefficients_recurrence(
      config.family, config.order, grid, config.refinement);

  std::optional<TailParams> tail;
  if (w0T)
    tail = TailParams{*w0T};

  constexpr int kAngles = 512;
  std::ostringstream csv;
  csv << "time,radius,theta,re_f,im_f\n";
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const auto series = assemble_solution(table, times[ti], tail).series;
    std::vector<std::vector<Complex>> curves;
    for (double r : radii) {
      std::vector<Complex> curve;
      curve.reserve(kAngles + 1);
      for (int k = 0; k <= kAngles; ++k) {
        const double theta = 2.0 * std::numbers::pi * (k % kAngles) / kAngles;
        const Complex z = std::polar(r, theta);
        const Complex f = series.eval(z);
        curve.push_back(f);
        if (k < kAngles)
          csv << format_double(times[ti]) << ',' << format_double(r) << ','
              << format_double(theta) << ',' << format_double(f.real()) << ','
              << format_double(f.imag()) << "\n";
      }
      curves.push_back(std::move(curve));
    }
    std::ostringstream name;
    name << "boundary_t" << ti << ".svg";
    write_text_file(out_dir / name.str(), polyline_svg(curves));
  }
  write_text_file(out_dir / "boundary.csv", csv.str());
  log << "boundary: wrote " << (out_dir / "boundary.csv").string() << " and "
      << times.size() << " SVG figure(s)\n";
  return kExitOk;
}

int cmd_residual(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log) {
  std::filesystem::create_directories(out_dir);

  const TimeGrid fine_grid = output_grid(config);
  const int coarse_segments = std::max(8, config.grid_segments / 2);
  const TimeGrid coarse_grid = TimeGrid::uniform_with(
      config.horizon(), static_cast<std::size_t>(coarse_segments),
      config.family.breakpoints());

  const CoefficientTable fine = solve_coefficients_recurrence(
      config.family, config.order, fine_grid, config.refinement);
  const CoefficientTable coarse = solve_coefficients_recurrence(
      config.family, config.order, coarse_grid, config.refinement);

  std::vector<Complex> zs;
  for (double r : {0.3, 0.5})
    for (int k = 0; k < 6; ++k)
      zs.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 6.0));

  const ResidualReport res_fine = lk_residual(config.family, fine, zs, 2);
  const ResidualReport res_coarse = lk_residual(config.family, coarse, zs, 2);

  const double ratio = (res_fine.max_residual > 0.0)
                           ? res_coarse.max_residual / res_fine.max_residual
                           : std::numeric_limits<double>::infinity();
  const bool residual_ok = res_fine.max_residual <= 1e-12 || ratio >= 3.5;

  const CoefficientTable stepper = explicit_stepper(config.family, config.order, 4096);
  double stepper_gap = 0.0;
  bool stepper_ok = true;
  for (std::size_t j = 0; j < fine_grid.size(); ++j) {
    for (std::size_t n = 1; n <= fine.order(); ++n) {
      const Complex a = fine.coeff[n - 1][j];
      const Complex b = stepper.coeff_at(n, fine_grid[j]);
      const double gap = std::abs(a - b);
      stepper_gap = std::max(stepper_gap, gap);
      if (gap > 1e-6 * std::max({1.0, std::abs(a), std::abs(b)}))
        stepper_ok = false;
    }
    const double gap_c = std::abs(fine.prefactor[j] - stepper.prefactor_at(fine_grid[j]));
    stepper_gap = std::max(stepper_gap, gap_c);
    if (gap_c > 1e-6 * std::max(1.0, std::abs(fine.prefactor[j])))
      stepper_ok = false;
  }

  std::ostringstream csv;
  csv << "re_z,im_z,t,residual\n";
  for (std::size_t zi = 0; zi < zs.size(); ++zi)
    for (std::size_t j = 0; j < res_fine.times.size(); ++j)
      csv << format_double(zs[zi].real()) << ',' << format_double(zs[zi].imag())
          << ',' << format_double(res_fine.times[j]) << ','
          << format_double(res_fine.residual[zi][j]) << "\n";
  write_text_file(out_dir / "residual.csv", csv.str());

  const bool passed = residual_ok && stepper_ok;
  ordered_json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["max_residual_fine"] = res_fine.max_residual;
  summary["max_residual_coarse"] = res_coarse.max_residual;
  summary["refinement_ratio"] = ratio;
  summary["ratio_required"] = 3.5;
  summary["stepper_gap_max"] = stepper_gap;
  summary["stepper_tolerance"] = 1e-6;
  summary["residual_ok"] = residual_ok;
  summary["stepper_ok"] = stepper_ok;
  summary["passed"] = passed;
  write_text_file(out_dir / "residual_summary.json", summary.dump(2) + "\n");

  log << "residual: max " << res_fine.max_residual << ", halving ratio " << ratio
      << ", stepper gap " << stepper_gap << (passed ? " [ok]\n" : " [violated]\n");
  return passed ? kExitOk : kExitVerificationFailed;
}

} // namespace lk
