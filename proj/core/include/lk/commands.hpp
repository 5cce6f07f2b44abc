#ifndef LK_COMMANDS_HPP
#define LK_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lk/config.hpp"

namespace lk {

/// Exit codes shared by the library commands and the CLI wrapper:
/// 0 success (including honest "inconclusive"), 1 verification failure,
/// 2 usage or config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Solves the evolution with every requested method; writes coefficients.csv
/// and summary.json (certification language: certified / inconclusive /
/// violated, never a bare boolean).
int cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir,
              std::ostream& log);

/// check_superadditive + verify_controlled; writes control_report.json.
int cmd_verify_control(const RunConfig& config, const std::filesystem::path& out_dir,
                       std::ostream& log);

/// Prints the univalence threshold: alpha, alpha/2, quartic residual and the
/// (1/8, 1/7) bracket check.
int cmd_alpha(std::ostream& log);

/// Samples f_t on circles |z| = r (512 angles): boundary.csv plus one SVG per
/// time. Radii beyond the certified extension radius (capped at 1.05; 1.0
/// when nothing is certified) are refused unless `force`.
int cmd_boundary(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::vector<double> times, std::vector<double> radii, bool force,
                 std::ostream& log);

/// Evolution-equation residual under refinement doubling plus the explicit
/// stepper cross-check; writes residual.csv and residual_summary.json.
int cmd_residual(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log);

} // namespace lk

#endif
