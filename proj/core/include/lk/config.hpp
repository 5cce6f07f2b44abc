#ifndef LK_CONFIG_HPP
#define LK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lk/control.hpp"
#include "lk/driver.hpp"
#include "lk/solver.hpp"

namespace lk {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Run parameters. The driver family comes from the config document:
///
/// {
///   "T": 1.0,
///   "x0": {"times": [...], "values": [...]},
///   "xs": [{"times": [...], "re": [...], "im": [...]}, ...],
///   "decay_ratio": 0.5,                               // optional
///   "omega": {"form": "linear", "rate": 0.2}          // optional; or
///            {"form": "table", "s": [...], "t": [...], "values": [...]},
///   "N": 12, "grid": 512, "refinement": 64,
///   "composition_cap": 12, "n_max": 10, "control_grid": 32,
///   "picard_iterations": 24,
///   "methods": ["recurrence", "compositions", "picard"],
///   "seed": 1, "out_dir": "out"
/// }
struct RunConfig {
  explicit RunConfig(DriverFamily f) : family(std::move(f)) {}

  DriverFamily family;
  std::optional<ControlFunction> omega;

  int order = 12;           // N, truncation of the computed series
  int grid_segments = 512;  // uniform segments of the output grid
  int refinement = 64;      // quadrature sub-steps per grid segment
  int composition_cap = 12;
  int control_nmax = 10;    // n range certified by verify-control
  int control_grid = 32;    // verification grid segments
  int picard_iterations = 24;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::vector<SolveMethod> methods{SolveMethod::recurrence,
                                   SolveMethod::compositions, SolveMethod::picard};

  double horizon() const { return family.horizon(); }
};

/// Parses and validates a config document; throws ConfigError with a message
/// suitable for the CLI (usage errors exit with code 2).
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

} // namespace lk

#endif
