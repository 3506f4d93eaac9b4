#pragma once

#include "tunnel/pipeline.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tunnel {

/// Everything a CLI invocation needs: physics/numerics settings, the sweep lists and
/// the output directory.
///
/// The on-disk form is an INI file (';' starts a comment):
///
///   [atom]        Z
///   [sweep]       e0_over_z3 = 0.035, 0.04 ...   gamma = 0.2, 0.25 ...
///   [grid]        dx, spectrum_half_width, box_left, box_right, delay_half_width
///   [propagation] dt, record_stride, pre_window, post_window, absorber_width,
///                 absorber_strength, growth_threshold, resolved_momentum, mode = full|delay
///   [output]      directory, snapshot_times
///
/// Every key is optional; unknown sections or keys are rejected.
struct RunConfig {
  RunSettings settings;
  std::vector<double> e0_over_z3 = {0.035, 0.04, 0.048, 0.055, 0.06};
  std::vector<double> gammas = {0.2, 0.25, 0.33};
  std::filesystem::path output_dir = "out";

  /// Throws ConfigError unless every field ratio is below the over-the-barrier
  /// threshold and every gamma lies in (0, 1).
  void validate() const;
};

/// Throws ConfigError with a diagnostic on malformed input.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// "0.1, 0.2 ,0.3" -> {0.1, 0.2, 0.3}; throws ConfigError on junk.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace tunnel
