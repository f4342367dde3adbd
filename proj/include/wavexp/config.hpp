#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavexp/scheme.hpp"
#include "wavexp/spectral.hpp"
#include "wavexp/wavelet.hpp"

namespace wavexp {

/// Validated experiment description. Unknown keys anywhere in the JSON are
/// rejected so typos cannot silently disable a knob.
struct ExperimentConfig {
  int aux_order = 3;

  std::string kernel = "squared_exponential";  // or "matern", "zero"
  double variance = 1.0;
  double length = 1.0;
  double nu = 2.5;  // matern only

  std::vector<TruncationScheme> schedule;

  double T = 10.0;
  int grid_points = 257;

  double alpha = 0.75;
  double gamma = 0.4;
  std::vector<double> eps;  // thresholds in units of sqrt(R(0))
  size_t replicates = 2000;
  uint64_t seed = 1;

  std::string out_dir = "out";

  /// Throws std::invalid_argument with a field-naming message on any
  /// domain violation.
  void validate() const;

  SpectralModel build_model() const;
  WaveletPair build_pair() const;
};

/// Parses and validates; rejects unknown keys.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// The bundled default experiment, also used when no --config is given.
std::string default_config_json();

}  // namespace wavexp
