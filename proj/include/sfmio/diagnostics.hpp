#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sfmio {

struct Warning {
  std::string location;
  std::string message;
};

/// Non-fatal findings collected while reading or writing a scene, plus the
/// entity counts of the produced reconstruction.
struct ParseDiagnostics {
  std::vector<Warning> warnings;
  std::size_t num_cameras = 0;
  std::size_t num_points = 0;
  std::size_t num_observations = 0;

  void warn(std::string location, std::string message) {
    warnings.push_back({std::move(location), std::move(message)});
  }
};

}  // namespace sfmio
