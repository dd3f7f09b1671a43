#pragma once

#include "sfmio/diagnostics.hpp"
#include "sfmio/point_cloud.hpp"
#include "sfmio/scene.hpp"

namespace sfmio {

struct ParsedReconstruction {
  Reconstruction reconstruction;
  ParseDiagnostics diagnostics;
};

struct ParsedPointCloud {
  PointCloud cloud;
  ParseDiagnostics diagnostics;
};

}  // namespace sfmio
