#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <utility>
#include <vector>

namespace sfmio {

/// 8-bit image, row-major, interleaved channels (1 = gray, 3 = RGB).
struct ImageU8 {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  std::array<std::uint8_t, 3> rgb_at(int col, int row) const {
    const std::uint8_t* p = &pixels[(static_cast<std::size_t>(row) * width + col) * channels];
    return channels >= 3 ? std::array<std::uint8_t, 3>{p[0], p[1], p[2]}
                         : std::array<std::uint8_t, 3>{p[0], p[0], p[0]};
  }
};

/// Reads a binary PNM image (P5 grayscale or P6 RGB, maxval <= 255).
ImageU8 read_pnm(std::istream& in);
ImageU8 read_pnm_file(const std::filesystem::path& path);

/// Header-only probe for (width, height); nullopt when the stream is not a
/// P5/P6 PNM.
std::optional<std::pair<int, int>> read_pnm_dimensions(std::istream& in);
std::optional<std::pair<int, int>> read_pnm_dimensions_file(const std::filesystem::path& path);

}  // namespace sfmio
