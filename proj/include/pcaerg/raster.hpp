#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pcaerg/envelope.hpp"

namespace pcaerg {

/// Time-major grey-level image of a run: Zero -> 255, One -> 0, Q -> 128.
struct SpaceTimeRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
  friend bool operator==(const SpaceTimeRaster&, const SpaceTimeRaster&) = default;
};

constexpr std::uint8_t grey_level(CellState c) {
  switch (c) {
    case CellState::Zero: return 255;
    case CellState::One: return 0;
    case CellState::Q: return 128;
  }
  return 128;
}

/// Row 0 is the earliest configuration. Throws InvalidInput on ragged input.
SpaceTimeRaster raster(std::span<const RingState> rows);

/// Binary PGM (P5, maxval 255). Throws IoError naming the path.
void write_pgm(const SpaceTimeRaster& image, const std::filesystem::path& path);
SpaceTimeRaster read_pgm(const std::filesystem::path& path);

}  // namespace pcaerg
