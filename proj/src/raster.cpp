#include "pcaerg/raster.hpp"

#include <fstream>
#include <string>

#include "pcaerg/errors.hpp"

namespace pcaerg {

SpaceTimeRaster raster(std::span<const RingState> rows) {
  SpaceTimeRaster image;
  image.height = rows.size();
  image.width = rows.empty() ? 0 : rows.front().size();
  image.pixels.reserve(image.width * image.height);
  for (const auto& row : rows) {
    if (row.size() != image.width) throw InvalidInput("raster rows must all have the same length");
    for (CellState c : row.cells) image.pixels.push_back(grey_level(c));
  }
  return image;
}

void write_pgm(const SpaceTimeRaster& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

SpaceTimeRaster read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::string magic;
  SpaceTimeRaster image;
  int maxval = 0;
  in >> magic >> image.width >> image.height >> maxval;
  if (!in || magic != "P5" || maxval != 255) throw IoError("not an 8-bit binary PGM: " + path.string());
  in.get();  // single whitespace byte before the pixel block
  image.pixels.resize(image.width * image.height);
  in.read(reinterpret_cast<char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size())) {
    throw IoError("truncated PGM pixel data in " + path.string());
  }
  return image;
}

}  // namespace pcaerg
