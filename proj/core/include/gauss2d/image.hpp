#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gauss2d {

/// Row-major 8-bit image with interleaved channels (1 = gray, 3 = RGB).
struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t channels = 1;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(std::uint32_t w, std::uint32_t h, std::uint32_t c, std::uint8_t fill = 0);

  std::size_t row_stride() const { return std::size_t{width} * channels; }
  std::uint8_t& at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) {
    return data[y * row_stride() + std::size_t{x} * channels + c];
  }
  std::uint8_t at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) const {
    return data[y * row_stride() + std::size_t{x} * channels + c];
  }

  /// Throws ImageFormatError unless dims are in [1, 65535], channels is 1 or 3
  /// and data has width*height*channels samples.
  void validate() const;

  friend bool operator==(const Image&, const Image&) = default;
};

namespace pnm {

/// Parses binary P5 (gray) or P6 (RGB) with maxval <= 255. Samples with
/// maxval < 255 are rescaled to the full 0..255 range.
Image decode(std::string_view bytes);

/// Encodes as P5 or P6 with maxval 255.
std::string encode(const Image& img);

Image read(const std::filesystem::path& path);
void write(const std::filesystem::path& path, const Image& img);

}  // namespace pnm

}  // namespace gauss2d
