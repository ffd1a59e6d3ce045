#include "gauss2d/image.hpp"

#include <cctype>
#include <charconv>

#include "gauss2d/errors.hpp"
#include "gauss2d/file_util.hpp"

namespace gauss2d {

Image::Image(std::uint32_t w, std::uint32_t h, std::uint32_t c, std::uint8_t fill)
    : width(w), height(h), channels(c), data(std::size_t{w} * h * c, fill) {}

void Image::validate() const {
  if (width < 1 || height < 1 || width > 65535 || height > 65535) {
    throw ImageFormatError("image dimensions must be in [1, 65535]");
  }
  if (channels != 1 && channels != 3) throw ImageFormatError("unsupported channel count");
  if (data.size() != std::size_t{width} * height * channels) {
    throw ImageFormatError("image buffer size does not match its dimensions");
  }
}

namespace pnm {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view s) : s_(s) {}

  unsigned next_uint() {
    skip_space_and_comments();
    unsigned v = 0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr == first) throw ImageFormatError("malformed PNM header");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= s_.size() || !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      throw ImageFormatError("malformed PNM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 2;
};

}  // namespace

Image decode(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw ImageFormatError("not a binary PGM/PPM (P5/P6) stream");
  }
  const std::uint32_t channels = bytes[1] == '5' ? 1 : 3;
  HeaderReader hdr(bytes);
  const unsigned width = hdr.next_uint();
  const unsigned height = hdr.next_uint();
  const unsigned maxval = hdr.next_uint();
  if (maxval < 1 || maxval > 255) throw ImageFormatError("only 8-bit PNM (maxval <= 255) is supported");
  if (width < 1 || height < 1 || width > 65535 || height > 65535) {
    throw ImageFormatError("PNM dimensions out of range");
  }
  const std::size_t offset = hdr.raster_offset();
  const std::size_t need = std::size_t{width} * height * channels;
  if (bytes.size() - offset < need) throw ImageFormatError("truncated PNM raster");

  Image img(width, height, channels);
  for (std::size_t i = 0; i < need; ++i) {
    const unsigned v = static_cast<unsigned char>(bytes[offset + i]);
    if (v > maxval) throw ImageFormatError("PNM sample exceeds maxval");
    img.data[i] = static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
  }
  return img;
}

std::string encode(const Image& img) {
  img.validate();
  std::string out = (img.channels == 1 ? "P5\n" : "P6\n") + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.data.data()), img.data.size());
  return out;
}

Image read(const std::filesystem::path& path) { return decode(read_file(path)); }

void write(const std::filesystem::path& path, const Image& img) { write_file_atomic(path, encode(img)); }

}  // namespace pnm
}  // namespace gauss2d
