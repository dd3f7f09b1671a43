#include "sfmio/image_io.hpp"

#include <fstream>

#include "sfmio/error.hpp"

namespace sfmio {

namespace {

// Next integer token, skipping whitespace and '#' comments.
std::optional<long> pnm_value(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == EOF) return std::nullopt;
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    break;
  }
  long value;
  if (!(in >> value)) return std::nullopt;
  return value;
}

struct PnmHeader {
  int magic = 0;  // 5 or 6
  int width = 0, height = 0, maxval = 0;
};

std::optional<PnmHeader> read_header(std::istream& in) {
  char p, digit;
  if (!in.get(p) || !in.get(digit) || p != 'P' || (digit != '5' && digit != '6'))
    return std::nullopt;
  PnmHeader header;
  header.magic = digit - '0';
  const auto w = pnm_value(in), h = pnm_value(in), maxval = pnm_value(in);
  if (!w || !h || !maxval || *w <= 0 || *h <= 0 || *maxval <= 0) return std::nullopt;
  header.width = static_cast<int>(*w);
  header.height = static_cast<int>(*h);
  header.maxval = static_cast<int>(*maxval);
  return header;
}

}  // namespace

ImageU8 read_pnm(std::istream& in) {
  const auto header = read_header(in);
  if (!header) throw ParseError("pnm: not a binary P5/P6 image");
  if (header->maxval > 255) throw ParseError("pnm: 16-bit samples are not supported");
  in.get();  // single whitespace separating header and payload

  ImageU8 image;
  image.width = header->width;
  image.height = header->height;
  image.channels = header->magic == 6 ? 3 : 1;
  const std::size_t size = static_cast<std::size_t>(image.width) * image.height *
                           image.channels;
  image.pixels.resize(size);
  if (!in.read(reinterpret_cast<char*>(image.pixels.data()), size))
    throw ParseError("pnm: truncated pixel payload");
  if (header->maxval != 255) {
    for (std::uint8_t& v : image.pixels)
      v = static_cast<std::uint8_t>(v * 255 / header->maxval);
  }
  return image;
}

ImageU8 read_pnm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_pnm(in);
}

std::optional<std::pair<int, int>> read_pnm_dimensions(std::istream& in) {
  const auto header = read_header(in);
  if (!header) return std::nullopt;
  return std::pair<int, int>{header->width, header->height};
}

std::optional<std::pair<int, int>> read_pnm_dimensions_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return read_pnm_dimensions(in);
}

}  // namespace sfmio
