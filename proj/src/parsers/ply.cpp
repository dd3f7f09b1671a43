#include "sfmio/parsers/ply.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sfmio/binary_io.hpp"
#include "sfmio/error.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

enum class PlyType { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

PlyType type_from_token(std::string_view token) {
  if (token == "char" || token == "int8") return PlyType::kInt8;
  if (token == "uchar" || token == "uint8") return PlyType::kUInt8;
  if (token == "short" || token == "int16") return PlyType::kInt16;
  if (token == "ushort" || token == "uint16") return PlyType::kUInt16;
  if (token == "int" || token == "int32") return PlyType::kInt32;
  if (token == "uint" || token == "uint32") return PlyType::kUInt32;
  if (token == "float" || token == "float32") return PlyType::kFloat32;
  if (token == "double" || token == "float64") return PlyType::kFloat64;
  throw ParseError("ply: unknown property type '" + std::string(token) + "'");
}

struct PlyProperty {
  std::string name;
  bool is_list = false;
  PlyType count_type = PlyType::kUInt8;
  PlyType value_type = PlyType::kFloat32;
};

struct PlyElement {
  std::string name;
  std::uint64_t count = 0;
  std::vector<PlyProperty> properties;
};

enum class Encoding { kAscii, kBinaryLittle, kBinaryBig };

double read_binary_scalar(std::istream& in, PlyType type, bool big_endian) {
  switch (type) {
    case PlyType::kInt8:
      return static_cast<double>(read_le<std::int8_t>(in));
    case PlyType::kUInt8:
      return static_cast<double>(read_le<std::uint8_t>(in));
    case PlyType::kInt16:
      return big_endian ? read_be<std::int16_t>(in) : read_le<std::int16_t>(in);
    case PlyType::kUInt16:
      return big_endian ? read_be<std::uint16_t>(in) : read_le<std::uint16_t>(in);
    case PlyType::kInt32:
      return big_endian ? read_be<std::int32_t>(in) : read_le<std::int32_t>(in);
    case PlyType::kUInt32:
      return big_endian ? read_be<std::uint32_t>(in) : read_le<std::uint32_t>(in);
    case PlyType::kFloat32:
      return big_endian ? read_be<float>(in) : read_le<float>(in);
    case PlyType::kFloat64:
      return big_endian ? read_be<double>(in) : read_le<double>(in);
  }
  throw ParseError("ply: unknown property type");
}

// Whitespace-delimited token source for the ascii payload.
class AsciiTokens {
 public:
  explicit AsciiTokens(std::istream& in) : in_(in) {}

  double next() {
    std::string token;
    if (!(in_ >> token)) throw ParseError("ply: payload ended before element count");
    const auto v = parse_double(token);
    if (!v) throw ParseError("ply: non-numeric payload token '" + token + "'");
    return *v;
  }

 private:
  std::istream& in_;
};

std::uint8_t to_color_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

ParsedPointCloud parse_ply(std::istream& in) {
  ParsedPointCloud out;
  ParseDiagnostics& diag = out.diagnostics;

  std::string line;
  if (!get_line(in, line) || trim(line) != "ply")
    throw ParseError("ply: missing 'ply' magic line");
  if (!get_line(in, line)) throw ParseError("ply: missing format line");
  const auto format_fields = split_fields(line);
  if (format_fields.size() != 3 || format_fields[0] != "format" ||
      format_fields[2] != "1.0")
    throw ParseError("ply: malformed format line");
  Encoding encoding;
  if (format_fields[1] == "ascii")
    encoding = Encoding::kAscii;
  else if (format_fields[1] == "binary_little_endian")
    encoding = Encoding::kBinaryLittle;
  else if (format_fields[1] == "binary_big_endian")
    encoding = Encoding::kBinaryBig;
  else
    throw ParseError("ply: unknown encoding '" + std::string(format_fields[1]) + "'");

  std::vector<PlyElement> elements;
  bool header_done = false;
  while (!header_done) {
    if (!get_line(in, line)) throw ParseError("ply: header ended without end_header");
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0] == "comment" || fields[0] == "obj_info") continue;
    if (fields[0] == "end_header") {
      header_done = true;
    } else if (fields[0] == "element") {
      if (fields.size() != 3) throw ParseError("ply: malformed element line");
      const auto count = parse_int(fields[2]);
      if (!count || *count < 0) throw ParseError("ply: malformed element count");
      elements.push_back({std::string(fields[1]), static_cast<std::uint64_t>(*count), {}});
    } else if (fields[0] == "property") {
      if (elements.empty()) throw ParseError("ply: property before any element");
      PlyProperty prop;
      if (fields.size() >= 2 && fields[1] == "list") {
        if (fields.size() != 5) throw ParseError("ply: malformed property list line");
        prop.is_list = true;
        prop.count_type = type_from_token(fields[2]);
        prop.value_type = type_from_token(fields[3]);
        prop.name = std::string(fields[4]);
      } else {
        if (fields.size() != 3) throw ParseError("ply: malformed property line");
        prop.value_type = type_from_token(fields[1]);
        prop.name = std::string(fields[2]);
      }
      elements.back().properties.push_back(std::move(prop));
    } else {
      throw ParseError("ply: unexpected header line '" + std::string(trim(line)) + "'");
    }
  }

  const bool big_endian = encoding == Encoding::kBinaryBig;
  AsciiTokens tokens(in);
  const auto read_scalar = [&](PlyType type) {
    if (encoding != Encoding::kAscii) return read_binary_scalar(in, type, big_endian);
    const double value = tokens.next();
    // The declared type bounds the precision: an ascii float32 property
    // holds an f32 value, so snap to it and agree with the binary path.
    return type == PlyType::kFloat32 ? static_cast<double>(static_cast<float>(value))
                                     : value;
  };

  PointCloud& cloud = out.cloud;
  for (const PlyElement& element : elements) {
    const bool is_vertex = element.name == "vertex";
    const bool is_face = element.name == "face";

    // Property slots for the vertex element.
    int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1, inx = -1, iny = -1, inz = -1;
    if (is_vertex) {
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const std::string& n = element.properties[p].name;
        const int idx = static_cast<int>(p);
        if (n == "x") ix = idx;
        else if (n == "y") iy = idx;
        else if (n == "z") iz = idx;
        else if (n == "red" || n == "diffuse_red") ir = idx;
        else if (n == "green" || n == "diffuse_green") ig = idx;
        else if (n == "blue" || n == "diffuse_blue") ib = idx;
        else if (n == "nx") inx = idx;
        else if (n == "ny") iny = idx;
        else if (n == "nz") inz = idx;
      }
      if (ix < 0 || iy < 0 || iz < 0)
        throw ParseError("ply: vertex element must declare x, y and z");
      cloud.positions.reserve(element.count);
      if (ir >= 0 && ig >= 0 && ib >= 0) cloud.colors.reserve(element.count);
      if (inx >= 0 && iny >= 0 && inz >= 0) cloud.normals.reserve(element.count);
    }
    const bool has_colors = ir >= 0 && ig >= 0 && ib >= 0;
    const bool has_normals = inx >= 0 && iny >= 0 && inz >= 0;

    std::vector<double> row(element.properties.size());
    for (std::uint64_t i = 0; i < element.count; ++i) {
      std::vector<std::uint32_t> face_indices;
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const PlyProperty& prop = element.properties[p];
        if (prop.is_list) {
          const double count_value = read_scalar(prop.count_type);
          if (count_value < 0) throw ParseError("ply: negative list count");
          const auto list_count = static_cast<std::uint64_t>(count_value);
          const bool keep = is_face && (prop.name == "vertex_indices" ||
                                        prop.name == "vertex_index");
          for (std::uint64_t k = 0; k < list_count; ++k) {
            const double v = read_scalar(prop.value_type);
            if (keep) {
              if (v < 0) throw ParseError("ply: negative vertex index in face");
              face_indices.push_back(static_cast<std::uint32_t>(v));
            }
          }
        } else {
          row[p] = read_scalar(prop.value_type);
        }
      }
      if (is_vertex) {
        cloud.positions.push_back({row[ix], row[iy], row[iz]});
        if (has_colors)
          cloud.colors.push_back({to_color_channel(row[ir]), to_color_channel(row[ig]),
                                  to_color_channel(row[ib])});
        if (has_normals) cloud.normals.push_back({row[inx], row[iny], row[inz]});
      } else if (is_face && !face_indices.empty()) {
        cloud.faces.push_back(std::move(face_indices));
      }
    }
  }

  diag.num_points = cloud.positions.size();
  return out;
}

ParsedPointCloud parse_ply_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_ply(in);
}

}  // namespace sfmio
