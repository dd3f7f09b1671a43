#include "sfmio/writers/ply.hpp"

#include <cstdio>
#include <fstream>

#include "sfmio/binary_io.hpp"
#include "sfmio/error.hpp"

namespace sfmio {

namespace {

std::string format_f32(float value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(value));
  return buf;
}

}  // namespace

void write_ply(const PointCloud& cloud, std::ostream& out, PlyEncoding encoding) {
  const bool ascii = encoding == PlyEncoding::kAscii;
  out << "ply\n"
      << (ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n")
      << "element vertex " << cloud.positions.size() << '\n'
      << "property float x\nproperty float y\nproperty float z\n";
  if (cloud.has_normals())
    out << "property float nx\nproperty float ny\nproperty float nz\n";
  if (cloud.has_colors())
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  if (!cloud.faces.empty())
    out << "element face " << cloud.faces.size() << '\n'
        << "property list uchar int vertex_indices\n";
  out << "end_header\n";

  const auto put_f32 = [&](double value) {
    const float f = static_cast<float>(value);
    if (ascii)
      out << format_f32(f);
    else
      write_le(out, f);
  };
  const auto put_vec3 = [&](Vec3 v, bool lead_space) {
    if (ascii && lead_space) out << ' ';
    put_f32(v.x);
    if (ascii) out << ' ';
    put_f32(v.y);
    if (ascii) out << ' ';
    put_f32(v.z);
  };

  for (std::size_t i = 0; i < cloud.positions.size(); ++i) {
    put_vec3(cloud.positions[i], false);
    if (cloud.has_normals()) put_vec3(cloud.normals[i], true);
    if (cloud.has_colors()) {
      for (int c = 0; c < 3; ++c) {
        if (ascii)
          out << ' ' << static_cast<int>(cloud.colors[i][c]);
        else
          write_le(out, cloud.colors[i][c]);
      }
    }
    if (ascii) out << '\n';
  }

  for (const auto& face : cloud.faces) {
    if (face.size() > 255) throw RepresentabilityError("face with more than 255 vertices");
    if (ascii) {
      out << face.size();
      for (const std::uint32_t idx : face) out << ' ' << idx;
      out << '\n';
    } else {
      write_le(out, static_cast<std::uint8_t>(face.size()));
      for (const std::uint32_t idx : face) write_le(out, static_cast<std::int32_t>(idx));
    }
  }
}

void write_ply_file(const PointCloud& cloud, const std::filesystem::path& path,
                    PlyEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_ply(cloud, out, encoding);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace sfmio
