#include "sfmio/writers/nvm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "sfmio/error.hpp"
#include "sfmio/geometry.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

void write_nvm(const Reconstruction& rec, std::ostream& out, ParseDiagnostics* notes) {
  const auto note = [notes](const std::string& location, const std::string& message) {
    if (notes) notes->warn(location, message);
  };

  // Validate representability before emitting anything.
  std::map<std::int64_t, std::int64_t> camera_index;  // view id -> 0-based NVM index
  for (const auto& [id, view] : rec.cameras) {
    const CameraIntrinsics& intr = rec.intrinsics_pool.at(view.intrinsics_id);
    if (std::abs(intr.fx - intr.fy) > 1e-9) {
      std::ostringstream msg;
      msg << "camera " << id << " has anisotropic focal lengths (fx " << intr.fx
          << ", fy " << intr.fy << ") not representable in NVM";
      throw RepresentabilityError(msg.str());
    }
    if (view.image_name.find_first_of(" \t") != std::string::npos)
      throw RepresentabilityError("image name with whitespace not representable in NVM: '" +
                                  view.image_name + "'");
    const auto index = static_cast<std::int64_t>(camera_index.size());
    camera_index.emplace(id, index);
  }

  out << "NVM_V3\n\n" << rec.cameras.size() << '\n';
  bool noted_pp = false, noted_disto = false;
  for (const auto& [id, view] : rec.cameras) {
    const CameraIntrinsics& intr = rec.intrinsics_pool.at(view.intrinsics_id);
    double radial = 0.0;
    if (!intr.distortion.empty()) {
      radial = intr.distortion[0];
      if (intr.distortion.size() > 1 &&
          std::any_of(intr.distortion.begin() + 1, intr.distortion.end(),
                      [](double c) { return c != 0.0; }) &&
          !noted_disto) {
        note("cameras", "distortion beyond one radial coefficient dropped");
        noted_disto = true;
      }
    }
    if ((intr.cx != 0.0 || intr.cy != 0.0) && !noted_pp) {
      note("cameras",
           "principal point and image dimensions are not representable in NVM; "
           "measurements re-offset to the image center");
      noted_pp = true;
    }
    const Vec3 center = camera_center(view.pose);
    const Quat q = view.pose.q;
    out << view.image_name << ' ' << format_g17(intr.fx) << ' ' << format_g17(q.w)
        << ' ' << format_g17(q.x) << ' ' << format_g17(q.y) << ' ' << format_g17(q.z)
        << ' ' << format_g17(center.x) << ' ' << format_g17(center.y) << ' '
        << format_g17(center.z) << ' ' << format_g17(radial) << " 0\n";
  }

  // Group measurements per point; feature indices restart per image.
  std::vector<std::vector<const Observation*>> per_point(rec.points.size());
  for (const Observation& obs : rec.observations)
    if (obs.point_index >= 0 && obs.point_index < static_cast<std::int64_t>(rec.points.size()))
      per_point[obs.point_index].push_back(&obs);
  std::map<std::int64_t, std::int64_t> next_feature;

  out << '\n' << rec.points.size() << '\n';
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    const Point3D& p = rec.points[i];
    out << format_g17(p.position.x) << ' ' << format_g17(p.position.y) << ' '
        << format_g17(p.position.z) << ' ' << static_cast<int>(p.color[0]) << ' '
        << static_cast<int>(p.color[1]) << ' ' << static_cast<int>(p.color[2]) << ' '
        << per_point[i].size();
    for (const Observation* obs : per_point[i]) {
      const CameraIntrinsics& intr =
          rec.intrinsics_pool.at(rec.cameras.at(obs->camera_id).intrinsics_id);
      out << ' ' << camera_index.at(obs->camera_id) << ' '
          << next_feature[obs->camera_id]++ << ' ' << format_g17(obs->uv.x - intr.cx)
          << ' ' << format_g17(obs->uv.y - intr.cy);
    }
    out << '\n';
  }
}

void write_nvm_file(const Reconstruction& rec, const std::filesystem::path& path,
                    ParseDiagnostics* notes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_nvm(rec, out, notes);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace sfmio
