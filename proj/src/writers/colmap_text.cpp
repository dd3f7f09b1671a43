#include "sfmio/writers/colmap_text.hpp"

#include <fstream>
#include <map>
#include <vector>

#include "sfmio/error.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

void write_colmap_text(const Reconstruction& rec, const std::filesystem::path& dir,
                       ParseDiagnostics* notes) {
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "cameras.txt");
    out << "# Camera list with one line of data per camera:\n"
           "#   CAMERA_ID, MODEL, WIDTH, HEIGHT, PARAMS[]\n";
    for (const auto& [id, intr] : rec.intrinsics_pool) {
      out << id << ' ' << camera_model_name(intr.model) << ' ' << intr.width << ' '
          << intr.height;
      for (const double p : camera_params(intr)) out << ' ' << format_g17(p);
      out << '\n';
    }
  }

  // Written point ids: the source ids when the provenance map covers every
  // point, dense 1-based indices otherwise.
  const bool use_source_ids = rec.source.point_ids.size() == rec.points.size();
  const auto written_point_id = [&](std::int64_t index) {
    return use_source_ids ? rec.source.point_ids.at(index) : index + 1;
  };

  // POINTS2D lines grouped per image, and the per-point track they imply.
  std::map<std::int64_t, std::vector<const Observation*>> per_image;
  std::vector<std::vector<TrackElement>> rebuilt_track(rec.points.size());
  for (const Observation& obs : rec.observations) {
    auto& list = per_image[obs.camera_id];
    if (obs.point_index >= 0 && obs.point_index < static_cast<std::int64_t>(rec.points.size()))
      rebuilt_track[obs.point_index].push_back(
          {obs.camera_id, static_cast<std::int64_t>(list.size())});
    list.push_back(&obs);
  }

  bool tracks_rewritten = false;
  {
    auto out = open_out(dir / "points3D.txt");
    out << "# 3D point list with one line of data per point:\n"
           "#   POINT3D_ID, X, Y, Z, R, G, B, ERROR, TRACK[] as (IMAGE_ID, POINT2D_IDX)\n";
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
      const Point3D& p = rec.points[i];
      const auto index = static_cast<std::int64_t>(i);
      out << written_point_id(index) << ' ' << format_g17(p.position.x) << ' '
          << format_g17(p.position.y) << ' ' << format_g17(p.position.z) << ' '
          << static_cast<int>(p.color[0]) << ' ' << static_cast<int>(p.color[1]) << ' '
          << static_cast<int>(p.color[2]) << ' ' << format_g17(p.error.value_or(-1.0));
      for (const TrackElement& el : rebuilt_track[i])
        out << ' ' << el.camera_id << ' ' << el.feature_index;
      out << '\n';
      if (!p.track.empty() &&
          (p.track.size() != rebuilt_track[i].size())) tracks_rewritten = true;
    }
  }
  if (notes && tracks_rewritten)
    notes->warn("points3D.txt",
                "point tracks rewritten from observations; source feature indices dropped");

  {
    auto out = open_out(dir / "images.txt");
    out << "# Image list with two lines of data per image:\n"
           "#   IMAGE_ID, QW, QX, QY, QZ, TX, TY, TZ, CAMERA_ID, NAME\n"
           "#   POINTS2D[] as (X, Y, POINT3D_ID)\n";
    for (const auto& [id, view] : rec.cameras) {
      const CameraPose& pose = view.pose;
      out << id << ' ' << format_g17(pose.q.w) << ' ' << format_g17(pose.q.x) << ' '
          << format_g17(pose.q.y) << ' ' << format_g17(pose.q.z) << ' '
          << format_g17(pose.t.x) << ' ' << format_g17(pose.t.y) << ' '
          << format_g17(pose.t.z) << ' ' << view.intrinsics_id << ' '
          << view.image_name << '\n';
      bool first = true;
      const auto it = per_image.find(id);
      if (it != per_image.end()) {
        for (const Observation* obs : it->second) {
          out << (first ? "" : " ") << format_g17(obs->uv.x) << ' '
              << format_g17(obs->uv.y) << ' ' << written_point_id(obs->point_index);
          first = false;
        }
      }
      out << '\n';
    }
  }
}

}  // namespace sfmio
