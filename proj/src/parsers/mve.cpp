#include "sfmio/parsers/mve.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "sfmio/error.hpp"
#include "sfmio/parsers/bundler.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio {

namespace {

std::vector<double> values_of(const std::string& value, std::size_t expected,
                              const char* key) {
  const auto fields = split_fields(value);
  if (fields.size() != expected) {
    std::ostringstream msg;
    msg << "meta.ini: key '" << key << "' expects " << expected << " values";
    throw ParseError(msg.str());
  }
  std::vector<double> out;
  for (const auto f : fields) {
    const auto v = parse_double(f);
    if (!v) throw ParseError(std::string("meta.ini: non-numeric value for '") + key + "'");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

MveViewMeta parse_mve_meta_ini(std::istream& in) {
  MveViewMeta meta;
  std::string section;
  std::string line;
  while (get_line(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("meta.ini: malformed section header");
      section = std::string(t.substr(1, t.size() - 2));
      if (section == "camera") meta.has_camera = true;
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("meta.ini: expected 'key = value' line");
    const std::string key{trim(t.substr(0, eq))};
    const std::string value{trim(t.substr(eq + 1))};

    if (section == "view") {
      if (key == "id") {
        const auto v = parse_int(value);
        if (!v) throw ParseError("meta.ini: non-integer view id");
        meta.id = *v;
      } else if (key == "name") {
        meta.name = value;
      } else if (key == "width") {
        meta.width = static_cast<int>(values_of(value, 1, "width")[0]);
      } else if (key == "height") {
        meta.height = static_cast<int>(values_of(value, 1, "height")[0]);
      }
    } else if (section == "camera") {
      if (key == "focal_length") {
        meta.focal_length = values_of(value, 1, "focal_length")[0];
      } else if (key == "principal_point") {
        const auto v = values_of(value, 2, "principal_point");
        meta.principal_point = {v[0], v[1]};
      } else if (key == "rotation") {
        const auto v = values_of(value, 9, "rotation");
        std::copy(v.begin(), v.end(), meta.rotation.m.begin());
      } else if (key == "translation") {
        const auto v = values_of(value, 3, "translation");
        meta.translation = {v[0], v[1], v[2]};
      } else if (key == "pixel_aspect") {
        meta.pixel_aspect = values_of(value, 1, "pixel_aspect")[0];
      } else if (key == "width") {
        meta.width = static_cast<int>(values_of(value, 1, "width")[0]);
      } else if (key == "height") {
        meta.height = static_cast<int>(values_of(value, 1, "height")[0]);
      }
    }
  }
  return meta;
}

ParsedReconstruction parse_mve_workspace(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  ParsedReconstruction out;
  Reconstruction& rec = out.reconstruction;
  ParseDiagnostics& diag = out.diagnostics;
  rec.source.format = "mve";
  rec.source.root_path = dir.string();

  const fs::path views_dir = dir / "views";
  if (!fs::is_directory(views_dir))
    throw IoError("MVE workspace has no views/ directory: " + dir.string());

  std::vector<fs::path> view_dirs;
  for (const auto& entry : fs::directory_iterator(views_dir))
    if (entry.is_directory() && fs::exists(entry.path() / "meta.ini"))
      view_dirs.push_back(entry.path());
  std::sort(view_dirs.begin(), view_dirs.end());
  if (view_dirs.empty()) diag.warn("views", "workspace contains no views");

  std::int64_t fallback_id = 0;
  for (const fs::path& view_dir : view_dirs) {
    const std::string location = view_dir.filename().string();
    std::ifstream in(view_dir / "meta.ini", std::ios::binary);
    if (!in) throw IoError("cannot open " + (view_dir / "meta.ini").string());
    const MveViewMeta meta = parse_mve_meta_ini(in);
    ++fallback_id;

    if (!meta.has_camera || meta.focal_length == 0.0) {
      diag.warn(location, "unregistered view (no camera or focal_length 0); skipped");
      continue;
    }
    if (meta.pixel_aspect && *meta.pixel_aspect != 1.0)
      diag.warn(location, "pixel_aspect != 1 is not representable; ignored");

    CameraView view;
    view.id = meta.id.value_or(fallback_id);
    view.intrinsics_id = view.id;
    view.image_name = !meta.name.empty() ? meta.name : location;

    CameraIntrinsics intr;
    intr.model = CameraModel::kSimplePinhole;
    if (meta.width && meta.height) {
      intr.width = *meta.width;
      intr.height = *meta.height;
      intr.fx = intr.fy = meta.focal_length * std::max(intr.width, intr.height);
      intr.cx = meta.principal_point.x * intr.width;
      intr.cy = meta.principal_point.y * intr.height;
    } else {
      // No dimension source; keep MVE's normalized units and say so.
      intr.fx = intr.fy = meta.focal_length;
      diag.warn(location,
                "unknown dimensions: focal length and principal point left "
                "in normalized units");
    }
    view.pose = make_pose(matrix_to_quat(meta.rotation, 1e-4), meta.translation);

    rec.intrinsics_pool[view.intrinsics_id] = std::move(intr);
    rec.cameras[view.id] = std::move(view);
  }

  const fs::path synth = dir / "synth_0.out";
  if (fs::exists(synth)) {
    // Only the sparse cloud: the Bundler view lists use indices that need
    // not line up with meta.ini view ids.
    ParsedReconstruction bundle = parse_bundler_out_file(synth);
    for (Point3D& point : bundle.reconstruction.points) {
      point.track.clear();
      rec.points.push_back(std::move(point));
    }
  }

  diag.num_cameras = rec.cameras.size();
  diag.num_points = rec.points.size();
  diag.num_observations = rec.observations.size();
  return out;
}

}  // namespace sfmio
