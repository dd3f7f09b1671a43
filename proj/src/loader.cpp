#include "sfmio/loader.hpp"

#include <fstream>

#include <json.hpp>

#include "sfmio/error.hpp"
#include "sfmio/image_io.hpp"
#include "sfmio/parsers/bundler.hpp"
#include "sfmio/parsers/colmap.hpp"
#include "sfmio/parsers/meshroom.hpp"
#include "sfmio/parsers/mve.hpp"
#include "sfmio/parsers/nvm.hpp"
#include "sfmio/parsers/openmvg.hpp"
#include "sfmio/parsers/ply.hpp"
#include "sfmio/text_util.hpp"
#include "sfmio/writers/scene_json.hpp"

namespace sfmio {

namespace {

constexpr std::pair<FormatId, std::string_view> kFormatNames[] = {
    {FormatId::kColmap, "colmap"},     {FormatId::kNvm, "nvm"},
    {FormatId::kOpenMvg, "openmvg"},   {FormatId::kMeshroom, "meshroom"},
    {FormatId::kMve, "mve"},           {FormatId::kBundler, "bundler"},
    {FormatId::kPly, "ply"},           {FormatId::kSceneJson, "scene-json"},
};

std::optional<FormatId> detect_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  char prefix[64] = {};
  in.read(prefix, sizeof(prefix));
  const std::string_view head(prefix, static_cast<std::size_t>(in.gcount()));

  if (head.rfind("NVM_V3", 0) == 0) return FormatId::kNvm;
  if (head.rfind("# Bundle file", 0) == 0) return FormatId::kBundler;
  {
    const auto line_end = head.find('\n');
    const std::string_view first_line =
        trim(line_end == std::string_view::npos ? head : head.substr(0, line_end));
    if (first_line == "ply") return FormatId::kPly;
  }

  const std::string_view lead = trim(head);
  if (!lead.empty() && lead.front() == '{') {
    in.clear();
    in.seekg(0);
    const nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_object()) {
      if (doc.contains("sfm_data_version")) return FormatId::kOpenMvg;
      if (doc.contains("views") && doc.contains("poses")) return FormatId::kMeshroom;
      if (doc.contains("format_version") && doc.contains("convention"))
        return FormatId::kSceneJson;
    }
  }
  return std::nullopt;
}

DimensionLookup make_dimension_lookup(const std::filesystem::path& image_dir) {
  return [image_dir](const std::string& image_name) -> std::optional<std::pair<int, int>> {
    namespace fs = std::filesystem;
    const fs::path name(image_name);
    const std::string stem = name.stem().string();
    const fs::path candidates[] = {
        image_dir / name.filename(),
        image_dir / (stem + ".ppm"),
        image_dir / (stem + ".pgm"),
    };
    for (const fs::path& candidate : candidates) {
      if (!fs::exists(candidate)) continue;
      if (const auto dims = read_pnm_dimensions_file(candidate)) return dims;
    }
    return std::nullopt;
  };
}

ParsedReconstruction load_ply_as_reconstruction(const std::filesystem::path& path) {
  ParsedPointCloud parsed = parse_ply_file(path);
  ParsedReconstruction out;
  out.diagnostics = parsed.diagnostics;
  out.reconstruction.source.format = "ply";
  out.reconstruction.source.root_path = path.parent_path().string();
  out.reconstruction.points.reserve(parsed.cloud.positions.size());
  for (std::size_t i = 0; i < parsed.cloud.positions.size(); ++i) {
    Point3D point;
    point.position = parsed.cloud.positions[i];
    if (i < parsed.cloud.colors.size()) point.color = parsed.cloud.colors[i];
    out.reconstruction.points.push_back(point);
  }
  if (!parsed.cloud.faces.empty())
    out.diagnostics.warn(path.filename().string(),
                         "mesh faces are not part of the scene model; vertices kept");
  return out;
}

}  // namespace

std::string_view format_name(FormatId id) {
  for (const auto& [format, name] : kFormatNames)
    if (format == id) return name;
  return "unknown";
}

std::optional<FormatId> format_from_name(std::string_view name) {
  for (const auto& [format, format_name] : kFormatNames)
    if (format_name == name) return format;
  // Regard3D emits OpenMVG sfm_data documents.
  if (name == "regard3d") return FormatId::kOpenMvg;
  if (name == "visualsfm") return FormatId::kNvm;
  return std::nullopt;
}

std::optional<FormatId> try_detect_format(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw IoError("path does not exist: " + path.string());
  if (fs::is_directory(path)) {
    if (fs::exists(path / "cameras.bin") || fs::exists(path / "cameras.txt"))
      return FormatId::kColmap;
    if (fs::exists(path / "synth_0.out") && fs::is_directory(path / "views"))
      return FormatId::kMve;
    return std::nullopt;
  }
  return detect_file(path);
}

FormatId detect_format(const std::filesystem::path& path) {
  if (const auto format = try_detect_format(path)) return *format;
  throw UnknownFormatError("unrecognized format: " + path.string());
}

ParsedReconstruction load_reconstruction(const std::filesystem::path& path,
                                         const LoadOptions& options) {
  const FormatId format =
      options.format_hint ? *options.format_hint : detect_format(path);

  DimensionLookup dims;
  if (options.image_dir) dims = make_dimension_lookup(*options.image_dir);

  switch (format) {
    case FormatId::kColmap:
      return parse_colmap_model(path);
    case FormatId::kNvm:
      return parse_nvm_file(path, dims);
    case FormatId::kOpenMvg:
      return parse_openmvg_sfm_data_file(path);
    case FormatId::kMeshroom:
      return parse_meshroom_sfm_file(path);
    case FormatId::kMve:
      return parse_mve_workspace(path);
    case FormatId::kBundler:
      return parse_bundler_out_file(path);
    case FormatId::kPly:
      return load_ply_as_reconstruction(path);
    case FormatId::kSceneJson: {
      ParsedReconstruction out;
      out.reconstruction = parse_scene_json_file(path);
      out.diagnostics.num_cameras = out.reconstruction.cameras.size();
      out.diagnostics.num_points = out.reconstruction.points.size();
      out.diagnostics.num_observations = out.reconstruction.observations.size();
      return out;
    }
  }
  throw UnknownFormatError("unrecognized format: " + path.string());
}

}  // namespace sfmio
