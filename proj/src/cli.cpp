#include "sfmio/cli.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfmio/analysis.hpp"
#include "sfmio/animation.hpp"
#include "sfmio/depth.hpp"
#include "sfmio/error.hpp"
#include "sfmio/loader.hpp"
#include "sfmio/writers/colmap_text.hpp"
#include "sfmio/writers/nvm.hpp"
#include "sfmio/writers/ply.hpp"
#include "sfmio/writers/scene_json.hpp"
#include "sfmio/writers/trajectory.hpp"

namespace sfmio::cli {

namespace {

namespace fs = std::filesystem;

struct LoadFlags {
  std::string input;
  std::string format_hint;
  std::string image_dir;
};

void add_load_flags(CLI::App* cmd, LoadFlags& flags, const char* hint_flag = "--format") {
  cmd->add_option("input", flags.input, "reconstruction path (file or directory)")
      ->required();
  cmd->add_option(hint_flag, flags.format_hint,
                  "input format hint, overrides detection")
      ->check(CLI::IsMember({"colmap", "nvm", "visualsfm", "openmvg", "regard3d",
                             "meshroom", "mve", "bundler", "ply", "scene-json"}));
  cmd->add_option("--image-dir", flags.image_dir,
                  "directory of PPM/PGM images used to recover dimensions for "
                  "formats that store none (NVM)");
}

ParsedReconstruction load_from_flags(const LoadFlags& flags, std::ostream& err) {
  LoadOptions options;
  if (!flags.format_hint.empty()) options.format_hint = format_from_name(flags.format_hint);
  if (!flags.image_dir.empty()) options.image_dir = flags.image_dir;
  ParsedReconstruction parsed = load_reconstruction(flags.input, options);
  for (const Warning& w : parsed.diagnostics.warnings)
    err << "warning [" << w.location << "]: " << w.message << '\n';
  return parsed;
}

PlyEncoding encoding_from_name(const std::string& name) {
  return name == "ascii" ? PlyEncoding::kAscii : PlyEncoding::kBinaryLittleEndian;
}

PointCloud cloud_of_points(const Reconstruction& rec) {
  PointCloud cloud;
  cloud.positions.reserve(rec.points.size());
  for (const Point3D& p : rec.points) {
    cloud.positions.push_back(p.position);
    cloud.colors.push_back(p.color);
  }
  return cloud;
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const RepresentabilityError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

// Depth files are matched to views by stem: "img.jpg.geometric.bin" loses
// its extension and the Colmap .geometric/.photometric suffix, then must
// equal the view's file name or its stem.
std::string depth_stem(const fs::path& depth_file) {
  fs::path stripped = depth_file.stem();  // drops .bin / .pfm
  const std::string ext = stripped.extension().string();
  if (ext == ".geometric" || ext == ".photometric") stripped = stripped.stem();
  return stripped.string();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photogrammetry reconstruction converter and inspector"};
  app.require_subcommand(1);

  // info
  LoadFlags info_flags;
  bool info_json = false;
  CLI::App* info = app.add_subcommand("info", "print scene statistics");
  add_load_flags(info, info_flags);
  info->add_flag("--json", info_json, "machine-readable output");

  // convert
  LoadFlags convert_flags;
  std::string convert_output, convert_to, convert_ply_encoding = "binary";
  CLI::App* convert =
      app.add_subcommand("convert", "convert a reconstruction to another format");
  add_load_flags(convert, convert_flags);
  convert->add_option("output", convert_output, "output file (or directory for colmap-txt)")
      ->required();
  convert->add_option("--to", convert_to, "target format")
      ->required()
      ->check(CLI::IsMember({"scene-json", "colmap-txt", "nvm", "ply"}));
  convert->add_option("--ply-encoding", convert_ply_encoding, "PLY payload encoding")
      ->check(CLI::IsMember({"binary", "ascii"}));

  // animate
  LoadFlags animate_flags;
  std::string animate_out, animate_format = "auto";
  int animate_step = 1;
  double animate_fps = 24.0;
  int animate_samples_per_interval = 0;
  CLI::App* animate = app.add_subcommand(
      "animate", "interpolate the registered cameras into an animated trajectory");
  add_load_flags(animate, animate_flags, "--input-format");
  animate->add_option("--out", animate_out, "trajectory output path")->required();
  animate->add_option("--step", animate_step, "frame step for name-ordered fallback")
      ->check(CLI::PositiveNumber);
  animate->add_option("--fps", animate_fps, "frames per second metadata")
      ->check(CLI::PositiveNumber);
  animate->add_option("--samples-per-interval", animate_samples_per_interval,
                      "sample each keyframe interval this many times instead of "
                      "every integer frame")
      ->check(CLI::PositiveNumber);
  animate->add_option("--format", animate_format, "trajectory file format")
      ->check(CLI::IsMember({"json", "csv", "auto"}));

  // unproject
  LoadFlags unproject_flags;
  std::string depth_dir, color_dir, unproject_out = "cloud.ply";
  std::string unproject_ply_encoding = "binary";
  int stride = 1;
  double min_depth = 0.0, max_depth = 0.0;
  bool has_min = false, has_max = false;
  CLI::App* unproject = app.add_subcommand(
      "unproject",
      "triangulate per-view depth maps into a fused world-space point cloud "
      "(depth maps are assumed to live on undistorted images)");
  add_load_flags(unproject, unproject_flags, "--input-format");
  unproject->add_option("--depth-dir", depth_dir, "directory of .bin / .pfm depth maps")
      ->required();
  unproject->add_option("--stride", stride, "sample every n-th pixel")
      ->check(CLI::PositiveNumber);
  unproject->add_option("--min-depth", min_depth, "discard samples below")
      ->each([&has_min](const std::string&) { has_min = true; });
  unproject->add_option("--max-depth", max_depth, "discard samples above")
      ->each([&has_max](const std::string&) { has_max = true; });
  unproject->add_option("--color-dir", color_dir, "directory of PPM color images");
  unproject->add_option("--out", unproject_out, "output PLY path");
  unproject->add_option("--ply-encoding", unproject_ply_encoding, "PLY payload encoding")
      ->check(CLI::IsMember({"binary", "ascii"}));

  // validate
  LoadFlags validate_flags;
  bool validate_json = false, no_distortion = false;
  CLI::App* validate = app.add_subcommand(
      "validate", "check referential integrity and reprojection consistency");
  add_load_flags(validate, validate_flags);
  validate->add_flag("--json", validate_json, "machine-readable report");
  validate->add_flag("--no-distortion", no_distortion,
                     "project without distortion (isolates convention errors)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (info->parsed()) {
    return run_guarded(err, [&] {
      const ParsedReconstruction parsed = load_from_flags(info_flags, err);
      const SceneStats stats = compute_stats(parsed.reconstruction);
      if (info_json) {
        out << stats_to_json(stats) << '\n';
      } else {
        out << "format                " << parsed.reconstruction.source.format << '\n';
        print_stats(stats, out);
      }
      return 0;
    });
  }

  if (convert->parsed()) {
    return run_guarded(err, [&] {
      const ParsedReconstruction parsed = load_from_flags(convert_flags, err);
      const Reconstruction& rec = parsed.reconstruction;
      ParseDiagnostics notes;
      if (convert_to == "scene-json") {
        write_scene_json_file(rec, convert_output);
      } else if (convert_to == "colmap-txt") {
        write_colmap_text(rec, convert_output, &notes);
      } else if (convert_to == "nvm") {
        write_nvm_file(rec, convert_output, &notes);
      } else {
        write_ply_file(cloud_of_points(rec), convert_output,
                       encoding_from_name(convert_ply_encoding));
        if (!rec.cameras.empty())
          notes.warn("ply", "cameras and observations dropped; PLY keeps points only");
      }
      for (const Warning& w : notes.warnings)
        err << "lossy [" << w.location << "]: " << w.message << '\n';
      return 0;
    });
  }

  if (animate->parsed()) {
    return run_guarded(err, [&] {
      const ParsedReconstruction parsed = load_from_flags(animate_flags, err);
      const Trajectory trajectory =
          build_trajectory(parsed.reconstruction, animate_step, InterpolationMode::kLinear);
      const std::vector<double> frames =
          animate_samples_per_interval > 0
              ? interval_frame_samples(trajectory, animate_samples_per_interval)
              : integer_frame_range(trajectory);
      const SampledTrajectory sampled = sample_at_frames(trajectory, frames, animate_fps);

      TrajectoryFormat format = TrajectoryFormat::kJson;
      if (animate_format == "csv" ||
          (animate_format == "auto" && fs::path(animate_out).extension() == ".csv"))
        format = TrajectoryFormat::kCsv;
      write_trajectory_file(sampled, animate_out, format);
      err << "wrote " << sampled.samples.size() << " samples over "
          << trajectory.keyframes().size() << " keyframes to " << animate_out << '\n';
      return 0;
    });
  }

  if (unproject->parsed()) {
    return run_guarded(err, [&] {
      const ParsedReconstruction parsed = load_from_flags(unproject_flags, err);
      const Reconstruction& rec = parsed.reconstruction;

      // View lookup by file name and by stem.
      std::map<std::string, std::int64_t> by_name;
      for (const auto& [id, view] : rec.cameras) {
        const fs::path name = fs::path(view.image_name).filename();
        by_name.emplace(name.string(), id);
        by_name.emplace(name.stem().string(), id);
      }

      std::vector<fs::path> depth_files;
      for (const auto& entry : fs::directory_iterator(depth_dir)) {
        const std::string ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".bin" || ext == ".pfm"))
          depth_files.push_back(entry.path());
      }
      std::sort(depth_files.begin(), depth_files.end());

      UnprojectOptions options;
      options.stride = stride;
      if (has_min) options.min_depth = min_depth;
      if (has_max) options.max_depth = max_depth;

      std::vector<std::pair<std::int64_t, PointCloud>> clouds;
      std::size_t matched = 0, failed = 0;
      for (const fs::path& file : depth_files) {
        const std::string stem = depth_stem(file);
        const auto it = by_name.count(stem) ? by_name.find(stem)
                                            : by_name.find(fs::path(stem).stem().string());
        if (it == by_name.end()) {
          err << "warning: no view matches depth file stem '" << stem << "'\n";
          continue;
        }
        ++matched;
        try {
          const DepthMap map = file.extension() == ".pfm" ? read_pfm_file(file)
                                                          : read_colmap_depth_file(file);
          ImageU8 color;
          if (!color_dir.empty()) {
            const fs::path candidates[] = {
                fs::path(color_dir) / (stem + ".ppm"),
                fs::path(color_dir) / (fs::path(stem).stem().string() + ".ppm"),
            };
            for (const fs::path& candidate : candidates)
              if (fs::exists(candidate)) {
                color = read_pnm_file(candidate);
                break;
              }
          }
          if (color.width > 0) options.color_image = &color;
          const CameraView& view = rec.cameras.at(it->second);
          PointCloud cloud = unproject_depth_map(
              map, view, rec.intrinsics_pool.at(view.intrinsics_id), options);
          options.color_image = nullptr;
          err << view.image_name << ": " << cloud.positions.size() << " points\n";
          clouds.push_back({it->second, std::move(cloud)});
        } catch (const Error& e) {
          err << "warning: " << file.filename().string() << ": " << e.what() << '\n';
          ++failed;
        }
      }
      if (matched == 0)
        throw RepresentabilityError("no depth files match any registered view");
      if (failed == matched)
        throw RepresentabilityError("every matched depth map failed to unproject");

      const PointCloud fused = fuse_depth_clouds(std::move(clouds));
      write_ply_file(fused, unproject_out, encoding_from_name(unproject_ply_encoding));
      err << "wrote " << fused.positions.size() << " points to " << unproject_out << '\n';
      return 0;
    });
  }

  if (validate->parsed()) {
    return run_guarded(err, [&] {
      const ParsedReconstruction parsed = load_from_flags(validate_flags, err);
      const std::vector<Violation> violations = validate_references(parsed.reconstruction);
      const ReprojectionReport report =
          reprojection_report(parsed.reconstruction, !no_distortion);
      if (validate_json) {
        out << validation_to_json(violations, report) << '\n';
      } else {
        if (violations.empty()) {
          out << "references             ok\n";
        } else {
          for (const Violation& v : violations)
            out << "violation [" << violation_kind_name(v.kind) << "] " << v.message
                << '\n';
        }
        print_reprojection(report, out);
      }
      return violations.empty() ? 0 : 4;
    });
  }

  return 1;
}

}  // namespace sfmio::cli
