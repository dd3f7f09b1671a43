#include "sfmio/writers/scene_json.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "sfmio/error.hpp"

namespace sfmio {

namespace {

using nlohmann::json;

json vec3_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }
json quat_json(Quat q) { return json::array({q.w, q.x, q.y, q.z}); }

Vec3 vec3_from(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(std::string("scene json: ") + where + " must hold 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void write_scene_json(const Reconstruction& rec, std::ostream& out) {
  json doc;
  doc["format_version"] = "1.0";
  doc["convention"] = "cv-w2c";
  if (!rec.source.format.empty() || !rec.source.root_path.empty()) {
    doc["source"] = {{"format", rec.source.format}, {"root_path", rec.source.root_path}};
  }

  json cameras = json::array();
  for (const auto& [id, view] : rec.cameras) {
    const CameraIntrinsics& intr = rec.intrinsics_pool.at(view.intrinsics_id);
    json cam;
    cam["id"] = id;
    cam["image"] = view.image_name;
    cam["intrinsics_id"] = view.intrinsics_id;
    cam["width"] = intr.width;
    cam["height"] = intr.height;
    cam["model"] = std::string(camera_model_name(intr.model));
    cam["params"] = camera_params(intr);
    cam["q"] = quat_json(view.pose.q);  // canonical sign, w >= 0
    cam["t"] = vec3_json(view.pose.t);
    cameras.push_back(std::move(cam));
  }
  doc["cameras"] = std::move(cameras);

  json points = json::array();
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    const Point3D& p = rec.points[i];
    json entry;
    entry["p"] = vec3_json(p.position);
    entry["c"] = json::array({p.color[0], p.color[1], p.color[2]});
    if (p.error) entry["e"] = *p.error;
    if (!p.track.empty()) {
      json track = json::array();
      for (const TrackElement& el : p.track)
        track.push_back(json::array({el.camera_id, el.feature_index}));
      entry["track"] = std::move(track);
    }
    const auto sid = rec.source.point_ids.find(static_cast<std::int64_t>(i));
    if (sid != rec.source.point_ids.end()) entry["source_id"] = sid->second;
    points.push_back(std::move(entry));
  }
  doc["points"] = std::move(points);

  if (!rec.observations.empty()) {
    json observations = json::array();
    for (const Observation& obs : rec.observations) {
      observations.push_back({{"camera", obs.camera_id},
                              {"point", obs.point_index},
                              {"uv", json::array({obs.uv.x, obs.uv.y})}});
    }
    doc["observations"] = std::move(observations);
  }

  out << doc.dump(1) << '\n';
}

void write_scene_json_file(const Reconstruction& rec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_scene_json(rec, out);
  if (!out) throw IoError("failed writing " + path.string());
}

Reconstruction parse_scene_json(std::istream& in) {
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ParseError("scene json: malformed document");
  if (!doc.is_object() || !doc.contains("format_version"))
    throw ParseError("scene json: missing format_version");
  if (doc["format_version"].get<std::string>() != "1.0")
    throw ParseError("scene json: unsupported format_version '" +
                     doc["format_version"].get<std::string>() + "'");
  if (!doc.contains("convention") || doc["convention"].get<std::string>() != "cv-w2c")
    throw ParseError("scene json: convention tag must be 'cv-w2c'");

  Reconstruction rec;
  rec.source.format = "scene-json";
  if (doc.contains("source")) {
    const json& src = doc["source"];
    if (src.contains("format")) rec.source.format = src["format"].get<std::string>();
    if (src.contains("root_path")) rec.source.root_path = src["root_path"].get<std::string>();
  }

  for (const json& cam : doc.value("cameras", json::array())) {
    CameraView view;
    view.id = cam.at("id").get<std::int64_t>();
    view.image_name = cam.at("image").get<std::string>();
    view.intrinsics_id = cam.contains("intrinsics_id")
                             ? cam["intrinsics_id"].get<std::int64_t>()
                             : view.id;
    const auto model = camera_model_from_name(cam.at("model").get<std::string>());
    if (!model)
      throw ParseError("scene json: unknown camera model '" +
                       cam.at("model").get<std::string>() + "'");
    const auto params = cam.at("params").get<std::vector<double>>();
    rec.intrinsics_pool[view.intrinsics_id] =
        intrinsics_from_params(*model, cam.at("width").get<int>(),
                               cam.at("height").get<int>(), params);
    const json& qj = cam.at("q");
    if (!qj.is_array() || qj.size() != 4)
      throw ParseError("scene json: q must hold [w, x, y, z]");
    // The document stores canonical unit quaternions already; renormalizing
    // here would perturb the last ulp and break exact round trips.
    const Quat q{qj[0].get<double>(), qj[1].get<double>(), qj[2].get<double>(),
                 qj[3].get<double>()};
    if (std::abs(norm(q) - 1.0) > 1e-6)
      throw ParseError("scene json: non-unit quaternion");
    view.pose = {canonical_sign(q), vec3_from(cam.at("t"), "t")};
    rec.cameras[view.id] = std::move(view);
  }

  for (const json& entry : doc.value("points", json::array())) {
    Point3D point;
    point.position = vec3_from(entry.at("p"), "p");
    const json& c = entry.at("c");
    if (!c.is_array() || c.size() != 3)
      throw ParseError("scene json: c must hold [r, g, b]");
    for (int i = 0; i < 3; ++i) {
      const auto channel = c[i].get<std::int64_t>();
      if (channel < 0 || channel > 255)
        throw ParseError("scene json: color channel outside [0, 255]");
      point.color[i] = static_cast<std::uint8_t>(channel);
    }
    if (entry.contains("e")) point.error = entry["e"].get<double>();
    if (entry.contains("track"))
      for (const json& el : entry["track"])
        point.track.push_back({el.at(0).get<std::int64_t>(), el.at(1).get<std::int64_t>()});
    if (entry.contains("source_id"))
      rec.source.point_ids[static_cast<std::int64_t>(rec.points.size())] =
          entry["source_id"].get<std::int64_t>();
    rec.points.push_back(std::move(point));
  }

  for (const json& obs : doc.value("observations", json::array())) {
    const json& uv = obs.at("uv");
    if (!uv.is_array() || uv.size() != 2)
      throw ParseError("scene json: uv must hold [u, v]");
    rec.observations.push_back({obs.at("camera").get<std::int64_t>(),
                                obs.at("point").get<std::int64_t>(),
                                {uv[0].get<double>(), uv[1].get<double>()}});
  }
  return rec;
}

Reconstruction parse_scene_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_scene_json(in);
}

}  // namespace sfmio
