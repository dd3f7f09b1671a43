#include "sfmio/writers/scene_json.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sfmio/error.hpp"
#include "support/test_support.hpp"

namespace sfmio {
namespace {

TEST(SceneJson, EmptySceneHasVersionAndEmptyArrays) {
  std::stringstream stream;
  write_scene_json(Reconstruction{}, stream);
  const std::string text = stream.str();
  EXPECT_NE(text.find("\"format_version\": \"1.0\""), std::string::npos);
  EXPECT_NE(text.find("\"cv-w2c\""), std::string::npos);
  const Reconstruction back = parse_scene_json(stream);
  EXPECT_TRUE(back.cameras.empty());
  EXPECT_TRUE(back.points.empty());
}

TEST(SceneJson, RandomScenesRoundTripBitExactly) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    const Reconstruction rec = testing::random_scene(rng);
    std::stringstream stream;
    write_scene_json(rec, stream);
    const Reconstruction back = parse_scene_json(stream);
    EXPECT_TRUE(testing::exactly_equal(rec, back));
    EXPECT_EQ(back.source.format, rec.source.format);
  }
}

TEST(SceneJson, WriterIsDeterministic) {
  std::mt19937_64 rng(62);
  const Reconstruction rec = testing::random_scene(rng);
  std::ostringstream a, b;
  write_scene_json(rec, a);
  write_scene_json(rec, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(SceneJson, QuaternionSignStaysCanonical) {
  std::mt19937_64 rng(63);
  const Reconstruction rec = testing::random_scene(rng);
  std::stringstream stream;
  write_scene_json(rec, stream);
  const Reconstruction back = parse_scene_json(stream);
  for (const auto& [id, view] : back.cameras) EXPECT_GE(view.pose.q.w, 0.0);
}

TEST(SceneJson, RejectsUnknownVersion) {
  std::istringstream in(R"({"format_version": "2.0", "convention": "cv-w2c"})");
  EXPECT_THROW(parse_scene_json(in), ParseError);
}

TEST(SceneJson, RejectsForeignConvention) {
  std::istringstream in(R"({"format_version": "1.0", "convention": "gl-c2w"})");
  EXPECT_THROW(parse_scene_json(in), ParseError);
}

TEST(SceneJson, RejectsMalformedDocument) {
  std::istringstream in("{broken");
  EXPECT_THROW(parse_scene_json(in), ParseError);
}

TEST(SceneJson, TrackAndErrorSurvive) {
  Reconstruction rec;
  CameraIntrinsics intr;
  intr.model = CameraModel::kSimplePinhole;
  intr.width = intr.height = 10;
  intr.fx = intr.fy = 5;
  intr.cx = intr.cy = 5;
  rec.intrinsics_pool[2] = intr;
  CameraView view;
  view.id = 4;
  view.intrinsics_id = 2;
  view.image_name = "x.png";
  view.pose = make_pose({0.5, 0.5, 0.5, 0.5}, {1, 2, 3});
  rec.cameras[4] = view;
  Point3D point;
  point.position = {0.25, 0.5, 0.75};
  point.color = {9, 8, 7};
  point.error = 0.125;
  point.track = {{4, 17}};
  rec.points.push_back(point);
  rec.source.point_ids[0] = 991;
  rec.observations.push_back({4, 0, {3.5, 4.5}});

  std::stringstream stream;
  write_scene_json(rec, stream);
  const Reconstruction back = parse_scene_json(stream);
  ASSERT_EQ(back.points.size(), 1u);
  EXPECT_EQ(back.points[0].error, 0.125);
  ASSERT_EQ(back.points[0].track.size(), 1u);
  EXPECT_EQ(back.points[0].track[0].feature_index, 17);
  EXPECT_EQ(back.source.point_ids.at(0), 991);
  EXPECT_TRUE(testing::exactly_equal(rec, back));
}

}  // namespace
}  // namespace sfmio
