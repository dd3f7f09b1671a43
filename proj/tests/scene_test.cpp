#include "sfmio/scene.hpp"

#include <gtest/gtest.h>

#include "sfmio/error.hpp"
#include "support/test_support.hpp"

namespace sfmio {
namespace {

Reconstruction one_camera_scene() {
  Reconstruction rec;
  CameraIntrinsics intr;
  intr.model = CameraModel::kSimplePinhole;
  intr.width = intr.height = 2;
  intr.fx = intr.fy = 1.0;
  intr.cx = intr.cy = 1.0;
  rec.intrinsics_pool[1] = intr;
  CameraView view;
  view.id = 1;
  view.image_name = "a.png";
  view.intrinsics_id = 1;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  rec.cameras[1] = view;
  return rec;
}

TEST(CameraModels, TableIsConsistent) {
  for (int id = 0; id < 5; ++id) {
    const auto model = camera_model_from_id(id);
    ASSERT_TRUE(model);
    EXPECT_EQ(camera_model_id(*model), id);
    EXPECT_EQ(camera_model_from_name(camera_model_name(*model)), *model);
  }
  EXPECT_FALSE(camera_model_from_id(5));
  EXPECT_FALSE(camera_model_from_name("FISHEYE"));
  EXPECT_EQ(distortion_size(CameraModel::kOpenCV), 4);
  EXPECT_EQ(camera_param_count(CameraModel::kRadial), 5);
}

TEST(CameraParams, RoundTrip) {
  CameraIntrinsics intr;
  intr.model = CameraModel::kOpenCV;
  intr.width = 640;
  intr.height = 480;
  intr.fx = 500;
  intr.fy = 510;
  intr.cx = 320;
  intr.cy = 240;
  intr.distortion = {0.1, -0.05, 0.001, -0.002};
  const auto params = camera_params(intr);
  ASSERT_EQ(params.size(), 8u);
  const CameraIntrinsics back = intrinsics_from_params(intr.model, 640, 480, params);
  EXPECT_EQ(back.fx, intr.fx);
  EXPECT_EQ(back.fy, intr.fy);
  EXPECT_EQ(back.distortion, intr.distortion);
}

TEST(CameraParams, SingleFocalModelRejectsAnisotropy) {
  CameraIntrinsics intr;
  intr.model = CameraModel::kSimpleRadial;
  intr.fx = 1.0;
  intr.fy = 1.5;
  intr.distortion = {0.0};
  EXPECT_THROW(camera_params(intr), RepresentabilityError);
}

TEST(MakePose, NormalizesAndCanonicalizes) {
  const CameraPose pose = make_pose({-2, 0, 0, 0}, {1, 2, 3});
  EXPECT_DOUBLE_EQ(pose.q.w, 1.0);
  EXPECT_DOUBLE_EQ(pose.t.y, 2.0);
}

TEST(ValidateReferences, EmptyReconstructionIsValid) {
  EXPECT_TRUE(validate_references(Reconstruction{}).empty());
}

TEST(ValidateReferences, DanglingIntrinsics) {
  Reconstruction rec = one_camera_scene();
  rec.cameras[1].intrinsics_id = 7;
  const auto report = validate_references(rec);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::kDanglingIntrinsics);
}

TEST(ValidateReferences, NonUnitQuaternion) {
  Reconstruction rec = one_camera_scene();
  rec.cameras[1].pose.q = {2, 0, 0, 0};  // norm 2
  const auto report = validate_references(rec);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::kNonUnitQuaternion);
}

TEST(ValidateReferences, DanglingObservationAndPointIndex) {
  Reconstruction rec = one_camera_scene();
  rec.points.push_back({});
  rec.observations.push_back({9, 0, {0, 0}});   // unknown camera
  rec.observations.push_back({1, 5, {0, 0}});   // point index out of range
  rec.observations.push_back({1, -1, {0, 0}});  // negative index
  const auto report = validate_references(rec);
  std::size_t dangling = 0, out_of_range = 0;
  for (const Violation& v : report) {
    dangling += v.kind == ViolationKind::kDanglingObservationCamera;
    out_of_range += v.kind == ViolationKind::kPointIndexOutOfRange;
  }
  EXPECT_EQ(dangling, 1u);
  EXPECT_EQ(out_of_range, 2u);
}

TEST(ValidateReferences, NonPositiveFocal) {
  Reconstruction rec = one_camera_scene();
  rec.intrinsics_pool[1].fx = 0.0;
  const auto report = validate_references(rec);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::kNonPositiveFocal);
}

TEST(ApproxEqual, DetectsPoseDifferences) {
  std::mt19937_64 rng(21);
  Reconstruction a = testing::random_scene(rng);
  Reconstruction b = a;
  EXPECT_TRUE(approx_equal(a, b, 0.0));
  if (!b.cameras.empty()) {
    b.cameras.begin()->second.pose.t.x += 1e-6;
    EXPECT_FALSE(approx_equal(a, b, 1e-9));
    EXPECT_TRUE(approx_equal(a, b, 1e-3));
  }
}

TEST(ApproxEqual, ObservationsCompareOrderInsensitively) {
  Reconstruction a = one_camera_scene();
  a.points.resize(2);
  a.observations = {{1, 0, {1, 2}}, {1, 1, {3, 4}}};
  Reconstruction b = a;
  std::swap(b.observations[0], b.observations[1]);
  EXPECT_TRUE(approx_equal(a, b, 0.0));
}

TEST(RandomScenes, AlwaysPassValidation) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 25; ++i) {
    const Reconstruction rec = testing::random_scene(rng);
    EXPECT_TRUE(validate_references(rec).empty());
  }
}

}  // namespace
}  // namespace sfmio
