#include "sfmio/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sfmio/error.hpp"
#include "support/test_support.hpp"

namespace sfmio {
namespace {

using testing::random_pose;

CameraIntrinsics simple_pinhole(double f, double cx, double cy, int w = 0, int h = 0) {
  CameraIntrinsics intr;
  intr.model = CameraModel::kSimplePinhole;
  intr.width = w;
  intr.height = h;
  intr.fx = intr.fy = f;
  intr.cx = cx;
  intr.cy = cy;
  return intr;
}

TEST(CameraCenter, IdentityPose) {
  const Vec3 c = camera_center(make_pose({1, 0, 0, 0}, {0, 0, 0}));
  EXPECT_EQ(c.x, 0.0);
  EXPECT_EQ(c.y, 0.0);
  EXPECT_EQ(c.z, 0.0);
}

TEST(CameraCenter, HalfTurnAboutX) {
  // C = -R^T t with R = diag(1, -1, -1): -diag(1,-1,-1) * (0,0,1) = (0,0,1).
  const Vec3 c = camera_center(make_pose({0, 1, 0, 0}, {0, 0, 1}));
  EXPECT_NEAR(c.x, 0.0, 1e-15);
  EXPECT_NEAR(c.y, 0.0, 1e-15);
  EXPECT_NEAR(c.z, 1.0, 1e-15);
}

TEST(CameraCenter, AlgebraicIdentity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const CameraPose pose = random_pose(rng);
    // R * C + t = 0.
    const Vec3 zero = quat_to_matrix(pose.q) * camera_center(pose) + pose.t;
    EXPECT_LT(norm(zero), 1e-12);
  }
}

TEST(GraphicsTransform, IdentityPoseGivesAxisFlip) {
  const GraphicsCameraTransform m = w2c_to_c2w_graphics(make_pose({1, 0, 0, 0}, {0, 0, 0}));
  const Mat3 r = m.matrix.rotation_block();
  EXPECT_DOUBLE_EQ(r(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(r(1, 1), -1.0);
  EXPECT_DOUBLE_EQ(r(2, 2), -1.0);
  EXPECT_EQ(norm(m.matrix.translation_block()), 0.0);
}

TEST(GraphicsTransform, ForwardAxisIsNegativeLocalZ) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const CameraPose pose = random_pose(rng);
    const Mat3 r = quat_to_matrix(pose.q);
    const Vec3 forward = transposed(r) * Vec3{0, 0, 1};
    const Mat3 block = w2c_to_c2w_graphics(pose).matrix.rotation_block();
    // Third column of the graphics block is -forward.
    EXPECT_NEAR(block(0, 2), -forward.x, 1e-12);
    EXPECT_NEAR(block(1, 2), -forward.y, 1e-12);
    EXPECT_NEAR(block(2, 2), -forward.z, 1e-12);
  }
}

TEST(GraphicsTransform, InvolutionOverRandomPoses) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const CameraPose pose = random_pose(rng);
    const CameraPose back = graphics_to_w2c(w2c_to_c2w_graphics(pose));
    EXPECT_NEAR(back.q.w, pose.q.w, 1e-12);
    EXPECT_NEAR(back.q.x, pose.q.x, 1e-12);
    EXPECT_NEAR(back.q.y, pose.q.y, 1e-12);
    EXPECT_NEAR(back.q.z, pose.q.z, 1e-12);
    EXPECT_NEAR(back.t.x, pose.t.x, 1e-12);
    EXPECT_NEAR(back.t.y, pose.t.y, 1e-12);
    EXPECT_NEAR(back.t.z, pose.t.z, 1e-12);
  }
}

TEST(GraphicsTransform, AxisFlipBlockIsIdentityPose) {
  GraphicsCameraTransform m;
  m.matrix = make_rigid_transform(Mat3::axis_flip(), {0, 0, 0});
  const CameraPose pose = graphics_to_w2c(m);
  EXPECT_DOUBLE_EQ(pose.q.w, 1.0);
  EXPECT_EQ(norm(pose.t), 0.0);
}

TEST(GraphicsTransform, RejectsMirroredBlock) {
  GraphicsCameraTransform m;
  m.matrix = make_rigid_transform(Mat3{{1, 0, 0, 0, 1, 0, 0, 0, -1}}, {0, 0, 0});
  EXPECT_THROW(graphics_to_w2c(m), GeometryError);
}

TEST(Distortion, SimpleRadialZeroCoefficient) {
  const double coeffs[] = {0.0};
  const Vec2 p = apply_distortion(CameraModel::kSimpleRadial, coeffs, {0.7, -0.3});
  EXPECT_DOUBLE_EQ(p.x, 0.7);
  EXPECT_DOUBLE_EQ(p.y, -0.3);
}

TEST(Distortion, SimpleRadialUnitRadius) {
  const double coeffs[] = {0.1};
  const Vec2 p = apply_distortion(CameraModel::kSimpleRadial, coeffs, {1.0, 0.0});
  EXPECT_NEAR(p.x, 1.1, 1e-15);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
}

TEST(Distortion, OpenCvZeroCoefficientsIsIdentity) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double coeffs[] = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 50; ++i) {
    const Vec2 p{unit(rng), unit(rng)};
    const Vec2 d = apply_distortion(CameraModel::kOpenCV, coeffs, p);
    EXPECT_DOUBLE_EQ(d.x, p.x);
    EXPECT_DOUBLE_EQ(d.y, p.y);
  }
}

TEST(Distortion, CoefficientCountMismatch) {
  const double coeffs[] = {0.1, 0.2};
  EXPECT_THROW(apply_distortion(CameraModel::kSimpleRadial, coeffs, {0, 0}), GeometryError);
}

TEST(Project, OnAxisPointHitsPrincipalPoint) {
  const auto uv = project(simple_pinhole(2, 3, 4), make_pose({1, 0, 0, 0}, {0, 0, 0}),
                          {0, 0, 5});
  ASSERT_TRUE(uv);
  EXPECT_DOUBLE_EQ(uv->x, 3.0);
  EXPECT_DOUBLE_EQ(uv->y, 4.0);
}

TEST(Project, UnitOffsetPoint) {
  const auto uv = project(simple_pinhole(2, 3, 4), make_pose({1, 0, 0, 0}, {0, 0, 0}),
                          {1, 0, 1});
  ASSERT_TRUE(uv);
  EXPECT_DOUBLE_EQ(uv->x, 5.0);
  EXPECT_DOUBLE_EQ(uv->y, 4.0);
}

TEST(Project, BehindCamera) {
  const auto uv = project(simple_pinhole(2, 3, 4), make_pose({1, 0, 0, 0}, {0, 0, 0}),
                          {0, 0, -1});
  EXPECT_FALSE(uv);
}

TEST(UnprojectPixel, PrincipalRay) {
  const Vec3 p = unproject_pixel(simple_pinhole(2, 3, 4), {3, 4}, 2.0);
  EXPECT_DOUBLE_EQ(p.x, 0.0);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
  EXPECT_DOUBLE_EQ(p.z, 2.0);
}

TEST(UnprojectPixel, ProjectRoundTrip) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> pixel(0.0, 100.0);
  std::uniform_real_distribution<double> depth(0.1, 50.0);
  const CameraIntrinsics intr = simple_pinhole(37.5, 48.25, 51.5, 100, 100);
  const CameraPose identity = make_pose({1, 0, 0, 0}, {0, 0, 0});
  for (int i = 0; i < 200; ++i) {
    const Vec2 uv{pixel(rng), pixel(rng)};
    const Vec3 cam = unproject_pixel(intr, uv, depth(rng));
    const auto back = project(intr, identity, cam);
    ASSERT_TRUE(back);
    EXPECT_NEAR(back->x, uv.x, 1e-9);
    EXPECT_NEAR(back->y, uv.y, 1e-9);
  }
}

TEST(UnprojectPixel, RejectsBadDepth) {
  const CameraIntrinsics intr = simple_pinhole(1, 0, 0);
  EXPECT_THROW(unproject_pixel(intr, {0, 0}, 0.0), GeometryError);
  EXPECT_THROW(unproject_pixel(intr, {0, 0}, -1.0), GeometryError);
  EXPECT_THROW(unproject_pixel(intr, {0, 0}, std::nan("")), GeometryError);
}

TEST(FovShift, NinetyDegrees) {
  CameraIntrinsics intr = simple_pinhole(2, 2, 2, 4, 4);
  EXPECT_NEAR(fov_and_shift(intr).fov_x, std::numbers::pi / 2.0, 1e-15);
}

TEST(FovShift, CenteredPrincipalPoint) {
  const CameraIntrinsics intr = simple_pinhole(5, 2, 1, 4, 2);
  const FovShift fs = fov_and_shift(intr);
  EXPECT_DOUBLE_EQ(fs.shift_x, 0.0);
  EXPECT_DOUBLE_EQ(fs.shift_y, 0.0);
}

TEST(FovShift, OffsetPrincipalPoint) {
  const CameraIntrinsics intr = simple_pinhole(5, 1, 1, 4, 2);
  EXPECT_DOUBLE_EQ(fov_and_shift(intr).shift_x, 0.25);
}

TEST(ImagePlaneCorners, UnitFrustum) {
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  const CameraIntrinsics intr = simple_pinhole(1, 1, 1, 2, 2);
  const auto corners = image_plane_corners(view, intr, 1.0);
  const Vec3 expected[4] = {{-1, -1, 1}, {1, -1, 1}, {1, 1, 1}, {-1, 1, 1}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(corners[i].x, expected[i].x);
    EXPECT_DOUBLE_EQ(corners[i].y, expected[i].y);
    EXPECT_DOUBLE_EQ(corners[i].z, expected[i].z);
  }
}

TEST(ImagePlaneCorners, CoplanarAtGivenDistance) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 50; ++i) {
    CameraView view;
    view.pose = random_pose(rng);
    const CameraIntrinsics intr = simple_pinhole(123.0, 60.5, 40.25, 128, 96);
    const double distance = 2.75;
    const auto corners = image_plane_corners(view, intr, distance);

    // Plane-fit oracle: the optical axis is the plane normal; every corner
    // must sit `distance` along it from the camera center.
    const Vec3 axis = transposed(quat_to_matrix(view.pose.q)) * Vec3{0, 0, 1};
    const Vec3 center = camera_center(view.pose);
    for (const Vec3& corner : corners)
      EXPECT_NEAR(dot(corner - center, axis), distance, 1e-12);
  }
}

TEST(ImagePlaneCorners, CentroidProjectsToImageCenter) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    CameraView view;
    view.pose = random_pose(rng);
    const CameraIntrinsics intr = simple_pinhole(77.0, 33.0, 21.0, 64, 48);
    const auto corners = image_plane_corners(view, intr, 3.5);
    const Vec3 centroid = 0.25 * (corners[0] + corners[1] + corners[2] + corners[3]);
    const auto uv = project(intr, view.pose, centroid);
    ASSERT_TRUE(uv);
    EXPECT_NEAR(uv->x, intr.width / 2.0, 1e-9);
    EXPECT_NEAR(uv->y, intr.height / 2.0, 1e-9);
  }
}

}  // namespace
}  // namespace sfmio
