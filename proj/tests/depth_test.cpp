#include "sfmio/depth.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sfmio/error.hpp"
#include "sfmio/geometry.hpp"
#include "support/fixtures.hpp"
#include "support/test_support.hpp"

namespace sfmio {
namespace {

using testing::ByteBuilder;

CameraIntrinsics pinhole(double f, double cx, double cy, int w, int h) {
  CameraIntrinsics intr;
  intr.model = CameraModel::kSimplePinhole;
  intr.width = w;
  intr.height = h;
  intr.fx = intr.fy = f;
  intr.cx = cx;
  intr.cy = cy;
  return intr;
}

TEST(ColmapDepth, HandEncodedFixture) {
  std::istringstream in(testing::colmap_depth_fixture());
  const DepthMap map = read_colmap_depth(in);
  EXPECT_EQ(map.width, 2);
  EXPECT_EQ(map.height, 1);
  ASSERT_EQ(map.depths.size(), 2u);
  EXPECT_FLOAT_EQ(map.depths[0], 1.5f);
  EXPECT_FLOAT_EQ(map.depths[1], 2.5f);
}

TEST(ColmapDepth, RejectsMultiChannel) {
  const std::string bytes =
      ByteBuilder().raw("2&1&3&").le<float>(0).le<float>(0).le<float>(0).str();
  std::istringstream in(bytes);
  EXPECT_THROW(read_colmap_depth(in), ParseError);
}

TEST(ColmapDepth, TruncatedPayload) {
  const std::string bytes = ByteBuilder().raw("2&1&1&").le<float>(1.5f).str();
  std::istringstream in(bytes);
  EXPECT_THROW(read_colmap_depth(in), ParseError);
}

TEST(ColmapDepth, MalformedHeader) {
  std::istringstream in("2x1&1&");
  EXPECT_THROW(read_colmap_depth(in), ParseError);
}

TEST(Pfm, HandEncodedFixture) {
  std::istringstream in(testing::pfm_fixture());
  const DepthMap map = read_pfm(in);
  EXPECT_EQ(map.width, 1);
  EXPECT_EQ(map.height, 1);
  EXPECT_FLOAT_EQ(map.depths[0], 3.0f);
}

TEST(Pfm, ScaleMultipliesValues) {
  const std::string bytes = ByteBuilder().raw("Pf\n1 1\n-2.0\n").le<float>(3.0f).str();
  std::istringstream in(bytes);
  EXPECT_FLOAT_EQ(read_pfm(in).depths[0], 6.0f);
}

TEST(Pfm, BigEndianRowsFlipped) {
  // 1x2 map: bottom row 1.0 stored first, top row 2.0 second.
  const std::string bytes =
      ByteBuilder().raw("Pf\n1 2\n1.0\n").be<float>(1.0f).be<float>(2.0f).str();
  std::istringstream in(bytes);
  const DepthMap map = read_pfm(in);
  EXPECT_FLOAT_EQ(map.at(0, 0), 2.0f);  // top row
  EXPECT_FLOAT_EQ(map.at(0, 1), 1.0f);
}

TEST(Pfm, RejectsColorMaps) {
  std::istringstream in("PF\n1 1\n-1.0\nxxxx");
  EXPECT_THROW(read_pfm(in), ParseError);
}

TEST(Unproject, SinglePixelPrincipalRay) {
  DepthMap map;
  map.width = map.height = 1;
  map.depths = {2.0f};
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  const PointCloud cloud = unproject_depth_map(map, view, pinhole(1, 0.5, 0.5, 1, 1));
  ASSERT_EQ(cloud.positions.size(), 1u);
  EXPECT_DOUBLE_EQ(cloud.positions[0].x, 0.0);
  EXPECT_DOUBLE_EQ(cloud.positions[0].y, 0.0);
  EXPECT_DOUBLE_EQ(cloud.positions[0].z, 2.0);
  EXPECT_EQ(cloud.colors[0], (std::array<std::uint8_t, 3>{128, 128, 128}));
}

TEST(Unproject, ConstantDepthLandsOnFrontoParallelPlane) {
  DepthMap map;
  map.width = 8;
  map.height = 6;
  map.depths.assign(48, 3.0f);
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  const PointCloud cloud = unproject_depth_map(map, view, pinhole(10, 4, 3, 8, 6));
  ASSERT_EQ(cloud.positions.size(), 48u);
  for (const Vec3& p : cloud.positions) EXPECT_DOUBLE_EQ(p.z, 3.0);
}

TEST(Unproject, HolesAndRangeFilter) {
  DepthMap map;
  map.width = 2;
  map.height = 2;
  map.depths = {1.0f, -1.0f, std::numeric_limits<float>::quiet_NaN(), 9.0f};
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  UnprojectOptions options;
  options.max_depth = 5.0;
  const PointCloud cloud =
      unproject_depth_map(map, view, pinhole(1, 1, 1, 2, 2), options);
  // -1 and NaN are holes; 9.0 is out of range.
  EXPECT_EQ(cloud.positions.size(), 1u);
}

TEST(Unproject, SlantedPlaneOracle) {
  // Forward-render a known plane n.x = c in the camera frame, then check the
  // unprojector returns points on that plane that reproject to their pixels.
  const int w = 32, h = 24;
  const CameraIntrinsics intr = pinhole(40.0, 16.2, 11.7, w, h);
  const Vec3 plane_normal = (1.0 / norm(Vec3{0.2, -0.1, 1.0})) * Vec3{0.2, -0.1, 1.0};
  const double plane_offset = 2.5;

  DepthMap map;
  map.width = w;
  map.height = h;
  map.depths.resize(static_cast<std::size_t>(w) * h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const Vec3 ray{(i + 0.5 - intr.cx) / intr.fx, (j + 0.5 - intr.cy) / intr.fy, 1.0};
      map.depths[static_cast<std::size_t>(j) * w + i] =
          static_cast<float>(plane_offset / dot(plane_normal, ray));
    }
  }

  std::mt19937_64 rng(81);
  CameraView view;
  view.pose = testing::random_pose(rng);
  const PointCloud cloud = unproject_depth_map(map, view, intr);
  ASSERT_EQ(cloud.positions.size(), static_cast<std::size_t>(w) * h);

  // Plane transformed to world coordinates: n_w = R^T n_c, c_w = c - n_c . t.
  const Mat3 r = quat_to_matrix(view.pose.q);
  const Vec3 n_world = transposed(r) * plane_normal;
  const double c_world = plane_offset - dot(plane_normal, view.pose.t);

  std::size_t index = 0;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i, ++index) {
      const Vec3& p = cloud.positions[index];
      EXPECT_NEAR(dot(n_world, p), c_world, 1e-6);
      const auto uv = project(intr, view.pose, p);
      ASSERT_TRUE(uv);
      EXPECT_NEAR(uv->x, i + 0.5, 1e-9);
      EXPECT_NEAR(uv->y, j + 0.5, 1e-9);
    }
  }
}

TEST(Unproject, StrideSubsetOfFullResolution) {
  DepthMap map;
  map.width = 9;
  map.height = 7;
  map.depths.assign(63, 1.5f);
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  const CameraIntrinsics intr = pinhole(5, 4.5, 3.5, 9, 7);

  const PointCloud full = unproject_depth_map(map, view, intr);
  UnprojectOptions options;
  options.stride = 4;
  const PointCloud strided = unproject_depth_map(map, view, intr, options);
  // ceil(9/4) * ceil(7/4) = 3 * 2 = 6.
  ASSERT_EQ(strided.positions.size(), 6u);
  for (const Vec3& p : strided.positions) {
    bool found = false;
    for (const Vec3& q : full.positions)
      if (p.x == q.x && p.y == q.y && p.z == q.z) {
        found = true;
        break;
      }
    EXPECT_TRUE(found);
  }
}

TEST(Unproject, RescalesIntrinsicsForDownsizedMaps) {
  DepthMap map;
  map.width = 4;
  map.height = 3;
  map.depths.assign(12, 2.0f);
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  // Full-resolution camera is 8x6; the map is half size.
  const PointCloud cloud = unproject_depth_map(map, view, pinhole(10, 4, 3, 8, 6));
  ASSERT_EQ(cloud.positions.size(), 12u);
  // Sample (0, 0): pixel (0.5, 0.5) with scaled f = 5, c = (2, 1.5).
  EXPECT_NEAR(cloud.positions[0].x, (0.5 - 2.0) / 5.0 * 2.0, 1e-12);
}

TEST(Unproject, MismatchedAspectRatioFails) {
  DepthMap map;
  map.width = 4;
  map.height = 4;
  map.depths.assign(16, 1.0f);
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  EXPECT_THROW(unproject_depth_map(map, view, pinhole(10, 4, 3, 8, 6)), GeometryError);
}

TEST(Unproject, PerPixelColors) {
  DepthMap map;
  map.width = 2;
  map.height = 1;
  map.depths = {1.0f, 1.0f};
  ImageU8 image;
  image.width = 2;
  image.height = 1;
  image.channels = 3;
  image.pixels = {255, 0, 0, 0, 255, 0};
  CameraView view;
  view.pose = make_pose({1, 0, 0, 0}, {0, 0, 0});
  UnprojectOptions options;
  options.color_image = &image;
  const PointCloud cloud =
      unproject_depth_map(map, view, pinhole(1, 1, 0.5, 2, 1), options);
  ASSERT_EQ(cloud.colors.size(), 2u);
  EXPECT_EQ(cloud.colors[0], (std::array<std::uint8_t, 3>{255, 0, 0}));
  EXPECT_EQ(cloud.colors[1], (std::array<std::uint8_t, 3>{0, 255, 0}));
}

TEST(FuseClouds, AscendingViewIdOrder) {
  PointCloud a, b;
  a.positions = {{1, 0, 0}};
  a.colors = {{1, 1, 1}};
  b.positions = {{2, 0, 0}};
  b.colors = {{2, 2, 2}};
  const PointCloud fused = fuse_depth_clouds({{7, a}, {3, b}});
  ASSERT_EQ(fused.positions.size(), 2u);
  EXPECT_DOUBLE_EQ(fused.positions[0].x, 2.0);  // view 3 first
  EXPECT_DOUBLE_EQ(fused.positions[1].x, 1.0);
}

TEST(FuseClouds, EmptyInput) {
  EXPECT_TRUE(fuse_depth_clouds({}).positions.empty());
}

TEST(FuseClouds, DuplicatesKeptVerbatim) {
  PointCloud a;
  a.positions = {{1, 2, 3}};
  a.colors = {{9, 9, 9}};
  const PointCloud fused = fuse_depth_clouds({{1, a}, {1, a}});
  ASSERT_EQ(fused.positions.size(), 2u);
  EXPECT_DOUBLE_EQ(fused.positions[0].x, fused.positions[1].x);
}

}  // namespace
}  // namespace sfmio
