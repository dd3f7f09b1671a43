#pragma once

#include <cstdint>
#include <string>

#include "test_support.hpp"

// Hand-encoded byte fixtures, shared by the unit tests and the acceptance
// suite. Each encodes the smallest file exercising the documented layout.

namespace sfmio::testing {

// cameras.bin: one SIMPLE_PINHOLE camera, id 1, 2x2, f = cx = cy = 1.
inline std::string colmap_cameras_bin_fixture() {
  return ByteBuilder()
      .le<std::uint64_t>(1)
      .le<std::int32_t>(1)   // camera_id
      .le<std::int32_t>(0)   // SIMPLE_PINHOLE
      .le<std::uint64_t>(2)  // width
      .le<std::uint64_t>(2)  // height
      .le<double>(1.0)
      .le<double>(1.0)
      .le<double>(1.0)
      .str();
}

// images.bin: one image, identity rotation, t = (0, 0, 1), one tracked and
// one untracked 2D point.
inline std::string colmap_images_bin_fixture() {
  return ByteBuilder()
      .le<std::uint64_t>(1)
      .le<std::int32_t>(7)  // image_id
      .le<double>(1.0)      // qw
      .le<double>(0.0)
      .le<double>(0.0)
      .le<double>(0.0)
      .le<double>(0.0)  // t
      .le<double>(0.0)
      .le<double>(1.0)
      .le<std::int32_t>(1)  // camera_id
      .cstr("a.png")
      .le<std::uint64_t>(2)
      .le<double>(1.25)  // tracked point
      .le<double>(0.75)
      .le<std::int64_t>(42)
      .le<double>(9.0)  // untracked point
      .le<double>(9.0)
      .le<std::int64_t>(-1)
      .str();
}

// points3D.bin: one red point, id 42, seen once from image 7.
inline std::string colmap_points_bin_fixture() {
  return ByteBuilder()
      .le<std::uint64_t>(1)
      .le<std::int64_t>(42)
      .le<double>(0.5)
      .le<double>(-0.5)
      .le<double>(4.0)
      .le<std::uint8_t>(255)
      .le<std::uint8_t>(0)
      .le<std::uint8_t>(0)
      .le<double>(0.25)      // stored reprojection error
      .le<std::uint64_t>(1)  // track length
      .le<std::int32_t>(7)
      .le<std::int32_t>(0)
      .str();
}

// NVM: one camera with q = identity and center (1, 2, 3), so the canonical
// translation is (-1, -2, -3); one green point measured once.
inline std::string nvm_fixture() {
  return "NVM_V3\n"
         "\n"
         "1\n"
         "img_0001.jpg 800 1 0 0 0 1 2 3 0.01 0\n"
         "\n"
         "1\n"
         "0.5 0.25 4 0 255 0 1 0 3 12.5 -7.25\n";
}

// Bundler: camera 0 registered with R = I, t = (0, 0, -1) (canonical pose
// q = (0, 1, 0, 0), t = (0, 0, 1)); camera 1 unregistered (f = 0). One point
// with one measurement in camera 0.
inline std::string bundler_fixture() {
  return "# Bundle file v0.3\n"
         "2 1\n"
         "800 0 0\n"
         "1 0 0\n"
         "0 1 0\n"
         "0 0 1\n"
         "0 0 -1\n"
         "0 0 0\n"
         "1 0 0\n"
         "0 1 0\n"
         "0 0 1\n"
         "0 0 0\n"
         "0.5 -0.25 -3\n"
         "10 20 30\n"
         "1 0 5 8.5 -6.25\n";
}

// MVE meta.ini: normalized focal 0.8 on a 2000x1000 image -> fx = fy = 1600,
// centered principal point -> (1000, 500). Identity world-to-camera rotation,
// translation (0.5, -0.25, 2).
inline std::string mve_meta_ini_fixture() {
  return "# MVE view meta data.\n"
         "[view]\n"
         "id = 3\n"
         "name = img_0003\n"
         "width = 2000\n"
         "height = 1000\n"
         "[camera]\n"
         "focal_length = 0.8\n"
         "principal_point = 0.5 0.5\n"
         "rotation = 1 0 0 0 1 0 0 0 1\n"
         "translation = 0.5 -0.25 2\n";
}

// Meshroom cameras.sfm: numerics as strings; pose stores the camera-to-world
// rotation (identity) and center (0, 1, 0) -> canonical t = (0, -1, 0);
// pxFocalLength "1200", principal point offsets (0, 0) on 100x80 -> (50, 40).
inline std::string meshroom_fixture() {
  return R"({
  "version": ["1", "0", "0"],
  "views": [
    {
      "viewId": "101",
      "poseId": "201",
      "intrinsicId": "301",
      "path": "shots/img_0001.jpg",
      "width": "100",
      "height": "80"
    },
    {
      "viewId": "102",
      "poseId": "999",
      "intrinsicId": "301",
      "path": "shots/img_0002.jpg",
      "width": "100",
      "height": "80"
    }
  ],
  "intrinsics": [
    {
      "intrinsicId": "301",
      "width": "100",
      "height": "80",
      "type": "pinhole",
      "pxFocalLength": "1200",
      "principalPoint": ["0", "0"]
    }
  ],
  "poses": [
    {
      "poseId": "201",
      "pose": {
        "transform": {
          "rotation": ["1", "0", "0", "0", "1", "0", "0", "0", "1"],
          "center": ["0", "1", "0"]
        },
        "locked": "1"
      }
    }
  ]
})";
}

// OpenMVG sfm_data.json with cereal wrappers: extrinsic R = I, C = (0, 0, -5)
// -> canonical t = (0, 0, 5). The second view has no extrinsic.
inline std::string openmvg_fixture() {
  return R"({
  "sfm_data_version": "0.3",
  "root_path": "/data/images",
  "views": [
    {
      "key": 0,
      "value": {
        "polymorphic_id": 1073741824,
        "ptr_wrapper": {
          "id": 2147483649,
          "data": {
            "local_path": "",
            "filename": "img_0001.jpg",
            "width": 640,
            "height": 480,
            "id_view": 0,
            "id_intrinsic": 0,
            "id_pose": 0
          }
        }
      }
    },
    {
      "key": 1,
      "value": {
        "polymorphic_id": 1073741824,
        "ptr_wrapper": {
          "id": 2147483650,
          "data": {
            "local_path": "",
            "filename": "img_0002.jpg",
            "width": 640,
            "height": 480,
            "id_view": 1,
            "id_intrinsic": 0,
            "id_pose": 1
          }
        }
      }
    }
  ],
  "intrinsics": [
    {
      "key": 0,
      "value": {
        "polymorphic_id": 2147483649,
        "polymorphic_name": "pinhole_radial_k3",
        "ptr_wrapper": {
          "id": 2147483660,
          "data": {
            "value0": {
              "width": 640,
              "height": 480,
              "focal_length": 500.0,
              "principal_point": [320.0, 240.0]
            },
            "disto_k3": [0.01, -0.002, 0.0005]
          }
        }
      }
    }
  ],
  "extrinsics": [
    {
      "key": 0,
      "value": {
        "rotation": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        "center": [0.0, 0.0, -5.0]
      }
    }
  ],
  "structure": [
    {
      "key": 0,
      "value": {
        "X": [0.5, -0.5, 1.0],
        "observations": [
          {"key": 0, "value": {"id_feat": 11, "x": [345.0, 210.0]}}
        ]
      }
    }
  ]
})";
}

// Colmap depth map: 2x1, one channel, depths (1.5, 2.5).
inline std::string colmap_depth_fixture() {
  return ByteBuilder().raw("2&1&1&").le<float>(1.5f).le<float>(2.5f).str();
}

// Grayscale little-endian PFM holding the single value 3.0.
inline std::string pfm_fixture() {
  return ByteBuilder().raw("Pf\n1 1\n-1.0\n").le<float>(3.0f).str();
}

// The same two-vertex colored cloud in all three PLY encodings.
inline std::string ply_ascii_fixture() {
  return "ply\n"
         "format ascii 1.0\n"
         "comment hand-written fixture\n"
         "element vertex 2\n"
         "property float x\n"
         "property float y\n"
         "property float z\n"
         "property uchar red\n"
         "property uchar green\n"
         "property uchar blue\n"
         "end_header\n"
         "0 0 0 255 0 0\n"
         "1.5 -2.25 0.5 0 128 255\n";
}

inline std::string ply_binary_fixture(bool big_endian) {
  ByteBuilder payload;
  const auto put = [&](float v) {
    if (big_endian)
      payload.be<float>(v);
    else
      payload.le<float>(v);
  };
  put(0.0f), put(0.0f), put(0.0f);
  payload.le<std::uint8_t>(255).le<std::uint8_t>(0).le<std::uint8_t>(0);
  put(1.5f), put(-2.25f), put(0.5f);
  payload.le<std::uint8_t>(0).le<std::uint8_t>(128).le<std::uint8_t>(255);

  std::string header = "ply\n";
  header += big_endian ? "format binary_big_endian 1.0\n" : "format binary_little_endian 1.0\n";
  header +=
      "element vertex 2\n"
      "property float x\n"
      "property float y\n"
      "property float z\n"
      "property uchar red\n"
      "property uchar green\n"
      "property uchar blue\n"
      "end_header\n";
  return header + payload.str();
}

}  // namespace sfmio::testing
