#pragma once

#include "meshref/geometry.hpp"
#include "meshref/image.hpp"

namespace meshref {

// Pinhole camera with world->camera pose (x_cam = R * x_world + t) and its
// grayscale image. The image may be empty for geometry-only uses.
struct CameraView {
    int id = 0;
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();
    Image image;

    Vec3 center() const { return -rotation.transpose() * translation; }

    Vec3 to_camera(const Vec3& p_world) const { return rotation * p_world + translation; }

    // Throws InvalidParamsError on violated invariants.
    void validate() const;
};

struct Projection {
    Vec2 pixel;
    double depth;
};

// Perspective projection; the pixel may fall outside the image bounds.
// Throws BehindCameraError when the camera-frame depth is <= 1e-9.
Projection project(const CameraView& cam, const Vec3& point);

// Inverse of project for a given depth. Throws NonPositiveDepthError.
Vec3 unproject(const CameraView& cam, const Vec2& pixel, double depth);

// 2x3 Jacobian of the pixel coordinates w.r.t. the world-space point.
Eigen::Matrix<double, 2, 3> projection_jacobian(const CameraView& cam, const Vec3& point);

} // namespace meshref
