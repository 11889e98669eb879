#include "meshref/camera.hpp"

#include <cmath>
#include <string>

namespace meshref {

void CameraView::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0))
        throw InvalidParamsError("camera " + std::to_string(id) + ": focal length must be > 0");
    if (width <= 0 || height <= 0)
        throw InvalidParamsError("camera " + std::to_string(id) + ": image size must be positive");
    const Mat3 rtr = rotation.transpose() * rotation;
    if ((rtr - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw InvalidParamsError("camera " + std::to_string(id) + ": rotation is not orthonormal");
    if (!image.empty() && (image.width != width || image.height != height))
        throw InvalidParamsError("camera " + std::to_string(id) + ": image dimensions do not match");
}

Projection project(const CameraView& cam, const Vec3& point) {
    const Vec3 pc = cam.to_camera(point);
    if (pc.z() <= 1e-9)
        throw BehindCameraError("point at camera-frame depth " + std::to_string(pc.z()));
    Projection out;
    out.pixel = Vec2(cam.fx * pc.x() / pc.z() + cam.cx, cam.fy * pc.y() / pc.z() + cam.cy);
    out.depth = pc.z();
    return out;
}

Vec3 unproject(const CameraView& cam, const Vec2& pixel, double depth) {
    if (!(depth > 0.0))
        throw NonPositiveDepthError("unproject: depth must be > 0");
    const Vec3 pc((pixel.x() - cam.cx) / cam.fx * depth, (pixel.y() - cam.cy) / cam.fy * depth, depth);
    return cam.rotation.transpose() * (pc - cam.translation);
}

Eigen::Matrix<double, 2, 3> projection_jacobian(const CameraView& cam, const Vec3& point) {
    const Vec3 pc = cam.to_camera(point);
    const double inv_z = 1.0 / pc.z();
    Eigen::Matrix<double, 2, 3> d_pix_d_pc;
    d_pix_d_pc << cam.fx * inv_z, 0.0, -cam.fx * pc.x() * inv_z * inv_z,
                  0.0, cam.fy * inv_z, -cam.fy * pc.y() * inv_z * inv_z;
    return d_pix_d_pc * cam.rotation;
}

} // namespace meshref
