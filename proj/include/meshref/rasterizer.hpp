#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <vector>

#include "meshref/camera.hpp"
#include "meshref/geometry.hpp"

namespace meshref {

// Per-pixel nearest-surface record rendered from a mesh. Depth is camera-frame
// z; uncovered pixels hold kEmptyDepth and face -1. Pixel (u,v) is sampled at
// (u+0.5, v+0.5); exact depth ties go to the lower face index.
struct DepthMap {
    static constexpr double kEmptyDepth = std::numeric_limits<double>::infinity();
    static constexpr int kNoFace = -1;

    int width = 0;
    int height = 0;
    std::vector<double> depth;
    std::vector<int> face_id;
    std::vector<Vec3> bary;

    DepthMap() = default;
    DepthMap(int w, int h)
        : width(w), height(h),
          depth(static_cast<std::size_t>(w) * h, kEmptyDepth),
          face_id(static_cast<std::size_t>(w) * h, kNoFace),
          bary(static_cast<std::size_t>(w) * h, Vec3::Zero()) {}

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    bool covered(int x, int y) const { return face_id[idx(x, y)] != kNoFace; }
    std::size_t covered_count() const;
};

// Z-buffer rasterization over all faces with perspective-correct depth and
// barycentric interpolation. Faces with any vertex at camera depth <= 1e-9
// are skipped (no near-plane clipping).
DepthMap render_depth(const TriMesh& mesh, const CameraView& camera);

// A face is visible when it owns more than min_pixel_fraction * (width*height)
// pixels of the face_id layer (default: at least one pixel).
std::vector<std::uint8_t> facet_visibility(const TriMesh& mesh, const CameraView& camera,
                                           const DepthMap& depthmap, double min_pixel_fraction = 0.0);

// Cross-camera reprojection through the surface: where image j is defined when
// warped into image i. `domain` is the mutual-visibility region Omega; reproj
// and point are valid wherever has_point is set (every covered pixel of i).
struct ReprojectionField {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> domain;     // Omega_ij: covered, in-bounds in j, passes the z-test
    std::vector<std::uint8_t> has_reproj; // covered and projects in front of j inside bounds
    std::vector<Vec2> reproj;             // pixel coords in image j
    std::vector<Vec3> point;              // surface point (valid on covered pixels)
    std::vector<double> depth_in_j;       // camera-j depth of point

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    std::size_t domain_count() const;
};

// z_tol_rel is the mutual-visibility test tolerance, relative to depth.
ReprojectionField reproject(const CameraView& cam_i, const CameraView& cam_j,
                            const DepthMap& depth_i, const DepthMap& depth_j, double z_tol_rel = 0.005);

void save_depthmap_pfm(const DepthMap& dm, const std::filesystem::path& path);
void save_depthmap_png16(const DepthMap& dm, const std::filesystem::path& path);
void save_mask_pgm(const std::vector<std::uint8_t>& mask, int width, int height,
                   const std::filesystem::path& path);

} // namespace meshref
