#include "meshref/rasterizer.hpp"

#include <algorithm>
#include <cmath>

#include "meshref/io.hpp"

namespace meshref {

std::size_t DepthMap::covered_count() const {
    std::size_t n = 0;
    for (int f : face_id)
        if (f != kNoFace)
            ++n;
    return n;
}

std::size_t ReprojectionField::domain_count() const {
    std::size_t n = 0;
    for (std::uint8_t d : domain)
        if (d)
            ++n;
    return n;
}

DepthMap render_depth(const TriMesh& mesh, const CameraView& camera) {
    if (mesh.face_count() == 0)
        throw EmptyInputError("render_depth: mesh has no faces");
    DepthMap dm(camera.width, camera.height);

    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& fc = mesh.faces()[f];
        Vec3 pc[3];
        bool in_front = true;
        for (int k = 0; k < 3; ++k) {
            pc[k] = camera.to_camera(mesh.vertices()[fc[k]]);
            if (pc[k].z() <= 1e-9)
                in_front = false;
        }
        if (!in_front)
            continue;

        Vec2 px[3];
        double inv_z[3];
        for (int k = 0; k < 3; ++k) {
            inv_z[k] = 1.0 / pc[k].z();
            px[k] = Vec2(camera.fx * pc[k].x() * inv_z[k] + camera.cx,
                         camera.fy * pc[k].y() * inv_z[k] + camera.cy);
        }

        const double area2 = (px[1].x() - px[0].x()) * (px[2].y() - px[0].y()) -
                             (px[1].y() - px[0].y()) * (px[2].x() - px[0].x());
        if (std::abs(area2) < 1e-14)
            continue; // edge-on

        const double min_x = std::min({px[0].x(), px[1].x(), px[2].x()});
        const double max_x = std::max({px[0].x(), px[1].x(), px[2].x()});
        const double min_y = std::min({px[0].y(), px[1].y(), px[2].y()});
        const double max_y = std::max({px[0].y(), px[1].y(), px[2].y()});
        // pixel (u,v) samples at (u+0.5, v+0.5)
        const int x0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
        const int x1 = std::min(camera.width - 1, static_cast<int>(std::ceil(max_x - 0.5)));
        const int y0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
        const int y1 = std::min(camera.height - 1, static_cast<int>(std::ceil(max_y - 0.5)));
        if (x0 > x1 || y0 > y1)
            continue;

        const double inv_area2 = 1.0 / area2;
        for (int y = y0; y <= y1; ++y) {
            const double sy = y + 0.5;
            for (int x = x0; x <= x1; ++x) {
                const double sx = x + 0.5;
                // signed edge functions; normalized by the signed area so both
                // windings rasterize (no backface culling, like a ray cast)
                const double w0 = ((px[2].x() - px[1].x()) * (sy - px[1].y()) -
                                   (px[2].y() - px[1].y()) * (sx - px[1].x())) * inv_area2;
                const double w1 = ((px[0].x() - px[2].x()) * (sy - px[2].y()) -
                                   (px[0].y() - px[2].y()) * (sx - px[2].x())) * inv_area2;
                const double w2 = 1.0 - w0 - w1;
                if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0)
                    continue;
                const double inv_depth = w0 * inv_z[0] + w1 * inv_z[1] + w2 * inv_z[2];
                const double z = 1.0 / inv_depth;
                const std::size_t i = dm.idx(x, y);
                if (z < dm.depth[i] || (z == dm.depth[i] && f < dm.face_id[i])) {
                    dm.depth[i] = z;
                    dm.face_id[i] = f;
                    // perspective-correct barycentric of the 3D surface point
                    dm.bary[i] = Vec3(w0 * inv_z[0], w1 * inv_z[1], w2 * inv_z[2]) * z;
                }
            }
        }
    }
    return dm;
}

std::vector<std::uint8_t> facet_visibility(const TriMesh& mesh, const CameraView& camera,
                                           const DepthMap& depthmap, double min_pixel_fraction) {
    std::vector<std::size_t> owned(mesh.face_count(), 0);
    for (int f : depthmap.face_id)
        if (f != DepthMap::kNoFace)
            ++owned[f];
    const double threshold = min_pixel_fraction * static_cast<double>(camera.width) * camera.height;
    std::vector<std::uint8_t> visible(mesh.face_count(), 0);
    for (int f = 0; f < mesh.face_count(); ++f)
        visible[f] = owned[f] > 0 && static_cast<double>(owned[f]) > threshold ? 1 : 0;
    return visible;
}

ReprojectionField reproject(const CameraView& cam_i, const CameraView& cam_j,
                            const DepthMap& depth_i, const DepthMap& depth_j, double z_tol_rel) {
    ReprojectionField field;
    field.width = depth_i.width;
    field.height = depth_i.height;
    const std::size_t n = static_cast<std::size_t>(field.width) * field.height;
    field.domain.assign(n, 0);
    field.has_reproj.assign(n, 0);
    field.reproj.assign(n, Vec2::Zero());
    field.point.assign(n, Vec3::Zero());
    field.depth_in_j.assign(n, 0.0);

    for (int y = 0; y < field.height; ++y) {
        for (int x = 0; x < field.width; ++x) {
            const std::size_t i = field.idx(x, y);
            if (depth_i.face_id[i] == DepthMap::kNoFace)
                continue;
            const Vec2 pixel(x + 0.5, y + 0.5);
            const Vec3 p = unproject(cam_i, pixel, depth_i.depth[i]);
            field.point[i] = p;
            const Vec3 pj = cam_j.to_camera(p);
            if (pj.z() <= 1e-9)
                continue;
            const Vec2 uv(cam_j.fx * pj.x() / pj.z() + cam_j.cx, cam_j.fy * pj.y() / pj.z() + cam_j.cy);
            field.depth_in_j[i] = pj.z();
            if (!(uv.x() >= 0.0 && uv.y() >= 0.0 && uv.x() < depth_j.width && uv.y() < depth_j.height))
                continue;
            field.reproj[i] = uv;
            field.has_reproj[i] = 1;
            // mutual visibility: depth-map z of camera j at the landing pixel
            const int jx = static_cast<int>(uv.x());
            const int jy = static_cast<int>(uv.y());
            const std::size_t ji = depth_j.idx(jx, jy);
            if (depth_j.face_id[ji] == DepthMap::kNoFace)
                continue;
            if (std::abs(depth_j.depth[ji] - pj.z()) < z_tol_rel * pj.z())
                field.domain[i] = 1;
        }
    }
    return field;
}

void save_depthmap_pfm(const DepthMap& dm, const std::filesystem::path& path) {
    std::vector<float> buf(dm.depth.size());
    for (std::size_t i = 0; i < dm.depth.size(); ++i)
        buf[i] = dm.face_id[i] == DepthMap::kNoFace ? 0.0f : static_cast<float>(dm.depth[i]);
    save_pfm(buf, dm.width, dm.height, path);
}

void save_depthmap_png16(const DepthMap& dm, const std::filesystem::path& path) {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < dm.depth.size(); ++i) {
        if (dm.face_id[i] != DepthMap::kNoFace) {
            lo = std::min(lo, dm.depth[i]);
            hi = std::max(hi, dm.depth[i]);
        }
    }
    if (lo > hi) {
        lo = 0.0;
        hi = 1.0;
    }
    std::vector<double> vals(dm.depth.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < dm.depth.size(); ++i)
        if (dm.face_id[i] != DepthMap::kNoFace)
            vals[i] = dm.depth[i];
    save_png16_normalized(vals, dm.width, dm.height, lo, hi, path);
}

void save_mask_pgm(const std::vector<std::uint8_t>& mask, int width, int height,
                   const std::filesystem::path& path) {
    Image img(width, height);
    for (std::size_t i = 0; i < mask.size(); ++i)
        img.data[i] = mask[i] ? 1.0 : 0.0;
    save_pgm(img, path);
}

} // namespace meshref
