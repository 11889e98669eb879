#include "meshref/occlusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meshref/common.hpp"

namespace meshref {

DepthPatch extract_patch(const DepthMap& dm, int x, int y, int size) {
    if (size < 3 || size % 2 == 0)
        throw InvalidParamsError("patch size must be odd and >= 3");
    if (x < 0 || y < 0 || x >= dm.width || y >= dm.height || !dm.covered(x, y))
        throw InvalidParamsError("patch center must be a covered pixel");
    DepthPatch p;
    p.size = size;
    p.center_x = x;
    p.center_y = y;
    p.depth.assign(static_cast<std::size_t>(size) * size, 0.0);
    p.covered.assign(static_cast<std::size_t>(size) * size, 0);
    const int half = size / 2;
    for (int k = 0; k < size; ++k) {
        for (int h = 0; h < size; ++h) {
            const int px = x + h - half;
            const int py = y + k - half;
            if (px < 0 || py < 0 || px >= dm.width || py >= dm.height)
                continue;
            if (!dm.covered(px, py))
                continue;
            p.depth[p.cell(h, k)] = dm.depth[dm.idx(px, py)];
            p.covered[p.cell(h, k)] = 1;
        }
    }
    return p;
}

std::vector<double> depth_differences(const DepthPatch& patch) {
    const double c = patch.center_depth();
    std::vector<double> dd(patch.depth.size(), 0.0);
    for (std::size_t i = 0; i < patch.depth.size(); ++i)
        if (patch.covered[i])
            dd[i] = patch.depth[i] - c;
    return dd;
}

DdClusters cluster_dd(const std::vector<double>& dd, const std::vector<std::uint8_t>& included,
                      double flat_tol) {
    DdClusters out;
    double max_dd = -std::numeric_limits<double>::infinity();
    int n_included = 0;
    for (std::size_t i = 0; i < dd.size(); ++i) {
        if (!included[i])
            continue;
        ++n_included;
        max_dd = std::max(max_dd, dd[i]);
    }
    if (n_included == 0)
        throw InvalidParamsError("cluster_dd: no values");

    if (max_dd <= flat_tol) {
        for (std::size_t i = 0; i < dd.size(); ++i)
            if (included[i])
                out.min_cells.push_back(static_cast<int>(i));
        return out;
    }

    auto assign = [&](double c_min, double c_max) {
        out.min_cells.clear();
        out.max_cells.clear();
        for (std::size_t i = 0; i < dd.size(); ++i) {
            if (!included[i])
                continue;
            if (std::abs(dd[i] - c_min) <= std::abs(dd[i] - c_max))
                out.min_cells.push_back(static_cast<int>(i));
            else
                out.max_cells.push_back(static_cast<int>(i));
        }
    };

    assign(0.0, max_dd);
    // one Lloyd refinement of the centers, then the final assignment
    double c_min = 0.0;
    double c_max = max_dd;
    if (!out.min_cells.empty()) {
        double s = 0.0;
        for (int i : out.min_cells)
            s += dd[i];
        c_min = s / static_cast<double>(out.min_cells.size());
    }
    if (!out.max_cells.empty()) {
        double s = 0.0;
        for (int i : out.max_cells)
            s += dd[i];
        c_max = s / static_cast<double>(out.max_cells.size());
    }
    assign(c_min, c_max);
    return out;
}

PatchMask compute_mask(const DepthPatch& patch) {
    PatchMask mask;
    mask.size = patch.size;
    mask.valid.assign(patch.covered.size(), 0);

    const std::vector<double> dd = depth_differences(patch);
    // flatness is judged relative to the center depth, so rasterization jitter
    // on smooth surfaces does not fragment the mask
    const double flat_tol = 1e-6 * std::abs(patch.center_depth());
    const DdClusters clusters = cluster_dd(dd, patch.covered, flat_tol);

    if (clusters.max_cells.empty()) {
        mask.valid = patch.covered;
        return mask;
    }

    double max_dd = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dd.size(); ++i)
        if (patch.covered[i])
            max_dd = std::max(max_dd, dd[i]);

    // sigma_hat: dd of the near-cluster cell spatially farthest from center;
    // ties resolved by larger |dd|, then row-major order
    const int half = patch.half();
    double best_dist2 = -1.0;
    double sigma_hat = 0.0;
    for (int idx : clusters.min_cells) {
        const int h = idx % patch.size;
        const int k = idx / patch.size;
        const double dist2 = static_cast<double>((h - half) * (h - half) + (k - half) * (k - half));
        if (dist2 > best_dist2 ||
            (dist2 == best_dist2 && std::abs(dd[idx]) > std::abs(sigma_hat))) {
            best_dist2 = dist2;
            sigma_hat = dd[idx];
        }
    }

    for (std::size_t i = 0; i < dd.size(); ++i) {
        if (!patch.covered[i])
            continue;
        if (std::abs(dd[i] - sigma_hat) < 10.0 * std::abs(dd[i] - max_dd))
            mask.valid[i] = 1;
    }
    mask.valid[patch.cell(half, half)] = 1;
    return mask;
}

Image valid_count_heatmap(const DepthMap& dm, int patch_size) {
    Image img(dm.width, dm.height, 0.0);
    const double denom = static_cast<double>(patch_size) * patch_size;
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (!dm.covered(x, y))
                continue;
            const PatchMask m = compute_mask(extract_patch(dm, x, y, patch_size));
            img.at(x, y) = static_cast<double>(m.valid_count()) / denom;
        }
    }
    return img;
}

} // namespace meshref
