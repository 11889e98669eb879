#pragma once

#include <cstdint>
#include <vector>

#include "meshref/image.hpp"
#include "meshref/rasterizer.hpp"

namespace meshref {

// Square window of model depths around a pixel. Cells without model coverage
// are flagged uncovered; the center cell must be covered.
struct DepthPatch {
    int size = 5;
    int center_x = 0; // pixel coords of the center in the source map
    int center_y = 0;
    std::vector<double> depth;          // size*size, row-major
    std::vector<std::uint8_t> covered;  // size*size

    std::size_t cell(int h, int k) const { return static_cast<std::size_t>(k) * size + h; }
    int half() const { return size / 2; }
    double center_depth() const { return depth[cell(half(), half())]; }
};

// Per-cell validity for masked similarity/gradient computation; the center is
// always valid.
struct PatchMask {
    int size = 5;
    std::vector<std::uint8_t> valid;

    int valid_count() const {
        int n = 0;
        for (std::uint8_t v : valid)
            n += v ? 1 : 0;
        return n;
    }
};

// Throws InvalidParamsError for even/small sizes or an uncovered center.
DepthPatch extract_patch(const DepthMap& dm, int x, int y, int size = 5);

// dd(h,k) = depth(h,k) - depth(center); uncovered cells are left at 0 and
// excluded via the patch's covered flags.
std::vector<double> depth_differences(const DepthPatch& patch);

// 1D two-means split of dd values: centers start at 0 and max{dd}, one Lloyd
// refinement, then final assignment (ties to the near-zero cluster). Values
// whose positive extreme is at or below flat_tol all land in `min_cells` and
// `max_cells` stays empty.
struct DdClusters {
    std::vector<int> min_cells;
    std::vector<int> max_cells;
};
DdClusters cluster_dd(const std::vector<double>& dd, const std::vector<std::uint8_t>& included,
                      double flat_tol);

// sigma_hat is the dd value of the near cluster's cell spatially farthest
// from the center (ties: larger |dd|, then row-major); a cell is valid when
// |dd - sigma_hat| < 10 * |dd - max{dd}|. Flat patches keep every covered
// cell; the center is always kept.
PatchMask compute_mask(const DepthPatch& patch);

// Fig-4-style visualization: per covered pixel, the number of valid cells in
// its patch mask, scaled to [0,1] by size^2.
Image valid_count_heatmap(const DepthMap& dm, int patch_size = 5);

} // namespace meshref
