#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace meshref {

// Single-channel intensity image, values in [0,1], row-major.
// Pixel (x,y) is the sample taken at continuous position (x+0.5, y+0.5).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, double fill = 0.0) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    bool empty() const { return width == 0 || height == 0; }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    bool contains(double sx, double sy) const {
        return sx >= 0.0 && sy >= 0.0 && sx < width && sy < height;
    }

    // Bilinear sample at continuous pixel coordinates (same convention as
    // above: integer grid value i lives at i+0.5). Border-clamped.
    double sample_bilinear(double sx, double sy) const {
        const double gx = sx - 0.5;
        const double gy = sy - 0.5;
        const int x0 = static_cast<int>(std::floor(gx));
        const int y0 = static_cast<int>(std::floor(gy));
        const double fx = gx - x0;
        const double fy = gy - y0;
        const int cx0 = std::clamp(x0, 0, width - 1);
        const int cx1 = std::clamp(x0 + 1, 0, width - 1);
        const int cy0 = std::clamp(y0, 0, height - 1);
        const int cy1 = std::clamp(y0 + 1, 0, height - 1);
        const double v00 = at(cx0, cy0);
        const double v10 = at(cx1, cy0);
        const double v01 = at(cx0, cy1);
        const double v11 = at(cx1, cy1);
        return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) + fy * ((1.0 - fx) * v01 + fx * v11);
    }
};

// Central-difference gradient images (one-sided at the borders).
struct ImageGradient {
    Image gx;
    Image gy;

    static ImageGradient compute(const Image& img) {
        ImageGradient g;
        g.gx = Image(img.width, img.height);
        g.gy = Image(img.width, img.height);
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const int xm = std::max(x - 1, 0);
                const int xp = std::min(x + 1, img.width - 1);
                const int ym = std::max(y - 1, 0);
                const int yp = std::min(y + 1, img.height - 1);
                g.gx.at(x, y) = (img.at(xp, y) - img.at(xm, y)) / static_cast<double>(xp - xm);
                g.gy.at(x, y) = (img.at(x, yp) - img.at(x, ym)) / static_cast<double>(yp - ym);
            }
        }
        return g;
    }
};

} // namespace meshref
