#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "gridsight/error.hpp"

namespace gridsight {

// Row-major 8-bit grayscale raster.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 0..255

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1)
            throw InvalidParameter("GrayImage: width and height must be >= 1");
    }

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

// Gray levels reduced to 0..levels-1.
struct QuantizedImage {
    int width = 0;
    int height = 0;
    int levels = 0; // G
    std::vector<std::uint8_t> data; // 0..levels-1

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    bool contains(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
};

// q = floor(p * G / 256), uniform-width bins.
inline QuantizedImage quantize(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256)
        throw InvalidParameter("quantize: G must be in [2, 256]");
    QuantizedImage q;
    q.width = img.width;
    q.height = img.height;
    q.levels = levels;
    q.data.resize(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i)
        q.data[i] = static_cast<std::uint8_t>(img.data[i] * levels / 256);
    return q;
}

struct GridSpec {
    int stride = 1;   // grid resolution, pixels
    int radius = 1;   // context region radius R, pixels
    int origin_x = 0; // first lattice point
    int origin_y = 0;

    void validate() const {
        if (stride < 1) throw InvalidParameter("grid: stride must be >= 1");
        if (radius < 1) throw InvalidParameter("grid: radius must be >= 1");
        if (origin_x < radius || origin_y < radius)
            throw InvalidParameter("grid: origin components must be >= radius");
    }
};

struct GridPosition {
    int gx = 0;
    int gy = 0;
    int x = 0; // x = origin_x + gx * stride
    int y = 0;
};

// Lattice points whose disk of radius fit_radius lies fully inside the
// image, row-major. fit_radius defaults to the grid's context radius but
// callers needing a gradient halo pass radius + 1; gx/gy always index the
// grid lattice, so the first surviving index may be > 0.
inline std::vector<GridPosition> grid_positions(int width, int height,
                                                const GridSpec& grid,
                                                int fit_radius = -1) {
    grid.validate();
    const int r = fit_radius < 0 ? grid.radius : fit_radius;
    std::vector<GridPosition> out;
    for (int gy = 0;; ++gy) {
        const int y = grid.origin_y + gy * grid.stride;
        if (y + r > height - 1) break;
        if (y - r < 0) continue;
        for (int gx = 0;; ++gx) {
            const int x = grid.origin_x + gx * grid.stride;
            if (x + r > width - 1) break;
            if (x - r < 0) continue;
            out.push_back({gx, gy, x, y});
        }
    }
    return out;
}

inline std::vector<GridPosition> grid_positions(const QuantizedImage& img,
                                                const GridSpec& grid,
                                                int fit_radius = -1) {
    return grid_positions(img.width, img.height, grid, fit_radius);
}

// All (dx, dy) with dx^2 + dy^2 <= R^2, dy-major.
inline std::vector<std::pair<int, int>> disk_pixels(int radius) {
    if (radius < 0) throw InvalidParameter("disk_pixels: R must be >= 0");
    std::vector<std::pair<int, int>> out;
    const int r2 = radius * radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= r2) out.emplace_back(dx, dy);
    return out;
}

} // namespace gridsight
