#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gridsight/error.hpp"
#include "gridsight/image.hpp"

namespace gridsight {

enum class DirectionPair { Axis, Diagonal };

inline std::string to_string(DirectionPair p) {
    return p == DirectionPair::Axis ? "axis" : "diagonal";
}

// Integer count matrix, row-major.
struct CountMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> counts;

    CountMatrix() = default;
    CountMatrix(int r, int c) : rows(r), cols(c), counts(static_cast<std::size_t>(r) * c, 0) {}

    std::int64_t at(int r, int c) const { return counts[static_cast<std::size_t>(r) * cols + c]; }
    std::int64_t& at(int r, int c) { return counts[static_cast<std::size_t>(r) * cols + c]; }
    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto v : counts) t += v;
        return t;
    }
};

// L1-normalized frequencies; all-zero input stays all-zero.
struct NormalizedMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

inline NormalizedMatrix normalize_matrix(const CountMatrix& m) {
    NormalizedMatrix out;
    out.rows = m.rows;
    out.cols = m.cols;
    out.values.resize(m.counts.size(), 0.0);
    const std::int64_t total = m.total();
    if (total > 0)
        for (std::size_t i = 0; i < m.counts.size(); ++i)
            out.values[i] = static_cast<double>(m.counts[i]) / static_cast<double>(total);
    return out;
}

// Central differences on the quantized raster. Axis pair: g1 vertical,
// g2 horizontal. Diagonal pair: the two 45-degree directions.
inline std::pair<int, int> orthogonal_gradients(const QuantizedImage& q, int x, int y,
                                                DirectionPair pair) {
    if (x < 1 || y < 1 || x > q.width - 2 || y > q.height - 2)
        throw OutOfBounds("orthogonal_gradients: neighborhood leaves image");
    if (pair == DirectionPair::Axis)
        return {q.at(x, y + 1) - q.at(x, y - 1), q.at(x + 1, y) - q.at(x - 1, y)};
    return {q.at(x + 1, y + 1) - q.at(x - 1, y - 1), q.at(x + 1, y - 1) - q.at(x - 1, y + 1)};
}

// G x G matrix over a disk context; element (|g1|, |g2|) incremented per
// pixel, magnitudes clamped to G-1. Requires a 1-pixel halo around the disk.
inline CountMatrix compute_ogcm(const QuantizedImage& q, int cx, int cy, int radius,
                                DirectionPair pair) {
    if (cx - radius < 1 || cy - radius < 1 || cx + radius > q.width - 2 ||
        cy + radius > q.height - 2)
        throw OutOfBounds("compute_ogcm: disk with gradient halo leaves image");
    const int g = q.levels;
    CountMatrix m(g, g);
    const int r2 = radius * radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > r2) continue;
            auto [g1, g2] = orthogonal_gradients(q, cx + dx, cy + dy, pair);
            ++m.at(std::min(std::abs(g1), g - 1), std::min(std::abs(g2), g - 1));
        }
    return m;
}

// N x G matrix: row n-1 holds the gray histogram of ring n, where rings have
// external radii w, 2w, ..., Nw = R. A pixel at Euclidean distance r belongs
// to ring max(1, ceil(r / w)); the center pixel sits in ring 1.
inline CountMatrix compute_glrcm(const QuantizedImage& q, int cx, int cy, int ring_width,
                                 int rings) {
    if (ring_width < 1 || rings < 1)
        throw InvalidParameter("compute_glrcm: w and N must be >= 1");
    const int radius = ring_width * rings;
    if (cx - radius < 0 || cy - radius < 0 || cx + radius > q.width - 1 ||
        cy + radius > q.height - 1)
        throw OutOfBounds("compute_glrcm: disk leaves image");
    CountMatrix m(rings, q.levels);
    const int r2 = radius * radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            const int d2 = dx * dx + dy * dy;
            if (d2 > r2) continue;
            const double r = std::sqrt(static_cast<double>(d2));
            const int ring = std::max(1, static_cast<int>(std::ceil(r / ring_width)));
            ++m.at(ring - 1, q.at(cx + dx, cy + dy));
        }
    return m;
}

// Classic co-occurrence matrix restricted to the disk: both the pixel and
// its offset partner must lie inside the context region.
inline CountMatrix compute_glcm(const QuantizedImage& q, int cx, int cy, int radius,
                                int off_x, int off_y, bool symmetric) {
    if (off_x == 0 && off_y == 0)
        throw InvalidParameter("compute_glcm: offset must be nonzero");
    if (cx - radius < 0 || cy - radius < 0 || cx + radius > q.width - 1 ||
        cy + radius > q.height - 1)
        throw OutOfBounds("compute_glcm: disk leaves image");
    const int g = q.levels;
    CountMatrix m(g, g);
    const int r2 = radius * radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > r2) continue;
            const int px = dx + off_x, py = dy + off_y;
            if (px * px + py * py > r2) continue;
            const int a = q.at(cx + dx, cy + dy);
            const int b = q.at(cx + px, cy + py);
            ++m.at(a, b);
            if (symmetric) ++m.at(b, a);
        }
    return m;
}

struct GlcmStats {
    double homogeneity = 0;
    double entropy = 0; // bits
    double contrast = 0;
};

inline GlcmStats glcm_stats(const NormalizedMatrix& m) {
    GlcmStats s;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            const double p = m.at(i, j);
            if (p <= 0) continue;
            const double d2 = static_cast<double>(i - j) * (i - j);
            s.entropy -= p * std::log2(p);
            s.contrast += p * d2;
            s.homogeneity += p / (1.0 + d2);
        }
    return s;
}

} // namespace gridsight
