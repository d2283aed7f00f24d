#pragma once

#include <map>
#include <string>
#include <vector>

#include "gridsight/error.hpp"
#include "gridsight/image.hpp"
#include "gridsight/texture.hpp"

namespace gridsight {

enum class RecipeKind { Ogcm, Glrcm, Glcm, GlcmStats };

inline std::string to_string(RecipeKind k) {
    switch (k) {
        case RecipeKind::Ogcm: return "OGCM";
        case RecipeKind::Glrcm: return "GLRCM";
        case RecipeKind::Glcm: return "GLCM";
        case RecipeKind::GlcmStats: return "GLCM_STATS";
    }
    return "?";
}

// One parameterized matrix extractor. Every recipe quantizes with its own G;
// GLRCM additionally fixes ring width w and ring count N with N*w equal to
// the layout's context radius.
struct FeatureRecipe {
    RecipeKind kind = RecipeKind::Glrcm;
    int levels = 8; // G
    DirectionPair pair = DirectionPair::Axis; // OGCM
    int ring_width = 1;                       // GLRCM
    int rings = 1;                            // GLRCM
    int off_x = 1, off_y = 0;                 // GLCM / GLCM_STATS
    bool symmetric = false;                   // GLCM / GLCM_STATS

    int dim() const {
        switch (kind) {
            case RecipeKind::Ogcm: return levels * levels;
            case RecipeKind::Glrcm: return rings * levels;
            case RecipeKind::Glcm: return levels * levels;
            case RecipeKind::GlcmStats: return 3;
        }
        return 0;
    }

    std::string tag() const {
        switch (kind) {
            case RecipeKind::Ogcm:
                return "OGCM[G=" + std::to_string(levels) + ",pair=" + to_string(pair) + "]";
            case RecipeKind::Glrcm:
                return "GLRCM[G=" + std::to_string(levels) + ",w=" + std::to_string(ring_width) +
                       ",N=" + std::to_string(rings) + "]";
            case RecipeKind::Glcm:
            case RecipeKind::GlcmStats:
                return to_string(kind) + "[G=" + std::to_string(levels) +
                       ",off=(" + std::to_string(off_x) + "," + std::to_string(off_y) +
                       "),sym=" + (symmetric ? "1" : "0") + "]";
        }
        return "?";
    }

    void validate(int radius) const {
        if (levels < 2 || levels > 256)
            throw InvalidParameter(tag() + ": G must be in [2, 256]");
        switch (kind) {
            case RecipeKind::Glrcm:
                if (ring_width < 1 || rings < 1)
                    throw InvalidParameter(tag() + ": w and N must be >= 1");
                if (ring_width * rings != radius)
                    throw InvalidParameter(tag() + ": N*w = " +
                                           std::to_string(ring_width * rings) +
                                           " does not match context radius " +
                                           std::to_string(radius));
                break;
            case RecipeKind::Glcm:
            case RecipeKind::GlcmStats:
                if (off_x == 0 && off_y == 0)
                    throw InvalidParameter(tag() + ": offset must be nonzero");
                break;
            case RecipeKind::Ogcm:
                break;
        }
    }
};

// Ordered feature slots produced by a recipe list plus one context radius.
struct FeatureLayout {
    std::vector<FeatureRecipe> recipes;
    int radius = 1; // R, shared by all recipes
    std::vector<std::string> slot_names;
    int total_dim = 0;

    bool needs_gradient_halo() const {
        for (const auto& r : recipes)
            if (r.kind == RecipeKind::Ogcm) return true;
        return false;
    }

    // radius every extraction actually touches (OGCM reads a 1-px halo)
    int fit_radius() const { return radius + (needs_gradient_halo() ? 1 : 0); }
};

inline FeatureLayout build_layout(const std::vector<FeatureRecipe>& recipes, int radius) {
    if (recipes.empty()) throw InvalidParameter("build_layout: empty recipe list");
    if (radius < 1) throw InvalidParameter("build_layout: radius must be >= 1");
    FeatureLayout layout;
    layout.recipes = recipes;
    layout.radius = radius;
    for (const auto& r : recipes) {
        r.validate(radius);
        const std::string tag = r.tag();
        if (r.kind == RecipeKind::GlcmStats) {
            layout.slot_names.push_back(tag + ":homogeneity");
            layout.slot_names.push_back(tag + ":entropy");
            layout.slot_names.push_back(tag + ":contrast");
        } else {
            const int rows = r.kind == RecipeKind::Glrcm ? r.rings : r.levels;
            const int cols = r.levels;
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    layout.slot_names.push_back(tag + ":" + std::to_string(i) + "," +
                                                std::to_string(j));
        }
        layout.total_dim += r.dim();
    }
    return layout;
}

using FeatureVector = std::vector<double>;

namespace detail {

inline void append_recipe_values(const QuantizedImage& q, int x, int y,
                                 const FeatureRecipe& r, int radius, FeatureVector& out) {
    CountMatrix counts;
    switch (r.kind) {
        case RecipeKind::Ogcm:
            counts = compute_ogcm(q, x, y, radius, r.pair);
            break;
        case RecipeKind::Glrcm:
            counts = compute_glrcm(q, x, y, r.ring_width, r.rings);
            break;
        case RecipeKind::Glcm:
        case RecipeKind::GlcmStats:
            counts = compute_glcm(q, x, y, radius, r.off_x, r.off_y, r.symmetric);
            break;
    }
    const NormalizedMatrix norm = normalize_matrix(counts);
    if (r.kind == RecipeKind::GlcmStats) {
        const GlcmStats s = glcm_stats(norm);
        out.push_back(s.homogeneity);
        out.push_back(s.entropy);
        out.push_back(s.contrast);
    } else {
        out.insert(out.end(), norm.values.begin(), norm.values.end());
    }
}

} // namespace detail

// Per-G quantization cache so one image feeds recipes with different G.
class QuantizedCache {
public:
    explicit QuantizedCache(const GrayImage& img) : img_(img) {}

    const QuantizedImage& get(int levels) {
        auto it = cache_.find(levels);
        if (it == cache_.end())
            it = cache_.emplace(levels, quantize(img_, levels)).first;
        return it->second;
    }

private:
    const GrayImage& img_;
    std::map<int, QuantizedImage> cache_;
};

inline FeatureVector extract_vector(QuantizedCache& cache, int x, int y,
                                    const FeatureLayout& layout) {
    FeatureVector out;
    out.reserve(layout.total_dim);
    for (const auto& r : layout.recipes)
        detail::append_recipe_values(cache.get(r.levels), x, y, r, layout.radius, out);
    return out;
}

inline FeatureVector extract_vector(const GrayImage& img, int x, int y,
                                    const FeatureLayout& layout) {
    QuantizedCache cache(img);
    return extract_vector(cache, x, y, layout);
}

// Per-feature standardization with population statistics; constant features
// (std 0) map to 0.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> std_dev;
};

inline Scaler fit_scaler(const std::vector<FeatureVector>& rows) {
    if (rows.size() < 2) throw InsufficientData("fit_scaler: need at least 2 rows");
    const std::size_t dim = rows.front().size();
    Scaler s;
    s.mean.assign(dim, 0.0);
    s.std_dev.assign(dim, 0.0);
    for (const auto& row : rows) {
        if (row.size() != dim) throw DimensionMismatch("fit_scaler: ragged rows");
        for (std::size_t j = 0; j < dim; ++j) s.mean[j] += row[j];
    }
    for (auto& m : s.mean) m /= static_cast<double>(rows.size());
    for (const auto& row : rows)
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = row[j] - s.mean[j];
            s.std_dev[j] += d * d;
        }
    for (auto& v : s.std_dev) v = std::sqrt(v / static_cast<double>(rows.size()));
    return s;
}

inline FeatureVector apply_scaler(const FeatureVector& v, const Scaler& s) {
    if (v.size() != s.mean.size())
        throw DimensionMismatch("apply_scaler: dimension mismatch");
    FeatureVector out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out[j] = s.std_dev[j] > 0 ? (v[j] - s.mean[j]) / s.std_dev[j] : 0.0;
    return out;
}

} // namespace gridsight
