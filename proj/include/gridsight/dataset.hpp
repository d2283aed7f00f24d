#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridsight/error.hpp"
#include "gridsight/features.hpp"
#include "gridsight/image.hpp"
#include "gridsight/pnm.hpp"

namespace gridsight {

inline const std::string kBackgroundClass = "background";

struct LabeledPoint {
    std::string image_path;
    std::string class_name;
    int x = 0;
    int y = 0;
};

// One record per line: <image-path> <class-name> <x> <y>; '#' starts a comment.
inline std::vector<LabeledPoint> parse_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("labels: cannot open '" + path + "'");
    std::vector<LabeledPoint> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        LabeledPoint p;
        if (!(ls >> p.image_path)) continue; // blank line
        if (!(ls >> p.class_name >> p.x >> p.y))
            throw FormatError("labels: malformed record at line " + std::to_string(line_no));
        std::string extra;
        if (ls >> extra)
            throw FormatError("labels: trailing tokens at line " + std::to_string(line_no));
        out.push_back(std::move(p));
    }
    return out;
}

struct TrainingSet {
    std::vector<FeatureVector> rows;
    std::vector<int> labels; // index into classes
    std::vector<std::string> classes;
};

// Builds one feature row per usable labeled point. When no explicit
// "background" labels exist, negative_ratio * positives random grid
// positions farther than R from every labeled point are added as
// background; fixed seed makes the sampling reproducible.
inline TrainingSet assemble_training_set(const std::vector<LabeledPoint>& points,
                                         const FeatureLayout& layout, const GridSpec& grid,
                                         double negative_ratio, std::uint64_t seed,
                                         std::ostream& warn = std::cerr) {
    TrainingSet ts;
    auto class_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < ts.classes.size(); ++i)
            if (ts.classes[i] == name) return static_cast<int>(i);
        ts.classes.push_back(name);
        return static_cast<int>(ts.classes.size() - 1);
    };

    // group by image, preserving first-appearance order
    std::vector<std::string> paths;
    std::map<std::string, std::vector<const LabeledPoint*>> by_image;
    bool has_background = false;
    for (const auto& p : points) {
        if (by_image.find(p.image_path) == by_image.end()) paths.push_back(p.image_path);
        by_image[p.image_path].push_back(&p);
        if (p.class_name == kBackgroundClass) has_background = true;
    }

    const int fit = layout.fit_radius();
    std::size_t positives = 0;
    std::vector<std::pair<std::size_t, GridPosition>> negative_candidates; // (image idx, pos)
    std::vector<GrayImage> images;
    images.reserve(paths.size());
    for (const auto& path : paths) images.push_back(load_image(path));

    for (std::size_t ii = 0; ii < paths.size(); ++ii) {
        const GrayImage& img = images[ii];
        QuantizedCache cache(img);
        for (const LabeledPoint* p : by_image[paths[ii]]) {
            if (p->x - fit < 0 || p->y - fit < 0 || p->x + fit > img.width - 1 ||
                p->y + fit > img.height - 1) {
                warn << "warning: skipping point (" << p->x << "," << p->y << ") in '"
                     << paths[ii] << "': context region does not fit\n";
                continue;
            }
            ts.rows.push_back(extract_vector(cache, p->x, p->y, layout));
            ts.labels.push_back(class_index(p->class_name));
            if (p->class_name != kBackgroundClass) ++positives;
        }
        if (!has_background) {
            const std::int64_t r2 =
                static_cast<std::int64_t>(layout.radius) * layout.radius;
            for (const auto& pos : grid_positions(img.width, img.height, grid, fit)) {
                bool clear = true;
                for (const LabeledPoint* p : by_image[paths[ii]]) {
                    const std::int64_t dx = pos.x - p->x, dy = pos.y - p->y;
                    if (dx * dx + dy * dy <= r2) {
                        clear = false;
                        break;
                    }
                }
                if (clear) negative_candidates.emplace_back(ii, pos);
            }
        }
    }

    if (!has_background && positives > 0 && negative_ratio > 0) {
        std::size_t want = static_cast<std::size_t>(
            std::llround(negative_ratio * static_cast<double>(positives)));
        want = std::min(want, negative_candidates.size());
        std::mt19937_64 rng(seed);
        // partial Fisher-Yates over candidate indices
        std::vector<std::size_t> idx(negative_candidates.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (std::size_t i = 0; i < want; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        idx.resize(want);
        std::sort(idx.begin(), idx.end()); // stable row order
        const int bg = want > 0 ? class_index(kBackgroundClass) : -1;
        std::size_t current = paths.size();
        std::optional<QuantizedCache> cache;
        for (std::size_t i : idx) {
            const auto& [ii, pos] = negative_candidates[i];
            if (ii != current) {
                cache.emplace(images[ii]);
                current = ii;
            }
            ts.rows.push_back(extract_vector(*cache, pos.x, pos.y, layout));
            ts.labels.push_back(bg);
        }
    }

    if (ts.classes.size() < 2)
        throw InsufficientData("assemble_training_set: fewer than 2 classes");
    return ts;
}

} // namespace gridsight
