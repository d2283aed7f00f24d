#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gridsight/dataset.hpp"
#include "gridsight/error.hpp"

namespace gridsight {

struct DiscreteColumn {
    std::vector<int> values; // 0..bins-1
    int bins = 0;
    std::vector<double> bin_edges;
};

// Equal-width bins over [min, max]; a constant column collapses to bin 0,
// the maximum lands in bin B-1.
inline DiscreteColumn discretize_column(const std::vector<double>& values, int bins) {
    if (bins < 2) throw InvalidParameter("discretize_column: B must be >= 2");
    DiscreteColumn col;
    col.bins = bins;
    col.values.reserve(values.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) col.bin_edges.push_back(lo + b * width);
    for (double v : values) {
        int b = width > 0 ? static_cast<int>((v - lo) / width) : 0;
        col.values.push_back(std::clamp(b, 0, bins - 1));
    }
    return col;
}

// Plug-in estimate in bits over the empirical joint histogram.
inline double mutual_information(const DiscreteColumn& x, const DiscreteColumn& y) {
    if (x.values.size() != y.values.size())
        throw DimensionMismatch("mutual_information: length mismatch");
    const std::size_t n = x.values.size();
    if (n == 0) return 0.0;
    std::vector<double> joint(static_cast<std::size_t>(x.bins) * y.bins, 0.0);
    std::vector<double> px(x.bins, 0.0), py(y.bins, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        joint[static_cast<std::size_t>(x.values[i]) * y.bins + y.values[i]] += inv_n;
        px[x.values[i]] += inv_n;
        py[y.values[i]] += inv_n;
    }
    double mi = 0.0;
    for (int a = 0; a < x.bins; ++a)
        for (int b = 0; b < y.bins; ++b) {
            const double p = joint[static_cast<std::size_t>(a) * y.bins + b];
            if (p > 0) mi += p * std::log2(p / (px[a] * py[b]));
        }
    return std::max(0.0, mi);
}

// Standard Pearson r; defined as 0 when either column is constant.
inline double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("pearson_correlation: length mismatch");
    if (x.size() < 2) throw DimensionMismatch("pearson_correlation: need length >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0 || syy <= 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

struct SelectionResult {
    std::vector<int> selected;          // feature indices, pick order
    std::vector<double> scores;         // MID score at each pick
    std::vector<int> dropped_low_mi;    // failed the relevance pre-filter
};

// Greedy MID selection: pre-filter by class relevance, then repeatedly pick
// the feature maximizing I(f;class) - mean over selected s of I(f;s), among
// candidates whose |pearson| with every selected feature stays within
// t_corr. Ties break toward the lower feature index.
inline SelectionResult mrmr_select(const TrainingSet& ts, int k, double t_mi, double t_corr,
                                   int bins) {
    if (k < 1) throw InvalidParameter("mrmr_select: k must be >= 1");
    if (ts.rows.empty()) throw InsufficientData("mrmr_select: empty training set");
    const std::size_t dim = ts.rows.front().size();
    const std::size_t n = ts.rows.size();

    std::vector<std::vector<double>> columns(dim, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dim; ++j) columns[j][i] = ts.rows[i][j];

    std::vector<DiscreteColumn> disc(dim);
    for (std::size_t j = 0; j < dim; ++j) disc[j] = discretize_column(columns[j], bins);
    DiscreteColumn cls;
    cls.bins = static_cast<int>(ts.classes.size());
    cls.values = ts.labels;

    SelectionResult res;
    std::vector<double> relevance(dim);
    std::vector<bool> candidate(dim, false);
    for (std::size_t j = 0; j < dim; ++j) {
        relevance[j] = mutual_information(disc[j], cls);
        if (relevance[j] >= t_mi)
            candidate[j] = true;
        else
            res.dropped_low_mi.push_back(static_cast<int>(j));
    }
    if (res.dropped_low_mi.size() == dim)
        throw InsufficientData("mrmr_select: no feature passes the relevance threshold");

    // pairwise MI with already-selected features, computed lazily
    std::vector<std::vector<double>> mi_with_selected(dim);

    while (static_cast<int>(res.selected.size()) < k) {
        int best = -1;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < dim; ++j) {
            if (!candidate[j]) continue;
            bool gated = false;
            for (int s : res.selected)
                if (std::abs(pearson_correlation(columns[j], columns[s])) > t_corr) {
                    gated = true;
                    break;
                }
            if (gated) continue;
            double redundancy = 0.0;
            if (!res.selected.empty()) {
                while (mi_with_selected[j].size() < res.selected.size())
                    mi_with_selected[j].push_back(mutual_information(
                        disc[j], disc[res.selected[mi_with_selected[j].size()]]));
                for (double m : mi_with_selected[j]) redundancy += m;
                redundancy /= static_cast<double>(res.selected.size());
            }
            const double score = relevance[j] - redundancy;
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(j);
            }
        }
        if (best < 0) break; // exhausted
        res.selected.push_back(best);
        res.scores.push_back(best_score);
        candidate[best] = false;
    }
    return res;
}

} // namespace gridsight
