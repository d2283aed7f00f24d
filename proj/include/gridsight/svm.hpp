#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gridsight/error.hpp"
#include "gridsight/features.hpp"
#include "gridsight/image.hpp"

namespace gridsight {

inline double rbf_kernel(const FeatureVector& x, const FeatureVector& y, double gamma) {
    if (x.size() != y.size()) throw DimensionMismatch("rbf_kernel: dimension mismatch");
    if (gamma <= 0) throw InvalidParameter("rbf_kernel: gamma must be positive");
    double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

// Soft-margin binary SVM with RBF kernel. Stored vectors all carry alpha > 0.
struct BinarySvm {
    std::vector<FeatureVector> support_vectors;
    std::vector<double> alphas;
    std::vector<int> labels; // +1 / -1 per support vector
    double bias = 0;
    double gamma = 0;
    double C = 0;
    double platt_a = 0;
    double platt_b = 0;
};

inline double decision_value(const BinarySvm& m, const FeatureVector& x) {
    if (m.support_vectors.empty()) throw EmptyModel("decision_value: no support vectors");
    double f = m.bias;
    for (std::size_t i = 0; i < m.support_vectors.size(); ++i)
        f += m.alphas[i] * m.labels[i] * rbf_kernel(m.support_vectors[i], x, m.gamma);
    return f;
}

struct SmoOptions {
    double C = 10.0;
    double gamma = 1.0;
    double tol = 1e-3;
    long max_iter = 200000;
};

// SMO on the dual: repeatedly take the maximal-violating pair and solve the
// two-variable subproblem analytically, until the KKT gap drops below tol.
inline BinarySvm smo_train(const std::vector<FeatureVector>& rows,
                           const std::vector<int>& labels, const SmoOptions& opt) {
    const std::size_t n = rows.size();
    if (n != labels.size()) throw DimensionMismatch("smo_train: rows/labels mismatch");
    if (opt.C <= 0 || opt.gamma <= 0 || opt.tol <= 0)
        throw InvalidParameter("smo_train: C, gamma, tol must be positive");
    bool has_pos = false, has_neg = false;
    for (int y : labels) (y > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw InvalidInput("smo_train: both classes required");

    // full Gram matrix; training sets here stay small enough
    std::vector<double> K(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        K[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j)
            K[i * n + j] = K[j * n + i] = rbf_kernel(rows[i], rows[j], opt.gamma);
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of 1/2 a'Qa - e'a, Q_ij = y_i y_j K_ij
    const double C = opt.C;

    double rho = 0;
    long iter = 0;
    for (;; ++iter) {
        if (iter >= opt.max_iter)
            throw NonConvergence("smo_train: iteration cap " + std::to_string(opt.max_iter) +
                                 " reached");
        // maximal violating pair
        int i = -1, j = -1;
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double yg = -labels[t] * grad[t];
            const bool up = (labels[t] > 0 && alpha[t] < C) || (labels[t] < 0 && alpha[t] > 0);
            const bool low = (labels[t] > 0 && alpha[t] > 0) || (labels[t] < 0 && alpha[t] < C);
            if (up && yg > gmax) {
                gmax = yg;
                i = static_cast<int>(t);
            }
            if (low && yg < gmin) {
                gmin = yg;
                j = static_cast<int>(t);
            }
        }
        if (gmax - gmin < opt.tol) {
            rho = (gmax + gmin) / 2.0;
            break;
        }

        const int yi = labels[i], yj = labels[j];
        const double kii = K[static_cast<std::size_t>(i) * n + i];
        const double kjj = K[static_cast<std::size_t>(j) * n + j];
        const double kij = K[static_cast<std::size_t>(i) * n + j];
        double eta = kii + kjj - 2.0 * kij; // curvature along the pair direction
        if (eta <= 0) eta = 1e-12;

        // unconstrained step along the pair, then clip to the box
        const double delta = (-yi * grad[i] + yj * grad[j]) / eta;
        const double old_ai = alpha[i], old_aj = alpha[j];
        double ai = old_ai + yi * delta;
        double aj = old_aj - yj * delta;

        // project back to the feasible segment
        const double sum = yi * old_ai + yj * old_aj;
        ai = std::clamp(ai, 0.0, C);
        aj = yj * (sum - yi * ai);
        if (aj < 0) {
            aj = 0;
            ai = yi * (sum - yj * aj);
        } else if (aj > C) {
            aj = C;
            ai = yi * (sum - yj * aj);
        }
        ai = std::clamp(ai, 0.0, C);

        const double dai = ai - old_ai, daj = aj - old_aj;
        if (std::abs(dai) < 1e-15 && std::abs(daj) < 1e-15)
            throw NonConvergence("smo_train: stalled working pair");
        alpha[i] = ai;
        alpha[j] = aj;
        for (std::size_t t = 0; t < n; ++t)
            grad[t] += labels[t] * (yi * dai * K[static_cast<std::size_t>(i) * n + t] +
                                    yj * daj * K[static_cast<std::size_t>(j) * n + t]);
    }

    BinarySvm m;
    m.gamma = opt.gamma;
    m.C = C;
    m.bias = rho; // decision f(x) = sum a_i y_i K(s_i, x) + b with b = rho
    for (std::size_t t = 0; t < n; ++t)
        if (alpha[t] > 0) {
            m.support_vectors.push_back(rows[t]);
            m.alphas.push_back(alpha[t]);
            m.labels.push_back(labels[t]);
        }
    if (m.support_vectors.empty()) throw NonConvergence("smo_train: empty model");
    return m;
}

// Platt sigmoid P(y=+1 | f) = 1 / (1 + exp(A f + B)), fitted by regularized
// maximum likelihood with the corrected targets (N+ + 1)/(N+ + 2) and
// 1/(N- + 2). Newton iteration with backtracking.
inline std::pair<double, double> platt_fit(const std::vector<double>& decision_values,
                                           const std::vector<int>& labels) {
    const std::size_t n = decision_values.size();
    if (n != labels.size()) throw DimensionMismatch("platt_fit: length mismatch");
    std::size_t n_pos = 0, n_neg = 0;
    for (int y : labels) (y > 0 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw InvalidInput("platt_fit: both classes required");

    const double hi = (n_pos + 1.0) / (n_pos + 2.0);
    const double lo = 1.0 / (n_neg + 2.0);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] > 0 ? hi : lo;

    double a = 0.0;
    double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
    const double min_step = 1e-10, sigma = 1e-12;

    auto objective = [&](double A, double B) {
        double obj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = A * decision_values[i] + B;
            if (f >= 0)
                obj += t[i] * f + std::log1p(std::exp(-f));
            else
                obj += (t[i] - 1) * f + std::log1p(std::exp(f));
        }
        return obj;
    };

    double fval = objective(a, b);
    for (int it = 0; it < 100; ++it) {
        double h11 = sigma, h22 = sigma, h21 = 0, g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = a * decision_values[i] + b;
            double p, q;
            if (f >= 0) {
                p = std::exp(-f) / (1.0 + std::exp(-f));
                q = 1.0 / (1.0 + std::exp(-f));
            } else {
                p = 1.0 / (1.0 + std::exp(f));
                q = std::exp(f) / (1.0 + std::exp(f));
            }
            const double d1 = t[i] - p;
            const double d2 = p * q;
            h11 += decision_values[i] * decision_values[i] * d2;
            h22 += d2;
            h21 += decision_values[i] * d2;
            g1 += decision_values[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;
        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;
        double step = 1.0;
        while (step >= min_step) {
            const double na = a + step * da, nb = b + step * db;
            const double nf = objective(na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                break;
            }
            step /= 2.0;
        }
        if (step < min_step) break;
    }
    return {a, b};
}

inline double platt_probability(const BinarySvm& m, double decision) {
    const double f = m.platt_a * decision + m.platt_b;
    if (f >= 0) return std::exp(-f) / (1.0 + std::exp(-f));
    return 1.0 / (1.0 + std::exp(f));
}

// Trained one-vs-rest ensemble plus everything needed to reproduce the
// feature pipeline at prediction time.
struct SvmModelBundle {
    std::vector<std::string> classes;
    std::vector<BinarySvm> per_class;
    Scaler scaler;              // over the full layout dimension
    std::vector<int> selected;  // feature indices into the layout
    FeatureLayout layout;
    GridSpec grid;
};

// Scales the full-layout vector, applies feature selection, and normalizes
// the per-class Platt sigmoids into a probability vector.
inline std::vector<double> predict_proba(const SvmModelBundle& bundle, const FeatureVector& x) {
    if (x.size() != static_cast<std::size_t>(bundle.layout.total_dim))
        throw DimensionMismatch("predict_proba: expected full layout dimension");
    const FeatureVector scaled = apply_scaler(x, bundle.scaler);
    FeatureVector sub(bundle.selected.size());
    for (std::size_t j = 0; j < bundle.selected.size(); ++j)
        sub[j] = scaled[bundle.selected[j]];
    std::vector<double> probs(bundle.classes.size());
    double total = 0;
    for (std::size_t c = 0; c < bundle.per_class.size(); ++c) {
        probs[c] = platt_probability(bundle.per_class[c], decision_value(bundle.per_class[c], sub));
        total += probs[c];
    }
    if (total <= 0) {
        std::fill(probs.begin(), probs.end(), 1.0 / probs.size());
        return probs;
    }
    for (auto& p : probs) p /= total;
    return probs;
}

} // namespace gridsight
