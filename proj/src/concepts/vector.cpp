#include "ccc/concepts/vector.hpp"

#include <algorithm>
#include <cmath>

#include "ccc/kernels/vector_ops.hpp"

namespace ccc::concepts {
namespace {

void check_finite(const std::vector<double>& x, std::size_t row) {
    for (double v : x)
        if (!std::isfinite(v)) throw DataError("non-finite activation in training row " + std::to_string(row));
}

std::vector<double> standardized(const ConceptVector& v, std::span<const double> x) {
    std::vector<double> z(x.begin(), x.end());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (z[i] - v.meta.mean[i]) * v.meta.scale[i];
    return z;
}

// Exact minimizer over b of sum_i max(0, 1 - y_i (s_i + b)) for fixed
// scores s_i = w.x_i. Every hinge kink raises the slope by one, starting from
// -#positives, so the flat bottom lies between the P-th and (P+1)-th smallest
// kinks; the midpoint is taken.
double refit_bias(const std::vector<double>& s, const std::vector<int>& ys) {
    std::vector<double> kinks(s.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        kinks[i] = ys[i] > 0 ? 1.0 - s[i] : -1.0 - s[i];
        positives += ys[i] > 0;
    }
    std::sort(kinks.begin(), kinks.end());
    return 0.5 * (kinks[positives - 1] + kinks[positives]);
}

}  // namespace

ConceptVector train_linear_svm(ConceptName c, const std::vector<std::vector<double>>& xs, const std::vector<int>& ys,
                               const TrainingHyper& hyper) {
    if (xs.size() != ys.size()) throw UsageError("activation and label counts differ");
    if (hyper.epochs < 1 || !(hyper.lambda > 0.0)) throw UsageError("epochs must be >= 1 and lambda > 0");
    bool has_pos = false, has_neg = false;
    for (int y : ys) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw UsageError("labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw DataError("training needs both classes");

    const std::size_t d = xs.front().size();
    if (d == 0) throw DataError("empty activation vectors");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].size() != d)
            throw DataError("activation dimension mismatch in row " + std::to_string(i) + ": " +
                            std::to_string(xs[i].size()) + " vs " + std::to_string(d));
        check_finite(xs[i], i);
    }

    ConceptVector v;
    v.name = c;
    v.meta.seed = hyper.seed;
    v.meta.epochs = hyper.epochs;
    v.meta.lambda = hyper.lambda;
    v.meta.n_train = xs.size();

    const std::vector<std::vector<double>>* data = &xs;
    std::vector<std::vector<double>> scaled;
    if (hyper.standardize.value_or(false)) {
        const double n = static_cast<double>(xs.size());
        v.meta.mean.assign(d, 0.0);
        v.meta.scale.assign(d, 0.0);
        for (const auto& x : xs)
            for (std::size_t i = 0; i < d; ++i) v.meta.mean[i] += x[i] / n;
        for (const auto& x : xs)
            for (std::size_t i = 0; i < d; ++i) v.meta.scale[i] += (x[i] - v.meta.mean[i]) * (x[i] - v.meta.mean[i]) / n;
        for (double& s : v.meta.scale) s = s > 0.0 ? 1.0 / std::sqrt(s) : 1.0;
        scaled.reserve(xs.size());
        for (const auto& x : xs) scaled.push_back(standardized(v, x));
        data = &scaled;
    }

    std::vector<double> w(d, 0.0);
    double b = 0.0;
    std::vector<std::size_t> order(xs.size());
    std::uint64_t t = 0;
    std::vector<double> scores(xs.size());
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        stable_shuffle(order, hyper.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(epoch + 1));
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
            const auto& x = (*data)[i];
            const double y = ys[i];
            const double margin = y * (kernels::dot(w, x) + b);
            kernels::scale(1.0 - eta * hyper.lambda, w);
            if (margin < 1.0) {
                kernels::axpy(eta * y, x, w);
                b += eta * y;
            }
        }
        // The 1/(lambda t) steps leave the unshrunk bias dominated by its
        // first few updates; settle it exactly once per epoch.
        for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = kernels::dot(w, (*data)[i]);
        b = refit_bias(scores, ys);
    }

    if (kernels::squared_norm(w) == 0.0) throw DataError("training produced a zero weight vector");
    v.weights = std::move(w);
    v.bias = b;
    return v;
}

ConceptVector train_concept_vector(const ConceptDataset& ds, const ActivationProvider& provider,
                                   const TrainingHyper& hyper) {
    if (ds.positives.empty() || ds.negatives.empty()) throw DataError("training needs both classes");
    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    xs.reserve(ds.positives.size() + ds.negatives.size());
    for (const auto& fen : ds.positives) {
        xs.push_back(provider.activation(chess::parse_fen(fen)));
        ys.push_back(1);
    }
    for (const auto& fen : ds.negatives) {
        xs.push_back(provider.activation(chess::parse_fen(fen)));
        ys.push_back(-1);
    }
    TrainingHyper h = hyper;
    if (!h.standardize) h.standardize = provider.prefers_standardization();
    ConceptVector v = train_linear_svm(ds.name, xs, ys, h);
    v.meta.provider = provider.id();
    return v;
}

double concept_score(const ConceptVector& v, std::span<const double> activation) {
    if (activation.size() != v.weights.size())
        throw DataError("activation dimension " + std::to_string(activation.size()) + " does not match concept vector " +
                        std::to_string(v.weights.size()));
    const double norm = std::sqrt(kernels::squared_norm(v.weights));
    if (norm == 0.0) throw DataError("concept vector has zero norm");
    if (v.meta.mean.empty()) return (kernels::dot(v.weights, activation) + v.bias) / norm;
    const auto z = standardized(v, activation);
    return (kernels::dot(v.weights, z) + v.bias) / norm;
}

ConceptMetrics evaluate_concept_vector(const ConceptVector& v, const ConceptDataset& test,
                                       const ActivationProvider& provider) {
    if (test.positives.empty() && test.negatives.empty()) throw DataError("empty test set");
    ConceptMetrics m;
    for (const auto& fen : test.positives) {
        if (concept_score(v, provider.activation(chess::parse_fen(fen))) > 0.0) ++m.tp;
        else ++m.fn;
    }
    for (const auto& fen : test.negatives) {
        if (concept_score(v, provider.activation(chess::parse_fen(fen))) > 0.0) ++m.fp;
        else ++m.tn;
    }
    const double total = static_cast<double>(m.tp + m.fp + m.tn + m.fn);
    m.accuracy = static_cast<double>(m.tp + m.tn) / total;
    m.precision = m.tp + m.fp ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp) : 0.0;
    m.recall = m.tp + m.fn ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn) : 0.0;
    return m;
}

std::vector<ConceptVector> oracle_vectors(const AnalyticFeatureProvider& provider) {
    std::vector<ConceptVector> out;
    const auto& cs = provider.concepts();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        ConceptVector v;
        v.name = cs[i];
        v.weights.assign(cs.size(), 0.0);
        v.weights[i] = 1.0;
        v.meta.provider = provider.id();
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace ccc::concepts
