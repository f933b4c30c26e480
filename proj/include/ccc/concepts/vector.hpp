#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccc/concepts/concept.hpp"
#include "ccc/concepts/dataset.hpp"
#include "ccc/concepts/provider.hpp"

namespace ccc::concepts {

struct TrainingHyper {
    std::uint64_t seed = 1;
    int epochs = 20;
    double lambda = 1e-4;
    /// Standardize each activation dimension with training-set statistics.
    /// Unset means "ask the provider".
    std::optional<bool> standardize;
};

struct TrainingMeta {
    std::uint64_t seed = 0;
    int epochs = 0;
    double lambda = 0.0;
    std::size_t n_train = 0;
    std::string provider;
    /// Per-dimension standardization; empty when training used raw inputs.
    std::vector<double> mean;
    std::vector<double> scale;
};

struct ConceptVector {
    ConceptName name = ConceptName::Material;
    std::vector<double> weights;
    double bias = 0.0;
    TrainingMeta meta;
};

/// Linear SVM by Pegasos-style primal subgradient descent on
/// (lambda/2)|w|^2 + mean hinge, step 1/(lambda t). The bias is unregularized:
/// it takes the same subgradient steps and is reset to its exact hinge-loss
/// minimizer at the end of every epoch. Deterministic for a fixed seed.
ConceptVector train_concept_vector(const ConceptDataset& ds, const ActivationProvider& provider,
                                   const TrainingHyper& hyper = {});

/// Same, on pre-computed activations. labels are +1 / -1.
ConceptVector train_linear_svm(ConceptName c, const std::vector<std::vector<double>>& xs, const std::vector<int>& ys,
                               const TrainingHyper& hyper = {});

/// Signed distance (w.x + b) / |w| after applying stored standardization.
double concept_score(const ConceptVector& v, std::span<const double> activation);

struct ConceptMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

/// Binary metrics with "score > 0" as the positive prediction. Precision is 0
/// when nothing is predicted positive, recall 0 when there are no positives.
ConceptMetrics evaluate_concept_vector(const ConceptVector& v, const ConceptDataset& test,
                                       const ActivationProvider& provider);

/// Unit basis vectors over an AnalyticFeatureProvider: concept_score then
/// equals the standardized analytic label.
std::vector<ConceptVector> oracle_vectors(const AnalyticFeatureProvider& provider);

}  // namespace ccc::concepts
