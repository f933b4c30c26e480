#include "ccc/concepts/provider.hpp"

#include <cmath>
#include <fstream>

#include "ccc/concepts/io.hpp"
#include "ccc/concepts/labeler.hpp"

namespace ccc::concepts {

std::vector<double> SyntheticProvider::activation(const chess::Position& p) const {
    std::vector<double> x(kDimension, 0.0);
    for (int i = 0; i < 64; ++i)
        if (const auto piece = p.at(chess::Square::from_index(i))) x[static_cast<std::size_t>(piece->index() * 64 + i)] = 1.0;
    const chess::CastlingRight rights[] = {chess::kWhiteKingside, chess::kWhiteQueenside, chess::kBlackKingside,
                                           chess::kBlackQueenside};
    for (std::size_t k = 0; k < 4; ++k)
        if (p.can_castle(rights[k])) x[768 + k] = 1.0;
    x[772] = p.side_to_move() == chess::Color::White ? 1.0 : 0.0;
    return x;
}

FileProvider::FileProvider(std::string id, std::size_t dimension, bool mover_relative)
    : id_(std::move(id)), dimension_(dimension), mover_relative_(mover_relative) {
    if (dimension_ == 0) throw DataError("activation dimension must be positive");
}

FileProvider FileProvider::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open activation file " + path);
    return read_activations(in);
}

void FileProvider::insert(const std::string& fen_key, std::vector<double> activation) {
    if (activation.size() != dimension_)
        throw DataError("activation for " + fen_key + " has dimension " + std::to_string(activation.size()) +
                        ", expected " + std::to_string(dimension_));
    for (double v : activation)
        if (!std::isfinite(v)) throw DataError("non-finite activation for " + fen_key);
    table_[chess::fen_key(std::string_view(fen_key))] = std::move(activation);
}

bool FileProvider::contains(const chess::Position& p) const { return table_.count(chess::fen_key(p)) != 0; }

std::vector<double> FileProvider::activation(const chess::Position& p) const {
    const auto it = table_.find(chess::fen_key(p));
    if (it == table_.end()) throw DataError("no activation for position " + chess::fen_key(p));
    return it->second;
}

namespace {

std::vector<ConceptName> or_analytic(std::vector<ConceptName> concepts) {
    if (concepts.empty()) {
        const auto a = analytic_concepts();
        concepts.assign(a.begin(), a.end());
    }
    return concepts;
}

}  // namespace

AnalyticFeatureProvider::AnalyticFeatureProvider(std::string id, std::vector<ConceptName> concepts,
                                                 std::vector<double> offset, std::vector<double> divisor)
    : id_(std::move(id)), concepts_(std::move(concepts)), offset_(std::move(offset)), divisor_(std::move(divisor)) {
    if (concepts_.empty() || offset_.size() != concepts_.size() || divisor_.size() != concepts_.size())
        throw UsageError("analytic feature provider: inconsistent scaling");
    for (double d : divisor_)
        if (!(d > 0.0)) throw UsageError("analytic feature provider: divisors must be positive");
    for (ConceptName c : concepts_)
        if (!has_analytic_labeler(c)) throw LabelerUnavailable(c);
}

AnalyticFeatureProvider AnalyticFeatureProvider::fit(const std::vector<chess::Position>& reference,
                                                     std::vector<ConceptName> concepts) {
    concepts = or_analytic(std::move(concepts));
    if (reference.size() < 2) throw UsageError("analytic feature provider needs at least 2 reference positions");
    const std::size_t d = concepts.size();
    std::vector<double> mean(d, 0.0), m2(d, 0.0);
    // Welford
    double n = 0.0;
    for (const auto& p : reference) {
        n += 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double x = label_concept(p, concepts[i]);
            const double delta = x - mean[i];
            mean[i] += delta / n;
            m2[i] += delta * (x - mean[i]);
        }
    }
    std::vector<double> sd(d);
    for (std::size_t i = 0; i < d; ++i) {
        sd[i] = std::sqrt(m2[i] / n);
        if (sd[i] == 0.0) sd[i] = 1.0;
    }
    return AnalyticFeatureProvider("analytic-zscore", std::move(concepts), std::move(mean), std::move(sd));
}

double evaluation_unit_weight(ConceptName c) {
    switch (c) {
        case ConceptName::Material:
        case ConceptName::Pawns: return 1.0;
        case ConceptName::WhiteMobility:
        case ConceptName::BlackMobility: return 0.1;
        case ConceptName::WhiteKingsafety:
        case ConceptName::BlackKingsafety:
        case ConceptName::WhitePassedpawns:
        case ConceptName::BlackPassedpawns: return 0.5;
        default: throw LabelerUnavailable(c);
    }
}

AnalyticFeatureProvider AnalyticFeatureProvider::evaluation_units(std::vector<ConceptName> concepts) {
    concepts = or_analytic(std::move(concepts));
    std::vector<double> divisor;
    for (ConceptName c : concepts) divisor.push_back(1.0 / evaluation_unit_weight(c));
    std::vector<double> offset(concepts.size(), 0.0);
    return AnalyticFeatureProvider("analytic-eval-units", std::move(concepts), std::move(offset), std::move(divisor));
}

AnalyticFeatureProvider AnalyticFeatureProvider::raw(std::vector<ConceptName> concepts) {
    concepts = or_analytic(std::move(concepts));
    const std::size_t d = concepts.size();
    return AnalyticFeatureProvider("analytic-raw", std::move(concepts), std::vector<double>(d, 0.0),
                                   std::vector<double>(d, 1.0));
}

std::vector<double> AnalyticFeatureProvider::activation(const chess::Position& p) const {
    std::vector<double> x(concepts_.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (label_concept(p, concepts_[i]) - offset_[i]) / divisor_[i];
    return x;
}

}  // namespace ccc::concepts
