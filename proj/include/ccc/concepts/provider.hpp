#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/concepts/concept.hpp"

namespace ccc::concepts {

/// Maps a position to a fixed-length activation vector.
class ActivationProvider {
public:
    virtual ~ActivationProvider() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::string id() const = 0;
    virtual std::vector<double> activation(const chess::Position& p) const = 0;
    /// True when activations are encoded from the side to move's point of
    /// view (network inputs usually are). Prioritization negates post-move
    /// scores only for such providers.
    virtual bool mover_relative() const { return false; }
    /// Raw activations with arbitrary per-dimension scale; training
    /// standardizes them by default.
    virtual bool prefers_standardization() const { return false; }
};

/// 773-dim one-hot encoding: 12x64 piece-square bits (piece index * 64 +
/// square; white P N B R Q K then black), 4 castling bits (K Q k q), side to
/// move (1 = White).
class SyntheticProvider final : public ActivationProvider {
public:
    static constexpr std::size_t kDimension = 773;
    std::size_t dimension() const override { return kDimension; }
    std::string id() const override { return "synthetic-onehot-773"; }
    std::vector<double> activation(const chess::Position& p) const override;
};

/// Activations read from a file, keyed by the four-field FEN.
class FileProvider final : public ActivationProvider {
public:
    FileProvider(std::string id, std::size_t dimension, bool mover_relative = true);
    static FileProvider load(const std::string& path);

    void insert(const std::string& fen_key, std::vector<double> activation);
    bool contains(const chess::Position& p) const;
    std::size_t size() const { return table_.size(); }

    std::size_t dimension() const override { return dimension_; }
    std::string id() const override { return id_; }
    /// Throws DataError for positions missing from the file.
    std::vector<double> activation(const chess::Position& p) const override;
    bool mover_relative() const override { return mover_relative_; }
    bool prefers_standardization() const override { return true; }

private:
    std::string id_;
    std::size_t dimension_;
    bool mover_relative_;
    std::unordered_map<std::string, std::vector<double>> table_;
};

/// Oracle provider for sanity checks: coordinate i is the analytic label of
/// concepts()[i] mapped through (label - offset) / divisor. Paired with basis
/// vectors (oracle_vectors) its concept scores are exactly those rescaled
/// labels, so the choice of offset/divisor is the choice of units in which
/// concept deltas are compared.
class AnalyticFeatureProvider final : public ActivationProvider {
public:
    AnalyticFeatureProvider(std::string id, std::vector<ConceptName> concepts, std::vector<double> offset,
                            std::vector<double> divisor);

    /// z-scores with mean and population standard deviation of `reference`.
    static AnalyticFeatureProvider fit(const std::vector<chess::Position>& reference,
                                       std::vector<ConceptName> concepts = {});
    /// Labels in pawn units, weighted as in Shannon's classic evaluation: one
    /// unit per material point, 0.1 per legal move, 0.5 per passed pawn or
    /// attacked king-zone square.
    static AnalyticFeatureProvider evaluation_units(std::vector<ConceptName> concepts = {});
    /// Unscaled labels.
    static AnalyticFeatureProvider raw(std::vector<ConceptName> concepts = {});

    const std::vector<ConceptName>& concepts() const { return concepts_; }
    const std::vector<double>& offset() const { return offset_; }
    const std::vector<double>& divisor() const { return divisor_; }

    std::size_t dimension() const override { return concepts_.size(); }
    std::string id() const override { return id_; }
    std::vector<double> activation(const chess::Position& p) const override;

private:
    std::string id_;
    std::vector<ConceptName> concepts_;
    std::vector<double> offset_;
    std::vector<double> divisor_;
};

/// Pawn-unit weight of one label unit (see evaluation_units).
double evaluation_unit_weight(ConceptName c);

}  // namespace ccc::concepts
