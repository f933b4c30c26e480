#pragma once

#include <map>
#include <string>
#include <utility>

#include "ccc/chess/position.hpp"
#include "ccc/concepts/concept.hpp"
#include "ccc/error.hpp"

namespace ccc::concepts {

/// Raised when a concept has neither an analytic form nor an external score.
class LabelerUnavailable : public UsageError {
public:
    explicit LabelerUnavailable(ConceptName c)
        : UsageError("labeler unavailable for concept " + std::string(concept_display_name(c))) {}
};

// Closed-form concept terms.
int material_balance(const chess::Position& p);            // P1 N3 B3 R5 Q9, White - Black
int pawn_balance(const chess::Position& p);                // White pawns - Black pawns
int mobility(const chess::Position& p, chess::Color side);  // legal moves with `side` to move
/// Passed pawns counted Stockfish-style: only the frontmost pawn of a file can
/// be passed, and it is passed when no enemy pawn stands ahead of it on its
/// own or an adjacent file.
int passed_pawns(const chess::Position& p, chess::Color side);
/// Minus the number of squares next to `side`'s king attacked by the opponent.
int king_safety(const chess::Position& p, chess::Color side);

/// Analytic label; throws LabelerUnavailable for concepts without one.
double label_concept(const chess::Position& p, ConceptName c);

class Labeler {
public:
    virtual ~Labeler() = default;
    virtual double label(const chess::Position& p, ConceptName c) const = 0;
};

class AnalyticLabeler final : public Labeler {
public:
    double label(const chess::Position& p, ConceptName c) const override { return label_concept(p, c); }
};

/// External scores keyed by (four-field FEN, concept). Falls back to the
/// analytic form when `analytic_fallback` is set and no score is stored.
class ScoreFileLabeler final : public Labeler {
public:
    explicit ScoreFileLabeler(bool analytic_fallback = false) : fallback_(analytic_fallback) {}
    static ScoreFileLabeler load(const std::string& path, bool analytic_fallback = false);

    void insert(const std::string& fen_key, ConceptName c, double score);
    std::size_t size() const { return scores_.size(); }
    double label(const chess::Position& p, ConceptName c) const override;

private:
    bool fallback_;
    std::map<std::pair<std::string, ConceptName>, double> scores_;
};

}  // namespace ccc::concepts
