#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace ccc::concepts {

/// Probed concepts in report order, followed by hint concepts. The numeric
/// order is the tie-break order used when ranking.
enum class ConceptName : std::uint8_t {
    Material,
    Imbalance,
    Pawns,
    WhiteKnights,
    BlackKnights,
    WhiteBishop,
    BlackBishop,
    WhiteRooks,
    BlackRooks,
    WhiteQueens,
    BlackQueens,
    WhiteMobility,
    BlackMobility,
    WhiteKingsafety,
    BlackKingsafety,
    WhiteThreats,
    BlackThreats,
    WhiteSpace,
    BlackSpace,
    WhitePassedpawns,
    BlackPassedpawns,
    // hint concepts
    MateInOne,
};

enum class ConceptKind { table, hint };

inline constexpr std::size_t kTableConceptCount = 21;

/// Display name, e.g. "Black Passedpawns", "mate-in-one".
std::string_view concept_display_name(ConceptName c);
/// Accepts display names case-insensitively, with or without the space
/// ("White Mobility", "whitemobility", "White_Mobility").
std::optional<ConceptName> parse_concept(std::string_view text);
ConceptKind concept_kind(ConceptName c);

/// The 21 probed concepts, in report order.
std::span<const ConceptName> table_concepts();
/// Concepts with a closed-form labeler (see label_concept).
std::span<const ConceptName> analytic_concepts();
bool has_analytic_labeler(ConceptName c);

}  // namespace ccc::concepts
