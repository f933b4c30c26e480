#pragma once

#include <optional>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/chess/types.hpp"
#include "ccc/concepts/provider.hpp"
#include "ccc/concepts/vector.hpp"

namespace ccc::concepts {

struct ConceptPriority {
    ConceptName name = ConceptName::Material;
    double score_before = 0.0;
    double score_after = 0.0;
    double delta = 0.0;
    int rank = 0;
};

enum class PostMovePoint {
    /// Compare against the position after the move and the expected reply,
    /// so both positions share a side to move. Falls back to after_move when
    /// no reply exists.
    after_reply,
    /// Compare against the position right after the move.
    after_move,
};

struct PrioritizeOptions {
    std::size_t k = 3;
    PostMovePoint point = PostMovePoint::after_reply;
};

/// Ranks concepts by |score_after - score_before|, ties by ConceptName order.
/// When the compared position has the opposite side to move and the provider
/// is mover-relative, the post-move score is negated.
std::vector<ConceptPriority> prioritize(const std::vector<ConceptVector>& vectors, const chess::Position& before,
                                        const chess::Move& actual, const std::optional<chess::Move>& expected_reply,
                                        const ActivationProvider& provider, const PrioritizeOptions& options = {});

/// "Pawns, Black Passedpawns, White Kingsafety"
std::string concept_list(const std::vector<ConceptPriority>& priorities);

}  // namespace ccc::concepts
