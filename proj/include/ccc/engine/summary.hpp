#pragma once

#include <string>
#include <vector>

#include "ccc/engine/engine.hpp"

namespace ccc::engine {

inline constexpr int kDefaultSimilarityCp = 30;
inline constexpr const char* kSimilarLabel = "similar to actual move";

/// How a scored line reads in prompts: "232cp", "#3", or for mate in one the
/// move's own SAN (which already ends in '#').
std::string score_label(const chess::Position& p, const chess::Move& move, const Score& score);

/// One label per engine line: "similar to actual move" when the line plays the
/// actual move or both scores are centipawns within the threshold, else the
/// line's score label. Requires ev.actual_move and ev.actual_score.
std::vector<std::string> classify_move(const EngineEval& ev, int threshold_cp = kDefaultSimilarityCp);

/// "actual move - Bd2+ 232cp, expected reply - f4g3, best move - Bd2+ similar
/// to actual move, second best move - Nc5 similar to actual move". Without an
/// actual move only the best line is rendered ("best move - Bxc3#").
std::string format_eval_summary(const EngineEval& ev, int threshold_cp = kDefaultSimilarityCp);

}  // namespace ccc::engine
