#include "ccc/engine/summary.hpp"

#include <cstdlib>

#include "ccc/chess/notation.hpp"
#include "ccc/error.hpp"

namespace ccc::engine {

std::string score_label(const chess::Position& p, const chess::Move& move, const Score& score) {
    if (score.is_mate() && score.value() == 1) {
        std::string san = chess::format_san(p, move);
        if (!san.empty() && san.back() == '#') return san;
    }
    return score.text();
}

std::vector<std::string> classify_move(const EngineEval& ev, int threshold_cp) {
    if (!ev.actual_move || !ev.actual_score) throw UsageError("classify_move needs an actual move and its score");
    std::vector<std::string> out;
    for (const auto& line : ev.lines) {
        const bool same = line.move == *ev.actual_move;
        const bool close = !line.score.is_mate() && !ev.actual_score->is_mate() &&
                           std::abs(line.score.value() - ev.actual_score->value()) <= threshold_cp;
        out.push_back(same || close ? kSimilarLabel : score_label(ev.position, line.move, line.score));
    }
    return out;
}

namespace {

std::string move_with(const chess::Position& p, const chess::Move& m, const std::string& tail) {
    const std::string san = chess::format_san(p, m);
    return tail == san ? san : san + " " + tail;
}

}  // namespace

std::string format_eval_summary(const EngineEval& ev, int threshold_cp) {
    const auto& p = ev.position;
    if (!ev.actual_move) {
        if (ev.lines.empty()) return "";
        const auto& best = ev.lines.front();
        return "best move - " + move_with(p, best.move, score_label(p, best.move, best.score));
    }
    const auto labels = classify_move(ev, threshold_cp);
    std::string out = "actual move - " + move_with(p, *ev.actual_move, score_label(p, *ev.actual_move, *ev.actual_score));
    if (ev.expected_reply) out += ", expected reply - " + chess::format_uci_move(*ev.expected_reply);
    static const char* kNames[] = {"best move", "second best move"};
    for (std::size_t i = 0; i < ev.lines.size() && i < 2; ++i)
        out += std::string(", ") + kNames[i] + " - " + move_with(p, ev.lines[i].move, labels[i]);
    return out;
}

}  // namespace ccc::engine
