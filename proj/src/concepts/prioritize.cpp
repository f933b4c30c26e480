#include "ccc/concepts/prioritize.hpp"

#include <algorithm>
#include <cmath>

#include "ccc/chess/movegen.hpp"

namespace ccc::concepts {

std::vector<ConceptPriority> prioritize(const std::vector<ConceptVector>& vectors, const chess::Position& before,
                                        const chess::Move& actual, const std::optional<chess::Move>& expected_reply,
                                        const ActivationProvider& provider, const PrioritizeOptions& options) {
    if (vectors.empty()) throw UsageError("prioritize: no concept vectors supplied");

    const chess::Position moved = chess::apply_move(before, actual);
    chess::Position after = moved;
    if (options.point == PostMovePoint::after_reply && expected_reply) after = chess::apply_move(moved, *expected_reply);
    const bool flip = provider.mover_relative() && after.side_to_move() != before.side_to_move();

    const auto x_before = provider.activation(before);
    const auto x_after = provider.activation(after);

    std::vector<ConceptPriority> all;
    all.reserve(vectors.size());
    for (const auto& v : vectors) {
        ConceptPriority cp;
        cp.name = v.name;
        cp.score_before = concept_score(v, x_before);
        cp.score_after = concept_score(v, x_after);
        if (flip) cp.score_after = -cp.score_after;
        cp.delta = cp.score_after - cp.score_before;
        all.push_back(cp);
    }
    std::stable_sort(all.begin(), all.end(), [](const ConceptPriority& a, const ConceptPriority& b) {
        const double da = std::abs(a.delta), db = std::abs(b.delta);
        if (da != db) return da > db;
        return a.name < b.name;
    });
    if (all.size() > options.k) all.resize(options.k);
    for (std::size_t i = 0; i < all.size(); ++i) all[i].rank = static_cast<int>(i + 1);
    return all;
}

std::string concept_list(const std::vector<ConceptPriority>& priorities) {
    std::string out;
    for (const auto& p : priorities) {
        if (!out.empty()) out += ", ";
        out += concept_display_name(p.name);
    }
    return out;
}

}  // namespace ccc::concepts
