#include "ccc/concepts/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "ccc/chess/movegen.hpp"

namespace ccc::concepts {

ConceptDataset select_extremes(ConceptName c, std::vector<ScoredFen> entries, double fraction) {
    if (!(fraction > 0.0 && fraction <= 0.5)) throw UsageError("fraction must lie in (0, 0.5]");

    std::unordered_set<std::string> seen;
    std::vector<ScoredFen> unique;
    unique.reserve(entries.size());
    for (auto& e : entries) {
        if (!std::isfinite(e.score)) throw DataError("non-finite concept score for " + e.fen);
        if (seen.insert(chess::fen_key(std::string_view(e.fen))).second) unique.push_back(std::move(e));
    }
    if (unique.size() < 20) throw UsageError("need at least 20 distinct positions, got " + std::to_string(unique.size()));

    const auto [lo, hi] = std::minmax_element(unique.begin(), unique.end(),
                                              [](const ScoredFen& a, const ScoredFen& b) { return a.score < b.score; });
    if (lo->score == hi->score)
        throw DataError("degenerate concept " + std::string(concept_display_name(c)) + ": all scores identical");

    const std::size_t total = unique.size();
    std::size_t n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
    n = std::min(n, total / 2);

    std::sort(unique.begin(), unique.end(), [](const ScoredFen& a, const ScoredFen& b) {
        return a.score != b.score ? a.score < b.score : a.fen < b.fen;
    });

    ConceptDataset ds;
    ds.name = c;
    for (std::size_t i = 0; i < n; ++i) ds.negatives.push_back(unique[i].fen);
    // Positives come from what is left, so a tie group straddling both ends
    // cannot put one FEN in both classes.
    std::vector<ScoredFen> rest(unique.begin() + static_cast<std::ptrdiff_t>(n), unique.end());
    std::stable_sort(rest.begin(), rest.end(), [](const ScoredFen& a, const ScoredFen& b) {
        return a.score != b.score ? a.score > b.score : a.fen < b.fen;
    });
    for (std::size_t i = 0; i < n; ++i) ds.positives.push_back(rest[i].fen);

    for (const auto& e : unique) ds.source_scores.emplace(e.fen, e.score);
    return ds;
}

ConceptDataset build_concept_dataset(const std::vector<std::string>& fens, ConceptName c, const Labeler& labeler,
                                     double fraction) {
    std::vector<ScoredFen> entries;
    entries.reserve(fens.size());
    for (const auto& fen : fens) entries.push_back({fen, labeler.label(chess::parse_fen(fen), c)});
    return select_extremes(c, std::move(entries), fraction);
}

std::pair<ConceptDataset, ConceptDataset> split_dataset(const ConceptDataset& ds, double test_fraction,
                                                        std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw UsageError("test fraction must lie in (0, 1)");
    ConceptDataset train, test;
    train.name = test.name = ds.name;

    auto split = [&](std::vector<std::string> items, std::uint64_t s, std::vector<std::string>& tr,
                     std::vector<std::string>& te) {
        stable_shuffle(items, s);
        const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(items.size())));
        te.assign(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(n_test));
        tr.assign(items.begin() + static_cast<std::ptrdiff_t>(n_test), items.end());
    };
    split(ds.positives, seed, train.positives, test.positives);
    split(ds.negatives, seed ^ 0x9e3779b97f4a7c15ULL, train.negatives, test.negatives);

    for (auto* part : {&train, &test}) {
        for (const auto* list : {&part->positives, &part->negatives})
            for (const auto& fen : *list)
                if (auto it = ds.source_scores.find(fen); it != ds.source_scores.end())
                    part->source_scores.emplace(fen, it->second);
    }
    return {std::move(train), std::move(test)};
}

std::vector<chess::Position> sample_positions(std::size_t count, std::uint64_t seed, int max_plies) {
    if (max_plies < 1) throw UsageError("max_plies must be positive");
    std::mt19937_64 rng(seed);
    std::unordered_set<std::string> seen;
    std::vector<chess::Position> out;
    out.reserve(count);
    std::size_t attempts = 0;
    const std::size_t max_attempts = count * 20 + 100;
    while (out.size() < count) {
        if (++attempts > max_attempts) throw DataError("position sampler could not find enough distinct positions");
        chess::Position p = chess::Position::initial();
        const int plies = static_cast<int>(rng() % static_cast<std::uint64_t>(max_plies)) + 1;
        for (int i = 0; i < plies; ++i) {
            const auto moves = chess::legal_moves_unannotated(p);
            if (moves.empty()) break;
            p = chess::apply_move_unchecked(p, moves[rng() % moves.size()]);
        }
        if (seen.insert(chess::fen_key(p)).second) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ccc::concepts
