#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/concepts/concept.hpp"
#include "ccc/concepts/labeler.hpp"

namespace ccc::concepts {

struct ConceptDataset {
    ConceptName name = ConceptName::Material;
    std::vector<std::string> positives;  // FENs
    std::vector<std::string> negatives;
    std::map<std::string, double> source_scores;  // FEN -> label
};

struct ScoredFen {
    std::string fen;
    double score = 0.0;
};

/// Top and bottom ceil(fraction * N) entries by score; ties broken by FEN text.
/// Entries with duplicate four-field FEN keys are dropped (first one wins)
/// before ranking. Throws DataError when all scores are equal, UsageError for a
/// fraction outside (0, 0.5] or fewer than 20 entries.
ConceptDataset select_extremes(ConceptName c, std::vector<ScoredFen> entries, double fraction);

/// Labels every FEN with `labeler` then calls select_extremes.
ConceptDataset build_concept_dataset(const std::vector<std::string>& fens, ConceptName c, const Labeler& labeler,
                                     double fraction);

/// Deterministic split of a dataset into train and held-out parts. Each class
/// is shuffled with `seed` and its first round(test_fraction * n) items go to
/// the test part, so class balance is preserved.
std::pair<ConceptDataset, ConceptDataset> split_dataset(const ConceptDataset& ds, double test_fraction,
                                                        std::uint64_t seed);

/// Fisher-Yates with modulo draws from mt19937_64. Unlike std::shuffle the
/// permutation is the same on every standard library.
template <class T>
void stable_shuffle(std::vector<T>& items, std::uint64_t seed);

/// Positions visited by seeded random playouts from the initial position,
/// unique by four-field FEN. Playout length is drawn from [1, max_plies].
std::vector<chess::Position> sample_positions(std::size_t count, std::uint64_t seed, int max_plies = 160);

}  // namespace ccc::concepts

#include <random>

template <class T>
void ccc::concepts::stable_shuffle(std::vector<T>& items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}
