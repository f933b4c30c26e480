#pragma once

// Line-oriented file formats for the concept pipeline.
//
//   activations: {"dimension": d, "provider": id[, "perspective": "mover"|"white"]}
//                then {"fen": <4-field FEN>, "activation": [d reals]} per line
//   scores:      {"fen": ..., "concept": ..., "score": real} per line
//   vectors:     one ConceptVector per line, reals written round-trip exact
//   dataset:     header {"concept": ...}, then {"fen", "label": 1|-1, "score"}

#include <iosfwd>
#include <string>
#include <vector>

#include "ccc/concepts/dataset.hpp"
#include "ccc/concepts/provider.hpp"
#include "ccc/concepts/vector.hpp"

namespace ccc::concepts {

void write_vectors(std::ostream& out, const std::vector<ConceptVector>& vectors);
std::vector<ConceptVector> read_vectors(std::istream& in);
void save_vectors(const std::string& path, const std::vector<ConceptVector>& vectors);
std::vector<ConceptVector> load_vectors(const std::string& path);

void write_dataset(std::ostream& out, const ConceptDataset& ds);
ConceptDataset read_dataset(std::istream& in);
void save_dataset(const std::string& path, const ConceptDataset& ds);
ConceptDataset load_dataset(const std::string& path);

/// Writes an activation file for `positions` using `provider`.
void write_activations(std::ostream& out, const ActivationProvider& provider,
                       const std::vector<chess::Position>& positions);
FileProvider read_activations(std::istream& in);

ScoreFileLabeler read_scores(std::istream& in, bool analytic_fallback = false);

}  // namespace ccc::concepts
