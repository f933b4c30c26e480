#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccc/commentary/commentary.hpp"
#include "ccc/commentary/prompt.hpp"
#include "ccc/concepts/provider.hpp"
#include "ccc/concepts/vector.hpp"
#include "ccc/engine/engine.hpp"
#include "ccc/eval/gcc_eval.hpp"
#include "ccc/llm/client.hpp"

namespace ccc::service {

/// Concept vectors plus the provider they were trained against.
struct ConceptModel {
    std::vector<concepts::ConceptVector> vectors;
    std::shared_ptr<const concepts::ActivationProvider> provider;
};

/// "oracle" builds basis vectors over the analytic evaluation-unit provider.
/// Anything else is a vector file; its provider is taken from the vectors'
/// metadata, or from `activations` ("synthetic" or "file:PATH") when given.
ConceptModel load_concept_model(const std::string& spec, const std::string& activations = "");

/// "uci:PATH[ ARGS...]" or "script:TRANSCRIPT".
std::unique_ptr<engine::Engine> open_engine(const std::string& spec, int depth = 16);

/// Shared state behind the CLI and the HTTP server. Every member but the
/// client may be absent; operations that need one throw UsageError.
struct Pipeline {
    std::shared_ptr<llm::Client> llm;
    std::shared_ptr<engine::Engine> engine;
    std::optional<ConceptModel> concepts;
    std::shared_ptr<commentary::SessionStore> sessions = std::make_shared<commentary::SessionStore>();
    int similarity_cp = 30;
};

struct AnalyzeRequest {
    std::string fen;
    std::string move_san;
    commentary::Condition condition = commentary::Condition::expert_concept;
    /// 0: the FEN's full-move number.
    int move_number = 0;
};

struct AnalyzeResult {
    commentary::Commentary commentary;
    std::string move_label;
    std::vector<concepts::ConceptPriority> concepts;
    std::optional<std::string> engine_summary;
    std::vector<std::string> attacks;
    std::string session_id;
};

/// Parses and validates the request, runs the engine and concept ranking
/// when available, generates the comment and opens a session. Illegal moves
/// raise chess::SanError; a condition whose inputs are unavailable raises
/// UsageError.
AnalyzeResult analyze(Pipeline& pipe, const AnalyzeRequest& req, bool open_session = true);

struct EvaluateRequest {
    std::string fen;
    std::string move_san;
    std::string comment;
    int move_number = 0;
    std::vector<eval::Dimension> dims{eval::kDimensions.begin(), eval::kDimensions.end()};
};

/// Four-dimension GCC-Eval. With an engine the summary is computed; without
/// one, Relevance and Completeness record an error.
eval::EvalScores evaluate(Pipeline& pipe, const EvaluateRequest& req);

nlohmann::ordered_json analyze_json(const AnalyzeResult& r);
nlohmann::ordered_json eval_json(const eval::EvalScores& s);

}  // namespace ccc::service
