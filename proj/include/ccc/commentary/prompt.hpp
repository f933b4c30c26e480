#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccc/chess/attacks.hpp"
#include "ccc/chess/position.hpp"
#include "ccc/concepts/prioritize.hpp"
#include "ccc/engine/engine.hpp"
#include "ccc/llm/types.hpp"

namespace ccc::commentary {

enum class Condition { plain, expert, expert_concept };
const char* condition_name(Condition c);
/// "plain", "expert", "expert_concept" (also "expert+concept", "ccc").
Condition parse_condition(const std::string& s);

/// A chat prompt: system text, few-shot (user, assistant) pairs, final user
/// text. Shared by commentary generation, judging and the skill harness.
struct PromptBundle {
    std::string system;
    std::vector<std::pair<std::string, std::string>> fewshot;
    std::string user;
    Condition condition = Condition::plain;

    std::vector<llm::Message> messages() const;
};

/// One worked example. Attacks are recomputed from the FEN when rendered so
/// the bank can never show a capture that does not exist.
struct FewShotExample {
    std::string fen;
    std::string move_san;
    int move_number = 0;
    std::string engine_summary;
    std::vector<concepts::ConceptName> concepts;
    std::vector<double> deltas;
    std::string reasoning;
    std::string comment;
};

struct FewShotBank {
    std::string version;
    std::vector<FewShotExample> examples;
};

/// The bank compiled into the library.
const FewShotBank& default_fewshot_bank();
FewShotBank parse_fewshot_bank(const std::string& json_text);
FewShotBank load_fewshot_bank(const std::string& path);

struct GenerationInput {
    chess::Position position;
    chess::Move move;
    /// Move number printed in the prompt ("30... Bd2+"); 0 uses the FEN's.
    int move_number = 0;
    std::optional<engine::EngineEval> eval;
    std::vector<concepts::ConceptPriority> priorities;
    std::vector<chess::Attack> attacks;
};

inline constexpr const char* kCommentDelimiter = "Comment:";

/// Deterministic prompt assembly. Throws UsageError when the condition's
/// inputs are missing and DataError when they contradict the position (an
/// illegal move, an evaluation of a different move, an attack that does not
/// exist in the position).
PromptBundle build_generation_prompt(const GenerationInput& in, Condition condition,
                                     const FewShotBank& bank = default_fewshot_bank());

/// "Pawns, Black Passedpawns, White Kingsafety (score changes: +1.20, -0.85, +0.40)"
std::string concept_line(const std::vector<concepts::ConceptName>& names, const std::vector<double>& deltas);

}  // namespace ccc::commentary
