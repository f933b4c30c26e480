#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/chess/types.hpp"
#include "ccc/commentary/prompt.hpp"
#include "ccc/engine/engine.hpp"
#include "ccc/llm/client.hpp"

namespace ccc::skill {

inline constexpr const char* kMateInOneTheme = "mateIn1";

struct Puzzle {
    std::string id;
    /// Position before the opponent's setup move, as stored in the database.
    std::string setup_fen;
    chess::Position solution_position;
    chess::Move solution_move;
    std::set<std::string> themes;

    std::string solution_san() const;
};

enum class SkillCondition { plain, expert, concept_hint };
inline constexpr std::array<SkillCondition, 3> kSkillConditions = {
    SkillCondition::plain, SkillCondition::expert, SkillCondition::concept_hint};

/// "plain", "expert", "concept"
const char* skill_condition_name(SkillCondition c);
/// Skill table column header: "LLM", "LLM + expert", "LLM + concept (mate-in-one)".
const char* skill_condition_column(SkillCondition c);
/// Accepts the names above plus "concept_hint".
SkillCondition parse_skill_condition(const std::string& s);

struct DroppedRow {
    long line = 0;
    std::string id;
    std::string reason;
};

struct PuzzleSet {
    std::vector<Puzzle> puzzles;
    /// Rows without the mate-in-one theme. Not an error.
    std::size_t filtered = 0;
    std::vector<DroppedRow> dropped;
};

/// Lichess puzzle CSV. The first move of Moves is the opponent's move and is
/// applied to FEN; the second is the solution and must mate. Throws
/// DataError only for a missing header or missing columns.
PuzzleSet load_puzzles(std::istream& csv);
PuzzleSet load_puzzles_file(const std::string& path);

/// Lichess-shaped CSV row for a puzzle (header: kPuzzleCsvHeader).
inline constexpr const char* kPuzzleCsvHeader =
    "PuzzleId,FEN,Moves,Rating,RatingDeviation,Popularity,NbPlays,Themes,GameUrl,OpeningTags";

/// Throws UsageError when the expert condition has no summary.
commentary::PromptBundle build_skill_prompt(SkillCondition cond, const Puzzle& puzzle,
                                            const std::optional<std::string>& engine_summary = std::nullopt);

enum class AnswerCategory { correct, wrong_move, illegal_or_unparseable, gateway_error };
const char* answer_category_name(AnswerCategory c);

/// First SAN-looking token of the reply with surrounding punctuation
/// stripped; the first token when none looks like SAN.
std::string extract_answer(const std::string& text);
AnswerCategory check_answer(const Puzzle& puzzle, const std::string& answer_text);

struct SkillAttempt {
    std::string id;
    SkillCondition condition = SkillCondition::plain;
    std::string answer;
    AnswerCategory category = AnswerCategory::wrong_move;
    std::string error;
};

struct SkillOptions {
    /// Drop gateway failures from the denominator.
    bool exclude_gateway_errors = false;
    /// Concurrent puzzle evaluations; the client's own bound still applies.
    int workers = 4;
};

struct SkillReport {
    SkillCondition condition = SkillCondition::plain;
    /// Sorted by puzzle id.
    std::vector<SkillAttempt> attempts;
    bool exclude_gateway_errors = false;

    std::size_t count(AnswerCategory c) const;
    std::size_t attempted() const;
    double accuracy() const;
};

/// Engine analysis for the expert condition: "best move - Bxc3#".
std::string skill_engine_summary(engine::Engine& engine, const Puzzle& puzzle);

/// Throws UsageError for an empty puzzle list, or for the expert condition
/// without an engine.
SkillReport run_skill_eval(llm::Client& client, const std::vector<Puzzle>& puzzles, SkillCondition cond,
                           engine::Engine* engine = nullptr, const SkillOptions& opts = {});

/// One {"id","condition","answer","category"} object per line.
void write_attempts_jsonl(std::ostream& out, const SkillReport& report);

struct SkillTableRow {
    std::string method;
    std::vector<SkillReport> reports;
};

/// A "Language models" column, then one column per condition present in
/// any row, accuracies to three decimals. A blank cell marks a condition a
/// method was not run under.
std::string skill_table_csv(const std::vector<SkillTableRow>& rows);

}  // namespace ccc::skill
