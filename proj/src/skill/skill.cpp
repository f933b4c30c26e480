#include "ccc/skill/skill.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/engine/summary.hpp"
#include "ccc/error.hpp"
#include "ccc/io/csv.hpp"

namespace ccc::skill {

namespace {

constexpr const char* kSystemBase =
    "You will be given a chess board, formatted with Forsyth-Edwards notation(FEN) string.\n"
    "Your task is to find the best move of this board.";
constexpr const char* kSystemHint = " You can make checkmate in one move.";
constexpr const char* kSystemTail = "\nPlease answer the best move in standard algebraic notation(SAN).";

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::string strip_punct(std::string tok) {
    static const std::string lead = "*\"'`([{<";
    static const std::string trail = ".,;:!?)]}>\"'`*";
    std::size_t b = 0;
    while (b < tok.size() && lead.find(tok[b]) != std::string::npos) ++b;
    tok.erase(0, b);
    // "1...Bxc3#" and "18." prefixes
    static const std::regex move_number(R"(^\d+\.+)");
    tok = std::regex_replace(tok, move_number, "", std::regex_constants::format_first_only);
    while (!tok.empty() && trail.find(tok.back()) != std::string::npos) tok.pop_back();
    return tok;
}

bool san_like(const std::string& tok) {
    static const std::regex re(
        R"(^(O-O(-O)?|0-0(-0)?|[KQRBN][a-h]?[1-8]?x?[a-h][1-8]|[a-h](x[a-h])?[1-8](=?[QRBNqrbn])?)[+#]?$)");
    return std::regex_match(tok, re);
}

}  // namespace

std::string Puzzle::solution_san() const { return chess::format_san(solution_position, solution_move); }

const char* skill_condition_name(SkillCondition c) {
    switch (c) {
        case SkillCondition::plain: return "plain";
        case SkillCondition::expert: return "expert";
        case SkillCondition::concept_hint: return "concept";
    }
    return "plain";
}

const char* skill_condition_column(SkillCondition c) {
    switch (c) {
        case SkillCondition::plain: return "LLM";
        case SkillCondition::expert: return "LLM + expert";
        case SkillCondition::concept_hint: return "LLM + concept (mate-in-one)";
    }
    return "LLM";
}

SkillCondition parse_skill_condition(const std::string& s) {
    if (s == "plain") return SkillCondition::plain;
    if (s == "expert") return SkillCondition::expert;
    if (s == "concept" || s == "concept_hint") return SkillCondition::concept_hint;
    throw UsageError("unknown skill condition '" + s + "' (expected plain, expert or concept)");
}

PuzzleSet load_puzzles(std::istream& csv) {
    io::CsvReader reader(csv);
    const auto header_row = reader.next();
    if (!header_row) throw DataError("puzzle CSV is empty");
    const io::CsvHeader header(*header_row, {"PuzzleId", "FEN", "Moves", "Themes"});
    const auto c_id = header.index("PuzzleId"), c_fen = header.index("FEN"), c_moves = header.index("Moves"),
               c_themes = header.index("Themes");

    PuzzleSet set;
    for (;;) {
        std::optional<std::vector<std::string>> row;
        try {
            row = reader.next();
        } catch (const DataError& e) {
            set.dropped.push_back({reader.line(), "", e.what()});
            break;
        }
        if (!row) break;
        if (row->size() == 1 && row->front().empty()) continue;
        const long line = reader.line();
        if (row->size() != header.size()) {
            set.dropped.push_back({line, row->empty() ? "" : row->front(),
                                   "expected " + std::to_string(header.size()) + " fields, found " +
                                       std::to_string(row->size())});
            continue;
        }
        const auto& f = *row;
        Puzzle pz;
        pz.id = f[c_id];
        for (auto& t : split_ws(f[c_themes])) pz.themes.insert(t);
        if (!pz.themes.count(kMateInOneTheme)) {
            ++set.filtered;
            continue;
        }
        const auto moves = split_ws(f[c_moves]);
        if (moves.size() != 2) {
            set.dropped.push_back({line, pz.id, "expected 2 moves, found " + std::to_string(moves.size())});
            continue;
        }
        try {
            pz.setup_fen = f[c_fen];
            const auto setup = chess::parse_fen(pz.setup_fen);
            pz.solution_position = chess::apply_move(setup, chess::parse_uci_move(setup, moves[0]));
            pz.solution_move = chess::parse_uci_move(pz.solution_position, moves[1]);
        } catch (const DataError& e) {
            set.dropped.push_back({line, pz.id, e.what()});
            continue;
        }
        if (chess::terminal_state(chess::apply_move(pz.solution_position, pz.solution_move)) !=
            chess::TerminalState::checkmate) {
            set.dropped.push_back({line, pz.id, "not mate-in-one"});
            continue;
        }
        set.puzzles.push_back(std::move(pz));
    }
    return set;
}

PuzzleSet load_puzzles_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read puzzle file " + path);
    return load_puzzles(in);
}

commentary::PromptBundle build_skill_prompt(SkillCondition cond, const Puzzle& puzzle,
                                            const std::optional<std::string>& engine_summary) {
    if (cond == SkillCondition::expert && !engine_summary)
        throw UsageError("expert skill prompt needs an engine summary");
    commentary::PromptBundle b;
    b.system = kSystemBase;
    if (cond == SkillCondition::concept_hint) b.system += kSystemHint;
    b.system += kSystemTail;
    b.user = "position: " + chess::to_fen(puzzle.solution_position, chess::FenClocks::source) + "\n";
    if (cond == SkillCondition::expert) b.user += "engine evaluation: " + *engine_summary + "\n";
    b.user += "Move(SAN formatted move only):";
    b.condition = cond == SkillCondition::expert ? commentary::Condition::expert : commentary::Condition::plain;
    return b;
}

const char* answer_category_name(AnswerCategory c) {
    switch (c) {
        case AnswerCategory::correct: return "correct";
        case AnswerCategory::wrong_move: return "wrong_move";
        case AnswerCategory::illegal_or_unparseable: return "illegal_or_unparseable";
        case AnswerCategory::gateway_error: return "gateway_error";
    }
    return "wrong_move";
}

std::string extract_answer(const std::string& text) {
    const auto tokens = split_ws(text);
    for (const auto& t : tokens) {
        auto s = strip_punct(t);
        if (san_like(s)) return s;
    }
    return tokens.empty() ? std::string() : strip_punct(tokens.front());
}

AnswerCategory check_answer(const Puzzle& puzzle, const std::string& answer_text) {
    const auto token = extract_answer(answer_text);
    if (token.empty()) return AnswerCategory::illegal_or_unparseable;
    chess::Move m;
    try {
        m = chess::parse_san(puzzle.solution_position, token);
    } catch (const chess::SanError&) {
        return AnswerCategory::illegal_or_unparseable;
    }
    if (m == puzzle.solution_move) return AnswerCategory::correct;
    if (chess::terminal_state(chess::apply_move(puzzle.solution_position, m)) == chess::TerminalState::checkmate)
        return AnswerCategory::correct;
    return AnswerCategory::wrong_move;
}

std::size_t SkillReport::count(AnswerCategory c) const {
    return static_cast<std::size_t>(
        std::count_if(attempts.begin(), attempts.end(), [c](const SkillAttempt& a) { return a.category == c; }));
}

std::size_t SkillReport::attempted() const {
    return exclude_gateway_errors ? attempts.size() - count(AnswerCategory::gateway_error) : attempts.size();
}

double SkillReport::accuracy() const {
    const auto n = attempted();
    return n == 0 ? 0.0 : static_cast<double>(count(AnswerCategory::correct)) / static_cast<double>(n);
}

std::string skill_engine_summary(engine::Engine& engine, const Puzzle& puzzle) {
    return engine::format_eval_summary(engine.analyze(puzzle.solution_position));
}

SkillReport run_skill_eval(llm::Client& client, const std::vector<Puzzle>& puzzles, SkillCondition cond,
                           engine::Engine* engine, const SkillOptions& opts) {
    if (puzzles.empty()) throw UsageError("skill evaluation needs at least one puzzle");
    if (cond == SkillCondition::expert && !engine) throw UsageError("expert skill condition needs an engine");

    // the engine handle is serialized anyway, so summaries come first
    std::vector<commentary::PromptBundle> bundles;
    bundles.reserve(puzzles.size());
    for (const auto& pz : puzzles)
        bundles.push_back(build_skill_prompt(
            cond, pz, cond == SkillCondition::expert ? std::optional(skill_engine_summary(*engine, pz)) : std::nullopt));

    SkillReport report;
    report.condition = cond;
    report.exclude_gateway_errors = opts.exclude_gateway_errors;
    report.attempts.resize(puzzles.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < puzzles.size();) {
            auto& a = report.attempts[i];
            a.id = puzzles[i].id;
            a.condition = cond;
            llm::ChatRequest req;
            req.messages = bundles[i].messages();
            req.temperature = llm::kEvaluationTemperature;
            req.max_tokens = 16;
            try {
                a.answer = client.complete(req).text;
                a.category = check_answer(puzzles[i], a.answer);
            } catch (const UpstreamError& e) {
                a.category = AnswerCategory::gateway_error;
                a.error = e.what();
            }
        }
    };
    const int n = std::clamp(opts.workers, 1, static_cast<int>(puzzles.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::stable_sort(report.attempts.begin(), report.attempts.end(),
                     [](const SkillAttempt& x, const SkillAttempt& y) { return x.id < y.id; });
    return report;
}

void write_attempts_jsonl(std::ostream& out, const SkillReport& report) {
    for (const auto& a : report.attempts) {
        nlohmann::ordered_json j;
        j["id"] = a.id;
        j["condition"] = skill_condition_name(a.condition);
        j["answer"] = a.answer;
        j["category"] = answer_category_name(a.category);
        if (!a.error.empty()) j["error"] = a.error;
        out << j.dump() << '\n';
    }
}

std::string skill_table_csv(const std::vector<SkillTableRow>& rows) {
    std::vector<SkillCondition> cols;
    for (auto c : kSkillConditions)
        for (const auto& r : rows)
            if (std::any_of(r.reports.begin(), r.reports.end(), [c](const SkillReport& s) { return s.condition == c; })) {
                cols.push_back(c);
                break;
            }
    std::vector<std::string> head{"Language models"};
    for (auto c : cols) head.push_back(skill_condition_column(c));
    std::string out = io::csv_row(head) + "\n";
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.method};
        for (auto c : cols) {
            std::string cell;
            for (const auto& s : r.reports)
                if (s.condition == c) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.3f", s.accuracy());
                    cell = buf;
                }
            cells.push_back(cell);
        }
        out += io::csv_row(cells) + "\n";
    }
    return out;
}

}  // namespace ccc::skill
