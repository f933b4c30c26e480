#include "ccc/commentary/prompt.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/engine/summary.hpp"
#include "ccc/error.hpp"

namespace ccc::commentary {

namespace {
#include "fewshot_bank.inc"

constexpr const char* kSystemBase =
    "You are a chess commentator. You will be given a chess position in Forsyth-Edwards notation (FEN) and the move "
    "played in it.\n"
    "Your task is to write a short comment on the move for club players.\n"
    "Think step by step: first work out what the move changes on the board, then whether it helps or hurts the side "
    "that played it, and only then write the comment.\n"
    "Mention only pieces, squares and moves that exist in the position.";
constexpr const char* kSystemExpert = "\nAn engine evaluation result is given as a hint.";
constexpr const char* kSystemConcept =
    "\nThe concepts most changed by the move are given as a hint, together with every capture available in the "
    "position.";
constexpr const char* kSystemFormat = "\nWrite your reasoning first. End with one line that starts with \"Comment:\".";

struct RenderInput {
    std::string fen;
    std::string move_label;
    std::string engine_summary;
    std::string concepts;
    std::vector<std::string> attacks;
};

std::string render_user(const RenderInput& r, Condition c) {
    std::string out = "position: " + r.fen + "\nmove: " + r.move_label + "\n";
    if (c != Condition::plain) out += "engine evaluation: " + r.engine_summary + "\n";
    if (c == Condition::expert_concept) {
        out += "important concepts: " + r.concepts + "\n";
        if (r.attacks.empty()) {
            out += "attacks: none\n";
        } else {
            out += "attacks:\n";
            for (const auto& a : r.attacks) out += a + "\n";
        }
    }
    out.pop_back();
    return out;
}

bool same_capture(const chess::Attack& a, const chess::Attack& b) {
    return a.move == b.move && a.attacker == b.attacker && a.target == b.target && a.target_square == b.target_square;
}

}  // namespace

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::plain: return "plain";
        case Condition::expert: return "expert";
        case Condition::expert_concept: return "expert_concept";
    }
    return "plain";
}

Condition parse_condition(const std::string& s) {
    if (s == "plain") return Condition::plain;
    if (s == "expert") return Condition::expert;
    if (s == "expert_concept" || s == "expert+concept" || s == "ccc") return Condition::expert_concept;
    throw UsageError("unknown condition '" + s + "' (plain, expert, expert_concept)");
}

std::vector<llm::Message> PromptBundle::messages() const {
    std::vector<llm::Message> out{{llm::Role::system, system}};
    for (const auto& [u, a] : fewshot) {
        out.push_back({llm::Role::user, u});
        out.push_back({llm::Role::assistant, a});
    }
    out.push_back({llm::Role::user, user});
    return out;
}

std::string concept_line(const std::vector<concepts::ConceptName>& names, const std::vector<double>& deltas) {
    if (names.size() != deltas.size()) throw UsageError("concept names and deltas differ in length");
    std::string list, changes;
    char buf[32];
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) {
            list += ", ";
            changes += ", ";
        }
        list += concepts::concept_display_name(names[i]);
        std::snprintf(buf, sizeof buf, "%+.2f", deltas[i]);
        changes += buf;
    }
    if (names.empty()) return "none";
    return list + " (score changes: " + changes + ")";
}

FewShotBank parse_fewshot_bank(const std::string& json_text) {
    try {
        const auto j = nlohmann::json::parse(json_text);
        FewShotBank bank;
        bank.version = j.at("version");
        for (const auto& e : j.at("examples")) {
            FewShotExample ex;
            ex.fen = e.at("fen");
            ex.move_san = e.at("move_san");
            ex.move_number = e.value("move_number", 0);
            ex.engine_summary = e.at("engine_summary");
            for (const auto& name : e.at("concepts")) {
                const auto c = concepts::parse_concept(name.get<std::string>());
                if (!c) throw DataError("few-shot bank: unknown concept " + name.get<std::string>());
                ex.concepts.push_back(*c);
            }
            ex.deltas = e.at("deltas").get<std::vector<double>>();
            if (ex.deltas.size() != ex.concepts.size()) throw DataError("few-shot bank: concepts and deltas differ");
            ex.reasoning = e.at("reasoning");
            ex.comment = e.at("comment");
            const auto p = chess::parse_fen(ex.fen);
            chess::parse_san(p, ex.move_san);
            bank.examples.push_back(std::move(ex));
        }
        if (bank.examples.size() < 2) throw DataError("few-shot bank needs at least 2 examples");
        return bank;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed few-shot bank: ") + e.what());
    }
}

const FewShotBank& default_fewshot_bank() {
    static const FewShotBank bank = parse_fewshot_bank(kFewShotJson);
    return bank;
}

FewShotBank load_fewshot_bank(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read few-shot bank: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fewshot_bank(ss.str());
}

PromptBundle build_generation_prompt(const GenerationInput& in, Condition condition, const FewShotBank& bank) {
    const auto& p = in.position;
    const chess::Move move = chess::parse_uci_move(p, chess::format_uci_move(in.move));
    const std::string san = chess::format_san(p, move);

    RenderInput r{chess::to_fen(p, chess::FenClocks::source), chess::move_label(p, san, in.move_number), "", "", {}};
    if (condition != Condition::plain) {
        if (!in.eval) throw UsageError("the expert conditions need an engine evaluation");
        if (!in.eval->actual_move || !(*in.eval->actual_move == move))
            throw DataError("engine evaluation is for a different move than " + san);
        if (chess::fen_key(in.eval->position) != chess::fen_key(p))
            throw DataError("engine evaluation is for a different position");
        r.engine_summary = engine::format_eval_summary(*in.eval);
    }
    if (condition == Condition::expert_concept) {
        if (in.priorities.empty()) throw UsageError("expert_concept needs prioritized concepts");
        std::vector<concepts::ConceptName> names;
        std::vector<double> deltas;
        for (const auto& c : in.priorities) {
            names.push_back(c.name);
            deltas.push_back(c.delta);
        }
        r.concepts = concept_line(names, deltas);
        const auto real = chess::enumerate_attacks(p);
        for (const auto& a : in.attacks) {
            if (std::none_of(real.begin(), real.end(), [&](const chess::Attack& b) { return same_capture(a, b); }))
                throw DataError("attack not available in the position: " + chess::describe(a));
        }
        r.attacks = chess::describe_attacks(in.attacks);
    }

    PromptBundle b;
    b.condition = condition;
    b.system = kSystemBase;
    if (condition != Condition::plain) b.system += kSystemExpert;
    if (condition == Condition::expert_concept) b.system += kSystemConcept;
    b.system += kSystemFormat;
    b.user = render_user(r, condition);

    for (const auto& ex : bank.examples) {
        const auto ep = chess::parse_fen(ex.fen);
        RenderInput er{chess::to_fen(ep, chess::FenClocks::source), chess::move_label(ep, ex.move_san, ex.move_number),
                       ex.engine_summary, concept_line(ex.concepts, ex.deltas),
                       chess::describe_attacks(chess::enumerate_attacks(ep))};
        b.fewshot.emplace_back(render_user(er, condition), ex.reasoning + "\n" + kCommentDelimiter + " " + ex.comment);
    }
    return b;
}

}  // namespace ccc::commentary
