#include "ccc/engine/engine.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/error.hpp"

namespace ccc::engine {

std::string Score::text() const { return mate_ ? "#" + std::to_string(value_) : std::to_string(value_) + "cp"; }

Score Score::from_reply_side() const {
    if (!mate_) return cp(-value_);
    // Reply side mates in n: the mover is mated in n. Reply side is mated in
    // n of the mover's moves: counted from before the move that is n + 1.
    if (value_ > 0) return mate(-value_);
    return mate(-value_ + 1);
}

std::string SearchLimit::go_command() const {
    if (movetime_ms) return "go movetime " + std::to_string(*movetime_ms);
    return "go depth " + std::to_string(depth.value_or(16));
}

void EngineConfig::validate() const {
    if (executable.empty() == script.empty())
        throw UsageError("engine config needs exactly one of an executable or a transcript script");
    if (multipv < 2) throw UsageError("engine multipv must be at least 2, got " + std::to_string(multipv));
    if (limit.depth.has_value() == limit.movetime_ms.has_value())
        throw UsageError("engine search limit needs exactly one of depth or movetime");
    if ((limit.depth && *limit.depth <= 0) || (limit.movetime_ms && *limit.movetime_ms <= 0))
        throw UsageError("engine search limit must be positive");
    if (timeout.count() <= 0) throw UsageError("engine timeout must be positive");
}

namespace {

bool parse_int(const std::string& s, int& out) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

std::optional<InfoLine> parse_info_line(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] != "info") return std::nullopt;
    auto bad = [&](const std::string& why) { return UpstreamError("unparseable info line (" + why + "): " + line); };

    InfoLine info;
    bool has_score = false;
    bool bound = false;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        const std::string& key = tok[i];
        if (key == "string") return std::nullopt;
        if (key == "multipv" || key == "depth") {
            if (i + 1 >= tok.size()) throw bad(key + " without value");
            int v = 0;
            if (!parse_int(tok[++i], v) || v < 1) throw bad("bad " + key);
            (key == "multipv" ? info.multipv : info.depth) = v;
        } else if (key == "score") {
            if (i + 2 >= tok.size()) throw bad("truncated score");
            const std::string& kind = tok[++i];
            int v = 0;
            if (!parse_int(tok[++i], v)) throw bad("bad score value");
            if (kind == "cp") info.score = Score::cp(v);
            else if (kind == "mate") info.score = Score::mate(v);
            else throw bad("unknown score kind '" + kind + "'");
            has_score = true;
            if (i + 1 < tok.size() && (tok[i + 1] == "lowerbound" || tok[i + 1] == "upperbound")) {
                bound = true;
                ++i;
            }
        } else if (key == "pv") {
            info.pv.assign(tok.begin() + static_cast<std::ptrdiff_t>(i) + 1, tok.end());
            break;
        }
    }
    if (!has_score || bound) return std::nullopt;
    if (info.pv.empty()) throw bad("score without pv");
    return info;
}

class Engine::Turn {
public:
    explicit Turn(Engine& e) : e_(e), lock_(e.mutex_) {
        const auto ticket = e_.next_ticket_++;
        e_.turn_cv_.wait(lock_, [&] { return e_.serving_ == ticket; });
    }
    ~Turn() {
        ++e_.serving_;
        lock_.unlock();
        e_.turn_cv_.notify_all();
    }

private:
    Engine& e_;
    std::unique_lock<std::mutex> lock_;
};

Engine::Engine(std::unique_ptr<EngineChannel> channel, EngineConfig config)
    : channel_(std::move(channel)), config_(std::move(config)) {
    if (config_.multipv < 2) throw UsageError("engine multipv must be at least 2, got " + std::to_string(config_.multipv));
    handshake();
}

std::unique_ptr<Engine> Engine::open(const EngineConfig& config) {
    config.validate();
    std::unique_ptr<EngineChannel> ch;
    if (!config.script.empty()) ch = ScriptedChannel::from_file(config.script);
    else ch = std::make_unique<ProcessChannel>(config.executable, config.args);
    return std::make_unique<Engine>(std::move(ch), config);
}

std::string Engine::expect(const std::string& token, const char* phase) {
    for (;;) {
        auto line = channel_->receive(config_.timeout);
        if (!line) throw UpstreamError(std::string(phase) + " timeout waiting for '" + token + "'");
        if (*line == token || line->rfind(token + " ", 0) == 0) return *line;
        if (line->rfind("id name ", 0) == 0) id_ = line->substr(8);
    }
}

void Engine::handshake() {
    channel_->send("uci");
    expect("uciok", "handshake");
    channel_->send("setoption name MultiPV value " + std::to_string(config_.multipv));
    channel_->send("isready");
    try {
        expect("readyok", "handshake");
    } catch (const UpstreamError&) {
        channel_->send("isready");
        expect("readyok", "handshake");
    }
    if (id_.empty()) id_ = "unknown";
}

Engine::SearchResult Engine::search(const chess::Position& p) {
    channel_->send("position fen " + chess::to_fen(p));
    channel_->send(config_.limit.go_command());
    std::map<int, InfoLine> latest;
    std::string bestmove;
    for (;;) {
        auto line = channel_->receive(config_.timeout);
        if (!line) throw UpstreamError("search timeout waiting for 'bestmove'");
        if (line->rfind("bestmove", 0) == 0) {
            std::istringstream in(*line);
            std::string kw;
            in >> kw >> bestmove;
            break;
        }
        if (auto info = parse_info_line(*line)) {
            if (info->multipv > config_.multipv) continue;
            auto it = latest.find(info->multipv);
            if (it == latest.end() || info->depth >= it->second.depth) latest[info->multipv] = *info;
        }
    }

    SearchResult out;
    if (!bestmove.empty() && bestmove != "(none)" && bestmove != "0000") {
        try {
            out.best = chess::parse_uci_move(p, bestmove);
        } catch (const DataError&) {
            throw UpstreamError("engine bestmove is illegal: " + bestmove);
        }
    }
    for (const auto& [index, info] : latest) {
        EngineLine l;
        l.score = info.score;
        chess::Position cur = p;
        for (const auto& text : info.pv) {
            chess::Move m;
            try {
                m = chess::parse_uci_move(cur, text);
            } catch (const DataError&) {
                // Engines occasionally emit stale pv tails; keep the legal prefix.
                if (l.pv.empty()) throw UpstreamError("engine pv starts with an illegal move: " + text);
                break;
            }
            l.pv.push_back(m);
            cur = chess::apply_move(cur, m);
        }
        l.move = l.pv.front();
        out.lines.push_back(std::move(l));
    }
    if (out.lines.empty()) throw UpstreamError("engine reported no scored lines");
    return out;
}

EngineEval Engine::analyze(const chess::Position& p, const std::optional<chess::Move>& actual) {
    if (chess::count_legal_moves(p) == 0) throw DataError("no legal moves to analyze");
    chess::Move played;
    chess::Position after;
    if (actual) {
        played = chess::parse_uci_move(p, chess::format_uci_move(*actual));
        after = chess::apply_move(p, played);
    }

    Turn turn(*this);
    EngineEval ev;
    ev.position = p;
    ev.engine_id = id_;
    ev.lines = search(p).lines;
    if (actual) {
        ev.actual_move = played;
        switch (chess::terminal_state(after)) {
            case chess::TerminalState::checkmate: ev.actual_score = Score::mate(1); break;
            case chess::TerminalState::stalemate: ev.actual_score = Score::cp(0); break;
            case chess::TerminalState::ongoing: {
                auto reply = search(after);
                ev.actual_score = reply.lines.front().score.from_reply_side();
                ev.expected_reply = reply.best ? reply.best : std::optional<chess::Move>(reply.lines.front().move);
                break;
            }
        }
    }
    return ev;
}

}  // namespace ccc::engine
