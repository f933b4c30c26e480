#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/chess/types.hpp"
#include "ccc/engine/channel.hpp"

namespace ccc::engine {

/// Engine verdict in centipawns or as a mate distance in moves (positive:
/// the side to move mates).
class Score {
public:
    static Score cp(int centipawns) { return Score(false, centipawns); }
    static Score mate(int moves) { return Score(true, moves); }

    bool is_mate() const { return mate_; }
    int value() const { return value_; }
    /// "232cp", "-15cp", "#3", "#-2"
    std::string text() const;
    /// Converts a score reported for the position after a move into the
    /// perspective of the side that made the move. Centipawns negate; a mate
    /// distance counted from the reply side shifts by the move just played.
    Score from_reply_side() const;

    friend bool operator==(const Score&, const Score&) = default;

private:
    Score(bool mate, int value) : mate_(mate), value_(value) {}
    bool mate_ = false;
    int value_ = 0;
};

struct SearchLimit {
    std::optional<int> depth;
    std::optional<int> movetime_ms;
    std::string go_command() const;
};

struct EngineConfig {
    std::string executable;
    std::vector<std::string> args;
    std::string script;  // transcript path (scripted mode)
    SearchLimit limit{16, std::nullopt};
    int multipv = 2;
    std::chrono::milliseconds timeout{10000};
    /// Throws UsageError unless exactly one of executable/script is set,
    /// multipv >= 2 and exactly one search limit is positive.
    void validate() const;
};

struct EngineLine {
    chess::Move move;
    Score score = Score::cp(0);
    std::vector<chess::Move> pv;
};

struct EngineEval {
    chess::Position position;
    std::optional<chess::Move> actual_move;
    std::optional<Score> actual_score;
    std::optional<chess::Move> expected_reply;
    std::vector<EngineLine> lines;  // best first, mover's perspective
    std::string engine_id;
};

/// One engine process (or transcript). Calls are serialized in arrival order.
class Engine {
public:
    Engine(std::unique_ptr<EngineChannel> channel, EngineConfig config);
    /// Spawns or loads the configured engine and completes the handshake.
    static std::unique_ptr<Engine> open(const EngineConfig& config);

    /// Searches p; with an actual move, also searches the position after it
    /// for the actual move's score and the expected reply. Throws DataError
    /// for positions without legal moves, IllegalMoveError for an illegal
    /// actual move and UpstreamError for engine failures.
    EngineEval analyze(const chess::Position& p, const std::optional<chess::Move>& actual = std::nullopt);

    const std::string& id() const { return id_; }
    const EngineConfig& config() const { return config_; }
    EngineChannel& channel() { return *channel_; }

private:
    struct SearchResult {
        std::vector<EngineLine> lines;
        std::optional<chess::Move> best;
    };

    void handshake();
    std::string expect(const std::string& token, const char* phase);
    SearchResult search(const chess::Position& p);

    class Turn;
    std::mutex mutex_;
    std::condition_variable turn_cv_;
    std::uint64_t next_ticket_ = 0;
    std::uint64_t serving_ = 0;

    std::unique_ptr<EngineChannel> channel_;
    EngineConfig config_;
    std::string id_;
};

/// Parses the score, multipv index and pv of a UCI "info" line. Returns
/// nullopt for info lines without a score (currmove, string, ...) and for
/// bound-only scores; throws UpstreamError, quoting the line, when a score is
/// present but malformed.
struct InfoLine {
    int multipv = 1;
    int depth = 0;
    Score score = Score::cp(0);
    std::vector<std::string> pv;
};
std::optional<InfoLine> parse_info_line(const std::string& line);

}  // namespace ccc::engine
