#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccc/engine/engine.hpp"

namespace ccc::io {

/// A line that could not be ingested. Lines are 1-based.
struct Rejection {
    long line = 0;
    std::string reason;
};

struct IngestStats {
    std::size_t accepted = 0;
    std::vector<Rejection> rejected;
    /// Non-blank lines read; accepted + rejected always add up to it unless
    /// the reader stopped at the record limit.
    std::size_t lines = 0;
};

struct PvEval {
    engine::Score score = engine::Score::cp(0);
    int depth = 0;
    /// UCI moves, as stored in the dump.
    std::vector<std::string> line;
};

struct PositionRecord {
    std::string fen;
    std::vector<PvEval> evals;
};

struct PositionDump {
    std::vector<PositionRecord> records;
    IngestStats stats;
};

/// Lichess evaluation dump: one {"fen", "evals": [{"pvs": [{"cp"|"mate",
/// "line"}], "depth"}]} per line. Stops after `limit` records (0: no
/// limit). Bad lines are counted, never fatal.
PositionDump read_position_dump(std::istream& in, std::size_t limit = 0);
PositionDump load_position_dump(const std::string& path, std::size_t limit = 0);

struct CommentarySample {
    std::string fen;
    std::string move_san;
    std::optional<std::string> reference_comment;

    friend bool operator==(const CommentarySample&, const CommentarySample&) = default;
};

struct CommentarySet {
    std::vector<CommentarySample> samples;
    IngestStats stats;
};

/// JSON lines {"fen", "move_san"[, "reference_comment"]}; samples whose move
/// is not legal in their position are rejected with the reason.
CommentarySet read_commentary_set(std::istream& in);
CommentarySet load_commentary_set(const std::string& path);
/// Sorted by (fen, move_san, comment); fixed key order.
void write_commentary_set(std::ostream& out, std::vector<CommentarySample> samples);

/// Writes `text` to `path` via a temporary file and rename. The text gets
/// exactly one trailing newline unless empty.
void write_text_atomic(const std::string& path, std::string text);

/// Report writer: lines sorted, duplicates kept, one trailing newline.
void write_report(const std::string& path, std::vector<std::string> lines);

/// workspace/{datasets,activations,vectors,prompts,reports,cache}/
class Workspace {
public:
    static constexpr const char* kSubdirs[] = {"datasets", "activations", "vectors", "prompts", "reports", "cache"};

    explicit Workspace(std::string root);
    /// Creates the root and every subdirectory.
    void create() const;
    const std::string& root() const { return root_; }
    /// root/sub[/name]; throws UsageError for an unknown subdirectory.
    std::string path(const std::string& sub, const std::string& name = "") const;

private:
    std::string root_;
};

/// Written after every run, last, so a present manifest means the run's
/// outputs are complete.
struct Manifest {
    std::string command;
    std::map<std::string, std::string> config;
    /// path -> sha256
    std::map<std::string, std::string> inputs;
    std::map<std::string, std::string> outputs;

    void add_input(const std::string& path);
    void add_output(const std::string& path);
    std::string to_json() const;
    static Manifest from_json(const std::string& text);
    void write(const std::string& path) const;
};

}  // namespace ccc::io
