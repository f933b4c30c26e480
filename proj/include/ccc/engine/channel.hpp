#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ccc::engine {

/// Line-oriented duplex link to a UCI engine.
class EngineChannel {
public:
    virtual ~EngineChannel() = default;
    /// Sends one line; the newline is appended by the channel.
    virtual void send(const std::string& line) = 0;
    /// Next inbound line without its newline, or nullopt on timeout. Throws
    /// UpstreamError when the engine has gone away.
    virtual std::optional<std::string> receive(std::chrono::milliseconds timeout) = 0;
};

/// Spawns an engine executable and talks to it over pipes.
class ProcessChannel final : public EngineChannel {
public:
    explicit ProcessChannel(const std::string& executable, const std::vector<std::string>& args = {});
    ~ProcessChannel() override;
    ProcessChannel(const ProcessChannel&) = delete;
    ProcessChannel& operator=(const ProcessChannel&) = delete;

    void send(const std::string& line) override;
    std::optional<std::string> receive(std::chrono::milliseconds timeout) override;

private:
    int pid_ = -1;
    int to_engine_ = -1;
    int from_engine_ = -1;
    std::string buffer_;
    bool eof_ = false;
};

/// Replays a transcript instead of running an engine. Transcript lines are
///   > expected-outbound-prefix
///   < inbound-line
/// Blank lines and lines starting with '#' are skipped. Every send must match
/// the next "> " entry by prefix; receive returns the next "< " entry, or
/// reports a timeout when the transcript expects the client to speak next
/// (or has ended).
class ScriptedChannel final : public EngineChannel {
public:
    struct Entry {
        bool outbound = false;
        std::string text;
    };

    explicit ScriptedChannel(std::vector<Entry> entries);
    static std::unique_ptr<ScriptedChannel> from_file(const std::string& path);
    static std::unique_ptr<ScriptedChannel> from_text(const std::string& text);

    void send(const std::string& line) override;
    std::optional<std::string> receive(std::chrono::milliseconds timeout) override;

    /// Every line sent so far, verbatim.
    const std::vector<std::string>& sent() const { return sent_; }
    bool exhausted() const { return next_ >= entries_.size(); }

private:
    std::vector<Entry> entries_;
    std::size_t next_ = 0;
    std::vector<std::string> sent_;
};

}  // namespace ccc::engine
