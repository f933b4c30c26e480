#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ccc/commentary/prompt.hpp"
#include "ccc/llm/client.hpp"

namespace ccc::commentary {

struct Commentary {
    std::string fen;
    std::string move_san;
    Condition condition = Condition::plain;
    std::string text;
    std::vector<concepts::ConceptPriority> concepts_used;
    std::string engine_summary;
    std::string prompt_hash;
    std::size_t words = 0;
    /// False when the completion had no "Comment:" line and the whole
    /// completion became the comment.
    bool delimiter_found = true;
    std::string raw;
};

/// Whitespace-separated token count.
std::size_t word_count(const std::string& text);

/// Text after the last "Comment:" delimiter, trimmed; the whole trimmed text
/// when the delimiter is absent.
std::pair<std::string, bool> extract_comment(const std::string& completion);

llm::ChatRequest generation_request(const PromptBundle& bundle);

/// Sends the bundle at temperature 0.1 and extracts the comment. Provenance
/// fields come from `in`. Throws UpstreamError on an empty completion.
Commentary generate_comment(llm::Client& client, const PromptBundle& bundle, const GenerationInput& in);

class SessionNotFound : public UsageError {
public:
    using UsageError::UsageError;
};

struct Session {
    std::string id;
    std::vector<llm::Message> history;
    std::chrono::steady_clock::time_point created_at;
    std::chrono::steady_clock::time_point last_used;
};

/// In-memory follow-up conversations. Each session serializes its own
/// questions; different sessions proceed concurrently.
class SessionStore {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    explicit SessionStore(std::chrono::minutes ttl = std::chrono::minutes(30), Clock clock = {});

    /// history[0] is a system message holding the position, move, engine
    /// summary, concepts and the initial comment.
    std::string create(const chess::Position& p, const std::string& move_label, const Commentary& c);
    /// Appends the question and the answer; returns the answer verbatim.
    std::string ask(llm::Client& client, const std::string& id, const std::string& question);
    Session snapshot(const std::string& id) const;
    std::size_t size() const;

private:
    struct Entry {
        std::mutex mutex;
        Session session;
    };
    std::shared_ptr<Entry> find(const std::string& id) const;

    std::chrono::minutes ttl_;
    Clock clock_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace ccc::commentary
