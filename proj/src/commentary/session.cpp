#include <random>

#include "ccc/chess/notation.hpp"
#include "ccc/commentary/commentary.hpp"

namespace ccc::commentary {

namespace {

std::string random_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    static const char* hex = "0123456789abcdef";
    std::string id;
    for (int i = 0; i < 2; ++i) {
        auto v = rng();
        for (int k = 0; k < 16; ++k, v >>= 4) id += hex[v & 15];
    }
    return id;
}

constexpr const char* kFollowupSystem =
    "You are a chess commentator answering follow-up questions about a move you have already commented on. "
    "Use the analysis below and mention only pieces, squares and moves that exist in the position.\n\n";

}  // namespace

SessionStore::SessionStore(std::chrono::minutes ttl, Clock clock) : ttl_(ttl), clock_(std::move(clock)) {
    if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

std::string SessionStore::create(const chess::Position& p, const std::string& move_label, const Commentary& c) {
    std::string context = kFollowupSystem;
    context += "position: " + chess::to_fen(p, chess::FenClocks::source) + "\n";
    context += "move: " + move_label + "\n";
    if (!c.engine_summary.empty()) context += "engine evaluation: " + c.engine_summary + "\n";
    if (!c.concepts_used.empty()) {
        std::vector<concepts::ConceptName> names;
        std::vector<double> deltas;
        for (const auto& x : c.concepts_used) {
            names.push_back(x.name);
            deltas.push_back(x.delta);
        }
        context += "important concepts: " + concept_line(names, deltas) + "\n";
    }
    context += "comment: " + c.text;

    auto entry = std::make_shared<Entry>();
    const auto now = clock_();
    entry->session.history.push_back({llm::Role::system, context});
    entry->session.created_at = now;
    entry->session.last_used = now;
    std::lock_guard lock(mutex_);
    // Expired sessions are dropped lazily here rather than by a timer thread.
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (now - it->second->session.last_used > ttl_) it = sessions_.erase(it);
        else ++it;
    }
    std::string id;
    do id = random_id();
    while (sessions_.count(id));
    entry->session.id = id;
    sessions_[id] = entry;
    return id;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw SessionNotFound("unknown session: " + id);
    return it->second;
}

std::string SessionStore::ask(llm::Client& client, const std::string& id, const std::string& question) {
    if (question.empty()) throw UsageError("empty question");
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    const auto now = clock_();
    if (now - entry->session.last_used > ttl_) {
        std::lock_guard store_lock(mutex_);
        sessions_.erase(id);
        throw SessionNotFound("session expired: " + id);
    }
    llm::ChatRequest req;
    req.messages = entry->session.history;
    req.messages.push_back({llm::Role::user, question});
    req.temperature = llm::kGenerationTemperature;
    req.max_tokens = 512;
    const auto answer = client.complete(req).text;
    entry->session.history.push_back({llm::Role::user, question});
    entry->session.history.push_back({llm::Role::assistant, answer});
    entry->session.last_used = clock_();
    return answer;
}

Session SessionStore::snapshot(const std::string& id) const {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    return entry->session;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

}  // namespace ccc::commentary
