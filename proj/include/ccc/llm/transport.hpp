#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccc/error.hpp"
#include "ccc/llm/types.hpp"

namespace ccc::llm {

/// Failure worth retrying: connection errors, rate limits, 5xx.
class TransientError : public UpstreamError {
public:
    using UpstreamError::UpstreamError;
};

/// The mock script has no rule for a request.
class ScriptGapError : public UpstreamError {
public:
    using UpstreamError::UpstreamError;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual Completion send(const ChatRequest& req) = 0;
    virtual std::string name() const = 0;
    /// Model filled into requests that do not name one.
    virtual std::string default_model() const { return "mock"; }
};

/// Deterministic scripted transport. Rules are tried in order; a rule matches
/// by exact cache key, or when all its patterns occur in the request's message
/// text in the listed order. Responders are consulted after the rules.
class MockTransport final : public Transport {
public:
    struct Rule {
        std::string name;
        std::optional<std::string> key;
        std::vector<std::string> patterns;
        Completion response;
    };
    using Responder = std::function<std::optional<Completion>(const ChatRequest&)>;

    MockTransport() = default;
    explicit MockTransport(std::vector<Rule> rules, std::string name = "mock");

    /// {"rules": [{"name", "key"?, "patterns"?, "text", "logprobs"?, "distribution"?}]}
    /// where "distribution" is {"4": 0.6, "5": 0.4} shorthand for a one-token
    /// completion with those alternatives.
    static std::unique_ptr<MockTransport> from_json(const nlohmann::json& script, std::string name = "mock");
    static std::unique_ptr<MockTransport> from_file(const std::string& path);

    void add_rule(Rule r) { rules_.push_back(std::move(r)); }
    void add_responder(std::string name, Responder r) { responders_.push_back({std::move(name), std::move(r)}); }

    Completion send(const ChatRequest& req) override;
    std::string name() const override { return name_; }

private:
    std::vector<Rule> rules_;
    std::vector<std::pair<std::string, Responder>> responders_;
    std::string name_ = "mock";
};

/// Answers every chess-move prompt with a mating move when one exists, else
/// the first legal move, in SAN. Reads the FEN after "position: ".
std::unique_ptr<MockTransport> oracle_mate_mock();
/// Answers with a uniformly random legal move in SAN; the draw depends only
/// on the seed and the position.
std::unique_ptr<MockTransport> random_legal_mock(std::uint64_t seed);

struct HttpConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string model = "gpt-4o";
    std::string api_key;
    int timeout_seconds = 60;
    /// CCC_LLM_BASE_URL, CCC_LLM_MODEL, CCC_LLM_API_KEY (or OPENAI_API_KEY).
    static HttpConfig from_env();
};

/// OpenAI-style chat-completions endpoint.
class HttpTransport final : public Transport {
public:
    explicit HttpTransport(HttpConfig cfg);
    Completion send(const ChatRequest& req) override;
    std::string name() const override { return "http:" + cfg_.base_url; }
    std::string default_model() const override { return cfg_.model; }

private:
    HttpConfig cfg_;
};

/// Parses an OpenAI chat-completions response body.
Completion parse_chat_response(const std::string& body, bool want_logprobs);

/// "mock:oracle-mate", "mock:random-legal:SEED", "mock:PATH" (a script file,
/// also spelled "mock:file:PATH"), "http" or "live".
std::shared_ptr<Transport> make_transport(const std::string& spec);

}  // namespace ccc::llm
