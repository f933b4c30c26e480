#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ccc::llm {

inline constexpr double kGenerationTemperature = 0.1;
inline constexpr double kEvaluationTemperature = 0.0;
inline constexpr int kMaxTopLogprobs = 20;

enum class Role { system, user, assistant };
const char* role_name(Role r);
Role parse_role(const std::string& s);

struct Message {
    Role role = Role::user;
    std::string content;
    friend bool operator==(const Message&, const Message&) = default;
};

struct ChatRequest {
    std::vector<Message> messages;
    double temperature = kGenerationTemperature;
    int max_tokens = 256;
    bool want_logprobs = false;
    int top_k = 0;  // alternatives per token when want_logprobs
    std::string model_id;
    /// Throws UsageError: no messages, negative temperature, top_k outside
    /// [0, 20] or set without want_logprobs.
    void validate() const;
};

struct TopLogprob {
    std::string token;
    double logprob = 0.0;
};

struct TokenLogprob {
    std::string token;
    double logprob = 0.0;
    std::vector<TopLogprob> top;
};

struct Usage {
    int prompt_tokens = 0;
    int completion_tokens = 0;
};

struct Completion {
    std::string text;
    std::optional<std::vector<TokenLogprob>> token_logprobs;
    Usage usage;
};

/// Sorted-key JSON of the request. Credentials never live in the request, so
/// they cannot leak into the key.
nlohmann::json request_json(const ChatRequest& req);
ChatRequest request_from_json(const nlohmann::json& j);
std::string canonical_request(const ChatRequest& req);
/// 64 lowercase hex digits: SHA-256 of canonical_request.
std::string cache_key(const ChatRequest& req);

nlohmann::json completion_json(const Completion& c);
Completion completion_from_json(const nlohmann::json& j);

/// A one-token completion whose alternatives carry the given probabilities,
/// e.g. {{"4", 0.6}, {"5", 0.4}}. The text is the most likely token.
Completion distribution_completion(const std::vector<std::pair<std::string, double>>& probs);

}  // namespace ccc::llm
