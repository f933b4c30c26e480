#include "ccc/llm/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ccc/error.hpp"
#include "ccc/hash.hpp"

namespace ccc::llm {

using nlohmann::json;

const char* role_name(Role r) {
    switch (r) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    return "user";
}

Role parse_role(const std::string& s) {
    if (s == "system") return Role::system;
    if (s == "user") return Role::user;
    if (s == "assistant") return Role::assistant;
    throw DataError("unknown chat role: " + s);
}

void ChatRequest::validate() const {
    if (messages.empty()) throw UsageError("chat request needs at least one message");
    if (!(temperature >= 0.0)) throw UsageError("temperature must be >= 0");
    if (max_tokens <= 0) throw UsageError("max_tokens must be positive");
    if (top_k < 0 || top_k > kMaxTopLogprobs) throw UsageError("top_k must be within [0, 20]");
    if (top_k > 0 && !want_logprobs) throw UsageError("top_k set without requesting logprobs");
}

json request_json(const ChatRequest& req) {
    json msgs = json::array();
    for (const auto& m : req.messages) msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    return {{"messages", msgs},         {"temperature", req.temperature}, {"max_tokens", req.max_tokens},
            {"logprobs", req.want_logprobs}, {"top_k", req.top_k},        {"model", req.model_id}};
}

ChatRequest request_from_json(const json& j) {
    try {
        ChatRequest req;
        for (const auto& m : j.at("messages")) req.messages.push_back({parse_role(m.at("role")), m.at("content")});
        req.temperature = j.value("temperature", kGenerationTemperature);
        req.max_tokens = j.value("max_tokens", 256);
        req.want_logprobs = j.value("logprobs", false);
        req.top_k = j.value("top_k", 0);
        req.model_id = j.value("model", "");
        return req;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed chat request: ") + e.what());
    }
}

std::string canonical_request(const ChatRequest& req) { return request_json(req).dump(); }

std::string cache_key(const ChatRequest& req) { return sha256_hex(canonical_request(req)); }

json completion_json(const Completion& c) {
    json j = {{"text", c.text},
              {"usage", {{"prompt_tokens", c.usage.prompt_tokens}, {"completion_tokens", c.usage.completion_tokens}}}};
    if (c.token_logprobs) {
        json toks = json::array();
        for (const auto& t : *c.token_logprobs) {
            json top = json::array();
            for (const auto& a : t.top) top.push_back({{"token", a.token}, {"logprob", a.logprob}});
            toks.push_back({{"token", t.token}, {"logprob", t.logprob}, {"top", top}});
        }
        j["token_logprobs"] = toks;
    }
    return j;
}

Completion completion_from_json(const json& j) {
    try {
        Completion c;
        c.text = j.at("text");
        if (j.contains("usage")) {
            c.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
            c.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
        }
        if (j.contains("token_logprobs") && !j["token_logprobs"].is_null()) {
            std::vector<TokenLogprob> toks;
            for (const auto& t : j["token_logprobs"]) {
                TokenLogprob tl{t.at("token"), t.at("logprob"), {}};
                for (const auto& a : t.value("top", json::array())) tl.top.push_back({a.at("token"), a.at("logprob")});
                toks.push_back(std::move(tl));
            }
            c.token_logprobs = std::move(toks);
        }
        return c;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed completion: ") + e.what());
    }
}

Completion distribution_completion(const std::vector<std::pair<std::string, double>>& probs) {
    if (probs.empty()) throw UsageError("distribution needs at least one token");
    TokenLogprob tok;
    for (const auto& [token, p] : probs) {
        if (!(p > 0.0) || p > 1.0) throw UsageError("distribution probability out of (0, 1]: " + token);
        tok.top.push_back({token, std::log(p)});
    }
    std::stable_sort(tok.top.begin(), tok.top.end(), [](const auto& a, const auto& b) { return a.logprob > b.logprob; });
    tok.token = tok.top.front().token;
    tok.logprob = tok.top.front().logprob;
    Completion c;
    c.text = tok.token;
    c.token_logprobs = std::vector<TokenLogprob>{tok};
    c.usage.completion_tokens = 1;
    return c;
}

}  // namespace ccc::llm
