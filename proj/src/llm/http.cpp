#include <httplib.h>

#include <cstdlib>

#include "ccc/llm/transport.hpp"

namespace ccc::llm {

using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

}  // namespace

HttpConfig HttpConfig::from_env() {
    HttpConfig cfg;
    cfg.base_url = env_or("CCC_LLM_BASE_URL", cfg.base_url);
    cfg.model = env_or("CCC_LLM_MODEL", cfg.model);
    cfg.api_key = env_or("CCC_LLM_API_KEY", env_or("OPENAI_API_KEY", ""));
    return cfg;
}

HttpTransport::HttpTransport(HttpConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.base_url.find("://") == std::string::npos)
        throw UsageError("LLM base URL needs a scheme: " + cfg_.base_url);
}

Completion parse_chat_response(const std::string& body, bool want_logprobs) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception& e) {
        throw UpstreamError(std::string("malformed LLM response: ") + e.what());
    }
    try {
        const auto& choice = j.at("choices").at(0);
        Completion c;
        const auto& content = choice.at("message").at("content");
        c.text = content.is_null() ? "" : content.get<std::string>();
        if (j.contains("usage") && j["usage"].is_object()) {
            c.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
            c.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
        }
        if (want_logprobs) {
            if (!choice.contains("logprobs") || !choice["logprobs"].is_object() ||
                !choice["logprobs"].contains("content") || !choice["logprobs"]["content"].is_array())
                throw UpstreamError("logprobs unavailable: endpoint returned no token logprobs");
            std::vector<TokenLogprob> toks;
            for (const auto& t : choice["logprobs"]["content"]) {
                TokenLogprob tl{t.at("token"), t.at("logprob"), {}};
                for (const auto& a : t.value("top_logprobs", json::array())) tl.top.push_back({a.at("token"), a.at("logprob")});
                toks.push_back(std::move(tl));
            }
            c.token_logprobs = std::move(toks);
        }
        return c;
    } catch (const json::exception& e) {
        throw UpstreamError(std::string("malformed LLM response: ") + e.what());
    }
}

Completion HttpTransport::send(const ChatRequest& req) {
    const auto scheme_end = cfg_.base_url.find("://") + 3;
    const auto path_start = cfg_.base_url.find('/', scheme_end);
    const std::string origin = cfg_.base_url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "" : cfg_.base_url.substr(path_start);
    while (!path.empty() && path.back() == '/') path.pop_back();
    path += "/chat/completions";

    json body = {{"model", req.model_id.empty() ? cfg_.model : req.model_id},
                 {"temperature", req.temperature},
                 {"max_tokens", req.max_tokens},
                 {"messages", json::array()}};
    for (const auto& m : req.messages) body["messages"].push_back({{"role", role_name(m.role)}, {"content", m.content}});
    if (req.want_logprobs) {
        body["logprobs"] = true;
        if (req.top_k > 0) body["top_logprobs"] = req.top_k;
    }

    httplib::Client cli(origin);
    cli.set_connection_timeout(cfg_.timeout_seconds, 0);
    cli.set_read_timeout(cfg_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
    auto res = cli.Post(path, headers, body.dump(), "application/json");
    if (!res) throw TransientError("LLM endpoint unreachable: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
        throw TransientError("LLM endpoint returned HTTP " + std::to_string(res->status));
    if (res->status != 200)
        throw UpstreamError("LLM endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 300));
    return parse_chat_response(res->body, req.want_logprobs);
}

std::shared_ptr<Transport> make_transport(const std::string& spec) {
    if (spec == "http" || spec == "live") return std::make_shared<HttpTransport>(HttpConfig::from_env());
    if (spec == "mock:oracle-mate") return oracle_mate_mock();
    if (spec.rfind("mock:random-legal:", 0) == 0) {
        const std::string seed = spec.substr(18);
        char* end = nullptr;
        const auto v = std::strtoull(seed.c_str(), &end, 10);
        if (seed.empty() || *end) throw UsageError("bad random-legal seed: " + seed);
        return random_legal_mock(v);
    }
    if (spec.rfind("mock:file:", 0) == 0) return MockTransport::from_file(spec.substr(10));
    // any other mock:X names a script file
    if (spec.rfind("mock:", 0) == 0 && spec.size() > 5) return MockTransport::from_file(spec.substr(5));
    throw UsageError("unknown LLM transport '" + spec +
                     "' (live, mock:oracle-mate, mock:random-legal:SEED, mock:PATH)");
}

}  // namespace ccc::llm
