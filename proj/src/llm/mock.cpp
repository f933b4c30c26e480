#include <fstream>
#include <random>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/chess/position.hpp"
#include "ccc/llm/transport.hpp"

namespace ccc::llm {

using nlohmann::json;

namespace {

std::string request_text(const ChatRequest& req) {
    std::string text;
    for (const auto& m : req.messages) {
        if (!text.empty()) text += '\n';
        text += m.content;
    }
    return text;
}

// Number of leading patterns found in order.
std::size_t ordered_hits(const std::string& text, const std::vector<std::string>& patterns) {
    std::size_t pos = 0, hits = 0;
    for (const auto& p : patterns) {
        const auto at = text.find(p, pos);
        if (at == std::string::npos) break;
        pos = at + p.size();
        ++hits;
    }
    return hits;
}

std::optional<chess::Position> prompt_position(const ChatRequest& req) {
    for (auto it = req.messages.rbegin(); it != req.messages.rend(); ++it) {
        const auto at = it->content.find("position: ");
        if (at == std::string::npos) continue;
        const auto start = at + 10;
        const auto end = it->content.find('\n', start);
        try {
            return chess::parse_fen(it->content.substr(start, end == std::string::npos ? end : end - start));
        } catch (const DataError&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

Completion text_completion(std::string text) {
    Completion c;
    c.text = std::move(text);
    c.usage.completion_tokens = 1;
    return c;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
    return h;
}

}  // namespace

MockTransport::MockTransport(std::vector<Rule> rules, std::string name) : rules_(std::move(rules)), name_(std::move(name)) {}

std::unique_ptr<MockTransport> MockTransport::from_json(const json& script, std::string name) {
    auto mock = std::make_unique<MockTransport>(std::vector<Rule>{}, std::move(name));
    try {
        int index = 0;
        for (const auto& r : script.at("rules")) {
            Rule rule;
            rule.name = r.value("name", "rule " + std::to_string(index++));
            if (r.contains("key")) rule.key = r["key"].get<std::string>();
            rule.patterns = r.value("patterns", std::vector<std::string>{});
            if (!rule.key && rule.patterns.empty())
                throw DataError("mock rule '" + rule.name + "' needs a key or patterns");
            if (r.contains("distribution")) {
                std::vector<std::pair<std::string, double>> probs;
                for (const auto& [token, p] : r["distribution"].items()) probs.emplace_back(token, p.get<double>());
                rule.response = distribution_completion(probs);
                if (r.contains("text")) rule.response.text = r["text"];
            } else {
                rule.response = completion_from_json({{"text", r.at("text")},
                                                      {"token_logprobs", r.value("logprobs", json())}});
            }
            mock->add_rule(std::move(rule));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed mock script: ") + e.what());
    }
    return mock;
}

std::unique_ptr<MockTransport> MockTransport::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read mock script: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("malformed mock script " + path + ": " + e.what());
    }
    return from_json(j, "mock:" + path);
}

Completion MockTransport::send(const ChatRequest& req) {
    const std::string key = cache_key(req);
    const std::string text = request_text(req);
    std::optional<Completion> out;
    for (const auto& r : rules_) {
        if ((r.key && *r.key == key) || (!r.patterns.empty() && ordered_hits(text, r.patterns) == r.patterns.size())) {
            out = r.response;
            break;
        }
    }
    for (std::size_t i = 0; !out && i < responders_.size(); ++i) out = responders_[i].second(req);
    if (!out) {
        std::string msg = "mock script has no rule for request " + key;
        const Rule* closest = nullptr;
        std::size_t best = 0;
        for (const auto& r : rules_) {
            const auto hits = ordered_hits(text, r.patterns);
            if (!closest || hits > best) {
                closest = &r;
                best = hits;
            }
        }
        if (closest)
            msg += "; closest rule '" + closest->name + "' matched " + std::to_string(best) + "/" +
                   std::to_string(closest->patterns.size()) + " patterns";
        else if (responders_.empty())
            msg += "; script is empty";
        for (const auto& [name, _] : responders_) msg += "; responder '" + name + "' declined";
        throw ScriptGapError(msg);
    }
    if (req.want_logprobs && !out->token_logprobs)
        throw UpstreamError("logprobs unavailable: transport '" + name_ + "' returned none");
    if (!req.want_logprobs) out->token_logprobs.reset();
    else if (req.top_k > 0)
        for (auto& t : *out->token_logprobs)
            if (t.top.size() > static_cast<std::size_t>(req.top_k)) t.top.resize(static_cast<std::size_t>(req.top_k));
    return *out;
}

std::unique_ptr<MockTransport> oracle_mate_mock() {
    auto mock = std::make_unique<MockTransport>(std::vector<MockTransport::Rule>{}, "mock:oracle-mate");
    mock->add_responder("oracle-mate", [](const ChatRequest& req) -> std::optional<Completion> {
        const auto p = prompt_position(req);
        if (!p) return std::nullopt;
        const auto moves = chess::legal_moves(*p);
        if (moves.empty()) return std::nullopt;
        for (const auto& m : moves)
            if (m.has(chess::kCheckmate)) return text_completion(chess::format_san(*p, m));
        return text_completion(chess::format_san(*p, moves.front()));
    });
    return mock;
}

std::unique_ptr<MockTransport> random_legal_mock(std::uint64_t seed) {
    auto mock = std::make_unique<MockTransport>(std::vector<MockTransport::Rule>{},
                                                "mock:random-legal:" + std::to_string(seed));
    mock->add_responder("random-legal", [seed](const ChatRequest& req) -> std::optional<Completion> {
        const auto p = prompt_position(req);
        if (!p) return std::nullopt;
        const auto moves = chess::legal_moves(*p);
        if (moves.empty()) return std::nullopt;
        std::mt19937_64 rng(seed ^ fnv1a(chess::fen_key(*p)));
        return text_completion(chess::format_san(*p, moves[rng() % moves.size()]));
    });
    return mock;
}

}  // namespace ccc::llm
