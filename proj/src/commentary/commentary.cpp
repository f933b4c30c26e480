#include "ccc/commentary/commentary.hpp"

#include <cctype>
#include <sstream>

#include "ccc/chess/notation.hpp"
#include "ccc/engine/summary.hpp"

namespace ccc::commentary {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::size_t word_count(const std::string& text) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string w; in >> w;) ++n;
    return n;
}

std::pair<std::string, bool> extract_comment(const std::string& completion) {
    const auto at = completion.rfind(kCommentDelimiter);
    if (at == std::string::npos) return {trim(completion), false};
    return {trim(completion.substr(at + std::char_traits<char>::length(kCommentDelimiter))), true};
}

llm::ChatRequest generation_request(const PromptBundle& bundle) {
    llm::ChatRequest req;
    req.messages = bundle.messages();
    req.temperature = llm::kGenerationTemperature;
    req.max_tokens = 512;
    return req;
}

Commentary generate_comment(llm::Client& client, const PromptBundle& bundle, const GenerationInput& in) {
    auto req = generation_request(bundle);
    const auto completion = client.complete(req);
    if (trim(completion.text).empty()) throw UpstreamError("LLM returned an empty completion");
    auto [text, found] = extract_comment(completion.text);
    if (text.empty()) throw UpstreamError("LLM completion has an empty comment after the delimiter");

    Commentary c;
    c.fen = chess::to_fen(in.position, chess::FenClocks::source);
    c.move_san = chess::format_san(in.position, in.move);
    c.condition = bundle.condition;
    c.text = std::move(text);
    c.delimiter_found = found;
    c.words = word_count(c.text);
    c.raw = completion.text;
    if (req.model_id.empty()) req.model_id = client.transport().default_model();
    c.prompt_hash = llm::cache_key(req);
    if (bundle.condition != Condition::plain && in.eval) c.engine_summary = engine::format_eval_summary(*in.eval);
    if (bundle.condition == Condition::expert_concept) c.concepts_used = in.priorities;
    return c;
}

}  // namespace ccc::commentary
