#include "ccc/service/pipeline.hpp"

#include <cctype>
#include <sstream>

#include "ccc/chess/attacks.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/concepts/io.hpp"
#include "ccc/concepts/prioritize.hpp"
#include "ccc/engine/summary.hpp"
#include "ccc/error.hpp"

namespace ccc::service {

namespace {

std::shared_ptr<const concepts::ActivationProvider> provider_for(const std::string& spec) {
    if (spec == "synthetic" || spec == "synthetic-onehot-773") return std::make_shared<concepts::SyntheticProvider>();
    if (spec == "analytic-eval-units")
        return std::make_shared<concepts::AnalyticFeatureProvider>(concepts::AnalyticFeatureProvider::evaluation_units());
    if (spec == "analytic-raw")
        return std::make_shared<concepts::AnalyticFeatureProvider>(concepts::AnalyticFeatureProvider::raw());
    if (spec.rfind("file:", 0) == 0)
        return std::make_shared<concepts::FileProvider>(concepts::FileProvider::load(spec.substr(5)));
    return nullptr;
}

}  // namespace

ConceptModel load_concept_model(const std::string& spec, const std::string& activations) {
    ConceptModel m;
    if (spec == "oracle") {
        auto provider =
            std::make_shared<concepts::AnalyticFeatureProvider>(concepts::AnalyticFeatureProvider::evaluation_units());
        m.vectors = concepts::oracle_vectors(*provider);
        m.provider = provider;
        return m;
    }
    m.vectors = concepts::load_vectors(spec);
    if (m.vectors.empty()) throw DataError("no concept vectors in " + spec);
    const std::string source = activations.empty() ? m.vectors.front().meta.provider : activations;
    m.provider = provider_for(source);
    if (!m.provider)
        throw UsageError("concept vectors in " + spec + " were trained on provider '" + source +
                         "'; pass the matching activations (synthetic or file:PATH)");
    for (const auto& v : m.vectors)
        if (v.weights.size() != m.provider->dimension())
            throw DataError("concept vector " + std::string(concepts::concept_display_name(v.name)) + " has " +
                            std::to_string(v.weights.size()) + " weights but provider " + m.provider->id() +
                            " has dimension " + std::to_string(m.provider->dimension()));
    return m;
}

std::unique_ptr<engine::Engine> open_engine(const std::string& spec, int depth) {
    engine::EngineConfig cfg;
    cfg.limit = {depth, std::nullopt};
    if (spec.rfind("script:", 0) == 0) {
        cfg.script = spec.substr(7);
    } else if (spec.rfind("uci:", 0) == 0) {
        std::istringstream words(spec.substr(4));
        words >> cfg.executable;
        for (std::string a; words >> a;) cfg.args.push_back(a);
    } else {
        throw UsageError("unknown engine '" + spec + "' (expected uci:PATH or script:TRANSCRIPT)");
    }
    return engine::Engine::open(cfg);
}

AnalyzeResult analyze(Pipeline& pipe, const AnalyzeRequest& req, bool open_session) {
    if (!pipe.llm) throw UsageError("no LLM configured");
    commentary::GenerationInput in;
    in.position = chess::parse_fen(req.fen);
    in.move = chess::parse_san(in.position, req.move_san);
    in.move_number = req.move_number;
    if (pipe.engine) in.eval = pipe.engine->analyze(in.position, in.move);
    if (pipe.concepts)
        in.priorities = concepts::prioritize(pipe.concepts->vectors, in.position, in.move,
                                             in.eval ? in.eval->expected_reply : std::nullopt,
                                             *pipe.concepts->provider);
    in.attacks = chess::enumerate_attacks(in.position);

    const auto bundle = commentary::build_generation_prompt(in, req.condition);
    AnalyzeResult r;
    r.commentary = commentary::generate_comment(*pipe.llm, bundle, in);
    r.move_label = chess::move_label(in.position, chess::format_san(in.position, in.move), in.move_number);
    r.concepts = in.priorities;
    if (in.eval) r.engine_summary = engine::format_eval_summary(*in.eval, pipe.similarity_cp);
    r.attacks = chess::describe_attacks(in.attacks);
    if (open_session) r.session_id = pipe.sessions->create(in.position, r.move_label, r.commentary);
    return r;
}

eval::EvalScores evaluate(Pipeline& pipe, const EvaluateRequest& req) {
    if (!pipe.llm) throw UsageError("no LLM configured");
    const auto p = chess::parse_fen(req.fen);
    const auto move = chess::parse_san(p, req.move_san);
    eval::EvalInput in;
    in.fen = req.fen;
    in.move_label = chess::move_label(p, chess::format_san(p, move), req.move_number);
    in.comment = req.comment;
    if (pipe.engine) in.engine_summary = engine::format_eval_summary(pipe.engine->analyze(p, move), pipe.similarity_cp);
    return eval::evaluate_comment(*pipe.llm, in, req.dims);
}

nlohmann::ordered_json analyze_json(const AnalyzeResult& r) {
    nlohmann::ordered_json j;
    j["commentary"] = r.commentary.text;
    j["move"] = r.move_label;
    j["condition"] = commentary::condition_name(r.commentary.condition);
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : r.concepts)
        cs.push_back({{"name", std::string(concepts::concept_display_name(c.name))}, {"delta", c.delta}, {"rank", c.rank}});
    j["concepts"] = std::move(cs);
    j["engine_summary"] = r.engine_summary ? nlohmann::ordered_json(*r.engine_summary) : nlohmann::ordered_json();
    j["attacks"] = r.attacks;
    j["session_id"] = r.session_id;
    return j;
}

nlohmann::ordered_json eval_json(const eval::EvalScores& s) {
    nlohmann::ordered_json j;
    for (const auto& d : s.dims) {
        if (!d.requested) continue;
        nlohmann::ordered_json e;
        if (d.score) {
            e["raw"] = d.score->raw;
            e["rescaled"] = d.score->rescaled;
            e["coverage"] = d.score->distribution.coverage;
            e["distribution"] = d.score->distribution.mass;
        } else {
            e["error"] = d.error;
        }
        std::string key = eval::dimension_name(d.dimension);
        for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        j[key] = std::move(e);
    }
    j["complete"] = s.complete();
    return j;
}

}  // namespace ccc::service
