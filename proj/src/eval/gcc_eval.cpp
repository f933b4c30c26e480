#include "ccc/eval/gcc_eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>

#include "ccc/error.hpp"

namespace ccc::eval {

namespace {

// Judge templates verbatim, typos included ("Relevence", "commment");
// changing them would change what the judge sees.
constexpr const char* kHeadSingle = "You will be given single comment about a chess move.\n";
constexpr const char* kHeadFluency = "You will be given one comment written for a chess move.\n";
constexpr const char* kHeadRest =
    "Your task is to rate the comment on one metric.\n"
    "Please make sure you read and understand these instructions carefully. Please keep this document open while "
    "reviewing, and refer to it as needed.\n"
    "\n"
    "Evaluation Criteria:\n";

constexpr const char* kRelevance =
    "Relevance (1-5) - Relevence of a target comment. The comment should include only information relevant to the "
    "chess move or reasoning for taking or not taking the chess move. An engine evaluation result is given as a hint.\n"
    "Evaluation Steps:\n"
    "1. Read the comment carefully.\n"
    "2. Assess how well the comment addresses the important information about the chess move, and how relevant it "
    "is.\n"
    "3. Assign a Relevance score from 1 to 5.";
constexpr const char* kCompleteness =
    "Completeness (1-5) - Completeness of a comment. The comment should cover all critical points on the chess board, "
    "ensuring that no important factors are overlooked. An engine evaluation result is given as a hint.\n"
    "Evaluation Steps:\n"
    "1. Read the comment carefully.\n"
    "2. Assess how well the comment addresses the important information, and how well the comment covers the entire "
    "important information without missing any.\n"
    "3. Assign a Completeness score from 1 to 5.";
constexpr const char* kClarity =
    "Clarity (1-5) - Clarity of a comment. The comment should be clear and detailed, without vague or ambiguous "
    "statements.\n"
    "Evaluation Steps:\n"
    "1. Read the commment carefully.\n"
    "2. Assess how the comment is clear and detailed, without vague or ambiguous statements.\n"
    "3. Assign a Clarity score from 1 to 5.";
// Fluency has no "Evaluation Steps:" header.
constexpr const char* kFluency =
    "Fluency (1-5): Fluency of a comment.\n"
    "1. Read the commment carefully.\n"
    "2. Assess the sentences of comment is coherently organized. The comment should contain well-structured language "
    "and coherent transitions.\n"
    "3. Assign a Fluency score from 1 (not readable) to 5 (very fluent).";
constexpr const char* kScoreLine = "Score(1-5, score ONLY):";

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// 1..5 for a lone score digit, 0 for non-numeric tokens, -1 for any other
// numeric token ("4.5", "45", "0", "6").
int digit_value(const std::string& token) {
    const std::string t = trim(token);
    if (t.empty() || !std::isdigit(static_cast<unsigned char>(t[0]))) return 0;
    if (t.size() == 1 && t[0] >= '1' && t[0] <= '5') return t[0] - '0';
    return -1;
}

}  // namespace

const char* dimension_name(Dimension d) {
    switch (d) {
        case Dimension::relevance: return "Relevance";
        case Dimension::completeness: return "Completeness";
        case Dimension::clarity: return "Clarity";
        case Dimension::fluency: return "Fluency";
    }
    return "Relevance";
}

Dimension parse_dimension(const std::string& s) {
    std::string lower;
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (Dimension d : kDimensions) {
        std::string name = dimension_name(d);
        for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (name == lower) return d;
    }
    throw UsageError("unknown evaluation dimension: " + s);
}

bool needs_engine_summary(Dimension d) { return d == Dimension::relevance || d == Dimension::completeness; }

commentary::PromptBundle build_eval_prompt(Dimension d, const EvalInput& in) {
    if (needs_engine_summary(d) && !in.engine_summary)
        throw UsageError(std::string(dimension_name(d)) + " needs an engine evaluation");
    commentary::PromptBundle b;
    b.condition = commentary::Condition::expert;
    b.system = std::string(d == Dimension::fluency ? kHeadFluency : kHeadSingle) + kHeadRest;
    switch (d) {
        case Dimension::relevance: b.system += kRelevance; break;
        case Dimension::completeness: b.system += kCompleteness; break;
        case Dimension::clarity: b.system += kClarity; break;
        case Dimension::fluency: b.system += kFluency; break;
    }
    if (d == Dimension::fluency) {
        b.user = "target comment: " + in.comment + "\n";
    } else {
        b.user = "position: " + in.fen + "\nmove: " + in.move_label + "\n";
        b.user += (d == Dimension::clarity ? "comment: " : "target comment: ") + in.comment + "\n";
        if (d != Dimension::clarity) b.user += "engine evaluation: " + *in.engine_summary + "\n";
    }
    b.user += kScoreLine;
    return b;
}

llm::ChatRequest eval_request(const commentary::PromptBundle& bundle) {
    llm::ChatRequest req;
    req.messages = bundle.messages();
    req.temperature = llm::kEvaluationTemperature;
    req.max_tokens = 5;
    req.want_logprobs = true;
    req.top_k = llm::kMaxTopLogprobs;
    return req;
}

double ScoreDistribution::raw() const {
    double r = 0.0;
    for (int s = 1; s <= 5; ++s) r += s * mass[static_cast<std::size_t>(s - 1)];
    return r;
}

ScoreDistribution extract_score(const llm::Completion& c) {
    if (!c.token_logprobs) throw ScoreExtractionError("logprobs unavailable: cannot weight the score");
    const llm::TokenLogprob* at = nullptr;
    for (const auto& t : *c.token_logprobs) {
        const int v = digit_value(t.token);
        if (v < 0) throw ScoreExtractionError("score token is not a single digit 1-5: '" + t.token + "'", t.top);
        if (v > 0) {
            at = &t;
            break;
        }
    }
    if (!at) throw ScoreExtractionError("no score digit in completion: '" + c.text + "'");

    std::vector<llm::TopLogprob> alts = at->top;
    bool chosen_listed = false;
    for (const auto& a : alts) chosen_listed |= a.token == at->token;
    if (!chosen_listed) alts.push_back({at->token, at->logprob});

    ScoreDistribution d;
    for (const auto& a : alts) {
        const int v = digit_value(a.token);
        if (v > 0) d.mass[static_cast<std::size_t>(v - 1)] += std::exp(a.logprob);
    }
    for (double m : d.mass) d.coverage += m;
    if (d.coverage < kMinCoverage)
        throw UnreliableScoreError("unreliable score: digit probability mass " + std::to_string(d.coverage) + " < 0.5",
                                   alts);
    for (double& m : d.mass) m /= d.coverage;
    // Duplicate spellings (" 4" and "4") can push the sum a hair past 1.
    d.coverage = std::min(d.coverage, 1.0);
    return d;
}

double rescale(double raw, Scale scale) {
    const double top = scale == Scale::five_point ? 5.0 : 3.0;
    constexpr double eps = 1e-9;
    if (!(raw >= 1.0 - eps && raw <= top + eps))
        throw DataError("score " + std::to_string(raw) + " outside the " + (scale == Scale::five_point ? "1-5" : "1-3") +
                        " scale");
    return std::clamp((raw - 1.0) / (top - 1.0), 0.0, 1.0);
}

bool EvalScores::complete() const {
    for (const auto& d : dims)
        if (d.requested && !d.score) return false;
    return true;
}

EvalScores evaluate_comment(llm::Client& client, const EvalInput& in, const std::vector<Dimension>& dims) {
    if (dims.empty()) throw UsageError("no evaluation dimension requested");
    std::array<std::future<DimensionResult>, 4> jobs;
    for (std::size_t i = 0; i < kDimensions.size(); ++i) {
        if (std::find(dims.begin(), dims.end(), kDimensions[i]) == dims.end()) continue;
        jobs[i] = std::async(std::launch::async, [&client, &in, d = kDimensions[i]] {
            DimensionResult r;
            r.dimension = d;
            try {
                const auto completion = client.complete(eval_request(build_eval_prompt(d, in)));
                DimensionScore s;
                s.distribution = extract_score(completion);
                s.raw = s.distribution.raw();
                s.rescaled = rescale(s.raw);
                r.score = s;
            } catch (const Error& e) {
                r.error = e.what();
            }
            return r;
        });
    }
    EvalScores out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (jobs[i].valid()) {
            out.dims[i] = jobs[i].get();
        } else {
            out.dims[i].dimension = kDimensions[i];
            out.dims[i].requested = false;
        }
    }
    return out;
}

std::vector<Dimension> parse_dimensions(const std::string& list) {
    if (list == "all") return {kDimensions.begin(), kDimensions.end()};
    std::vector<Dimension> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto end = std::min(list.find(',', start), list.size());
        const auto d = parse_dimension(list.substr(start, end - start));
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        start = end + 1;
    }
    return out;
}

}  // namespace ccc::eval
