#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccc/commentary/prompt.hpp"
#include "ccc/llm/client.hpp"

namespace ccc::eval {

enum class Dimension { relevance, completeness, clarity, fluency };
inline constexpr std::array<Dimension, 4> kDimensions{Dimension::relevance, Dimension::completeness, Dimension::clarity,
                                                      Dimension::fluency};
/// "Relevance", ...
const char* dimension_name(Dimension d);
Dimension parse_dimension(const std::string& s);
bool needs_engine_summary(Dimension d);

struct EvalInput {
    std::string fen;         // shown verbatim
    std::string move_label;  // "30... Bd2+"
    std::string comment;
    std::optional<std::string> engine_summary;
};

/// The judge prompt for one dimension. Throws UsageError when Relevance or
/// Completeness lacks an engine summary.
commentary::PromptBundle build_eval_prompt(Dimension d, const EvalInput& in);
llm::ChatRequest eval_request(const commentary::PromptBundle& bundle);

struct ScoreDistribution {
    std::array<double, 5> mass{};  // index s-1
    double coverage = 0.0;
    double raw() const;
};

/// Extraction failed; carries the alternatives seen at the score position.
class ScoreExtractionError : public UpstreamError {
public:
    ScoreExtractionError(const std::string& what, std::vector<llm::TopLogprob> alternatives = {})
        : UpstreamError(what), alternatives_(std::move(alternatives)) {}
    const std::vector<llm::TopLogprob>& alternatives() const { return alternatives_; }

private:
    std::vector<llm::TopLogprob> alternatives_;
};

class UnreliableScoreError : public ScoreExtractionError {
public:
    using ScoreExtractionError::ScoreExtractionError;
};

inline constexpr double kMinCoverage = 0.5;

/// Probability-weighted score over the digit alternatives at the first
/// generated score token, renormalized over 1..5.
ScoreDistribution extract_score(const llm::Completion& c);

enum class Scale { five_point, three_point };
/// (raw-1)/4 or (raw-1)/2; throws DataError outside the scale.
double rescale(double raw, Scale scale = Scale::five_point);

struct DimensionScore {
    double raw = 0.0;
    double rescaled = 0.0;
    ScoreDistribution distribution;
};

struct DimensionResult {
    Dimension dimension = Dimension::relevance;
    /// False for dimensions left out of the request; they carry no score.
    bool requested = true;
    std::optional<DimensionScore> score;
    std::string error;
};

struct EvalScores {
    std::array<DimensionResult, 4> dims;
    /// Every requested dimension has a score.
    bool complete() const;
};

/// Independent judge calls, one per requested dimension, in parallel. A
/// failed dimension records its error and leaves the others untouched.
EvalScores evaluate_comment(llm::Client& client, const EvalInput& in,
                            const std::vector<Dimension>& dims = {kDimensions.begin(), kDimensions.end()});

/// "all" or a comma list of dimension names.
std::vector<Dimension> parse_dimensions(const std::string& list);

}  // namespace ccc::eval
