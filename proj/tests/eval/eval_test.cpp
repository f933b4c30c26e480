#include <doctest.h>

#include <cmath>

#include "ccc/error.hpp"
#include "ccc/eval/gcc_eval.hpp"
#include "ccc/eval/stats.hpp"
#include "support/golden.hpp"

using namespace ccc;
using namespace ccc::eval;
using ccc::testing::read_golden;

namespace {

EvalInput endgame() {
    return {"8/3nk3/1p4pp/1N1P1p2/1bP2KP1/3P1P2/7P/8 b - - 0 0", "30... Bd2+",
            "Good move, Bd2+ forces the White king to move, gaining tempo and improving the position of the Black "
            "bishop.",
            "actual move - Bd2+ 232cp, expected reply - f4g3, best move - Bd2+ similar to actual move, second best move "
            "- Nc5 similar to actual move"};
}

llm::Completion alternatives(const std::vector<std::pair<std::string, double>>& probs, const std::string& chosen = "") {
    llm::TokenLogprob t;
    for (const auto& [tok, p] : probs) t.top.push_back({tok, std::log(p)});
    t.token = chosen.empty() ? probs.front().first : chosen;
    t.logprob = t.top.front().logprob;
    llm::Completion c;
    c.text = t.token;
    c.token_logprobs = std::vector<llm::TokenLogprob>{t};
    return c;
}

}  // namespace

TEST_CASE("judge prompts match the golden files byte for byte") {
    for (Dimension d : kDimensions) {
        std::string name = dimension_name(d);
        for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        CAPTURE(name);
        const auto b = build_eval_prompt(d, endgame());
        CHECK(b.system == read_golden(name + ".system.txt"));
        CHECK(b.user == read_golden(name + ".user.txt"));
        CHECK(b.fewshot.empty());
    }
}

TEST_CASE("judge prompt structure") {
    const auto rel = build_eval_prompt(Dimension::relevance, endgame());
    CHECK(rel.system.find("An engine evaluation result is given as a hint.") != std::string::npos);
    const auto clar = build_eval_prompt(Dimension::clarity, endgame());
    CHECK(clar.user.find("engine evaluation") == std::string::npos);
    const auto flu = build_eval_prompt(Dimension::fluency, endgame());
    CHECK(flu.user.rfind("target comment: ", 0) == 0);
    CHECK(flu.user.find("position:") == std::string::npos);
    CHECK(flu.system.find("Evaluation Steps:") == std::string::npos);

    EvalInput no_summary = endgame();
    no_summary.engine_summary.reset();
    CHECK_THROWS_AS(build_eval_prompt(Dimension::relevance, no_summary), UsageError);
    CHECK_THROWS_AS(build_eval_prompt(Dimension::completeness, no_summary), UsageError);
    CHECK_NOTHROW(build_eval_prompt(Dimension::clarity, no_summary));
    CHECK_NOTHROW(build_eval_prompt(Dimension::fluency, no_summary));

    const auto req = eval_request(rel);
    CHECK(req.temperature == 0.0);
    CHECK(req.want_logprobs);
    CHECK(req.top_k == 20);
    CHECK(parse_dimension("fluency") == Dimension::fluency);
    CHECK_THROWS_AS(parse_dimension("correctness"), UsageError);
}

TEST_CASE("probability-weighted scores") {
    const auto a = extract_score(alternatives({{"4", 0.6}, {"5", 0.4}}));
    CHECK(std::abs(a.raw() - 4.4) <= 1e-9);
    CHECK(std::abs(a.coverage - 1.0) <= 1e-9);

    const auto b = extract_score(alternatives({{"4", 0.5}, {"5", 0.3}, {"3", 0.2}}));
    CHECK(std::abs(b.raw() - 4.1) <= 1e-9);
    CHECK(std::abs(rescale(b.raw()) - 0.775) <= 1e-9);

    const auto c = extract_score(alternatives({{"4", 0.45}, {"5", 0.45}, {".", 0.10}}));
    CHECK(std::abs(c.coverage - 0.9) <= 1e-9);
    CHECK(std::abs(c.mass[3] - 0.5) <= 1e-9);
    CHECK(std::abs(c.mass[4] - 0.5) <= 1e-9);
    CHECK(std::abs(c.raw() - 4.5) <= 1e-9);

    const auto u = extract_score(alternatives({{"5", 1.0}}));
    CHECK(u.raw() == 5.0);
    CHECK(rescale(u.raw()) == 1.0);
}

TEST_CASE("score token location") {
    // Leading non-numeric tokens are skipped; whitespace-padded digits count.
    llm::Completion c = alternatives({{" 3", 0.7}, {"2", 0.3}});
    c.token_logprobs->insert(c.token_logprobs->begin(), llm::TokenLogprob{"Score", -0.01, {}});
    const auto d = extract_score(c);
    CHECK(std::abs(d.raw() - 2.7) <= 1e-9);

    // The chosen token counts even when the top list omits it.
    llm::Completion only_chosen;
    only_chosen.text = "4";
    only_chosen.token_logprobs = std::vector<llm::TokenLogprob>{{"4", std::log(0.9), {}}};
    CHECK(extract_score(only_chosen).raw() == doctest::Approx(4.0));

    CHECK_THROWS_AS(extract_score(alternatives({{"4.5", 0.9}})), ScoreExtractionError);
    CHECK_THROWS_AS(extract_score(alternatives({{"45", 0.9}})), ScoreExtractionError);
    llm::Completion words;
    words.text = "good";
    words.token_logprobs = std::vector<llm::TokenLogprob>{{"good", -0.1, {}}};
    CHECK_THROWS_WITH_AS(extract_score(words), doctest::Contains("no score digit"), ScoreExtractionError);
    llm::Completion none;
    none.text = "4";
    CHECK_THROWS_WITH_AS(extract_score(none), doctest::Contains("logprobs unavailable"), ScoreExtractionError);

    try {
        extract_score(alternatives({{"4", 0.3}, {"four", 0.6}, {"5", 0.1}}));
        FAIL("expected unreliable score");
    } catch (const UnreliableScoreError& e) {
        CHECK(e.alternatives().size() == 3);
    }
}

TEST_CASE("score properties") {
    // Raw stays in [1, 5] and moving mass upward never lowers it.
    for (double p = 0.0; p <= 1.0; p += 0.1) {
        std::vector<std::pair<std::string, double>> probs;
        if (p > 0) probs.emplace_back("2", p);
        if (p < 1) probs.emplace_back("3", 1 - p);
        if (probs.size() == 2 && probs[1].second < 1e-12) probs.pop_back();
        const double low = extract_score(alternatives(probs)).raw();
        auto shifted = probs;
        for (auto& [tok, _] : shifted)
            if (tok == "2") tok = "5";
        const double high = extract_score(alternatives(shifted)).raw();
        CHECK(low >= 1.0);
        CHECK(high <= 5.0);
        CHECK(high >= low);
    }
    // A normalized distribution comes back unchanged.
    const auto d = extract_score(alternatives({{"1", 0.1}, {"2", 0.2}, {"3", 0.3}, {"4", 0.4}}));
    const auto again =
        extract_score(alternatives({{"1", d.mass[0]}, {"2", d.mass[1]}, {"3", d.mass[2]}, {"4", d.mass[3]}}));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(again.mass[i] - d.mass[i]) <= 1e-12);
}

TEST_CASE("rescaling") {
    CHECK(rescale(5) == 1.0);
    CHECK(rescale(1) == 0.0);
    CHECK(rescale(3, Scale::three_point) == 1.0);
    CHECK(rescale(1, Scale::three_point) == 0.0);
    CHECK(rescale(2, Scale::three_point) == 0.5);
    CHECK(std::abs(rescale(4.1) - 0.775) <= 1e-12);
    CHECK_THROWS_AS(rescale(5.5), DataError);
    CHECK_THROWS_AS(rescale(4, Scale::three_point), DataError);
    CHECK_THROWS_AS(rescale(0.5), DataError);
}

TEST_CASE("four-dimension evaluation under a mock judge") {
    auto mock = std::make_shared<llm::MockTransport>();
    mock->add_rule({"all", std::nullopt, {"Score(1-5, score ONLY):"}, llm::distribution_completion({{"5", 1.0}})});
    llm::Client client(mock);
    const auto scores = evaluate_comment(client, endgame());
    CHECK(scores.complete());
    for (const auto& d : scores.dims) {
        REQUIRE(d.score);
        CHECK(d.score->raw == 5.0);
        CHECK(d.score->rescaled == 1.0);
    }
    CHECK(scores.dims[0].dimension == Dimension::relevance);
    CHECK(scores.dims[3].dimension == Dimension::fluency);
}

TEST_CASE("one failed dimension leaves the others scored") {
    auto mock = std::make_shared<llm::MockTransport>();
    llm::Completion prose;
    prose.text = "I would rate this highly.";
    prose.token_logprobs = std::vector<llm::TokenLogprob>{{"I", -0.1, {}}};
    mock->add_rule({"fluency", std::nullopt, {"Fluency (1-5)"}, prose});
    mock->add_rule({"rest", std::nullopt, {"Score(1-5"}, llm::distribution_completion({{"4", 0.6}, {"5", 0.4}})});
    llm::Client client(mock);
    const auto scores = evaluate_comment(client, endgame());
    CHECK_FALSE(scores.complete());
    int failed = 0;
    for (const auto& d : scores.dims) {
        if (d.score) CHECK(std::abs(d.score->raw - 4.4) <= 1e-9);
        else {
            ++failed;
            CHECK(d.dimension == Dimension::fluency);
            CHECK(d.error.find("no score digit") != std::string::npos);
        }
    }
    CHECK(failed == 1);

    // Deterministic end to end.
    const auto again = evaluate_comment(client, endgame());
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(again.dims[i].score.has_value() == scores.dims[i].score.has_value());
        if (again.dims[i].score) CHECK(again.dims[i].score->raw == scores.dims[i].score->raw);
    }
}

TEST_CASE("pearson") {
    const std::vector<double> xs{1, 2, 4, 7, 11};
    CHECK(std::abs(pearson(xs, xs) - 1.0) <= 1e-9);
    std::vector<double> neg, affine;
    for (double x : xs) {
        neg.push_back(-x);
        affine.push_back(3 * x + 7);
    }
    CHECK(std::abs(pearson(xs, neg) + 1.0) <= 1e-9);
    CHECK(std::abs(pearson(xs, affine) - 1.0) <= 1e-9);
    // Closed form for a small fixture: r = 0.8 for (1,2,3,4,5) vs (2,1,4,3,5).
    CHECK(std::abs(pearson({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}) - 0.8) <= 1e-9);
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), DataError);
    CHECK_THROWS_AS(pearson({1}, {1}), DataError);
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), DataError);
}

TEST_CASE("kendall tau-b") {
    CHECK(std::abs(kendall_tau({1, 2, 3}, {3, 2, 1}) + 1.0) <= 1e-9);
    CHECK(std::abs(kendall_tau({1, 2, 3, 4}, {1, 2, 3, 4}) - 1.0) <= 1e-9);
    // (1,2,3,4,5) vs (2,1,4,3,5): 8 concordant, 2 discordant -> 0.6.
    CHECK(std::abs(kendall_tau({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}) - 0.6) <= 1e-9);
    // Ties: x = (1,1,2,3), y = (1,2,2,3). S = 4, n0 = 6, n1 = 1, n2 = 1
    // -> 4 / sqrt(5 * 5) = 0.8.
    CHECK(std::abs(kendall_tau({1, 1, 2, 3}, {1, 2, 2, 3}) - 0.8) <= 1e-9);
    // Invariant under strictly monotone transforms.
    const std::vector<double> xs{0.3, 1.7, 2.2, 5.0, 4.1}, ys{2, 1, 4, 3, 5};
    std::vector<double> cubed;
    for (double x : xs) cubed.push_back(x * x * x + 1);
    CHECK(kendall_tau(xs, ys) == doctest::Approx(kendall_tau(cubed, ys)).epsilon(1e-12));
    CHECK_THROWS_AS(kendall_tau({2, 2, 2}, {1, 2, 3}), DataError);
}

TEST_CASE("fleiss kappa") {
    CHECK(std::abs(fleiss_kappa({{3, 0}, {0, 3}, {3, 0}}) - 1.0) <= 1e-9);
    // Four items, three raters, two categories:
    //   P_i = 1, 1/3, 1/3, 1 -> mean 2/3; p = (1/2, 1/2) -> P_e = 1/2;
    //   kappa = (2/3 - 1/2) / (1 - 1/2) = 1/3.
    CHECK(std::abs(fleiss_kappa({{3, 0}, {2, 1}, {1, 2}, {0, 3}}) - 1.0 / 3.0) <= 1e-9);
    // Worked example from Fleiss (1971) as reproduced on Wikipedia: 10 items,
    // 14 raters, 5 categories, kappa = 0.20993.
    const std::vector<std::vector<int>> wiki{{0, 0, 0, 0, 14}, {0, 2, 6, 4, 2}, {0, 0, 3, 5, 6}, {0, 3, 9, 2, 0},
                                             {2, 2, 8, 1, 1},  {7, 7, 0, 0, 0}, {3, 2, 6, 3, 0}, {2, 5, 3, 2, 2},
                                             {6, 5, 2, 1, 0},  {0, 2, 2, 3, 7}};
    CHECK(std::abs(fleiss_kappa(wiki) - 0.209930) <= 1e-5);
    CHECK(fleiss_kappa({{3, 0}, {3, 0}}) == 1.0);
    CHECK_THROWS_AS(fleiss_kappa({{3, 0}, {1, 1}}), DataError);
    CHECK_THROWS_AS(fleiss_kappa({}), DataError);
}
