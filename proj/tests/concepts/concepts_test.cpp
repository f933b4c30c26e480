#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/concepts/dataset.hpp"
#include "ccc/concepts/io.hpp"
#include "ccc/concepts/labeler.hpp"
#include "ccc/concepts/prioritize.hpp"
#include "ccc/concepts/provider.hpp"
#include "ccc/concepts/vector.hpp"
#include "support/queen_suite.hpp"
#include "support/random_positions.hpp"

using namespace ccc;
using namespace ccc::concepts;
using chess::Color;
using chess::parse_fen;

namespace {

constexpr const char* kEndgame = "8/3nk3/1p4pp/1N1P1p2/1bP2KP1/3P1P2/7P/8 b - - 0 0";

std::size_t count_ones(const std::vector<double>& x) {
    return static_cast<std::size_t>(std::count(x.begin(), x.end(), 1.0));
}

std::size_t hamming(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
    return n;
}

// Provider returning the same vector for every position.
struct ConstantProvider : ActivationProvider {
    std::vector<double> x;
    bool relative = false;
    std::size_t dimension() const override { return x.size(); }
    std::string id() const override { return "constant"; }
    std::vector<double> activation(const chess::Position&) const override { return x; }
    bool mover_relative() const override { return relative; }
};

// Provider encoding only the side to move as +1 / -1.
struct SideProvider : ActivationProvider {
    bool relative = false;
    std::size_t dimension() const override { return 1; }
    std::string id() const override { return "side"; }
    std::vector<double> activation(const chess::Position& p) const override {
        return {p.side_to_move() == Color::White ? 1.0 : -1.0};
    }
    bool mover_relative() const override { return relative; }
};

ConceptVector make_vector(ConceptName c, std::vector<double> w, double b) {
    ConceptVector v;
    v.name = c;
    v.weights = std::move(w);
    v.bias = b;
    return v;
}

std::vector<std::string> distinct_fens(std::size_t n, std::uint64_t seed) {
    std::vector<std::string> fens;
    for (const auto& p : sample_positions(n, seed, 60)) fens.push_back(chess::to_fen(p));
    return fens;
}

}  // namespace

TEST_CASE("concept names and order") {
    CHECK(table_concepts().size() == 21);
    CHECK(concept_display_name(table_concepts().front()) == "Material");
    CHECK(concept_display_name(table_concepts().back()) == "Black Passedpawns");
    CHECK(concept_display_name(ConceptName::WhiteKingsafety) == "White Kingsafety");
    for (ConceptName c : table_concepts()) {
        CHECK(parse_concept(concept_display_name(c)) == c);
        CHECK(concept_kind(c) == ConceptKind::table);
    }
    CHECK(parse_concept("black_passedpawns") == ConceptName::BlackPassedpawns);
    CHECK(parse_concept("mate-in-one") == ConceptName::MateInOne);
    CHECK(concept_kind(ConceptName::MateInOne) == ConceptKind::hint);
    CHECK_FALSE(parse_concept("Tempo"));
    CHECK(analytic_concepts().size() == 8);
}

TEST_CASE("synthetic activation layout") {
    const SyntheticProvider prov;
    const auto x = prov.activation(chess::Position::initial());
    REQUIRE(x.size() == 773);
    CHECK(count_ones(x) == 32 + 4 + 1);
    CHECK(std::count(x.begin(), x.begin() + 768, 1.0) == 32);
    CHECK(x[768] == 1.0);
    CHECK(x[771] == 1.0);
    CHECK(x[772] == 1.0);
    // white king on e1 (index 4): piece index 5
    CHECK(x[5 * 64 + 4] == 1.0);
    // black queen on d8 (index 59): piece index 10
    CHECK(x[10 * 64 + 59] == 1.0);

    const auto black_to_move = prov.activation(parse_fen("rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1"));
    CHECK(black_to_move[772] == 0.0);
}

TEST_CASE("one move changes at most 7 synthetic coordinates, 6 unless castling") {
    const SyntheticProvider prov;
    std::map<std::string, std::size_t> worst;
    auto positions = testing::random_positions(300, 3);
    // make sure castling with full rights and rook captures on home squares appear
    positions.push_back(parse_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1"));
    positions.push_back(parse_fen("r3k2r/8/8/8/8/8/8/R3K2R b KQkq - 0 1"));
    positions.push_back(parse_fen("r3k2r/1P6/8/8/8/8/8/R3K2R w KQkq - 0 1"));
    for (const auto& p : positions) {
        const auto before = prov.activation(p);
        for (const auto& m : chess::legal_moves(p)) {
            const auto d = hamming(before, prov.activation(chess::apply_move(p, m)));
            std::string kind = m.has(chess::kCastleKingside) || m.has(chess::kCastleQueenside) ? "castle"
                               : m.has(chess::kEnPassant)                                        ? "en_passant"
                               : m.has(chess::kCapture)                                          ? "capture"
                                                                                                 : "quiet";
            worst[kind] = std::max(worst[kind], d);
        }
    }
    CHECK(worst["quiet"] <= 6);
    CHECK(worst["capture"] <= 6);
    CHECK(worst["en_passant"] <= 6);
    CHECK(worst["castle"] == 7);
}

TEST_CASE("analytic labelers on fixtures") {
    const auto init = chess::Position::initial();
    CHECK(label_concept(init, ConceptName::Material) == 0);
    CHECK(label_concept(init, ConceptName::Pawns) == 0);
    CHECK(label_concept(init, ConceptName::WhiteMobility) == 20);
    CHECK(label_concept(init, ConceptName::BlackMobility) == 20);
    CHECK(label_concept(init, ConceptName::WhiteKingsafety) == 0);
    CHECK(label_concept(init, ConceptName::WhitePassedpawns) == 0);

    const auto endgame = parse_fen(kEndgame);
    CHECK(material_balance(endgame) == -1);
    CHECK(passed_pawns(endgame, Color::White) == 1);
    CHECK(pawn_balance(endgame) == 2);

    // doubled passed pawn counts once
    CHECK(passed_pawns(parse_fen("4k3/8/8/3P4/8/3P4/8/4K3 w - - 0 1"), Color::White) == 1);
    // enemy pawn ahead on an adjacent file stops it
    CHECK(passed_pawns(parse_fen("4k3/2p5/8/3P4/8/8/8/4K3 w - - 0 1"), Color::White) == 0);
    // ... but one behind does not
    CHECK(passed_pawns(parse_fen("4k3/8/8/3P4/2p5/8/8/4K3 w - - 0 1"), Color::White) == 1);
    CHECK(passed_pawns(parse_fen("4k3/8/8/3P4/2p5/8/8/4K3 w - - 0 1"), Color::Black) == 1);

    // rook on g1 covers g7 and g8 next to the black king
    CHECK(king_safety(parse_fen("7k/8/8/8/8/8/8/4K1R1 w - - 0 1"), Color::Black) == -2);
    // the side not to move is counted with the move handed over
    CHECK(mobility(parse_fen("7k/8/8/8/8/8/8/4K1R1 w - - 0 1"), Color::Black) == 1);
}

TEST_CASE("labelers are colour-antisymmetric") {
    for (const auto& p : testing::random_positions(150, 5)) {
        const auto m = chess::mirrored(p);
        CHECK(material_balance(m) == -material_balance(p));
        CHECK(pawn_balance(m) == -pawn_balance(p));
        CHECK(mobility(m, Color::Black) == mobility(p, Color::White));
        CHECK(king_safety(m, Color::Black) == king_safety(p, Color::White));
        CHECK(passed_pawns(m, Color::Black) == passed_pawns(p, Color::White));
    }
}

TEST_CASE("labelers without an analytic form") {
    CHECK_THROWS_AS(label_concept(chess::Position::initial(), ConceptName::Imbalance), LabelerUnavailable);
    ScoreFileLabeler scores;
    scores.insert(std::string(chess::kInitialFen), ConceptName::Imbalance, 0.25);
    CHECK(scores.label(chess::Position::initial(), ConceptName::Imbalance) == 0.25);
    CHECK_THROWS_AS(scores.label(chess::Position::initial(), ConceptName::Material), DataError);
    ScoreFileLabeler with_fallback(true);
    CHECK(with_fallback.label(chess::Position::initial(), ConceptName::Material) == 0);
}

TEST_CASE("select_extremes order statistics") {
    const auto fens = distinct_fens(100, 9);
    std::vector<ScoredFen> entries;
    for (std::size_t i = 0; i < fens.size(); ++i) entries.push_back({fens[i], static_cast<double>(i)});
    const auto ds = select_extremes(ConceptName::Material, entries, 0.05);
    std::set<double> pos, neg;
    for (const auto& f : ds.positives) pos.insert(ds.source_scores.at(f));
    for (const auto& f : ds.negatives) neg.insert(ds.source_scores.at(f));
    CHECK(pos == std::set<double>{95, 96, 97, 98, 99});
    CHECK(neg == std::set<double>{0, 1, 2, 3, 4});
}

TEST_CASE("select_extremes at full scale") {
    std::vector<ScoredFen> entries;
    entries.reserve(200000);
    for (int i = 0; i < 200000; ++i) entries.push_back({"p" + std::to_string(i) + " w - -", static_cast<double>(i % 997)});
    const auto ds = select_extremes(ConceptName::Material, std::move(entries), 0.05);
    CHECK(ds.positives.size() == 10000);
    CHECK(ds.negatives.size() == 10000);
}

TEST_CASE("select_extremes ties, duplicates and errors") {
    const auto fens = distinct_fens(40, 10);
    std::vector<ScoredFen> flat;
    for (const auto& f : fens) flat.push_back({f, 0.0});
    CHECK_THROWS_AS(select_extremes(ConceptName::Material, flat, 0.05), DataError);

    // one outlier; the tie group feeds both classes without overlap
    flat[7].score = 1.0;
    const auto ds = select_extremes(ConceptName::Material, flat, 0.5);
    CHECK(ds.positives.size() == 20);
    CHECK(ds.negatives.size() == 20);
    std::set<std::string> all(ds.positives.begin(), ds.positives.end());
    for (const auto& f : ds.negatives) CHECK(all.count(f) == 0);
    CHECK(ds.positives.front() == fens[7]);
    // ties broken by FEN text
    CHECK(std::is_sorted(ds.negatives.begin(), ds.negatives.end()));

    auto dup = flat;
    dup.push_back({fens[3].substr(0, fens[3].rfind(' ')) + " 99", 5.0});  // same key, other clock
    const auto dd = select_extremes(ConceptName::Material, dup, 0.05);
    CHECK(dd.source_scores.size() == 40);

    CHECK_THROWS_AS(select_extremes(ConceptName::Material, flat, 0.0), UsageError);
    CHECK_THROWS_AS(select_extremes(ConceptName::Material, flat, 0.6), UsageError);
    flat.resize(19);
    CHECK_THROWS_AS(select_extremes(ConceptName::Material, flat, 0.05), UsageError);
}

TEST_CASE("split keeps classes balanced and disjoint") {
    const auto fens = distinct_fens(200, 11);
    const auto ds = build_concept_dataset(fens, ConceptName::WhiteMobility, AnalyticLabeler{}, 0.25);
    const auto [train, test] = split_dataset(ds, 0.2, 4);
    CHECK(test.positives.size() == 10);
    CHECK(test.negatives.size() == 10);
    CHECK(train.positives.size() == 40);
    std::set<std::string> tr(train.positives.begin(), train.positives.end());
    tr.insert(train.negatives.begin(), train.negatives.end());
    for (const auto& f : test.positives) CHECK(tr.count(f) == 0);
    const auto again = split_dataset(ds, 0.2, 4);
    CHECK(again.second.positives == test.positives);
}

TEST_CASE("stable_shuffle is a seeded permutation") {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
    auto a = v, b = v;
    stable_shuffle(a, 1);
    stable_shuffle(b, 1);
    CHECK(a == b);
    CHECK(a != v);
    std::sort(a.begin(), a.end());
    CHECK(a == v);
}

TEST_CASE("svm separates two clusters and is deterministic") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (int i = 0; i < 400; ++i) {
        const int y = i % 2 ? 1 : -1;
        xs.push_back({2.0 * y + noise(rng), -1.0 * y + noise(rng), noise(rng)});
        ys.push_back(y);
    }
    const auto v = train_linear_svm(ConceptName::Material, xs, ys);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) correct += (concept_score(v, xs[i]) > 0) == (ys[i] > 0);
    CHECK(correct == xs.size());
    CHECK(std::isfinite(v.bias));
    CHECK(v.meta.n_train == 400);

    const auto again = train_linear_svm(ConceptName::Material, xs, ys);
    std::ostringstream a, b;
    write_vectors(a, {v});
    write_vectors(b, {again});
    CHECK(a.str() == b.str());

    TrainingHyper other;
    other.seed = 99;
    CHECK(train_linear_svm(ConceptName::Material, xs, ys, other).weights != v.weights);
}

TEST_CASE("svm input validation") {
    const std::vector<std::vector<double>> xs{{1, 2}, {3}};
    CHECK_THROWS_AS(train_linear_svm(ConceptName::Material, xs, {1, -1}), DataError);
    CHECK_THROWS_AS(train_linear_svm(ConceptName::Material, {{1.0}, {std::nan("")}}, {1, -1}), DataError);
    CHECK_THROWS_AS(train_linear_svm(ConceptName::Material, {{1.0}, {2.0}}, {1, 1}), DataError);
}

TEST_CASE("standardization is stored and applied") {
    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (int i = 0; i < 100; ++i) {
        const int y = i % 2 ? 1 : -1;
        xs.push_back({1000.0 + 50.0 * y + i % 7, 0.001 * (i % 3)});
        ys.push_back(y);
    }
    TrainingHyper h;
    h.standardize = true;
    const auto v = train_linear_svm(ConceptName::Pawns, xs, ys, h);
    REQUIRE(v.meta.mean.size() == 2);
    CHECK(v.meta.mean[0] == doctest::Approx(1000.0 + 3.0).epsilon(0.01));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) correct += (concept_score(v, xs[i]) > 0) == (ys[i] > 0);
    CHECK(correct == xs.size());
}

TEST_CASE("concept_score geometry") {
    const auto v = make_vector(ConceptName::Material, {3, 4}, 0);
    CHECK(concept_score(v, std::vector<double>{3, 4}) == doctest::Approx(5.0));
    const auto w = make_vector(ConceptName::Material, {3, 4}, -10);
    CHECK(concept_score(w, std::vector<double>{2, 1}) == doctest::Approx(0.0));
    const auto scaled = make_vector(ConceptName::Material, {7.5, 10}, -25);
    CHECK(concept_score(scaled, std::vector<double>{1, -2}) == doctest::Approx(concept_score(w, std::vector<double>{1, -2})));
    CHECK_THROWS_AS(concept_score(v, std::vector<double>{1, 2, 3}), DataError);
}

TEST_CASE("metrics agree with a direct confusion matrix") {
    // 1-dim provider: activation is the material balance
    struct MaterialProvider : ActivationProvider {
        std::size_t dimension() const override { return 1; }
        std::string id() const override { return "material"; }
        std::vector<double> activation(const chess::Position& p) const override { return {double(material_balance(p))}; }
    } prov;
    const auto fens = distinct_fens(400, 12);
    const auto ds = build_concept_dataset(fens, ConceptName::Material, AnalyticLabeler{}, 0.2);

    const auto perfect = make_vector(ConceptName::Material, {1.0}, 0.0);
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (const auto& f : ds.positives) (material_balance(parse_fen(f)) > 0 ? tp : fn)++;
    for (const auto& f : ds.negatives) (material_balance(parse_fen(f)) > 0 ? fp : tn)++;
    const auto m = evaluate_concept_vector(perfect, ds, prov);
    CHECK(m.tp == tp);
    CHECK(m.fp == fp);
    CHECK(m.tn == tn);
    CHECK(m.fn == fn);
    CHECK(m.accuracy == doctest::Approx(double(tp + tn) / double(tp + tn + fp + fn)));
    CHECK(m.precision == doctest::Approx(double(tp) / double(tp + fp)));
    CHECK(m.recall == doctest::Approx(double(tp) / double(tp + fn)));

    // a threshold between the classes is a perfect classifier
    const double lo = ds.source_scores.at(ds.negatives.back());
    const double hi = ds.source_scores.at(ds.positives.back());
    REQUIRE(lo < hi);
    const auto ideal = make_vector(ConceptName::Material, {1.0}, -(lo + hi) / 2);
    const auto mi = evaluate_concept_vector(ideal, ds, prov);
    CHECK(mi.accuracy == 1.0);
    CHECK(mi.precision == 1.0);
    CHECK(mi.recall == 1.0);

    const auto shifted = make_vector(ConceptName::Material, {1.0}, -(lo + hi) / 2 + 0.25);
    const auto inverted = make_vector(ConceptName::Material, {-1.0}, (lo + hi) / 2 - 0.25);
    CHECK(evaluate_concept_vector(inverted, ds, prov).accuracy ==
          doctest::Approx(1.0 - evaluate_concept_vector(shifted, ds, prov).accuracy));

    CHECK_THROWS_AS(evaluate_concept_vector(perfect, ConceptDataset{}, prov), DataError);
}

TEST_CASE("material vector learned from synthetic activations") {
    const auto positions = sample_positions(20000, 21);
    std::vector<std::string> fens;
    for (const auto& p : positions) fens.push_back(chess::to_fen(p));
    const SyntheticProvider prov;
    const auto ds = build_concept_dataset(fens, ConceptName::Material, AnalyticLabeler{}, 0.05);
    const auto [train, test] = split_dataset(ds, 0.2, 1);
    const auto v = train_concept_vector(train, prov);
    CHECK(v.meta.mean.empty());
    CHECK(v.meta.provider == "synthetic-onehot-773");
    const auto held_out = evaluate_concept_vector(v, test, prov);
    MESSAGE("material held-out accuracy " << held_out.accuracy);
    CHECK(held_out.accuracy >= 0.95);
    // positives land on the positive side of the plane
    CHECK(evaluate_concept_vector(v, train, prov).recall >= 0.95);
}

TEST_CASE("prioritize ranking contract") {
    const auto p = chess::Position::initial();
    const auto e4 = chess::parse_san(p, "e4");
    const auto e5 = chess::parse_san(chess::apply_move(p, e4), "e5");

    ConstantProvider flat;
    flat.x = {1.0, 2.0};
    std::vector<ConceptVector> vs{make_vector(ConceptName::WhiteSpace, {1, 0}, 0),
                                  make_vector(ConceptName::Pawns, {0, 1}, 0),
                                  make_vector(ConceptName::Material, {1, 1}, 0),
                                  make_vector(ConceptName::BlackThreats, {1, -1}, 0)};
    const auto null_move = prioritize(vs, p, e4, e5, flat);
    REQUIRE(null_move.size() == 3);
    CHECK(null_move[0].name == ConceptName::Material);
    CHECK(null_move[1].name == ConceptName::Pawns);
    CHECK(null_move[2].name == ConceptName::BlackThreats);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(null_move[i].delta == 0.0);
        CHECK(null_move[i].rank == int(i + 1));
    }

    PrioritizeOptions all;
    all.k = 10;
    CHECK(prioritize(vs, p, e4, e5, flat, all).size() == 4);
    CHECK_THROWS_AS(prioritize({}, p, e4, e5, flat), UsageError);
    CHECK_THROWS_AS(prioritize(vs, p, e5, std::nullopt, flat), chess::IllegalMoveError);
}

TEST_CASE("prioritize perspective handling") {
    const auto p = chess::Position::initial();
    const auto e4 = chess::parse_san(p, "e4");
    const auto e5 = chess::parse_san(chess::apply_move(p, e4), "e5");
    const std::vector<ConceptVector> vs{make_vector(ConceptName::Material, {1.0}, 0.0)};

    SideProvider side;
    // reply-aligned: same side to move on both ends
    CHECK(prioritize(vs, p, e4, e5, side)[0].delta == 0.0);
    // no reply, white-perspective provider: no negation
    CHECK(prioritize(vs, p, e4, std::nullopt, side)[0].delta == doctest::Approx(-2.0));
    // no reply, mover-relative provider: post-move score negated
    side.relative = true;
    const auto flipped = prioritize(vs, p, e4, std::nullopt, side)[0];
    CHECK(flipped.score_after == doctest::Approx(1.0));
    CHECK(flipped.delta == doctest::Approx(0.0));
    // alternative comparison point ignores the reply
    PrioritizeOptions opt;
    opt.point = PostMovePoint::after_move;
    side.relative = false;
    CHECK(prioritize(vs, p, e4, e5, side, opt)[0].delta == doctest::Approx(-2.0));
}

TEST_CASE("queen captures put Material first with evaluation-unit oracle vectors") {
    const auto suite = testing::load_queen_suite(std::string(CCC_FIXTURE_DIR) + "/queen_captures.txt");
    REQUIRE(suite.size() == 20);
    const auto prov = AnalyticFeatureProvider::evaluation_units();
    const auto vectors = oracle_vectors(prov);
    int first = 0, sign_ok = 0;
    for (const auto& q : suite) {
        CAPTURE(q.fen);
        const auto p = parse_fen(q.fen);
        const auto cap = chess::parse_san(p, q.capture);
        REQUIRE(p.at(cap.to)->kind == chess::PieceKind::Queen);
        const auto mid = chess::apply_move(p, cap);
        const auto reply = chess::parse_san(mid, q.reply);
        REQUIRE_FALSE(reply.has(chess::kCapture));
        const auto end = chess::apply_move(mid, reply);
        const int gain = p.side_to_move() == Color::White ? 9 : -9;
        REQUIRE(material_balance(end) - material_balance(p) == gain);

        const auto pr = prioritize(vectors, p, cap, reply, prov);
        first += pr[0].name == ConceptName::Material;
        for (const auto& c : pr)
            if (c.name == ConceptName::Material) sign_ok += (c.delta > 0) == (gain > 0);
    }
    CHECK(first >= 18);
    CHECK(sign_ok == 20);
}

TEST_CASE("oracle providers") {
    const auto endgame = parse_fen(kEndgame);
    const auto units = AnalyticFeatureProvider::evaluation_units();
    const auto x = units.activation(endgame);
    REQUIRE(x.size() == 8);
    CHECK(x[0] == -1.0);
    CHECK(x[2] == doctest::Approx(0.1 * mobility(endgame, Color::White)));
    const auto vs = oracle_vectors(units);
    CHECK(concept_score(vs[0], x) == -1.0);

    const auto z = AnalyticFeatureProvider::fit(testing::random_positions(200, 8));
    double mean_material = 0;
    for (const auto& p : testing::random_positions(200, 8)) mean_material += z.activation(p)[0] / 200.0;
    CHECK(mean_material == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(AnalyticFeatureProvider("x", {ConceptName::Imbalance}, {0.0}, {1.0}), LabelerUnavailable);
}

TEST_CASE("vector, dataset, activation and score files round-trip") {
    auto v = make_vector(ConceptName::BlackPassedpawns, {0.1, -1.0 / 3.0, 1e-300, 12345.678901234567}, -0.7);
    v.meta.seed = 18446744073709551615ULL;
    v.meta.epochs = 20;
    v.meta.lambda = 1e-4;
    v.meta.n_train = 16000;
    v.meta.provider = "synthetic-onehot-773";
    v.meta.mean = {0.5, 0.25, 0, 1};
    v.meta.scale = {2, 4, 1, 1.0 / 7.0};
    std::stringstream s;
    write_vectors(s, {v, make_vector(ConceptName::Material, {1.0}, 0.0)});
    const auto back = read_vectors(s);
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == v.name);
    CHECK(back[0].weights == v.weights);
    CHECK(back[0].bias == v.bias);
    CHECK(back[0].meta.seed == v.meta.seed);
    CHECK(back[0].meta.scale == v.meta.scale);
    CHECK(back[1].meta.mean.empty());

    const auto fens = distinct_fens(60, 13);
    const auto ds = build_concept_dataset(fens, ConceptName::BlackMobility, AnalyticLabeler{}, 0.1);
    std::stringstream d;
    write_dataset(d, ds);
    const auto ds2 = read_dataset(d);
    CHECK(ds2.name == ds.name);
    CHECK(ds2.positives == ds.positives);
    CHECK(ds2.negatives == ds.negatives);

    const auto positions = testing::random_positions(10, 14);
    std::stringstream a;
    write_activations(a, SyntheticProvider{}, positions);
    const auto fp = read_activations(a);
    CHECK(fp.dimension() == 773);
    CHECK_FALSE(fp.mover_relative());
    for (const auto& p : positions) CHECK(fp.activation(p) == SyntheticProvider{}.activation(p));
    CHECK_THROWS_AS(fp.activation(parse_fen("8/8/8/8/8/8/8/K6k w - - 0 1")), DataError);

    std::stringstream sc("{\"fen\": \"" + std::string(chess::kInitialFen) +
                         "\", \"concept\": \"White Threats\", \"score\": 1.5}\n\n");
    CHECK(read_scores(sc).label(chess::Position::initial(), ConceptName::WhiteThreats) == 1.5);

    std::stringstream bad("{\"dimension\": 2, \"provider\": \"x\"}\n{\"fen\": \"8/8/8/8/8/8/8/K6k w - -\", \"activation\": [1]}\n");
    CHECK_THROWS_AS(read_activations(bad), DataError);
    std::stringstream junk("{\"concept\": \"Material\"\nnot json\n");
    CHECK_THROWS_AS(read_vectors(junk), DataError);
}
