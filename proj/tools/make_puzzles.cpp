// Writes a Lichess-shaped mate-in-one puzzle CSV from seeded random games.
// Each puzzle is a position reached by a random move in which the side to
// move has a mating reply; the random move is the setup move.
#include <iostream>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/chess/position.hpp"
#include "ccc/io/csv.hpp"
#include "ccc/skill/skill.hpp"

using namespace ccc;

int main(int argc, char** argv) {
    CLI::App app{"mate-in-one fixture generator"};
    int count = 99;
    std::uint64_t seed = 2024;
    bool with_reference = true;
    app.add_option("--count", count, "generated puzzles")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed);
    app.add_flag("!--no-reference", with_reference, "omit the worked example puzzle");
    CLI11_PARSE(app, argc, argv);

    std::cout << skill::kPuzzleCsvHeader << "\n";
    const std::string themes = "mate mateIn1 oneMove";
    auto row = [&](const std::string& id, const std::string& fen, const std::string& moves) {
        std::cout << io::csv_row({id, fen, moves, "", "", "", "", themes, "", ""}) << "\n";
    };
    if (with_reference)
        row("ref01", "N6r/1p1k1ppp/2np4/b3p3/4P1b1/N1p5/P2Q1PPP/R3KB1R w KQ - 0 18", "d2c3 a5c3");

    std::mt19937_64 rng(seed);
    std::set<std::string> seen;
    int made = 0;
    while (made < count) {
        auto p = chess::Position::initial();
        for (int ply = 0; ply < 200 && made < count; ++ply) {
            const auto moves = chess::legal_moves_unannotated(p);
            if (moves.empty()) break;
            const auto setup = p;
            const auto m1 = moves[rng() % moves.size()];
            p = chess::apply_move_unchecked(p, m1);
            for (const auto& m : chess::legal_moves(p)) {
                if (!m.has(chess::kCheckmate)) continue;
                if (seen.insert(chess::fen_key(p)).second) {
                    char id[16];
                    std::snprintf(id, sizeof id, "gen%02d", ++made);
                    row(id, chess::to_fen(setup), chess::format_uci_move(m1) + " " + chess::format_uci_move(m));
                }
                // one puzzle per game keeps the set varied
                ply = 200;
                break;
            }
        }
    }
}
