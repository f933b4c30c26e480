#include "ccc/concepts/labeler.hpp"

#include <fstream>

#include "ccc/chess/movegen.hpp"
#include "ccc/concepts/io.hpp"

namespace ccc::concepts {

using chess::Color;
using chess::PieceKind;
using chess::Position;
using chess::Square;

namespace {

constexpr int kPieceValue[] = {1, 3, 3, 5, 9, 0};

int signed_count(const Position& p, auto&& weight) {
    int total = 0;
    for (int i = 0; i < 64; ++i) {
        const auto piece = p.at(Square::from_index(i));
        if (!piece) continue;
        const int w = weight(piece->kind);
        total += piece->color == Color::White ? w : -w;
    }
    return total;
}

}  // namespace

int material_balance(const Position& p) {
    return signed_count(p, [](PieceKind k) { return kPieceValue[static_cast<int>(k)]; });
}

int pawn_balance(const Position& p) {
    return signed_count(p, [](PieceKind k) { return k == PieceKind::Pawn ? 1 : 0; });
}

int mobility(const Position& p, Color side) {
    if (p.side_to_move() == side) return chess::count_legal_moves(p);
    Position q = p;
    q.set_side_to_move(side);
    q.set_en_passant(std::nullopt);
    return chess::count_legal_moves(q);
}

int passed_pawns(const Position& p, Color side) {
    const int dir = side == Color::White ? 1 : -1;
    const chess::Piece own{side, PieceKind::Pawn};
    const chess::Piece enemy{chess::opposite(side), PieceKind::Pawn};
    int count = 0;
    for (int file = 0; file < 8; ++file) {
        // frontmost own pawn on this file
        int front = -1;
        for (int r = 0; r < 8; ++r) {
            const int rank = side == Color::White ? 7 - r : r;
            if (p.at(Square::at(file, rank)) == own) {
                front = rank;
                break;
            }
        }
        if (front < 0) continue;
        bool blocked = false;
        for (int f = file - 1; f <= file + 1 && !blocked; ++f) {
            if (f < 0 || f > 7) continue;
            for (int rank = front + dir; rank >= 0 && rank < 8; rank += dir)
                if (p.at(Square::at(f, rank)) == enemy) {
                    blocked = true;
                    break;
                }
        }
        if (!blocked) ++count;
    }
    return count;
}

int king_safety(const Position& p, Color side) {
    const Square king = p.king_square(side);
    int attacked = 0;
    for (int df = -1; df <= 1; ++df)
        for (int dr = -1; dr <= 1; ++dr) {
            if (df == 0 && dr == 0) continue;
            const int f = king.file() + df, r = king.rank() + dr;
            if (!chess::on_board(f, r)) continue;
            if (chess::is_attacked(p, Square::at(f, r), chess::opposite(side))) ++attacked;
        }
    return -attacked;
}

double label_concept(const Position& p, ConceptName c) {
    switch (c) {
        case ConceptName::Material: return material_balance(p);
        case ConceptName::Pawns: return pawn_balance(p);
        case ConceptName::WhiteMobility: return mobility(p, Color::White);
        case ConceptName::BlackMobility: return mobility(p, Color::Black);
        case ConceptName::WhiteKingsafety: return king_safety(p, Color::White);
        case ConceptName::BlackKingsafety: return king_safety(p, Color::Black);
        case ConceptName::WhitePassedpawns: return passed_pawns(p, Color::White);
        case ConceptName::BlackPassedpawns: return passed_pawns(p, Color::Black);
        default: throw LabelerUnavailable(c);
    }
}

void ScoreFileLabeler::insert(const std::string& fen_key, ConceptName c, double score) {
    scores_[{chess::fen_key(std::string_view(fen_key)), c}] = score;
}

double ScoreFileLabeler::label(const Position& p, ConceptName c) const {
    const auto it = scores_.find({chess::fen_key(p), c});
    if (it != scores_.end()) return it->second;
    if (fallback_ && has_analytic_labeler(c)) return label_concept(p, c);
    throw DataError("no score for " + std::string(concept_display_name(c)) + " at " + chess::fen_key(p));
}

ScoreFileLabeler ScoreFileLabeler::load(const std::string& path, bool analytic_fallback) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open score file " + path);
    return read_scores(in, analytic_fallback);
}

}  // namespace ccc::concepts
