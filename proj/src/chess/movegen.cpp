#include "ccc/chess/movegen.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "ccc/chess/notation.hpp"

namespace ccc::chess {
namespace {

struct Delta {
    int file;
    int rank;
};

constexpr std::array<Delta, 8> kKnightDeltas{{{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}}};
constexpr std::array<Delta, 8> kKingDeltas{{{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
constexpr std::array<Delta, 4> kRookDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<Delta, 4> kBishopDirs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

// Precomputed target lists so the inner loops avoid bounds arithmetic.
struct Tables {
    std::array<std::array<std::int8_t, 9>, 64> knight{};  // -1 terminated
    std::array<std::array<std::int8_t, 9>, 64> king{};
    // ray[sq][dir] lists squares outward in direction dir (0-3 rook, 4-7 bishop).
    std::array<std::array<std::array<std::int8_t, 8>, 8>, 64> ray{};
    std::array<std::array<std::int8_t, 8>, 64> ray_len{};

    Tables() {
        for (int sq = 0; sq < 64; ++sq) {
            const int f = sq & 7, r = sq >> 3;
            int n = 0;
            for (auto d : kKnightDeltas)
                if (on_board(f + d.file, r + d.rank)) knight[sq][n++] = static_cast<std::int8_t>((r + d.rank) * 8 + f + d.file);
            knight[sq][n] = -1;
            n = 0;
            for (auto d : kKingDeltas)
                if (on_board(f + d.file, r + d.rank)) king[sq][n++] = static_cast<std::int8_t>((r + d.rank) * 8 + f + d.file);
            king[sq][n] = -1;
            for (int dir = 0; dir < 8; ++dir) {
                const Delta d = dir < 4 ? kRookDirs[dir] : kBishopDirs[dir - 4];
                int len = 0;
                for (int ff = f + d.file, rr = r + d.rank; on_board(ff, rr); ff += d.file, rr += d.rank)
                    ray[sq][dir][len++] = static_cast<std::int8_t>(rr * 8 + ff);
                ray_len[sq][dir] = static_cast<std::int8_t>(len);
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

bool holds(const Position& p, int sq, Color c, PieceKind k) {
    auto piece = p.at(Square::from_index(sq));
    return piece && piece->color == c && piece->kind == k;
}

constexpr std::array<PieceKind, 4> kPromotions{PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen};

void add_pawn_move(std::vector<Move>& out, Square from, Square to, std::uint8_t flags) {
    if (to.rank() == 0 || to.rank() == 7) {
        for (PieceKind k : kPromotions) out.push_back(Move{from, to, k, flags});
    } else {
        out.push_back(Move{from, to, std::nullopt, flags});
    }
}

// Pseudo-legal generation; king captures are never produced.
void generate_pseudo(const Position& p, std::vector<Move>& out) {
    const auto& t = tables();
    const Color us = p.side_to_move();
    const Color them = opposite(us);
    const int forward = us == Color::White ? 1 : -1;
    const int start_rank = us == Color::White ? 1 : 6;

    auto target_ok = [&](int sq, std::uint8_t& flags) {
        auto piece = p.at(Square::from_index(sq));
        if (!piece) return true;
        if (piece->color == us || piece->kind == PieceKind::King) return false;
        flags |= kCapture;
        return true;
    };

    for (int sq = 0; sq < 64; ++sq) {
        const Square from = Square::from_index(sq);
        auto piece = p.at(from);
        if (!piece || piece->color != us) continue;
        switch (piece->kind) {
            case PieceKind::Pawn: {
                const int f = from.file(), r = from.rank();
                const int r1 = r + forward;
                if (r1 >= 0 && r1 < 8 && !p.at(Square::at(f, r1))) {
                    add_pawn_move(out, from, Square::at(f, r1), 0);
                    const int r2 = r1 + forward;
                    if (r == start_rank && !p.at(Square::at(f, r2)))
                        out.push_back(Move{from, Square::at(f, r2), std::nullopt, 0});
                }
                for (int df : {-1, 1}) {
                    if (!on_board(f + df, r1)) continue;
                    const Square to = Square::at(f + df, r1);
                    auto victim = p.at(to);
                    if (victim && victim->color == them && victim->kind != PieceKind::King) {
                        add_pawn_move(out, from, to, kCapture);
                    } else if (!victim && p.en_passant() == to) {
                        out.push_back(Move{from, to, std::nullopt, static_cast<std::uint8_t>(kCapture | kEnPassant)});
                    }
                }
                break;
            }
            case PieceKind::Knight:
            case PieceKind::King: {
                const auto& list = piece->kind == PieceKind::Knight ? t.knight[sq] : t.king[sq];
                for (int i = 0; list[i] >= 0; ++i) {
                    std::uint8_t flags = 0;
                    if (target_ok(list[i], flags)) out.push_back(Move{from, Square::from_index(list[i]), std::nullopt, flags});
                }
                break;
            }
            default: {
                const int first = piece->kind == PieceKind::Bishop ? 4 : 0;
                const int last = piece->kind == PieceKind::Rook ? 4 : 8;
                for (int dir = first; dir < last; ++dir) {
                    for (int i = 0; i < t.ray_len[sq][dir]; ++i) {
                        const int to = t.ray[sq][dir][i];
                        std::uint8_t flags = 0;
                        if (!target_ok(to, flags)) break;
                        out.push_back(Move{from, Square::from_index(to), std::nullopt, flags});
                        if (flags & kCapture) break;
                    }
                }
                break;
            }
        }
    }

    // Castling: rights imply king and rook on their home squares.
    const int home = us == Color::White ? 0 : 7;
    const Square king_from = Square::at(4, home);
    const std::uint8_t ks = us == Color::White ? kWhiteKingside : kBlackKingside;
    const std::uint8_t qs = us == Color::White ? kWhiteQueenside : kBlackQueenside;
    if ((p.castling() & (ks | qs)) && p.king_square(us) == king_from && !is_attacked(p, king_from, them)) {
        if ((p.castling() & ks) && !p.at(Square::at(5, home)) && !p.at(Square::at(6, home)) &&
            !is_attacked(p, Square::at(5, home), them))
            out.push_back(Move{king_from, Square::at(6, home), std::nullopt, kCastleKingside});
        if ((p.castling() & qs) && !p.at(Square::at(3, home)) && !p.at(Square::at(2, home)) &&
            !p.at(Square::at(1, home)) && !is_attacked(p, Square::at(3, home), them))
            out.push_back(Move{king_from, Square::at(2, home), std::nullopt, kCastleQueenside});
    }
}

std::vector<Move> generate_legal(const Position& p) {
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    generate_pseudo(p, pseudo);
    const Color us = p.side_to_move();
    std::vector<Move> legal;
    legal.reserve(pseudo.size());
    for (const Move& m : pseudo) {
        const Position next = apply_move_unchecked(p, m);
        if (!in_check(next, us)) legal.push_back(m);
    }
    std::sort(legal.begin(), legal.end());
    return legal;
}

}  // namespace

bool is_attacked(const Position& p, Square target, Color by) {
    const auto& t = tables();
    const int sq = target.index();
    const int f = target.file(), r = target.rank();

    // Pawns of `by` attack diagonally forward, so look one rank backwards.
    const int pawn_rank = by == Color::White ? r - 1 : r + 1;
    for (int df : {-1, 1})
        if (on_board(f + df, pawn_rank) && holds(p, pawn_rank * 8 + f + df, by, PieceKind::Pawn)) return true;

    for (int i = 0; t.knight[sq][i] >= 0; ++i)
        if (holds(p, t.knight[sq][i], by, PieceKind::Knight)) return true;
    for (int i = 0; t.king[sq][i] >= 0; ++i)
        if (holds(p, t.king[sq][i], by, PieceKind::King)) return true;

    for (int dir = 0; dir < 8; ++dir) {
        const PieceKind slider = dir < 4 ? PieceKind::Rook : PieceKind::Bishop;
        for (int i = 0; i < t.ray_len[sq][dir]; ++i) {
            auto piece = p.at(Square::from_index(t.ray[sq][dir][i]));
            if (!piece) continue;
            if (piece->color == by && (piece->kind == slider || piece->kind == PieceKind::Queen)) return true;
            break;
        }
    }
    return false;
}

bool in_check(const Position& p, Color side) { return is_attacked(p, p.king_square(side), opposite(side)); }

bool in_check(const Position& p) { return in_check(p, p.side_to_move()); }

Position apply_move_unchecked(const Position& p, const Move& m) {
    Position next = p;
    const Piece mover = *p.at(m.from);
    const Color us = mover.color;
    const bool capture = p.at(m.to).has_value() || m.has(kEnPassant);

    if (m.has(kEnPassant)) next.remove(Square::at(m.to.file(), m.from.rank()));
    next.remove(m.from);
    next.place(m.to, m.promotion ? Piece{us, *m.promotion} : mover);

    if (mover.kind == PieceKind::King && std::abs(m.to.file() - m.from.file()) == 2) {
        const int home = m.from.rank();
        const bool kingside = m.to.file() == 6;
        const Square rook_from = Square::at(kingside ? 7 : 0, home);
        const Square rook_to = Square::at(kingside ? 5 : 3, home);
        next.remove(rook_from);
        next.place(rook_to, Piece{us, PieceKind::Rook});
    }

    std::uint8_t rights = p.castling();
    auto strip = [&](Square s) {
        if (s == Square::at(4, 0)) rights &= static_cast<std::uint8_t>(~(kWhiteKingside | kWhiteQueenside));
        if (s == Square::at(4, 7)) rights &= static_cast<std::uint8_t>(~(kBlackKingside | kBlackQueenside));
        if (s == Square::at(0, 0)) rights &= static_cast<std::uint8_t>(~kWhiteQueenside);
        if (s == Square::at(7, 0)) rights &= static_cast<std::uint8_t>(~kWhiteKingside);
        if (s == Square::at(0, 7)) rights &= static_cast<std::uint8_t>(~kBlackQueenside);
        if (s == Square::at(7, 7)) rights &= static_cast<std::uint8_t>(~kBlackKingside);
    };
    strip(m.from);
    strip(m.to);
    next.set_castling(rights);

    if (mover.kind == PieceKind::Pawn && std::abs(m.to.rank() - m.from.rank()) == 2) {
        next.set_en_passant(Square::at(m.from.file(), (m.from.rank() + m.to.rank()) / 2));
    } else {
        next.set_en_passant(std::nullopt);
    }

    next.set_halfmove_clock(mover.kind == PieceKind::Pawn || capture ? 0 : p.halfmove_clock() + 1);
    next.set_fullmove_number(us == Color::Black ? p.fullmove_number() + 1 : p.fullmove_number());
    next.set_side_to_move(opposite(us));
    return next;
}

std::vector<Move> legal_moves(const Position& p) {
    std::vector<Move> moves = generate_legal(p);
    for (Move& m : moves) {
        const Position next = apply_move_unchecked(p, m);
        if (in_check(next)) {
            m.flags |= kCheck;
            if (count_legal_moves(next) == 0) m.flags |= kCheckmate;
        }
    }
    return moves;
}

std::vector<Move> legal_moves_unannotated(const Position& p) { return generate_legal(p); }

int count_legal_moves(const Position& p) {
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    generate_pseudo(p, pseudo);
    const Color us = p.side_to_move();
    int n = 0;
    for (const Move& m : pseudo)
        if (!in_check(apply_move_unchecked(p, m), us)) ++n;
    return n;
}

Position apply_move(const Position& p, const Move& m) {
    const auto moves = generate_legal(p);
    auto it = std::find(moves.begin(), moves.end(), m);
    if (it == moves.end()) throw IllegalMoveError(format_uci_move(m), to_fen(p));
    return apply_move_unchecked(p, *it);
}

TerminalState terminal_state(const Position& p) {
    if (count_legal_moves(p) > 0) return TerminalState::ongoing;
    return in_check(p) ? TerminalState::checkmate : TerminalState::stalemate;
}

std::uint64_t perft(const Position& p, int depth) {
    if (depth <= 0) return 1;
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    generate_pseudo(p, pseudo);
    const Color us = p.side_to_move();
    std::uint64_t nodes = 0;
    for (const Move& m : pseudo) {
        const Position next = apply_move_unchecked(p, m);
        if (in_check(next, us)) continue;
        nodes += depth == 1 ? 1 : perft(next, depth - 1);
    }
    return nodes;
}

}  // namespace ccc::chess
