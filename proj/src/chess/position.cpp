#include "ccc/chess/position.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include "ccc/chess/movegen.hpp"

namespace ccc::chess {

char Piece::fen_char() const {
    static constexpr char kLetters[] = "pnbrqk";
    const char c = kLetters[static_cast<int>(kind)];
    return color == Color::White ? static_cast<char>(std::toupper(c)) : c;
}

std::optional<Piece> Piece::from_fen_char(char c) {
    const Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
    switch (std::tolower(static_cast<unsigned char>(c))) {
        case 'p': return Piece{color, PieceKind::Pawn};
        case 'n': return Piece{color, PieceKind::Knight};
        case 'b': return Piece{color, PieceKind::Bishop};
        case 'r': return Piece{color, PieceKind::Rook};
        case 'q': return Piece{color, PieceKind::Queen};
        case 'k': return Piece{color, PieceKind::King};
        default: return std::nullopt;
    }
}

std::string_view kind_name(PieceKind k) {
    switch (k) {
        case PieceKind::Pawn: return "pawn";
        case PieceKind::Knight: return "knight";
        case PieceKind::Bishop: return "bishop";
        case PieceKind::Rook: return "rook";
        case PieceKind::Queen: return "queen";
        case PieceKind::King: return "king";
    }
    return "?";
}

char san_letter(PieceKind k) {
    switch (k) {
        case PieceKind::Knight: return 'N';
        case PieceKind::Bishop: return 'B';
        case PieceKind::Rook: return 'R';
        case PieceKind::Queen: return 'Q';
        case PieceKind::King: return 'K';
        default: return '\0';
    }
}

std::optional<Square> Square::parse(std::string_view text) {
    if (text.size() != 2) return std::nullopt;
    const int file = text[0] - 'a';
    const int rank = text[1] - '1';
    if (!on_board(file, rank)) return std::nullopt;
    return Square::at(file, rank);
}

std::string Square::name() const {
    return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
}

Position::Position() = default;

Position Position::initial() { return parse_fen(kInitialFen); }

void Position::place(Square s, Piece p) {
    board_[static_cast<std::size_t>(s.index())] = p;
    if (p.kind == PieceKind::King) kings_[static_cast<std::size_t>(p.color)] = s;
}

void Position::remove(Square s) { board_[static_cast<std::size_t>(s.index())].reset(); }

bool operator==(const Position& a, const Position& b) {
    return a.board_ == b.board_ && a.side_ == b.side_ && a.castling_ == b.castling_ &&
           a.en_passant_ == b.en_passant_ && a.halfmove_ == b.halfmove_ && a.fullmove_ == b.fullmove_;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

int parse_count(std::string_view field, const char* name, int max_value) {
    int value = -1;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || value < 0 || value > max_value)
        throw FenError(name, "expected a count in [0, " + std::to_string(max_value) + "], got '" +
                                 std::string(field) + "'");
    return value;
}

}  // namespace

Position parse_fen(std::string_view text) {
    const auto fields = split_ws(text);
    if (fields.size() < 4 || fields.size() > 6)
        throw FenError("fields", "expected 4 to 6 fields, got " + std::to_string(fields.size()));

    Position p;
    int king_count[2] = {0, 0};

    int rank = 7;
    int file = 0;
    for (char c : fields[0]) {
        if (c == '/') {
            if (file != 8) throw FenError("placement", "rank " + std::to_string(rank + 1) + " does not span 8 files");
            --rank;
            file = 0;
            if (rank < 0) throw FenError("placement", "more than 8 ranks");
        } else if (c >= '1' && c <= '8') {
            file += c - '0';
            if (file > 8) throw FenError("placement", "rank " + std::to_string(rank + 1) + " overflows");
        } else {
            auto piece = Piece::from_fen_char(c);
            if (!piece) throw FenError("placement", std::string("illegal piece letter '") + c + "'");
            if (file >= 8) throw FenError("placement", "rank " + std::to_string(rank + 1) + " overflows");
            const Square s = Square::at(file, rank);
            if (piece->kind == PieceKind::Pawn && (rank == 0 || rank == 7))
                throw FenError("pawns", "pawn on " + s.name());
            if (piece->kind == PieceKind::King) ++king_count[static_cast<int>(piece->color)];
            p.place(s, *piece);
            ++file;
        }
    }
    if (rank != 0 || file != 8) throw FenError("placement", "expected 8 complete ranks");
    if (king_count[0] != 1 || king_count[1] != 1)
        throw FenError("kings", "expected exactly one king per color, found " + std::to_string(king_count[0]) +
                                    " white and " + std::to_string(king_count[1]) + " black");

    if (fields[1] == "w") {
        p.side_ = Color::White;
    } else if (fields[1] == "b") {
        p.side_ = Color::Black;
    } else {
        throw FenError("side", "expected 'w' or 'b', got '" + std::string(fields[1]) + "'");
    }

    if (fields[2] != "-") {
        for (char c : fields[2]) {
            std::uint8_t bit = 0;
            switch (c) {
                case 'K': bit = kWhiteKingside; break;
                case 'Q': bit = kWhiteQueenside; break;
                case 'k': bit = kBlackKingside; break;
                case 'q': bit = kBlackQueenside; break;
                default: throw FenError("castling", std::string("unexpected letter '") + c + "'");
            }
            if (p.castling_ & bit) throw FenError("castling", std::string("duplicate right '") + c + "'");
            p.castling_ |= bit;
        }
        const auto has = [&](Square s, Piece want) { return p.at(s) == want; };
        const Piece wk{Color::White, PieceKind::King}, bk{Color::Black, PieceKind::King};
        const Piece wr{Color::White, PieceKind::Rook}, br{Color::Black, PieceKind::Rook};
        if ((p.castling_ & (kWhiteKingside | kWhiteQueenside)) && !has(Square::at(4, 0), wk))
            throw FenError("castling", "white castling right without king on e1");
        if ((p.castling_ & (kBlackKingside | kBlackQueenside)) && !has(Square::at(4, 7), bk))
            throw FenError("castling", "black castling right without king on e8");
        if ((p.castling_ & kWhiteKingside) && !has(Square::at(7, 0), wr))
            throw FenError("castling", "right K without rook on h1");
        if ((p.castling_ & kWhiteQueenside) && !has(Square::at(0, 0), wr))
            throw FenError("castling", "right Q without rook on a1");
        if ((p.castling_ & kBlackKingside) && !has(Square::at(7, 7), br))
            throw FenError("castling", "right k without rook on h8");
        if ((p.castling_ & kBlackQueenside) && !has(Square::at(0, 7), br))
            throw FenError("castling", "right q without rook on a8");
    }

    if (fields[3] != "-") {
        auto ep = Square::parse(fields[3]);
        if (!ep) throw FenError("en_passant", "bad square '" + std::string(fields[3]) + "'");
        const int want_rank = p.side_ == Color::White ? 5 : 2;
        if (ep->rank() != want_rank)
            throw FenError("en_passant", ep->name() + " is not on the rank behind a just-moved pawn");
        // The pawn that just made the double step must stand in front of the square.
        const int pawn_rank = p.side_ == Color::White ? 4 : 3;
        const Piece mover{opposite(p.side_), PieceKind::Pawn};
        if (p.at(Square::at(ep->file(), pawn_rank)) != mover || p.at(*ep).has_value())
            throw FenError("en_passant", ep->name() + " has no double-stepped pawn in front of it");
        p.en_passant_ = ep;
    }

    if (fields.size() >= 5) p.halfmove_ = parse_count(fields[4], "halfmove", 100000);
    if (fields.size() >= 6) {
        const int fm = parse_count(fields[5], "fullmove", 100000);
        p.source_fullmove_ = fm;
        p.fullmove_ = fm == 0 ? 1 : fm;
    }

    if (in_check(p, opposite(p.side_)))
        throw FenError("check", "the side not to move is in check");
    return p;
}

std::string to_fen(const Position& p, FenClocks clocks) {
    std::string out = fen_key(p);
    out += ' ';
    out += std::to_string(p.halfmove_clock());
    out += ' ';
    out += std::to_string(clocks == FenClocks::source ? p.source_fullmove() : p.fullmove_number());
    return out;
}

std::string fen_key(const Position& p) {
    std::string out;
    for (int rank = 7; rank >= 0; --rank) {
        int empty = 0;
        for (int file = 0; file < 8; ++file) {
            auto piece = p.at(Square::at(file, rank));
            if (!piece) {
                ++empty;
                continue;
            }
            if (empty) out += static_cast<char>('0' + empty);
            empty = 0;
            out += piece->fen_char();
        }
        if (empty) out += static_cast<char>('0' + empty);
        if (rank) out += '/';
    }
    out += p.side_to_move() == Color::White ? " w " : " b ";
    if (p.castling() == 0) {
        out += '-';
    } else {
        if (p.can_castle(kWhiteKingside)) out += 'K';
        if (p.can_castle(kWhiteQueenside)) out += 'Q';
        if (p.can_castle(kBlackKingside)) out += 'k';
        if (p.can_castle(kBlackQueenside)) out += 'q';
    }
    out += ' ';
    out += p.en_passant() ? p.en_passant()->name() : "-";
    return out;
}

std::string fen_key(std::string_view fen) {
    const auto fields = split_ws(fen);
    std::string out;
    for (std::size_t i = 0; i < fields.size() && i < 4; ++i) {
        if (i) out += ' ';
        out += fields[i];
    }
    return out;
}

Position mirrored(const Position& p) {
    Position m;
    for (int i = 0; i < 64; ++i) {
        const Square s = Square::from_index(i);
        if (auto piece = p.at(s)) {
            m.place(Square::at(s.file(), 7 - s.rank()), Piece{opposite(piece->color), piece->kind});
        }
    }
    m.set_side_to_move(opposite(p.side_to_move()));
    std::uint8_t rights = 0;
    if (p.can_castle(kWhiteKingside)) rights |= kBlackKingside;
    if (p.can_castle(kWhiteQueenside)) rights |= kBlackQueenside;
    if (p.can_castle(kBlackKingside)) rights |= kWhiteKingside;
    if (p.can_castle(kBlackQueenside)) rights |= kWhiteQueenside;
    m.set_castling(rights);
    if (auto ep = p.en_passant()) m.set_en_passant(Square::at(ep->file(), 7 - ep->rank()));
    m.set_halfmove_clock(p.halfmove_clock());
    m.set_fullmove_number(p.fullmove_number());
    return m;
}

}  // namespace ccc::chess
