#include "ccc/chess/notation.hpp"

#include <algorithm>
#include <cctype>

#include "ccc/chess/movegen.hpp"

namespace ccc::chess {
namespace {

std::optional<PieceKind> kind_from_letter(char c) {
    switch (c) {
        case 'N': return PieceKind::Knight;
        case 'B': return PieceKind::Bishop;
        case 'R': return PieceKind::Rook;
        case 'Q': return PieceKind::Queen;
        case 'K': return PieceKind::King;
        default: return std::nullopt;
    }
}

bool is_file(char c) { return c >= 'a' && c <= 'h'; }
bool is_rank(char c) { return c >= '1' && c <= '8'; }

struct SanParts {
    PieceKind kind = PieceKind::Pawn;
    int from_file = -1;
    int from_rank = -1;
    Square to;
    std::optional<PieceKind> promotion;
    int castle = 0;  // 1 kingside, 2 queenside
};

std::string strip_suffixes(std::string_view san) {
    std::string s(san);
    if (s.size() > 4 && s.ends_with("e.p.")) s.resize(s.size() - 4);
    while (!s.empty() && (s.back() == '+' || s.back() == '#' || s.back() == '!' || s.back() == '?' || s.back() == ' '))
        s.pop_back();
    return s;
}

SanParts split_san(std::string_view original) {
    const std::string s = strip_suffixes(original);
    auto syntax = [&](const std::string& why) { return SanError(SanErrorKind::syntax, std::string(original), why); };
    if (s.empty()) throw syntax("empty move");

    SanParts parts;
    if (s == "O-O" || s == "0-0") {
        parts.castle = 1;
        return parts;
    }
    if (s == "O-O-O" || s == "0-0-0") {
        parts.castle = 2;
        return parts;
    }

    std::string_view body = s;
    if (auto k = kind_from_letter(body.front())) {
        parts.kind = *k;
        body.remove_prefix(1);
    }

    // Promotion suffix: "=Q" or a bare trailing piece letter.
    if (body.size() >= 2 && body[body.size() - 2] == '=') {
        auto k = kind_from_letter(body.back());
        if (!k || *k == PieceKind::King) throw syntax("bad promotion piece");
        parts.promotion = k;
        body.remove_suffix(2);
    } else if (!body.empty() && kind_from_letter(body.back()) && parts.kind == PieceKind::Pawn) {
        auto k = kind_from_letter(body.back());
        if (*k == PieceKind::King) throw syntax("bad promotion piece");
        parts.promotion = k;
        body.remove_suffix(1);
    }

    if (body.size() < 2 || !is_file(body[body.size() - 2]) || !is_rank(body.back()))
        throw syntax("missing destination square");
    parts.to = Square::at(body[body.size() - 2] - 'a', body.back() - '1');
    body.remove_suffix(2);

    if (!body.empty() && (body.back() == 'x' || body.back() == ':' || body.back() == '-')) body.remove_suffix(1);

    // What remains is disambiguation: file, rank, or both.
    if (body.size() > 2) throw syntax("unexpected characters");
    for (char c : body) {
        if (is_file(c) && parts.from_file < 0) {
            parts.from_file = c - 'a';
        } else if (is_rank(c) && parts.from_rank < 0) {
            parts.from_rank = c - '1';
        } else {
            throw syntax(std::string("unexpected character '") + c + "'");
        }
    }
    if (parts.promotion && parts.kind != PieceKind::Pawn) throw syntax("only pawns promote");
    return parts;
}

}  // namespace

Move parse_san(const Position& p, std::string_view san) {
    const SanParts parts = split_san(san);
    const auto moves = legal_moves(p);
    std::vector<Move> matches;
    for (const Move& m : moves) {
        if (parts.castle) {
            if ((parts.castle == 1 && m.has(kCastleKingside)) || (parts.castle == 2 && m.has(kCastleQueenside)))
                matches.push_back(m);
            continue;
        }
        if (m.has(kCastleKingside) || m.has(kCastleQueenside)) {
            // "Kg1" style castling is not SAN; only O-O forms select castles.
            continue;
        }
        const Piece mover = *p.at(m.from);
        if (mover.kind != parts.kind || m.to != parts.to || m.promotion != parts.promotion) continue;
        if (parts.from_file >= 0 && m.from.file() != parts.from_file) continue;
        if (parts.from_rank >= 0 && m.from.rank() != parts.from_rank) continue;
        matches.push_back(m);
    }
    if (matches.empty()) throw SanError(SanErrorKind::no_match, std::string(san), "no matching legal move in " + to_fen(p));
    if (matches.size() > 1) throw SanError(SanErrorKind::ambiguous, std::string(san), "matches several legal moves");
    return matches.front();
}

std::string format_san(const Position& p, const Move& move) {
    const auto moves = legal_moves(p);
    auto it = std::find(moves.begin(), moves.end(), move);
    if (it == moves.end()) throw IllegalMoveError(format_uci_move(move), to_fen(p));
    const Move& m = *it;

    std::string out;
    if (m.has(kCastleKingside)) {
        out = "O-O";
    } else if (m.has(kCastleQueenside)) {
        out = "O-O-O";
    } else {
        const Piece mover = *p.at(m.from);
        if (mover.kind == PieceKind::Pawn) {
            if (m.has(kCapture)) {
                out += static_cast<char>('a' + m.from.file());
                out += 'x';
            }
            out += m.to.name();
            if (m.promotion) {
                out += '=';
                out += san_letter(*m.promotion);
            }
        } else {
            out += san_letter(mover.kind);
            bool clash = false, same_file = false, same_rank = false;
            for (const Move& other : moves) {
                if (other.to != m.to || other.from == m.from) continue;
                if (p.at(other.from)->kind != mover.kind) continue;
                clash = true;
                if (other.from.file() == m.from.file()) same_file = true;
                if (other.from.rank() == m.from.rank()) same_rank = true;
            }
            if (clash) {
                if (!same_file) {
                    out += static_cast<char>('a' + m.from.file());
                } else if (!same_rank) {
                    out += static_cast<char>('1' + m.from.rank());
                } else {
                    out += m.from.name();
                }
            }
            if (m.has(kCapture)) out += 'x';
            out += m.to.name();
        }
    }
    if (m.has(kCheckmate)) {
        out += '#';
    } else if (m.has(kCheck)) {
        out += '+';
    }
    return out;
}

Move parse_uci_move(const Position& p, std::string_view text) {
    auto illegal = [&] { return IllegalMoveError(std::string(text), to_fen(p)); };
    if (text.size() != 4 && text.size() != 5) throw illegal();
    auto from = Square::parse(text.substr(0, 2));
    auto to = Square::parse(text.substr(2, 2));
    if (!from || !to) throw illegal();
    std::optional<PieceKind> promo;
    if (text.size() == 5) {
        promo = kind_from_letter(static_cast<char>(std::toupper(static_cast<unsigned char>(text[4]))));
        if (!promo || *promo == PieceKind::King) throw illegal();
    }
    const Move wanted{*from, *to, promo, 0};
    for (const Move& m : legal_moves(p))
        if (m == wanted) return m;
    throw illegal();
}

std::string format_uci_move(const Move& m) {
    std::string out = m.from.name() + m.to.name();
    if (m.promotion) out += static_cast<char>(std::tolower(static_cast<unsigned char>(san_letter(*m.promotion))));
    return out;
}

std::string move_label(const Position& p, const std::string& san, int move_number) {
    const int number = move_number > 0 ? move_number : p.fullmove_number();
    return std::to_string(number) + (p.side_to_move() == Color::Black ? "... " : ". ") + san;
}

std::vector<std::string> parse_pgn_moves(std::string_view text) {
    std::vector<std::string> tokens;
    std::string word;
    int variation_depth = 0;

    auto flush = [&] {
        if (word.empty()) return;
        std::string_view w = word;
        // Leading move number: "12." / "12..." / "12.e4".
        std::size_t i = 0;
        while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
        if (i > 0 && i < w.size() && w[i] == '.') {
            while (i < w.size() && w[i] == '.') ++i;
            w.remove_prefix(i);
        }
        const bool result = w == "1-0" || w == "0-1" || w == "1/2-1/2" || w == "*";
        if (!w.empty() && !result) tokens.emplace_back(w);
        word.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (variation_depth > 0) {
            if (c == '(') ++variation_depth;
            if (c == ')') --variation_depth;
            if (c == '{') {
                const auto close = text.find('}', i);
                i = close == std::string_view::npos ? text.size() : close;
            }
            continue;
        }
        switch (c) {
            case '[': {
                flush();
                const auto close = text.find(']', i);
                i = close == std::string_view::npos ? text.size() : close;
                break;
            }
            case '{': {
                flush();
                const auto close = text.find('}', i);
                i = close == std::string_view::npos ? text.size() : close;
                break;
            }
            case ';': {
                flush();
                const auto eol = text.find('\n', i);
                i = eol == std::string_view::npos ? text.size() : eol;
                break;
            }
            case '(':
                flush();
                variation_depth = 1;
                break;
            case '$':
                flush();
                while (i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) ++i;
                break;
            default:
                if (std::isspace(static_cast<unsigned char>(c))) {
                    flush();
                } else {
                    word += c;
                }
        }
    }
    flush();
    return tokens;
}

Position replay(const Position& start, const std::vector<std::string>& tokens) {
    Position p = start;
    for (const std::string& token : tokens) {
        try {
            p = apply_move_unchecked(p, parse_san(p, token));
        } catch (const SanError& e) {
            throw PgnError(p.fullmove_number(), token, e.what());
        }
    }
    return p;
}

}  // namespace ccc::chess
