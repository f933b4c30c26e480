#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ccc::chess {

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) { return c == Color::White ? Color::Black : Color::White; }

enum class PieceKind : std::uint8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

inline constexpr int kPieceKinds = 6;

struct Piece {
    Color color = Color::White;
    PieceKind kind = PieceKind::Pawn;

    friend constexpr bool operator==(Piece, Piece) = default;

    /// FEN letter: uppercase for White.
    char fen_char() const;
    static std::optional<Piece> from_fen_char(char c);

    /// 0..11, White pawn..king then Black pawn..king.
    constexpr int index() const { return static_cast<int>(color) * kPieceKinds + static_cast<int>(kind); }
};

/// Lowercase English name ("pawn", "knight", ...).
std::string_view kind_name(PieceKind k);
/// SAN letter for non-pawn pieces ('N', 'B', 'R', 'Q', 'K'); '\0' for pawns.
char san_letter(PieceKind k);

/// Board square, stored rank-major: index = rank * 8 + file. The natural
/// order on indices is the iteration order everywhere in the library.
class Square {
public:
    constexpr Square() = default;

    static constexpr Square at(int file, int rank) { return Square(static_cast<std::uint8_t>(rank * 8 + file)); }
    static constexpr Square from_index(int index) { return Square(static_cast<std::uint8_t>(index)); }
    /// Parses "e4"; nullopt on anything else.
    static std::optional<Square> parse(std::string_view text);

    constexpr int index() const { return index_; }
    constexpr int file() const { return index_ & 7; }
    constexpr int rank() const { return index_ >> 3; }

    std::string name() const;

    friend constexpr auto operator<=>(Square, Square) = default;

private:
    constexpr explicit Square(std::uint8_t index) : index_(index) {}
    std::uint8_t index_ = 0;
};

constexpr bool on_board(int file, int rank) { return file >= 0 && file < 8 && rank >= 0 && rank < 8; }

/// Castling-right bit set.
enum CastlingRight : std::uint8_t {
    kWhiteKingside = 1,
    kWhiteQueenside = 2,
    kBlackKingside = 4,
    kBlackQueenside = 8,
};

enum MoveFlag : std::uint8_t {
    kCapture = 1,
    kEnPassant = 2,
    kCastleKingside = 4,
    kCastleQueenside = 8,
    kCheck = 16,
    kCheckmate = 32,
};

/// A move in coordinate form. Identity (equality, ordering) is the
/// (from, to, promotion) triple; flags are annotations derived from the
/// position the move was generated in.
struct Move {
    Square from;
    Square to;
    std::optional<PieceKind> promotion;
    std::uint8_t flags = 0;

    bool has(MoveFlag f) const { return (flags & f) != 0; }

    friend bool operator==(const Move& a, const Move& b) {
        return a.from == b.from && a.to == b.to && a.promotion == b.promotion;
    }
    friend std::strong_ordering operator<=>(const Move& a, const Move& b) {
        if (auto c = a.from <=> b.from; c != 0) return c;
        if (auto c = a.to <=> b.to; c != 0) return c;
        const int pa = a.promotion ? static_cast<int>(*a.promotion) : -1;
        const int pb = b.promotion ? static_cast<int>(*b.promotion) : -1;
        return pa <=> pb;
    }
};

}  // namespace ccc::chess
