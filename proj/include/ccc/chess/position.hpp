#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ccc/chess/types.hpp"
#include "ccc/error.hpp"

namespace ccc::chess {

/// Raised by parse_fen. field() names the offending FEN field
/// ("placement", "side", "castling", "en_passant", "halfmove", "fullmove",
/// "kings", "pawns", "check", "fields").
class FenError : public DataError {
public:
    FenError(std::string field, const std::string& message)
        : DataError("invalid FEN (" + field + "): " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Full chess position. A Position obtained from parse_fen or apply_move
/// always satisfies the legality invariants; the raw editing members
/// (place/remove/set_*) do not re-validate and are meant for move
/// application and test fixtures.
class Position {
public:
    Position();

    static Position initial();

    std::optional<Piece> at(Square s) const { return board_[static_cast<std::size_t>(s.index())]; }
    Color side_to_move() const { return side_; }
    std::uint8_t castling() const { return castling_; }
    bool can_castle(CastlingRight r) const { return (castling_ & r) != 0; }
    std::optional<Square> en_passant() const { return en_passant_; }
    int halfmove_clock() const { return halfmove_; }
    /// Normalized full-move number (>= 1).
    int fullmove_number() const { return fullmove_; }
    /// Full-move number exactly as it appeared in the parsed FEN. Differs from
    /// fullmove_number() only when a lenient "0" was read.
    int source_fullmove() const { return source_fullmove_; }
    bool fullmove_normalized() const { return source_fullmove_ != fullmove_; }

    Square king_square(Color c) const { return kings_[static_cast<std::size_t>(c)]; }

    void place(Square s, Piece p);
    void remove(Square s);
    void set_side_to_move(Color c) { side_ = c; }
    void set_castling(std::uint8_t rights) { castling_ = rights; }
    void set_en_passant(std::optional<Square> s) { en_passant_ = s; }
    void set_halfmove_clock(int n) { halfmove_ = n; }
    void set_fullmove_number(int n) {
        fullmove_ = n;
        source_fullmove_ = n;
    }

    /// Equality over every rule-relevant field. The preserved source full-move
    /// value is provenance, not state, and is ignored.
    friend bool operator==(const Position& a, const Position& b);

private:
    friend Position parse_fen(std::string_view text);

    std::array<std::optional<Piece>, 64> board_{};
    std::array<Square, 2> kings_{};
    Color side_ = Color::White;
    std::uint8_t castling_ = 0;
    std::optional<Square> en_passant_;
    int halfmove_ = 0;
    int fullmove_ = 1;
    int source_fullmove_ = 1;
};

inline constexpr std::string_view kInitialFen = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

/// Parses a 4 to 6 field FEN. Missing clocks default to "0 1"; a full-move
/// value of 0 is accepted and normalized to 1.
Position parse_fen(std::string_view text);

enum class FenClocks { canonical, source };

/// Canonical 6-field FEN. FenClocks::source re-emits the full-move number as
/// it was read, for prompts that must reproduce an input verbatim.
std::string to_fen(const Position& p, FenClocks clocks = FenClocks::canonical);

/// First four FEN fields (placement, side, castling, en passant). Used as the
/// lookup key for activation and score files.
std::string fen_key(const Position& p);
/// Same key computed from FEN text without a full parse.
std::string fen_key(std::string_view fen);

/// Color-swapped mirror: ranks flipped, piece colors and side to move swapped.
Position mirrored(const Position& p);

}  // namespace ccc::chess
