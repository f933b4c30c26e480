#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/chess/types.hpp"

namespace ccc::chess {

enum class SanErrorKind { syntax, no_match, ambiguous };

class SanError : public DataError {
public:
    SanError(SanErrorKind kind, std::string san, const std::string& message)
        : DataError("SAN '" + san + "': " + message), kind_(kind), san_(std::move(san)) {}
    SanErrorKind kind() const { return kind_; }
    const std::string& san() const { return san_; }

private:
    SanErrorKind kind_;
    std::string san_;
};

/// Resolves SAN against the legal moves of `p`. Check/mate suffixes and
/// annotation glyphs are ignored; "0-0" is accepted for "O-O".
Move parse_san(const Position& p, std::string_view san);
/// Minimal-disambiguation SAN with "+"/"#" suffixes. `m` must be legal.
std::string format_san(const Position& p, const Move& m);

/// Resolves "e2e4"/"e7e8q" against the legal moves of `p`; throws
/// IllegalMoveError when no legal move matches.
Move parse_uci_move(const Position& p, std::string_view text);
std::string format_uci_move(const Move& m);

/// "30... Bd2+" for Black, "21. Bxe6+" for White, using the position's
/// full-move number unless an explicit number is supplied.
std::string move_label(const Position& p, const std::string& san, int move_number = 0);

class PgnError : public DataError {
public:
    PgnError(int move_number, std::string token, const std::string& message)
        : DataError("PGN move " + std::to_string(move_number) + " (" + token + "): " + message),
          move_number_(move_number), token_(std::move(token)) {}
    int move_number() const { return move_number_; }
    const std::string& token() const { return token_; }

private:
    int move_number_;
    std::string token_;
};

/// Extracts SAN tokens from PGN movetext. Tag pairs, comments, NAGs,
/// variations, move numbers and result markers are dropped.
std::vector<std::string> parse_pgn_moves(std::string_view movetext);

/// Folds apply_move over the SAN tokens starting at `start`.
Position replay(const Position& start, const std::vector<std::string>& tokens);

}  // namespace ccc::chess
