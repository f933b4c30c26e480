#pragma once

#include <cstdint>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/chess/types.hpp"

namespace ccc::chess {

/// apply_move was handed a move that is not legal in the position.
class IllegalMoveError : public DataError {
public:
    IllegalMoveError(std::string move_text, const std::string& fen)
        : DataError("illegal move " + move_text + " in " + fen), move_text_(std::move(move_text)) {}
    const std::string& move_text() const { return move_text_; }

private:
    std::string move_text_;
};

/// True when `by` attacks `target` (pins ignored, as for check detection).
bool is_attacked(const Position& p, Square target, Color by);
bool in_check(const Position& p);
bool in_check(const Position& p, Color side);

/// Legal moves in (from, to, promotion) order, fully annotated including the
/// check and checkmate flags.
std::vector<Move> legal_moves(const Position& p);
/// Same order as legal_moves() but without check/checkmate flags; for hot
/// loops such as random playouts.
std::vector<Move> legal_moves_unannotated(const Position& p);

/// Applies a legal move. Throws IllegalMoveError (carrying the move's UCI
/// text, or SAN when known to the caller) otherwise.
Position apply_move(const Position& p, const Move& m);

/// Applies a move already known to be legal; no validation.
Position apply_move_unchecked(const Position& p, const Move& m);

enum class TerminalState { ongoing, checkmate, stalemate };

TerminalState terminal_state(const Position& p);

/// Leaf count of the legal move tree.
std::uint64_t perft(const Position& p, int depth);

/// Number of legal moves without annotation; cheaper than legal_moves().size().
int count_legal_moves(const Position& p);

}  // namespace ccc::chess
