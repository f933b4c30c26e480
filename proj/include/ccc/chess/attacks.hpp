#pragma once

#include <string>
#include <vector>

#include "ccc/chess/position.hpp"
#include "ccc/chess/types.hpp"

namespace ccc::chess {

/// A legal capture available to the side to move.
struct Attack {
    Square attacker_square;
    Piece attacker;
    Square target_square;  // the captured pawn's square for en passant
    Piece target;
    Move move;
};

/// Every legal capture in legal_moves() order.
std::vector<Attack> enumerate_attacks(const Position& p);

/// "f5 pawn x g4 pawn".
std::string describe(const Attack& a);

/// describe() over the attack list, with duplicates (promotion variants of one
/// capture) collapsed while keeping first-seen order.
std::vector<std::string> describe_attacks(const std::vector<Attack>& attacks);

}  // namespace ccc::chess
