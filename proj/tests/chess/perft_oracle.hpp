#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Test-only move-generator oracle. Shares no code with ccc_chess: it parses
// FEN itself, uses a 0x88 board, and decides legality by asking whether any
// opponent reply captures the king.
namespace oracle {

std::uint64_t perft(const std::string& fen, int depth);

/// Legal moves as UCI strings, sorted.
std::vector<std::string> legal_uci(const std::string& fen);

}  // namespace oracle
