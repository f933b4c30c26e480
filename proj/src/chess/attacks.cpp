#include "ccc/chess/attacks.hpp"

#include <algorithm>

#include "ccc/chess/movegen.hpp"

namespace ccc::chess {

std::vector<Attack> enumerate_attacks(const Position& p) {
    std::vector<Attack> out;
    for (const Move& m : legal_moves(p)) {
        if (!m.has(kCapture)) continue;
        const Square target_sq = m.has(kEnPassant) ? Square::at(m.to.file(), m.from.rank()) : m.to;
        out.push_back(Attack{m.from, *p.at(m.from), target_sq, *p.at(target_sq), m});
    }
    return out;
}

std::string describe(const Attack& a) {
    std::string out = a.attacker_square.name();
    out += ' ';
    out += kind_name(a.attacker.kind);
    out += " x ";
    out += a.target_square.name();
    out += ' ';
    out += kind_name(a.target.kind);
    return out;
}

std::vector<std::string> describe_attacks(const std::vector<Attack>& attacks) {
    std::vector<std::string> out;
    for (const Attack& a : attacks) {
        std::string line = describe(a);
        if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(std::move(line));
    }
    return out;
}

}  // namespace ccc::chess
