#include "perft_oracle.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace oracle {
namespace {

// 0x88 board; pieces are chars as in FEN, '.' for empty.
struct Board {
    std::array<char, 128> sq;
    bool white = true;
    bool wk = false, wq = false, bk = false, bq = false;
    int ep = -1;
};

struct Mv {
    int from, to;
    char promo;  // lowercase letter or 0
};

bool off(int s) { return (s & 0x88) != 0; }
bool is_white(char c) { return c >= 'A' && c <= 'Z'; }
bool mine(const Board& b, char c) { return c != '.' && is_white(c) == b.white; }
bool theirs(const Board& b, char c) { return c != '.' && is_white(c) != b.white; }

Board parse(const std::string& fen) {
    Board b;
    b.sq.fill('.');
    std::istringstream in(fen);
    std::string place, side, castle, ep;
    in >> place >> side >> castle >> ep;
    int rank = 7, file = 0;
    for (char c : place) {
        if (c == '/') {
            --rank;
            file = 0;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            file += c - '0';
        } else {
            b.sq[static_cast<std::size_t>(rank * 16 + file)] = c;
            ++file;
        }
    }
    b.white = side == "w";
    b.wk = castle.find('K') != std::string::npos;
    b.wq = castle.find('Q') != std::string::npos;
    b.bk = castle.find('k') != std::string::npos;
    b.bq = castle.find('q') != std::string::npos;
    if (ep != "-") b.ep = (ep[1] - '1') * 16 + (ep[0] - 'a');
    return b;
}

void pseudo(const Board& b, std::vector<Mv>& out) {
    static const int kn[] = {33, 31, 18, 14, -33, -31, -18, -14};
    static const int kg[] = {1, -1, 16, -16, 17, 15, -17, -15};
    for (int s = 0; s < 128; ++s) {
        if (off(s)) continue;
        const char c = b.sq[static_cast<std::size_t>(s)];
        if (!mine(b, c)) continue;
        const char t = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        auto push = [&](int to) {
            out.push_back({s, to, 0});
        };
        if (t == 'p') {
            const int dir = b.white ? 16 : -16;
            const int last = b.white ? 7 : 0;
            auto pawn_to = [&](int to) {
                if ((to >> 4) == last) {
                    for (char pr : {'q', 'r', 'b', 'n'}) out.push_back({s, to, pr});
                } else {
                    push(to);
                }
            };
            const int one = s + dir;
            if (!off(one) && b.sq[static_cast<std::size_t>(one)] == '.') {
                pawn_to(one);
                const int start = b.white ? 1 : 6;
                const int two = one + dir;
                if ((s >> 4) == start && b.sq[static_cast<std::size_t>(two)] == '.') push(two);
            }
            for (int side : {-1, 1}) {
                const int to = s + dir + side;
                if (off(to)) continue;
                const int to64 = (to >> 4) * 8 + (to & 7);
                if (theirs(b, b.sq[static_cast<std::size_t>(to)])) pawn_to(to);
                else if (b.ep >= 0 && to == b.ep && to64 >= 0) push(to);
            }
        } else if (t == 'n' || t == 'k') {
            for (int d : (t == 'n' ? kn : kg)) {
                const int to = s + d;
                if (!off(to) && !mine(b, b.sq[static_cast<std::size_t>(to)])) push(to);
            }
        } else {
            const int* dirs = kg;
            int first = 0, last = 8;
            if (t == 'r') last = 4;
            if (t == 'b') first = 4;
            for (int i = first; i < last; ++i) {
                for (int to = s + dirs[i]; !off(to); to += dirs[i]) {
                    const char v = b.sq[static_cast<std::size_t>(to)];
                    if (mine(b, v)) break;
                    push(to);
                    if (v != '.') break;
                }
            }
        }
    }
}

Board make(const Board& b, const Mv& m) {
    Board n = b;
    const char c = b.sq[static_cast<std::size_t>(m.from)];
    const char t = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    n.sq[static_cast<std::size_t>(m.from)] = '.';
    char placed = c;
    if (m.promo) placed = b.white ? static_cast<char>(std::toupper(static_cast<unsigned char>(m.promo))) : m.promo;
    if (t == 'p' && m.to == b.ep) n.sq[static_cast<std::size_t>(m.to + (b.white ? -16 : 16))] = '.';
    n.sq[static_cast<std::size_t>(m.to)] = placed;
    if (t == 'k' && std::abs(m.to - m.from) == 2) {
        const int rank = m.from & 0x70;
        if (m.to > m.from) {
            n.sq[static_cast<std::size_t>(rank + 7)] = '.';
            n.sq[static_cast<std::size_t>(rank + 5)] = b.white ? 'R' : 'r';
        } else {
            n.sq[static_cast<std::size_t>(rank + 0)] = '.';
            n.sq[static_cast<std::size_t>(rank + 3)] = b.white ? 'R' : 'r';
        }
    }
    n.ep = (t == 'p' && std::abs(m.to - m.from) == 32) ? (m.from + m.to) / 2 : -1;
    for (int s : {m.from, m.to}) {
        if (s == 0x04) n.wk = n.wq = false;
        if (s == 0x74) n.bk = n.bq = false;
        if (s == 0x00) n.wq = false;
        if (s == 0x07) n.wk = false;
        if (s == 0x70) n.bq = false;
        if (s == 0x77) n.bk = false;
    }
    n.white = !b.white;
    return n;
}

// Can the side to move in `b` capture on square `target`?
bool reaches(const Board& b, int target) {
    std::vector<Mv> moves;
    pseudo(b, moves);
    for (const Mv& m : moves) {
        const bool pawn_push = std::tolower(static_cast<unsigned char>(b.sq[static_cast<std::size_t>(m.from)])) == 'p' &&
                               (m.from & 7) == (m.to & 7);
        if (m.to == target && !pawn_push) return true;
    }
    // Pawn diagonal onto an empty square is not produced by pseudo(); check it.
    const int dir = b.white ? 16 : -16;
    for (int side : {-1, 1}) {
        const int from = target - dir + side;
        if (off(from)) continue;
        const char c = b.sq[static_cast<std::size_t>(from)];
        if (c == (b.white ? 'P' : 'p')) return true;
    }
    return false;
}

int king_of(const Board& b, bool white) {
    for (int s = 0; s < 128; ++s)
        if (!off(s) && b.sq[static_cast<std::size_t>(s)] == (white ? 'K' : 'k')) return s;
    return -1;
}

std::vector<Mv> legal(const Board& b) {
    std::vector<Mv> moves;
    pseudo(b, moves);
    std::vector<Mv> out;
    for (const Mv& m : moves) {
        const Board n = make(b, m);
        if (reaches(n, king_of(n, b.white))) continue;
        out.push_back(m);
    }
    // Castling, checked square by square against opponent replies.
    Board flipped = b;
    flipped.white = !b.white;
    flipped.ep = -1;
    const int home = b.white ? 0x00 : 0x70;
    const char rook = b.white ? 'R' : 'r';
    const bool ks = b.white ? b.wk : b.bk;
    const bool qs = b.white ? b.wq : b.bq;
    auto empty = [&](int s) { return b.sq[static_cast<std::size_t>(s)] == '.'; };
    if (ks && empty(home + 5) && empty(home + 6) && b.sq[static_cast<std::size_t>(home + 7)] == rook &&
        !reaches(flipped, home + 4) && !reaches(flipped, home + 5) && !reaches(flipped, home + 6))
        out.push_back({home + 4, home + 6, 0});
    if (qs && empty(home + 1) && empty(home + 2) && empty(home + 3) && b.sq[static_cast<std::size_t>(home)] == rook &&
        !reaches(flipped, home + 4) && !reaches(flipped, home + 3) && !reaches(flipped, home + 2))
        out.push_back({home + 4, home + 2, 0});
    return out;
}

std::uint64_t count(const Board& b, int depth) {
    if (depth == 0) return 1;
    std::uint64_t n = 0;
    for (const Mv& m : legal(b)) n += count(make(b, m), depth - 1);
    return n;
}

std::string name(int s) { return {static_cast<char>('a' + (s & 7)), static_cast<char>('1' + (s >> 4))}; }

}  // namespace

std::uint64_t perft(const std::string& fen, int depth) { return count(parse(fen), depth); }

std::vector<std::string> legal_uci(const std::string& fen) {
    std::vector<std::string> out;
    for (const Mv& m : legal(parse(fen))) {
        std::string s = name(m.from) + name(m.to);
        if (m.promo) s += m.promo;
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
