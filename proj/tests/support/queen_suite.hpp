#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ccc::testing {

struct QueenCapture {
    std::string fen;
    std::string capture;
    std::string reply;
};

inline std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

inline std::vector<QueenCapture> load_queen_suite(const std::string& path) {
    std::ifstream in(path);
    std::vector<QueenCapture> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto a = line.find('|');
        const auto b = line.find('|', a + 1);
        out.push_back({trim(line.substr(0, a)), trim(line.substr(a + 1, b - a - 1)), trim(line.substr(b + 1))});
    }
    return out;
}

}  // namespace ccc::testing
