#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ccc::testing {

// Golden files end with one newline for editor friendliness; the prompts
// they pin do not.
inline std::string read_golden(const std::string& name) {
    std::ifstream in(std::string(CCC_GOLDEN_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing golden file " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

}  // namespace ccc::testing
