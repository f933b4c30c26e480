#include "ccc/io/datasets.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ccc/chess/movegen.hpp"
#include "ccc/chess/notation.hpp"
#include "ccc/chess/position.hpp"
#include "ccc/error.hpp"
#include "ccc/hash.hpp"

namespace ccc::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

PositionRecord parse_position_line(const std::string& line) {
    const auto j = json::parse(line);
    if (!j.is_object() || !j.contains("fen") || !j["fen"].is_string()) throw DataError("no \"fen\" string");
    PositionRecord r;
    r.fen = j["fen"].get<std::string>();
    chess::parse_fen(r.fen);
    if (!j.contains("evals")) return r;
    if (!j["evals"].is_array()) throw DataError("\"evals\" is not an array");
    for (const auto& ev : j["evals"]) {
        const int depth = ev.value("depth", 0);
        if (!ev.contains("pvs") || !ev["pvs"].is_array()) throw DataError("eval without \"pvs\" array");
        for (const auto& pv : ev["pvs"]) {
            PvEval e;
            e.depth = depth;
            if (pv.contains("cp")) e.score = engine::Score::cp(pv["cp"].get<int>());
            else if (pv.contains("mate")) e.score = engine::Score::mate(pv["mate"].get<int>());
            else throw DataError("pv without \"cp\" or \"mate\"");
            if (pv.contains("line")) e.line = split_ws(pv["line"].get<std::string>());
            r.evals.push_back(std::move(e));
        }
    }
    return r;
}

}  // namespace

PositionDump read_position_dump(std::istream& in, std::size_t limit) {
    PositionDump d;
    long n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        if (blank(line)) continue;
        if (limit && d.records.size() >= limit) break;
        ++d.stats.lines;
        try {
            d.records.push_back(parse_position_line(line));
            ++d.stats.accepted;
        } catch (const json::exception& e) {
            d.stats.rejected.push_back({n, std::string("malformed JSON: ") + e.what()});
        } catch (const DataError& e) {
            d.stats.rejected.push_back({n, e.what()});
        }
    }
    return d;
}

PositionDump load_position_dump(const std::string& path, std::size_t limit) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read position dump " + path);
    return read_position_dump(in, limit);
}

CommentarySet read_commentary_set(std::istream& in) {
    CommentarySet set;
    long n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        if (blank(line)) continue;
        ++set.stats.lines;
        try {
            const auto j = json::parse(line);
            CommentarySample s;
            s.fen = j.at("fen").get<std::string>();
            s.move_san = j.at("move_san").get<std::string>();
            if (j.contains("reference_comment") && !j["reference_comment"].is_null())
                s.reference_comment = j["reference_comment"].get<std::string>();
            const auto p = chess::parse_fen(s.fen);
            try {
                chess::parse_san(p, s.move_san);
            } catch (const chess::SanError& e) {
                throw DataError(std::string("illegal move: ") + e.what());
            }
            set.samples.push_back(std::move(s));
            ++set.stats.accepted;
        } catch (const json::exception& e) {
            set.stats.rejected.push_back({n, std::string("malformed JSON: ") + e.what()});
        } catch (const DataError& e) {
            set.stats.rejected.push_back({n, e.what()});
        }
    }
    return set;
}

CommentarySet load_commentary_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read commentary set " + path);
    return read_commentary_set(in);
}

void write_commentary_set(std::ostream& out, std::vector<CommentarySample> samples) {
    std::sort(samples.begin(), samples.end(), [](const CommentarySample& a, const CommentarySample& b) {
        return std::tie(a.fen, a.move_san, a.reference_comment) < std::tie(b.fen, b.move_san, b.reference_comment);
    });
    for (const auto& s : samples) {
        nlohmann::ordered_json j;
        j["fen"] = s.fen;
        j["move_san"] = s.move_san;
        if (s.reference_comment) j["reference_comment"] = *s.reference_comment;
        out << j.dump() << '\n';
    }
}

void write_text_atomic(const std::string& path, std::string text) {
    while (!text.empty() && text.back() == '\n') text.pop_back();
    if (!text.empty()) text += '\n';
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw DataError("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_report(const std::string& path, std::vector<std::string> lines) {
    std::sort(lines.begin(), lines.end());
    std::string text;
    for (const auto& l : lines) text += l + '\n';
    write_text_atomic(path, std::move(text));
}

Workspace::Workspace(std::string root) : root_(std::move(root)) {}

void Workspace::create() const {
    for (const char* sub : kSubdirs) fs::create_directories(fs::path(root_) / sub);
}

std::string Workspace::path(const std::string& sub, const std::string& name) const {
    if (std::none_of(std::begin(kSubdirs), std::end(kSubdirs), [&](const char* s) { return sub == s; }))
        throw UsageError("unknown workspace directory '" + sub + "'");
    auto p = fs::path(root_) / sub;
    if (!name.empty()) p /= name;
    return p.string();
}

void Manifest::add_input(const std::string& path) { inputs[path] = sha256_file(path); }
void Manifest::add_output(const std::string& path) { outputs[path] = sha256_file(path); }

std::string Manifest::to_json() const {
    // std::map keeps keys sorted, so the dump is stable
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    return j.dump(2);
}

Manifest Manifest::from_json(const std::string& text) {
    try {
        const auto j = json::parse(text);
        Manifest m;
        m.command = j.at("command").get<std::string>();
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
        m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed manifest: ") + e.what());
    }
}

void Manifest::write(const std::string& path) const { write_text_atomic(path, to_json()); }

}  // namespace ccc::io
