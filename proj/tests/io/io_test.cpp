#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccc/error.hpp"
#include "ccc/hash.hpp"
#include "ccc/io/csv.hpp"
#include "ccc/io/datasets.hpp"

using namespace ccc;
using namespace ccc::io;
namespace fs = std::filesystem;

namespace {

constexpr const char* kEndgame = "8/3nk3/1p4pp/1N1P1p2/1bP2KP1/3P1P2/7P/8 b - - 0 0";

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("ccc_io_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("position dump lines map onto records") {
    std::istringstream in(
        R"({"fen": "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -", "evals": [{"pvs": [{"cp": 311, "line": "e2e4 e7e5 g1f3"}], "depth": 22}]})"
        "\n"
        R"({"fen": "6k1/5ppp/8/8/8/8/5PPP/Q3R1K1 w - -", "evals": [{"pvs": [{"mate": 2, "line": "e1e8"}, {"cp": -40, "line": "a1a2"}], "depth": 30}, {"pvs": [{"mate": 2}], "depth": 12}]})"
        "\n"
        "not json at all\n"
        "\n"
        R"({"fen": "8/8/8/8/8/8/8/8 w - -"})"
        "\n"
        R"({"evals": []})"
        "\n"
        R"({"fen": "4k3/8/8/8/8/8/8/4K3 w - -", "evals": [{"pvs": [{"line": "e1e2"}]}]})"
        "\n"
        R"({"fen": "4k3/8/8/8/8/8/8/4K3 w - -"})"
        "\n");
    const auto d = read_position_dump(in);
    REQUIRE(d.records.size() == 3);
    CHECK(d.stats.accepted == 3);
    CHECK(d.stats.rejected.size() == 4);
    CHECK(d.stats.lines == d.stats.accepted + d.stats.rejected.size());
    CHECK(d.stats.rejected[0].line == 3);

    const auto& r0 = d.records[0];
    REQUIRE(r0.evals.size() == 1);
    CHECK(r0.evals[0].score == engine::Score::cp(311));
    CHECK(r0.evals[0].depth == 22);
    CHECK(r0.evals[0].line == std::vector<std::string>{"e2e4", "e7e5", "g1f3"});

    const auto& r1 = d.records[1];
    REQUIRE(r1.evals.size() == 3);
    CHECK(r1.evals[0].score == engine::Score::mate(2));
    CHECK(r1.evals[0].score.is_mate());
    CHECK(r1.evals[1].score == engine::Score::cp(-40));
    CHECK(r1.evals[2].depth == 12);
    CHECK(r1.evals[2].line.empty());

    CHECK(d.records[2].evals.empty());
}

TEST_CASE("position dump honours the record limit") {
    std::string text;
    for (int i = 0; i < 10; ++i) text += R"({"fen": "4k3/8/8/8/8/8/8/4K3 w - -"})" "\n";
    std::istringstream in(text);
    const auto d = read_position_dump(in, 4);
    CHECK(d.records.size() == 4);
    CHECK(d.stats.lines == 4);
    CHECK_THROWS_AS(load_position_dump("/nonexistent/dump.jsonl"), DataError);
}

TEST_CASE("commentary sets validate moves and round-trip") {
    std::istringstream in(std::string(R"({"fen": ")") + kEndgame +
                          R"(", "move_san": "Bd2+", "reference_comment": "Black trades into a won ending."})" "\n" +
                          R"({"fen": ")" + kEndgame + R"(", "move_san": "Ke1"})" "\n" +
                          R"({"fen": "4k3/8/8/8/8/8/8/4K3 w - - 0 1", "move_san": "Kd2"})" "\n" +
                          R"({"fen": "4k3/8/8/8/8/8/8/4K3 w - - 0 1"})" "\n" + "[]\n");
    const auto set = read_commentary_set(in);
    REQUIRE(set.samples.size() == 2);
    CHECK(set.samples[0].move_san == "Bd2+");
    CHECK(set.samples[0].reference_comment == "Black trades into a won ending.");
    CHECK_FALSE(set.samples[1].reference_comment);
    REQUIRE(set.stats.rejected.size() == 3);
    CHECK(set.stats.rejected[0].line == 2);
    CHECK(set.stats.rejected[0].reason.rfind("illegal move", 0) == 0);
    CHECK(set.stats.lines == 5);

    std::ostringstream out;
    write_commentary_set(out, set.samples);
    std::istringstream back(out.str());
    const auto again = read_commentary_set(back);
    CHECK(again.stats.rejected.empty());
    // writer order is (fen, move) so the bare-king sample comes first
    REQUIRE(again.samples.size() == 2);
    CHECK(again.samples[0] == set.samples[1]);
    CHECK(again.samples[1] == set.samples[0]);

    std::ostringstream out2;
    write_commentary_set(out2, {set.samples[1], set.samples[0]});
    CHECK(out2.str() == out.str());
    CHECK(out.str().find(R"({"fen":"4k3/8/8/8/8/8/8/4K3 w - - 0 1","move_san":"Kd2"})") == 0);
}

TEST_CASE("report writer is sorted and newline-normalized") {
    const auto dir = scratch_dir("report");
    write_report((dir / "a.txt").string(), {"b", "a", "c"});
    write_report((dir / "b.txt").string(), {"c", "b", "a"});
    CHECK(slurp(dir / "a.txt") == "a\nb\nc\n");
    CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
    write_text_atomic((dir / "sub" / "t.txt").string(), "x\n\n\n");
    CHECK(slurp(dir / "sub" / "t.txt") == "x\n");
    write_text_atomic((dir / "e.txt").string(), "");
    CHECK(slurp(dir / "e.txt").empty());
    CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
    fs::remove_all(dir);
}

TEST_CASE("workspace layout and manifest") {
    const auto dir = scratch_dir("ws");
    Workspace ws((dir / "workspace").string());
    ws.create();
    for (const char* sub : Workspace::kSubdirs) CHECK(fs::is_directory(dir / "workspace" / sub));
    CHECK(ws.path("reports", "r.csv") == (dir / "workspace" / "reports" / "r.csv").string());
    CHECK_THROWS_AS(ws.path("secrets"), UsageError);

    write_text_atomic(ws.path("datasets", "in.txt"), "abc");
    Manifest m;
    m.command = "skill";
    m.config["condition"] = "plain";
    m.config["llm"] = "mock:oracle-mate";
    m.add_input(ws.path("datasets", "in.txt"));
    CHECK(m.inputs.begin()->second == sha256_hex("abc\n"));
    m.write(ws.path("reports", "manifest.json"));
    const auto parsed = Manifest::from_json(slurp(ws.path("reports", "manifest.json")));
    CHECK(parsed.command == "skill");
    CHECK(parsed.config == m.config);
    CHECK(parsed.inputs == m.inputs);
    CHECK(parsed.to_json() == m.to_json());
    CHECK_THROWS_AS(Manifest::from_json("{}"), DataError);
    CHECK_THROWS_AS(m.add_input((dir / "missing").string()), DataError);
    fs::remove_all(dir);
}

TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("csv reader and writer") {
    std::istringstream in("a,\"b,c\",\"d\"\"e\"\n\"multi\nline\",x\n,\n");
    CsvReader r(in);
    CHECK(r.next() == std::vector<std::string>{"a", "b,c", "d\"e"});
    CHECK(r.next() == std::vector<std::string>{"multi\nline", "x"});
    CHECK(r.line() == 2);
    CHECK(r.next() == std::vector<std::string>{"", ""});
    CHECK(r.line() == 4);
    CHECK_FALSE(r.next());
    CHECK(csv_row({"a", "b,c", "d\"e", "multi\nline"}) == "a,\"b,c\",\"d\"\"e\",\"multi\nline\"");

    std::istringstream bad("\"open\n");
    CsvReader rb(bad);
    CHECK_THROWS_AS(rb.next(), DataError);
    CHECK_THROWS_AS(CsvHeader({"a", "b"}, {"a", "c", "d"}), DataError);
    CsvHeader h({"\xEF\xBB\xBFid", "x"}, {"id"});
    CHECK(h.index("x") == 1);
}
