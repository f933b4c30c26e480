// ccc: command-line front end for the commentary pipeline.
//
// Exit status: 0 success, 2 usage error, 3 data error, 4 engine or LLM
// failure. Failures also print one JSON line {"error", "category", "exit"}
// on stderr.
#include <pthread.h>

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccc/chess/position.hpp"
#include "ccc/concepts/dataset.hpp"
#include "ccc/concepts/io.hpp"
#include "ccc/concepts/labeler.hpp"
#include "ccc/concepts/vector.hpp"
#include "ccc/error.hpp"
#include "ccc/eval/stats.hpp"
#include "ccc/io/csv.hpp"
#include "ccc/io/datasets.hpp"
#include "ccc/service/pipeline.hpp"
#include "ccc/service/server.hpp"
#include "ccc/skill/skill.hpp"

using namespace ccc;
using nlohmann::json;

namespace {

int exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return 2;
        case ErrorCategory::data: return 3;
        case ErrorCategory::upstream: return 4;
    }
    return 1;
}

int fail(const std::string& message, const std::string& category, int code) {
    nlohmann::ordered_json j;
    j["error"] = message;
    j["category"] = category;
    j["exit"] = code;
    std::cerr << j.dump() << std::endl;
    return code;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Globals {
    std::string workspace;
    std::string manifest;
    std::string cache_dir;
    int parallelism = 4;
};

/// Collects outputs and writes the run manifest last.
class Run {
public:
    Run(const Globals& g, std::string command) : globals_(g) { manifest_.command = std::move(command); }

    void input(const std::string& path) {
        if (!path.empty()) manifest_.add_input(path);
    }
    void config(const CLI::App& sub) {
        for (const auto* opt : sub.get_options()) {
            if (opt->get_name() == "--help" || opt->get_lnames().empty()) continue;
            auto vals = opt->reduced_results();
            std::string v;
            for (const auto& r : vals) v += (v.empty() ? "" : ",") + r;
            if (vals.empty()) v = opt->get_default_str();
            manifest_.config[opt->get_lnames().front()] = v;
        }
    }
    /// Writes `text` to `path`, or to stdout when `path` is empty.
    void emit(const std::string& path, const std::string& text) {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        io::write_text_atomic(path, text);
        manifest_.add_output(path);
        if (primary_.empty()) primary_ = path;
    }
    void finish() {
        std::string where = globals_.manifest;
        if (where.empty() && !globals_.workspace.empty()) {
            std::string name = manifest_.command;
            for (auto& c : name)
                if (c == ' ') c = '-';
            where = io::Workspace(globals_.workspace).path("reports", name + ".manifest.json");
        }
        if (where.empty() && !primary_.empty()) where = primary_ + ".manifest.json";
        if (!where.empty()) manifest_.write(where);
    }

private:
    const Globals& globals_;
    io::Manifest manifest_;
    std::string primary_;
};

/// The script file behind a mock transport spec, if any.
std::string mock_script(const std::string& spec) {
    if (spec.rfind("mock:file:", 0) == 0) return spec.substr(10);
    if (spec.rfind("mock:", 0) == 0 && spec != "mock:oracle-mate" && spec.rfind("mock:random-legal:", 0) != 0)
        return spec.substr(5);
    return "";
}

std::shared_ptr<llm::Client> make_client(const Globals& g, const std::string& spec) {
    llm::ClientOptions opts;
    opts.parallelism = g.parallelism;
    if (!g.cache_dir.empty()) opts.cache_dir = g.cache_dir;
    return std::make_shared<llm::Client>(llm::make_transport(spec), opts);
}

std::vector<std::string> position_fens(const std::string& spec, std::size_t limit) {
    std::vector<std::string> fens;
    if (spec.rfind("synthetic:", 0) == 0) {
        // synthetic:N[:SEED]
        std::istringstream parts(spec.substr(10));
        std::size_t n = 0;
        std::uint64_t seed = 1;
        char colon = 0;
        if (!(parts >> n) || n == 0) throw UsageError("bad synthetic position spec '" + spec + "'");
        if (parts >> colon && !(parts >> seed)) throw UsageError("bad synthetic position spec '" + spec + "'");
        for (const auto& p : concepts::sample_positions(n, seed)) fens.push_back(chess::to_fen(p));
        return fens;
    }
    const auto dump = io::load_position_dump(spec, limit);
    if (!dump.stats.rejected.empty())
        std::cerr << "skipped " << dump.stats.rejected.size() << " unreadable position line(s)\n";
    for (const auto& r : dump.records) fens.push_back(r.fen);
    return fens;
}

std::shared_ptr<const concepts::ActivationProvider> activation_provider(const std::string& spec) {
    if (spec == "synthetic") return std::make_shared<concepts::SyntheticProvider>();
    if (spec == "analytic") {
        return std::make_shared<concepts::AnalyticFeatureProvider>(concepts::AnalyticFeatureProvider::evaluation_units());
    }
    if (spec.rfind("file:", 0) == 0)
        return std::make_shared<concepts::FileProvider>(concepts::FileProvider::load(spec.substr(5)));
    throw UsageError("unknown activations '" + spec + "' (synthetic, analytic or file:PATH)");
}

std::vector<double> read_numbers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path);
    std::vector<double> out;
    long n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(line, &used));
            if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(line);
        } catch (const std::exception&) {
            throw DataError(path + " line " + std::to_string(n) + ": not a number");
        }
    }
    return out;
}

std::vector<std::vector<int>> read_ratings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path);
    io::CsvReader reader(in);
    std::vector<std::vector<int>> rows;
    bool first = true;
    while (auto row = reader.next()) {
        if (row->size() == 1 && row->front().empty()) continue;
        std::vector<int> counts;
        try {
            for (const auto& f : *row) {
                std::size_t used = 0;
                counts.push_back(std::stoi(f, &used));
                if (used != f.size()) throw std::invalid_argument(f);
            }
        } catch (const std::exception&) {
            // a non-numeric first row is a header
            if (first) {
                first = false;
                continue;
            }
            throw DataError(path + " line " + std::to_string(reader.line()) + ": counts must be integers");
        }
        first = false;
        rows.push_back(std::move(counts));
    }
    return rows;
}

struct EvalSample {
    std::string method;
    service::EvaluateRequest req;
};

std::vector<EvalSample> read_eval_input(const std::string& path, const std::string& default_method,
                                        const std::vector<eval::Dimension>& dims) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path);
    std::vector<EvalSample> out;
    long n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = json::parse(line);
            EvalSample s;
            s.method = j.value("method", default_method);
            s.req.fen = j.at("fen").get<std::string>();
            s.req.move_san = j.at("move_san").get<std::string>();
            s.req.comment = j.at("comment").get<std::string>();
            s.req.move_number = j.value("move_number", 0);
            s.req.dims = dims;
            out.push_back(std::move(s));
        } catch (const json::exception& e) {
            throw DataError(path + " line " + std::to_string(n) + ": " + e.what());
        }
    }
    if (out.empty()) throw DataError(path + " has no samples");
    return out;
}

const char* dimension_title(eval::Dimension d) {
    switch (d) {
        case eval::Dimension::relevance: return "Relevance";
        case eval::Dimension::completeness: return "Completeness";
        case eval::Dimension::clarity: return "Clarity";
        case eval::Dimension::fluency: return "Fluency";
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concept-guided chess commentary: generation, GCC-Eval and skill checks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file with option defaults");
    app.option_defaults()->always_capture_default();
    Globals g;
    app.add_option("--workspace", g.workspace, "experiment workspace; manifests go to its reports/ directory");
    app.add_option("--manifest", g.manifest, "manifest path (default: next to the first output)");
    app.add_option("--cache-dir", g.cache_dir, "LLM completion cache (env CCC_CACHE_DIR)");
    app.add_option("--parallelism", g.parallelism, "concurrent LLM requests")->check(CLI::PositiveNumber);

    // concepts
    auto* concepts_cmd = app.add_subcommand("concepts", "concept datasets and vectors");
    concepts_cmd->require_subcommand(1);

    auto* build = concepts_cmd->add_subcommand("build-dataset", "label positions and keep the extremes");
    std::string positions, concept_name, labeler_spec = "analytic", dataset_out;
    double fraction = 0.05;
    std::size_t position_limit = 0;
    bool analytic_fallback = false;
    build->add_option("--positions", positions, "position dump (JSON lines) or synthetic:N[:SEED]")->required();
    build->add_option("--concept", concept_name)->required();
    build->add_option("--labeler", labeler_spec, "analytic or scores:FILE");
    build->add_option("--fraction", fraction, "share kept at each extreme")->check(CLI::Range(0.0, 0.5));
    build->add_option("--limit", position_limit, "read at most this many dump records (0: all)");
    build->add_flag("--analytic-fallback", analytic_fallback, "label unscored positions analytically");
    build->add_option("--out", dataset_out)->required();

    auto* train = concepts_cmd->add_subcommand("train", "train one linear concept vector per dataset");
    std::vector<std::string> train_datasets;
    std::string train_activations = "synthetic", vectors_out, standardize = "auto";
    concepts::TrainingHyper hyper;
    train->add_option("--dataset", train_datasets)->required();
    train->add_option("--activations", train_activations, "synthetic, analytic or file:PATH");
    train->add_option("--out", vectors_out)->required();
    train->add_option("--seed", hyper.seed);
    train->add_option("--epochs", hyper.epochs)->check(CLI::PositiveNumber);
    train->add_option("--lambda", hyper.lambda)->check(CLI::PositiveNumber);
    train->add_option("--standardize", standardize)->check(CLI::IsMember({"auto", "on", "off"}));

    auto* ceval = concepts_cmd->add_subcommand("eval", "held-out accuracy, precision and recall");
    std::string eval_vectors, eval_activations = "synthetic", eval_out;
    std::vector<std::string> eval_tests;
    ceval->add_option("--vectors", eval_vectors)->required();
    ceval->add_option("--test", eval_tests, "held-out dataset, one per concept")->required();
    ceval->add_option("--activations", eval_activations, "synthetic, analytic or file:PATH");
    ceval->add_option("--out", eval_out);

    // comment
    auto* comment = app.add_subcommand("comment", "generate a comment for one move");
    std::string fen, move, condition = "expert_concept", engine_spec, llm_spec, vectors_spec, activations_spec,
                                    comment_out;
    int move_number = 0, depth = 16;
    comment->add_option("--fen", fen)->required();
    comment->add_option("--move", move, "SAN")->required();
    comment->add_option("--move-number", move_number, "printed move number (default: the FEN's)");
    comment->add_option("--condition", condition, "plain, expert or expert_concept");
    comment->add_option("--engine", engine_spec, "uci:PATH or script:TRANSCRIPT");
    comment->add_option("--depth", depth)->check(CLI::PositiveNumber);
    comment->add_option("--llm", llm_spec, "live, mock:oracle-mate, mock:random-legal:SEED or mock:SCRIPT")->required();
    comment->add_option("--vectors", vectors_spec, "vector file or 'oracle'");
    comment->add_option("--activations", activations_spec, "provider for --vectors");
    comment->add_option("--out", comment_out, "JSON report");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "GCC-Eval over a JSON-lines file of comments");
    std::string eval_input, dims_spec = "all", eval_table_out, eval_jsonl, default_method = "input";
    evaluate->add_option("--input", eval_input, "{method?, fen, move_san, comment, move_number?} per line")->required();
    evaluate->add_option("--dims", dims_spec, "all or a comma list");
    evaluate->add_option("--llm", llm_spec)->required();
    evaluate->add_option("--engine", engine_spec);
    evaluate->add_option("--depth", depth)->check(CLI::PositiveNumber);
    evaluate->add_option("--method", default_method, "method name for lines without one");
    evaluate->add_option("--out", eval_table_out, "method x dimension CSV");
    evaluate->add_option("--jsonl", eval_jsonl, "per-sample scores");

    // skill
    auto* skill_cmd = app.add_subcommand("skill", "mate-in-one skill evaluation");
    std::string puzzles_path, skill_out, skill_jsonl, method_name;
    std::vector<std::string> skill_conditions{"plain"};
    bool exclude_gateway = false;
    skill_cmd->add_option("--puzzles", puzzles_path)->required();
    skill_cmd->add_option("--condition", skill_conditions, "plain, expert, concept or all")->delimiter(',');
    skill_cmd->add_option("--llm", llm_spec)->required();
    skill_cmd->add_option("--engine", engine_spec, "needed for the expert condition");
    skill_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
    skill_cmd->add_option("--method", method_name, "row label (default: the --llm value)");
    skill_cmd->add_flag("--exclude-gateway-errors", exclude_gateway);
    skill_cmd->add_option("--out", skill_out, "summary CSV");
    skill_cmd->add_option("--jsonl", skill_jsonl, "per-puzzle results");

    // report
    auto* report = app.add_subcommand("report", "statistics over score files");
    report->require_subcommand(1);
    auto* correlate = report->add_subcommand("correlate", "correlation of two score lists");
    std::string file_a, file_b, report_out;
    std::vector<std::string> metrics{"pearson", "kendall"};
    correlate->add_option("--a", file_a, "one number per line")->required();
    correlate->add_option("--b", file_b)->required();
    correlate->add_option("--metrics", metrics)->delimiter(',')->check(CLI::IsMember({"pearson", "kendall"}));
    correlate->add_option("--out", report_out);
    auto* kappa = report->add_subcommand("kappa", "Fleiss' kappa of a category-count matrix");
    std::string ratings;
    kappa->add_option("--ratings", ratings, "CSV: one row per item, one count column per category")->required();
    kappa->add_option("--out", report_out);

    // serve
    auto* serve = app.add_subcommand("serve", "HTTP API");
    std::string host = "127.0.0.1";
    int port = 8080, session_ttl = 30;
    serve->add_option("--host", host);
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--llm", llm_spec)->required();
    serve->add_option("--engine", engine_spec);
    serve->add_option("--depth", depth)->check(CLI::PositiveNumber);
    serve->add_option("--vectors", vectors_spec);
    serve->add_option("--activations", activations_spec);
    serve->add_option("--session-ttl", session_ttl, "minutes")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(e.what(), "usage", 2);
    }

    // flags beat the environment, which beats the config file
    bool cache_flag = false;
    for (int i = 1; i < argc; ++i)
        if (std::strncmp(argv[i], "--cache-dir", 11) == 0) cache_flag = true;
    if (!cache_flag) {
        if (const char* env = std::getenv("CCC_CACHE_DIR"); env && *env) g.cache_dir = env;
    }
    if (!g.workspace.empty()) {
        io::Workspace ws(g.workspace);
        ws.create();
        if (g.cache_dir.empty()) g.cache_dir = ws.path("cache");
    }

    try {
        if (*build) {
            Run run(g, "concepts build-dataset");
            run.config(*build);
            const auto c = concepts::parse_concept(concept_name);
            if (!c) throw UsageError("unknown concept '" + concept_name + "'");
            if (positions.rfind("synthetic:", 0) != 0) run.input(positions);
            const auto fens = position_fens(positions, position_limit);
            std::unique_ptr<concepts::Labeler> labeler;
            if (labeler_spec == "analytic") {
                labeler = std::make_unique<concepts::AnalyticLabeler>();
            } else if (labeler_spec.rfind("scores:", 0) == 0) {
                run.input(labeler_spec.substr(7));
                labeler = std::make_unique<concepts::ScoreFileLabeler>(
                    concepts::ScoreFileLabeler::load(labeler_spec.substr(7), analytic_fallback));
            } else {
                throw UsageError("unknown labeler '" + labeler_spec + "' (analytic or scores:FILE)");
            }
            const auto ds = concepts::build_concept_dataset(fens, *c, *labeler, fraction);
            std::ostringstream out;
            concepts::write_dataset(out, ds);
            run.emit(dataset_out, out.str());
            std::cerr << concepts::concept_display_name(*c) << ": " << ds.positives.size() << " positive, "
                      << ds.negatives.size() << " negative\n";
            run.finish();
        } else if (*train) {
            Run run(g, "concepts train");
            run.config(*train);
            const auto provider = activation_provider(train_activations);
            if (train_activations.rfind("file:", 0) == 0) run.input(train_activations.substr(5));
            if (standardize != "auto") hyper.standardize = standardize == "on";
            std::vector<concepts::ConceptVector> vectors;
            for (const auto& path : train_datasets) {
                run.input(path);
                vectors.push_back(concepts::train_concept_vector(concepts::load_dataset(path), *provider, hyper));
            }
            std::ostringstream out;
            concepts::write_vectors(out, vectors);
            run.emit(vectors_out, out.str());
            run.finish();
        } else if (*ceval) {
            Run run(g, "concepts eval");
            run.config(*ceval);
            run.input(eval_vectors);
            const auto provider = activation_provider(eval_activations);
            const auto vectors = concepts::load_vectors(eval_vectors);
            std::map<concepts::ConceptName, concepts::ConceptDataset> tests;
            for (const auto& path : eval_tests) {
                run.input(path);
                auto ds = concepts::load_dataset(path);
                tests[ds.name] = std::move(ds);
            }
            std::string csv = "Concepts,Accuracy,Precision,Recall\n";
            for (const auto& v : vectors) {
                const auto it = tests.find(v.name);
                if (it == tests.end())
                    throw UsageError("no --test dataset for concept " +
                                     std::string(concepts::concept_display_name(v.name)));
                const auto m = concepts::evaluate_concept_vector(v, it->second, *provider);
                csv += io::csv_row({std::string(concepts::concept_display_name(v.name)), fixed(m.accuracy, 2),
                                    fixed(m.precision, 2), fixed(m.recall, 2)}) +
                       "\n";
            }
            run.emit(eval_out, csv);
            run.finish();
        } else if (*comment) {
            Run run(g, "comment");
            run.config(*comment);
            service::Pipeline pipe;
            pipe.llm = make_client(g, llm_spec);
            if (!engine_spec.empty()) {
                if (engine_spec.rfind("script:", 0) == 0) run.input(engine_spec.substr(7));
                pipe.engine = service::open_engine(engine_spec, depth);
            }
            run.input(mock_script(llm_spec));
            if (!vectors_spec.empty()) {
                if (vectors_spec != "oracle") run.input(vectors_spec);
                pipe.concepts = service::load_concept_model(vectors_spec, activations_spec);
            }
            service::AnalyzeRequest req;
            req.fen = fen;
            req.move_san = move;
            req.condition = commentary::parse_condition(condition);
            req.move_number = move_number;
            const auto r = service::analyze(pipe, req, false);
            auto report_json = service::analyze_json(r);
            report_json.erase("session_id");
            report_json["engine_id"] = pipe.engine ? pipe.engine->id() : "";
            report_json["prompt_hash"] = r.commentary.prompt_hash;
            report_json["words"] = r.commentary.words;
            report_json["delimiter_found"] = r.commentary.delimiter_found;
            std::cout << r.commentary.text << "\n";
            if (!comment_out.empty()) run.emit(comment_out, report_json.dump(2));
            run.finish();
        } else if (*evaluate) {
            Run run(g, "evaluate");
            run.config(*evaluate);
            run.input(eval_input);
            const auto dims = eval::parse_dimensions(dims_spec);
            const auto samples = read_eval_input(eval_input, default_method, dims);
            run.input(mock_script(llm_spec));
            service::Pipeline pipe;
            pipe.llm = make_client(g, llm_spec);
            if (!engine_spec.empty()) {
                if (engine_spec.rfind("script:", 0) == 0) run.input(engine_spec.substr(7));
                pipe.engine = service::open_engine(engine_spec, depth);
            }
            std::vector<std::string> methods;
            std::map<std::string, std::map<eval::Dimension, std::pair<double, int>>> sums;
            std::string jsonl;
            std::size_t failures = 0;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const auto& s = samples[i];
                if (!sums.count(s.method)) methods.push_back(s.method);
                auto& acc = sums[s.method];
                const auto scores = service::evaluate(pipe, s.req);
                for (const auto& d : scores.dims) {
                    if (!d.requested) continue;
                    if (d.score) {
                        acc[d.dimension].first += d.score->rescaled;
                        acc[d.dimension].second += 1;
                    } else {
                        ++failures;
                    }
                }
                nlohmann::ordered_json line;
                line["index"] = i;
                line["method"] = s.method;
                line["fen"] = s.req.fen;
                line["move_san"] = s.req.move_san;
                line["scores"] = service::eval_json(scores);
                jsonl += line.dump() + "\n";
            }
            std::vector<std::string> head{"Comment generation methods"};
            for (auto d : dims) head.push_back(dimension_title(d));
            std::string csv = io::csv_row(head) + "\n";
            for (const auto& m : methods) {
                std::vector<std::string> row{m};
                for (auto d : dims) {
                    const auto it = sums[m].find(d);
                    row.push_back(it == sums[m].end() || it->second.second == 0
                                      ? ""
                                      : fixed(it->second.first / it->second.second, 2));
                }
                csv += io::csv_row(row) + "\n";
            }
            run.emit(eval_table_out, csv);
            if (!eval_jsonl.empty()) run.emit(eval_jsonl, jsonl);
            if (failures) std::cerr << failures << " dimension score(s) failed; see the per-sample report\n";
            run.finish();
        } else if (*skill_cmd) {
            Run run(g, "skill");
            run.config(*skill_cmd);
            run.input(puzzles_path);
            const auto set = skill::load_puzzles_file(puzzles_path);
            for (const auto& d : set.dropped)
                std::cerr << "dropped puzzle " << (d.id.empty() ? "?" : d.id) << " (line " << d.line
                          << "): " << d.reason << "\n";
            if (set.puzzles.empty()) throw DataError("no usable puzzles in " + puzzles_path);
            std::vector<skill::SkillCondition> conds;
            for (const auto& c : skill_conditions) {
                if (c == "all") {
                    conds.assign(skill::kSkillConditions.begin(), skill::kSkillConditions.end());
                    break;
                }
                conds.push_back(skill::parse_skill_condition(c));
            }
            run.input(mock_script(llm_spec));
            if (engine_spec.empty() &&
                std::find(conds.begin(), conds.end(), skill::SkillCondition::expert) != conds.end())
                throw UsageError("the expert condition needs --engine");
            auto client = make_client(g, llm_spec);
            std::unique_ptr<engine::Engine> eng;
            if (!engine_spec.empty()) {
                if (engine_spec.rfind("script:", 0) == 0) run.input(engine_spec.substr(7));
                eng = service::open_engine(engine_spec, depth);
            }
            skill::SkillOptions opts;
            opts.exclude_gateway_errors = exclude_gateway;
            opts.workers = g.parallelism;
            skill::SkillTableRow row{method_name.empty() ? llm_spec : method_name, {}};
            std::ostringstream jsonl;
            for (auto c : conds) {
                row.reports.push_back(skill::run_skill_eval(*client, set.puzzles, c, eng.get(), opts));
                const auto& r = row.reports.back();
                skill::write_attempts_jsonl(jsonl, r);
                std::cerr << skill::skill_condition_name(c) << ": accuracy " << fixed(r.accuracy(), 3) << " ("
                          << r.count(skill::AnswerCategory::correct) << "/" << r.attempted() << ", wrong "
                          << r.count(skill::AnswerCategory::wrong_move) << ", illegal "
                          << r.count(skill::AnswerCategory::illegal_or_unparseable) << ", gateway "
                          << r.count(skill::AnswerCategory::gateway_error) << ")\n";
            }
            run.emit(skill_out, skill::skill_table_csv({row}));
            if (!skill_jsonl.empty()) run.emit(skill_jsonl, jsonl.str());
            run.finish();
        } else if (*correlate) {
            Run run(g, "report correlate");
            run.config(*correlate);
            run.input(file_a);
            run.input(file_b);
            const auto a = read_numbers(file_a), b = read_numbers(file_b);
            std::string csv = "metric,value\n";
            for (const auto& m : metrics)
                csv += m + "," + fixed(m == "pearson" ? eval::pearson(a, b) : eval::kendall_tau(a, b), 6) + "\n";
            run.emit(report_out, csv);
            run.finish();
        } else if (*kappa) {
            Run run(g, "report kappa");
            run.config(*kappa);
            run.input(ratings);
            run.emit(report_out, "metric,value\nfleiss_kappa," + fixed(eval::fleiss_kappa(read_ratings(ratings)), 6) + "\n");
            run.finish();
        } else if (*serve) {
            service::Pipeline pipe;
            pipe.llm = make_client(g, llm_spec);
            if (!engine_spec.empty()) pipe.engine = service::open_engine(engine_spec, depth);
            if (!vectors_spec.empty()) pipe.concepts = service::load_concept_model(vectors_spec, activations_spec);
            pipe.sessions = std::make_shared<commentary::SessionStore>(std::chrono::minutes(session_ttl));
            service::ApiServer server(pipe);

            sigset_t stop_signals;
            sigemptyset(&stop_signals);
            sigaddset(&stop_signals, SIGINT);
            sigaddset(&stop_signals, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
            const int bound = server.bind(host, port);
            std::thread waiter([&] {
                int sig = 0;
                sigwait(&stop_signals, &sig);
                server.stop();
            });
            std::cerr << "listening on http://" << host << ":" << bound << std::endl;
            server.run();
            // run() can also end without a signal; wake the waiter
            pthread_kill(waiter.native_handle(), SIGTERM);
            waiter.join();
        }
    } catch (const Error& e) {
        return fail(e.what(), category_name(e.category()), exit_code(e.category()));
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(e.what(), "data", 3);
    }
    return 0;
}
