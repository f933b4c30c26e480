#include "ccc/concepts/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace ccc::concepts {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

ConceptName concept_field(const json& j) {
    const auto name = j.at("concept").get<std::string>();
    const auto c = parse_concept(name);
    if (!c) throw DataError("unknown concept \"" + name + "\"");
    return *c;
}

// Runs fn(parsed_line, line_number) over non-blank lines, rewrapping JSON
// errors as DataError with a location.
template <class Fn>
void for_each_record(std::istream& in, const char* what, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        try {
            fn(json::parse(line), lineno);
        } catch (const json::exception& e) {
            throw DataError(std::string(what) + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

}  // namespace

void write_vectors(std::ostream& out, const std::vector<ConceptVector>& vectors) {
    for (const auto& v : vectors) {
        ojson meta;
        meta["seed"] = v.meta.seed;
        meta["epochs"] = v.meta.epochs;
        meta["lambda"] = v.meta.lambda;
        meta["n_train"] = v.meta.n_train;
        meta["provider"] = v.meta.provider;
        if (!v.meta.mean.empty()) {
            meta["mean"] = v.meta.mean;
            meta["scale"] = v.meta.scale;
        }
        ojson j;
        j["concept"] = concept_display_name(v.name);
        j["weights"] = v.weights;
        j["bias"] = v.bias;
        j["training_meta"] = std::move(meta);
        out << j.dump() << '\n';
    }
}

std::vector<ConceptVector> read_vectors(std::istream& in) {
    std::vector<ConceptVector> out;
    for_each_record(in, "vector file", [&](const json& j, std::size_t lineno) {
        ConceptVector v;
        v.name = concept_field(j);
        v.weights = j.at("weights").get<std::vector<double>>();
        v.bias = j.at("bias").get<double>();
        const auto& m = j.at("training_meta");
        v.meta.seed = m.value("seed", std::uint64_t{0});
        v.meta.epochs = m.value("epochs", 0);
        v.meta.lambda = m.value("lambda", 0.0);
        v.meta.n_train = m.value("n_train", std::size_t{0});
        v.meta.provider = m.value("provider", std::string());
        if (m.contains("mean")) {
            v.meta.mean = m.at("mean").get<std::vector<double>>();
            v.meta.scale = m.at("scale").get<std::vector<double>>();
            if (v.meta.mean.size() != v.weights.size() || v.meta.scale.size() != v.weights.size())
                throw DataError("vector file line " + std::to_string(lineno) + ": standardization size mismatch");
        }
        if (v.weights.empty()) throw DataError("vector file line " + std::to_string(lineno) + ": empty weights");
        out.push_back(std::move(v));
    });
    return out;
}

void save_vectors(const std::string& path, const std::vector<ConceptVector>& vectors) {
    auto out = open_out(path);
    write_vectors(out, vectors);
}

std::vector<ConceptVector> load_vectors(const std::string& path) {
    auto in = open_in(path);
    return read_vectors(in);
}

void write_dataset(std::ostream& out, const ConceptDataset& ds) {
    ojson header;
    header["concept"] = concept_display_name(ds.name);
    header["positives"] = ds.positives.size();
    header["negatives"] = ds.negatives.size();
    out << header.dump() << '\n';
    auto emit = [&](const std::string& fen, int label) {
        ojson j;
        j["fen"] = fen;
        j["label"] = label;
        if (auto it = ds.source_scores.find(fen); it != ds.source_scores.end()) j["score"] = it->second;
        out << j.dump() << '\n';
    };
    for (const auto& fen : ds.positives) emit(fen, 1);
    for (const auto& fen : ds.negatives) emit(fen, -1);
}

ConceptDataset read_dataset(std::istream& in) {
    ConceptDataset ds;
    bool have_header = false;
    for_each_record(in, "dataset", [&](const json& j, std::size_t lineno) {
        if (!have_header) {
            ds.name = concept_field(j);
            have_header = true;
            return;
        }
        const auto fen = j.at("fen").get<std::string>();
        const int label = j.at("label").get<int>();
        if (label == 1) ds.positives.push_back(fen);
        else if (label == -1) ds.negatives.push_back(fen);
        else throw DataError("dataset line " + std::to_string(lineno) + ": label must be 1 or -1");
        if (j.contains("score")) ds.source_scores[fen] = j.at("score").get<double>();
    });
    if (!have_header) throw DataError("dataset file is empty");
    return ds;
}

void save_dataset(const std::string& path, const ConceptDataset& ds) {
    auto out = open_out(path);
    write_dataset(out, ds);
}

ConceptDataset load_dataset(const std::string& path) {
    auto in = open_in(path);
    return read_dataset(in);
}

void write_activations(std::ostream& out, const ActivationProvider& provider,
                       const std::vector<chess::Position>& positions) {
    ojson header;
    header["dimension"] = provider.dimension();
    header["provider"] = provider.id();
    header["perspective"] = provider.mover_relative() ? "mover" : "white";
    out << header.dump() << '\n';
    for (const auto& p : positions) {
        ojson j;
        j["fen"] = chess::fen_key(p);
        j["activation"] = provider.activation(p);
        out << j.dump() << '\n';
    }
}

FileProvider read_activations(std::istream& in) {
    std::optional<FileProvider> provider;
    for_each_record(in, "activation file", [&](const json& j, std::size_t lineno) {
        if (!provider) {
            const auto perspective = j.value("perspective", std::string("mover"));
            if (perspective != "mover" && perspective != "white")
                throw DataError("activation file: perspective must be \"mover\" or \"white\"");
            provider.emplace(j.at("provider").get<std::string>(), j.at("dimension").get<std::size_t>(),
                             perspective == "mover");
            return;
        }
        try {
            provider->insert(j.at("fen").get<std::string>(), j.at("activation").get<std::vector<double>>());
        } catch (const DataError& e) {
            throw DataError("activation file line " + std::to_string(lineno) + ": " + e.what());
        }
    });
    if (!provider) throw DataError("activation file is empty");
    return std::move(*provider);
}

ScoreFileLabeler read_scores(std::istream& in, bool analytic_fallback) {
    ScoreFileLabeler out(analytic_fallback);
    for_each_record(in, "score file", [&](const json& j, std::size_t) {
        out.insert(j.at("fen").get<std::string>(), concept_field(j), j.at("score").get<double>());
    });
    return out;
}

}  // namespace ccc::concepts
