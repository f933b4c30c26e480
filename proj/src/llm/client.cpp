#include "ccc/llm/client.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace ccc::llm {

namespace fs = std::filesystem;

CompletionCache::CompletionCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path CompletionCache::path_for(const std::string& key) const { return dir_ / key.substr(0, 2) / (key + ".json"); }

std::optional<Completion> CompletionCache::get(const std::string& key) const {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    try {
        nlohmann::json j;
        in >> j;
        return completion_from_json(j);
    } catch (const std::exception&) {
        // A torn or foreign file is a miss; the next put replaces it.
        return std::nullopt;
    }
}

void CompletionCache::put(const std::string& key, const Completion& c) const {
    const auto target = path_for(key);
    fs::create_directories(target.parent_path());
    std::ostringstream suffix;
    suffix << ".tmp." << std::this_thread::get_id() << "." << std::random_device{}();
    const fs::path tmp = target.string() + suffix.str();
    {
        std::ofstream out(tmp);
        if (!out) throw UpstreamError("cannot write cache file " + tmp.string());
        out << completion_json(c).dump() << '\n';
    }
    fs::rename(tmp, target);
}

Client::Client(std::shared_ptr<Transport> transport, ClientOptions opts)
    : transport_(std::move(transport)), opts_(std::move(opts)), slots_(std::max(1, opts_.parallelism)) {
    if (!transport_) throw UsageError("LLM client needs a transport");
    if (opts_.parallelism < 1) throw UsageError("parallelism must be at least 1");
    if (opts_.cache_dir) cache_.emplace(*opts_.cache_dir);
    if (!opts_.sleep) opts_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

Completion Client::complete(ChatRequest req) {
    if (req.model_id.empty()) req.model_id = transport_->default_model();
    req.validate();
    const std::string key = cache_key(req);
    if (cache_) {
        if (auto hit = cache_->get(key)) {
            ++hits_;
            return *hit;
        }
    }

    slots_.acquire();
    struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
    } release{slots_};

    auto backoff = opts_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
        try {
            ++calls_;
            Completion c = transport_->send(req);
            if (cache_) cache_->put(key, c);
            return c;
        } catch (const TransientError&) {
            if (attempt >= opts_.max_retries) throw;
            opts_.sleep(backoff);
            backoff *= 2;
        }
    }
}

}  // namespace ccc::llm
