#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>

#include "ccc/llm/transport.hpp"

namespace ccc::llm {

/// Content-addressed completion store: <dir>/<first 2 hex>/<key>.json.
class CompletionCache {
public:
    explicit CompletionCache(std::filesystem::path dir);
    std::optional<Completion> get(const std::string& key) const;
    /// Atomic per file (write to a temp name, then rename); last write wins.
    void put(const std::string& key, const Completion& c) const;
    std::filesystem::path path_for(const std::string& key) const;

private:
    std::filesystem::path dir_;
};

struct ClientOptions {
    std::optional<std::filesystem::path> cache_dir;
    int parallelism = 4;
    int max_retries = 3;
    std::chrono::milliseconds initial_backoff{1000};
    std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleep_for
};

/// Transport front: cache, bounded parallelism, retries on transient errors.
class Client {
public:
    explicit Client(std::shared_ptr<Transport> transport, ClientOptions opts = {});

    Completion complete(ChatRequest req);

    std::uint64_t transport_calls() const { return calls_.load(); }
    std::uint64_t cache_hits() const { return hits_.load(); }
    Transport& transport() { return *transport_; }

private:
    std::shared_ptr<Transport> transport_;
    ClientOptions opts_;
    std::optional<CompletionCache> cache_;
    std::counting_semaphore<> slots_;
    std::atomic<std::uint64_t> calls_{0};
    std::atomic<std::uint64_t> hits_{0};
};

}  // namespace ccc::llm
