#pragma once

#include <string>

#include <httplib.h>

#include "ccc/service/pipeline.hpp"

namespace ccc::service {

/// JSON API over a Pipeline:
///   GET  /api/health
///   POST /api/analyze              {fen, move_san[, condition, move_number]}
///   POST /api/session/{id}/ask     {question}
///   POST /api/evaluate             {fen, move_san, comment[, move_number]}
/// Failures answer {"error", "category", "detail"} with 400 for bad input,
/// 404 for an unknown session and 502 for engine or LLM failures.
class ApiServer {
public:
    explicit ApiServer(Pipeline& pipe);
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port; throws UsageError
    /// when binding fails.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    void run();
    void stop();
    bool running() const { return server_.is_running(); }

    httplib::Server& http() { return server_; }

private:
    void routes();

    Pipeline& pipe_;
    httplib::Server server_;
};

}  // namespace ccc::service
