#include "ccc/service/server.hpp"

#include "ccc/chess/notation.hpp"
#include "ccc/error.hpp"

namespace ccc::service {

namespace {

using nlohmann::json;

struct HttpError {
    int status;
    std::string reason;
    std::string category;
    std::string detail;
};

void reply(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, const HttpError& e) {
    nlohmann::ordered_json body;
    body["error"] = e.reason;
    body["category"] = e.category;
    body["detail"] = e.detail;
    reply(res, e.status, body);
}

json parse_body(const httplib::Request& req) {
    try {
        auto j = json::parse(req.body);
        if (!j.is_object()) throw HttpError{400, "malformed JSON", "usage", "request body must be an object"};
        return j;
    } catch (const json::exception& e) {
        throw HttpError{400, "malformed JSON", "usage", e.what()};
    }
}

std::string field(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_string())
        throw HttpError{400, std::string("missing field ") + name, "usage", std::string(name) + " must be a string"};
    return j[name].get<std::string>();
}

int move_number(const json& j) {
    if (!j.contains("move_number")) return 0;
    if (!j["move_number"].is_number_integer() || j["move_number"].get<int>() < 0)
        throw HttpError{400, "invalid move_number", "usage", "move_number must be a non-negative integer"};
    return j["move_number"].get<int>();
}

/// Runs `fn`, translating library errors into status codes.
template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const HttpError& e) {
        reply_error(res, e);
    } catch (const chess::FenError& e) {
        reply_error(res, {400, "invalid FEN", "data", e.what()});
    } catch (const chess::SanError& e) {
        const char* reason = e.kind() == chess::SanErrorKind::syntax      ? "invalid SAN"
                             : e.kind() == chess::SanErrorKind::ambiguous ? "ambiguous move"
                                                                          : "illegal move";
        reply_error(res, {400, reason, "data", e.what()});
    } catch (const commentary::SessionNotFound& e) {
        reply_error(res, {404, "unknown session", "usage", e.what()});
    } catch (const UpstreamError& e) {
        reply_error(res, {502, "upstream failure", "upstream", e.what()});
    } catch (const Error& e) {
        reply_error(res, {400, e.category() == ErrorCategory::usage ? "bad request" : "invalid input",
                          category_name(e.category()), e.what()});
    } catch (const std::exception& e) {
        reply_error(res, {500, "internal error", "internal", e.what()});
    }
}

}  // namespace

ApiServer::ApiServer(Pipeline& pipe) : pipe_(pipe) { routes(); }

void ApiServer::routes() {
    server_.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
        reply(res, 200, {{"status", "ok"}});
    });

    server_.Post("/api/analyze", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto j = parse_body(req);
            AnalyzeRequest a;
            a.fen = field(j, "fen");
            a.move_san = field(j, "move_san");
            if (j.contains("condition")) a.condition = commentary::parse_condition(field(j, "condition"));
            a.move_number = move_number(j);
            reply(res, 200, analyze_json(analyze(pipe_, a)));
        });
    });

    server_.Post(R"(/api/session/([0-9a-f]+)/ask)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto j = parse_body(req);
            const auto question = field(j, "question");
            if (question.find_first_not_of(" \t\r\n") == std::string::npos)
                throw HttpError{400, "empty question", "usage", "question must not be blank"};
            if (!pipe_.llm) throw UsageError("no LLM configured");
            reply(res, 200, {{"answer", pipe_.sessions->ask(*pipe_.llm, req.matches[1].str(), question)}});
        });
    });

    server_.Post("/api/evaluate", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto j = parse_body(req);
            EvaluateRequest e;
            e.fen = field(j, "fen");
            e.move_san = field(j, "move_san");
            e.comment = field(j, "comment");
            e.move_number = move_number(j);
            const auto scores = evaluate(pipe_, e);
            const bool any = std::any_of(scores.dims.begin(), scores.dims.end(),
                                         [](const eval::DimensionResult& d) { return d.score.has_value(); });
            if (!any) {
                nlohmann::ordered_json body;
                body["error"] = "upstream failure";
                body["category"] = "upstream";
                body["detail"] = scores.dims.front().error;
                body["scores"] = eval_json(scores);
                reply(res, 502, body);
                return;
            }
            reply(res, 200, eval_json(scores));
        });
    });

    // anything else under /api is a 404 with the same error shape
    server_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.status == 404 && res.body.empty()) reply_error(res, {404, "not found", "usage", "no such endpoint"});
    });
}

int ApiServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound <= 0) throw UsageError("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void ApiServer::run() { server_.listen_after_bind(); }

void ApiServer::stop() { server_.stop(); }

}  // namespace ccc::service
