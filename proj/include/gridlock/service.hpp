#pragma once

#include "gridlock/io.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace gridlock {

struct Session {
    std::mutex mutex;
    GameState state;
    // Node budget for engine replies; unlimited on small boards.
    std::optional<int64_t> engine_budget;

    explicit Session(GameState s, std::optional<int64_t> budget) : state{std::move(s)}, engine_budget{budget} { }
};

// Games keyed by opaque id. Lookups take the store lock; mutation of one game
// takes that session's lock.
class SessionStore {
public:
    std::pair<std::string, std::shared_ptr<Session>> create(GameState state, std::optional<int64_t> budget);
    [[nodiscard]] std::shared_ptr<Session> find(const std::string &id) const;
    [[nodiscard]] size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    uint64_t counter_ = 0;
};

struct ApiRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    json body;
};

struct ServiceConfig {
    std::filesystem::path cache_dir;
    // Boards up to this side get exact engine replies; larger ones use the budget.
    int exact_engine_limit = 5;
    int64_t engine_budget = 2'000'000;
    // Verdicts for the response are attempted within this budget.
    int64_t verdict_budget = 2'000'000;
    int max_game_side = 11;
};

// Request routing independent of the transport.
class Api {
public:
    explicit Api(ServiceConfig config);

    [[nodiscard]] ApiResponse handle(const ApiRequest &request);
    [[nodiscard]] SessionStore &sessions() { return sessions_; }

private:
    ApiResponse solutions(const ApiRequest &request);
    ApiResponse bounds(const ApiRequest &request);
    ApiResponse new_game(const ApiRequest &request);
    ApiResponse move(const std::string &id, const ApiRequest &request);
    ApiResponse game(const std::string &id);
    ApiResponse dominated(const ApiRequest &request);

    json game_view(const std::string &id, const GameState &state) const;
    std::optional<int64_t> budget_for(BoardSize board) const;

    ServiceConfig config_;
    ResultsCache cache_;
    SessionStore sessions_;
};

// Parses "x,y;x,y;..." as used by /api/dominated. Throws FormatError.
[[nodiscard]] std::vector<GridPoint> parse_point_list(const std::string &text);

// httplib transport for an Api. Serves static_dir at / when non-empty.
class HttpServer {
public:
    HttpServer(Api &api, std::filesystem::path static_dir = {});
    ~HttpServer();

    // Returns the bound port, or -1. Port 0 picks a free one.
    int bind(const std::string &host, int port);
    // Blocks until stop() is called.
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace gridlock
