#include "gridlock/service.hpp"

#include <httplib.h>

#include <random>
#include <sstream>

namespace gridlock {

std::pair<std::string, std::shared_ptr<Session>> SessionStore::create(GameState state,
                                                                      std::optional<int64_t> budget) {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    auto session = std::make_shared<Session>(std::move(state), budget);
    std::lock_guard lock(mutex_);
    std::string id;
    do {
        std::ostringstream out;
        out << std::hex << ++counter_ << '-' << rng();
        id = out.str();
    } while (sessions_.count(id));
    sessions_.emplace(id, session);
    return {id, session};
}

std::shared_ptr<Session> SessionStore::find(const std::string &id) const {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::vector<GridPoint> parse_point_list(const std::string &text) {
    std::vector<GridPoint> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty())
            continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw FormatError("point '" + item + "' is not x,y");
        try {
            size_t used_x = 0;
            size_t used_y = 0;
            const int x = std::stoi(item.substr(0, comma), &used_x);
            const int y = std::stoi(item.substr(comma + 1), &used_y);
            if (used_x != comma || used_y != item.size() - comma - 1)
                throw FormatError("point '" + item + "' is not x,y");
            out.push_back({x, y});
        } catch (const std::logic_error &) {
            throw FormatError("point '" + item + "' is not x,y");
        }
    }
    return out;
}

namespace {

ApiResponse error(int status, const std::string &message) { return {status, {{"error", message}}}; }

int int_param(const ApiRequest &request, const std::string &name) {
    const auto it = request.query.find(name);
    if (it == request.query.end())
        throw FormatError("missing query parameter '" + name + "'");
    try {
        size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size())
            throw FormatError("");
        return v;
    } catch (const std::logic_error &) {
        throw FormatError("query parameter '" + name + "' must be an integer");
    }
}

json point_array(const std::vector<GridPoint> &points) {
    json out = json::array();
    for (GridPoint p : points)
        out.push_back(to_json(p));
    return out;
}

json parse_body(const ApiRequest &request) {
    try {
        return json::parse(request.body);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

Api::Api(ServiceConfig config) : config_{std::move(config)}, cache_{config_.cache_dir} { }

ApiResponse Api::handle(const ApiRequest &request) {
    const std::string &path = request.path;
    const std::string game_prefix = "/api/game/";
    try {
        if (request.method == "GET" && path == "/api/solutions")
            return solutions(request);
        if (request.method == "GET" && path == "/api/bounds")
            return bounds(request);
        if (request.method == "GET" && path == "/api/dominated")
            return dominated(request);
        if (request.method == "POST" && path == "/api/game")
            return new_game(request);
        if (path.rfind(game_prefix, 0) == 0) {
            const std::string rest = path.substr(game_prefix.size());
            const auto slash = rest.find('/');
            if (request.method == "GET" && slash == std::string::npos)
                return game(rest);
            if (request.method == "POST" && slash != std::string::npos && rest.substr(slash) == "/move")
                return move(rest.substr(0, slash), request);
        }
        return error(404, "no route for " + request.method + " " + path);
    } catch (const FormatError &e) {
        return error(400, e.what());
    } catch (const std::invalid_argument &e) {
        return error(400, e.what());
    } catch (const std::exception &e) {
        return error(500, e.what());
    }
}

ApiResponse Api::solutions(const ApiRequest &request) {
    const int n = int_param(request, "n");
    const auto mode_it = request.query.find("mode");
    const Mode mode = parse_mode(mode_it == request.query.end() ? "independent" : mode_it->second);
    const auto record = cache_.lookup(n, mode, 0);
    if (!record) {
        ApiResponse r = error(404, "no cached solutions for this board");
        r.body["hint"] = "gridlock search --n " + std::to_string(n) + " --mode " + to_string(mode) + " --all --save";
        return r;
    }
    json body = to_json(*record);
    json sols = json::array();
    for (const auto &s : cache_.solutions(n, mode, 0))
        sols.push_back(to_json(s));
    body["solutions"] = sols;
    return {200, body};
}

ApiResponse Api::bounds(const ApiRequest &request) {
    const int n = int_param(request, "n");
    if (n < 2)
        throw FormatError("bounds need n >= 2");
    json body = to_json(bound_report(n));
    json exact = json::object();
    for (Mode mode : {Mode::general, Mode::independent}) {
        const auto r = cache_.lookup(n, mode, 0);
        exact[to_string(mode)] = r && r->exhausted && r->minimum ? json(*r->minimum) : json(nullptr);
    }
    body["exact"] = exact;
    return {200, body};
}

ApiResponse Api::dominated(const ApiRequest &request) {
    const int n = int_param(request, "n");
    if (n < 1 || n > 256)
        throw FormatError("n must lie in [1, 256]");
    const BoardSize board(n);
    PointSet set(board);
    const auto it = request.query.find("points");
    for (GridPoint p : parse_point_list(it == request.query.end() ? "" : it->second)) {
        if (!set.region().on_board(p))
            throw FormatError("point off the board");
        set.insert(p);
    }
    const auto mask = dominated_mask(board, set);
    return {200,
            {{"n", n},
             {"points", point_array(set.points())},
             {"dominated", point_array(mask.points())},
             {"count", mask.size()},
             {"dominating", mask.covers_board()},
             {"generalPosition", is_general_position(set)}}};
}

std::optional<int64_t> Api::budget_for(BoardSize board) const {
    if (board.n() <= config_.exact_engine_limit)
        return std::nullopt;
    return config_.engine_budget;
}

json Api::game_view(const std::string &id, const GameState &state) const {
    const auto moves = legal_moves(state);
    const bool over = moves.empty();
    return {{"id", id},
            {"state", to_json(state)},
            {"legalMoves", point_array(moves)},
            {"gameOver", over},
            {"winner", over ? json(to_string(other(state.to_move()))) : json(nullptr)}};
}

ApiResponse Api::new_game(const ApiRequest &request) {
    const json body = parse_body(request);
    if (!body.is_object() || !body.contains("n") || !body.at("n").is_number_integer())
        throw FormatError("body must be {\"n\": int}");
    const int n = body.at("n").get<int>();
    if (n < 1 || n > config_.max_game_side)
        throw FormatError("n must lie in [1, " + std::to_string(config_.max_game_side) + "]");
    GameState state{BoardSize(n)};
    const auto budget = budget_for(state.board());
    json engine = nullptr;
    bool exact = true;
    if (body.contains("engineFirst") && body.at("engineFirst").is_boolean() && body.at("engineFirst").get<bool>()) {
        if (const auto m = engine_move(state, budget)) {
            state = state.play(m->move);
            engine = to_json(m->move);
            exact = m->exact;
        }
    }
    auto [id, session] = sessions_.create(state, budget);
    json view = game_view(id, state);
    view["engineMove"] = engine;
    view["engineExact"] = exact;
    return {200, view};
}

ApiResponse Api::game(const std::string &id) {
    const auto session = sessions_.find(id);
    if (!session)
        return error(404, "unknown game id");
    std::lock_guard lock(session->mutex);
    return {200, game_view(id, session->state)};
}

ApiResponse Api::move(const std::string &id, const ApiRequest &request) {
    const json body = parse_body(request);
    if (!body.is_object() || !body.contains("x") || !body.contains("y") || !body.at("x").is_number_integer() ||
        !body.at("y").is_number_integer())
        throw FormatError("body must be {\"x\": int, \"y\": int}");
    const GridPoint p{body.at("x").get<int>(), body.at("y").get<int>()};
    const auto session = sessions_.find(id);
    if (!session)
        return error(404, "unknown game id");

    std::lock_guard lock(session->mutex);
    GameState state = session->state;
    const auto reason = state.illegal_reason(p);
    if (!reason.empty()) {
        ApiResponse r = error(409, "illegal move");
        r.body["reason"] = reason;
        if (const auto pair = state.blocking_pair(p); pair && reason == "collinear")
            r.body["blocking"] = point_array({pair->first, pair->second});
        return r;
    }
    state = state.play(p);
    json engine = nullptr;
    bool exact = true;
    if (const auto m = engine_move(state, session->engine_budget)) {
        state = state.play(m->move);
        engine = to_json(m->move);
        exact = m->exact;
    }
    session->state = state;

    json view = game_view(id, state);
    view["engineMove"] = engine;
    view["engineExact"] = exact;
    if (view["gameOver"].get<bool>()) {
        view["verdictIfKnown"] = view["winner"];
    } else {
        const auto verdict = solve(state, SolveOptions{config_.verdict_budget, true});
        view["verdictIfKnown"] = verdict.winner ? json(to_string(*verdict.winner)) : json(nullptr);
    }
    return {200, view};
}

struct HttpServer::Impl {
    Api &api;
    httplib::Server server;

    explicit Impl(Api &a) : api{a} { }

    void dispatch(const httplib::Request &req, httplib::Response &res) {
        ApiRequest request{req.method, req.path, {}, req.body};
        for (const auto &[key, value] : req.params)
            request.query.emplace(key, value);
        const ApiResponse response = api.handle(request);
        res.status = response.status;
        res.set_content(response.body.dump(), "application/json");
    }
};

HttpServer::HttpServer(Api &api, std::filesystem::path static_dir) : impl_{std::make_unique<Impl>(api)} {
    auto handler = [this](const httplib::Request &req, httplib::Response &res) { impl_->dispatch(req, res); };
    impl_->server.Get(R"(/api/.*)", handler);
    impl_->server.Post(R"(/api/.*)", handler);
    if (!static_dir.empty())
        impl_->server.set_mount_point("/", static_dir.string());
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string &host, int port) {
    if (port == 0)
        return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

} // namespace gridlock
