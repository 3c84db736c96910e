#include "gridlock/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace gridlock {

namespace fs = std::filesystem;

json to_json(GridPoint p) { return json::array({p.x, p.y}); }

namespace {

json point_list(const std::vector<GridPoint> &points) {
    json out = json::array();
    for (GridPoint p : points)
        out.push_back(to_json(p));
    return out;
}

template <class T>
T field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name))
        throw FormatError(std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception &) {
        throw FormatError(std::string("field '") + name + "' has the wrong type");
    }
}

std::vector<GridPoint> parse_points(const json &j) {
    const auto &arr = j.contains("points") ? j.at("points") : throw FormatError("missing field 'points'");
    if (!arr.is_array())
        throw FormatError("'points' must be an array");
    std::vector<GridPoint> out;
    for (const auto &p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw FormatError("each point must be [x, y] with integer coordinates");
        out.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    return out;
}

void check_size(const json &j, int actual) {
    if (j.contains("size") && field<int>(j, "size") != actual)
        throw FormatError("'size' disagrees with the number of distinct points");
}

} // namespace

json to_json(const Solution &s) {
    json j = {{"kind", "grid"},
              {"n", s.board().n()},
              {"mode", to_string(s.mode())},
              {"size", s.size()},
              {"points", point_list(s.points().points())}};
    if (s.margin() > 0)
        j["margin"] = s.margin();
    return j;
}

json to_json(const TorusSolution &s) {
    json pts = json::array();
    for (TorusPoint p : s.points.points())
        pts.push_back(json::array({p.x, p.y}));
    return {{"kind", "torus"}, {"n", s.n}, {"size", s.size()}, {"points", pts}};
}

json to_json(const GameState &state) {
    return {{"n", state.board().n()},
            {"placed", point_list(state.placed().points())},
            {"toMove", to_string(state.to_move())}};
}

json to_json(const BoundReport &r) {
    return {{"n", r.n},
            {"trivial_lower", r.trivial_lower},
            {"phi_lower", r.phi_lower},
            {"construction_upper", r.construction_upper},
            {"notes", r.notes}};
}

json to_json(const JansonEstimate &e) {
    return {{"n", e.n},
            {"m", e.m},
            {"mu", e.mu},
            {"delta", e.delta},
            {"mu_exact", e.mu_exact.str()},
            {"delta_exact", e.delta_exact.str()},
            {"failure_bound", e.failure_bound},
            {"certifies_existence", e.certifies_existence()}};
}

std::string solution_kind(const json &j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind != "grid" && kind != "torus")
        throw FormatError("unknown solution kind '" + kind + "'");
    return kind;
}

GridRecord grid_from_json(const json &j) {
    if (solution_kind(j) != "grid")
        throw FormatError("expected a grid solution");
    const int n = field<int>(j, "n");
    if (n < 1)
        throw FormatError("'n' must be positive");
    const int margin = j.contains("margin") ? field<int>(j, "margin") : 0;
    if (margin < 0)
        throw FormatError("'margin' must be non-negative");
    Mode mode;
    try {
        mode = parse_mode(field<std::string>(j, "mode"));
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what());
    }
    const Region region{BoardSize(n), margin};
    PointSet set(region);
    for (GridPoint p : parse_points(j)) {
        if (!region.contains(p))
            throw FormatError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is off the board");
        set.insert(p);
    }
    check_size(j, set.size());
    return {std::move(set), mode};
}

TorusSet torus_from_json(const json &j) {
    if (solution_kind(j) != "torus")
        throw FormatError("expected a torus solution");
    const int n = field<int>(j, "n");
    if (n < 1)
        throw FormatError("'n' must be positive");
    TorusSet set(n);
    for (GridPoint p : parse_points(j)) {
        if (p.x < 0 || p.x >= n || p.y < 0 || p.y >= n)
            throw FormatError("torus coordinates must lie in [0, n)");
        set.insert({p.x, p.y});
    }
    check_size(j, set.size());
    return set;
}

GameState game_state_from_json(const json &j) {
    const int n = field<int>(j, "n");
    if (n < 1)
        throw FormatError("'n' must be positive");
    const BoardSize board(n);
    PointSet placed(board);
    if (!j.contains("placed") || !j.at("placed").is_array())
        throw FormatError("missing array 'placed'");
    for (GridPoint p : parse_points(json{{"points", j.at("placed")}})) {
        if (!placed.region().on_board(p))
            throw FormatError("placed point off the board");
        if (placed.contains(p))
            throw FormatError("placed point listed twice");
        placed.insert(p);
    }
    try {
        return GameState(std::move(placed), parse_player(field<std::string>(j, "toMove")));
    } catch (const GameError &e) {
        throw FormatError(e.what());
    }
}

json read_json_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const fs::path &path, const json &j) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << j.dump(1) << '\n';
}

std::string render_svg(BoardSize board, const PointSet &points, const RenderSpec &spec) {
    if (spec.cell_px < 4)
        throw std::invalid_argument("cell_px must be at least 4");
    const Region region = points.region();
    const int px = spec.cell_px;
    const int side = region.side() * px;
    const auto dom = spec.show_mask ? dominated_mask(board, points) : PointSet(region);
    auto left = [&](int x) { return (x - region.lo()) * px; };
    auto top = [&](int y) { return (y - region.lo()) * px; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
        << "\" viewBox=\"0 0 " << side << ' ' << side << "\">\n";
    for (int y = region.lo(); y <= region.hi(); ++y)
        for (int x = region.lo(); x <= region.hi(); ++x) {
            const GridPoint p{x, y};
            if (!region.on_board(p))
                continue;
            const bool shaded = spec.show_mask && dom.contains(p) && !points.contains(p);
            out << "<rect class=\"cell" << (shaded ? " dominated" : "") << "\" x=\"" << left(x) << "\" y=\""
                << top(y) << "\" width=\"" << px << "\" height=\"" << px << "\" fill=\""
                << (shaded ? "#d6e4f0" : "#ffffff") << "\" stroke=\"#999999\"/>\n";
        }
    const auto pts = points.points();
    if (spec.show_lines) {
        std::set<std::pair<GridPoint, GridPoint>> drawn;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                const auto line = region_line_points(region, pts[i], primitive_direction(pts[i], pts[j]));
                std::vector<GridPoint> inside;
                for (GridPoint q : line)
                    if (region.on_board(q) || points.contains(q))
                        inside.push_back(q);
                if (inside.size() < 2 || !drawn.insert({inside.front(), inside.back()}).second)
                    continue;
                out << "<line class=\"line\" x1=\"" << left(inside.front().x) + px / 2 << "\" y1=\""
                    << top(inside.front().y) + px / 2 << "\" x2=\"" << left(inside.back().x) + px / 2
                    << "\" y2=\"" << top(inside.back().y) + px / 2 << "\" stroke=\"#c0392b\" stroke-width=\"1\"/>\n";
            }
    }
    for (GridPoint p : pts)
        out << "<circle class=\"marker\" cx=\"" << left(p.x) + px / 2 << "\" cy=\"" << top(p.y) + px / 2
            << "\" r=\"" << px * 3 / 8 << "\" fill=\"#222222\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string render_ascii(BoardSize board, const PointSet &points, bool show_mask) {
    const Region region = points.region();
    const auto dom = show_mask ? dominated_mask(board, points) : PointSet(region);
    std::string out;
    for (int y = region.lo(); y <= region.hi(); ++y) {
        for (int x = region.lo(); x <= region.hi(); ++x) {
            const GridPoint p{x, y};
            if (points.contains(p))
                out += 'o';
            else if (!region.on_board(p))
                out += ' ';
            else
                out += show_mask && dom.contains(p) ? '+' : '.';
        }
        while (!out.empty() && out.back() == ' ')
            out.pop_back();
        out += '\n';
    }
    return out;
}

std::string render(BoardSize board, const PointSet &points, const RenderSpec &spec) {
    return spec.target == RenderSpec::Target::svg ? render_svg(board, points, spec)
                                                   : render_ascii(board, points, spec.show_mask);
}

json to_json(const CacheRecord &r) {
    return {{"n", r.n},
            {"mode", to_string(r.mode)},
            {"margin", r.margin},
            {"minimum", r.minimum ? json(*r.minimum) : json(nullptr)},
            {"distinct", r.distinct},
            {"classes", r.classes},
            {"exhausted", r.exhausted}};
}

CacheRecord cache_record_from_json(const json &j) {
    CacheRecord r;
    r.n = field<int>(j, "n");
    try {
        r.mode = parse_mode(field<std::string>(j, "mode"));
    } catch (const std::invalid_argument &e) {
        throw FormatError(e.what());
    }
    r.margin = field<int>(j, "margin");
    if (j.contains("minimum") && !j.at("minimum").is_null())
        r.minimum = field<int>(j, "minimum");
    r.distinct = field<int64_t>(j, "distinct");
    r.classes = field<int64_t>(j, "classes");
    r.exhausted = field<bool>(j, "exhausted");
    return r;
}

CacheRecord cache_record(const SearchConfig &config, const SearchOutcome &outcome) {
    return {config.board.n(), config.mode, config.margin, outcome.minimum_size,
            outcome.distinct_count, outcome.symmetry_class_count, outcome.exhausted};
}

ResultsCache::ResultsCache(fs::path dir) : dir_{std::move(dir)} { }

ResultsCache ResultsCache::from_environment(const fs::path &fallback) {
    if (const char *env = std::getenv("GRIDLOCK_CACHE_DIR"); env && *env)
        return ResultsCache(env);
    return ResultsCache(fallback);
}

std::vector<CacheRecord> ResultsCache::records() const {
    std::vector<CacheRecord> out;
    std::ifstream in(dir_ / "results.jsonl");
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(cache_record_from_json(json::parse(line)));
        } catch (const json::parse_error &e) {
            throw FormatError("results.jsonl: " + std::string(e.what()));
        }
    }
    return out;
}

std::optional<CacheRecord> ResultsCache::lookup(int n, Mode mode, int margin) const {
    std::optional<CacheRecord> found;
    for (const auto &r : records()) {
        if (r.n != n || r.mode != mode || r.margin != margin)
            continue;
        if (!found || r.exhausted || !found->exhausted)
            found = r;
    }
    return found;
}

void ResultsCache::append(const CacheRecord &record) {
    if (!record.exhausted) {
        const auto existing = lookup(record.n, record.mode, record.margin);
        if (existing && existing->exhausted)
            throw CacheError("refusing to record a non-exhaustive result over an exhausted one for n = " +
                             std::to_string(record.n));
    }
    fs::create_directories(dir_);
    std::ofstream out(dir_ / "results.jsonl", std::ios::app);
    if (!out)
        throw CacheError("cannot append to " + (dir_ / "results.jsonl").string());
    out << to_json(record).dump() << '\n';
}

fs::path ResultsCache::solutions_path(int n, Mode mode, int margin) const {
    return dir_ / "solutions" /
           (to_string(mode) + "-n" + std::to_string(n) + "-m" + std::to_string(margin) + ".json");
}

void ResultsCache::store(const SearchConfig &config, const SearchOutcome &outcome) {
    const auto record = cache_record(config, outcome);
    append(record);
    json sols = json::array();
    for (const auto &s : outcome.classes)
        sols.push_back(to_json(s));
    json j = to_json(record);
    j["solutions"] = sols;
    write_json_file(solutions_path(config.board.n(), config.mode, config.margin), j);
}

std::vector<Solution> ResultsCache::solutions(int n, Mode mode, int margin) const {
    const auto path = solutions_path(n, mode, margin);
    if (!fs::exists(path))
        return {};
    const json j = read_json_file(path);
    std::vector<Solution> out;
    for (const auto &s : j.at("solutions")) {
        auto rec = grid_from_json(s);
        out.push_back(Solution::verify(std::move(rec.points), rec.mode, Provenance::file));
    }
    return out;
}

} // namespace gridlock
