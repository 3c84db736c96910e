#pragma once

#include "gridlock/bounds.hpp"
#include "gridlock/game.hpp"
#include "gridlock/search.hpp"
#include "gridlock/torus.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gridlock {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// {"kind":"grid","n","mode","size","points":[[x,y],...]} sorted row-major;
// "margin" is added only for exterior solutions.
[[nodiscard]] json to_json(const Solution &s);
[[nodiscard]] json to_json(const TorusSolution &s);
[[nodiscard]] json to_json(const GameState &state);
[[nodiscard]] json to_json(const BoundReport &r);
[[nodiscard]] json to_json(const JansonEstimate &e);
[[nodiscard]] json to_json(GridPoint p);

// Parsed but not yet verified.
struct GridRecord {
    PointSet points{BoardSize(1)};
    Mode mode = Mode::general;
};

// Throws FormatError on schema violations (missing fields, wrong kind,
// points off the region, size mismatch).
[[nodiscard]] GridRecord grid_from_json(const json &j);
[[nodiscard]] TorusSet torus_from_json(const json &j);
[[nodiscard]] GameState game_state_from_json(const json &j);
// "grid" or "torus"; throws FormatError otherwise.
[[nodiscard]] std::string solution_kind(const json &j);

[[nodiscard]] json read_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const json &j);

struct RenderSpec {
    enum class Target { ascii, svg };
    Target target = Target::svg;
    int cell_px = 24;
    // Shade dominated cells.
    bool show_mask = false;
    // Draw the board segment of every line through two points.
    bool show_lines = false;
};

// y grows downward, cell (1, 1) top-left. Exactly one element with class
// "cell" per board cell and one with class "marker" per point.
[[nodiscard]] std::string render_svg(BoardSize board, const PointSet &points, const RenderSpec &spec);
// 'o' point, '+' dominated, '.' free; one text row per board row.
[[nodiscard]] std::string render_ascii(BoardSize board, const PointSet &points, bool show_mask);
[[nodiscard]] std::string render(BoardSize board, const PointSet &points, const RenderSpec &spec);

struct CacheRecord {
    int n = 0;
    Mode mode = Mode::independent;
    int margin = 0;
    std::optional<int> minimum;
    int64_t distinct = 0;
    int64_t classes = 0;
    bool exhausted = false;

    bool operator==(const CacheRecord &) const = default;
};

[[nodiscard]] json to_json(const CacheRecord &r);
[[nodiscard]] CacheRecord cache_record_from_json(const json &j);
[[nodiscard]] CacheRecord cache_record(const SearchConfig &config, const SearchOutcome &outcome);

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Results directory: results.jsonl (append-only search records) and
// solutions/<mode>-n<n>-m<margin>.json (canonical class representatives).
class ResultsCache {
public:
    explicit ResultsCache(std::filesystem::path dir);
    // $GRIDLOCK_CACHE_DIR, falling back to `fallback`.
    [[nodiscard]] static ResultsCache from_environment(const std::filesystem::path &fallback);

    [[nodiscard]] const std::filesystem::path &dir() const { return dir_; }

    // Latest record for the key, an exhausted one taking precedence.
    [[nodiscard]] std::optional<CacheRecord> lookup(int n, Mode mode, int margin) const;
    [[nodiscard]] std::vector<CacheRecord> records() const;
    // Throws CacheError when a non-exhaustive record would shadow an exhausted one.
    void append(const CacheRecord &record);

    // Stores the canonical representatives next to the record.
    void store(const SearchConfig &config, const SearchOutcome &outcome);
    // Representatives re-verified on load; empty when nothing is stored.
    [[nodiscard]] std::vector<Solution> solutions(int n, Mode mode, int margin) const;

private:
    [[nodiscard]] std::filesystem::path solutions_path(int n, Mode mode, int margin) const;

    std::filesystem::path dir_;
};

} // namespace gridlock
