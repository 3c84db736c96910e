#include "gridlock/search.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace gridlock {

engine::CoverProblem grid_cover_problem(BoardSize board, int margin, Mode mode) {
    if (margin < 0)
        throw SearchError("margin must be non-negative");
    const Region region{board, margin};
    engine::CoverProblem p;
    p.cells = region.cells();
    p.independent = mode == Mode::independent;
    for (int i = 0; i < p.cells; ++i)
        if (region.on_board(region.point(i)))
            p.target.push_back(i);
    p.pair_cover.resize(static_cast<size_t>(p.cells) * p.cells);
    for (int i = 0; i < p.cells; ++i) {
        for (int j = i + 1; j < p.cells; ++j) {
            const GridPoint a = region.point(i), b = region.point(j);
            std::vector<int> line;
            for (auto q : region_line_points(region, a, primitive_direction(a, b)))
                line.push_back(region.index(q));
            p.pair_cover[static_cast<size_t>(j) * p.cells + i] = line;
            p.pair_cover[static_cast<size_t>(i) * p.cells + j] = std::move(line);
        }
    }
    for (auto t : all_symmetries)
        p.point_group.push_back(symmetry_permutation(region, t));
    return p;
}

namespace {

SearchOutcome run_search(const SearchConfig &config) {
    const BoardSize board = config.board;
    if (board.n() < 2)
        throw SearchError("search needs n >= 2");
    const Region region{board, config.margin};
    const auto problem = grid_cover_problem(board, config.margin, config.mode);
    engine::CoverLimits limits;
    limits.enumerate_all = config.enumerate_all;
    limits.node_budget = config.node_budget;
    limits.threads = config.thread_count.value_or(1);
    const auto raw = engine::solve_cover(problem, limits);

    auto to_solution = [&](const std::vector<int> &cells) {
        PointSet s(region);
        for (int c : cells)
            s.set(c);
        return Solution::verify(std::move(s), config.mode, Provenance::search);
    };

    SearchOutcome out;
    out.minimum_size = raw.minimum;
    out.distinct_count = raw.distinct;
    out.symmetry_class_count = raw.classes;
    out.nodes_explored = raw.nodes;
    out.exhausted = raw.exhausted;
    for (const auto &w : raw.witnesses)
        out.witnesses.push_back(to_solution(w));
    for (const auto &c : raw.canonical)
        out.classes.push_back(to_solution(c));
    return out;
}

} // namespace

SearchOutcome min_dominating(const SearchConfig &config) {
    return run_search(config);
}

SearchOutcome min_dominating_exterior(const SearchConfig &config) {
    if (config.margin < 1)
        throw SearchError("exterior search needs margin >= 1");
    return run_search(config);
}

// ---------------------------------------------------------------------------
// symmetric_augment

namespace {

using Orbit = std::vector<GridPoint>;

std::vector<Orbit> orbits_under(BoardSize board, const std::vector<Symmetry> &group) {
    const int n = board.n();
    std::vector<char> seen(static_cast<size_t>(n * n), 0);
    std::vector<Orbit> out;
    for (int y = 1; y <= n; ++y) {
        for (int x = 1; x <= n; ++x) {
            const GridPoint p{x, y};
            if (seen[static_cast<size_t>((y - 1) * n + x - 1)])
                continue;
            Orbit orbit;
            for (auto t : group) {
                const GridPoint q = apply_symmetry(board, t, p);
                auto &mark = seen[static_cast<size_t>((q.y - 1) * n + q.x - 1)];
                if (!mark) {
                    mark = 1;
                    orbit.push_back(q);
                }
            }
            std::sort(orbit.begin(), orbit.end(), row_major_less);
            out.push_back(std::move(orbit));
        }
    }
    return out;
}

// Independent point set with its dominated board cells.
class Builder {
public:
    explicit Builder(BoardSize board) : board_{board}, dom_(static_cast<size_t>((board.cells() + 63) / 64), 0) { }

    [[nodiscard]] int size() const { return static_cast<int>(points_.size()); }
    [[nodiscard]] const std::vector<GridPoint> &points() const { return points_; }

    [[nodiscard]] int dominated() const {
        int total = 0;
        for (auto w : dom_)
            total += std::popcount(w);
        return total;
    }
    [[nodiscard]] bool complete() const { return dominated() == board_.cells(); }

    // False (and *this unspecified) when the orbit breaks general position.
    bool add(const Orbit &orbit) {
        for (auto q : orbit) {
            if (test(q))
                return false;
            for (auto p : points_)
                for (auto r : grid_line_points(board_, p, primitive_direction(p, q)))
                    mark(r);
            mark(q);
            points_.push_back(q);
        }
        return true;
    }

private:
    [[nodiscard]] int index(GridPoint p) const { return (p.y - 1) * board_.n() + (p.x - 1); }
    [[nodiscard]] bool test(GridPoint p) const {
        const int i = index(p);
        return (dom_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u;
    }
    void mark(GridPoint p) {
        const int i = index(p);
        dom_[static_cast<size_t>(i) >> 6] |= uint64_t{1} << (i & 63);
    }

    BoardSize board_;
    std::vector<GridPoint> points_;
    std::vector<uint64_t> dom_;
};

struct AugmentState {
    BoardSize board;
    const std::vector<Orbit> &orbits;
    int64_t nodes = 0;
    int64_t budget = 0;
    std::optional<std::vector<GridPoint>> best;

    [[nodiscard]] int best_size() const { return best ? static_cast<int>(best->size()) : board.cells() + 1; }

    void offer(const Builder &b) {
        if (b.complete() && b.size() < best_size())
            best = b.points();
    }
};

// Orbit indices in use -> builder.
Builder build(BoardSize board, const std::vector<Orbit> &orbits, const std::vector<size_t> &used, bool &ok) {
    Builder b(board);
    ok = true;
    for (size_t i : used)
        if (!b.add(orbits[i])) {
            ok = false;
            break;
        }
    return b;
}

void greedy_from(AugmentState &st, size_t seed) {
    const auto &orbits = st.orbits;
    std::vector<size_t> used{seed};
    bool ok = false;
    Builder cur = build(st.board, orbits, used, ok);
    if (!ok)
        return;
    bool repaired = false;
    while (!cur.complete() && cur.size() < st.best_size()) {
        int best_gain = 0;
        std::optional<size_t> pick;
        std::optional<Builder> pick_state;
        for (size_t i = 0; i < orbits.size(); ++i) {
            if (std::find(used.begin(), used.end(), i) != used.end())
                continue;
            Builder next = cur;
            if (!next.add(orbits[i]))
                continue;
            ++st.nodes;
            const int gain = next.dominated() - cur.dominated();
            if (gain > best_gain) {
                best_gain = gain;
                pick = i;
                pick_state = std::move(next);
            }
        }
        if (pick) {
            used.push_back(*pick);
            cur = std::move(*pick_state);
            continue;
        }
        if (repaired || used.size() < 2)
            return;
        // Swap one orbit for another when that dominates more cells.
        repaired = true;
        int base = cur.dominated();
        std::optional<std::vector<size_t>> swap;
        for (size_t out = 0; out < used.size(); ++out) {
            for (size_t in = 0; in < orbits.size(); ++in) {
                if (std::find(used.begin(), used.end(), in) != used.end())
                    continue;
                auto trial = used;
                trial[out] = in;
                bool fine = false;
                Builder b = build(st.board, orbits, trial, fine);
                ++st.nodes;
                if (fine && b.dominated() > base) {
                    base = b.dominated();
                    swap = trial;
                }
            }
        }
        if (!swap)
            return;
        used = *swap;
        cur = build(st.board, orbits, used, ok);
    }
    st.offer(cur);
}

void exact_orbits(AugmentState &st, const Builder &cur, size_t start) {
    if (st.nodes >= st.budget)
        return;
    ++st.nodes;
    if (cur.complete()) {
        st.offer(cur);
        return;
    }
    const int room = st.best_size() - 1 - cur.size();
    if (room <= 0)
        return;
    const int n = st.board.n();
    if (st.board.cells() - cur.dominated() > engine::coverage_capacity(cur.size(), room, n - 2))
        return;
    for (size_t i = start; i < st.orbits.size(); ++i) {
        if (static_cast<int>(st.orbits[i].size()) > room)
            continue;
        Builder next = cur;
        if (!next.add(st.orbits[i]))
            continue;
        exact_orbits(st, next, i + 1);
        if (st.nodes >= st.budget)
            return;
    }
}

} // namespace

Solution symmetric_augment(BoardSize board, AugmentBudget budget) {
    using S = Symmetry;
    const std::vector<std::vector<Symmetry>> groups{
        {S::identity, S::rot90, S::rot180, S::rot270, S::flip_x, S::flip_y, S::transpose, S::anti_transpose},
        {S::identity, S::rot90, S::rot180, S::rot270},
        {S::identity, S::rot180, S::flip_x, S::flip_y},
        {S::identity, S::rot180, S::transpose, S::anti_transpose},
        {S::identity, S::rot180},
    };
    std::optional<std::vector<GridPoint>> best;
    const int64_t share = std::max<int64_t>(1, budget.node_budget / static_cast<int64_t>(groups.size()));
    for (const auto &group : groups) {
        const auto orbits = orbits_under(board, group);
        AugmentState st{board, orbits, 0, share, best};
        for (size_t seed = 0; seed < orbits.size() && st.nodes < st.budget; ++seed)
            greedy_from(st, seed);
        exact_orbits(st, Builder(board), 0);
        best = st.best;
    }
    if (!best)
        throw SearchError("symmetric augmentation found no dominating set within budget");
    return Solution::verify(PointSet(Region{board, 0}, *best), Mode::independent, Provenance::search);
}

} // namespace gridlock
