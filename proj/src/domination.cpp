#include "gridlock/domination.hpp"

#include <algorithm>
#include <unordered_set>

namespace gridlock {

std::string to_string(Mode mode) {
    return mode == Mode::general ? "general" : "independent";
}

std::string to_string(Provenance provenance) {
    switch (provenance) {
    case Provenance::search: return "search";
    case Provenance::construction: return "construction";
    case Provenance::file: return "file";
    }
    return "?";
}

Mode parse_mode(const std::string &name) {
    if (name == "general")
        return Mode::general;
    if (name == "independent")
        return Mode::independent;
    throw std::invalid_argument("unknown mode '" + name + "' (expected general|independent)");
}

DominationMask dominated_mask(BoardSize board, const PointSet &s) {
    if (!(board == s.board()))
        throw GeometryError("dominated_mask: point set bound to another board");
    const Region &region = s.region();
    DominationMask mask = s;
    const auto pts = s.points();
    // Line key: first cell on the line inside the region, plus its direction.
    std::unordered_set<int64_t> traced;
    const int64_t span = 2 * region.side() + 1;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const Direction d = primitive_direction(pts[i], pts[j]);
            const auto line = region_line_points(region, pts[i], d);
            const int64_t key = (static_cast<int64_t>(region.index(line.front())) * span + d.dx) * span +
                                (d.dy + region.side());
            if (!traced.insert(key).second)
                continue;
            for (auto q : line)
                mask.insert(q);
        }
    }
    return mask;
}

bool is_dominating(BoardSize board, const PointSet &s) {
    return dominated_mask(board, s).covers_board();
}

bool is_general_position(const std::vector<GridPoint> &points) {
    std::vector<Direction> dirs;
    for (size_t i = 0; i < points.size(); ++i) {
        dirs.clear();
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i)
                continue;
            if (points[j] == points[i])
                return false;
            dirs.push_back(primitive_direction(points[i], points[j]));
        }
        std::sort(dirs.begin(), dirs.end());
        if (std::adjacent_find(dirs.begin(), dirs.end()) != dirs.end())
            return false;
    }
    return true;
}

bool is_general_position(const PointSet &s) {
    return is_general_position(s.points());
}

bool is_general_position_reference(const std::vector<GridPoint> &points) {
    const size_t m = points.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k)
                if (collinear(points[i], points[j], points[k]))
                    return false;
    return true;
}

Solution Solution::verify(PointSet points, Mode mode, Provenance provenance) {
    const BoardSize board = points.board();
    if (!is_dominating(board, points))
        throw VerificationError("point set does not dominate the " + std::to_string(board.n()) + "x" +
                                std::to_string(board.n()) + " board");
    if (mode == Mode::independent && !is_general_position(points))
        throw VerificationError("point set contains three collinear points");
    return Solution(std::move(points), mode, provenance);
}

Solution construct_central_columns(BoardSize board) {
    const int n = board.n();
    if (n < 3)
        throw GeometryError("central-column construction needs n >= 3, got " + std::to_string(n));
    const int k = (n + 1) / 2;
    const int lift = (k + 1) / 2; // ceil(k / 2)
    PointSet s(board);
    for (int i = k; i <= k + 1; ++i) {
        for (int j = lift + 1; j <= k + lift; ++j) {
            if (i > n || j > n)
                throw GeometryError("central-column point falls outside the board");
            s.insert({i, j});
        }
    }
    return Solution::verify(std::move(s), Mode::general, Provenance::construction);
}

} // namespace gridlock
