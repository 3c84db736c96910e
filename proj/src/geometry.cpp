#include "gridlock/geometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace gridlock {

BoardSize::BoardSize(int n) : n_{n} {
    if (n < 1)
        throw GeometryError("board size must be at least 1, got " + std::to_string(n));
}

bool collinear(GridPoint a, GridPoint b, GridPoint c) {
    const int64_t ux = b.x - a.x, uy = b.y - a.y;
    const int64_t vx = c.x - a.x, vy = c.y - a.y;
    return ux * vy - uy * vx == 0;
}

Direction primitive_direction(GridPoint a, GridPoint b) {
    if (a == b)
        throw GeometryError("degenerate pair: no direction between identical points");
    int dx = b.x - a.x, dy = b.y - a.y;
    const int g = std::gcd(dx, dy);
    dx /= g;
    dy /= g;
    if (dx < 0 || (dx == 0 && dy < 0)) {
        dx = -dx;
        dy = -dy;
    }
    return {dx, dy};
}

std::vector<GridPoint> region_line_points(const Region &region, GridPoint p, Direction d) {
    GridPoint start = p;
    while (region.contains({start.x - d.dx, start.y - d.dy}))
        start = {start.x - d.dx, start.y - d.dy};
    std::vector<GridPoint> out;
    for (GridPoint q = start; region.contains(q); q = {q.x + d.dx, q.y + d.dy})
        out.push_back(q);
    return out;
}

std::vector<GridPoint> grid_line_points(BoardSize board, GridPoint p, Direction d) {
    return region_line_points(Region{board, 0}, p, d);
}

PointSet::PointSet(Region region)
    : region_{region}, words_(static_cast<size_t>((region.cells() + 63) / 64), 0) { }

PointSet::PointSet(BoardSize board, std::initializer_list<GridPoint> points) : PointSet(board) {
    for (auto p : points)
        insert(p);
}

PointSet::PointSet(Region region, const std::vector<GridPoint> &points) : PointSet(region) {
    for (auto p : points)
        insert(p);
}

bool PointSet::contains(GridPoint p) const {
    return region_.contains(p) && test(region_.index(p));
}

void PointSet::insert(GridPoint p) {
    if (!region_.contains(p))
        throw GeometryError("point (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                            ") outside the region");
    set(region_.index(p));
}

void PointSet::erase(GridPoint p) {
    if (!region_.contains(p))
        return;
    const int i = region_.index(p);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
}

int PointSet::size() const {
    int total = 0;
    for (auto w : words_)
        total += std::popcount(w);
    return total;
}

std::vector<int> PointSet::indices() const {
    std::vector<int> out;
    for (size_t w = 0; w < words_.size(); ++w)
        for (uint64_t v = words_[w]; v; v &= v - 1)
            out.push_back(static_cast<int>(w * 64 + std::countr_zero(v)));
    return out;
}

std::vector<GridPoint> PointSet::points() const {
    std::vector<GridPoint> out;
    for (int i : indices())
        out.push_back(region_.point(i));
    return out;
}

void PointSet::check_compatible(const PointSet &other) const {
    if (!(region_ == other.region_))
        throw GeometryError("point sets live on different regions");
}

bool PointSet::subset_of(const PointSet &other) const {
    check_compatible(other);
    for (size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w])
            return false;
    return true;
}

bool PointSet::covers_board() const {
    const int n = region_.board.n();
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x)
            if (!test(region_.index({x, y})))
                return false;
    return true;
}

PointSet &PointSet::operator|=(const PointSet &other) {
    check_compatible(other);
    for (size_t w = 0; w < words_.size(); ++w)
        words_[w] |= other.words_[w];
    return *this;
}

PointSet &PointSet::operator&=(const PointSet &other) {
    check_compatible(other);
    for (size_t w = 0; w < words_.size(); ++w)
        words_[w] &= other.words_[w];
    return *this;
}

bool precedes(const PointSet &a, const PointSet &b) {
    const int sa = a.size(), sb = b.size();
    if (sa != sb)
        return sa < sb;
    const auto &wa = a.words(), &wb = b.words();
    for (size_t w = 0; w < wa.size() && w < wb.size(); ++w) {
        const uint64_t diff = wa[w] ^ wb[w];
        if (diff)
            return (wa[w] & (diff & -diff)) != 0;
    }
    return false;
}

GridPoint apply_symmetry(BoardSize board, Symmetry t, GridPoint p) {
    const int m = board.n() + 1;
    switch (t) {
    case Symmetry::identity: return p;
    case Symmetry::rot90: return {p.y, m - p.x};
    case Symmetry::rot180: return {m - p.x, m - p.y};
    case Symmetry::rot270: return {m - p.y, p.x};
    case Symmetry::flip_x: return {m - p.x, p.y};
    case Symmetry::flip_y: return {p.x, m - p.y};
    case Symmetry::transpose: return {p.y, p.x};
    case Symmetry::anti_transpose: return {m - p.y, m - p.x};
    }
    return p;
}

PointSet apply_symmetry(BoardSize board, Symmetry t, const PointSet &s) {
    if (!(board == s.board()))
        throw GeometryError("symmetry applied with a mismatched board");
    PointSet out(s.region());
    for (auto p : s.points())
        out.insert(apply_symmetry(board, t, p));
    return out;
}

namespace {

// Composition via action on a reference asymmetric point set.
Symmetry identify(BoardSize board, GridPoint a, GridPoint b) {
    for (auto t : all_symmetries)
        if (apply_symmetry(board, t, GridPoint{1, 2}) == a && apply_symmetry(board, t, GridPoint{1, 1}) == b)
            return t;
    throw GeometryError("not a dihedral image");
}

} // namespace

Symmetry compose(Symmetry outer, Symmetry inner) {
    const BoardSize b{5};
    auto f = [&](GridPoint p) { return apply_symmetry(b, outer, apply_symmetry(b, inner, p)); };
    return identify(b, f({1, 2}), f({1, 1}));
}

Symmetry inverse(Symmetry t) {
    for (auto u : all_symmetries)
        if (compose(u, t) == Symmetry::identity)
            return u;
    return t;
}

std::string to_string(Symmetry t) {
    switch (t) {
    case Symmetry::identity: return "identity";
    case Symmetry::rot90: return "rot90";
    case Symmetry::rot180: return "rot180";
    case Symmetry::rot270: return "rot270";
    case Symmetry::flip_x: return "flip_x";
    case Symmetry::flip_y: return "flip_y";
    case Symmetry::transpose: return "transpose";
    case Symmetry::anti_transpose: return "anti_transpose";
    }
    return "?";
}

std::vector<int> symmetry_permutation(const Region &region, Symmetry t) {
    std::vector<int> perm(static_cast<size_t>(region.cells()));
    for (int i = 0; i < region.cells(); ++i)
        perm[i] = region.index(apply_symmetry(region.board, t, region.point(i)));
    return perm;
}

PointSet canonical_form(BoardSize board, const PointSet &s) {
    PointSet best = s;
    for (auto t : all_symmetries) {
        PointSet image = apply_symmetry(board, t, s);
        if (precedes(image, best))
            best = std::move(image);
    }
    return best;
}

int orbit_size(const PointSet &s) {
    std::vector<PointSet> images;
    for (auto t : all_symmetries) {
        PointSet image = apply_symmetry(s.board(), t, s);
        if (std::find(images.begin(), images.end(), image) == images.end())
            images.push_back(std::move(image));
    }
    return static_cast<int>(images.size());
}

} // namespace gridlock
