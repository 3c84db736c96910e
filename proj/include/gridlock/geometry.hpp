#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridlock {

// Side length of the n x n board. Cells are (x, y) with 1 <= x, y <= n.
class BoardSize {
public:
    explicit BoardSize(int n);

    [[nodiscard]] constexpr int n() const { return n_; }
    [[nodiscard]] constexpr int cells() const { return n_ * n_; }
    // k with n = 2k or n = 2k - 1
    [[nodiscard]] constexpr int half() const { return (n_ + 1) / 2; }

    auto operator<=>(const BoardSize &) const = default;

private:
    int n_;
};

struct GridPoint {
    int x = 0;
    int y = 0;

    auto operator<=>(const GridPoint &) const = default;
};

// Row-major order: y first, then x.
[[nodiscard]] constexpr bool row_major_less(GridPoint a, GridPoint b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

// Primitive lattice vector, gcd(|dx|, |dy|) = 1, with dx > 0 or (dx = 0 and dy > 0).
struct Direction {
    int dx = 0;
    int dy = 1;

    auto operator<=>(const Direction &) const = default;
};

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] bool collinear(GridPoint a, GridPoint b, GridPoint c);

// Throws GeometryError when a == b.
[[nodiscard]] Direction primitive_direction(GridPoint a, GridPoint b);

// Region of cells a point set lives on: the board widened by `margin` on
// every side, i.e. coordinates in [1 - margin, n + margin].
struct Region {
    BoardSize board{1};
    int margin = 0;

    [[nodiscard]] constexpr int side() const { return board.n() + 2 * margin; }
    [[nodiscard]] constexpr int cells() const { return side() * side(); }
    [[nodiscard]] constexpr int lo() const { return 1 - margin; }
    [[nodiscard]] constexpr int hi() const { return board.n() + margin; }

    [[nodiscard]] constexpr bool contains(GridPoint p) const {
        return p.x >= lo() && p.x <= hi() && p.y >= lo() && p.y <= hi();
    }
    [[nodiscard]] constexpr bool on_board(GridPoint p) const {
        return p.x >= 1 && p.x <= board.n() && p.y >= 1 && p.y <= board.n();
    }
    [[nodiscard]] constexpr int index(GridPoint p) const {
        return (p.y - lo()) * side() + (p.x - lo());
    }
    [[nodiscard]] constexpr GridPoint point(int index) const {
        return {index % side() + lo(), index / side() + lo()};
    }

    bool operator==(const Region &) const = default;
};

// All board cells p + t*d in increasing t. Requires p on the board.
[[nodiscard]] std::vector<GridPoint> grid_line_points(BoardSize board, GridPoint p, Direction d);
// Same, over a widened region.
[[nodiscard]] std::vector<GridPoint> region_line_points(const Region &region, GridPoint p, Direction d);

// Bit mask over the cells of a region, row-major. Cell (x, y) of a plain
// board sits at index (y - 1) * n + (x - 1).
class PointSet {
public:
    explicit PointSet(BoardSize board) : PointSet(Region{board, 0}) { }
    explicit PointSet(Region region);
    PointSet(BoardSize board, std::initializer_list<GridPoint> points);
    PointSet(Region region, const std::vector<GridPoint> &points);

    [[nodiscard]] const Region &region() const { return region_; }
    [[nodiscard]] BoardSize board() const { return region_.board; }

    [[nodiscard]] bool contains(GridPoint p) const;
    [[nodiscard]] bool test(int index) const {
        return (words_[index >> 6] >> (index & 63)) & 1u;
    }
    // Throws GeometryError for points outside the region.
    void insert(GridPoint p);
    void erase(GridPoint p);
    void set(int index) { words_[index >> 6] |= uint64_t{1} << (index & 63); }

    [[nodiscard]] int size() const;
    [[nodiscard]] bool empty() const { return size() == 0; }
    [[nodiscard]] std::vector<GridPoint> points() const;
    [[nodiscard]] std::vector<int> indices() const;

    [[nodiscard]] bool subset_of(const PointSet &other) const;
    [[nodiscard]] bool covers_board() const;

    PointSet &operator|=(const PointSet &other);
    PointSet &operator&=(const PointSet &other);
    [[nodiscard]] friend PointSet operator|(PointSet a, const PointSet &b) { return a |= b; }
    [[nodiscard]] friend PointSet operator&(PointSet a, const PointSet &b) { return a &= b; }

    [[nodiscard]] const std::vector<uint64_t> &words() const { return words_; }

    bool operator==(const PointSet &) const = default;

private:
    void check_compatible(const PointSet &other) const;

    Region region_;
    std::vector<uint64_t> words_;
};

// Total order used for canonical forms: compare the row-major sorted index
// sequences lexicographically (the set holding the smallest differing cell
// comes first). Sets of different size compare by size first.
[[nodiscard]] bool precedes(const PointSet &a, const PointSet &b);

enum class Symmetry : uint8_t {
    identity,
    rot90,   // (x, y) -> (y, n + 1 - x)
    rot180,
    rot270,
    flip_x,  // (x, y) -> (n + 1 - x, y)
    flip_y,  // (x, y) -> (x, n + 1 - y)
    transpose,
    anti_transpose,
};

inline constexpr std::array<Symmetry, 8> all_symmetries{
    Symmetry::identity, Symmetry::rot90, Symmetry::rot180, Symmetry::rot270,
    Symmetry::flip_x, Symmetry::flip_y, Symmetry::transpose, Symmetry::anti_transpose,
};

[[nodiscard]] GridPoint apply_symmetry(BoardSize board, Symmetry t, GridPoint p);
[[nodiscard]] PointSet apply_symmetry(BoardSize board, Symmetry t, const PointSet &s);
[[nodiscard]] Symmetry inverse(Symmetry t);
[[nodiscard]] Symmetry compose(Symmetry outer, Symmetry inner);
[[nodiscard]] std::string to_string(Symmetry t);

// Cell permutation of a region for one symmetry: perm[i] is the image index of cell i.
[[nodiscard]] std::vector<int> symmetry_permutation(const Region &region, Symmetry t);

[[nodiscard]] PointSet canonical_form(BoardSize board, const PointSet &s);
// Number of distinct images of s under the eight symmetries.
[[nodiscard]] int orbit_size(const PointSet &s);

} // namespace gridlock
