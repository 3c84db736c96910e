#pragma once

#include "gridlock/domination.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace gridlock {

// Point of T_n = {0..n-1}^2.
struct TorusPoint {
    int x = 0;
    int y = 0;

    auto operator<=>(const TorusPoint &) const = default;
};

// Generator of a cyclic subgroup of order n: gcd(a, b, n) = 1, stored as the
// lexicographically smallest generator u * (a, b), u a unit mod n.
struct TorusDirection {
    int a = 0;
    int b = 1;

    auto operator<=>(const TorusDirection &) const = default;
};

class TorusError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bit set over the n^2 cells of T_n; cell (x, y) at index y * n + x.
class TorusSet {
public:
    explicit TorusSet(int n);
    TorusSet(int n, const std::vector<TorusPoint> &points);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int index(TorusPoint p) const { return p.y * n_ + p.x; }
    [[nodiscard]] TorusPoint point(int index) const { return {index % n_, index / n_}; }
    // Coordinates are reduced mod n on the way in.
    void insert(TorusPoint p);
    void set(int index) { words_[static_cast<size_t>(index) >> 6] |= uint64_t{1} << (index & 63); }
    [[nodiscard]] bool test(int index) const { return (words_[static_cast<size_t>(index) >> 6] >> (index & 63)) & 1u; }
    [[nodiscard]] bool contains(TorusPoint p) const;
    [[nodiscard]] int size() const;
    [[nodiscard]] bool full() const { return size() == n_ * n_; }
    [[nodiscard]] std::vector<TorusPoint> points() const;
    [[nodiscard]] std::vector<int> indices() const;
    // Translate every point by v.
    [[nodiscard]] TorusSet shifted(TorusPoint v) const;

    bool operator==(const TorusSet &) const = default;

private:
    int n_;
    std::vector<uint64_t> words_;
};

[[nodiscard]] inline int mod(int64_t a, int64_t n) {
    const int64_t r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

struct TorusLine {
    TorusPoint base;
    TorusDirection dir;
    // Sorted by cell index.
    std::vector<TorusPoint> points;
};

// Line structure of T_n: every valid direction and, per direction, the
// partition of cells into parallel lines.
class Torus {
public:
    explicit Torus(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int cells() const { return n_ * n_; }
    [[nodiscard]] const std::vector<TorusDirection> &directions() const { return directions_; }
    // Throws TorusError when gcd(a, b, n) != 1.
    [[nodiscard]] TorusDirection canonical_direction(int a, int b) const;

    [[nodiscard]] std::vector<TorusLine> lines_through(TorusPoint p) const;
    // Total number of distinct lines.
    [[nodiscard]] int line_count() const { return static_cast<int>(directions_.size()) * n_; }
    // Directions d with j in i + <d>.
    [[nodiscard]] std::vector<size_t> common_directions(int i, int j) const;
    // Cells of the line through cell i in direction index d.
    [[nodiscard]] const std::vector<int> &line_cells(size_t d, int i) const {
        return members_[d][static_cast<size_t>(label_[d][static_cast<size_t>(i)])];
    }

    [[nodiscard]] TorusSet dominated_mask(const TorusSet &s) const;
    [[nodiscard]] bool is_dominating(const TorusSet &s) const { return dominated_mask(s).full(); }

private:
    int n_;
    std::vector<TorusDirection> directions_;
    // label_[d][cell]: which line of direction d holds the cell.
    std::vector<std::vector<int>> label_;
    std::vector<std::vector<std::vector<int>>> members_;
};

// Convenience wrappers that build the line structure on the fly.
[[nodiscard]] std::vector<TorusLine> torus_lines_through(int n, TorusPoint p);
[[nodiscard]] TorusSet torus_dominated_mask(const TorusSet &s);

struct TorusSolution {
    int n = 0;
    TorusSet points{1};
    Provenance provenance = Provenance::construction;
    // False only for boards above the verification limit.
    bool verified = false;

    [[nodiscard]] int size() const { return points.size(); }
};

// Boards up to this side are brute-force verified before a construction is returned.
inline constexpr int torus_verification_limit = 400;

// Throws VerificationError if s does not dominate T_n (n within the limit).
[[nodiscard]] TorusSolution verify_torus(TorusSet s, Provenance provenance);

struct BlowupSpec {
    int p = 2;
    int q = 2;
    std::vector<TorusPoint> base_set;
    TorusPoint fixed;
};

// {fixed} + {fixed + q (y - fixed) mod pq : y in base_set}.
[[nodiscard]] TorusSet blow_up(const BlowupSpec &spec);

[[nodiscard]] int smallest_prime_factor(int n);

[[nodiscard]] TorusSolution construct_even(int n);
[[nodiscard]] TorusSolution construct_3q(int n);
// Two full columns of T_p blown up by q = n / p; two extra points when p | q.
// p defaults to the smallest prime factor of n.
[[nodiscard]] TorusSolution construct_2p(int n, std::optional<int> p = std::nullopt);

// A point x of s (p prime) such that lines through x and the other points of
// s cover all of T_p.
[[nodiscard]] std::optional<TorusPoint> has_apex(int p, const std::vector<TorusPoint> &s);
// Requires has_apex(p, s) == apex; throws TorusError otherwise.
[[nodiscard]] TorusSolution blow_up_exact(int p, int n, const std::vector<TorusPoint> &s, TorusPoint apex);

// Fraction of `trials` uniform m-subsets of T_n that dominate. Trial t draws
// from a generator seeded with seed ^ t.
[[nodiscard]] double monte_carlo_domination(int n, int m, int trials, uint64_t seed);

struct TorusSearchOutcome {
    std::optional<int> minimum_size;
    std::vector<TorusSolution> witnesses;
    std::vector<TorusSolution> classes;
    int64_t distinct_count = 0;
    int64_t symmetry_class_count = 0;
    int64_t nodes_explored = 0;
    bool exhausted = false;
};

// Exact torus domination number, symmetry group = translations x dihedral.
[[nodiscard]] TorusSearchOutcome torus_min_dominating(int n, std::optional<int64_t> node_budget = std::nullopt,
                                                      bool enumerate_all = false);

} // namespace gridlock
