#pragma once

#include "gridlock/geometry.hpp"

#include <string>

namespace gridlock {

enum class Mode { general, independent };
enum class Provenance { search, construction, file };

[[nodiscard]] std::string to_string(Mode mode);
[[nodiscard]] std::string to_string(Provenance provenance);
// Throws std::invalid_argument for unknown names.
[[nodiscard]] Mode parse_mode(const std::string &name);

// Cells q with q in s, or q on the full line through two distinct points of s.
// Lines are traced across the whole region of s (board plus margin).
using DominationMask = PointSet;

[[nodiscard]] DominationMask dominated_mask(BoardSize board, const PointSet &s);
// True iff every cell of [1, n]^2 is dominated.
[[nodiscard]] bool is_dominating(BoardSize board, const PointSet &s);

// Anchor/direction hashing, O(|s|^2 log |s|).
[[nodiscard]] bool is_general_position(const PointSet &s);
[[nodiscard]] bool is_general_position(const std::vector<GridPoint> &points);
// Plain triple loop, kept as the cross-check for the hashed path.
[[nodiscard]] bool is_general_position_reference(const std::vector<GridPoint> &points);

class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A dominating set that has passed verification. The only way to obtain one
// is through Solution::verify, so holding a Solution means the invariants hold.
class Solution {
public:
    // Throws VerificationError when s does not dominate its board, or when
    // mode is independent and s has three collinear points.
    [[nodiscard]] static Solution verify(PointSet points, Mode mode, Provenance provenance);

    [[nodiscard]] BoardSize board() const { return points_.board(); }
    [[nodiscard]] int margin() const { return points_.region().margin; }
    [[nodiscard]] Mode mode() const { return mode_; }
    [[nodiscard]] Provenance provenance() const { return provenance_; }
    [[nodiscard]] const PointSet &points() const { return points_; }
    [[nodiscard]] int size() const { return size_; }

    bool operator==(const Solution &other) const {
        return points_ == other.points_ && mode_ == other.mode_;
    }

private:
    Solution(PointSet points, Mode mode, Provenance provenance)
        : points_{std::move(points)}, mode_{mode}, provenance_{provenance}, size_{points_.size()} { }

    PointSet points_;
    Mode mode_;
    Provenance provenance_;
    int size_;
};

// Two middle columns, k points each (n = 2k). Odd n reuses the n + 1 set,
// whose points all fall inside [1, n]^2. Requires n >= 3.
[[nodiscard]] Solution construct_central_columns(BoardSize board);

} // namespace gridlock
