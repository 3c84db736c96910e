#pragma once

// Brute-force reference implementations. Deliberately share no code with
// the library beyond plain point structs.

#include "gridlock/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using gridlock::GridPoint;

inline bool on_line(GridPoint a, GridPoint b, GridPoint c) {
    return static_cast<int64_t>(b.x - a.x) * (c.y - a.y) == static_cast<int64_t>(b.y - a.y) * (c.x - a.x);
}

// Cells of [1, n]^2 that are in s or collinear with two distinct points of s.
inline std::set<GridPoint> dominated(int n, const std::vector<GridPoint> &s) {
    std::set<GridPoint> out;
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x) {
            const GridPoint q{x, y};
            bool hit = std::find(s.begin(), s.end(), q) != s.end();
            for (size_t i = 0; i < s.size() && !hit; ++i)
                for (size_t j = i + 1; j < s.size() && !hit; ++j)
                    hit = on_line(s[i], s[j], q);
            if (hit)
                out.insert(q);
        }
    return out;
}

inline bool dominates(int n, const std::vector<GridPoint> &s) {
    return dominated(n, s).size() == static_cast<size_t>(n * n);
}

inline bool general_position(const std::vector<GridPoint> &s) {
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            for (size_t k = j + 1; k < s.size(); ++k)
                if (on_line(s[i], s[j], s[k]))
                    return false;
    return true;
}

// The eight board maps written out directly.
inline GridPoint board_map(int n, int t, GridPoint p) {
    const int x = p.x, y = p.y, r = n + 1;
    switch (t) {
    case 0: return {x, y};
    case 1: return {y, r - x};
    case 2: return {r - x, r - y};
    case 3: return {r - y, x};
    case 4: return {r - x, y};
    case 5: return {x, r - y};
    case 6: return {y, x};
    default: return {r - y, r - x};
    }
}

inline std::vector<GridPoint> sorted_image(int n, int t, const std::vector<GridPoint> &s) {
    std::vector<GridPoint> out;
    for (GridPoint p : s)
        out.push_back(board_map(n, t, p));
    std::sort(out.begin(), out.end(), [](GridPoint a, GridPoint b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    return out;
}

// Orbit representative: lexicographically smallest sorted index sequence.
inline std::vector<int> class_key(int n, const std::vector<GridPoint> &s) {
    std::vector<int> best;
    for (int t = 0; t < 8; ++t) {
        std::vector<int> key;
        for (GridPoint p : sorted_image(n, t, s))
            key.push_back((p.y - 1) * n + (p.x - 1));
        if (best.empty() || key < best)
            best = key;
    }
    return best;
}

struct Census {
    int minimum = 0;
    int64_t distinct = 0;
    int64_t classes = 0;
};

// Every subset of [1, n]^2 by increasing size; no pruning, no symmetry.
inline Census min_dominating(int n, bool independent) {
    const int cells = n * n;
    for (int k = 1; k <= cells; ++k) {
        Census c{k, 0, 0};
        std::set<std::vector<int>> keys;
        std::vector<int> pick(static_cast<size_t>(k));
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<GridPoint> s;
            for (int i : pick)
                s.push_back({i % n + 1, i / n + 1});
            if ((!independent || general_position(s)) && dominates(n, s)) {
                ++c.distinct;
                keys.insert(class_key(n, s));
            }
            int i = k - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == cells - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
        if (c.distinct > 0) {
            c.classes = static_cast<int64_t>(keys.size());
            return c;
        }
    }
    return {};
}

// Torus T_n, 0-based. c is dominated iff c is in s or some line through c
// (every generator (a, b) with gcd(a, b, n) = 1, no normalization) holds two
// points of s.
inline std::set<std::pair<int, int>> torus_dominated(int n, const std::set<std::pair<int, int>> &s) {
    std::set<std::pair<int, int>> out;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            bool hit = s.count({x, y}) > 0;
            for (int a = 0; a < n && !hit; ++a)
                for (int b = 0; b < n && !hit; ++b) {
                    if (std::gcd(std::gcd(a, b), n) != 1)
                        continue;
                    int on = 0;
                    for (int t = 0; t < n; ++t)
                        on += static_cast<int>(s.count({(x + t * a) % n, (y + t * b) % n}));
                    hit = on >= 2;
                }
            if (hit)
                out.insert({x, y});
        }
    return out;
}

inline int torus_min_dominating(int n) {
    const int cells = n * n;
    for (int k = 1; k <= cells; ++k) {
        std::vector<int> pick(static_cast<size_t>(k));
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::set<std::pair<int, int>> s;
            for (int i : pick)
                s.insert({i % n, i / n});
            if (torus_dominated(n, s).size() == static_cast<size_t>(cells))
                return k;
            int i = k - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == cells - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    return cells;
}

// Plain minimax for the placement game: true iff the mover wins.
inline bool mover_wins(int n, std::vector<GridPoint> &placed) {
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x) {
            const GridPoint q{x, y};
            if (std::find(placed.begin(), placed.end(), q) != placed.end())
                continue;
            bool blocked = false;
            for (size_t i = 0; i < placed.size() && !blocked; ++i)
                for (size_t j = i + 1; j < placed.size() && !blocked; ++j)
                    blocked = on_line(placed[i], placed[j], q);
            if (blocked)
                continue;
            placed.push_back(q);
            const bool opponent = mover_wins(n, placed);
            placed.pop_back();
            if (!opponent)
                return true;
        }
    return false;
}

inline int euler_phi(int i) {
    int c = 0;
    for (int j = 1; j <= i; ++j)
        c += std::gcd(i, j) == 1;
    return c;
}

} // namespace oracle
