#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Exact minimum-size search for dominating sets over an abstract incidence
// structure: a set of candidate cells, the subset of cells that must end up
// dominated, and for every pair of cells the cells their line(s) cover.
// Grid, exterior-grid and torus searches are all instances.
namespace gridlock::engine {

struct CoverProblem {
    int cells = 0;
    // Cells that must be dominated.
    std::vector<int> target;
    // pair_cover[i * cells + j]: every cell on a line through i and j,
    // including i and j themselves. Only i != j entries are read.
    std::vector<std::vector<int>> pair_cover;
    // Reject candidates already collinear with two chosen cells.
    bool independent = false;
    // Symmetry group as cell permutations. Always contains the identity.
    std::vector<std::vector<int>> point_group;
    // Optional translation subgroup: translations[v] is the permutation
    // mapping cell v onto cell 0. When present the full group is
    // translations x point_group and solutions are pinned to contain cell 0.
    std::vector<std::vector<int>> translations;
};

struct CoverLimits {
    bool enumerate_all = false;
    std::optional<int64_t> node_budget;
    int threads = 1;
    // Largest size tried by iterative deepening; defaults to all cells.
    std::optional<int> max_size;
    // Smallest size tried; sizes below are assumed infeasible.
    int min_size = 1;
};

struct CoverResult {
    std::optional<int> minimum;
    // One sorted index vector per symmetry class, in lexicographic order.
    std::vector<std::vector<int>> canonical;
    std::vector<int> orbit_sizes;
    // Every distinct minimum solution when enumerate_all, else the first found.
    std::vector<std::vector<int>> witnesses;
    int64_t distinct = 0;
    int64_t classes = 0;
    int64_t nodes = 0;
    bool exhausted = false;
};

[[nodiscard]] CoverResult solve_cover(const CoverProblem &problem, const CoverLimits &limits);

// Largest number of target cells a pair line covers besides the pair itself.
[[nodiscard]] int max_new_per_pair(const CoverProblem &problem);

// Admissible bound on target cells `remaining` further points can newly
// dominate when `chosen` points are already placed.
[[nodiscard]] int64_t coverage_capacity(int chosen, int remaining, int per_pair);

} // namespace gridlock::engine
