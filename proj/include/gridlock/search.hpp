#pragma once

#include "gridlock/cover_engine.hpp"
#include "gridlock/domination.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gridlock {

struct SearchConfig {
    BoardSize board{2};
    Mode mode = Mode::independent;
    // Candidate cells range over [1 - margin, n + margin]^2; only the board
    // itself has to be dominated.
    int margin = 0;
    bool enumerate_all = false;
    std::optional<int64_t> node_budget{};
    std::optional<int> thread_count{};
};

struct SearchOutcome {
    // Empty when the budget ran out before any dominating set was found.
    std::optional<int> minimum_size;
    // Every distinct minimum solution when enumerating, else one.
    std::vector<Solution> witnesses;
    // One representative per symmetry class (its canonical form).
    std::vector<Solution> classes;
    int64_t distinct_count = 0;
    int64_t symmetry_class_count = 0;
    int64_t nodes_explored = 0;
    bool exhausted = false;
};

class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative deepening over the target size with row-major branching,
// canonical-prefix symmetry breaking and an admissible coverage bound.
[[nodiscard]] SearchOutcome min_dominating(const SearchConfig &config);
// Same search with candidates allowed outside the board; requires margin >= 1.
[[nodiscard]] SearchOutcome min_dominating_exterior(const SearchConfig &config);

// Incidence structure of the (widened) grid for the generic engine.
[[nodiscard]] engine::CoverProblem grid_cover_problem(BoardSize board, int margin, Mode mode);

struct AugmentBudget {
    int64_t node_budget = 2'000'000;
};

// Independent dominating sets built from symmetric orbits of cells: greedy
// seeding by marginal coverage, one-orbit swap repair, then a budgeted exact
// pass over orbit unions smaller than the best set found. Upper bound only.
// Throws SearchError when nothing dominating is found.
[[nodiscard]] Solution symmetric_augment(BoardSize board, AugmentBudget budget = {});

} // namespace gridlock
