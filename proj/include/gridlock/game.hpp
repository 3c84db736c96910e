#pragma once

#include "gridlock/domination.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Placement game on the n x n grid: players alternately add a point keeping
// the set free of collinear triples; the player who cannot move loses.
namespace gridlock {

enum class Player { first, second };

[[nodiscard]] inline Player other(Player p) { return p == Player::first ? Player::second : Player::first; }
[[nodiscard]] std::string to_string(Player p);
[[nodiscard]] Player parse_player(const std::string &name);

class GameError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GameState {
public:
    explicit GameState(BoardSize board);
    // Throws GameError unless placed is in general position and to_move
    // matches the parity of |placed|.
    GameState(PointSet placed, Player to_move);

    [[nodiscard]] BoardSize board() const { return placed_.board(); }
    [[nodiscard]] const PointSet &placed() const { return placed_; }
    [[nodiscard]] Player to_move() const { return to_move_; }

    [[nodiscard]] bool is_legal(GridPoint p) const;
    // Why p is illegal: "out_of_range", "occupied" or "collinear"; empty if legal.
    [[nodiscard]] std::string illegal_reason(GridPoint p) const;
    // Two placed points forming a line through p, if any.
    [[nodiscard]] std::optional<std::pair<GridPoint, GridPoint>> blocking_pair(GridPoint p) const;
    // Throws GameError on illegal moves.
    [[nodiscard]] GameState play(GridPoint p) const;

    bool operator==(const GameState &) const = default;

private:
    PointSet placed_;
    Player to_move_;
};

// Empty cells whose addition keeps general position, row-major.
[[nodiscard]] std::vector<GridPoint> legal_moves(const GameState &state);

struct GameVerdict {
    // Empty when the node budget ran out.
    std::optional<Player> winner;
    std::optional<GridPoint> principal_move;
    int64_t nodes = 0;
};

struct SolveOptions {
    std::optional<int64_t> node_budget;
    // Transposition table keyed on canonical form; off gives a plain minimax.
    bool use_table = true;
};

// Exact outcome under optimal normal play from the given state (boards up to 11).
[[nodiscard]] GameVerdict solve(const GameState &state, SolveOptions options = {});
[[nodiscard]] GameVerdict solve(int n, SolveOptions options = {});

// All moves after which the mover still wins, row-major. Empty when the mover
// loses; nullopt when the budget ran out.
[[nodiscard]] std::optional<std::vector<GridPoint>> winning_moves(const GameState &state,
                                                                  SolveOptions options = {});

struct EngineMove {
    GridPoint move;
    // False when the budget ran out and the move came from move ordering alone.
    bool exact = true;
};

// Win-preserving move with the lowest row-major index when one exists;
// otherwise the move that postpones the opponent's fastest win the longest.
[[nodiscard]] std::optional<EngineMove> engine_move(const GameState &state, std::optional<int64_t> budget);
[[nodiscard]] std::optional<GridPoint> best_move(const GameState &state, std::optional<int64_t> budget);

// Point reflection through the centre; even n only.
[[nodiscard]] GridPoint mirror_move(BoardSize board, GridPoint last);

} // namespace gridlock
