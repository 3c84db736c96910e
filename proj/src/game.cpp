#include "gridlock/game.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <unordered_map>

namespace gridlock {

std::string to_string(Player p) { return p == Player::first ? "first" : "second"; }

Player parse_player(const std::string &name) {
    if (name == "first")
        return Player::first;
    if (name == "second")
        return Player::second;
    throw GameError("unknown player '" + name + "'");
}

GameState::GameState(BoardSize board) : placed_{board}, to_move_{Player::first} { }

GameState::GameState(PointSet placed, Player to_move) : placed_{std::move(placed)}, to_move_{to_move} {
    if (placed_.region().margin != 0)
        throw GameError("game states live on the plain board");
    if (!is_general_position(placed_))
        throw GameError("placed points contain a collinear triple");
    const Player expected = placed_.size() % 2 == 0 ? Player::first : Player::second;
    if (to_move_ != expected)
        throw GameError("side to move does not match the number of placed points");
}

std::optional<std::pair<GridPoint, GridPoint>> GameState::blocking_pair(GridPoint p) const {
    const auto pts = placed_.points();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (collinear(pts[i], pts[j], p))
                return std::pair{pts[i], pts[j]};
    return std::nullopt;
}

std::string GameState::illegal_reason(GridPoint p) const {
    if (!placed_.region().on_board(p))
        return "out_of_range";
    if (placed_.contains(p))
        return "occupied";
    if (blocking_pair(p))
        return "collinear";
    return {};
}

bool GameState::is_legal(GridPoint p) const { return illegal_reason(p).empty(); }

GameState GameState::play(GridPoint p) const {
    const auto reason = illegal_reason(p);
    if (!reason.empty())
        throw GameError("illegal move (" + std::to_string(p.x) + ", " + std::to_string(p.y) + "): " + reason);
    GameState next = *this;
    next.placed_.insert(p);
    next.to_move_ = other(to_move_);
    return next;
}

std::vector<GridPoint> legal_moves(const GameState &state) {
    const auto dom = dominated_mask(state.board(), state.placed());
    std::vector<GridPoint> moves;
    const Region region = state.placed().region();
    for (int i = 0; i < region.cells(); ++i)
        if (!dom.test(i))
            moves.push_back(region.point(i));
    return moves;
}

namespace {

constexpr int max_game_side = 11;

struct Bits {
    std::array<uint64_t, 2> w{};

    void set(int i) { w[static_cast<size_t>(i >> 6)] |= uint64_t{1} << (i & 63); }
    [[nodiscard]] bool test(int i) const { return (w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u; }
    Bits &operator|=(const Bits &o) {
        w[0] |= o.w[0];
        w[1] |= o.w[1];
        return *this;
    }
    bool operator==(const Bits &) const = default;
};

// a comes before b in canonical order: the lowest differing cell is in a.
bool bits_precede(const Bits &a, const Bits &b) {
    for (size_t k = 0; k < 2; ++k) {
        const uint64_t diff = a.w[k] ^ b.w[k];
        if (diff)
            return (a.w[k] & (diff & -diff)) != 0;
    }
    return false;
}

struct BitsHash {
    size_t operator()(const Bits &b) const {
        return std::hash<uint64_t>{}(b.w[0] * 0x9e3779b97f4a7c15ull ^ (b.w[1] + 0x632be59bd9b4e019ull));
    }
};

struct OutOfBudget { };

class Solver {
public:
    Solver(BoardSize board, SolveOptions options) : board_{board}, options_{options} {
        if (board.n() > max_game_side)
            throw GameError("game solver supports boards up to " + std::to_string(max_game_side));
        const int cells = board.cells();
        const Region region{board, 0};
        line_.resize(static_cast<size_t>(cells * cells));
        for (int i = 0; i < cells; ++i)
            for (int j = 0; j < cells; ++j) {
                if (i == j)
                    continue;
                const GridPoint a = region.point(i);
                auto &line = line_[static_cast<size_t>(i * cells + j)];
                for (GridPoint q : grid_line_points(board, a, primitive_direction(a, region.point(j))))
                    line.set(region.index(q));
            }
        for (size_t t = 0; t < all_symmetries.size(); ++t)
            perm_[t] = symmetry_permutation(region, all_symmetries[t]);
        order_.resize(static_cast<size_t>(cells));
        for (int i = 0; i < cells; ++i)
            order_[static_cast<size_t>(i)] = i;
        const int twice_centre = board.n() + 1;
        auto spread = [&](int i) {
            const GridPoint p = region.point(i);
            const int dx = 2 * p.x - twice_centre;
            const int dy = 2 * p.y - twice_centre;
            return dx * dx + dy * dy;
        };
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return spread(a) < spread(b); });
    }

    struct Position {
        Bits placed;
        Bits dom;
        std::vector<int> points;
    };

    Position position(const PointSet &placed) const {
        Position pos;
        for (int i : placed.indices())
            pos = child(pos, i);
        return pos;
    }

    Position child(const Position &pos, int move) const {
        Position next = pos;
        next.placed.set(move);
        next.dom.set(move);
        const auto cells = static_cast<size_t>(board_.cells());
        for (int q : pos.points)
            next.dom |= line_[static_cast<size_t>(q) * cells + static_cast<size_t>(move)];
        next.points.push_back(move);
        return next;
    }

    std::vector<int> moves(const Position &pos, bool centre_first) const {
        std::vector<int> out;
        const int cells = board_.cells();
        if (centre_first) {
            for (int i : order_)
                if (!pos.dom.test(i))
                    out.push_back(i);
        } else {
            for (int i = 0; i < cells; ++i)
                if (!pos.dom.test(i))
                    out.push_back(i);
        }
        return out;
    }

    // True iff the side to move wins.
    bool wins(const Position &pos) {
        tick();
        Bits key;
        if (options_.use_table) {
            key = canonical(pos);
            if (auto it = table_.find(key); it != table_.end())
                return it->second;
        }
        bool result = false;
        for (int m : moves(pos, true))
            if (!wins(child(pos, m))) {
                result = true;
                break;
            }
        if (options_.use_table)
            table_.emplace(key, result);
        return result;
    }

    // Plies until the game ends when the winner hurries and the loser stalls.
    int length(const Position &pos) {
        tick();
        const Bits key = canonical(pos);
        if (auto it = lengths_.find(key); it != lengths_.end())
            return it->second;
        const bool mover_wins = wins(pos);
        int best = mover_wins ? std::numeric_limits<int>::max() : 0;
        for (int m : moves(pos, true)) {
            const Position next = child(pos, m);
            if (mover_wins) {
                if (!wins(next))
                    best = std::min(best, 1 + length(next));
            } else {
                best = std::max(best, 1 + length(next));
            }
        }
        lengths_.emplace(key, best);
        return best;
    }

    [[nodiscard]] int64_t nodes() const { return nodes_; }

private:
    void tick() {
        ++nodes_;
        if (options_.node_budget && nodes_ > *options_.node_budget)
            throw OutOfBudget{};
    }

    Bits canonical(const Position &pos) const {
        Bits best = pos.placed;
        for (size_t t = 1; t < perm_.size(); ++t) {
            Bits image;
            for (int i : pos.points)
                image.set(perm_[t][static_cast<size_t>(i)]);
            if (bits_precede(image, best))
                best = image;
        }
        return best;
    }

    BoardSize board_;
    SolveOptions options_;
    std::vector<Bits> line_;
    std::array<std::vector<int>, 8> perm_;
    std::vector<int> order_;
    std::unordered_map<Bits, bool, BitsHash> table_;
    std::unordered_map<Bits, int, BitsHash> lengths_;
    int64_t nodes_ = 0;
};

} // namespace

std::optional<std::vector<GridPoint>> winning_moves(const GameState &state, SolveOptions options) {
    Solver solver(state.board(), options);
    const Region region{state.board(), 0};
    const auto pos = solver.position(state.placed());
    std::vector<GridPoint> out;
    try {
        for (int m : solver.moves(pos, false))
            if (!solver.wins(solver.child(pos, m)))
                out.push_back(region.point(m));
    } catch (const OutOfBudget &) {
        return std::nullopt;
    }
    return out;
}

GameVerdict solve(const GameState &state, SolveOptions options) {
    Solver solver(state.board(), options);
    const Region region{state.board(), 0};
    const auto pos = solver.position(state.placed());
    GameVerdict verdict;
    try {
        const bool mover_wins = solver.wins(pos);
        verdict.winner = mover_wins ? state.to_move() : other(state.to_move());
        if (mover_wins)
            for (int m : solver.moves(pos, false))
                if (!solver.wins(solver.child(pos, m))) {
                    verdict.principal_move = region.point(m);
                    break;
                }
    } catch (const OutOfBudget &) {
        verdict.winner.reset();
        verdict.principal_move.reset();
    }
    verdict.nodes = solver.nodes();
    return verdict;
}

GameVerdict solve(int n, SolveOptions options) { return solve(GameState(BoardSize(n)), options); }

std::optional<EngineMove> engine_move(const GameState &state, std::optional<int64_t> budget) {
    Solver solver(state.board(), SolveOptions{budget, true});
    const Region region{state.board(), 0};
    const auto pos = solver.position(state.placed());
    if (solver.moves(pos, false).empty())
        return std::nullopt;
    try {
        const auto moves = solver.moves(pos, false);
        for (int m : moves)
            if (!solver.wins(solver.child(pos, m)))
                return EngineMove{region.point(m), true};
        int chosen = moves.front();
        int longest = -1;
        for (int m : moves) {
            const int len = solver.length(solver.child(pos, m));
            if (len > longest) {
                longest = len;
                chosen = m;
            }
        }
        return EngineMove{region.point(chosen), true};
    } catch (const OutOfBudget &) {
        return EngineMove{region.point(solver.moves(pos, true).front()), false};
    }
}

std::optional<GridPoint> best_move(const GameState &state, std::optional<int64_t> budget) {
    const auto m = engine_move(state, budget);
    if (!m)
        return std::nullopt;
    return m->move;
}

GridPoint mirror_move(BoardSize board, GridPoint last) {
    if (board.n() % 2 != 0)
        throw GameError("mirror strategy needs an even board");
    return {board.n() + 1 - last.x, board.n() + 1 - last.y};
}

} // namespace gridlock
