#include "gridlock/cover_engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <climits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gridlock::engine {

namespace {

template <size_t W>
struct Bits {
    std::array<uint64_t, W> w{};

    void set(int i) { w[static_cast<size_t>(i) >> 6] |= uint64_t{1} << (i & 63); }
    [[nodiscard]] bool test(int i) const { return (w[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u; }

    Bits &operator|=(const Bits &o) {
        for (size_t k = 0; k < W; ++k)
            w[k] |= o.w[k];
        return *this;
    }

    // |target \ this|
    [[nodiscard]] int missing(const Bits &target) const {
        int total = 0;
        for (size_t k = 0; k < W; ++k)
            total += std::popcount(target.w[k] & ~w[k]);
        return total;
    }

    [[nodiscard]] int first_missing(const Bits &target) const {
        for (size_t k = 0; k < W; ++k)
            if (uint64_t v = target.w[k] & ~w[k])
                return static_cast<int>(k * 64 + std::countr_zero(v));
        return -1;
    }
};

template <size_t W>
struct Tables {
    int cells;
    bool independent;
    Bits<W> target;
    std::vector<Bits<W>> pair;
    const std::vector<std::vector<int>> *point_group;
    const std::vector<std::vector<int>> *translations;
    // capacity[c][r]
    std::vector<std::vector<int64_t>> capacity;
};

void sort_small(std::vector<int> &v) {
    for (size_t i = 1; i < v.size(); ++i) {
        const int x = v[i];
        size_t j = i;
        for (; j > 0 && v[j - 1] > x; --j)
            v[j] = v[j - 1];
        v[j] = x;
    }
}

struct Shared {
    std::atomic<int64_t> nodes{0};
    std::atomic<bool> out_of_budget{false};
    std::atomic<int> found_branch{INT_MAX};
    std::optional<int64_t> budget;
};

struct BranchResult {
    std::vector<std::vector<int>> canonical;
    std::vector<int> orbit_sizes;
    std::vector<std::vector<int>> witnesses;
};

template <size_t W>
class Worker {
public:
    Worker(const Tables<W> &t, int k, bool enumerate_all, Shared &shared)
        : t_{t}, k_{k}, enumerate_all_{enumerate_all}, shared_{shared}, dom_(static_cast<size_t>(k) + 1),
          batch_{shared.budget ? std::clamp<int64_t>(*shared.budget / 64, 1, 4096) : 4096} {
        chosen_.reserve(static_cast<size_t>(k));
        scratch_.reserve(static_cast<size_t>(k));
    }

    // Explores every set whose smallest cell is `first`.
    BranchResult run_branch(int first, int branch_index) {
        result_ = {};
        branch_ = branch_index;
        stop_ = false;
        chosen_.clear();
        dom_[0] = Bits<W>{};
        place_and_descend(0, first);
        flush_nodes();
        return std::move(result_);
    }

    void flush_nodes() {
        if (local_nodes_) {
            shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
            local_nodes_ = 0;
        }
    }

private:
    bool should_stop() {
        if (stop_)
            return true;
        if (++local_nodes_ >= batch_) {
            const int64_t total = shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed) + local_nodes_;
            local_nodes_ = 0;
            if (shared_.budget && total > *shared_.budget)
                shared_.out_of_budget = true;
        }
        if (shared_.out_of_budget.load(std::memory_order_relaxed))
            stop_ = true;
        else if (!enumerate_all_ && shared_.found_branch.load(std::memory_order_relaxed) < branch_)
            stop_ = true;
        return stop_;
    }

    [[nodiscard]] Bits<W> extend(const Bits<W> &dom, int q) const {
        Bits<W> next = dom;
        next.set(q);
        for (int p : chosen_)
            next |= t_.pair[static_cast<size_t>(p) * t_.cells + q];
        return next;
    }

    // No image of the chosen cells under the group is lexicographically smaller.
    bool canonical_prefix() {
        const auto &group = *t_.point_group;
        if (t_.translations->empty()) {
            for (size_t g = 1; g < group.size(); ++g) {
                if (image_precedes(group[g], nullptr))
                    return false;
            }
            return true;
        }
        for (const auto &d : group) {
            for (int p : chosen_) {
                const auto &shift = (*t_.translations)[static_cast<size_t>(d[static_cast<size_t>(p)])];
                if (image_precedes(d, &shift))
                    return false;
            }
        }
        return true;
    }

    bool image_precedes(const std::vector<int> &g, const std::vector<int> *shift) {
        scratch_.clear();
        for (int p : chosen_) {
            int img = g[static_cast<size_t>(p)];
            if (shift)
                img = (*shift)[static_cast<size_t>(img)];
            scratch_.push_back(img);
        }
        sort_small(scratch_);
        return std::lexicographical_compare(scratch_.begin(), scratch_.end(), chosen_.begin(), chosen_.end());
    }

    void record_leaf() {
        std::vector<std::vector<int>> images;
        auto add = [&](const std::vector<int> &g, const std::vector<int> *shift) {
            std::vector<int> img;
            img.reserve(chosen_.size());
            for (int p : chosen_) {
                int v = g[static_cast<size_t>(p)];
                if (shift)
                    v = (*shift)[static_cast<size_t>(v)];
                img.push_back(v);
            }
            std::sort(img.begin(), img.end());
            images.push_back(std::move(img));
        };
        for (const auto &d : *t_.point_group) {
            if (t_.translations->empty())
                add(d, nullptr);
            else
                for (const auto &shift : *t_.translations)
                    add(d, &shift);
        }
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        result_.canonical.push_back(chosen_);
        result_.orbit_sizes.push_back(static_cast<int>(images.size()));
        if (enumerate_all_) {
            for (auto &img : images)
                result_.witnesses.push_back(std::move(img));
        } else {
            result_.witnesses.push_back(chosen_);
            stop_ = true;
            int cur = shared_.found_branch.load();
            while (branch_ < cur && !shared_.found_branch.compare_exchange_weak(cur, branch_)) { }
        }
    }

    // chosen_ holds c cells with mask dom_[c]; place q as the (c+1)-th cell.
    void place_and_descend(int c, int q) {
        Bits<W> next = extend(dom_[static_cast<size_t>(c)], q);
        chosen_.push_back(q);
        if (canonical_prefix()) {
            if (c + 1 == k_) {
                if (next.missing(t_.target) == 0)
                    record_leaf();
            } else {
                dom_[static_cast<size_t>(c) + 1] = next;
                descend(c + 1, q + 1);
            }
        }
        chosen_.pop_back();
    }

    void descend(int c, int start) {
        if (should_stop())
            return;
        const Bits<W> &dom = dom_[static_cast<size_t>(c)];
        const int remaining = k_ - c;
        const int open = dom.missing(t_.target);
        if (open > t_.capacity[static_cast<size_t>(c)][static_cast<size_t>(remaining)])
            return;
        const int last_start = t_.cells - remaining;
        if (remaining == 1) {
            // The final cell must be the first open cell or lie on a line
            // through it and a chosen cell.
            const int u = dom.first_missing(t_.target);
            Bits<W> reach{};
            if (u >= 0) {
                reach.set(u);
                for (int p : chosen_)
                    reach |= t_.pair[static_cast<size_t>(p) * t_.cells + u];
            }
            for (int q = start; q <= last_start; ++q) {
                if (u >= 0 && !reach.test(q))
                    continue;
                if (t_.independent && dom.test(q))
                    continue;
                Bits<W> next = extend(dom, q);
                if (next.missing(t_.target) != 0)
                    continue;
                chosen_.push_back(q);
                if (canonical_prefix())
                    record_leaf();
                chosen_.pop_back();
                if (stop_)
                    return;
            }
            return;
        }
        for (int q = start; q <= last_start; ++q) {
            if (t_.independent && dom.test(q))
                continue;
            place_and_descend(c, q);
            if (stop_)
                return;
        }
    }

    const Tables<W> &t_;
    int k_;
    bool enumerate_all_;
    Shared &shared_;
    std::vector<Bits<W>> dom_;
    // Nodes counted locally between budget checks.
    int64_t batch_;
    std::vector<int> chosen_;
    std::vector<int> scratch_;
    BranchResult result_;
    int branch_ = 0;
    bool stop_ = false;
    int64_t local_nodes_ = 0;
};

template <size_t W>
Tables<W> build_tables(const CoverProblem &p, int max_k) {
    Tables<W> t;
    t.cells = p.cells;
    t.independent = p.independent;
    for (int c : p.target)
        t.target.set(c);
    t.pair.resize(static_cast<size_t>(p.cells) * p.cells);
    for (size_t i = 0; i < t.pair.size(); ++i)
        for (int c : p.pair_cover[i])
            t.pair[i].set(c);
    t.point_group = &p.point_group;
    t.translations = &p.translations;
    const int per_pair = max_new_per_pair(p);
    t.capacity.assign(static_cast<size_t>(max_k) + 1, std::vector<int64_t>(static_cast<size_t>(max_k) + 2, 0));
    for (int c = 0; c <= max_k; ++c)
        for (int r = 0; r + c <= max_k; ++r)
            t.capacity[static_cast<size_t>(c)][static_cast<size_t>(r)] = coverage_capacity(c, r, per_pair);
    return t;
}

template <size_t W>
CoverResult solve_with(const CoverProblem &problem, const CoverLimits &limits) {
    const int max_k = std::min(limits.max_size.value_or(problem.cells), problem.cells);
    const Tables<W> tables = build_tables<W>(problem, max_k);
    CoverResult out;
    Shared shared;
    shared.budget = limits.node_budget;

    std::vector<int> firsts;
    if (problem.translations.empty())
        for (int q = 0; q < problem.cells; ++q)
            firsts.push_back(q);
    else
        firsts.push_back(0);

    const int threads = std::max(1, limits.threads);
    for (int k = std::max(1, limits.min_size); k <= max_k; ++k) {
        shared.found_branch = INT_MAX;
        std::vector<BranchResult> per_branch(firsts.size());
        std::atomic<size_t> next_branch{0};
        auto work = [&] {
            Worker<W> worker(tables, k, limits.enumerate_all, shared);
            for (size_t b = next_branch++; b < firsts.size(); b = next_branch++) {
                if (firsts[b] > problem.cells - k)
                    continue;
                if (!limits.enumerate_all && shared.found_branch.load() < static_cast<int>(b))
                    continue;
                if (shared.out_of_budget)
                    break;
                per_branch[b] = worker.run_branch(firsts[b], static_cast<int>(b));
            }
            worker.flush_nodes();
        };
        if (threads == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < threads; ++i)
                pool.emplace_back(work);
            for (auto &th : pool)
                th.join();
        }

        bool found = false;
        for (auto &br : per_branch) {
            if (br.canonical.empty())
                continue;
            found = true;
            for (size_t i = 0; i < br.canonical.size(); ++i) {
                out.canonical.push_back(std::move(br.canonical[i]));
                out.orbit_sizes.push_back(br.orbit_sizes[i]);
            }
            for (auto &w : br.witnesses)
                out.witnesses.push_back(std::move(w));
            if (!limits.enumerate_all)
                break;
        }
        if (found) {
            out.minimum = k;
            break;
        }
        if (shared.out_of_budget)
            break;
    }
    out.nodes = shared.nodes.load();
    out.exhausted = !shared.out_of_budget && out.minimum.has_value();
    if (!limits.enumerate_all && shared.out_of_budget && out.minimum)
        out.exhausted = false;

    // Sort classes with their orbit sizes, and witnesses, lexicographically.
    std::vector<size_t> order(out.canonical.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return out.canonical[a] < out.canonical[b]; });
    std::vector<std::vector<int>> canonical;
    std::vector<int> orbits;
    for (size_t i : order) {
        canonical.push_back(std::move(out.canonical[i]));
        orbits.push_back(out.orbit_sizes[i]);
    }
    out.canonical = std::move(canonical);
    out.orbit_sizes = std::move(orbits);
    std::sort(out.witnesses.begin(), out.witnesses.end());
    out.classes = static_cast<int64_t>(out.canonical.size());
    for (int o : out.orbit_sizes)
        out.distinct += o;
    return out;
}

} // namespace

int max_new_per_pair(const CoverProblem &problem) {
    std::vector<char> is_target(static_cast<size_t>(problem.cells), 0);
    for (int c : problem.target)
        is_target[static_cast<size_t>(c)] = 1;
    int best = 0;
    for (int i = 0; i < problem.cells; ++i) {
        for (int j = i + 1; j < problem.cells; ++j) {
            int count = 0;
            for (int c : problem.pair_cover[static_cast<size_t>(i) * problem.cells + j])
                if (c != i && c != j && is_target[static_cast<size_t>(c)])
                    ++count;
            best = std::max(best, count);
        }
    }
    return best;
}

int64_t coverage_capacity(int chosen, int remaining, int per_pair) {
    int64_t total = 0;
    for (int j = 1; j <= remaining; ++j)
        total += static_cast<int64_t>(chosen + j - 1) * per_pair + 1;
    return total;
}

CoverResult solve_cover(const CoverProblem &problem, const CoverLimits &limits) {
    if (problem.cells <= 0)
        throw std::invalid_argument("cover problem without cells");
    if (problem.pair_cover.size() != static_cast<size_t>(problem.cells) * problem.cells)
        throw std::invalid_argument("pair table has the wrong shape");
    if (problem.point_group.empty())
        throw std::invalid_argument("symmetry group must contain the identity");
    const int words = (problem.cells + 63) / 64;
    switch (words) {
    case 1: return solve_with<1>(problem, limits);
    case 2: return solve_with<2>(problem, limits);
    case 3: return solve_with<3>(problem, limits);
    case 4: return solve_with<4>(problem, limits);
    case 5:
    case 6: return solve_with<6>(problem, limits);
    case 7:
    case 8: return solve_with<8>(problem, limits);
    default:
        if (words <= 16)
            return solve_with<16>(problem, limits);
    }
    throw std::invalid_argument("cover problem too large for exact search (" + std::to_string(problem.cells) +
                                " cells)");
}

} // namespace gridlock::engine
