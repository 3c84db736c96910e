#include "gridlock/torus.hpp"

#include "gridlock/bounds.hpp"
#include "gridlock/cover_engine.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <limits>
#include <random>

namespace gridlock {

TorusSet::TorusSet(int n) : n_{n}, words_(static_cast<size_t>((n * n + 63) / 64), 0) {
    if (n < 1)
        throw TorusError("torus side must be at least 1");
}

TorusSet::TorusSet(int n, const std::vector<TorusPoint> &points) : TorusSet(n) {
    for (auto p : points)
        insert(p);
}

void TorusSet::insert(TorusPoint p) {
    set(index({mod(p.x, n_), mod(p.y, n_)}));
}

bool TorusSet::contains(TorusPoint p) const {
    return test(index({mod(p.x, n_), mod(p.y, n_)}));
}

int TorusSet::size() const {
    int total = 0;
    for (auto w : words_)
        total += std::popcount(w);
    return total;
}

std::vector<int> TorusSet::indices() const {
    std::vector<int> out;
    for (size_t w = 0; w < words_.size(); ++w)
        for (uint64_t v = words_[w]; v; v &= v - 1)
            out.push_back(static_cast<int>(w * 64 + std::countr_zero(v)));
    return out;
}

std::vector<TorusPoint> TorusSet::points() const {
    std::vector<TorusPoint> out;
    for (int i : indices())
        out.push_back(point(i));
    return out;
}

TorusSet TorusSet::shifted(TorusPoint v) const {
    TorusSet out(n_);
    for (auto p : points())
        out.insert({p.x + v.x, p.y + v.y});
    return out;
}

Torus::Torus(int n) : n_{n} {
    if (n < 2)
        throw TorusError("torus side must be at least 2");
    std::vector<char> seen(static_cast<size_t>(n * n), 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if ((a == 0 && b == 0) || std::gcd(std::gcd(a, b), n) != 1)
                continue;
            const TorusDirection d = canonical_direction(a, b);
            auto &mark = seen[static_cast<size_t>(d.b * n + d.a)];
            if (!mark) {
                mark = 1;
                directions_.push_back(d);
            }
        }
    }
    std::sort(directions_.begin(), directions_.end());
    label_.assign(directions_.size(), std::vector<int>(static_cast<size_t>(n * n), -1));
    members_.resize(directions_.size());
    for (size_t k = 0; k < directions_.size(); ++k) {
        const auto d = directions_[k];
        for (int c = 0; c < n * n; ++c) {
            if (label_[k][static_cast<size_t>(c)] >= 0)
                continue;
            const int id = static_cast<int>(members_[k].size());
            std::vector<int> line;
            int x = c % n, y = c / n;
            for (int t = 0; t < n; ++t) {
                const int cell = y * n + x;
                label_[k][static_cast<size_t>(cell)] = id;
                line.push_back(cell);
                x = (x + d.a) % n;
                y = (y + d.b) % n;
            }
            std::sort(line.begin(), line.end());
            members_[k].push_back(std::move(line));
        }
    }
}

TorusDirection Torus::canonical_direction(int a, int b) const {
    a = mod(a, n_);
    b = mod(b, n_);
    if (std::gcd(std::gcd(a, b), n_) != 1)
        throw TorusError("(" + std::to_string(a) + "," + std::to_string(b) + ") generates no torus line mod " +
                         std::to_string(n_));
    TorusDirection best{a, b};
    for (int u = 2; u < n_; ++u) {
        if (std::gcd(u, n_) != 1)
            continue;
        const TorusDirection g{static_cast<int>(int64_t{u} * a % n_), static_cast<int>(int64_t{u} * b % n_)};
        best = std::min(best, g);
    }
    return best;
}

std::vector<TorusLine> Torus::lines_through(TorusPoint p) const {
    const int cell = mod(p.y, n_) * n_ + mod(p.x, n_);
    std::vector<TorusLine> out;
    for (size_t k = 0; k < directions_.size(); ++k) {
        TorusLine line{{mod(p.x, n_), mod(p.y, n_)}, directions_[k], {}};
        for (int c : line_cells(k, cell))
            line.points.push_back({c % n_, c / n_});
        out.push_back(std::move(line));
    }
    return out;
}

std::vector<size_t> Torus::common_directions(int i, int j) const {
    std::vector<size_t> out;
    for (size_t k = 0; k < directions_.size(); ++k)
        if (label_[k][static_cast<size_t>(i)] == label_[k][static_cast<size_t>(j)])
            out.push_back(k);
    return out;
}

TorusSet Torus::dominated_mask(const TorusSet &s) const {
    if (s.n() != n_)
        throw TorusError("point set lives on another torus");
    TorusSet out = s;
    const auto cells = s.indices();
    if (cells.size() < 2)
        return out;
    std::vector<int> count(static_cast<size_t>(n_));
    for (size_t k = 0; k < directions_.size(); ++k) {
        std::fill(count.begin(), count.end(), 0);
        for (int c : cells)
            ++count[static_cast<size_t>(label_[k][static_cast<size_t>(c)])];
        for (int id = 0; id < n_; ++id)
            if (count[static_cast<size_t>(id)] >= 2)
                for (int c : members_[k][static_cast<size_t>(id)])
                    out.set(c);
    }
    return out;
}

std::vector<TorusLine> torus_lines_through(int n, TorusPoint p) {
    return Torus(n).lines_through(p);
}

TorusSet torus_dominated_mask(const TorusSet &s) {
    if (s.n() < 2)
        return s;
    return Torus(s.n()).dominated_mask(s);
}

TorusSolution verify_torus(TorusSet s, Provenance provenance) {
    const int n = s.n();
    TorusSolution sol;
    sol.n = n;
    sol.provenance = provenance;
    if (n <= torus_verification_limit) {
        const bool ok = n == 1 ? s.full() : Torus(n).is_dominating(s);
        if (!ok)
            throw VerificationError("point set does not dominate T_" + std::to_string(n));
        sol.verified = true;
    }
    sol.points = std::move(s);
    return sol;
}

TorusSet blow_up(const BlowupSpec &spec) {
    if (spec.p < 2 || spec.q < 1)
        throw TorusError("blow-up needs p >= 2 and q >= 1");
    const int n = spec.p * spec.q;
    TorusSet out(n);
    const TorusPoint f{mod(spec.fixed.x, spec.p), mod(spec.fixed.y, spec.p)};
    out.insert(f);
    for (auto y : spec.base_set) {
        const TorusPoint yy{mod(y.x, spec.p), mod(y.y, spec.p)};
        if (yy == f)
            continue;
        out.insert({f.x + spec.q * (yy.x - f.x), f.y + spec.q * (yy.y - f.y)});
    }
    return out;
}

int smallest_prime_factor(int n) {
    if (n < 2)
        throw TorusError("no prime factor below 2");
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return d;
    return n;
}

TorusSolution construct_even(int n) {
    if (n < 2 || n % 2)
        throw TorusError("construct_even needs an even side, got " + std::to_string(n));
    const int h = n / 2;
    return verify_torus(TorusSet(n, {{0, 0}, {0, h}, {h, 0}, {h, h}}), Provenance::construction);
}

TorusSolution construct_3q(int n) {
    if (n < 3 || n % 3)
        throw TorusError("construct_3q needs a side divisible by 3, got " + std::to_string(n));
    // n = 3^j * n0 with n0 = 3 q0 and 3 not dividing q0.
    int scale = 1;
    int n0 = n;
    while ((n0 / 3) % 3 == 0) {
        n0 /= 3;
        scale *= 3;
    }
    const int q0 = n0 / 3;
    const int t = q0 % 3;
    const TorusSet inner = blow_up({3, q0, {{0, 0}, {0, t}, {t, 0}, {t, t}}, {0, 0}});
    TorusSet s(n);
    for (auto p : inner.points())
        s.insert({p.x * scale, p.y * scale});
    return verify_torus(std::move(s), Provenance::construction);
}

TorusSolution construct_2p(int n, std::optional<int> p_opt) {
    const int p = p_opt.value_or(n >= 2 ? smallest_prime_factor(n) : 0);
    if (p < 2 || !is_prime(p) || n % p)
        throw TorusError("construct_2p needs a prime p dividing n");
    const int q = n / p;
    if (q < 2)
        throw TorusError("construct_2p needs n = p q with q >= 2");
    TorusSet s(n);
    for (int a = 0; a < p; ++a) {
        s.insert({0, a});
        s.insert({q, a});
    }
    if (std::gcd(p, q) > 1) {
        s.insert({0, q});
        s.insert({0, 1 + q});
    }
    return verify_torus(std::move(s), Provenance::construction);
}

namespace {

bool is_apex(const Torus &torus, const std::vector<TorusPoint> &s, TorusPoint x) {
    const int p = torus.n();
    TorusSet covered(p);
    const int xi = mod(x.y, p) * p + mod(x.x, p);
    covered.set(xi);
    for (auto y : s) {
        const int yi = mod(y.y, p) * p + mod(y.x, p);
        if (yi == xi)
            continue;
        for (size_t d : torus.common_directions(xi, yi))
            for (int c : torus.line_cells(d, xi))
                covered.set(c);
    }
    return covered.full();
}

bool is_power_of(int n, int p) {
    while (n % p == 0)
        n /= p;
    return n == 1;
}

} // namespace

std::optional<TorusPoint> has_apex(int p, const std::vector<TorusPoint> &s) {
    if (!is_prime(p))
        throw TorusError("has_apex needs a prime side, got " + std::to_string(p));
    const Torus torus(p);
    std::vector<TorusPoint> sorted = s;
    std::sort(sorted.begin(), sorted.end(), [](TorusPoint a, TorusPoint b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    for (auto x : sorted)
        if (is_apex(torus, s, x))
            return x;
    return std::nullopt;
}

TorusSolution blow_up_exact(int p, int n, const std::vector<TorusPoint> &s, TorusPoint apex) {
    if (!is_prime(p))
        throw TorusError("blow_up_exact needs a prime base side");
    if (n % p || n < p)
        throw TorusError("blow_up_exact needs p | n");
    if (std::find(s.begin(), s.end(), apex) == s.end() || !is_apex(Torus(p), s, apex))
        throw TorusError("given point is not an apex of the base set");
    const int q = n / p;
    TorusSet out(n);
    for (auto y : s)
        out.insert({q * mod(y.x - apex.x, p), q * mod(y.y - apex.y, p)});
    if (!is_power_of(n, p)) {
        out.insert({0, 1});
        out.insert({0, q + 1});
    }
    return verify_torus(std::move(out), Provenance::construction);
}

double monte_carlo_domination(int n, int m, int trials, uint64_t seed) {
    if (trials < 1)
        throw TorusError("monte_carlo_domination needs at least one trial");
    const int cells = n * n;
    if (m < 0 || m > cells)
        throw TorusError("sample size must lie in [0, n^2]");
    std::optional<Torus> torus;
    if (n >= 2)
        torus.emplace(n);
    std::vector<int> order(static_cast<size_t>(cells));
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed ^ static_cast<uint64_t>(t));
        std::iota(order.begin(), order.end(), 0);
        TorusSet s(n);
        for (int i = 0; i < m; ++i) {
            // Unbiased draw from [i, cells).
            const uint64_t range = static_cast<uint64_t>(cells - i);
            const uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % range;
            uint64_t r;
            do
                r = rng();
            while (r >= limit);
            std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(i) + r % range]);
            s.set(order[static_cast<size_t>(i)]);
        }
        const bool dominates = torus ? torus->is_dominating(s) : s.full();
        hits += dominates ? 1 : 0;
    }
    return static_cast<double>(hits) / trials;
}

TorusSearchOutcome torus_min_dominating(int n, std::optional<int64_t> node_budget, bool enumerate_all) {
    const Torus torus(n);
    const int cells = n * n;
    engine::CoverProblem problem;
    problem.cells = cells;
    problem.target.resize(static_cast<size_t>(cells));
    std::iota(problem.target.begin(), problem.target.end(), 0);
    problem.pair_cover.resize(static_cast<size_t>(cells) * cells);
    for (int i = 0; i < cells; ++i) {
        for (int j = i + 1; j < cells; ++j) {
            std::vector<int> cover;
            for (size_t d : torus.common_directions(i, j))
                for (int c : torus.line_cells(d, i))
                    cover.push_back(c);
            std::sort(cover.begin(), cover.end());
            cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
            problem.pair_cover[static_cast<size_t>(j) * cells + i] = cover;
            problem.pair_cover[static_cast<size_t>(i) * cells + j] = std::move(cover);
        }
    }
    // Dihedral maps of Z_n^2; all preserve lines.
    const int maps[8][4] = {{1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
                            {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, -1, -1, 0}};
    for (const auto &m : maps) {
        std::vector<int> perm(static_cast<size_t>(cells));
        for (int c = 0; c < cells; ++c) {
            const int x = c % n, y = c / n;
            perm[static_cast<size_t>(c)] = mod(m[2] * x + m[3] * y, n) * n + mod(m[0] * x + m[1] * y, n);
        }
        problem.point_group.push_back(std::move(perm));
    }
    for (int v = 0; v < cells; ++v) {
        const int vx = v % n, vy = v / n;
        std::vector<int> perm(static_cast<size_t>(cells));
        for (int c = 0; c < cells; ++c)
            perm[static_cast<size_t>(c)] = mod(c / n - vy, n) * n + mod(c % n - vx, n);
        problem.translations.push_back(std::move(perm));
    }

    engine::CoverLimits limits;
    limits.node_budget = node_budget;
    limits.enumerate_all = enumerate_all;
    const auto raw = engine::solve_cover(problem, limits);

    auto to_solution = [&](const std::vector<int> &cellset) {
        TorusSet s(n);
        for (int c : cellset)
            s.set(c);
        return verify_torus(std::move(s), Provenance::search);
    };
    TorusSearchOutcome out;
    out.minimum_size = raw.minimum;
    out.distinct_count = raw.distinct;
    out.symmetry_class_count = raw.classes;
    out.nodes_explored = raw.nodes;
    out.exhausted = raw.exhausted;
    for (const auto &w : raw.witnesses)
        out.witnesses.push_back(to_solution(w));
    for (const auto &c : raw.canonical)
        out.classes.push_back(to_solution(c));
    return out;
}

} // namespace gridlock
