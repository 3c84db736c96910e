#include "gridlock/bounds.hpp"
#include "gridlock/torus.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gridlock;

namespace {

std::set<std::pair<int, int>> as_pairs(const TorusSet &s) {
    std::set<std::pair<int, int>> out;
    for (TorusPoint p : s.points())
        out.insert({p.x, p.y});
    return out;
}

bool brute_dominates(const TorusSet &s) {
    return oracle::torus_dominated(s.n(), as_pairs(s)).size() == static_cast<size_t>(s.n() * s.n());
}

TorusSet set_of(int n, std::vector<TorusPoint> pts) { return TorusSet(n, pts); }

// x, y, z on a common line of T_p, p prime: y - x and z - x parallel mod p.
bool prime_collinear(int p, TorusPoint x, TorusPoint y, TorusPoint z) {
    const int64_t ux = y.x - x.x, uy = y.y - x.y, vx = z.x - x.x, vy = z.y - x.y;
    return mod(ux * vy - uy * vx, p) == 0;
}

} // namespace

TEST_CASE("torus lines through a point") {
    const auto five = torus_lines_through(5, {0, 0});
    CHECK(five.size() == 6);
    for (const auto &l : five)
        CHECK(l.points.size() == 5);

    const Torus t4(4);
    const auto d11 = t4.canonical_direction(1, 1);
    const auto d13 = t4.canonical_direction(1, 3);
    CHECK(d11 != d13);
    int holding = 0;
    for (const auto &l : t4.lines_through({0, 0}))
        if ((l.dir == d11 || l.dir == d13) &&
            std::find(l.points.begin(), l.points.end(), TorusPoint{2, 2}) != l.points.end())
            ++holding;
    CHECK(holding == 2);

    const auto two = torus_lines_through(2, {0, 0});
    std::set<std::vector<TorusPoint>> lines;
    for (const auto &l : two)
        lines.insert(l.points);
    CHECK(lines == std::set<std::vector<TorusPoint>>{{{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}});
    CHECK_THROWS_AS((void)t4.canonical_direction(2, 2), TorusError);
}

TEST_CASE("prime torus structure") {
    for (int p : {3, 5, 7, 11, 13}) {
        CAPTURE(p);
        const Torus t(p);
        CHECK(t.line_count() == p * (p + 1));
        for (int i = 0; i < p * p; i += 7) {
            const TorusPoint x{i % p, i / p};
            const auto lines = t.lines_through(x);
            CHECK(lines.size() == static_cast<size_t>(p + 1));
            for (const auto &l : lines)
                CHECK(l.points.size() == static_cast<size_t>(p));
            for (int j = 0; j < p * p; ++j)
                if (j != i)
                    CHECK(t.common_directions(i, j).size() == 1);
        }
        // dominating pairs and collinear triples through a fixed point
        const TorusPoint x{0, 0};
        int64_t pairs = 0, triples = 0;
        for (int a = 1; a < p * p; ++a)
            for (int b = a + 1; b < p * p; ++b) {
                const TorusPoint y{a % p, a / p}, z{b % p, b / p};
                if (!prime_collinear(p, x, y, z))
                    continue;
                ++pairs;
                CHECK(t.common_directions(a, b).size() == 1);
                for (int c = b + 1; c < p * p; ++c)
                    triples += prime_collinear(p, x, y, {c % p, c / p}) && prime_collinear(p, y, z, {c % p, c / p});
            }
        const int64_t q = p;
        CHECK(pairs == (q + 1) * (q - 1) * (q - 2) / 2);
        CHECK(triples == (q + 1) * (q - 1) * (q - 2) * (q - 3) / 6);
    }
}

TEST_CASE("torus mask examples") {
    CHECK(as_pairs(torus_dominated_mask(set_of(5, {{0, 0}, {1, 1}}))) ==
          std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
    CHECK(torus_dominated_mask(set_of(6, {{0, 0}, {0, 3}, {3, 0}, {3, 3}})).full());
    const auto m4 = torus_dominated_mask(set_of(4, {{0, 0}, {2, 2}}));
    CHECK(m4.size() > 4);
    CHECK(as_pairs(m4) == oracle::torus_dominated(4, {{0, 0}, {2, 2}}));
}

TEST_CASE("torus mask agrees with the per-cell line scan") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 7;
        std::uniform_int_distribution<int> coord(0, n - 1);
        std::uniform_int_distribution<int> count(0, 5);
        TorusSet s(n);
        for (int k = count(rng); k > 0; --k)
            s.insert({coord(rng), coord(rng)});
        const auto mask = torus_dominated_mask(s);
        CHECK(as_pairs(mask) == oracle::torus_dominated(n, as_pairs(s)));
        const TorusPoint v{coord(rng), coord(rng)};
        CHECK(torus_dominated_mask(s.shifted(v)) == mask.shifted(v));
    }
}

TEST_CASE("blow up") {
    CHECK(blow_up({2, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 0}}) == set_of(6, {{0, 0}, {0, 3}, {3, 0}, {3, 3}}));
    CHECK(blow_up({3, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 0}}) == set_of(9, {{0, 0}, {0, 3}, {3, 0}, {3, 3}}));
    CHECK(blow_up({5, 2, {{2, 3}}, {2, 3}}) == set_of(10, {{2, 3}}));
}

TEST_CASE("blown-up pairs dominate every lift") {
    std::mt19937 rng(23);
    for (int p : {2, 3, 5})
        for (int q : {2, 3}) {
            const int n = p * q;
            std::uniform_int_distribution<int> coord(0, p - 1);
            int checked = 0;
            while (checked < 100) {
                const TorusPoint y{coord(rng), coord(rng)};
                const TorusPoint a{coord(rng), coord(rng)};
                if (y == TorusPoint{0, 0} || a == TorusPoint{0, 0})
                    continue;
                const auto base = torus_dominated_mask(set_of(p, {{0, 0}, y}));
                if (!base.contains(a))
                    continue;
                ++checked;
                const auto big = torus_dominated_mask(set_of(n, {{0, 0}, {q * y.x, q * y.y}}));
                for (int bx = a.x; bx < n; bx += p)
                    for (int by = a.y; by < n; by += p) {
                        CAPTURE(p);
                        CAPTURE(q);
                        CAPTURE(y.x);
                        CAPTURE(y.y);
                        CAPTURE(bx);
                        CAPTURE(by);
                        CHECK(big.contains({bx, by}));
                    }
            }
        }
}

TEST_CASE("even and 3q constructions") {
    CHECK(construct_even(4).points == set_of(4, {{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
    CHECK(construct_even(2).points.full());
    for (int n = 2; n <= 20; n += 2) {
        const auto s = construct_even(n);
        CHECK(s.size() == 4);
        CHECK(s.verified);
        if (n <= 8)
            CHECK(brute_dominates(s.points));
    }
    CHECK_THROWS_AS((void)construct_even(5), TorusError);

    CHECK(construct_3q(6).points == set_of(6, {{0, 0}, {0, 4}, {4, 0}, {4, 4}}));
    CHECK(construct_3q(9).points == set_of(9, {{0, 0}, {0, 3}, {3, 0}, {3, 3}}));
    CHECK(construct_3q(15).points == set_of(15, {{0, 0}, {0, 10}, {10, 0}, {10, 10}}));
    for (int n : {6, 9, 12, 15, 18, 27}) {
        const auto s = construct_3q(n);
        CHECK(s.size() == 4);
        CHECK(s.verified);
        CHECK(torus_dominated_mask(s.points).full());
    }
    CHECK(brute_dominates(construct_3q(6).points));
    CHECK_THROWS_AS((void)construct_3q(10), TorusError);
}

TEST_CASE("2p construction") {
    CHECK(construct_2p(15, 3).size() == 6);
    CHECK(construct_2p(9, 3).size() == 8);
    CHECK(construct_2p(10, 2).size() == 4);
    CHECK(construct_2p(10).size() == construct_even(10).size());
    for (int n : {10, 14, 15, 21}) {
        const auto s = construct_2p(n);
        CHECK(s.size() == 2 * smallest_prime_factor(n));
        CHECK(torus_dominated_mask(s.points).full());
    }
    for (int n : {9, 25})
        CHECK(construct_2p(n).size() == 2 * smallest_prime_factor(n) + 2);
    CHECK(brute_dominates(construct_2p(9).points));
}

TEST_CASE("apex and exact blow up") {
    const std::vector<TorusPoint> s5{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}};
    CHECK(has_apex(5, s5) == TorusPoint{0, 0});
    CHECK_FALSE(has_apex(3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    const std::vector<TorusPoint> t2{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(has_apex(2, t2).has_value());

    const auto t25 = blow_up_exact(5, 25, s5, {0, 0});
    CHECK(t25.size() == 7);
    CHECK(torus_dominated_mask(t25.points).full());
    const auto t15 = blow_up_exact(5, 15, s5, {0, 0});
    CHECK(t15.size() == 9);
    CHECK(torus_dominated_mask(t15.points).full());
    const auto t4 = blow_up_exact(2, 4, t2, {0, 0});
    CHECK(t4.size() == 4);
    CHECK(brute_dominates(t4.points));
    CHECK_THROWS_AS((void)blow_up_exact(5, 25, s5, {1, 4}), TorusError);
}

TEST_CASE("verification rejects non-dominating sets") {
    CHECK_THROWS_AS((void)verify_torus(set_of(5, {{0, 0}, {1, 1}}), Provenance::file), VerificationError);
    CHECK(verify_torus(set_of(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}), Provenance::file).verified);
}

TEST_CASE("monte carlo") {
    CHECK(monte_carlo_domination(5, 25, 20, 1) == 1.0);
    CHECK(monte_carlo_domination(5, 1, 20, 1) == 0.0);
    CHECK(monte_carlo_domination(11, 12, 50, 9) == monte_carlo_domination(11, 12, 50, 9));
    // binomial model on T_5, m = 3: mean of 1[x in S] + #dominating pairs in S equals mu
    const int n = 5;
    const double prob = 3.0 / 25.0;
    const auto mu = janson_failure_bound(n, 3).mu;
    std::mt19937_64 rng(99);
    std::bernoulli_distribution keep(prob);
    const int samples = 40000;
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < samples; ++s) {
        std::vector<TorusPoint> chosen;
        bool has_origin = false;
        for (int i = 0; i < n * n; ++i)
            if (keep(rng)) {
                if (i == 0)
                    has_origin = true;
                else
                    chosen.push_back({i % n, i / n});
            }
        double x = has_origin;
        for (size_t a = 0; a < chosen.size(); ++a)
            for (size_t b = a + 1; b < chosen.size(); ++b)
                x += prime_collinear(n, {0, 0}, chosen[a], chosen[b]);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::abs(mean - mu) <= 3 * se);
}

TEST_CASE("janson bound against monte carlo on mid-size primes") {
    for (int n : {31, 61, 101}) {
        int m = 1;
        while (janson_failure_bound(n, m).failure_bound >= 0.2)
            ++m;
        const double bound = janson_failure_bound(n, m).failure_bound;
        const int trials = 200;
        const double failure = 1.0 - monte_carlo_domination(n, m, trials, 2024);
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(bound);
        CAPTURE(failure);
        CHECK(failure <= bound + 3 * std::sqrt(bound * (1 - bound) / trials));
    }
}

TEST_CASE("exact torus search") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        const auto o = torus_min_dominating(n);
        REQUIRE(o.minimum_size);
        CHECK(o.exhausted);
        CHECK(*o.minimum_size == oracle::torus_min_dominating(n));
        for (const auto &w : o.witnesses)
            CHECK(brute_dominates(w.points));
    }
    const auto six = torus_min_dominating(6);
    CHECK(*six.minimum_size <= construct_even(6).size());
    CHECK(*six.minimum_size == 4);
    const auto budgeted = torus_min_dominating(9, 50);
    CHECK_FALSE(budgeted.exhausted);
}
