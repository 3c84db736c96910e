#include "gridlock/bounds.hpp"
#include "gridlock/search.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace gridlock;

namespace {

SearchOutcome run(int n, Mode mode, bool all, int margin = 0, std::optional<int> threads = std::nullopt) {
    SearchConfig c;
    c.board = BoardSize(n);
    c.mode = mode;
    c.enumerate_all = all;
    c.margin = margin;
    c.thread_count = threads;
    return margin > 0 ? min_dominating_exterior(c) : min_dominating(c);
}

void check_witnesses(const SearchOutcome &o, Mode mode) {
    for (const auto &s : o.witnesses) {
        CHECK(s.size() == *o.minimum_size);
        CHECK(is_dominating(s.board(), s.points()));
        if (mode == Mode::independent)
            CHECK(oracle::general_position(s.points().points()));
    }
}

} // namespace

TEST_CASE("spec examples") {
    const auto n3 = run(3, Mode::independent, true);
    CHECK(n3.minimum_size == 4);
    CHECK(n3.distinct_count == 5);
    CHECK(n3.symmetry_class_count == 2);
    CHECK(n3.exhausted);
    CHECK(run(7, Mode::general, false).minimum_size == 7);
    CHECK(run(2, Mode::general, true).minimum_size == 4);
    CHECK(run(2, Mode::independent, true).minimum_size == 4);
}

TEST_CASE("search matches naive subset enumeration for n <= 4") {
    for (int n = 2; n <= 4; ++n)
        for (Mode mode : {Mode::general, Mode::independent}) {
            CAPTURE(n);
            const auto o = run(n, mode, true);
            const auto expected = oracle::min_dominating(n, mode == Mode::independent);
            CHECK(*o.minimum_size == expected.minimum);
            CHECK(o.distinct_count == expected.distinct);
            CHECK(o.symmetry_class_count == expected.classes);
            CHECK(static_cast<int64_t>(o.witnesses.size()) == o.distinct_count);
            check_witnesses(o, mode);
        }
}

TEST_CASE("symmetry accounting") {
    for (int n = 3; n <= 6; ++n)
        for (Mode mode : {Mode::general, Mode::independent}) {
            const auto o = run(n, mode, true);
            int64_t orbit_total = 0;
            std::set<std::vector<int>> keys;
            for (const auto &c : o.classes) {
                CHECK(8 % orbit_size(c.points()) == 0);
                CHECK(canonical_form(c.board(), c.points()) == c.points());
                orbit_total += orbit_size(c.points());
            }
            for (const auto &w : o.witnesses)
                keys.insert(canonical_form(w.board(), w.points()).indices());
            CHECK(orbit_total == o.distinct_count);
            CHECK(static_cast<int64_t>(keys.size()) == o.symmetry_class_count);
            CHECK(o.distinct_count >= o.symmetry_class_count);
            check_witnesses(o, mode);
        }
}

TEST_CASE("general minimum never exceeds independent minimum and respects the bounds") {
    for (int n = 2; n <= 6; ++n) {
        const int general = *run(n, Mode::general, false).minimum_size;
        const int independent = *run(n, Mode::independent, false).minimum_size;
        CHECK(general <= independent);
        CHECK(general >= trivial_lower_bound(n));
        CHECK(general >= phi_lower_bound(n));
        if (n >= 3)
            CHECK(independent <= 2 * ((n + 1) / 2));
    }
}

TEST_CASE("witnesses come out row-major and deterministic") {
    const auto a = run(5, Mode::independent, true, 0, 1);
    const auto b = run(5, Mode::independent, true, 0, 1);
    const auto c = run(5, Mode::independent, true, 0, 3);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (size_t i = 0; i < a.witnesses.size(); ++i) {
        CHECK(a.witnesses[i] == b.witnesses[i]);
        CHECK(a.witnesses[i] == c.witnesses[i]);
        if (i > 0)
            CHECK(a.witnesses[i - 1].points().indices() < a.witnesses[i].points().indices());
    }
    CHECK(a.classes.size() == c.classes.size());
    CHECK(a.nodes_explored == b.nodes_explored);
}

TEST_CASE("node budget stops the search without claiming minimality") {
    SearchConfig c;
    c.board = BoardSize(7);
    c.mode = Mode::independent;
    c.node_budget = 1000;
    const auto o = min_dominating(c);
    CHECK_FALSE(o.exhausted);
    check_witnesses(o, Mode::independent);
}

TEST_CASE("exterior search") {
    CHECK_THROWS_AS((void)min_dominating_exterior(SearchConfig{.board = BoardSize(3), .margin = 0}), SearchError);

    const auto e = run(2, Mode::independent, true, 1);
    REQUIRE(e.minimum_size);
    CHECK(*e.minimum_size < 4);
    CHECK(e.symmetry_class_count == 1);
    CHECK(e.exhausted);

    // oracle over the 4 x 4 candidate region
    std::vector<GridPoint> region;
    for (int y = 0; y <= 3; ++y)
        for (int x = 0; x <= 3; ++x)
            region.push_back({x, y});
    int best = 0;
    int64_t count = 0;
    std::set<std::vector<int>> classes;
    for (int k = 1; k <= 4 && best == 0; ++k) {
        std::vector<bool> pick(region.size());
        std::fill(pick.end() - k, pick.end(), true);
        do {
            std::vector<GridPoint> s;
            for (size_t i = 0; i < region.size(); ++i)
                if (pick[i])
                    s.push_back(region[i]);
            if (!oracle::general_position(s) || !oracle::dominates(2, s))
                continue;
            best = k;
            ++count;
            std::vector<int> key;
            for (int t = 0; t < 8; ++t) {
                std::vector<int> image;
                for (GridPoint p : oracle::sorted_image(2, t, s))
                    image.push_back(p.y * 4 + p.x);
                if (key.empty() || image < key)
                    key = image;
            }
            classes.insert(key);
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    CHECK(*e.minimum_size == best);
    CHECK(e.distinct_count == count);
    CHECK(e.symmetry_class_count == static_cast<int64_t>(classes.size()));
    for (const auto &w : e.witnesses) {
        CHECK(w.margin() == 1);
        CHECK(oracle::dominates(2, w.points().points()));
    }

    SearchConfig base{.board = BoardSize(3), .enumerate_all = true};
    const auto plain = min_dominating(base);
    CHECK(plain.minimum_size == run(3, Mode::independent, true).minimum_size);
    CHECK(plain.distinct_count == 5);
}

TEST_CASE("symmetric augment gives verified upper bounds") {
    const auto s13 = symmetric_augment(BoardSize(13));
    CHECK(s13.size() <= 12);
    CHECK(s13.mode() == Mode::independent);
    CHECK(oracle::general_position(s13.points().points()));
    CHECK(oracle::dominates(13, s13.points().points()));
    const auto s21 = symmetric_augment(BoardSize(21));
    CHECK(s21.size() <= 16);
    CHECK(is_dominating(BoardSize(21), s21.points()));
}
