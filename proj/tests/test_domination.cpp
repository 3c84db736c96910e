#include "gridlock/domination.hpp"
#include "gridlock/io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace gridlock;

namespace {

std::set<GridPoint> as_set(const PointSet &s) {
    const auto pts = s.points();
    return {pts.begin(), pts.end()};
}

PointSet random_set(std::mt19937 &rng, BoardSize board, int max_size) {
    std::uniform_int_distribution<int> coord(1, board.n());
    std::uniform_int_distribution<int> count(0, max_size);
    PointSet s(board);
    const int k = count(rng);
    for (int i = 0; i < k; ++i)
        s.insert({coord(rng), coord(rng)});
    return s;
}

Solution fixture(const std::string &name) {
    auto rec = grid_from_json(read_json_file(std::string(GRIDLOCK_FIXTURE_DIR) + "/" + name));
    return Solution::verify(std::move(rec.points), rec.mode, Provenance::file);
}

} // namespace

TEST_CASE("mode names") {
    CHECK(parse_mode("general") == Mode::general);
    CHECK(to_string(Mode::independent) == "independent");
    CHECK_THROWS_AS((void)parse_mode("loose"), std::invalid_argument);
}

TEST_CASE("dominated mask examples") {
    const BoardSize b3(3);
    CHECK(dominated_mask(b3, PointSet(b3, {{1, 1}, {2, 2}})) == PointSet(b3, {{1, 1}, {2, 2}, {3, 3}}));
    CHECK(dominated_mask(b3, PointSet(b3)).empty());
    const BoardSize b16(16);
    CHECK(dominated_mask(b16, construct_central_columns(b16).points()).size() == 256);
}

TEST_CASE("is_dominating examples") {
    const BoardSize b2(2);
    CHECK(is_dominating(b2, PointSet(b2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}})));
    const BoardSize b3(3);
    CHECK_FALSE(is_dominating(b3, PointSet(b3, {{1, 1}, {2, 2}})));
}

TEST_CASE("general position examples") {
    CHECK(is_general_position(std::vector<GridPoint>{{1, 1}, {2, 3}, {3, 2}}));
    CHECK_FALSE(is_general_position(std::vector<GridPoint>{{1, 1}, {2, 2}, {3, 3}}));
    CHECK(is_general_position(std::vector<GridPoint>{}));
}

TEST_CASE("mask agrees with the triple-loop oracle on every small set") {
    // all sets of size <= 4 on boards up to 4, then random sets up to 6
    for (int n = 1; n <= 4; ++n) {
        const BoardSize board(n);
        const int cells = n * n;
        for (int a = -1; a < cells; ++a)
            for (int b = a + 1; b < cells; ++b)
                for (int c = b + 1; c < cells; ++c)
                    for (int d = c + 1; d <= cells; ++d) {
                        PointSet s(board);
                        for (int i : {a, b, c, d})
                            if (i >= 0 && i < cells)
                                s.set(i);
                        CHECK(as_set(dominated_mask(board, s)) == oracle::dominated(n, s.points()));
                    }
    }
    std::mt19937 rng(11);
    for (int trial = 0; trial < 3000; ++trial) {
        const BoardSize board(5 + trial % 2);
        const auto s = random_set(rng, board, 4);
        CHECK(as_set(dominated_mask(board, s)) == oracle::dominated(board.n(), s.points()));
    }
}

TEST_CASE("mask properties") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const BoardSize board(3 + trial % 7);
        const auto s = random_set(rng, board, 6);
        auto bigger = s;
        bigger |= random_set(rng, board, 3);
        const auto mask = dominated_mask(board, s);
        CHECK(s.subset_of(mask));
        CHECK(mask.subset_of(dominated_mask(board, bigger)));
        for (Symmetry t : all_symmetries)
            CHECK(dominated_mask(board, apply_symmetry(board, t, s)) == apply_symmetry(board, t, mask));
    }
}

TEST_CASE("exterior points dominate through the board") {
    const BoardSize board(2);
    const Region region{board, 1};
    PointSet s(region, {{0, 0}, {3, 3}});
    const auto mask = dominated_mask(board, s);
    CHECK(mask.contains({1, 1}));
    CHECK(mask.contains({2, 2}));
    CHECK_FALSE(mask.contains({1, 2}));
}

TEST_CASE("hashed general position agrees with the reference") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const BoardSize board(4 + trial % 6);
        const auto pts = random_set(rng, board, 7).points();
        const bool expected = oracle::general_position(pts);
        CHECK(is_general_position(pts) == expected);
        CHECK(is_general_position_reference(pts) == expected);
    }
}

TEST_CASE("solution factory verifies") {
    const BoardSize b3(3);
    CHECK_THROWS_AS((void)Solution::verify(PointSet(b3, {{1, 1}, {2, 2}}), Mode::general, Provenance::file),
                    VerificationError);
    // dominating but collinear
    const PointSet line_plus(b3, {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 3}});
    CHECK(is_dominating(b3, line_plus));
    CHECK_THROWS_AS((void)Solution::verify(line_plus, Mode::independent, Provenance::file), VerificationError);
    const auto ok = Solution::verify(line_plus, Mode::general, Provenance::file);
    CHECK(ok.size() == 7);
}

TEST_CASE("central columns construction") {
    CHECK(construct_central_columns(BoardSize(4)).points() == PointSet(BoardSize(4), {{2, 2}, {2, 3}, {3, 2}, {3, 3}}));
    const auto s7 = construct_central_columns(BoardSize(7));
    CHECK(s7.size() == 8);
    CHECK(oracle::dominates(7, s7.points().points()));
    CHECK_THROWS_AS((void)construct_central_columns(BoardSize(2)), GeometryError);
    for (int n = 3; n <= 64; ++n) {
        const auto s = construct_central_columns(BoardSize(n));
        CHECK(s.size() == 2 * ((n + 1) / 2));
        CHECK(s.mode() == Mode::general);
        if (n <= 12)
            CHECK(oracle::dominates(n, s.points().points()));
    }
}

TEST_CASE("shipped figure fixtures verify") {
    for (const char *name : {"fig1_n8_a.json", "fig1_n8_b.json", "fig1_n8_c.json"}) {
        const auto s = fixture(name);
        CHECK(s.size() == 8);
        CHECK(s.mode() == Mode::independent);
        CHECK(oracle::general_position(s.points().points()));
        CHECK(oracle::dominates(8, s.points().points()));
    }
    const auto fig3 = fixture("fig3_n16.json");
    CHECK(fig3.size() == 16);
    CHECK(fig3.points() == construct_central_columns(BoardSize(16)).points());

    const auto fig4 = fixture("fig4_n10.json");
    CHECK(fig4.size() == 8);
    CHECK(oracle::dominates(10, fig4.points().points()));
    const auto big = fixture("fig4_n21.json");
    CHECK(big.size() <= 16);
    CHECK(oracle::general_position(big.points().points()));
    CHECK(oracle::dominates(21, big.points().points()));

    for (const char *name : {"fig5_n7_independent_a.json", "fig5_n7_independent_b.json"}) {
        const auto s = fixture(name);
        CHECK(s.size() == 8);
        CHECK(oracle::general_position(s.points().points()));
        CHECK(oracle::dominates(7, s.points().points()));
    }
    // size 7 is only reachable with collinear points
    for (const char *name : {"fig5_n7_general_a.json", "fig5_n7_general_b.json", "fig5_n7_general_c.json"}) {
        const auto s = fixture(name);
        CHECK(s.size() == 7);
        CHECK_FALSE(oracle::general_position(s.points().points()));
        CHECK(oracle::dominates(7, s.points().points()));
    }

    const auto ext2 = fixture("fig6_n2_exterior.json");
    CHECK(ext2.size() == 3);
    CHECK(oracle::dominates(2, ext2.points().points()));
    const auto ext7 = fixture("fig6_n7_exterior.json");
    CHECK(ext7.size() <= 8);
    CHECK(ext7.points().region().margin == 2);
    CHECK(oracle::general_position(ext7.points().points()));
    CHECK(oracle::dominates(7, ext7.points().points()));
}
