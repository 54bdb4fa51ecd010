#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tourney/tournament.hpp"

using namespace tourney;

namespace {

Tournament three_cycle() {
    return Tournament::from_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
}

Tournament transitive(int n) {
    std::vector<std::vector<int>> grid(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) grid[i][j] = 1;
    return Tournament::from_matrix(grid);
}

}  // namespace

TEST_CASE("from_matrix accepts the smallest tournaments") {
    const Tournament t2 = Tournament::from_matrix({{0, 1}, {0, 0}});
    CHECK(t2.size() == 2);
    CHECK(t2.dominates(0, 1));
    CHECK_FALSE(t2.dominates(1, 0));

    const Tournament t3 = three_cycle();
    CHECK(t3.dominates(0, 1));
    CHECK(t3.dominates(1, 2));
    CHECK(t3.dominates(2, 0));
}

TEST_CASE("from_matrix rejects malformed grids") {
    CHECK_THROWS_AS(Tournament::from_matrix({{0, 0}, {0, 0}}), StructureError);  // missing edge
    CHECK_THROWS_AS(Tournament::from_matrix({{0, 1}, {1, 0}}), StructureError);  // double edge
    CHECK_THROWS_AS(Tournament::from_matrix({{1, 1}, {0, 0}}), StructureError);  // diagonal
    CHECK_THROWS_AS(Tournament::from_matrix({{0, 1, 0}, {0, 0, 1}}), DimensionError);
    CHECK_THROWS_AS(Tournament::from_matrix({}), DimensionError);
    CHECK_THROWS_AS(Tournament::from_matrix({{0, 2}, {0, 0}}), StructureError);
}

TEST_CASE("dominates validates its arguments") {
    const Tournament t = three_cycle();
    CHECK_THROWS_AS(t.dominates(0, 3), IndexError);
    CHECK_THROWS_AS(t.dominates(-1, 0), IndexError);
    CHECK_THROWS_AS(t.dominates(1, 1), SelfComparisonError);
}

TEST_CASE("dominance is antisymmetric and connex") {
    oracles::TestRng rng{7};
    for (int n : {1, 2, 3, 5, 17, 50}) {
        const Tournament t = oracles::random_tournament(n, rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(t.dominates(i, j) != t.dominates(j, i));
    }
}

TEST_CASE("out-degree vectors") {
    CHECK(out_degree_vector(transitive(4)) == DegreeVector{3, 2, 1, 0});
    CHECK(out_degree_vector(three_cycle()) == DegreeVector{1, 1, 1});
    CHECK(out_degree_vector(Tournament::from_matrix({{0}})) == DegreeVector{0});

    oracles::TestRng rng{11};
    for (int n : {2, 6, 33}) {
        const Tournament t = oracles::random_tournament(n, rng);
        const DegreeVector d = out_degree_vector(t);
        long long sum = 0;
        for (int v : d) sum += v;
        CHECK(sum == static_cast<long long>(n) * (n - 1) / 2);
    }
}

TEST_CASE("enumeration yields every labeled tournament exactly once") {
    CHECK(TournamentEnumerator(2).total() == 2);
    CHECK(TournamentEnumerator(4).total() == 64);

    int three_cycles = 0;
    std::set<std::string> seen;
    for_each_tournament(3, [&](const Tournament& t) {
        seen.insert(render_tournament(t));
        if (out_degree_vector(t) == DegreeVector{1, 1, 1}) ++three_cycles;
    });
    CHECK(seen.size() == 8);
    CHECK(three_cycles == 2);

    std::set<std::string> seen5;
    for_each_tournament(5, [&](const Tournament& t) { seen5.insert(render_tournament(t)); });
    CHECK(seen5.size() == 1024);

    CHECK_THROWS_AS(TournamentEnumerator(7), CapExceededError);
    CHECK_THROWS_AS(TournamentEnumerator(0), CapExceededError);
}

TEST_CASE("enumeration order is upper-triangular binary counting") {
    TournamentEnumerator e(3);
    // mask 0: no pair bit set, so the later alternative wins every pair
    const Tournament first = *e.next();
    CHECK(first.dominates(1, 0));
    CHECK(first.dominates(2, 0));
    CHECK(first.dominates(2, 1));
    // mask 1: only pair {a_1, a_2} flips
    const Tournament second = *e.next();
    CHECK(second.dominates(0, 1));
    CHECK(second.dominates(2, 0));
    CHECK(second.dominates(2, 1));
}

TEST_CASE("pair_rank is (i,j)-lexicographic") {
    CHECK(pair_rank(4, 0, 1) == 0);
    CHECK(pair_rank(4, 0, 3) == 2);
    CHECK(pair_rank(4, 1, 2) == 3);
    CHECK(pair_rank(4, 2, 3) == 5);
    CHECK(pair_count(4) == 6);
}

TEST_CASE("text round-trip, exhaustive for small n") {
    for (int n = 1; n <= 6; ++n) {
        for_each_tournament(n, [&](const Tournament& t) {
            CHECK(parse_tournament_text(render_tournament(t)) == t);
        });
    }
}

TEST_CASE("text round-trip on sampled large tournaments") {
    oracles::TestRng rng{23};
    for (int n : {50, 200}) {
        const Tournament t = oracles::random_tournament(n, rng);
        CHECK(parse_tournament_text(render_tournament(t)) == t);
    }
}

TEST_CASE("parser accepts comments and reports line numbers") {
    const std::string good = "# a comment\n3\n0 1 0\n# mid comment\n0 0 1\n1 0 0\n";
    CHECK(parse_tournament_text(good) == three_cycle());

    CHECK_THROWS_AS(parse_tournament_text(""), ParseError);
    CHECK_THROWS_AS(parse_tournament_text("3\n0 1 0\n0 0 1\n"), ParseError);    // missing row
    CHECK_THROWS_AS(parse_tournament_text("2\n0 1 1\n0 0\n"), ParseError);      // row too long
    CHECK_THROWS_AS(parse_tournament_text("2\n0 0\n0 0\n"), ParseError);        // structure
    try {
        parse_tournament_text("x\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
}
