#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "tourney/models.hpp"
#include "tourney/solutions.hpp"

using namespace tourney;

TEST_CASE("condorcet matrix entries") {
    const auto uniform = condorcet_matrix(3, 0.5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(uniform.at(i, j) == 0.5);

    const auto sure = condorcet_matrix(2, 0.0);
    CHECK(sure.at(0, 1) == 1.0);
    CHECK(sure.at(1, 0) == 0.0);

    const auto m = condorcet_matrix(3, 0.3);
    CHECK(m.at(1, 0) == doctest::Approx(0.3));
    CHECK(m.at(2, 0) == doctest::Approx(0.3));
    CHECK(m.at(2, 1) == doctest::Approx(0.3));
    CHECK(m.at(0, 1) == doctest::Approx(0.7));

    CHECK_THROWS_AS(condorcet_matrix(3, 0.6), RangeError);
    CHECK_THROWS_AS(condorcet_matrix(3, -0.1), RangeError);
}

TEST_CASE("gap matrix entries") {
    const auto m2 = gap_matrix(2, 0.3);
    CHECK(m2.at(0, 1) == doctest::Approx(0.7));

    const auto m3 = gap_matrix(3, 0.0);
    CHECK(m3.at(0, 1) == doctest::Approx(0.75));
    CHECK(m3.at(0, 2) == doctest::Approx(1.0));
    CHECK(m3.at(1, 2) == doctest::Approx(0.75));

    // the extreme pair always lands at 1-p
    for (int n : {2, 5, 40}) {
        const auto m = gap_matrix(n, 0.3);
        CHECK(m.at(0, n - 1) == doctest::Approx(0.7));
    }

    CHECK_THROWS_AS(gap_matrix(1, 0.3), DegenerateError);
    CHECK_THROWS_AS(gap_matrix(4, 0.7), RangeError);
}

TEST_CASE("probability matrix validation") {
    CHECK_THROWS_AS(EdgeProbabilityMatrix::from_grid({{0.0, 0.4}, {0.5, 0.0}}), RangeError);
    CHECK_THROWS_AS(EdgeProbabilityMatrix::from_grid({{0.0, 1.4}, {-0.4, 0.0}}), RangeError);
    CHECK_THROWS_AS(EdgeProbabilityMatrix::from_grid({{0.0, 0.4, 0.1}, {0.6, 0.0, 0.2}}), DimensionError);
    const auto ok = EdgeProbabilityMatrix::from_grid({{0.0, 0.4}, {0.6, 0.0}});
    CHECK(ok.at(1, 0) == doctest::Approx(0.6));
}

TEST_CASE("deterministic matrices force deterministic tournaments") {
    const auto sure = condorcet_matrix(5, 0.0);
    for (std::uint64_t trial : {0ull, 1ull, 999ull}) {
        const Tournament t = sample_model1(sure, Seed{42, trial});
        CHECK(out_degree_vector(t) == DegreeVector{4, 3, 2, 1, 0});
    }
}

TEST_CASE("identical seeds give identical tournaments") {
    const auto m = condorcet_matrix(20, 0.3);
    CHECK(sample_model1(m, Seed{9, 4}) == sample_model1(m, Seed{9, 4}));
    CHECK_FALSE(sample_model1(m, Seed{9, 4}) == sample_model1(m, Seed{9, 5}));
}

TEST_CASE("empirical 3-cycle rate under the uniform model") {
    const auto m = condorcet_matrix(3, 0.5);
    int cycles = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t)
        if (out_degree_vector(sample_model1(m, Seed{2024, static_cast<std::uint64_t>(t)})) ==
            DegreeVector{1, 1, 1})
            ++cycles;
    // exact probability 2/8 from the enumeration oracle
    CHECK(oracles::exact_selects_all(m, Solution::Uncovered) == doctest::Approx(0.25));
    CHECK(std::abs(cycles / double(trials) - 0.25) < 0.02);
}

TEST_CASE("empirical edge marginal matches its probability") {
    const auto m = condorcet_matrix(50, 0.3);
    int upsets = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t)
        if (sample_model1(m, Seed{5150, static_cast<std::uint64_t>(t)}).edge(1, 0)) ++upsets;
    CHECK(std::abs(upsets / double(trials) - 0.3) < 0.01);
}

TEST_CASE("model 2 validates the voter count") {
    const EdgeProbabilityMatrix q[] = {condorcet_matrix(3, 0.4)};
    CHECK_THROWS_AS(sample_model2(2, std::span<const EdgeProbabilityMatrix>(q, 1), Seed{1, 0}),
                    EvenVotersError);
    CHECK_THROWS_AS(sample_model2(0, std::span<const EdgeProbabilityMatrix>(q, 1), Seed{1, 0}),
                    EvenVotersError);
}

TEST_CASE("a single voter reproduces the independent-edge sampler") {
    const EdgeProbabilityMatrix q[] = {condorcet_matrix(10, 0.35)};
    for (std::uint64_t t = 0; t < 200; ++t) {
        const Seed s{77, t};
        CHECK(sample_model2(1, std::span<const EdgeProbabilityMatrix>(q, 1), s) ==
              sample_model1(q[0], s));
    }
}

TEST_CASE("unanimous voters give the transitive tournament") {
    const EdgeProbabilityMatrix q[] = {condorcet_matrix(6, 0.0)};
    const Tournament t = sample_model2(3, std::span<const EdgeProbabilityMatrix>(q, 1), Seed{3, 0});
    CHECK(out_degree_vector(t) == DegreeVector{5, 4, 3, 2, 1, 0});
}

TEST_CASE("three fair voters still give a fair majority coin") {
    const EdgeProbabilityMatrix q[] = {condorcet_matrix(3, 0.5)};
    int cycles = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const Tournament s =
            sample_model2(3, std::span<const EdgeProbabilityMatrix>(q, 1), Seed{88, static_cast<std::uint64_t>(t)});
        if (out_degree_vector(s) == DegreeVector{1, 1, 1}) ++cycles;
    }
    CHECK(std::abs(cycles / double(trials) - 0.25) < 0.02);
}

TEST_CASE("per-voter matrices are accepted") {
    const EdgeProbabilityMatrix qs[] = {condorcet_matrix(4, 0.2), condorcet_matrix(4, 0.5),
                                        condorcet_matrix(4, 0.4)};
    const Tournament t = sample_model2(3, std::span<const EdgeProbabilityMatrix>(qs, 3), Seed{6, 1});
    CHECK(t.size() == 4);
    const EdgeProbabilityMatrix bad[] = {condorcet_matrix(4, 0.2), condorcet_matrix(4, 0.5)};
    CHECK_THROWS_AS(sample_model2(3, std::span<const EdgeProbabilityMatrix>(bad, 2), Seed{6, 1}),
                    DimensionError);
}

TEST_CASE("p-expression parse, eval, render") {
    CHECK(eval_pexpr(parse_pexpr("0.3"), 10) == doctest::Approx(0.3));
    CHECK(eval_pexpr(parse_pexpr("1/4"), 10) == doctest::Approx(0.25));
    CHECK(eval_pexpr(parse_pexpr("1/n"), 10) == doctest::Approx(0.1));
    CHECK(eval_pexpr(parse_pexpr("1/n^2"), 10) == doctest::Approx(0.01));
    CHECK(eval_pexpr(parse_pexpr("0.6*sqrt(log(n)/n)"), 100) ==
          doctest::Approx(0.6 * std::sqrt(std::log(100.0) / 100)));
    CHECK(eval_pexpr(parse_pexpr("sqrt(2*log(n)/n)"), 100) ==
          doctest::Approx(std::sqrt(2 * std::log(100.0) / 100)));
    CHECK(eval_pexpr(parse_pexpr("1*(log(n)/n)^(1/4)"), 200) ==
          doctest::Approx(std::pow(std::log(200.0) / 200, 0.25)));

    for (const char* text : {"0.3", "1/n", "1/n^2", "0.6*sqrt(log(n)/n)", "sqrt(2*log(n)/n)",
                             "1*(log(n)/n)^(1/4)"}) {
        const PExpr e = parse_pexpr(text);
        CHECK(parse_pexpr(render_pexpr(e)) == e);
    }

    CHECK_THROWS_AS(parse_pexpr("2/n"), ConfigError);
    CHECK_THROWS_AS(parse_pexpr("log(n)"), ConfigError);
    CHECK_THROWS_AS(parse_pexpr("-0.2"), ConfigError);

    bool clamped = false;
    const double v = eval_pexpr_clamped(parse_pexpr("sqrt(2*log(n)/n)"), 5, &clamped);
    CHECK(v == 0.5);  // raw value 0.8023... exceeds 0.5 at n=5
    CHECK(clamped);
    eval_pexpr_clamped(parse_pexpr("0.3"), 5, &clamped);
    CHECK_FALSE(clamped);
}

TEST_CASE("model text parse and render") {
    for (const char* text : {"condorcet:p=0.5", "gap:p=0.3", "condorcet:p=1/n",
                             "voters:k=3,p=0.3", "explicit:file=m.txt"}) {
        const ModelSpec m = parse_model(text);
        CHECK(render_model(m) == text);
    }
    CHECK_THROWS_AS(parse_model("mallows:p=0.5"), ConfigError);
    CHECK_THROWS_AS(parse_model("condorcet"), ConfigError);
    CHECK_THROWS_AS(parse_model("voters:k=2,p=0.3"), EvenVotersError);
}

TEST_CASE("probability matrix file round-trip") {
    const auto m = gap_matrix(4, 0.25);
    std::string text = "4\n";
    char buf[64];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g ", i == j ? 0.0 : m.at(i, j));
            text += buf;
        }
        text += "\n";
    }
    std::istringstream in(text);
    const auto back = parse_probability_matrix(in);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(back.at(i, j) == m.at(i, j));

    std::istringstream bad("2\n0 0.4\n0.5 0\n");
    CHECK_THROWS_AS(parse_probability_matrix(bad), ParseError);
}

TEST_CASE("voters model induces the binomial majority matrix") {
    ModelSpec spec;
    spec.kind = ModelKind::Voters;
    spec.voters = 3;
    spec.p = parse_pexpr("0.3");
    const auto induced = instantiate_edge_matrix(spec, 3);
    // majority of three coins at 0.3: 3*0.09*0.7 + 0.027
    const double maj = 3 * 0.3 * 0.3 * 0.7 + 0.3 * 0.3 * 0.3;
    CHECK(induced.at(1, 0) == doctest::Approx(maj));
    CHECK(induced.at(0, 1) == doctest::Approx(1.0 - maj));
}
