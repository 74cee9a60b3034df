#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bes/checker.hpp"
#include "bes/construct.hpp"

#include <algorithm>
#include <set>

using namespace bes;

TEST_CASE("H_1 is K_4 and its lift is two triples on x1 x2")
{
    const auto g = build_gadget(1);
    CHECK(g.vertex_count() == 4);
    REQUIRE(g.h_edges.size() == 6);
    std::set<Pair> pairs(g.h_edges.begin(), g.h_edges.end());
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) CHECK(pairs.count({u, v}) == 1);
    CHECK(g.hat_edges == std::vector<Triple>{{0, 2, 3}, {1, 2, 3}});
}

TEST_CASE("gadget sizes and triangle support")
{
    const auto g3 = build_gadget(3);
    CHECK(g3.vertex_count() == 8);
    CHECK(g3.h_edges.size() == 16);
    CHECK(g3.hat_edges.size() == 6);

    for (int t = 1; t <= 10; ++t) {
        const auto g = build_gadget(t);
        CHECK(g.h_edges.size() == static_cast<std::size_t>(5 * t + 1));
        CHECK(g.hat_edges.size() == static_cast<std::size_t>(2 * t));
        const std::set<Pair> pairs(g.h_edges.begin(), g.h_edges.end());
        CHECK(pairs.size() == g.h_edges.size());
        for (const auto& e : g.hat_edges) {
            CHECK(pairs.count({e[0], e[1]}) == 1);
            CHECK(pairs.count({e[0], e[2]}) == 1);
            CHECK(pairs.count({e[1], e[2]}) == 1);
        }
    }
    CHECK_THROWS_AS((void)build_gadget(0), std::invalid_argument);
}

TEST_CASE("packing K_4 with H_1")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = greedy_pack(4, 1, {.seed = seed, .budget = 50});
        CHECK(p.embeddings.size() <= 1);
        if (!p.embeddings.empty()) CHECK(p.coverage() == 1.0);
        validate_packing(p);
    }
}

TEST_CASE("too few vertices gives an empty packing with a warning")
{
    const auto p = greedy_pack(3, 1, {.seed = 1});
    CHECK(p.too_small);
    CHECK(p.embeddings.empty());
    CHECK(p.coverage() == 0.0);
    CHECK(p.leftover_pairs == 3);
    CHECK(lift(p).edge_count() == 0);
}

TEST_CASE("coverage floor at n = 200, t = 2")
{
    const auto p = greedy_pack(200, 2, {.seed = 1, .budget = 10'000});
    validate_packing(p);
    MESSAGE("coverage " << p.coverage() << " copies " << p.embeddings.size());
    CHECK(p.coverage() >= 0.70);
    // Measured 0.877236 (1587 copies); regression floor with 0.5% slack.
    CHECK(p.coverage() >= 0.877236 - 0.005);
}

TEST_CASE("lift of hand-built packings")
{
    PackingResult empty;
    empty.n = 6;
    empty.t = 1;
    empty.leftover_pairs = 15;
    CHECK(lift(empty) == TripleSystem(6, {}));

    PackingResult one;
    one.n = 4;
    one.t = 1;
    one.embeddings.push_back({1, {0, 1, 2, 3}});
    one.covered_pairs = 6;
    validate_packing(one);
    CHECK(lift(one) == TripleSystem(4, {{0, 2, 3}, {1, 2, 3}}));

    // The gadget is symmetric in a and b.
    PackingResult swapped = one;
    swapped.embeddings[0].image = {1, 0, 2, 3};
    CHECK(lift(swapped) == lift(one));
}

TEST_CASE("greedy packings are edge-disjoint and lift to (5,3)-free systems")
{
    for (int t : {1, 2, 3}) {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const int n = 20 + 15 * static_cast<int>(seed);
            const auto p = greedy_pack(n, t, {.seed = seed, .budget = 500});
            validate_packing(p);
            const auto g = lift(p);
            const auto copies = static_cast<std::int64_t>(p.embeddings.size());
            CHECK(static_cast<std::int64_t>(g.edge_count()) == 2 * t * copies);
            CHECK_FALSE(find_config(g, 5, 3));

            // Density identity e(lift) / C(n,2) = 2t/(5t+1) * coverage, exactly.
            CHECK(static_cast<std::int64_t>(g.edge_count()) * (5 * t + 1) == 2 * t * p.covered_pairs);

            const CodegreeClasses cls(g);
            CHECK(cls.count(2) == t * copies);
            CHECK(cls.count(1) == 4 * t * copies);
            CHECK(cls.count(0) == pair_count(n) - (5 * t + 1) * copies + copies);
            CHECK(cls.count(3) == 0);
            CHECK(cls.count(4) == 0);
        }
    }
}

TEST_CASE("small lifts agree with the naive checker")
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto p = greedy_pack(9, 1, {.seed = seed, .budget = 100});
        const auto g = lift(p);
        CHECK_FALSE(find_config_naive(g, 5, 3));
    }
}

TEST_CASE("packing is deterministic in its inputs")
{
    const auto a = greedy_pack(120, 2, {.seed = 42, .budget = 300});
    const auto b = greedy_pack(120, 2, {.seed = 42, .budget = 300});
    CHECK(a.embeddings == b.embeddings);
    CHECK(a.attempts == b.attempts);
    const auto c = greedy_pack(120, 2, {.seed = 43, .budget = 300});
    CHECK_FALSE(a.embeddings == c.embeddings);
}

TEST_CASE("cascade harvests extra H_1 copies without breaking freeness")
{
    const auto plain = greedy_pack(150, 4, {.seed = 5, .budget = 2000});
    const auto more = greedy_pack(150, 4, {.seed = 5, .budget = 2000, .cascade = true});
    validate_packing(more);
    CHECK(more.covered_pairs >= plain.covered_pairs);
    CHECK(std::any_of(more.embeddings.begin(), more.embeddings.end(), [](const auto& e) { return e.t == 1; }));
    CHECK_FALSE(find_config(lift(more), 5, 3));
}

namespace {

// Independent check: scan t upwards and evaluate both sides exactly.
int least_t_by_scan(const Rational& eps)
{
    const Rational rhs = (1 - 5 * eps) / (1 - 4 * eps);
    for (int t = 1;; ++t)
        if (Rational(5 * t, 5 * t + 1) >= rhs) return t;
}

} // namespace

TEST_CASE("recommended_t")
{
    CHECK(recommended_t(Rational(1, 10)) == 1);
    CHECK(Rational(5, 6) >= (1 - 5 * Rational(1, 10)) / (1 - 4 * Rational(1, 10)));
    CHECK(recommended_t(Rational(1, 6)) == 1);

    int previous = 1;
    for (int d = 6; d <= 400; d += 7) {
        const Rational eps(1, d);
        const int t = recommended_t(eps);
        CHECK(t == least_t_by_scan(eps));
        CHECK(t >= previous);
        previous = t;
    }
    CHECK(recommended_t(Rational(1, 100000)) > 1000);

    CHECK_THROWS_AS((void)recommended_t(Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS((void)recommended_t(Rational(1, 5)), std::invalid_argument);
    CHECK_THROWS_AS((void)recommended_t(Rational(-1, 7)), std::invalid_argument);
}

TEST_CASE("Bose Steiner systems")
{
    CHECK(bose_steiner(3) == TripleSystem(3, {{0, 1, 2}}));

    const auto s9 = bose_steiner(9);
    CHECK(s9.edge_count() == 12);
    const CodegreeClasses c9(s9);
    CHECK(c9.count(1) == 36);
    CHECK(c9.max_codegree() == 1);

    const auto s15 = bose_steiner(15);
    CHECK(s15.edge_count() == 35);
    CHECK_FALSE(find_config(s15, 5, 3));

    for (int n = 21; n <= 63; n += 6) {
        const auto s = bose_steiner(n);
        CHECK(static_cast<std::int64_t>(s.edge_count()) * 3 == pair_count(n));
        CHECK(CodegreeClasses(s).count(1) == pair_count(n));
    }
    CHECK_THROWS_AS((void)bose_steiner(7), std::invalid_argument);
    CHECK_THROWS_AS((void)bose_steiner(0), std::invalid_argument);
}

TEST_CASE("the Fano plane constant")
{
    const auto f = fano_plane();
    CHECK(f.edge_count() == 7);
    CHECK(CodegreeClasses(f).count(1) == 21);
}
