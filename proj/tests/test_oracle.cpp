#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bes/bounds.hpp"
#include "bes/checker.hpp"
#include "bes/oracle.hpp"
#include "test_support.hpp"

using namespace bes;

namespace {

// Independent reference: enumerate every free system by plain include-first
// DFS over lexicographically ordered triples, with no bounding and no
// symmetry breaking, re-checking each candidate with the naive checker
// restricted to configurations through the new triple.
struct PlainSearch {
    int n, k, s;
    std::vector<Triple> all;
    std::vector<Triple> chosen;
    std::vector<Triple> best;

    PlainSearch(int n_, int k_, int s_) : n(n_), k(k_), s(s_), all(testing::all_triples(n_)) { dfs(0); }

    bool closes_config(const Triple& t) const
    {
        // s-1 chosen triples that together with t span at most k vertices.
        const auto m = chosen.size();
        if (static_cast<int>(m) < s - 1) return false;
        std::vector<std::size_t> idx(static_cast<std::size_t>(s - 1));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (;;) {
            std::vector<Vertex> span(t.begin(), t.end());
            for (auto i : idx) span.insert(span.end(), chosen[i].begin(), chosen[i].end());
            std::sort(span.begin(), span.end());
            span.erase(std::unique(span.begin(), span.end()), span.end());
            if (static_cast<int>(span.size()) <= k) return true;
            auto pos = static_cast<std::ptrdiff_t>(idx.size()) - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - idx.size() + static_cast<std::size_t>(pos)) --pos;
            if (pos < 0) return false;
            ++idx[static_cast<std::size_t>(pos)];
            for (auto j = static_cast<std::size_t>(pos) + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    void dfs(std::size_t from)
    {
        if (chosen.size() > best.size()) best = chosen;
        for (auto i = from; i < all.size(); ++i) {
            if (closes_config(all[i])) continue;
            chosen.push_back(all[i]);
            dfs(i + 1);
            chosen.pop_back();
        }
    }
};

} // namespace

TEST_CASE("forced small values")
{
    CHECK(exact_f(4, 5, 3).value == 2);
    CHECK(exact_f(5, 5, 3).value == 2);
    CHECK(exact_f(3, 5, 3).value == 1);
    CHECK(exact_f(2, 5, 3).value == 0);
}

TEST_CASE("f(7;4,2) = 7 with a Steiner witness")
{
    const auto r = exact_f(7, 4, 2);
    CHECK(r.value == 7);
    const CodegreeClasses c(r.witness);
    CHECK(c.count(1) == 21);
    CHECK(verify_extremal(r));
}

TEST_CASE("frozen values for (5,3) at n = 6, 7")
{
    const auto r6 = exact_f(6, 5, 3);
    const auto r7 = exact_f(7, 5, 3);
    CHECK(r6.value == 4);
    CHECK(r7.value == 7);
    CHECK(r6.value <= 36 / 5);
    CHECK(r7.value <= 49 / 5);
    CHECK(verify_extremal(r6));
    CHECK(verify_extremal(r7));
}

TEST_CASE("branch and bound matches plain enumeration, witness included")
{
    const std::vector<std::array<int, 3>> cases{{4, 5, 3}, {5, 5, 3}, {6, 5, 3}, {7, 5, 3}, {6, 4, 2}, {7, 4, 2},
                                                {6, 6, 4}, {6, 4, 3}, {5, 6, 3}, {6, 7, 4}};
    for (auto [n, k, s] : cases) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(s);
        const PlainSearch plain(n, k, s);
        const auto r = exact_f(n, k, s);
        CHECK(r.value == static_cast<std::int64_t>(plain.best.size()));
        CHECK(r.witness == TripleSystem(n, plain.best));
    }
}

TEST_CASE("witnesses are free under the naive checker")
{
    for (int n = 4; n <= 7; ++n)
        for (auto [k, s] : std::vector<std::pair<int, int>>{{5, 3}, {6, 4}, {4, 2}, {4, 3}}) {
            const auto r = exact_f(n, k, s);
            CHECK_FALSE(find_config_naive(r.witness, k, s));
            CHECK(verify_extremal(r));
        }
}

TEST_CASE("monotone in n and s; within the analytic caps")
{
    for (auto [k, s] : std::vector<std::pair<int, int>>{{5, 3}, {6, 4}, {4, 2}}) {
        std::int64_t previous = 0;
        for (int n = 3; n <= 8; ++n) {
            const auto v = exact_f(n, k, s).value;
            CHECK(v >= previous);
            previous = v;
        }
    }
    for (int n = 4; n <= 7; ++n) {
        CHECK(exact_f(n, 6, 3).value <= exact_f(n, 6, 4).value);
        CHECK(exact_f(n, 5, 2).value <= exact_f(n, 5, 3).value);
    }
    for (int n = 3; n <= 8; ++n) {
        CHECK(exact_f(n, 5, 3).value <= n * n / 5);
        CHECK(exact_f(n, 6, 4).value <= 3 * n * n / 14);
    }
}

TEST_CASE("verify_extremal rejects a tampered result")
{
    auto r = exact_f(5, 5, 3);
    CHECK(verify_extremal(r));
    r.value += 1;
    const auto v = verify_extremal(r);
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.problems.empty());

    auto bad = exact_f(5, 5, 3);
    bad.witness = TripleSystem(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    bad.value = 3;
    CHECK_FALSE(verify_extremal(bad));
}

TEST_CASE("upper hint and parallel search keep the value")
{
    const auto plain = exact_f(7, 6, 4);
    const auto hinted = exact_f(7, 6, 4, {.upper_hint = plain.value});
    CHECK(hinted.value == plain.value);
    CHECK(hinted.witness == plain.witness);
    CHECK(hinted.nodes <= plain.nodes);

    const auto parallel = exact_f(7, 6, 4, {.any_witness = true, .threads = 3});
    CHECK(parallel.value == plain.value);
    CHECK(verify_extremal(parallel));
}

TEST_CASE("guards")
{
    CHECK_THROWS_AS((void)exact_f(10, 5, 3), OracleError);
    CHECK_THROWS_AS((void)exact_f(6, 3, 2), OracleError);
    CHECK_THROWS_AS((void)exact_f(6, 5, 1), OracleError);
}
