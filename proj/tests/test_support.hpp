#pragma once

#include "bes/checker.hpp"
#include "bes/triple_system.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace bes::testing {

inline std::vector<Triple> all_triples(int n)
{
    std::vector<Triple> out;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) out.push_back({a, b, c});
    return out;
}

/// m distinct triples on n vertices, uniformly at random.
inline TripleSystem random_system(int n, int m, std::mt19937_64& rng)
{
    auto all = all_triples(n);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(m)));
    return TripleSystem(n, std::move(all));
}

/// Random triples offered in shuffled order; each is kept only if the system
/// stays free of every member of fam. Stops after `limit` triples.
inline TripleSystem random_free_system(int n, const ForbiddenFamily& fam, std::mt19937_64& rng,
                                       std::size_t limit = static_cast<std::size_t>(-1))
{
    auto all = all_triples(n);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Triple> kept;
    for (const auto& t : all) {
        if (kept.size() >= limit) break;
        kept.push_back(t);
        if (!is_free(TripleSystem(n, kept), fam).free) kept.pop_back();
    }
    return TripleSystem(n, std::move(kept));
}

} // namespace bes::testing
