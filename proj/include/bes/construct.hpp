#pragma once

#include "bes/rational.hpp"
#include "bes/triple_system.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bes {

/// The gadget pair H_t / Ĥ_t on local vertices 0 = a, 1 = b and
/// 2..2t+1 = x_1..x_{2t}.
///
/// H_t has the pair ab, both pairs a x_i and b x_i for every i, and the
/// matching pairs x_{2i-1} x_{2i}: 5t+1 pairs. Ĥ_t has the triples
/// a x_{2i-1} x_{2i} and b x_{2i-1} x_{2i}: 2t triples, each supported by a
/// triangle of H_t.
struct Gadget {
    int t = 0;
    std::vector<Pair> h_edges;
    std::vector<Triple> hat_edges;

    [[nodiscard]] int vertex_count() const noexcept { return 2 * t + 2; }
};

[[nodiscard]] Gadget build_gadget(int t);

/// A copy of H_t in K_n: image[i] is the host vertex for local vertex i.
struct Embedding {
    int t = 0;
    std::vector<Vertex> image;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct PackOptions {
    std::uint64_t seed = 0;
    /// Consecutive failed attempts before the engine stops.
    std::int64_t budget = 10'000;
    /// After the main run, keep packing the leftover with H_1 copies.
    bool cascade = false;
};

/// Edge-disjoint copies of H_t in K_n and how much of K_n they cover.
struct PackingResult {
    int n = 0;
    int t = 0;
    std::uint64_t seed = 0;
    std::int64_t budget = 0;
    bool cascade = false;
    /// Set when n < 2t+2 and no copy can exist.
    bool too_small = false;
    std::vector<Embedding> embeddings;
    std::int64_t covered_pairs = 0;
    std::int64_t leftover_pairs = 0;
    std::int64_t attempts = 0;

    [[nodiscard]] double coverage() const noexcept
    {
        const auto total = covered_pairs + leftover_pairs;
        return total == 0 ? 0.0 : static_cast<double>(covered_pairs) / static_cast<double>(total);
    }
};

/// Seeded randomized greedy H_t-packing of K_n.
///
/// Each attempt draws a uniformly random leftover pair for (a, b), then
/// greedily matches t disjoint leftover pairs among the common leftover
/// neighbours of a and b, scanning from a random offset. A failed attempt is
/// resampled; the run stops after `budget` consecutive failures. The result
/// depends only on (n, t, options).
[[nodiscard]] PackingResult greedy_pack(int n, int t, const PackOptions& opts);

/// Throws std::logic_error unless the embeddings are injective and pairwise
/// edge-disjoint and the pair counts add up.
void validate_packing(const PackingResult& packing);

/// Replaces every H_t copy by the corresponding Ĥ_t triples.
[[nodiscard]] TripleSystem lift(const PackingResult& packing);

/// Least t >= 1 with 5t/(5t+1) >= (1-5 eps)/(1-4 eps), for 0 < eps < 1/5.
[[nodiscard]] int recommended_t(const Rational& eps);

/// Bose's Steiner triple system of order n, n = 3 (mod 6).
[[nodiscard]] TripleSystem bose_steiner(int n);

/// The Fano plane on 0..6 with lines {i, i+1, i+3} mod 7.
[[nodiscard]] TripleSystem fano_plane();

} // namespace bes
