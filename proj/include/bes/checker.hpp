#pragma once

#include "bes/triple_system.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bes {

/// s distinct edges of a host system whose union spans at most k vertices.
struct ConfigWitness {
    std::vector<Triple> edges;  ///< ascending
    std::vector<Vertex> span;   ///< ascending union of the edges' vertices
    [[nodiscard]] int k_spanned() const noexcept { return static_cast<int>(span.size()); }

    friend bool operator==(const ConfigWitness&, const ConfigWitness&) = default;
};

/// One member (k, s) of a forbidden family: no s edges on at most k vertices.
struct Config {
    int k;
    int s;
    friend bool operator==(const Config&, const Config&) = default;
};

/// A union of configuration classes. Each (k, s) must satisfy k >= 4,
/// s >= 2 and k <= 3s.
class ForbiddenFamily {
public:
    ForbiddenFamily() = default;
    ForbiddenFamily(std::initializer_list<Config> members);
    explicit ForbiddenFamily(std::vector<Config> members);

    [[nodiscard]] const std::vector<Config>& members() const noexcept { return members_; }

private:
    std::vector<Config> members_;
};

class CheckerError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest number of triples in a linear 3-graph on v vertices.
[[nodiscard]] int max_linear_triples(int v) noexcept;

struct FindOptions {
    /// Worker threads for independent search roots; 1 runs inline. The result
    /// does not depend on this value.
    int threads = 1;
};

/// Pruned search for s edges of g spanning at most k vertices.
///
/// Roots are tried in a fixed order: every pair of edges sharing a pair of
/// vertices (pairs by descending codegree, then lexicographic), then single
/// edges for configurations in which no two edges share a pair. Each root is
/// extended by edges in ascending index order, so the witness returned is the
/// first one in that order regardless of threading.
///
/// Requires k >= 4 and s >= 2; returns nullopt when s > e(g).
[[nodiscard]] std::optional<ConfigWitness> find_config(const TripleSystem& g, int k, int s,
                                                       FindOptions opts = {});

/// Exhaustive oracle: scans every s-subset of edges in lexicographic index
/// order. Throws CheckerError if C(e(g), s) exceeds naive_subset_limit.
[[nodiscard]] std::optional<ConfigWitness> find_config_naive(const TripleSystem& g, int k, int s);

inline constexpr std::uint64_t naive_subset_limit = 10'000'000;

struct FreenessResult {
    bool free = true;
    std::optional<Config> violated;
    std::optional<ConfigWitness> witness;
};

/// True iff g avoids every member of fam; otherwise the first violated member
/// (in family order) and its witness.
[[nodiscard]] FreenessResult is_free(const TripleSystem& g, const ForbiddenFamily& fam,
                                     FindOptions opts = {});

} // namespace bes
