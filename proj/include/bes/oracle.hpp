#pragma once

#include "bes/triple_system.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bes {

/// Largest n the exact search accepts; C(9,3) = 84 candidate triples.
inline constexpr int oracle_max_n = 9;

struct OracleOptions {
    /// A caller-guaranteed upper bound on the answer; the search stops as soon
    /// as it is reached. Combined with the built-in analytic caps.
    std::optional<std::int64_t> upper_hint;
    /// Allow any extremal witness instead of the lexicographically least one;
    /// enables parallel subtree search when threads > 1.
    bool any_witness = false;
    int threads = 1;
};

struct OracleResult {
    int n = 0;
    int k = 0;
    int s = 0;
    std::int64_t value = 0;
    TripleSystem witness;
    std::int64_t nodes = 0;
    double elapsed_ms = 0.0;
};

class OracleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact f(n; k, s): the most triples on n vertices with no s of them
/// spanning at most k vertices.
///
/// Branch and bound over the triples in lexicographic order, including before
/// excluding, with {0,1,2} always included. A triple may join only if no k-set
/// around it already holds s-1 chosen triples. Branches are cut when the
/// chosen count plus a pair-capacity bound on what can still be added cannot
/// beat the incumbent. By default the witness is the lexicographically least
/// extremal system.
[[nodiscard]] OracleResult exact_f(int n, int k, int s, const OracleOptions& opts = {});

struct Verification {
    bool ok = true;
    std::vector<std::string> problems;
    explicit operator bool() const noexcept { return ok; }
};

/// Re-checks the witness with the naive checker, that it has exactly `value`
/// triples, and that `value` respects every analytic upper bound that applies.
[[nodiscard]] Verification verify_extremal(const OracleResult& res);

} // namespace bes
