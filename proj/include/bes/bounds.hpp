#pragma once

#include "bes/checker.hpp"
#include "bes/lp.hpp"
#include "bes/rational.hpp"
#include "bes/triple_system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bes {

/// max x + 2y  s.t.  x >= 4y,  x + y <= b,  x, y >= 0.
[[nodiscard]] RationalLP five_three_program(const Rational& b);

/// max (e1 + 2 e2 + 3 e3)/3  s.t.  e1 + e2 + e3 <= 1/2,
/// -8 e1/3 + 20 e2/3 + 16 e3 <= 0,  e_i >= 0.
[[nodiscard]] RationalLP six_four_program();

/// Solves five_three_program(b); the optimum is 6b/5 at (4b/5, b/5).
/// Throws std::invalid_argument for b < 0.
[[nodiscard]] LPCertificate lp_five_three(const Rational& b);

/// Solves six_four_program(); the optimum is 3/14.
[[nodiscard]] LPCertificate lp_six_four();

/// Triples split by their sorted pair-codegree pattern.
struct TripleClassification {
    std::vector<Triple> t1;         ///< pattern (3,1,1)
    std::vector<Triple> t2;         ///< pattern (2,2,1)
    std::vector<Triple> remainder;
    /// d(xy)+d(xz)+d(yz) for each edge, aligned with g.edges().
    std::vector<int> codegree_sums;
    /// Descending codegree pattern for each edge, aligned with g.edges().
    std::vector<std::array<int, 3>> patterns;
};

[[nodiscard]] TripleClassification classify_triples(const TripleSystem& g);

struct AuditCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Counts and pass/fail checks produced by one audit.
struct AuditReport {
    std::string audit;
    std::vector<std::pair<std::string, std::int64_t>> counts;
    std::vector<AuditCheck> checks;

    [[nodiscard]] bool passed() const noexcept;
    /// Throws std::out_of_range for unknown names.
    [[nodiscard]] std::int64_t count(const std::string& name) const;
    [[nodiscard]] const AuditCheck& check(const std::string& name) const;
};

/// The audited system contains a configuration the audit assumes absent.
class AuditPrecondition : public std::runtime_error {
public:
    AuditPrecondition(const std::string& what, Config violated, ConfigWitness witness)
        : std::runtime_error(what), violated(violated), witness(std::move(witness))
    {
    }
    Config violated;
    ConfigWitness witness;
};

/// Requires a (5,3)-free system. Checks e(G1) >= 4 e(G2) through disjoint
/// sets {xz, yz, xz', yz'} of codegree-1 pairs, the handshake
/// 3e(G) = e(G1) + 2e(G2), and e(G) <= n(n-1)/5.
[[nodiscard]] AuditReport audit_five_three(const TripleSystem& g, FindOptions opts = {});

/// Requires a (6,4)- and (4,3)-free system. Builds the six pairs around each
/// codegree-3 pair and the five pairs around each (2,2,1) triple, checks they
/// are codegree-1 and pairwise disjoint, then checks
/// e(G1) >= 6 e(G3) + 5|T2| and e(G) <= 3n^2/14.
[[nodiscard]] AuditReport audit_six_four(const TripleSystem& g, FindOptions opts = {});

/// Requires a (5,3)- and (6,4)-free system. Maps each codegree-2 pair xy with
/// triples xyz, xyz' to zz', checks the image is codegree-0 and the map is
/// injective, then checks 3e(G) <= C(n,2).
[[nodiscard]] AuditReport audit_injection(const TripleSystem& g, FindOptions opts = {});

struct AveragingBound {
    Rational averaging;  ///< (k-3) n (n-1) / (3(k-2))
    Rational trivial;    ///< (k-3) C(n,2) / 3
};

/// Upper bounds on f(n; k, k-2). Throws std::invalid_argument for k < 4 or n < 1.
[[nodiscard]] AveragingBound averaging_bound(std::int64_t n, int k);

/// A proven upper bound on f(n; k, s), when one applies: n(n-1)/5 for (5,3),
/// 3n^2/14 for (6,4), and the codegree cap (s-1) C(n,2) / 3 whenever
/// s + 2 <= k. The smallest applicable bound, floored.
[[nodiscard]] std::optional<std::int64_t> analytic_cap(int n, int k, int s);

} // namespace bes
