#pragma once

#include "bes/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bes {

/// maximize  c.x  subject to  A x <= b, with optional x_j >= 0.
struct RationalLP {
    std::vector<std::string> names;
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<bool> nonnegative;

    [[nodiscard]] std::size_t variables() const noexcept { return objective.size(); }
    [[nodiscard]] std::size_t constraints() const noexcept { return rows.size(); }

    /// Throws std::invalid_argument on inconsistent dimensions.
    void validate() const;
};

/// Optimal primal vertex plus multipliers proving optimality.
///
/// `duals[i] >= 0` weights row i. For every variable j the combination
/// sum_i duals[i] * A[i][j] equals c_j (free variables) or is at least c_j
/// (non-negative variables), and sum_i duals[i] * b_i equals `value`; by
/// weak duality no feasible point beats `value`.
struct LPCertificate {
    Rational value;
    std::vector<Rational> primal;
    std::vector<Rational> duals;
    /// Rows (and, past constraints(), non-negativity bounds) tight in the
    /// chosen basis.
    std::vector<std::size_t> basis;
};

class LPError : public std::runtime_error {
public:
    enum class Kind { infeasible, unbounded, unsupported };
    LPError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Exact vertex enumeration: every basis of d tight constraints (rows plus
/// active sign bounds) is solved over the rationals, and the first feasible
/// basis, in lexicographic order, whose multipliers are all non-negative is
/// returned.
///
/// Throws LPError: infeasible when no vertex is feasible, unbounded when
/// feasible vertices exist but none admits non-negative multipliers,
/// unsupported when the feasible region has no vertex at all.
[[nodiscard]] LPCertificate solve_lp(const RationalLP& lp);

/// Recomputes feasibility, dual domination and the value identity exactly.
[[nodiscard]] bool verify_certificate(const RationalLP& lp, const LPCertificate& cert);

} // namespace bes
