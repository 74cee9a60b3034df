#include "bes/lp.hpp"

#include <optional>

namespace bes {

void RationalLP::validate() const
{
    const auto d = variables();
    if (d == 0) throw std::invalid_argument("LP has no variables");
    if (!names.empty() && names.size() != d) throw std::invalid_argument("LP: names/objective size mismatch");
    if (nonnegative.size() != d) throw std::invalid_argument("LP: nonnegative flags/objective size mismatch");
    if (rhs.size() != rows.size()) throw std::invalid_argument("LP: rows/rhs size mismatch");
    for (const auto& r : rows)
        if (r.size() != d) throw std::invalid_argument("LP: row width differs from variable count");
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Solves M z = rhs for square M; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(Matrix m, std::vector<Rational> rhs)
{
    const auto d = m.size();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < d; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < d; ++i) rhs[i] /= m[i][i];
    return rhs;
}

std::size_t rank(Matrix m)
{
    std::size_t r = 0;
    const auto cols = m.empty() ? 0 : m.front().size();
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            const Rational f = m[i][col] / m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[i][c] -= f * m[r][c];
        }
        ++r;
    }
    return r;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

LPCertificate solve_lp(const RationalLP& lp)
{
    lp.validate();
    const auto d = lp.variables();
    const auto m = lp.constraints();

    // Sign bounds x_j >= 0 become rows -x_j <= 0 after the explicit rows.
    Matrix all = lp.rows;
    std::vector<Rational> all_rhs = lp.rhs;
    for (std::size_t j = 0; j < d; ++j) {
        if (!lp.nonnegative[j]) continue;
        std::vector<Rational> row(d, 0);
        row[j] = -1;
        all.push_back(std::move(row));
        all_rhs.push_back(0);
    }
    if (all.size() < d || rank(all) < d)
        throw LPError(LPError::Kind::unsupported, "feasible region has no vertex (constraint rank below dimension)");

    const auto feasible = [&](const std::vector<Rational>& x) {
        for (std::size_t i = 0; i < all.size(); ++i)
            if (dot(all[i], x) > all_rhs[i]) return false;
        return true;
    };

    bool any_feasible = false;
    std::vector<std::size_t> basis(d);
    for (std::size_t i = 0; i < d; ++i) basis[i] = i;
    for (;;) {
        Matrix a_b;
        std::vector<Rational> b_b;
        for (auto i : basis) {
            a_b.push_back(all[i]);
            b_b.push_back(all_rhs[i]);
        }
        if (auto x = solve_square(a_b, b_b); x && feasible(*x)) {
            any_feasible = true;
            Matrix a_bt(d, std::vector<Rational>(d));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) a_bt[c][r] = a_b[r][c];
            if (auto y = solve_square(a_bt, lp.objective)) {
                bool dual_feasible = true;
                for (const auto& v : *y) dual_feasible = dual_feasible && v >= 0;
                if (dual_feasible) {
                    LPCertificate cert;
                    cert.primal = *x;
                    cert.value = dot(lp.objective, *x);
                    cert.duals.assign(m, 0);
                    for (std::size_t i = 0; i < d; ++i)
                        if (basis[i] < m) cert.duals[basis[i]] = (*y)[i];
                    cert.basis = basis;
                    return cert;
                }
            }
        }
        // Next d-subset of the constraint indices.
        auto pos = static_cast<std::ptrdiff_t>(d) - 1;
        while (pos >= 0 && basis[static_cast<std::size_t>(pos)] == all.size() - d + static_cast<std::size_t>(pos)) --pos;
        if (pos < 0) break;
        ++basis[static_cast<std::size_t>(pos)];
        for (auto j = static_cast<std::size_t>(pos) + 1; j < d; ++j) basis[j] = basis[j - 1] + 1;
    }
    if (!any_feasible) throw LPError(LPError::Kind::infeasible, "LP is infeasible");
    throw LPError(LPError::Kind::unbounded, "LP is unbounded");
}

bool verify_certificate(const RationalLP& lp, const LPCertificate& cert)
{
    const auto d = lp.variables();
    const auto m = lp.constraints();
    if (cert.primal.size() != d || cert.duals.size() != m) return false;

    for (std::size_t i = 0; i < m; ++i)
        if (dot(lp.rows[i], cert.primal) > lp.rhs[i]) return false;
    for (std::size_t j = 0; j < d; ++j)
        if (lp.nonnegative[j] && cert.primal[j] < 0) return false;
    if (dot(lp.objective, cert.primal) != cert.value) return false;

    for (const auto& y : cert.duals)
        if (y < 0) return false;
    for (std::size_t j = 0; j < d; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) s += cert.duals[i] * lp.rows[i][j];
        if (lp.nonnegative[j] ? s < lp.objective[j] : s != lp.objective[j]) return false;
    }
    return dot(cert.duals, lp.rhs) == cert.value;
}

} // namespace bes
