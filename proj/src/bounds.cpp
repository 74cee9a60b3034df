#include "bes/bounds.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bes {

RationalLP five_three_program(const Rational& b)
{
    RationalLP lp;
    lp.names = {"x", "y"};
    lp.objective = {1, 2};
    lp.rows = {{-1, 4}, {1, 1}};
    lp.rhs = {0, b};
    lp.nonnegative = {true, true};
    return lp;
}

RationalLP six_four_program()
{
    RationalLP lp;
    lp.names = {"e1", "e2", "e3"};
    lp.objective = {Rational(1, 3), Rational(2, 3), Rational(1)};
    lp.rows = {{1, 1, 1}, {Rational(-8, 3), Rational(20, 3), Rational(16)}};
    lp.rhs = {Rational(1, 2), 0};
    lp.nonnegative = {true, true, true};
    return lp;
}

LPCertificate lp_five_three(const Rational& b)
{
    if (b < 0) throw std::invalid_argument("b must be non-negative, got " + to_string(b));
    return solve_lp(five_three_program(b));
}

LPCertificate lp_six_four()
{
    return solve_lp(six_four_program());
}

TripleClassification classify_triples(const TripleSystem& g)
{
    const CodegreeClasses cls(g);
    TripleClassification out;
    out.codegree_sums.reserve(g.edge_count());
    out.patterns.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        std::array<int, 3> p{cls.codegree(e[0], e[1]), cls.codegree(e[0], e[2]), cls.codegree(e[1], e[2])};
        std::sort(p.begin(), p.end(), std::greater<>());
        out.patterns.push_back(p);
        out.codegree_sums.push_back(p[0] + p[1] + p[2]);
        if (p == std::array<int, 3>{3, 1, 1})
            out.t1.push_back(e);
        else if (p == std::array<int, 3>{2, 2, 1})
            out.t2.push_back(e);
        else
            out.remainder.push_back(e);
    }
    return out;
}

bool AuditReport::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::int64_t AuditReport::count(const std::string& name) const
{
    for (const auto& [k, v] : counts)
        if (k == name) return v;
    throw std::out_of_range("no count named " + name);
}

const AuditCheck& AuditReport::check(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
}

namespace {

void require_free(const TripleSystem& g, const ForbiddenFamily& fam, const std::string& audit, FindOptions opts)
{
    auto res = is_free(g, fam, opts);
    if (res.free) return;
    throw AuditPrecondition(audit + ": input contains " + std::to_string(res.violated->s) + " edges on at most " +
                                std::to_string(res.violated->k) + " vertices",
                            *res.violated, std::move(*res.witness));
}

std::string pair_str(Pair p)
{
    return std::to_string(p[0]) + "-" + std::to_string(p[1]);
}

// Third vertices of the edges through the pair {u, v}, ascending.
class PairLinks {
public:
    explicit PairLinks(const TripleSystem& g)
    {
        for (const auto& e : g.edges()) {
            links_[{e[0], e[1]}].push_back(e[2]);
            links_[{e[0], e[2]}].push_back(e[1]);
            links_[{e[1], e[2]}].push_back(e[0]);
        }
    }
    [[nodiscard]] const std::vector<Vertex>& operator()(Vertex u, Vertex v) const
    {
        static const std::vector<Vertex> empty;
        auto it = links_.find(make_pair(u, v));
        return it == links_.end() ? empty : it->second;
    }

private:
    std::map<Pair, std::vector<Vertex>> links_;
};

// Records each pair's owner; reports the first pair claimed twice or not in G1.
class DisjointPairSets {
public:
    DisjointPairSets(const CodegreeClasses& cls) : cls_(cls) {}

    void add(const std::vector<Pair>& set, const std::string& owner)
    {
        for (auto p : set) {
            p = make_pair(p[0], p[1]);
            if (cls_.codegree(p) != 1 && outside_g1_.empty())
                outside_g1_ = "pair " + pair_str(p) + " of " + owner + " has codegree " + std::to_string(cls_.codegree(p));
            auto [it, inserted] = owner_.emplace(p, owner);
            if (!inserted && overlap_.empty()) overlap_ = "pair " + pair_str(p) + " in both " + it->second + " and " + owner;
        }
        total_ += static_cast<std::int64_t>(set.size());
    }

    [[nodiscard]] const std::string& outside_g1() const noexcept { return outside_g1_; }
    [[nodiscard]] const std::string& overlap() const noexcept { return overlap_; }
    [[nodiscard]] std::int64_t total() const noexcept { return total_; }

private:
    const CodegreeClasses& cls_;
    std::map<Pair, std::string> owner_;
    std::string outside_g1_;
    std::string overlap_;
    std::int64_t total_ = 0;
};

AuditCheck make_check(std::string name, bool ok, std::string detail)
{
    return {std::move(name), ok, std::move(detail)};
}

} // namespace

AuditReport audit_five_three(const TripleSystem& g, FindOptions opts)
{
    require_free(g, ForbiddenFamily{{5, 3}}, "five-three audit", opts);
    const CodegreeClasses cls(g);
    const PairLinks links(g);
    const std::int64_t n = g.vertex_count();
    const auto e = static_cast<std::int64_t>(g.edge_count());
    const auto g1 = cls.count(1), g2 = cls.count(2);

    DisjointPairSets sets(cls);
    for (auto p : cls.pairs(2).pairs()) {
        const auto& z = links(p[0], p[1]);
        const Vertex x = p[0], y = p[1];
        sets.add({{x, z[0]}, {y, z[0]}, {x, z[1]}, {y, z[1]}}, "E_" + pair_str(p));
    }

    AuditReport r;
    r.audit = "five-three";
    r.counts = {{"n", n}, {"edges", e}, {"g0", cls.count(0)}, {"g1", g1}, {"g2", g2}, {"max_codegree", cls.max_codegree()}};
    r.checks.push_back(make_check("pair_sets_in_g1", sets.outside_g1().empty(), sets.outside_g1()));
    r.checks.push_back(make_check("pair_sets_disjoint", sets.overlap().empty(), sets.overlap()));
    r.checks.push_back(make_check("g1_at_least_4g2", g1 >= 4 * g2,
                                  std::to_string(g1) + " >= " + std::to_string(4 * g2)));
    r.checks.push_back(make_check("handshake", 3 * e == g1 + 2 * g2,
                                  std::to_string(3 * e) + " == " + std::to_string(g1 + 2 * g2)));
    r.checks.push_back(make_check("edge_bound", 5 * e <= n * (n - 1),
                                  std::to_string(e) + " <= " + to_string(Rational(n * (n - 1), 5))));
    return r;
}

AuditReport audit_six_four(const TripleSystem& g, FindOptions opts)
{
    require_free(g, ForbiddenFamily{{6, 4}, {4, 3}}, "six-four audit", opts);
    const CodegreeClasses cls(g);
    const PairLinks links(g);
    const auto tc = classify_triples(g);
    const std::int64_t n = g.vertex_count();
    const auto e = static_cast<std::int64_t>(g.edge_count());
    const auto g1 = cls.count(1), g2 = cls.count(2), g3 = cls.count(3);
    const auto t1 = static_cast<std::int64_t>(tc.t1.size());
    const auto t2 = static_cast<std::int64_t>(tc.t2.size());

    DisjointPairSets sets(cls);
    for (auto p : cls.pairs(3).pairs()) {
        const auto& z = links(p[0], p[1]);
        const Vertex x = p[0], y = p[1];
        sets.add({{x, z[0]}, {x, z[1]}, {x, z[2]}, {y, z[0]}, {y, z[1]}, {y, z[2]}}, "E_" + pair_str(p));
    }
    std::string w_problem;
    for (const auto& tri : tc.t2) {
        // x is the vertex shared by the two codegree-2 pairs; d(yz) = 1.
        Vertex x = -1, y = -1, z = -1;
        for (int i = 0; i < 3; ++i) {
            const Vertex a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
            if (cls.codegree(a, b) == 1) {
                x = tri[i];
                y = a;
                z = b;
            }
        }
        const auto other = [&](Vertex u, Vertex v, Vertex skip) {
            for (auto w : links(u, v))
                if (w != skip) return w;
            return Vertex{-1};
        };
        const Vertex w1 = other(x, y, z), w2 = other(x, z, y);
        const std::string owner = "E_" + std::to_string(x) + "-" + std::to_string(y) + "-" + std::to_string(z);
        if (w_problem.empty() && (w1 < 0 || w2 < 0 || w1 == w2))
            w_problem = owner + ": no distinct w1, w2";
        sets.add({{x, w1}, {y, w1}, {x, w2}, {z, w2}, {y, z}}, owner);
    }

    bool sums_ok = true;
    std::string sums_detail;
    for (std::size_t i = 0; i < tc.patterns.size(); ++i) {
        const auto& p = tc.patterns[i];
        const bool special = p == std::array<int, 3>{3, 1, 1} || p == std::array<int, 3>{2, 2, 1};
        const bool ok = special ? tc.codegree_sums[i] == 5 : tc.codegree_sums[i] <= 4;
        if (!ok && sums_ok) {
            const auto& t = g.edge(i);
            sums_detail = "triple " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) +
                          " has codegree sum " + std::to_string(tc.codegree_sums[i]);
        }
        sums_ok = sums_ok && ok;
    }

    AuditReport r;
    r.audit = "six-four";
    r.counts = {{"n", n},   {"edges", e}, {"g0", cls.count(0)}, {"g1", g1},
                {"g2", g2}, {"g3", g3},   {"t1", t1},           {"t2", t2},
                {"remainder", static_cast<std::int64_t>(tc.remainder.size())},
                {"max_codegree", cls.max_codegree()}};
    r.checks.push_back(make_check("max_codegree_at_most_3", cls.max_codegree() <= 3, std::to_string(cls.max_codegree())));
    r.checks.push_back(make_check("t1_is_3g3", t1 == 3 * g3, std::to_string(t1) + " == " + std::to_string(3 * g3)));
    r.checks.push_back(make_check("codegree_sums", sums_ok, sums_detail));
    r.checks.push_back(make_check("double_count", -g1 + 4 * g2 + 6 * g3 <= 3 * t2,
                                  "-g1/3 + 4g2/3 + 2g3 = " + to_string(Rational(-g1 + 4 * g2 + 6 * g3, 3)) +
                                      " <= " + std::to_string(t2)));
    r.checks.push_back(make_check("w_vertices_distinct", w_problem.empty(), w_problem));
    r.checks.push_back(make_check("pair_sets_in_g1", sets.outside_g1().empty(), sets.outside_g1()));
    r.checks.push_back(make_check("pair_sets_disjoint", sets.overlap().empty(), sets.overlap()));
    r.checks.push_back(make_check("g1_lower_bound", g1 >= 6 * g3 + 5 * t2,
                                  std::to_string(g1) + " >= " + std::to_string(6 * g3 + 5 * t2)));
    r.checks.push_back(make_check("lp_constraint", -8 * g1 + 20 * g2 + 48 * g3 <= 0,
                                  "-8g1/3 + 20g2/3 + 16g3 = " + to_string(Rational(-8 * g1 + 20 * g2 + 48 * g3, 3)) + " <= 0"));
    r.checks.push_back(make_check("edge_bound", 14 * e <= 3 * n * n,
                                  std::to_string(e) + " <= " + to_string(Rational(3 * n * n, 14))));
    return r;
}

AuditReport audit_injection(const TripleSystem& g, FindOptions opts)
{
    require_free(g, ForbiddenFamily{{5, 3}, {6, 4}}, "injection audit", opts);
    const CodegreeClasses cls(g);
    const PairLinks links(g);
    const std::int64_t n = g.vertex_count();
    const auto e = static_cast<std::int64_t>(g.edge_count());

    std::map<Pair, Pair> image_owner;
    std::string not_g0, not_injective;
    for (auto p : cls.pairs(2).pairs()) {
        const auto& z = links(p[0], p[1]);
        const Pair phi = make_pair(z[0], z[1]);
        if (cls.codegree(phi) != 0 && not_g0.empty())
            not_g0 = "phi(" + pair_str(p) + ") = " + pair_str(phi) + " has codegree " + std::to_string(cls.codegree(phi));
        auto [it, inserted] = image_owner.emplace(phi, p);
        if (!inserted && not_injective.empty())
            not_injective = "phi(" + pair_str(it->second) + ") = phi(" + pair_str(p) + ") = " + pair_str(phi);
    }

    AuditReport r;
    r.audit = "injection";
    r.counts = {{"n", n},
                {"edges", e},
                {"g0", cls.count(0)},
                {"g1", cls.count(1)},
                {"g2", cls.count(2)},
                {"phi_images", static_cast<std::int64_t>(image_owner.size())}};
    r.checks.push_back(make_check("max_codegree_at_most_2", cls.max_codegree() <= 2, std::to_string(cls.max_codegree())));
    r.checks.push_back(make_check("phi_into_g0", not_g0.empty(), not_g0));
    r.checks.push_back(make_check("phi_injective", not_injective.empty(), not_injective));
    r.checks.push_back(make_check("g2_at_most_g0", cls.count(2) <= cls.count(0),
                                  std::to_string(cls.count(2)) + " <= " + std::to_string(cls.count(0))));
    r.checks.push_back(make_check("edge_bound", 3 * e <= pair_count(n),
                                  std::to_string(3 * e) + " <= " + std::to_string(pair_count(n))));
    return r;
}

AveragingBound averaging_bound(std::int64_t n, int k)
{
    if (k < 4) throw std::invalid_argument("averaging bound needs k >= 4, got " + std::to_string(k));
    if (n < 1) throw std::invalid_argument("averaging bound needs n >= 1");
    return {Rational(BigInt(k - 3) * n * (n - 1), 3 * (k - 2)), Rational(BigInt(k - 3) * pair_count(n), 3)};
}

std::optional<std::int64_t> analytic_cap(int n, int k, int s)
{
    const std::int64_t nn = n;
    std::optional<std::int64_t> cap;
    const auto offer = [&](std::int64_t v) { cap = cap ? std::min(*cap, v) : v; };
    if (s + 2 <= k) offer((s - 1) * pair_count(nn) / 3);
    if (k == 5 && s == 3) offer(nn * (nn - 1) / 5);
    if (k == 6 && s == 4) offer(3 * nn * nn / 14);
    return cap;
}

} // namespace bes
