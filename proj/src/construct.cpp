#include "bes/construct.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

namespace bes {

Gadget build_gadget(int t)
{
    if (t < 1) throw std::invalid_argument("gadget parameter t must be >= 1, got " + std::to_string(t));
    Gadget g;
    g.t = t;
    constexpr Vertex a = 0, b = 1;
    g.h_edges.push_back({a, b});
    for (Vertex x = 2; x < 2 * t + 2; ++x) {
        g.h_edges.push_back({a, x});
        g.h_edges.push_back({b, x});
    }
    for (int i = 0; i < t; ++i) {
        const Vertex x1 = 2 + 2 * i, x2 = 3 + 2 * i;
        g.h_edges.push_back({x1, x2});
        g.hat_edges.push_back({a, x1, x2});
        g.hat_edges.push_back({b, x1, x2});
    }
    return g;
}

namespace {

// Uniform integer in [0, bound) by rejection; mt19937_64's output sequence is
// fixed by the standard, so this keeps runs reproducible across toolchains.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const auto r = rng();
        if (r < limit) return r % bound;
    }
}

// The uncovered pairs of K_n: adjacency bitsets for neighbourhood queries and
// a swap-remove list for uniform sampling.
class Leftover {
public:
    explicit Leftover(int n)
        : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64),
          bits_(static_cast<std::size_t>(n) * words_, 0), pos_(static_cast<std::size_t>(pair_count(n)), -1)
    {
        list_.reserve(static_cast<std::size_t>(pair_count(n)));
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                pos_[index(u, v)] = static_cast<std::int64_t>(list_.size());
                list_.push_back({u, v});
                set(u, v);
                set(v, u);
            }
    }

    [[nodiscard]] std::size_t size() const noexcept { return list_.size(); }
    [[nodiscard]] Pair at(std::size_t i) const { return list_[i]; }

    [[nodiscard]] bool has(Vertex u, Vertex v) const noexcept
    {
        return (row(u)[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1u;
    }

    void remove(Vertex u, Vertex v)
    {
        const auto i = index(u, v);
        const auto p = pos_[i];
        const auto last = list_.back();
        list_[static_cast<std::size_t>(p)] = last;
        pos_[index(last[0], last[1])] = p;
        list_.pop_back();
        pos_[i] = -1;
        clear(u, v);
        clear(v, u);
    }

    // Vertices w with both aw and bw uncovered, ascending.
    void common_neighbours(Vertex a, Vertex b, std::vector<Vertex>& out) const
    {
        out.clear();
        const auto* ra = row(a);
        const auto* rb = row(b);
        for (std::size_t w = 0; w < words_; ++w) {
            auto word = ra[w] & rb[w];
            while (word) {
                const int bit = std::countr_zero(word);
                out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit)));
                word &= word - 1;
            }
        }
    }

private:
    [[nodiscard]] std::size_t index(Vertex u, Vertex v) const noexcept
    {
        return static_cast<std::size_t>(pair_index(u, v, n_));
    }
    [[nodiscard]] const std::uint64_t* row(Vertex u) const noexcept
    {
        return bits_.data() + static_cast<std::size_t>(u) * words_;
    }
    void set(Vertex u, Vertex v) { bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |= 1ull << (v % 64); }
    void clear(Vertex u, Vertex v) { bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] &= ~(1ull << (v % 64)); }

    int n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::int64_t> pos_;
    std::vector<Pair> list_;
};

class GreedyPacker {
public:
    GreedyPacker(int n, std::uint64_t seed) : leftover_(n), rng_(seed) {}

    // Packs copies of H_t until `budget` consecutive attempts fail.
    void run(int t, std::int64_t budget, std::vector<Embedding>& out, std::int64_t& attempts)
    {
        std::int64_t failures = 0;
        while (failures < budget && leftover_.size() > 0) {
            ++attempts;
            if (auto e = attempt(t)) {
                commit(*e);
                out.push_back(std::move(*e));
                failures = 0;
            } else {
                ++failures;
            }
        }
    }

    [[nodiscard]] std::int64_t leftover() const noexcept { return static_cast<std::int64_t>(leftover_.size()); }

private:
    std::optional<Embedding> attempt(int t)
    {
        auto ab = leftover_.at(uniform_below(rng_, leftover_.size()));
        if (uniform_below(rng_, 2) == 1) std::swap(ab[0], ab[1]);
        const Vertex a = ab[0], b = ab[1];

        leftover_.common_neighbours(a, b, common_);
        const auto m = common_.size();
        if (m < static_cast<std::size_t>(2 * t)) return std::nullopt;
        std::rotate(common_.begin(), common_.begin() + static_cast<std::ptrdiff_t>(uniform_below(rng_, m)),
                    common_.end());

        used_.assign(m, false);
        Embedding e{t, {a, b}};
        int matched = 0;
        for (std::size_t i = 0; i < m && matched < t; ++i) {
            if (used_[i]) continue;
            for (std::size_t j = i + 1; j < m; ++j) {
                if (!used_[j] && leftover_.has(common_[i], common_[j])) {
                    used_[i] = used_[j] = true;
                    e.image.push_back(common_[i]);
                    e.image.push_back(common_[j]);
                    ++matched;
                    break;
                }
            }
        }
        if (matched < t) return std::nullopt;
        return e;
    }

    void commit(const Embedding& e)
    {
        const Vertex a = e.image[0], b = e.image[1];
        leftover_.remove(a, b);
        for (std::size_t i = 2; i < e.image.size(); ++i) {
            leftover_.remove(a, e.image[i]);
            leftover_.remove(b, e.image[i]);
        }
        for (std::size_t i = 2; i < e.image.size(); i += 2) leftover_.remove(e.image[i], e.image[i + 1]);
    }

    Leftover leftover_;
    std::mt19937_64 rng_;
    std::vector<Vertex> common_;
    std::vector<bool> used_;
};

} // namespace

PackingResult greedy_pack(int n, int t, const PackOptions& opts)
{
    if (t < 1) throw std::invalid_argument("gadget parameter t must be >= 1, got " + std::to_string(t));
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");

    PackingResult res;
    res.n = n;
    res.t = t;
    res.seed = opts.seed;
    res.budget = opts.budget;
    res.cascade = opts.cascade;
    if (n < 2 * t + 2) {
        res.too_small = true;
        res.leftover_pairs = pair_count(n);
        return res;
    }

    GreedyPacker packer(n, opts.seed);
    packer.run(t, opts.budget, res.embeddings, res.attempts);
    if (opts.cascade && t > 1) packer.run(1, opts.budget, res.embeddings, res.attempts);

    for (const auto& e : res.embeddings) res.covered_pairs += 5 * e.t + 1;
    res.leftover_pairs = packer.leftover();
    return res;
}

void validate_packing(const PackingResult& packing)
{
    const int n = packing.n;
    std::vector<char> used(static_cast<std::size_t>(pair_count(n)), 0);
    std::int64_t covered = 0;
    for (const auto& e : packing.embeddings) {
        const auto gadget = build_gadget(e.t);
        if (static_cast<int>(e.image.size()) != gadget.vertex_count())
            throw std::logic_error("embedding has the wrong number of vertices");
        auto sorted = e.image;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::logic_error("embedding is not injective");
        if (sorted.front() < 0 || sorted.back() >= n) throw std::logic_error("embedding leaves K_n");
        for (const auto& p : gadget.h_edges) {
            auto& slot = used[static_cast<std::size_t>(pair_index(e.image[p[0]], e.image[p[1]], n))];
            if (slot) throw std::logic_error("embeddings share a pair");
            slot = 1;
            ++covered;
        }
    }
    if (covered != packing.covered_pairs) throw std::logic_error("covered pair count mismatch");
    if (covered + packing.leftover_pairs != pair_count(n)) throw std::logic_error("covered + leftover != C(n,2)");
}

TripleSystem lift(const PackingResult& packing)
{
    std::vector<Triple> triples;
    for (const auto& e : packing.embeddings) {
        const Vertex a = e.image[0], b = e.image[1];
        for (std::size_t i = 2; i + 1 < e.image.size(); i += 2) {
            triples.push_back(make_triple(a, e.image[i], e.image[i + 1]));
            triples.push_back(make_triple(b, e.image[i], e.image[i + 1]));
        }
    }
    return TripleSystem(packing.n, std::move(triples));
}

int recommended_t(const Rational& eps)
{
    if (eps <= 0 || eps >= Rational(1, 5))
        throw std::invalid_argument("eps must lie strictly between 0 and 1/5, got " + to_string(eps));
    const Rational target = (1 - 5 * eps) / (1 - 4 * eps);
    const auto holds = [&](const BigInt& t) { return Rational(5 * t, 5 * t + 1) >= target; };

    // 5t/(5t+1) >= R  <=>  t >= R / (5(1-R)), then confirm exactly.
    const Rational bound = target / (5 * (1 - target));
    BigInt t = boost::multiprecision::numerator(bound) / boost::multiprecision::denominator(bound);
    if (t < 1) t = 1;
    while (t > 1 && holds(t - 1)) --t;
    while (!holds(t)) ++t;
    if (t > std::numeric_limits<int>::max()) throw std::overflow_error("recommended t exceeds int range");
    return t.convert_to<int>();
}

TripleSystem bose_steiner(int n)
{
    if (n < 3 || n % 6 != 3)
        throw std::invalid_argument("Bose construction needs n = 3 (mod 6), got " + std::to_string(n));
    // Idempotent commutative quasigroup x o y = (x + y)/2 on Z_m, m odd.
    const int m = n / 3;
    const int half = (m + 1) / 2;
    const auto point = [m](int x, int layer) { return x + layer * m; };
    const auto op = [m, half](int x, int y) { return static_cast<int>((static_cast<long long>(x + y) * half) % m); };

    std::vector<Triple> triples;
    for (int x = 0; x < m; ++x) triples.push_back(make_triple(point(x, 0), point(x, 1), point(x, 2)));
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
            for (int layer = 0; layer < 3; ++layer)
                triples.push_back(make_triple(point(x, layer), point(y, layer), point(op(x, y), (layer + 1) % 3)));
    return TripleSystem(n, std::move(triples));
}

TripleSystem fano_plane()
{
    std::vector<Triple> lines;
    for (int i = 0; i < 7; ++i) lines.push_back(make_triple(i, (i + 1) % 7, (i + 3) % 7));
    return TripleSystem(7, std::move(lines));
}

} // namespace bes
