#include "bes/checker.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>

namespace bes {

ForbiddenFamily::ForbiddenFamily(std::initializer_list<Config> members)
    : ForbiddenFamily(std::vector<Config>(members))
{
}

ForbiddenFamily::ForbiddenFamily(std::vector<Config> members) : members_(std::move(members))
{
    for (const auto& c : members_) {
        if (c.k < 4 || c.s < 2 || c.k > 3 * c.s)
            throw CheckerError("invalid family member (" + std::to_string(c.k) + "," +
                               std::to_string(c.s) + "): need k >= 4, s >= 2, k <= 3s");
    }
}

int max_linear_triples(int v) noexcept
{
    if (v < 3) return 0;
    const int base = v * ((v - 1) / 2) / 3;
    return v % 6 == 5 ? base - 1 : base;
}

namespace {

using EdgeId = std::int32_t;

// Vertex and pair incidence lists over edge indices, all ascending.
class Incidence {
public:
    explicit Incidence(const TripleSystem& g) : g_(g)
    {
        const auto n = static_cast<std::size_t>(g.vertex_count());
        vstart_.assign(n + 1, 0);
        for (const auto& e : g.edges())
            for (auto v : e) ++vstart_[static_cast<std::size_t>(v) + 1];
        for (std::size_t i = 0; i < n; ++i) vstart_[i + 1] += vstart_[i];
        vedges_.resize(vstart_[n]);
        auto fill = vstart_;
        pair_entries_.reserve(3 * g.edge_count());
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            const auto& e = g.edge(i);
            for (auto v : e) vedges_[fill[static_cast<std::size_t>(v)]++] = static_cast<EdgeId>(i);
            pair_entries_.push_back({key(e[0], e[1]), static_cast<EdgeId>(i)});
            pair_entries_.push_back({key(e[0], e[2]), static_cast<EdgeId>(i)});
            pair_entries_.push_back({key(e[1], e[2]), static_cast<EdgeId>(i)});
        }
        std::sort(pair_entries_.begin(), pair_entries_.end());
    }

    [[nodiscard]] std::span<const EdgeId> vertex_edges(Vertex v) const
    {
        const auto i = static_cast<std::size_t>(v);
        return {vedges_.data() + vstart_[i], vstart_[i + 1] - vstart_[i]};
    }

    template <typename F>
    void for_pair_edges(Vertex u, Vertex v, F&& f) const
    {
        const auto k = key(std::min(u, v), std::max(u, v));
        auto it = std::lower_bound(pair_entries_.begin(), pair_entries_.end(), PairEntry{k, -1});
        for (; it != pair_entries_.end() && it->key == k; ++it) f(it->edge);
    }

    // Pairs of codegree >= 2, descending codegree then lexicographic, with
    // their incident edges.
    [[nodiscard]] std::vector<std::pair<Pair, std::vector<EdgeId>>> heavy_pairs() const
    {
        std::vector<std::pair<Pair, std::vector<EdgeId>>> out;
        for (std::size_t i = 0; i < pair_entries_.size();) {
            std::size_t j = i;
            while (j < pair_entries_.size() && pair_entries_[j].key == pair_entries_[i].key) ++j;
            if (j - i >= 2) {
                std::vector<EdgeId> es;
                for (auto x = i; x < j; ++x) es.push_back(pair_entries_[x].edge);
                out.emplace_back(unkey(pair_entries_[i].key), std::move(es));
            }
            i = j;
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
        return out;
    }

    [[nodiscard]] const TripleSystem& system() const noexcept { return g_; }

private:
    struct PairEntry {
        std::uint64_t key;
        EdgeId edge;
        friend bool operator<(const PairEntry& a, const PairEntry& b)
        {
            return a.key != b.key ? a.key < b.key : a.edge < b.edge;
        }
    };

    static std::uint64_t key(Vertex u, Vertex v)
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
    }
    static Pair unkey(std::uint64_t k)
    {
        return {static_cast<Vertex>(k >> 32), static_cast<Vertex>(k & 0xffffffffu)};
    }

    const TripleSystem& g_;
    std::vector<std::size_t> vstart_;
    std::vector<EdgeId> vedges_;
    std::vector<PairEntry> pair_entries_;
};

int shared_vertices(const Triple& a, const Triple& b)
{
    int c = 0;
    for (auto u : a)
        for (auto v : b) c += (u == v);
    return c;
}

class Search {
public:
    Search(const Incidence& inc, int k, int s, bool linear_only)
        : inc_(inc), g_(inc.system()), k_(k), s_(s), linear_only_(linear_only)
    {
    }

    // Seeds the search with root edges and explores extensions whose added
    // edges have indices ascending and greater than `floor`.
    bool run(std::span<const EdgeId> root, EdgeId floor)
    {
        chosen_.assign(root.begin(), root.end());
        span_.clear();
        for (auto e : root) add_span(g_.edge(static_cast<std::size_t>(e)));
        if (static_cast<int>(span_.size()) > k_) return false;
        return extend(floor);
    }

    [[nodiscard]] ConfigWitness witness() const
    {
        ConfigWitness w;
        for (auto e : chosen_) w.edges.push_back(g_.edge(static_cast<std::size_t>(e)));
        std::sort(w.edges.begin(), w.edges.end());
        w.span = span_;
        return w;
    }

private:
    void add_span(const Triple& e)
    {
        for (auto v : e) {
            auto it = std::lower_bound(span_.begin(), span_.end(), v);
            if (it == span_.end() || *it != v) span_.insert(it, v);
        }
    }

    [[nodiscard]] int new_vertices(const Triple& e) const
    {
        int c = 0;
        for (auto v : e) c += !std::binary_search(span_.begin(), span_.end(), v);
        return c;
    }

    [[nodiscard]] bool admissible(EdgeId id, EdgeId floor, int budget) const
    {
        if (id <= floor) return false;
        if (std::find(chosen_.begin(), chosen_.end(), id) != chosen_.end()) return false;
        const auto& e = g_.edge(static_cast<std::size_t>(id));
        if (new_vertices(e) > budget) return false;
        if (linear_only_) {
            for (auto c : chosen_)
                if (shared_vertices(e, g_.edge(static_cast<std::size_t>(c))) >= 2) return false;
        }
        return true;
    }

    // Every edge that could still join the configuration: the span only
    // grows, so later candidate sets are subsets of this one.
    std::vector<EdgeId> candidates(EdgeId floor, int budget) const
    {
        std::vector<EdgeId> out;
        if (budget >= 3) {
            for (auto i = floor + 1; i < static_cast<EdgeId>(g_.edge_count()); ++i)
                if (admissible(i, floor, budget)) out.push_back(i);
            return out;
        }
        if (budget == 2) {
            for (auto v : span_)
                for (auto id : inc_.vertex_edges(v))
                    if (admissible(id, floor, budget)) out.push_back(id);
        } else {
            for (std::size_t i = 0; i < span_.size(); ++i)
                for (std::size_t j = i + 1; j < span_.size(); ++j)
                    inc_.for_pair_edges(span_[i], span_[j], [&](EdgeId id) {
                        if (admissible(id, floor, budget)) out.push_back(id);
                    });
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool extend(EdgeId floor)
    {
        const int need = s_ - static_cast<int>(chosen_.size());
        if (need <= 0) return true;
        const int budget = k_ - static_cast<int>(span_.size());
        const auto cands = candidates(floor, budget);
        if (static_cast<int>(cands.size()) < need) return false;

        for (std::size_t i = 0; i + static_cast<std::size_t>(need) <= cands.size(); ++i) {
            const auto id = cands[i];
            const auto& e = g_.edge(static_cast<std::size_t>(id));
            if (new_vertices(e) > budget) continue;
            if (linear_only_) {
                bool ok = true;
                for (auto c : chosen_)
                    if (shared_vertices(e, g_.edge(static_cast<std::size_t>(c))) >= 2) ok = false;
                if (!ok) continue;
            }
            const auto saved = span_;
            chosen_.push_back(id);
            add_span(e);
            if (extend(id)) return true;
            chosen_.pop_back();
            span_ = saved;
        }
        return false;
    }

    const Incidence& inc_;
    const TripleSystem& g_;
    int k_;
    int s_;
    bool linear_only_;
    std::vector<EdgeId> chosen_;
    std::vector<Vertex> span_;
};

struct Root {
    std::array<EdgeId, 2> edges;
    int size;  // 2: edges sharing a pair; 1: single edge, linear search
};

void validate(int k, int s)
{
    if (k < 4) throw CheckerError("k must be at least 4, got " + std::to_string(k));
    if (s < 2) throw CheckerError("s must be at least 2, got " + std::to_string(s));
}

} // namespace

std::optional<ConfigWitness> find_config(const TripleSystem& g, int k, int s, FindOptions opts)
{
    validate(k, s);
    if (static_cast<std::size_t>(s) > g.edge_count()) return std::nullopt;

    const Incidence inc(g);
    std::vector<Root> roots;
    for (const auto& [pair, es] : inc.heavy_pairs())
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j) roots.push_back({{es[i], es[j]}, 2});

    // A configuration with no two edges sharing a pair is linear; if no
    // linear 3-graph has s edges on k vertices, the pair roots are complete.
    if (max_linear_triples(k) >= s)
        for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) roots.push_back({{e, -1}, 1});

    const auto explore = [&](std::size_t r, std::optional<ConfigWitness>& out) {
        const auto& root = roots[r];
        const bool linear = root.size == 1;
        Search search(inc, k, s, linear);
        const EdgeId floor = linear ? root.edges[0] : -1;
        if (!search.run(std::span<const EdgeId>(root.edges.data(), static_cast<std::size_t>(root.size)), floor))
            return false;
        out = search.witness();
        return true;
    };

    const int threads = std::max(1, opts.threads);
    if (threads == 1 || roots.size() < 2) {
        std::optional<ConfigWitness> out;
        for (std::size_t r = 0; r < roots.size(); ++r)
            if (explore(r, out)) return out;
        return std::nullopt;
    }

    // Workers pull roots in order; the smallest successful root wins, so the
    // witness matches the sequential one.
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{none};
    std::vector<std::optional<ConfigWitness>> found(static_cast<std::size_t>(threads));
    std::vector<std::size_t> found_root(static_cast<std::size_t>(threads), none);
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                const auto slot = static_cast<std::size_t>(w);
                for (;;) {
                    const auto r = next.fetch_add(1);
                    if (r >= roots.size() || r > best.load()) return;
                    std::optional<ConfigWitness> out;
                    if (explore(r, out)) {
                        if (r < found_root[slot]) {
                            found_root[slot] = r;
                            found[slot] = std::move(out);
                        }
                        auto cur = best.load();
                        while (r < cur && !best.compare_exchange_weak(cur, r)) {
                        }
                        return;
                    }
                }
            });
        }
    }
    const auto winner = best.load();
    if (winner == none) return std::nullopt;
    for (std::size_t w = 0; w < found.size(); ++w)
        if (found_root[w] == winner) return found[w];
    return std::nullopt;
}

std::optional<ConfigWitness> find_config_naive(const TripleSystem& g, int k, int s)
{
    validate(k, s);
    const auto m = g.edge_count();
    if (static_cast<std::size_t>(s) > m) return std::nullopt;

    // C(m, s) with saturation at the guard.
    long double subsets = 1;
    for (int i = 0; i < s; ++i) subsets = subsets * static_cast<long double>(m - static_cast<std::size_t>(i)) / (i + 1);
    if (subsets > static_cast<long double>(naive_subset_limit))
        throw CheckerError("naive search over C(" + std::to_string(m) + "," + std::to_string(s) +
                           ") subsets exceeds the guard");

    std::vector<std::size_t> idx(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<Vertex> span;
    for (;;) {
        span.clear();
        for (auto i : idx)
            for (auto v : g.edge(i)) span.push_back(v);
        std::sort(span.begin(), span.end());
        span.erase(std::unique(span.begin(), span.end()), span.end());
        if (static_cast<int>(span.size()) <= k) {
            ConfigWitness w;
            for (auto i : idx) w.edges.push_back(g.edge(i));
            w.span = span;
            return w;
        }
        // Next combination in lexicographic order.
        auto pos = static_cast<std::ptrdiff_t>(s) - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - static_cast<std::size_t>(s) + static_cast<std::size_t>(pos)) --pos;
        if (pos < 0) return std::nullopt;
        ++idx[static_cast<std::size_t>(pos)];
        for (auto j = static_cast<std::size_t>(pos) + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
}

FreenessResult is_free(const TripleSystem& g, const ForbiddenFamily& fam, FindOptions opts)
{
    for (const auto& c : fam.members()) {
        if (auto w = find_config(g, c.k, c.s, opts)) return {false, c, std::move(w)};
    }
    return {};
}

} // namespace bes
