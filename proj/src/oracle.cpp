#include "bes/oracle.hpp"

#include "bes/bounds.hpp"
#include "bes/checker.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <chrono>
#include <mutex>
#include <thread>

namespace bes {

namespace {

using TripleSet = std::bitset<128>;

// Per-instance tables: triples in lex order, their pairs, and for each triple
// the triple sets of every k-window (vertex set of size min(k, n)) around it.
struct Tables {
    int n, k, s;
    std::vector<Triple> triples;
    std::vector<std::array<int, 3>> pairs_of;
    std::vector<std::vector<TripleSet>> windows;
    int pair_cap;
    std::int64_t cap;

    Tables(int n_, int k_, int s_, std::optional<std::int64_t> hint) : n(n_), k(k_), s(s_)
    {
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                for (Vertex c = b + 1; c < n; ++c) triples.push_back({a, b, c});
        for (const auto& t : triples)
            pairs_of.push_back({static_cast<int>(pair_index(t[0], t[1], n)), static_cast<int>(pair_index(t[0], t[2], n)),
                                static_cast<int>(pair_index(t[1], t[2], n))});

        const int width = std::min(k, n);
        std::vector<TripleSet> inside(std::size_t{1} << n);
        for (std::size_t mask = 0; mask < inside.size(); ++mask)
            for (std::size_t i = 0; i < triples.size(); ++i) {
                const auto& t = triples[i];
                if ((mask >> t[0] & 1) && (mask >> t[1] & 1) && (mask >> t[2] & 1)) inside[mask].set(i);
            }
        windows.resize(triples.size());
        for (std::size_t i = 0; i < triples.size(); ++i) {
            const auto& t = triples[i];
            const unsigned tmask = (1u << t[0]) | (1u << t[1]) | (1u << t[2]);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (std::popcount(mask) != width || (mask & tmask) != tmask) continue;
                auto w = inside[mask];
                w.reset(i);
                windows[i].push_back(w);
            }
        }
        // s triples through one pair span s+2 vertices.
        pair_cap = s + 2 <= k ? s - 1 : n - 2;
        const auto analytic = analytic_cap(n, k, s);
        cap = static_cast<std::int64_t>(triples.size());
        if (analytic) cap = std::min(cap, *analytic);
        if (hint) cap = std::min(cap, *hint);
    }

    [[nodiscard]] bool addable(std::size_t i, const TripleSet& chosen) const
    {
        for (const auto& w : windows[i])
            if (static_cast<int>((chosen & w).count()) >= s - 1) return false;
        return true;
    }
};

struct Shared {
    std::atomic<std::int64_t> best{0};
    std::atomic<bool> done{false};
    std::mutex mu;
    TripleSet witness;
    std::atomic<std::int64_t> nodes{0};
};

struct Task {
    TripleSet chosen;
    std::int64_t count;
    std::size_t next;
};

class Searcher {
public:
    Searcher(const Tables& tab, Shared& shared) : tab_(tab), shared_(shared) {}

    // Explores from a partial solution. With `frontier` set, stops after
    // `split_depth` branchings and emits the open subproblems instead.
    void run(const Task& t, std::vector<Task>* frontier = nullptr, int split_depth = 0)
    {
        chosen_ = t.chosen;
        count_ = t.count;
        codeg_.fill(0);
        for (std::size_t i = 0; i < tab_.triples.size(); ++i)
            if (chosen_.test(i))
                for (auto p : tab_.pairs_of[i]) ++codeg_[static_cast<std::size_t>(p)];
        frontier_ = frontier;
        split_depth_ = split_depth;
        dfs(t.next, 0);
        shared_.nodes += nodes_;
        nodes_ = 0;
    }

private:
    void record()
    {
        if (count_ <= shared_.best.load()) return;
        std::lock_guard lock(shared_.mu);
        if (count_ <= shared_.best.load()) return;
        shared_.best = count_;
        shared_.witness = chosen_;
        if (count_ >= tab_.cap) shared_.done = true;
    }

    // Upper bound on how many of the addable triples can still be added.
    [[nodiscard]] std::int64_t extension_bound(const std::vector<std::size_t>& addable)
    {
        std::array<int, 36> avail{};
        for (auto i : addable)
            for (auto p : tab_.pairs_of[i]) ++avail[static_cast<std::size_t>(p)];
        std::int64_t slots = 0;
        for (std::size_t p = 0; p < avail.size(); ++p)
            slots += std::min(avail[p], std::max(0, tab_.pair_cap - codeg_[p]));
        return std::min<std::int64_t>(static_cast<std::int64_t>(addable.size()), slots / 3);
    }

    void dfs(std::size_t from, int depth)
    {
        ++nodes_;
        record();
        if (shared_.done.load()) return;

        std::vector<std::size_t> addable;
        for (auto i = from; i < tab_.triples.size(); ++i)
            if (tab_.addable(i, chosen_)) addable.push_back(i);
        if (addable.empty()) return;
        if (count_ + extension_bound(addable) <= shared_.best.load()) return;

        if (frontier_ && depth == split_depth_) {
            frontier_->push_back({chosen_, count_, from});
            return;
        }

        const auto i = addable.front();
        chosen_.set(i);
        ++count_;
        for (auto p : tab_.pairs_of[i]) ++codeg_[static_cast<std::size_t>(p)];
        dfs(i + 1, depth + 1);
        for (auto p : tab_.pairs_of[i]) --codeg_[static_cast<std::size_t>(p)];
        --count_;
        chosen_.reset(i);
        if (shared_.done.load()) return;
        dfs(i + 1, depth + 1);
    }

    const Tables& tab_;
    Shared& shared_;
    TripleSet chosen_;
    std::int64_t count_ = 0;
    std::array<int, 36> codeg_{};
    std::int64_t nodes_ = 0;
    std::vector<Task>* frontier_ = nullptr;
    int split_depth_ = 0;
};

} // namespace

OracleResult exact_f(int n, int k, int s, const OracleOptions& opts)
{
    if (n < 0 || n > oracle_max_n)
        throw OracleError("exact search supports 0 <= n <= " + std::to_string(oracle_max_n) + ", got " + std::to_string(n));
    if (k < 4 || s < 2) throw OracleError("need k >= 4 and s >= 2");

    const auto start = std::chrono::steady_clock::now();
    OracleResult res;
    res.n = n;
    res.k = k;
    res.s = s;

    const Tables tab(n, k, s, opts.upper_hint);
    Shared shared;
    if (!tab.triples.empty() && tab.cap >= 1) {
        // Any single triple extends to an optimum by symmetry; fix {0,1,2}.
        Task root{};
        root.chosen.set(0);
        root.count = 1;
        root.next = 1;
        const int threads = std::max(1, opts.threads);
        if (opts.any_witness && threads > 1) {
            std::vector<Task> tasks;
            Searcher(tab, shared).run(root, &tasks, 6);
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            for (int w = 0; w < threads; ++w)
                pool.emplace_back([&] {
                    Searcher worker(tab, shared);
                    for (auto i = next.fetch_add(1); i < tasks.size() && !shared.done; i = next.fetch_add(1))
                        worker.run(tasks[i]);
                });
        } else {
            Searcher(tab, shared).run(root);
        }
    }

    std::vector<Triple> edges;
    for (std::size_t i = 0; i < tab.triples.size(); ++i)
        if (shared.witness.test(i)) edges.push_back(tab.triples[i]);
    res.value = shared.best.load();
    res.witness = TripleSystem(n, std::move(edges));
    res.nodes = shared.nodes.load();
    res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

Verification verify_extremal(const OracleResult& res)
{
    Verification v;
    const auto fail = [&](std::string msg) {
        v.ok = false;
        v.problems.push_back(std::move(msg));
    };
    if (res.witness.vertex_count() != res.n) fail("witness has " + std::to_string(res.witness.vertex_count()) + " vertices, expected " + std::to_string(res.n));
    if (static_cast<std::int64_t>(res.witness.edge_count()) != res.value)
        fail("witness has " + std::to_string(res.witness.edge_count()) + " triples but value is " + std::to_string(res.value));
    try {
        if (auto w = find_config_naive(res.witness, res.k, res.s))
            fail("witness contains " + std::to_string(res.s) + " triples on " + std::to_string(w->k_spanned()) + " vertices");
    } catch (const std::exception& e) {
        fail(std::string("naive re-check failed: ") + e.what());
    }
    if (auto cap = analytic_cap(res.n, res.k, res.s); cap && res.value > *cap)
        fail("value " + std::to_string(res.value) + " exceeds analytic cap " + std::to_string(*cap));
    if (res.k == 5 && res.s == 3 && 5 * res.value > std::int64_t{res.n} * res.n)
        fail("value exceeds n^2/5");
    if (res.s == res.k - 2) {
        const auto avg = averaging_bound(std::max(res.n, 1), res.k);
        if (Rational(res.value) > avg.averaging) fail("value exceeds averaging bound " + to_string(avg.averaging));
    }
    return v;
}

} // namespace bes
