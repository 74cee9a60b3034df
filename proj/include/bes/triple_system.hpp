#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bes {

using Vertex = int;

/// An unordered vertex triple, always stored ascending.
using Triple = std::array<Vertex, 3>;

/// An unordered vertex pair, always stored ascending.
using Pair = std::array<Vertex, 2>;

/// Sorts the three vertices of a triple; does not validate.
constexpr Triple make_triple(Vertex u, Vertex v, Vertex w) noexcept
{
    if (u > v) std::swap(u, v);
    if (v > w) std::swap(v, w);
    if (u > v) std::swap(u, v);
    return {u, v, w};
}

constexpr Pair make_pair(Vertex u, Vertex v) noexcept
{
    return u < v ? Pair{u, v} : Pair{v, u};
}

/// Number of unordered pairs on n vertices.
constexpr std::int64_t pair_count(std::int64_t n) noexcept
{
    return n * (n - 1) / 2;
}

/// Dense index of the pair {u,v} (u < v) among all pairs on n vertices,
/// in lexicographic order.
constexpr std::int64_t pair_index(Vertex u, Vertex v, std::int64_t n) noexcept
{
    if (u > v) std::swap(u, v);
    return std::int64_t(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

class InvalidSystem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A 3-uniform hypergraph on the vertices 0..n-1.
///
/// Edges are kept sorted lexicographically with no duplicates, so two systems
/// compare equal exactly when their canonical serializations agree. Immutable
/// once built.
class TripleSystem {
public:
    TripleSystem() = default;

    /// Validates and canonicalizes. Throws InvalidSystem on out-of-range or
    /// repeated vertices and on duplicate triples.
    TripleSystem(int n, std::vector<Triple> edges);

    [[nodiscard]] int vertex_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] std::span<const Triple> edges() const noexcept { return edges_; }
    [[nodiscard]] const Triple& edge(std::size_t i) const { return edges_[i]; }

    /// Index of the given triple in edges(), or -1.
    [[nodiscard]] std::ptrdiff_t find(const Triple& t) const noexcept;
    [[nodiscard]] bool contains(const Triple& t) const noexcept { return find(t) >= 0; }

    friend bool operator==(const TripleSystem&, const TripleSystem&) = default;

private:
    int n_ = 0;
    std::vector<Triple> edges_;
};

/// A simple graph on the vertices 0..n-1.
class PairGraph {
public:
    PairGraph() = default;
    PairGraph(int n, std::vector<Pair> pairs);

    [[nodiscard]] int vertex_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }
    [[nodiscard]] std::span<const Pair> pairs() const noexcept { return pairs_; }
    [[nodiscard]] bool contains(Pair p) const noexcept;

    friend bool operator==(const PairGraph&, const PairGraph&) = default;

private:
    int n_ = 0;
    std::vector<Pair> pairs_;
};

/// Codegree d(xy) of every pair, plus the partition of pairs by codegree.
/// Classes 0..3 are exact; class 4 collects every pair of codegree >= 4.
class CodegreeClasses {
public:
    static constexpr int kOverflow = 4;

    explicit CodegreeClasses(const TripleSystem& g);

    [[nodiscard]] int vertex_count() const noexcept { return n_; }
    [[nodiscard]] int codegree(Vertex u, Vertex v) const noexcept
    {
        return codeg_[static_cast<std::size_t>(pair_index(u, v, n_))];
    }
    [[nodiscard]] int codegree(Pair p) const noexcept { return codegree(p[0], p[1]); }

    /// Pairs in class i (0..4), lexicographic.
    [[nodiscard]] const PairGraph& pairs(int cls) const { return classes_.at(cls); }
    [[nodiscard]] std::int64_t count(int cls) const
    {
        return static_cast<std::int64_t>(classes_.at(cls).size());
    }
    [[nodiscard]] int max_codegree() const noexcept { return max_; }
    /// Sum of d(xy) over all pairs; equals 3 e(G).
    [[nodiscard]] std::int64_t codegree_sum() const noexcept { return sum_; }

private:
    int n_;
    int max_ = 0;
    std::int64_t sum_ = 0;
    std::vector<int> codeg_;
    std::array<PairGraph, 5> classes_;
};

[[nodiscard]] CodegreeClasses codegree_classes(const TripleSystem& g);

/// Parse failure in the ".3g" text format; line() is 1-based.
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads the ".3g" text format: header "n m", then m triples, '#' comments.
[[nodiscard]] TripleSystem read_system(std::string_view text);
[[nodiscard]] TripleSystem read_system(std::istream& in);
[[nodiscard]] TripleSystem read_system_file(const std::string& path);

/// Canonical ".3g" text: triples ascending within and across lines.
[[nodiscard]] std::string write_system(const TripleSystem& g);
void write_system_file(const TripleSystem& g, const std::string& path);

} // namespace bes
