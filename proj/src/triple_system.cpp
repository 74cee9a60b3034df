#include "bes/triple_system.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

namespace bes {

TripleSystem::TripleSystem(int n, std::vector<Triple> edges) : n_(n), edges_(std::move(edges))
{
    if (n_ < 0) throw InvalidSystem("negative vertex count");
    for (auto& e : edges_) {
        e = make_triple(e[0], e[1], e[2]);
        if (e[0] < 0 || e[2] >= n_)
            throw InvalidSystem("vertex out of range in triple");
        if (e[0] == e[1] || e[1] == e[2])
            throw InvalidSystem("triple with non-distinct vertices");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw InvalidSystem("duplicate triple");
}

std::ptrdiff_t TripleSystem::find(const Triple& t) const noexcept
{
    auto it = std::lower_bound(edges_.begin(), edges_.end(), t);
    if (it == edges_.end() || *it != t) return -1;
    return it - edges_.begin();
}

PairGraph::PairGraph(int n, std::vector<Pair> pairs) : n_(n), pairs_(std::move(pairs))
{
    for (auto& p : pairs_) {
        p = make_pair(p[0], p[1]);
        if (p[0] < 0 || p[1] >= n_) throw InvalidSystem("vertex out of range in pair");
        if (p[0] == p[1]) throw InvalidSystem("loop in pair graph");
    }
    std::sort(pairs_.begin(), pairs_.end());
    if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end())
        throw InvalidSystem("duplicate pair");
}

bool PairGraph::contains(Pair p) const noexcept
{
    return std::binary_search(pairs_.begin(), pairs_.end(), make_pair(p[0], p[1]));
}

CodegreeClasses::CodegreeClasses(const TripleSystem& g)
    : n_(g.vertex_count()), codeg_(static_cast<std::size_t>(pair_count(n_)), 0)
{
    for (const auto& e : g.edges()) {
        ++codeg_[pair_index(e[0], e[1], n_)];
        ++codeg_[pair_index(e[0], e[2], n_)];
        ++codeg_[pair_index(e[1], e[2], n_)];
    }
    std::array<std::vector<Pair>, 5> buckets;
    std::size_t i = 0;
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v = u + 1; v < n_; ++v, ++i) {
            const int d = codeg_[i];
            sum_ += d;
            max_ = std::max(max_, d);
            buckets[std::min(d, kOverflow)].push_back({u, v});
        }
    }
    for (int c = 0; c <= kOverflow; ++c) classes_[c] = PairGraph(n_, std::move(buckets[c]));
}

CodegreeClasses codegree_classes(const TripleSystem& g)
{
    return CodegreeClasses(g);
}

FormatError::FormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

// Splits a line into integer fields; returns false on any non-integer token.
bool parse_ints(std::string_view line, std::vector<long long>& out)
{
    out.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        if (pos == line.size()) break;
        long long v = 0;
        auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
        if (ec != std::errc{}) return false;
        const auto next = static_cast<std::size_t>(ptr - line.data());
        if (next < line.size() && line[next] != ' ' && line[next] != '\t' && line[next] != '\r')
            return false;
        out.push_back(v);
        pos = next;
    }
    return true;
}

bool is_blank(std::string_view line)
{
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

} // namespace

TripleSystem read_system(std::string_view text)
{
    std::vector<long long> fields;
    std::vector<Triple> edges;
    std::vector<std::size_t> edge_lines;
    bool have_header = false;
    long long n = 0, m = 0;
    std::size_t lineno = 0;
    std::size_t start = 0;

    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;

        if (!line.empty() && line.front() == '#') continue;
        if (is_blank(line)) continue;
        if (!parse_ints(line, fields)) throw FormatError(lineno, "expected decimal integers");

        if (!have_header) {
            if (fields.size() != 2) throw FormatError(lineno, "malformed header, expected \"n m\"");
            n = fields[0];
            m = fields[1];
            if (n < 0 || m < 0 || n > (1 << 30)) throw FormatError(lineno, "malformed header, bad n or m");
            have_header = true;
            continue;
        }
        if (fields.size() != 3) throw FormatError(lineno, "expected three vertex ids");
        if (static_cast<long long>(edges.size()) == m) throw FormatError(lineno, "more triples than declared");
        for (auto v : fields)
            if (v < 0 || v >= n) throw FormatError(lineno, "vertex " + std::to_string(v) + " out of range");
        const auto t = make_triple(static_cast<Vertex>(fields[0]), static_cast<Vertex>(fields[1]),
                                   static_cast<Vertex>(fields[2]));
        if (t[0] == t[1] || t[1] == t[2]) throw FormatError(lineno, "non-distinct vertices in triple");
        edges.push_back(t);
        edge_lines.push_back(lineno);
    }
    if (!have_header) throw FormatError(lineno == 0 ? 1 : lineno, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw FormatError(lineno, "declared " + std::to_string(m) + " triples, found " + std::to_string(edges.size()));

    // Duplicate detection reports the later occurrence.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges[order[i]] == edges[order[i - 1]])
            throw FormatError(edge_lines[std::max(order[i], order[i - 1])], "duplicate triple");

    return TripleSystem(static_cast<int>(n), std::move(edges));
}

TripleSystem read_system(std::istream& in)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return read_system(std::string_view(text));
}

TripleSystem read_system_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_system(in);
}

std::string write_system(const TripleSystem& g)
{
    std::string out;
    out.reserve(16 + g.edge_count() * 16);
    out += std::to_string(g.vertex_count());
    out += ' ';
    out += std::to_string(g.edge_count());
    out += '\n';
    for (const auto& e : g.edges()) {
        out += std::to_string(e[0]);
        out += ' ';
        out += std::to_string(e[1]);
        out += ' ';
        out += std::to_string(e[2]);
        out += '\n';
    }
    return out;
}

void write_system_file(const TripleSystem& g, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << write_system(g);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bes
