#include "cli.hpp"

#include "bes/bounds.hpp"
#include "bes/checker.hpp"
#include "bes/construct.hpp"
#include "bes/oracle.hpp"
#include "bes/rational.hpp"
#include "bes/triple_system.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <span>
#include <sstream>

namespace bes::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* output_schema = "bes-output/1";
constexpr const char* manifest_schema = "bes-manifest/1";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_bytes(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << bytes)) throw InputError("cannot write " + path);
}

std::string fixed(double x, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

Json triples_json(std::span<const Triple> edges)
{
    Json a = Json::array();
    for (const auto& t : edges) a.push_back({t[0], t[1], t[2]});
    return a;
}

std::string triple_line(const Triple& t)
{
    return std::to_string(t[0]) + ' ' + std::to_string(t[1]) + ' ' + std::to_string(t[2]);
}

struct FileDigest {
    std::string path;
    std::string sha256;
};

// Everything one invocation produced; the manifest is built from this.
struct RunRecord {
    std::string subcommand;
    Json parameters = Json::object();
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;
    std::string stdout_text;
    int exit_code = exit_ok;
    double wall_ms = 0.0;
    // Default manifest location for commands that write files.
    std::string manifest_path;
};

struct Context {
    bool json = false;
    int threads = 1;
    std::ostringstream out;
    RunRecord* record = nullptr;

    TripleSystem load(const std::string& path)
    {
        const auto bytes = read_bytes(path);
        record->inputs.push_back({path, sha256_hex(bytes)});
        try {
            return read_system(bytes);
        } catch (const FormatError& e) {
            throw InputError(path + ": " + e.what());
        }
    }

    void save(const std::string& path, const std::string& bytes)
    {
        write_bytes(path, bytes);
        record->outputs.push_back({path, sha256_hex(bytes)});
    }

    void emit(const Json& j) { out << j.dump(2) << '\n'; }
};

// ---------------------------------------------------------------- commands

struct ConstructArgs {
    int n = 0, t = 0;
    std::uint64_t seed = 0;
    std::int64_t budget = PackOptions{}.budget;
    bool cascade = false;
    std::string out;
};

int cmd_construct(Context& ctx, const ConstructArgs& a)
{
    if (a.n < 1) throw UsageError("--n must be positive");
    if (a.t < 1) throw UsageError("--t must be at least 1");
    if (a.budget < 1) throw UsageError("--budget must be positive");
    const auto packing = greedy_pack(a.n, a.t, {a.seed, a.budget, a.cascade});
    validate_packing(packing);
    const auto g = lift(packing);
    const double density = static_cast<double>(g.edge_count()) / (static_cast<double>(a.n) * a.n);

    Json side;
    side["n"] = a.n;
    side["t"] = a.t;
    side["seed"] = a.seed;
    side["budget"] = a.budget;
    side["cascade"] = a.cascade;
    side["copies"] = packing.embeddings.size();
    side["coverage"] = packing.coverage();
    side["edges"] = g.edge_count();
    side["density"] = density;
    ctx.save(a.out, write_system(g));
    ctx.save(a.out + ".json", side.dump(2) + '\n');
    ctx.record->manifest_path = a.out + ".manifest.json";

    if (ctx.json) {
        Json j{{"schema", output_schema}};
        j.update(side);
        ctx.emit(j);
    } else {
        ctx.out << "copies " << packing.embeddings.size() << '\n'
                << "coverage " << fixed(packing.coverage()) << '\n'
                << "edges " << g.edge_count() << '\n'
                << "density " << fixed(density) << '\n';
    }
    return exit_ok;
}

ForbiddenFamily parse_family(const std::vector<std::string>& items, std::optional<int> k, std::optional<int> s)
{
    std::vector<Config> members;
    if (k || s) {
        if (!k || !s) throw UsageError(k ? "--s is required with --k" : "--k is required with --s");
        members.push_back({*k, *s});
    }
    for (const auto& item : items) {
        Config c{};
        char comma = 0;
        std::istringstream in(item);
        if (!(in >> c.k >> comma >> c.s) || comma != ',' || !in.eof())
            throw UsageError("--family expects K,S, got '" + item + "'");
        members.push_back(c);
    }
    if (members.empty()) throw UsageError("--k and --s (or --family) are required");
    try {
        return ForbiddenFamily(std::move(members));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--k/--s: ") + e.what());
    }
}

int cmd_check(Context& ctx, const std::string& file, const ForbiddenFamily& fam)
{
    const auto g = ctx.load(file);
    const auto res = is_free(g, fam, {ctx.threads});
    if (ctx.json) {
        Json j{{"schema", output_schema}, {"free", res.free}};
        if (!res.free) {
            j["violated"] = {{"k", res.violated->k}, {"s", res.violated->s}};
            j["witness"] = {{"edges", triples_json(res.witness->edges)}, {"span", res.witness->span}};
        }
        ctx.emit(j);
    } else if (res.free) {
        ctx.out << "free\n";
    } else {
        ctx.out << "not free (" << res.violated->k << ',' << res.violated->s << ")\n";
        for (const auto& t : res.witness->edges) ctx.out << triple_line(t) << '\n';
        ctx.out << "span:";
        for (auto v : res.witness->span) ctx.out << ' ' << v;
        ctx.out << '\n';
    }
    return res.free ? exit_ok : exit_failed;
}

int cmd_profile(Context& ctx, const std::string& file)
{
    const auto g = ctx.load(file);
    const CodegreeClasses cc(g);
    const auto total = static_cast<std::int64_t>(pair_count(g.vertex_count()));
    const auto frac = [&](std::int64_t c) { return total == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(total); };
    if (ctx.json) {
        Json classes = Json::array();
        for (int c = 0; c <= CodegreeClasses::kOverflow; ++c)
            classes.push_back({{"codegree", c == CodegreeClasses::kOverflow ? "4+" : std::to_string(c)},
                               {"pairs", cc.count(c)},
                               {"fraction", frac(cc.count(c))}});
        ctx.emit({{"schema", output_schema},
                  {"n", g.vertex_count()},
                  {"edges", g.edge_count()},
                  {"pairs", total},
                  {"max_codegree", cc.max_codegree()},
                  {"classes", classes}});
    } else {
        ctx.out << "n " << g.vertex_count() << '\n' << "edges " << g.edge_count() << '\n' << "pairs " << total << '\n';
        for (int c = 0; c <= CodegreeClasses::kOverflow; ++c)
            ctx.out << "class" << (c == CodegreeClasses::kOverflow ? "4+" : std::to_string(c)) << ' ' << cc.count(c) << ' '
                    << fixed(frac(cc.count(c))) << '\n';
        ctx.out << "max_codegree " << cc.max_codegree() << '\n';
    }
    return exit_ok;
}

struct OracleArgs {
    int n = 0, k = 0, s = 0;
    bool any_witness = false;
    std::optional<std::int64_t> hint;
    std::string out;
};

int cmd_oracle(Context& ctx, const OracleArgs& a)
{
    OracleOptions opts;
    opts.upper_hint = a.hint;
    opts.any_witness = a.any_witness;
    opts.threads = ctx.threads;
    OracleResult res;
    try {
        res = exact_f(a.n, a.k, a.s, opts);
    } catch (const OracleError& e) {
        throw UsageError(std::string("--n/--k/--s: ") + e.what());
    }
    const auto ver = verify_extremal(res);
    const auto witness = write_system(res.witness);
    if (!a.out.empty()) {
        ctx.save(a.out, witness);
        ctx.record->manifest_path = a.out + ".manifest.json";
    }
    if (ctx.json) {
        ctx.emit({{"schema", output_schema},
                  {"n", a.n},
                  {"k", a.k},
                  {"s", a.s},
                  {"value", res.value},
                  {"nodes", res.nodes},
                  {"verified", ver.ok},
                  {"problems", ver.problems},
                  {"witness", triples_json(res.witness.edges())}});
    } else {
        ctx.out << "value " << res.value << '\n' << "nodes " << res.nodes << '\n' << witness;
        for (const auto& p : ver.problems) ctx.out << "# verification: " << p << '\n';
    }
    return ver.ok ? exit_ok : exit_failed;
}

Json rationals(const std::vector<Rational>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

int cmd_bounds(Context& ctx, const std::string& problem, const std::string& b_text, std::optional<std::int64_t> n,
               std::optional<int> k)
{
    if (problem == "averaging") {
        if (!n || !k) throw UsageError("--n and --k are required for --problem averaging");
        AveragingBound ab;
        try {
            ab = averaging_bound(*n, *k);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--n/--k: ") + e.what());
        }
        if (ctx.json)
            ctx.emit({{"schema", output_schema},
                      {"problem", problem},
                      {"n", *n},
                      {"k", *k},
                      {"s", *k - 2},
                      {"value", to_string(ab.averaging)},
                      {"trivial", to_string(ab.trivial)}});
        else
            ctx.out << "value " << to_string(ab.averaging) << '\n' << "trivial " << to_string(ab.trivial) << '\n';
        return exit_ok;
    }

    RationalLP lp;
    LPCertificate cert;
    if (problem == "five-three") {
        Rational b;
        try {
            b = parse_rational(b_text);
        } catch (const std::exception&) {
            throw UsageError("--b expects a rational, got '" + b_text + "'");
        }
        if (b < 0) throw UsageError("--b must be non-negative");
        lp = five_three_program(b);
        cert = lp_five_three(b);
    } else {
        lp = six_four_program();
        cert = lp_six_four();
    }
    const bool verified = verify_certificate(lp, cert);
    if (ctx.json) {
        Json primal = Json::object();
        for (std::size_t j = 0; j < lp.variables(); ++j) primal[lp.names[j]] = to_string(cert.primal[j]);
        ctx.emit({{"schema", output_schema},
                  {"problem", problem},
                  {"value", to_string(cert.value)},
                  {"primal", primal},
                  {"duals", rationals(cert.duals)},
                  {"verified", verified}});
    } else {
        ctx.out << "value " << to_string(cert.value) << '\n' << "primal";
        for (std::size_t j = 0; j < lp.variables(); ++j) ctx.out << ' ' << lp.names[j] << '=' << to_string(cert.primal[j]);
        ctx.out << "\nduals";
        for (const auto& y : cert.duals) ctx.out << ' ' << to_string(y);
        ctx.out << "\ncertificate " << (verified ? "verified" : "INVALID") << '\n';
    }
    return verified ? exit_ok : exit_failed;
}

Json report_json(const AuditReport& r)
{
    Json counts = Json::object();
    for (const auto& [name, value] : r.counts) counts[name] = value;
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"audit", r.audit}, {"passed", r.passed()}, {"counts", counts}, {"checks", checks}};
}

int cmd_analyze(Context& ctx, const std::string& file, const std::string& audit)
{
    const auto g = ctx.load(file);
    const FindOptions opts{ctx.threads};
    Json j{{"schema", output_schema}};
    bool passed = false;
    try {
        const auto r = audit == "five-three" ? audit_five_three(g, opts)
                       : audit == "six-four" ? audit_six_four(g, opts)
                                             : audit_injection(g, opts);
        j.update(report_json(r));
        passed = r.passed();
    } catch (const AuditPrecondition& e) {
        j["audit"] = audit;
        j["passed"] = false;
        j["precondition"] = {{"message", e.what()},
                             {"violated", {{"k", e.violated.k}, {"s", e.violated.s}}},
                             {"witness", triples_json(e.witness.edges)}};
    }
    ctx.emit(j);
    return passed ? exit_ok : exit_failed;
}

struct ReproduceArgs {
    int n = 0;
    std::optional<int> t;
    std::optional<std::string> eps;
    std::uint64_t seed = 0;
    std::int64_t budget = PackOptions{}.budget;
    bool cascade = false;
    std::string out;
};

int cmd_reproduce(Context& ctx, const ReproduceArgs& a)
{
    if (a.n < 10) throw UsageError("--n must be at least 10");
    if (a.budget < 1) throw UsageError("--budget must be positive");
    if (!a.t && !a.eps) throw UsageError("one of --t or --eps is required");
    int t = 0;
    if (a.eps) {
        try {
            t = recommended_t(parse_rational(*a.eps));
        } catch (const std::exception& e) {
            throw UsageError("--eps: " + std::string(e.what()));
        }
    } else {
        t = *a.t;
        if (t < 1) throw UsageError("--t must be at least 1");
    }

    const auto packing = greedy_pack(a.n, t, {a.seed, a.budget, a.cascade});
    validate_packing(packing);
    const auto g = lift(packing);
    if (!a.out.empty()) {
        ctx.save(a.out, write_system(g));
        ctx.record->manifest_path = a.out + ".manifest.json";
    }

    const FindOptions fo{ctx.threads};
    const bool free = !find_config(g, 5, 3, fo).has_value();
    const CodegreeClasses cc(g);
    const auto n = static_cast<std::int64_t>(a.n);
    const auto e = static_cast<std::int64_t>(g.edge_count());
    const Rational density_exact(BigInt(e), BigInt(n * n));
    const Rational steiner(BigInt(n * (n - 1) / 2), BigInt(3 * n * n));
    const Rational cap(1, 5);
    const bool below_cap = density_exact <= cap;

    Json audit = nullptr;
    bool audit_passed = false;
    if (free) {
        const auto r = audit_five_three(g, fo);
        audit_passed = r.passed();
        audit = report_json(r);
    }

    Json j{{"schema", output_schema},
           {"n", a.n},
           {"t", t},
           {"eps", a.eps ? Json(*a.eps) : Json(nullptr)},
           {"seed", a.seed},
           {"budget", a.budget},
           {"cascade", a.cascade},
           {"copies", packing.embeddings.size()},
           {"coverage", packing.coverage()},
           {"leftover_pairs", packing.leftover_pairs},
           {"edges", e},
           {"density", to_double(density_exact)},
           {"density_exact", to_string(density_exact)},
           {"steiner_density", to_double(steiner)},
           {"steiner_density_exact", to_string(steiner)},
           {"cap", to_string(cap)},
           {"below_cap", below_cap},
           {"free", free},
           {"profile", {{"g0", cc.count(0)}, {"g1", cc.count(1)}, {"g2", cc.count(2)}, {"max_codegree", cc.max_codegree()}}},
           {"audit_passed", audit_passed},
           {"audit", audit}};
    if (ctx.json) {
        ctx.emit(j);
    } else {
        ctx.out << "n " << a.n << "\nt " << t << "\ncopies " << packing.embeddings.size() << "\ncoverage "
                << fixed(packing.coverage()) << "\nedges " << e << "\ndensity " << fixed(to_double(density_exact))
                << "\nsteiner_density " << to_string(steiner) << " (" << fixed(to_double(steiner)) << ")\ncap 1/5"
                << "\nfree " << (free ? "yes" : "no") << "\naudit " << (audit_passed ? "passed" : "FAILED") << '\n';
    }
    return free && audit_passed && below_cap ? exit_ok : exit_failed;
}

// ----------------------------------------------------------------- driver

Json manifest_json(const std::vector<std::string>& args, const RunRecord& r)
{
    const auto digests = [](const std::vector<FileDigest>& ds) {
        Json a = Json::array();
        for (const auto& d : ds) a.push_back({{"path", d.path}, {"sha256", d.sha256}});
        return a;
    };
    return {{"schema", manifest_schema},
            {"tool", "bes"},
            {"version", tool_version},
            {"subcommand", r.subcommand},
            {"argv", args},
            {"parameters", r.parameters},
            {"inputs", digests(r.inputs)},
            {"outputs", digests(r.outputs)},
            {"stdout_sha256", sha256_hex(r.stdout_text)},
            {"exit_code", r.exit_code},
            {"wall_clock_ms", r.wall_ms}};
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err);

// Parses and runs one command. Returns the record; manifest writing is left to the caller.
RunRecord execute(const std::vector<std::string>& args, std::ostream& err)
{
    CLI::App app{"Locally sparse triple systems: construction, checking, exact search and bounds", "bes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    Context ctx;
    RunRecord rec;
    ctx.record = &rec;
    std::string manifest;

    const auto common = [&](CLI::App* sub) {
        sub->add_flag("--json", ctx.json, "Print machine-readable JSON");
        sub->add_option("--threads", ctx.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--manifest", manifest, "Write the run manifest to this file");
    };

    std::function<int()> action;

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Greedy H_t packing of K_n lifted to a triple system");
    construct->add_option("--n", ca.n, "Vertices")->required();
    construct->add_option("--t", ca.t, "Gadget size")->required();
    construct->add_option("--seed", ca.seed, "RNG seed")->required();
    construct->add_option("--budget", ca.budget, "Consecutive failed attempts before stopping");
    construct->add_flag("--cascade", ca.cascade, "Pack the leftover with H_1 copies");
    construct->add_option("--out", ca.out, "Output .3g file; a .json sidecar is written next to it")->required();
    common(construct);
    construct->callback([&] { action = [&] { return cmd_construct(ctx, ca); }; });

    std::string file;
    std::optional<int> k, s;
    std::vector<std::string> family;
    auto* check = app.add_subcommand("check", "Search for s triples on at most k vertices");
    check->add_option("--file", file, ".3g input")->required();
    check->add_option("--k", k, "Vertex bound");
    check->add_option("--s", s, "Triple count");
    check->add_option("--family", family, "Extra forbidden configuration K,S (repeatable)");
    common(check);
    check->callback([&] { action = [&] { return cmd_check(ctx, file, parse_family(family, k, s)); }; });

    auto* profile = app.add_subcommand("profile", "Pair codegree class counts");
    profile->add_option("--file", file, ".3g input")->required();
    common(profile);
    profile->callback([&] { action = [&] { return cmd_profile(ctx, file); }; });

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "Exact f(n; k, s) for n <= 9");
    oracle->add_option("--n", oa.n, "Vertices")->required();
    oracle->add_option("--k", oa.k, "Vertex bound")->required();
    oracle->add_option("--s", oa.s, "Triple count")->required();
    oracle->add_flag("--any-witness", oa.any_witness, "Accept any extremal witness; allows parallel search");
    oracle->add_option("--hint", oa.hint, "Known upper bound on the answer");
    oracle->add_option("--out", oa.out, "Write the witness to this .3g file");
    common(oracle);
    oracle->callback([&] { action = [&] { return cmd_oracle(ctx, oa); }; });

    std::string problem, b_text = "1";
    std::optional<std::int64_t> bn;
    std::optional<int> bk;
    auto* bounds = app.add_subcommand("bounds", "Exact LP bounds with certificates");
    bounds->add_option("--problem", problem, "five-three, six-four or averaging")
        ->required()
        ->check(CLI::IsMember({"five-three", "six-four", "averaging"}));
    bounds->add_option("--b", b_text, "Right-hand side for five-three");
    bounds->add_option("--n", bn, "Vertices for averaging");
    bounds->add_option("--k", bk, "k for averaging (s = k-2)");
    common(bounds);
    bounds->callback([&] { action = [&] { return cmd_bounds(ctx, problem, b_text, bn, bk); }; });

    std::string audit;
    auto* analyze = app.add_subcommand("analyze", "Run a structural audit; prints JSON");
    analyze->add_option("--file", file, ".3g input")->required();
    analyze->add_option("--audit", audit, "five-three, six-four or injection")
        ->required()
        ->check(CLI::IsMember({"five-three", "six-four", "injection"}));
    common(analyze);
    analyze->callback([&] { action = [&] { return cmd_analyze(ctx, file, audit); }; });

    ReproduceArgs ra;
    auto* reproduce = app.add_subcommand("reproduce", "Construct, check and audit a (5,3)-free system");
    reproduce->add_option("--n", ra.n, "Vertices (>= 10)")->required();
    auto* t_opt = reproduce->add_option("--t", ra.t, "Gadget size");
    reproduce->add_option("--eps", ra.eps, "Target slack; t is derived from it")->excludes(t_opt);
    reproduce->add_option("--seed", ra.seed, "RNG seed")->required();
    reproduce->add_option("--budget", ra.budget, "Consecutive failed attempts before stopping");
    reproduce->add_flag("--cascade", ra.cascade, "Pack the leftover with H_1 copies");
    reproduce->add_option("--out", ra.out, "Also write the system to this .3g file");
    common(reproduce);
    reproduce->callback([&] { action = [&] { return cmd_reproduce(ctx, ra); }; });

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
    replay->add_option("manifest", replay_path, "Manifest file")->required();

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        const int code = app.exit(e, help, err);
        rec.stdout_text = help.str();
        rec.exit_code = code == 0 ? exit_ok : exit_usage;
        return rec;
    }

    if (replay->parsed()) {
        rec.subcommand = "replay";
        std::ostringstream out;
        rec.exit_code = cmd_replay(replay_path, out, err);
        rec.stdout_text = out.str();
        return rec;
    }

    for (auto* sub : app.get_subcommands()) {
        rec.subcommand = sub->get_name();
        for (const auto* opt : sub->get_options()) {
            if (opt->count() == 0 || opt->get_single_name() == "manifest") continue;
            const auto& res = opt->results();
            rec.parameters[opt->get_single_name()] = res.size() == 1 ? Json(res.front()) : Json(res);
        }
    }

    try {
        rec.exit_code = action();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        rec.exit_code = exit_usage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        rec.exit_code = exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        rec.exit_code = exit_usage;
    }
    rec.stdout_text = ctx.out.str();
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!manifest.empty()) rec.manifest_path = manifest;
    return rec;
}

// Rewrites every --out value into `dir` so a replay never touches the original files.
std::vector<std::string> redirect_outputs(std::vector<std::string> argv, const fs::path& dir)
{
    std::vector<std::string> res;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        const auto& a = argv[i];
        if (a == "--manifest") {
            ++i;
            continue;
        }
        if (a.starts_with("--manifest=")) continue;
        if (a == "--out" && i + 1 < argv.size()) {
            res.push_back(a);
            res.push_back((dir / fs::path(argv[++i]).filename()).string());
        } else if (a.starts_with("--out=")) {
            res.push_back("--out=" + (dir / fs::path(a.substr(6)).filename()).string());
        } else {
            res.push_back(a);
        }
    }
    return res;
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err)
{
    Json m;
    try {
        m = Json::parse(read_bytes(path));
    } catch (const Json::exception& e) {
        err << "error: " << path << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (m.value("schema", "") != manifest_schema) {
        err << "error: " << path << ": not a " << manifest_schema << " manifest\n";
        return exit_usage;
    }

    std::vector<std::string> problems;
    for (const auto& in : m["inputs"]) {
        const auto p = in["path"].get<std::string>();
        try {
            if (sha256_hex(read_bytes(p)) != in["sha256"].get<std::string>()) problems.push_back("input changed: " + p);
        } catch (const InputError&) {
            problems.push_back("input missing: " + p);
        }
    }

    const auto dir = fs::temp_directory_path() /
                     ("bes-replay-" + sha256_hex(path + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count())).substr(0, 12));
    fs::create_directories(dir);
    const auto argv = redirect_outputs(m["argv"].get<std::vector<std::string>>(), dir);
    std::ostringstream sink;
    const auto rec = execute(argv, sink);

    if (rec.exit_code != m["exit_code"].get<int>())
        problems.push_back("exit code " + std::to_string(rec.exit_code) + ", recorded " + std::to_string(m["exit_code"].get<int>()));
    if (sha256_hex(rec.stdout_text) != m["stdout_sha256"].get<std::string>()) problems.push_back("stdout differs");
    const auto& outs = m["outputs"];
    if (outs.size() != rec.outputs.size()) {
        problems.push_back("output count differs");
    } else {
        for (std::size_t i = 0; i < outs.size(); ++i)
            if (outs[i]["sha256"].get<std::string>() != rec.outputs[i].sha256)
                problems.push_back("output differs: " + outs[i]["path"].get<std::string>());
    }
    std::error_code ec;
    fs::remove_all(dir, ec);

    if (problems.empty()) {
        out << "replay identical (" << outs.size() << " files, stdout " << rec.stdout_text.size() << " bytes)\n";
        return exit_ok;
    }
    for (const auto& p : problems) out << "mismatch: " << p << '\n';
    return exit_failed;
}

} // namespace

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunRecord rec;
    try {
        rec = execute(args, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    out << rec.stdout_text;
    if (!rec.subcommand.empty() && rec.subcommand != "replay" && !rec.manifest_path.empty()) {
        try {
            write_bytes(rec.manifest_path, manifest_json(args, rec).dump(2) + '\n');
        } catch (const InputError& e) {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
    }
    return rec.exit_code;
}

} // namespace bes::cli
