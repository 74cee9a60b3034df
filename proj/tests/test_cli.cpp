#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli.hpp"

#include "bes/construct.hpp"
#include "bes/triple_system.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bes;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("bes-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("sha256 matches a known vector")
{
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("check: Fano is (5,3)-free, three triples on a pair are not")
{
    TempDir tmp;
    write_system_file(fano_plane(), tmp.file("fano.3g"));
    auto r = run({"check", "--file", tmp.file("fano.3g"), "--k", "5", "--s", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "free\n");

    write_system_file(TripleSystem(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), tmp.file("three.3g"));
    r = run({"check", "--file", tmp.file("three.3g"), "--k", "5", "--s", "3"});
    CHECK(r.code == 1);
    CHECK(r.out == "not free (5,3)\n0 1 2\n0 1 3\n0 1 4\nspan: 0 1 2 3 4\n");

    r = run({"check", "--file", tmp.file("three.3g"), "--family", "6,4", "--family", "5,3", "--json"});
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["free"] == false);
    CHECK(j["violated"]["k"] == 5);
    CHECK(j["witness"]["span"].size() == 5);
}

TEST_CASE("usage errors exit 2 and name the flag")
{
    TempDir tmp;
    write_system_file(fano_plane(), tmp.file("fano.3g"));
    auto r = run({"check", "--file", tmp.file("fano.3g"), "--k", "5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--s") != std::string::npos);

    r = run({"construct", "--n", "20", "--t", "1", "--out", tmp.file("x.3g")});
    CHECK(r.code == 2);
    CHECK(r.err.find("--seed") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.file("x.3g")));

    r = run({"oracle", "--n", "10", "--k", "5", "--s", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--n") != std::string::npos);

    r = run({"bounds", "--problem", "seven-five"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--problem") != std::string::npos);

    r = run({"reproduce", "--n", "9", "--t", "1", "--seed", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--n") != std::string::npos);

    r = run({"reproduce", "--n", "20", "--seed", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--eps") != std::string::npos);

    r = run({"frobnicate"});
    CHECK(r.code == 2);
    r = run({});
    CHECK(r.code == 2);
}

TEST_CASE("malformed and missing input files exit 2 with the line number")
{
    TempDir tmp;
    std::ofstream(tmp.file("bad.3g")) << "4 2\n0 1 2\n0 1 9\n";
    auto r = run({"profile", "--file", tmp.file("bad.3g")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    r = run({"profile", "--file", tmp.file("nope.3g")});
    CHECK(r.code == 2);
}

TEST_CASE("bounds prints exact values and verified certificates")
{
    auto r = run({"bounds", "--problem", "six-four", "--json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == "3/14");
    CHECK(j["verified"] == true);
    CHECK(j["schema"] == "bes-output/1");

    r = run({"bounds", "--problem", "five-three", "--b", "5/2", "--json"});
    j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == "3");
    CHECK(j["primal"]["x"] == "2");
    CHECK(j["primal"]["y"] == "1/2");

    r = run({"bounds", "--problem", "five-three"});
    CHECK(r.out.starts_with("value 6/5\n"));

    r = run({"bounds", "--problem", "averaging", "--n", "10", "--k", "5", "--json"});
    j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == "20");
    CHECK(j["trivial"] == "30");
}

TEST_CASE("construct writes the system, sidecar and manifest; replay is identical")
{
    TempDir tmp;
    const auto out = tmp.file("g.3g");
    auto r = run({"construct", "--n", "60", "--t", "2", "--seed", "3", "--out", out});
    REQUIRE(r.code == 0);

    const auto g = read_system_file(out);
    const auto packing = greedy_pack(60, 2, {3, PackOptions{}.budget, false});
    CHECK(g == lift(packing));

    const auto side = nlohmann::json::parse(slurp(out + ".json"));
    CHECK(side["n"] == 60);
    CHECK(side["t"] == 2);
    CHECK(side["seed"] == 3);
    CHECK(side["copies"] == packing.embeddings.size());
    CHECK(side["edges"] == g.edge_count());
    CHECK(side["coverage"].get<double>() == doctest::Approx(packing.coverage()));
    CHECK(side["density"].get<double>() == doctest::Approx(g.edge_count() / 3600.0));

    const auto m = nlohmann::json::parse(slurp(out + ".manifest.json"));
    CHECK(m["subcommand"] == "construct");
    CHECK(m["parameters"]["seed"] == "3");
    CHECK(m["version"] == cli::tool_version);
    REQUIRE(m["outputs"].size() == 2);
    CHECK(m["outputs"][0]["sha256"] == cli::sha256_hex(slurp(out)));
    CHECK(m["stdout_sha256"] == cli::sha256_hex(r.out));

    r = run({"replay", out + ".manifest.json"});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("replay identical"));
    // Replay never rewrites the recorded outputs.
    CHECK(m["outputs"][0]["sha256"] == cli::sha256_hex(slurp(out)));
}

TEST_CASE("replay detects a changed input")
{
    TempDir tmp;
    const auto f = tmp.file("in.3g");
    const auto man = tmp.file("check.manifest.json");
    write_system_file(fano_plane(), f);
    auto r = run({"check", "--file", f, "--k", "6", "--s", "4", "--manifest", man});
    CHECK(r.code == 1);
    CHECK(run({"replay", man}).code == 0);

    write_system_file(TripleSystem(7, {{0, 1, 2}}), f);
    r = run({"replay", man});
    CHECK(r.code == 1);
    CHECK(r.out.find("input changed") != std::string::npos);
}

TEST_CASE("oracle output and thread independence of the value")
{
    auto r = run({"oracle", "--n", "6", "--k", "5", "--s", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("value 4\n"));

    const auto a = nlohmann::json::parse(run({"oracle", "--n", "7", "--k", "5", "--s", "3", "--json"}).out);
    const auto b = nlohmann::json::parse(
        run({"oracle", "--n", "7", "--k", "5", "--s", "3", "--json", "--any-witness", "--threads", "4"}).out);
    CHECK(a["value"] == 7);
    CHECK(b["value"] == 7);
    CHECK(a["verified"] == true);
    CHECK(b["verified"] == true);
}

TEST_CASE("analyze reports JSON and fails on a violated precondition")
{
    TempDir tmp;
    write_system_file(fano_plane(), tmp.file("fano.3g"));
    auto r = run({"analyze", "--file", tmp.file("fano.3g"), "--audit", "five-three"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["counts"]["g1"] == 21);

    r = run({"analyze", "--file", tmp.file("fano.3g"), "--audit", "six-four"});
    CHECK(r.code == 1);
    j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == false);
    CHECK(j["precondition"]["violated"]["k"] == 6);
}

TEST_CASE("reproduce: n=100 t=1 seed=7 is free and under the cap")
{
    auto r = run({"reproduce", "--n", "100", "--t", "1", "--seed", "7", "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["free"] == true);
    CHECK(j["audit_passed"] == true);
    CHECK(j["below_cap"] == true);
    CHECK(j["cap"] == "1/5");
    CHECK(j["density"].get<double>() <= 0.2);
    CHECK(j["steiner_density_exact"] == "33/200");

    r = run({"reproduce", "--n", "15", "--eps", "1/10", "--seed", "7", "--json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["steiner_density_exact"] == "7/45");  // 35/225
    // Same flags, same bytes.
    CHECK(run({"reproduce", "--n", "15", "--eps", "1/10", "--seed", "7", "--json"}).out == r.out);
}

TEST_CASE("profile JSON matches the codegree classes")
{
    TempDir tmp;
    const auto g = bose_steiner(9);
    write_system_file(g, tmp.file("s9.3g"));
    const auto j = nlohmann::json::parse(run({"profile", "--file", tmp.file("s9.3g"), "--json"}).out);
    CHECK(j["edges"] == 12);
    CHECK(j["classes"][1]["pairs"] == 36);
    CHECK(j["classes"][0]["pairs"] == 0);
    CHECK(j["max_codegree"] == 1);
}
