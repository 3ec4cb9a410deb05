#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/bands.hpp"
#include "cobord/cli.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cobord;
using nlohmann::json;

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// A scratch file removed with the fixture.
struct TempFile
{
    std::filesystem::path path;

    explicit TempFile(const std::string& name, const std::string& content)
        : path(std::filesystem::temp_directory_path() / ("cobord_test_" + std::to_string(::getpid()) + "_" + name))
    {
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

const char* kFiberSphere = "chi 0\n"
                           "triangle 0 2 4\ntriangle 0 2 5\ntriangle 0 3 4\ntriangle 0 3 5\n"
                           "triangle 1 2 4\ntriangle 1 2 5\ntriangle 1 3 4\ntriangle 1 3 5\n";

} // namespace

TEST_CASE("exit codes")
{
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"group"}).code == 2);
    CHECK(run({"--format", "xml", "catalog"}).code == 2);
    const auto missing = run({"group", "--manifold", "catalog:Poincare"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error:") != std::string::npos);
    CHECK(run({"group", "--manifold", "/nonexistent/file.tri"}).code == 1);
}

TEST_CASE("validate")
{
    CHECK(run({"validate", "--manifold", "catalog:KxS1"}).code == 0);
    TempFile disk("disk.tri", "dim 2\nvertices 4\n0 1 2\n0 2 3\n");
    const auto r = run({"validate", "--manifold", disk.str()});
    CHECK(r.code == 1);
    CHECK(r.out.find("open") != std::string::npos);
    TempFile garbage("bad.tri", "dim 2\nvertices 4\n0 1 q\n");
    const auto g = run({"validate", "--manifold", garbage.str()});
    CHECK(g.code == 1);
    CHECK(g.err.find("line 3") != std::string::npos);
}

TEST_CASE("group reports")
{
    const auto text = run({"group", "--manifold", "catalog:S2twS1"});
    CHECK(text.code == 0);
    CHECK(text.out.find("order: 8") != std::string::npos);

    const auto r = run({"--format", "json", "group", "--manifold", "catalog:S2xS1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["order"] == 32);
    CHECK(j["modulus"] == 8);
    CHECK(j["structure"] == json::array({2, 2, 8}));
    CHECK(j["axioms"]["passed"] == true);

    const auto cayley = run({"group", "--manifold", "catalog:S2twS1", "--cayley"});
    CHECK(cayley.code == 0);
    CHECK(cayley.out.find("0|0|0") != std::string::npos);

    CHECK(run({"group", "--manifold", "catalog:RP2xS1", "--variant", "orientable"}).code == 1);
    CHECK(run({"group", "--manifold", "catalog:RP2xS1", "--variant", "sideways"}).code == 2);
}

TEST_CASE("the exhaustive bound can be overridden from the environment")
{
    const auto within = json::parse(run({"--format", "json", "group", "--manifold", "catalog:T3"}).out);
    CHECK(within["axioms"]["mode"] == "exhaustive"); // 512 is within the default bound
    ::setenv("COBORD_EXHAUSTIVE_BOUND", "64", 1);
    CHECK(cli::exhaustive_bound() == 64);
    const auto lowered = json::parse(run({"--format", "json", "group", "--manifold", "catalog:KxS1"}).out);
    CHECK(lowered["axioms"]["mode"] == "sampled");
    ::unsetenv("COBORD_EXHAUSTIVE_BOUND");
    CHECK(cli::exhaustive_bound() == 512);
}

TEST_CASE("psi, cobordant and realize")
{
    TempFile fiber("fiber.imm", kFiberSphere);
    TempFile empty("empty.imm", "chi 0\n");
    const auto r = run({"--format", "json", "psi", "--manifold", "catalog:S2twS1", "--immersion", fiber.str()});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["psi"]["element"] == "1|0|0");

    const auto c = run({"--format", "json", "cobordant", "--manifold", "catalog:S2twS1", "--immersion", fiber.str(),
                        "--immersion", empty.str()});
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["cobordant"] == false);

    const auto z = run({"realize", "--manifold", "catalog:RP2xS1", "--target", "10|01|1"});
    CHECK(z.code == 0);
    CHECK(z.out.find("10|01|1") != std::string::npos);
    CHECK(run({"realize", "--manifold", "catalog:RP2xS1", "--target", "1|0|0"}).code == 1);

    TempFile bad("bad.imm", "chi 0\ntriangle 0 1 2\n");
    const auto e = run({"psi", "--manifold", "catalog:S2twS1", "--immersion", bad.str()});
    CHECK(e.code == 1);
    CHECK(e.err.find("line 2") != std::string::npos);
    CHECK(run({"psi", "--manifold", "catalog:S2xS1", "--immersion", empty.str()}).code == 1);
}

TEST_CASE("homology and catalog")
{
    const auto h = run({"--format", "json", "homology", "--manifold", "catalog:RP2xS1"});
    REQUIRE(h.code == 0);
    const auto j = json::parse(h.out);
    CHECK(j["betti"] == json::array({1, 2, 2, 1}));
    CHECK(j["w1"] == "10");

    const auto c = run({"catalog"});
    CHECK(c.code == 0);
    for (const auto& name : complex::catalog_names())
        CHECK(c.out.find(name) != std::string::npos);
    const auto cj = json::parse(run({"--format", "json", "catalog"}).out);
    CHECK(cj["catalog"].size() == complex::catalog_names().size());

    const auto sum = run({"homology", "--manifold", "catalog:T2#T2"});
    CHECK(sum.code == 0);
}

TEST_CASE("bands from the command line")
{
    TempFile knot("k.knot", bands::to_text(bands::twisted_circle(3)));
    const auto r = run({"--format", "json", "band", "--knot", knot.str()});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["half_twists"] == 3);
    CHECK(j["half_twists_mod4"] == 3);
    CHECK(j["mobius"] == true);
    const auto m = json::parse(run({"--format", "json", "band", "--knot", knot.str(), "--mirror"}).out);
    CHECK(m["half_twists"] == -3);

    TempFile decimal("d.knot", "return_sign 1\np 0.5 0 0 f 0 0 1\n");
    CHECK(run({"band", "--knot", decimal.str()}).code == 1);

    const auto cb = run({"--format", "json", "classify-bands", "--core-orientable", "false", "--twist", "0", "--twist", "2"});
    REQUIRE(cb.code == 0);
    const auto cj = json::parse(cb.out);
    CHECK(cj["class_count"] == 3);
    CHECK(cj["relation"] == "equivalent up to reparametrization");

    const auto x = run({"--format", "json", "x-bundle", "--all"});
    REQUIRE(x.code == 0);
    CHECK(json::parse(x.out)["bundles"].size() == 8);
    CHECK(run({"x-bundle", "--monodromy", "(12)"}).code == 1);

    const auto iso = run({"--format", "json", "isotropy", "--surface", "catalog:K2", "--parity", "odd"});
    REQUIRE(iso.code == 0);
    CHECK(json::parse(iso.out)["class_count"] == 2);
    CHECK(run({"isotropy", "--surface", "catalog:T2", "--parity", "odd"}).code == 1);
}

TEST_CASE("json output is deterministic")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--format", "json", "group", "--manifold", "catalog:KxS1"},
             {"--format", "json", "homology", "--manifold", "catalog:S2twS1"},
             {"--format", "json", "realize", "--manifold", "catalog:KxS1", "--target", "101|011|1"},
             {"--format", "json", "verify", "--manifold", "catalog:RP2xS1"}}) {
        const auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(json::parse(a.out).is_object());
    }
}
