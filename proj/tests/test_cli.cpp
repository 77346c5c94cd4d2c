#include "shapesig/index.hpp"

#include "support/synthetic.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace shapesig;
using namespace shapesig::testing;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI through the shell with stderr discarded.
Run run(const std::string& args)
{
    const std::string cmd = std::string("'") + SHAPESIG_CLI + "' " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

std::string q(const std::filesystem::path& p)
{
    return "'" + p.string() + "'";
}

} // namespace

TEST_CASE("extract, query and evaluate end to end")
{
    TempDir dir("shapesig-cli");
    const auto shapes = make_dataset(2, 3, 91);
    write_dataset(dir.path() / "data", shapes);
    const auto idx = dir.path() / "fsd.idx";

    REQUIRE(run("extract --dataset " + q(dir.path() / "data") + " --out " + q(idx)).status == 0);
    const FeatureIndex index = load(idx);
    CHECK(index.size() == 6);
    CHECK(index.kind() == SignatureKind::FSD);

    SUBCASE("query returns the image itself first")
    {
        const Run r = run("query " + q(idx) + " " + q(dir.path() / "data" / "c01-2.pgm") + " -k 5");
        CHECK(r.status == 0);
        const auto lines = lines_of(r.out);
        REQUIRE(lines.size() == 5);
        CHECK(lines[0] == "1,c01-2,c01,0");
        CHECK(lines[4].rfind("5,", 0) == 0);
    }
    SUBCASE("header parameters win over flags, a conflicting kind is refused")
    {
        const std::string image = q(dir.path() / "data" / "c00-1.pgm");
        const Run plain = run("query --index " + q(idx) + " --image " + image);
        const Run flagged = run("query --index " + q(idx) + " --image " + image + " --samples 64 --threshold 0.2");
        CHECK(plain.status == 0);
        CHECK(lines_of(plain.out).size() == 6);
        CHECK(flagged.out == plain.out);
        CHECK(run("query --index " + q(idx) + " --image " + image + " --descriptor cc").status == 1);
    }
    SUBCASE("evaluate writes reports")
    {
        const auto cc = dir.path() / "cc.idx";
        REQUIRE(run("extract --dataset " + q(dir.path() / "data") + " --out " + q(cc) + " --descriptor CC").status == 0);
        CHECK(run("evaluate " + q(idx)).status == 1); // classes of 3, not 20
        const Run r = run("evaluate " + q(idx) + " " + q(cc) + " --allow-unbalanced --out " + q(dir.path() / "rep"));
        CHECK(r.status == 0);
        const auto lines = lines_of(r.out);
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == "kind,avgLow,avgHigh");
        CHECK(lines[1].rfind("FSD,", 0) == 0);
        CHECK(lines[2].rfind("CC,", 0) == 0);
        CHECK(std::filesystem::exists(dir.path() / "rep" / "curve_fsd.csv"));
        CHECK(std::filesystem::exists(dir.path() / "rep" / "curve_cc.csv"));
    }
}

TEST_CASE("usage and data errors exit with 1")
{
    TempDir dir("shapesig-cli-err");
    CHECK(run("").status == 1);
    CHECK(run("extract --dataset " + q(dir.path() / "missing") + " --out " + q(dir.path() / "x.idx")).status == 1);
    CHECK(run("extract --dataset " + q(dir.path()) + " --out " + q(dir.path() / "x.idx")).status == 1);
    CHECK(run("extract --dataset " + q(dir.path()) + " --out x.idx --descriptor nope").status == 1);
    CHECK(run("extract --dataset " + q(dir.path()) + " --out x.idx --samples 2").status == 1);
    std::ofstream(dir.path() / "bad.idx") << "not an index\n";
    CHECK(run("query " + q(dir.path() / "bad.idx") + " whatever.gif").status == 1);
    CHECK(run("--version").status == 0);
}
