#include "pm/cli.hpp"
#include "pm/dataio.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "pm");
    std::vector<const char*> argv;
    for (auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = pm::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> verdicts(const std::string& text)
{
    std::vector<std::string> v;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("PASS", 0) == 0 || line.rfind("FAIL", 0) == 0)
            v.push_back(line.substr(0, 4));
    return v;
}

}

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2, help exits 0")
{
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"theta", "--m", "1"}).code == 2);
    CHECK(run({"mt", "--lambdency", "-12:1"}).code == 2);
    CHECK(run({"mt", "--lambdency", "-3:1", "--class", "99Z"}).code == 2);
    CHECK(run({"--data-dir", "/nonexistent", "verify", "tables"}).code == 2);
}

TEST_CASE("sturm")
{
    auto r = run({"sturm", "--d0=-3", "--lambency=1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("k=10 N=288 B=1920") != std::string::npos);
}

TEST_CASE("verify suites pass and both report modes agree")
{
    for (const char* what : {"relations", "congruences", "parity", "cyclic"}) {
        CAPTURE(what);
        auto h = run({"verify", what});
        auto m = run({"--machine", "verify", what});
        CHECK(h.code == 0);
        CHECK(m.code == 0);
        CHECK_FALSE(verdicts(h.out).empty());
        CHECK(verdicts(h.out) == verdicts(m.out));
    }
    auto r = run({"verify", "relations", "--d0=-3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("a failing check exits 1")
{
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "pm_cli_test";
    fs::remove_all(tmp);
    fs::copy(pm::default_data_dir(), tmp, fs::copy_options::recursive);
    {
        std::ofstream out(tmp / "coefficients" / "cff_-3_13p13.pmd", std::ios::app);
        out << "  1     1  3 . .\n";
    }
    auto h = run({"--data-dir", tmp.string(), "verify", "tables", "--lambdency=-3:13+13"});
    auto m = run({"--data-dir", tmp.string(), "--machine", "verify", "tables", "--lambdency=-3:13+13"});
    CHECK(h.code == 1);
    CHECK(m.code == 1);
    CHECK(verdicts(h.out) == verdicts(m.out));
    fs::remove_all(tmp);
}

TEST_CASE("table series and comparison")
{
    auto r = run({"mt", "--lambdency=-3:1", "--class=1A", "--dmax=12"});
    CHECK(r.code == 0);
    CHECK(r.out.find("248") != std::string::npos);
    CHECK(r.out.find("54000") != std::string::npos);
}

TEST_CASE("rademacher output does not depend on the worker count")
{
    std::vector<std::string> base{"rademacher", "--m=7", "--D0=-3", "--cmax=40", "--dmax=20"};
    auto a = base, b = base;
    a.insert(a.begin(), {"--workers", "1"});
    b.insert(b.begin(), {"--workers", "3"});
    auto ra = run(a), rb = run(b);
    CHECK(ra.code == rb.code);
    CHECK_FALSE(ra.out.empty());
    CHECK(ra.out == rb.out);
}

TEST_CASE("theta and weil printing")
{
    auto t = run({"theta", "--m=1", "--r=1", "--order=5"});
    CHECK(t.code == 0);
    CHECK_FALSE(t.out.empty());
    auto w = run({"weil", "--m=1", "--gen=T"});
    CHECK(w.code == 0);
    CHECK(run({"weil", "--m=1", "--matrix=1,1,1,1"}).code == 2);
}

}
