#include "catamp/sweep.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace catamp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string csv_of(const SweepTable& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i)
        out += (i ? "," : "") + t.columns[i];
    out += '\n';
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("range parsing") {
    const Range r = Range::parse("0.5:2:4");
    CHECK(r.start == 0.5);
    CHECK(r.stop == 2.0);
    CHECK(r.steps == 4);
    const auto v = r.values();
    REQUIRE(v.size() == 4);
    CHECK(v[0] == 0.5);
    CHECK(v[3] == 2.0);

    const Range s = Range::parse("3.25");
    CHECK(s.steps == 1);
    CHECK(s.values() == std::vector<double>{3.25});

    CHECK_THROWS(Range::parse("1:2"));
    CHECK_THROWS(Range::parse("1:2:0"));
}

TEST_CASE("grid experiments produce one row per point") {
    SweepConfig cfg;
    cfg.experiment = "perr";
    cfg.axes["beta"] = Range{0.0, 2.0, 2};
    cfg.axes["window"] = Range{0.5, 1.5, 2};
    cfg.jobs = 2;
    const SweepTable t = run_sweep(cfg);
    CHECK(t.columns == std::vector<std::string>{"beta", "window", "perr",
                                                "status"});
    REQUIRE(t.rows.size() == 4);
    // Row-major: first axis outermost, deterministic order.
    CHECK(t.rows[0][0] == "0");
    CHECK(t.rows[0][1] == "0.5");
    CHECK(t.rows[3][0] == "2");
    CHECK(t.rows[3][1] == "1.5");
    for (const auto& r : t.rows) CHECK(r.back() == "ok");
}

TEST_CASE("reruns are identical") {
    SweepConfig cfg;
    cfg.experiment = "cat-amp-scan";
    cfg.axes["alpha"] = Range{0.5, 1.5, 3};
    cfg.axes["beta"] = Range{0.5, 2.5, 3};
    cfg.fixed["window"] = 1.0;
    cfg.jobs = 4;
    const std::string a = csv_of(run_sweep(cfg));
    cfg.jobs = 1;
    const std::string b = csv_of(run_sweep(cfg));
    CHECK(a == b);
    CHECK(a.find("nan") == std::string::npos);
}

TEST_CASE("iterate experiment table") {
    SweepConfig cfg;
    cfg.experiment = "iterate";
    cfg.seed = "squeezed-photon";
    cfg.fixed["xi"] = 3.0;
    cfg.k = 3;
    const SweepTable t = run_sweep(cfg);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.columns[0] == "k");
    CHECK(t.rows[0][0] == "1");
    CHECK(t.rows[2][0] == "3");
}

TEST_CASE("unknown experiment rejected") {
    SweepConfig cfg;
    cfg.experiment = "nope";
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}

#ifdef CATAMP_BIN
TEST_CASE("cli end to end: determinism, outputs, exit codes") {
    const std::string bin = CATAMP_BIN;
    const std::string base = "perr --beta 0:2:3 --window 0.5:1.5:2 --quiet";
    const std::string out1 = "sweep_test_a.csv";
    const std::string out2 = "sweep_test_b.csv";
    REQUIRE(std::system((bin + " " + base + " --out " + out1).c_str()) == 0);
    REQUIRE(std::system((bin + " " + base + " --jobs 3 --out " + out2).c_str()) ==
            0);
    const std::string a = slurp(out1);
    CHECK(a == slurp(out2));
    CHECK(a.rfind("beta,window,perr,status", 0) == 0);
    CHECK(!slurp(out1 + ".manifest.json").empty());

    // JSON format carries the manifest inline.
    const std::string outj = "sweep_test_c.json";
    REQUIRE(std::system(
                (bin + " " + base + " --format json --out " + outj).c_str()) ==
            0);
    const std::string j = slurp(outj);
    CHECK(j.find("\"manifest\"") != std::string::npos);
    CHECK(j.find("\"columns\"") != std::string::npos);

    // Usage errors exit with 2.
    const int bad = std::system((bin + " no-such-experiment 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(bad) == 2);
    const int badflag =
        std::system((bin + " perr --format yaml 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(badflag) == 2);

    for (const auto& f : {out1, out2, outj, out1 + ".manifest.json",
                          out2 + ".manifest.json"})
        std::remove(f.c_str());
}
#endif
