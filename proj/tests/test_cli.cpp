#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* solver_bin() { return std::getenv("SOLVER_BIN"); }

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(solver_bin()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

#define NEED_SOLVER()                                      \
    if (!solver_bin()) {                                   \
        WARN("SOLVER_BIN not set; skipping CLI test");     \
        return;                                            \
    }

}  // namespace

TEST_CASE("cli: solve prints the requested eigenvalues") {
    NEED_SOLVER();
    RunResult r = run("solve --a 0 --b 1 --d 3 --l 0 --n 0 --digits 15 --precision 40");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3.000000000000000") != std::string::npos);
    CHECK(r.out.find("status") != std::string::npos);

    RunResult w = run("solve --a 1 --b 1 --d 3 --R 1 --n 0 --digits 18 --precision 40");
    CHECK(w.exit_code == 0);
    CHECK(w.out.find("12.550092461190652257") != std::string::npos);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
    NEED_SOLVER();
    std::string cmd = "solve --a 1 --b 1 --d 3 --n 0,1 --digits 14 --precision 40 --format json";
    RunResult r1 = run(cmd);
    RunResult r2 = run(cmd);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(!r1.out.empty());
}

TEST_CASE("cli: json output carries energies as decimal strings") {
    NEED_SOLVER();
    RunResult r = run("solve --a 1 --b 1 --d 3 --n 0 --digits 18 --precision 40 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["energy"].is_string());
    CHECK(j["results"][0]["energy"].get<std::string>() == "4.057877007967971193");
    CHECK(j["results"][0]["status"] == "ok");
    CHECK(j["spec"]["d"] == 3);
}

TEST_CASE("cli: csv output has a header row and full-precision fields") {
    NEED_SOLVER();
    RunResult r = run("solve --a 0 --b 1 --d 5 --n 0..1 --digits 16 --precision 40 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("n,l,d,energy,N,r0,status", 0) == 0);
    CHECK(r.out.find("5.0000000000000000") != std::string::npos);
    CHECK(r.out.find("9.0000000000000000") != std::string::npos);
}

TEST_CASE("cli: invalid configurations exit with code 1") {
    NEED_SOLVER();
    CHECK(run("solve --a -1 --b 1 --d 3 --n 0").exit_code == 1);
    CHECK(run("solve --a 1 --b 1 --d 1 --n 0").exit_code == 1);
    CHECK(run("solve --a 1 --b 1 --d 3 --n nonsense").exit_code == 1);
    CHECK(run("table XII").exit_code == 1);
    CHECK(run("bogus-subcommand").exit_code == 1);
}

TEST_CASE("cli: quasi-exact catalogs through the exact subcommand") {
    NEED_SOLVER();
    RunResult soft = run("exact soft --nprime 2 --d 3 --l 0 --b 1 --digits 18");
    CHECK(soft.exit_code == 0);
    CHECK(soft.out.find("4.472135954999579393") != std::string::npos);  // 2 sqrt5
    CHECK(soft.out.find("ground") != std::string::npos);

    RunResult hard = run("exact hard --n 2 --d 3 --l 0 --b 1 --digits 16");
    CHECK(hard.exit_code == 0);
    CHECK(hard.out.find("2.2937668247435345") != std::string::npos);
    CHECK(hard.out.find("1.4470822287545015") != std::string::npos);

    // degree 0 admits no positive pair
    CHECK(run("exact hard --n 0 --d 3 --l 0 --b 1").exit_code == 2);
}

TEST_CASE("cli: table regeneration diffs cleanly") {
    NEED_SOLVER();
    RunResult r = run("table II");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all entries match") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    RunResult rcsv = run("table I --format csv");
    CHECK(rcsv.exit_code == 0);
    CHECK(rcsv.out.rfind("ok,", 0) == 0);
}

TEST_CASE("cli: bounds reporting") {
    NEED_SOLVER();
    RunResult r = run("bounds --a 1 --b 1 --d 3 --digits 6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("envelope upper") != std::string::npos);
    CHECK(r.out.find("4.228705") != std::string::npos);
    CHECK(r.out.find("4.079880") != std::string::npos);
    CHECK(r.out.find("3.790487") != std::string::npos);
}

TEST_CASE("cli: config files feed the same pipeline as flags") {
    NEED_SOLVER();
    std::string path = "/tmp/spectral_cli_cfg.txt";
    {
        std::ofstream f(path);
        f << "a = 1\nb = 1\nd = 4\nl = 0\nR = inf\nprecision = 40\ndigits = 15\n";
    }
    RunResult from_cfg = run("solve --config " + path + " --n 0");
    RunResult from_flags = run("solve --a 1 --b 1 --d 4 --n 0 --digits 15 --precision 40");
    CHECK(from_cfg.exit_code == 0);
    CHECK(from_cfg.out == from_flags.out);
    // flag overrides win over file values
    RunResult overridden = run("solve --config " + path + " --n 0 --d 6");
    CHECK(overridden.out.find("6.653839972029922") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli: output lands in the requested file") {
    NEED_SOLVER();
    std::string path = "/tmp/spectral_cli_out.csv";
    RunResult r = run("solve --a 0 --b 1 --d 3 --n 0 --digits 10 --precision 40 --format csv --output " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content.find("3.0000000000") != std::string::npos);
    std::remove(path.c_str());
}
