#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// end-to-end checks against the built binary (path injected by the build)

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(MOMENTDET_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("cli_fixture_") + name;
    std::ofstream(path) << content;
    return path;
}

const std::string kGauss =
    R"({"kind":"catalog","catalog_id":"gaussian","parameters":{"mu":0,"sigma":1}})";

} // namespace

TEST_CASE("moment tables serialize with the documented shape") {
    auto spec = write_temp("gauss.json", kGauss);
    auto r = run("moments --spec " + spec + " --max-order 8");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["schema"] == "momentdet/1");
    CHECK(doc["entries"].size() == 9);
    CHECK(doc["exact"] == true);
    // s_4 = 3 as an exact pair
    CHECK(doc["entries"][4]["value"][0] == "3");

    auto r0 = run("moments --spec " + spec + " --max-order 0");
    CHECK(nlohmann::json::parse(r0.output)["entries"].size() == 1);
}

TEST_CASE("malformed specs exit 2 with a position diagnostic") {
    auto bad = write_temp("bad.json", "{\"kind\":");
    auto r = run("moments --spec " + bad + " --max-order 2");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line") != std::string::npos);
}

TEST_CASE("verdicts are data, not exit codes") {
    auto spec = write_temp("gauss2.json", kGauss);
    auto r = run("check --spec " + spec + " --max-order 40 --rules all-1d");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["overall"] == "DETERMINATE_EVIDENCE");
    CHECK(doc["fingerprint"].get<std::string>().size() > 0);
}

TEST_CASE("moments output re-ingests losslessly") {
    auto spec = write_temp("gauss3.json", kGauss);
    auto mfile = write_temp("gmom.json", "");
    REQUIRE(run("moments --spec " + spec + " --max-order 40 --out " + mfile).exit_code == 0);
    auto direct = run("check --spec " + spec + " --max-order 40 --rules all-1d");
    auto via = run("check --moments " + mfile + " --rules all-1d");
    CHECK(direct.output == via.output);
}

TEST_CASE("disk-radius rows are emitted as CSV") {
    auto spec = write_temp("gauss4.json", kGauss);
    auto r = run("weyl --spec " + spec + " --max-order 42 --z 0+1i --degree 20");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("n,rho", 0) == 0);
    int rows = 0;
    for (char c : r.output)
        if (c == '\n') ++rows;
    CHECK(rows == 22); // header + n = 0..20
}

TEST_CASE("unknown rules and missing inputs exit 2") {
    auto spec = write_temp("gauss5.json", kGauss);
    CHECK(run("check --spec " + spec + " --max-order 8 --rules bogus").exit_code == 2);
    CHECK(run("check --rules all").exit_code == 2);
    CHECK(run("weyl --degree 5").exit_code == 2);
}
