#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "sympc/json_io.hpp"
#include "sympc/symform.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Run the installed CLI with the given arguments, capturing stdout (and
// stderr when the argument string redirects it).
RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SYMPC_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = std::move(out);
    return r;
}

} // namespace

TEST_CASE("classify subcommand", "[cli]") {
    auto r = run_cli("classify --field 3 --matrix '[[1,1],[0,1]]'");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["descriptor"]["n"] == 2);
    CHECK(j["descriptor"]["p"] == 3);
    REQUIRE(j["descriptor"]["linear"].size() == 1);
    CHECK(j["descriptor"]["linear"][0]["sign"] == "+");
    CHECK(j["descriptor"]["linear"][0]["b"] == json::array({0, 1}));
    CHECK(j["descriptor"]["linear"][0]["disc"]["2"] == "sq");
    CHECK(j["label"] ==
          R"({"linear":[{"b":[0,1],"disc":{"2":"sq"},"sign":"+"}],"n":2,"p":3,"selfbar":[],"split":[]})");

    // Byte-for-byte determinism across runs.
    auto r2 = run_cli("classify --field 3 --matrix '[[1,1],[0,1]]'");
    CHECK(r2.out == r.out);

    // The sibling transvection differs exactly in the square-class entry.
    auto rn = run_cli("classify --field 3 --matrix '[[1,2],[0,1]]'");
    REQUIRE(rn.status == 0);
    CHECK(json::parse(rn.out)["descriptor"]["linear"][0]["disc"]["2"] == "ns");

    auto rt = run_cli("classify --field 3 --matrix '[[1,1],[0,1]]' --out table");
    REQUIRE(rt.status == 0);
    CHECK(rt.out.find("linear sign=+") != std::string::npos);
    CHECK(rt.out.find("label {") != std::string::npos);
}

TEST_CASE("classify error paths", "[cli]") {
    auto r = run_cli("classify --field 3 --matrix '[[2,0],[0,1]]' 2>&1");
    CHECK(r.status == 1);
    CHECK(r.out.find("NotSymplectic") != std::string::npos);

    r = run_cli("classify --matrix '[[1,1],[0,1]]' 2>&1");
    CHECK(r.status == 1);
    CHECK(r.out.find("ParseError") != std::string::npos);

    r = run_cli("classify --field 3 2>&1");
    CHECK(r.status == 2);

    r = run_cli("no-such-command 2>&1");
    CHECK(r.status == 2);
}

TEST_CASE("conj-test subcommand", "[cli]") {
    auto r = run_cli("conj-test --field 3 --matrix '[[1,1],[0,1]]' --matrix '[[1,2],[0,1]]'");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["conjugate"] == false);
    REQUIRE(j["labels"].size() == 2);
    CHECK(j["labels"][0] != j["labels"][1]);

    r = run_cli("conj-test --field 3 --matrix '[[1,1],[0,1]]' --matrix '[[1,1],[0,1]]'");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["conjugate"] == true);
}

TEST_CASE("enumerate-classes subcommand", "[cli]") {
    auto r = run_cli("enumerate-classes --n 2 --q 3");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 7);
    REQUIRE(j["classes"].size() == 7);
    for (const auto& c : j["classes"]) CHECK(c["n"] == 2);

    r = run_cli("enumerate-classes --n 2 --q 4 2>&1");
    CHECK(r.status == 1);
    CHECK(r.out.find("BadParameters") != std::string::npos);
}

TEST_CASE("centralizer subcommand", "[cli]") {
    auto r = run_cli("centralizer --field 3 --matrix '[[1,1],[0,1]]'");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["total"] == "6");
    REQUIRE(j["factors"].size() == 2);
    CHECK(j["factors"][0]["symbol"] == "O(1,3)");
    CHECK(j["factors"][1]["symbol"] == "q^1");

    auto rt = run_cli("centralizer --field 3 --matrix '[[1,1],[0,1]]' --out table");
    CHECK(rt.out.find("total 6") != std::string::npos);
}

TEST_CASE("random subcommand", "[cli]") {
    auto r = run_cli("random --field 3 --n 4 --seed 7");
    REQUIRE(r.status == 0);
    auto r2 = run_cli("random --field 3 --n 4 --seed 7");
    CHECK(r2.out == r.out);
    auto r3 = run_cli("random --field 3 --n 4 --seed 8");
    CHECK(r3.out != r.out);

    // The emitted matrix is symplectic and feeds back into classify.
    using namespace sympc;
    Matrix u = matrix_from_json(json::parse(r.out));
    CHECK(u.rows() == 4);
    CHECK(is_symplectic(u, standard_form(u.field(), 4)));
    std::string compact = json::parse(r.out).dump();
    auto rc = run_cli("classify --matrix '" + compact + "'");
    CHECK(rc.status == 0);

    auto rmiss = run_cli("random --field 3 --n 4 2>&1");
    CHECK(rmiss.status == 2);
}

TEST_CASE("oracle-classes subcommand", "[cli]") {
    auto r = run_cli("oracle-classes --n 2 --q 3");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["order"] == 24);
    CHECK(j["count"] == 7);
    std::size_t total = 0;
    for (const auto& c : j["classes"]) total += c["size"].get<std::size_t>();
    CHECK(total == 24);

    r = run_cli("oracle-classes --n 4 --q 3 --cap 100 2>&1");
    CHECK(r.status == 1);
    CHECK(r.out.find("CapExceeded") != std::string::npos);
}

TEST_CASE("verify subcommand", "[cli]") {
    auto r = run_cli("verify --n 2 --q 3 --trials 20");
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    REQUIRE(j["checks"].size() == 5);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);

    auto rt = run_cli("verify --n 2 --q 3 --trials 5 --out table");
    REQUIRE(rt.status == 0);
    CHECK(rt.out.find("PASS partition") != std::string::npos);
    CHECK(rt.out.find("PASS centralizer") != std::string::npos);
}
