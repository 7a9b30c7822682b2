#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + QPGEOM_CLI + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const char* name) { return std::string(QPGEOM_DATA) + "/" + name; }

std::string temp_file(const char* name, const std::string& contents) {
    const std::string path = std::string(QPGEOM_TMP) + "/" + name;
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs(contents.c_str(), f);
    std::fclose(f);
    return path;
}

}  // namespace

TEST_CASE("check verifies example 1") {
    const auto r = run("check " + data("example1.json"));
    CHECK(r.status == 0);
    CHECK(r.out.find("\"overall\": \"invariant\"") != std::string::npos);
}

TEST_CASE("example 2 holds at four decimals only") {
    CHECK(run("check " + data("example2.json") + " --tol 1e-3").status == 0);
    CHECK(run("check " + data("example2.json")).status == 2);
    CHECK(run("check " + data("example2.json"), "QPGEOM_TOL=1e-3").status == 0);
}

TEST_CASE("separate walk and term files") {
    const auto walk = temp_file("walk.json", R"({"p_-1_1": "2/5", "p_0_-1": "2/5", "p_1_-1": "1/5", "h_1": "1/5", "h_0": "2/5", "v_-1": "18/25", "v_0": "2/25"})");
    const auto two = temp_file("two.json", R"([{"rho": "1/2", "sigma": "1/4", "alpha": "1"}, {"rho": "1/16", "sigma": "1/4", "alpha": "-1"}])");
    const auto r = run("check " + walk + " " + two);
    CHECK(r.status == 2);
    CHECK(r.out.find("\"refuted_by\"") != std::string::npos);
}

TEST_CASE("empty term set is undetermined") {
    const auto none = temp_file("none.json", "[]");
    CHECK(run("check " + data("example1.json") + " " + none).status == 3);
}

TEST_CASE("parse errors exit 1 with a location") {
    const auto bad = temp_file("bad.json", "{\n  \"p_0_1\": \"1/2\",\n  \"h_0\": \"oops\"\n}");
    const auto r = run("check " + bad + " " + data("example1.json"));
    CHECK(r.status == 1);
    CHECK(r.out.find("bad.json:3") != std::string::npos);
    CHECK(r.out.find("h_0") != std::string::npos);
    CHECK(run("check").status == 1);
    CHECK(run("frobnicate").status == 1);
}

TEST_CASE("output is deterministic") {
    const auto a = run("check " + data("example3.json") + " --tol 1e-3 --oracle 20");
    const auto b = run("check " + data("example3.json") + " --tol 1e-3 --oracle 20");
    CHECK(a.out == b.out);
    CHECK(run("sweep --seed 5 --count 4").out == run("sweep --seed 5 --count 4").out);
    CHECK(run("sweep --seed 5 --count 4").out != run("sweep --seed 6 --count 4").out);
}

TEST_CASE("construct then check round trip") {
    const auto r = run("construct " + data("example1_interior.json") + " --rho 1/2 --sigma 1/4 --length 3");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("\"nullspace_dim\": 1") != std::string::npos);
    CHECK(r.out.find("\"stop_reason\": \"max_length\"") != std::string::npos);
    CHECK(r.out.find("-35/288") != std::string::npos);
    const auto bundle = temp_file("constructed.json", r.out);
    CHECK(run("check " + bundle).status == 0);
}

TEST_CASE("construct search finds the longest feasible chain") {
    const auto r = run("construct " + data("example1_interior.json") + " --rho 1/2 --length 5 --search");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"terms\"") != std::string::npos);
}

TEST_CASE("curve CSV") {
    const auto r = run("curve " + data("example1.json") + " -n 10");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("curve,rho,sigma\n", 0) == 0);
    CHECK(r.out.find("\nQ,") != std::string::npos);
}

TEST_CASE("oracle with comparison and CSV dump") {
    const std::string csv = std::string(QPGEOM_TMP) + "/pi.csv";
    const auto r = run("oracle " + data("example1.json") + " -N 30 --method gth --window 6 --csv " + csv);
    CHECK(r.status == 0);
    CHECK(r.out.find("\"max_rel_error\"") != std::string::npos);
    FILE* f = std::fopen(csv.c_str(), "r");
    REQUIRE(f != nullptr);
    char line[32] = {};
    CHECK(std::fgets(line, sizeof line, f) != nullptr);
    CHECK(std::string(line) == "i,j,pi\n");
    std::fclose(f);
}
