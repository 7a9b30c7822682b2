#include <doctest.h>

#include <sstream>

#include "qpgeom/io.hpp"
#include "support/examples.hpp"

using namespace qpgeom;
using testing::q;

TEST_CASE("walk object parses rationals, decimals and omitted keys") {
    const auto b = parse_bundle(R"({"p_-1_1": "2/5", "p_0_-1": "0.4", "p_1_-1": "1/5", "h_1": "1/5"})", "w.json", {});
    CHECK(b.walk.p(-1, 1).rational() == mpq_class(2, 5));
    CHECK(b.walk.p(0, -1).rational() == mpq_class(2, 5));
    CHECK(b.walk.h(1).rational() == mpq_class(1, 5));
    CHECK(b.walk.v(0).rational() == 0);
    CHECK_FALSE(b.terms.has_value());
}

TEST_CASE("tilde strings and fractional JSON numbers are approximate") {
    Tolerances tol;
    tol.eps = 1e-3;
    const auto g = parse_terms(R"([{"rho": "~0.5", "sigma": 0.25, "alpha": 1}])", "t.json", tol);
    REQUIRE(g.size() == 1);
    CHECK_FALSE(g[0].rho.is_exact());
    CHECK(g[0].rho.eps() == 1e-3);
    CHECK_FALSE(g[0].sigma.is_exact());
    CHECK(g[0].alpha.is_exact());
}

TEST_CASE("bundle round trip") {
    Bundle b;
    b.walk = testing::example1_walk();
    const Json doc = {{"walk", to_json(b.walk)}, {"terms", to_json(testing::example1_terms())}};
    const auto back = parse_bundle(doc.dump(2), "b.json", {});
    for (std::size_t k = 0; k < 9; ++k) CHECK(back.walk.interior[k] == b.walk.interior[k]);
    for (int s = -1; s <= 1; ++s) {
        CHECK(back.walk.h(s) == b.walk.h(s));
        CHECK(back.walk.v(s) == b.walk.v(s));
    }
    REQUIRE(back.terms.has_value());
    REQUIRE(back.terms->size() == 3);
    CHECK(back.terms->operator[](2).alpha.rational() == mpq_class(-35, 288));
}

TEST_CASE("malformed JSON reports the line") {
    try {
        parse_bundle("{\n  \"p_0_1\": \"1/2\",\n  \"h_0\" \"1/2\"\n}", "bad.json", {});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.source() == "bad.json");
    }
}

TEST_CASE("bad fields report line and field") {
    const std::string unknown = "{\n  \"p_0_1\": \"1/2\",\n  \"p_2_0\": \"1/2\"\n}";
    try {
        parse_bundle(unknown, "w.json", {});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.field() == "p_2_0");
    }
    const std::string value = "[\n {\"rho\": \"1/2\", \"sigma\": \"1/4\", \"alpha\": \"1\"},\n {\"rho\": \"1/3\", \"sigma\": \"x\", \"alpha\": \"1\"}\n]";
    try {
        parse_terms(value, "t.json", {});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.field() == "terms[1].sigma");
    }
    CHECK_THROWS_AS(parse_terms(R"([{"rho": "1/2", "sigma": "1/4"}])", "t.json", {}), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"p_0_1": true})", "w.json", {}), ParseError);
    CHECK_THROWS_AS(read_file("/nonexistent/walk.json"), ParseError);
}

TEST_CASE("pi CSV") {
    StationaryEstimate est;
    est.N = 1;
    est.pi = {0.25, 0.25, 0.5, 0.0};
    std::ostringstream os;
    write_pi_csv(os, est);
    CHECK(os.str() == "i,j,pi\n0,0,0.25\n0,1,0.25\n1,0,0.5\n1,1,0\n");
}
