#include <doctest.h>

#include "qpgeom/numeric.hpp"

using qpgeom::Numeric;

TEST_CASE("parse exact literals") {
    CHECK(Numeric::parse("2/5", 1e-9).rational() == mpq_class(2, 5));
    CHECK(Numeric::parse("0.15", 1e-9).rational() == mpq_class(3, 20));
    CHECK(Numeric::parse("-1.5e-3", 1e-9).rational() == mpq_class(-3, 2000));
    CHECK(Numeric::parse(" 7 ", 1e-9).rational() == 7);
    CHECK(Numeric::parse("4/6", 1e-9).rational() == mpq_class(2, 3));
}

TEST_CASE("parse approximate literal carries eps") {
    const Numeric x = Numeric::parse("~0.4618", 1e-3);
    CHECK_FALSE(x.is_exact());
    CHECK(x.eps() == 1e-3);
    CHECK(x.to_double() == doctest::Approx(0.4618));
}

TEST_CASE("malformed literals throw") {
    for (const char* bad : {"", "abc", "1/0", "1..2", "~", "~x", "2/", "1e"})
        CHECK_THROWS_AS(Numeric::parse(bad, 1e-9), std::invalid_argument);
}

TEST_CASE("exact arithmetic stays exact") {
    const Numeric a = Numeric::ratio(1, 3), b = Numeric::ratio(1, 6);
    const Numeric c = a + b;
    REQUIRE(c.is_exact());
    CHECK(c.rational() == mpq_class(1, 2));
    CHECK((a * b).rational() == mpq_class(1, 18));
    CHECK((a / b).rational() == 2);
    CHECK_THROWS_AS(a / Numeric(0), std::domain_error);
}

TEST_CASE("mixing regimes demotes") {
    const Numeric a = Numeric::ratio(1, 3);
    const Numeric b = Numeric::approximate(0.5, 1e-6);
    const Numeric c = a + b;
    CHECK_FALSE(c.is_exact());
    CHECK(c.eps() == 1e-6);
    CHECK_THROWS_AS(c.rational(), std::logic_error);
}

TEST_CASE("approximate equality is relative with floor one") {
    const Numeric a = Numeric::approximate(1000.0, 1e-3);
    CHECK(a == Numeric::approximate(1000.9, 1e-3));
    CHECK_FALSE(a == Numeric::approximate(1001.5, 1e-3));
    CHECK(Numeric::approximate(1e-4, 1e-3) == Numeric(0));
    CHECK(Numeric::approximate(1e-4, 1e-3).is_zero());
    CHECK_FALSE(Numeric::ratio(1, 10000).is_zero());
}

TEST_CASE("powers and zero convention") {
    CHECK(Numeric(0).pow(0).rational() == 1);
    CHECK(Numeric::ratio(2, 3).pow(-2).rational() == mpq_class(9, 4));
    CHECK_THROWS_AS(Numeric(0).pow(-1), std::domain_error);
}

TEST_CASE("exact square roots") {
    mpq_class r;
    CHECK(qpgeom::exact_sqrt(mpq_class(49, 144), r));
    CHECK(r == mpq_class(7, 12));
    CHECK_FALSE(qpgeom::exact_sqrt(mpq_class(2), r));
    CHECK_FALSE(qpgeom::exact_sqrt(mpq_class(-4), r));
}

TEST_CASE("string forms") {
    CHECK(Numeric::ratio(-6, 4).str() == "-3/2");
    CHECK(Numeric::approximate(0.25, 1e-9).str() == "~0.25");
}

TEST_CASE("tolerance from environment") {
    setenv("QPGEOM_TOL", "1e-4", 1);
    CHECK(qpgeom::Tolerances::from_env().eps == 1e-4);
    setenv("QPGEOM_TOL", "junk", 1);
    CHECK(qpgeom::Tolerances::from_env().eps == 1e-9);
    unsetenv("QPGEOM_TOL");
}
