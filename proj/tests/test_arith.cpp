#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arith.hpp"

using namespace cf;

namespace {

FieldElement F(const char* s) { return parse_field(s); }

EisensteinInt random_eint(std::mt19937_64& g, long range) {
    std::uniform_int_distribution<long> d(-range, range);
    return {d(g), d(g)};
}

FieldElement random_field(std::mt19937_64& g) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
    return {mpq_class(num(g), den(g)), mpq_class(num(g), den(g))};
}

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol * (1 + std::abs(b)); }

}  // namespace

TEST_CASE("eisenstein integer examples") {
    EisensteinInt eta = EisensteinInt::eta();
    CHECK(eta * eta == EisensteinInt(0, 3));
    CHECK(eta.conj() == EisensteinInt(2, -1));
    CHECK(eta.conj().norm() == 3);
    CHECK(EisensteinInt(0, 0).norm() == 0);
    CHECK(EisensteinInt::sqrt_m3() == EisensteinInt(2, 0) * EisensteinInt::zeta() - EisensteinInt(1, 0));
    CHECK(EisensteinInt::zeta() * EisensteinInt::zeta() == EisensteinInt::zeta() - EisensteinInt(1, 0));
    CHECK(EisensteinInt::eta_k(3) == EisensteinInt(-2, 1));
    CHECK(EisensteinInt::eta_k(4) == EisensteinInt(-1, -1));
    CHECK(EisensteinInt::eta_k(7) == eta);
    CHECK(EisensteinInt(3, -4).str() == "(3,-4)");
}

TEST_CASE("eisenstein ring laws against complex floats") {
    std::mt19937_64 g(1);
    for (int i = 0; i < 2000; ++i) {
        EisensteinInt x = random_eint(g, 1000), y = random_eint(g, 1000);
        CHECK(close(approx(x * y), approx(x) * approx(y)));
        CHECK(close(approx(x + y), approx(x) + approx(y)));
        CHECK(close(approx(x.conj()), std::conj(approx(x))));
        CHECK(x.conj().conj() == x);
        CHECK(x.conj().norm() == x.norm());
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK(sgn(x.norm()) >= 0);
        CHECK((x.norm() == 0) == x.is_zero());
    }
}

TEST_CASE("ideal J membership") {
    CHECK(in_J(EisensteinInt::eta()));
    CHECK(in_J(EisensteinInt::sqrt_m3()));
    CHECK_FALSE(in_J(EisensteinInt(1, 0)));
    std::mt19937_64 g(2);
    for (int i = 0; i < 5000; ++i) {
        EisensteinInt x = random_eint(g, 300);
        CHECK(in_J(x) == in_J_bruteforce(x));
        CHECK(in_J(x * EisensteinInt::eta()));
        if (in_J(x) && !x.is_zero()) CHECK(x.norm() >= 3);
    }
}

TEST_CASE("field element examples") {
    FieldElement zeta(EisensteinInt::zeta());
    CHECK(zeta == FieldElement(mpq_class(1, 2), mpq_class(1, 2)));
    CHECK(zeta.inv() == zeta.conj());
    CHECK(FieldElement(EisensteinInt::sqrt_m3()) == FieldElement(0, 1));
    CHECK(FieldElement(0, 1).inv() == FieldElement(0, mpq_class(-1, 3)));
    CHECK(F("3/4+1/4r").abs_sq() == mpq_class(3, 4));
    CHECK(FieldElement(1).approx() == Complex(1.0, 0.0));
    CHECK_THROWS_AS(FieldElement(0).inv(), Error);
    CHECK_FALSE(q3_div(FieldElement(1), FieldElement(0)).has_value());
}

TEST_CASE("canonical form") {
    FieldElement a(mpq_class(6, -4), mpq_class(10, 20));
    CHECK(a.x.get_num() == -3);
    CHECK(a.x.get_den() == 2);
    CHECK(a.y.get_den() == 2);
    CHECK(a.str() == "-3/2+1/2r");
    CHECK(FieldElement(0).str() == "0+0r");
}

TEST_CASE("field arithmetic laws") {
    std::mt19937_64 g(3);
    for (int i = 0; i < 2000; ++i) {
        FieldElement a = random_field(g), b = random_field(g), c = random_field(g);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(close(approx(a * b), approx(a) * approx(b)));
        CHECK((a * b).abs_sq() == a.abs_sq() * b.abs_sq());
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
            CHECK(close(approx(b.inv()), 1.0 / approx(b)));
        }
        for (int k = 0; k < 6; ++k)
            CHECK(close(approx(a.rotate(k)), approx(a) * std::polar(1.0, k * 3.14159265358979323846 / 3)));
        CHECK(a.rotate(6) == a);
    }
}

TEST_CASE("embedding and back") {
    std::mt19937_64 g(4);
    for (int i = 0; i < 500; ++i) {
        EisensteinInt e = random_eint(g, 100000);
        auto back = to_eisenstein(embed(e));
        REQUIRE(back.has_value());
        CHECK(*back == e);
    }
    CHECK_FALSE(to_eisenstein(F("1/3")).has_value());
    CHECK(to_eisenstein(F("1/2+1/2r")) == EisensteinInt::zeta());
}

TEST_CASE("parser") {
    CHECK(F("3/10+1/7r") == FieldElement(mpq_class(3, 10), mpq_class(1, 7)));
    CHECK(F("-1/2-1/2r") == FieldElement(mpq_class(-1, 2), mpq_class(-1, 2)));
    CHECK(F("r") == FieldElement(0, 1));
    CHECK(F("-r") == FieldElement(0, -1));
    CHECK(F("2/4r") == FieldElement(0, mpq_class(1, 2)));
    CHECK(F("7") == FieldElement(7));
    CHECK(F(" 5 ") == FieldElement(5));
    CHECK(F("1/3-2r") == FieldElement(mpq_class(1, 3), -2));
    for (const char* bad : {"", "x", "1/0", "1+", "1+2", "r+r", "1/2/3", "--1", "1.5", "2r+1r"}) {
        CAPTURE(bad);
        bool threw = false;
        try {
            parse_field(bad);
        } catch (const Error& e) {
            threw = e.code() == ErrorCode::Parse;
        }
        CHECK(threw);
    }
    std::mt19937_64 g(5);
    for (int i = 0; i < 500; ++i) {
        FieldElement a = random_field(g);
        CHECK(parse_field(a.str()) == a);
    }
}
