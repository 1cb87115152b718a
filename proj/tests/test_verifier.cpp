#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "verifier.hpp"

using namespace cf;

namespace {

VerifyConfig small(uint64_t samples, uint64_t seed = 42) {
    VerifyConfig c;
    c.samples = samples;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("every check passes at small sizes") {
    for (const auto& name : check_names()) {
        CAPTURE(name);
        CheckReport r = run_check(name, small(600));
        CHECK(r.pass());
        CHECK(r.samples > 0);
        CHECK(r.failures.empty());
    }
    CHECK(check_names().size() == 6);
    CHECK(run_checks("all", small(200)).size() == 6);
    CHECK_THROWS_AS(run_check("nope", small(10)), Error);
}

TEST_CASE("reports depend on the seed only, not on the thread count") {
    VerifyConfig c = small(400, 7);
    set_thread_count(1);
    json a = run_check("frs", c).to_json();
    json a2 = run_check("orbit", c).to_json();
    set_thread_count(3);
    json b = run_check("frs", c).to_json();
    json b2 = run_check("orbit", c).to_json();
    set_thread_count(0);
    CHECK(a.dump() == b.dump());
    CHECK(a2.dump() == b2.dump());
    CHECK(run_check("monotonic", c).to_json().dump() == run_check("monotonic", c).to_json().dump());
    CHECK(a.dump() != run_check("frs", small(400, 8)).to_json().dump());
}

TEST_CASE("a false image claim is caught") {
    const Catalog& cat = catalog();
    // the image of the eta cylinder is U_{1,1}, not its rotation
    CheckReport good = check_image_claim(0, {EisensteinInt::eta()}, cat.U(1, 1), 2000, 3);
    CHECK(good.pass());
    CheckReport bad = check_image_claim(0, {EisensteinInt::eta()}, cat.U(1, 2), 2000, 3);
    CHECK_FALSE(bad.pass());
    CHECK(bad.failure_count > 0);
    REQUIRE_FALSE(bad.failures.empty());
    CHECK(bad.failures.size() <= CheckReport::kKeptFailures);
    // a target that is too large fails the coverage side
    CheckReport big = check_image_claim(0, {EisensteinInt::eta()}, cat.U0, 2000, 3);
    CHECK_FALSE(big.pass());
}

TEST_CASE("report bookkeeping") {
    CheckReport r;
    r.name = "x";
    for (int i = 0; i < 30; ++i) r.fail({{"i", i}});
    CHECK(r.failure_count == 30);
    CHECK(r.failures.size() == CheckReport::kKeptFailures);
    CheckReport parent;
    parent.absorb(r);
    CHECK(parent.failure_count == 30);
    CHECK_FALSE(parent.pass());
    json j = r.to_json();
    CHECK(j["verdict"] == "FAIL");
    CHECK(j["failure_count"] == 30);
    CHECK_FALSE(j.contains("elapsed_s"));
    CHECK(r.to_json(true).contains("elapsed_s"));
}

TEST_CASE("exact sampling helpers") {
    Stream s(77);
    const Catalog& cat = catalog();
    for (int i = 0; i < 300; ++i) {
        FieldElement z = sample_U(s, 20);
        CHECK(in_U(z));
        FieldElement v = sample_region(s, cat.Vc(3, 2), *cat.Vc(3, 2).bounding_box());
        CHECK(cat.Vc(3, 2).contains(v));
    }
    for (int j = 1; j <= 12; ++j) {
        CAPTURE(j);
        for (int i = 0; i < 30; ++i) {
            FieldElement z = sample_L(j, s, 16);
            CHECK(cat.Lset(j).contains(z));
            CHECK(in_U(z));
        }
    }
    FieldElement c(mpq_class(1, 2), mpq_class(-1, 6));
    auto base = rational_point_on_circle(c, mpq_class(1, 3));
    REQUIRE(base.has_value());
    CHECK((*base - c).abs_sq() == mpq_class(1, 3));
    for (int k = -3; k <= 3; ++k) {
        FieldElement p = circle_point(c, *base, mpq_class(k, 5));
        CHECK((p - c).abs_sq() == mpq_class(1, 3));
    }
    for (const auto& prim : cat.Vs(5, 1).terms[0]) {
        for (const auto& p : points_on_primitive(prim, 10, s)) CHECK(prim.eval(p) == 0);
    }
    for (SpecialPoint sp : {SpecialPoint::MinusZeta, SpecialPoint::ZetaBar}) {
        auto pre = special_preimage(sp, 4, s);
        REQUIRE(pre.has_value());
        CHECK(pre->digits.size() == 4);
        Expansion e = expand(pre->z, 20);
        CHECK(e.terminal == Terminal::SpecialPeriodic);
        CHECK(e.point == sp);
        CHECK(e.entry_index == 4);
        CHECK(std::equal(pre->digits.begin(), pre->digits.end(), e.digits.begin()));
    }
}
