#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "report.hpp"

using namespace cf;

namespace {

FieldElement F(const char* s) { return parse_field(s); }

const double kPi = 3.14159265358979323846;

FieldElement random_plane(Stream& s, long span) {
    return {s.rational(-span, span, 20), s.rational(-span, span, 20)};
}

// Polar quadrature of int_r dA(w)/|z - w|^4 around z, with the exact tail beyond radius R
// (r must contain everything outside that circle).
double kernel_polar(const Region& r, Complex z, double r0, double R, int n) {
    double ls0 = std::log(r0), ls1 = std::log(R), ds = (ls1 - ls0) / n, dt = 2 * kPi / n;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        double th = (i + 0.5) * dt;
        Complex dir = std::polar(1.0, th);
        for (int j = 0; j < n; ++j) {
            double s = ls0 + (j + 0.5) * ds, rho = std::exp(s);
            if (r.contains_float(z + rho * dir, 0) == Membership::Inside) sum += std::exp(-2 * s);
        }
    }
    return sum * ds * dt + kPi / (R * R);
}

}  // namespace

TEST_CASE("primitive construction and evaluation") {
    Primitive c = Primitive::circle(F("3/2+1/2r"), 1, Rel::Gt);  // |z - eta| > 1
    CHECK(c.is_circle());
    CHECK(c.center() == F("3/2+1/2r"));
    CHECK(c.r_sq() == 1);
    CHECK(c.eval(F("3")) == 2);  // |3 - eta|^2 - 1
    CHECK(c.holds(F("3")));
    CHECK_FALSE(c.holds(F("1/2+1/2r")));  // |zeta - eta| = 1
    CHECK(c.contains_infinity());
    CHECK_THROWS_AS(Primitive::circle(F("0"), 0, Rel::Lt), Error);
    Primitive l = Primitive::line(1, -1, 0, Rel::Lt);  // y > x
    CHECK_FALSE(l.is_circle());
    CHECK(l.holds(F("1r")));
    CHECK(l.passes_through_zero());
    CHECK(c.eval_float(Complex(3, 0)) == doctest::Approx(2.0));
}

TEST_CASE("catalog examples") {
    const Catalog& cat = catalog();
    // V*_{6,1} = {|z| > 1} and {|z - eta| > 1}
    const Region& v61 = cat.Vs(6, 1);
    REQUIRE(v61.terms.size() == 1);
    CHECK(v61.terms[0].size() == 2);
    CHECK(v61.terms[0][0] == Primitive::circle(FieldElement(0), 1, Rel::Gt));
    CHECK(v61.terms[0][1] == Primitive::circle(F("3/2+1/2r"), 1, Rel::Gt));
    CHECK(cat.Vs(1, 1).contains(F("3")));
    CHECK_FALSE(cat.Vs(1, 1).contains(F("1")));
    CHECK(cat.Vs(1, 1).contains_infinity());

    // L5 is the open segment (-1, 1)
    CHECK(cat.Lset(5).contains(F("0")));
    CHECK(cat.Lset(5).contains(F("-9/10")));
    CHECK_FALSE(cat.Lset(5).contains(F("1")));
    CHECK_FALSE(cat.Lset(5).contains(F("1/100r")));

    FieldElement p = F("3/4+1/12r");
    CHECK(cat.Vc(4, 1).contains(p));
    CellResult r = cat.cell_of(p);
    CHECK(r.status == CellStatus::Ok);
    CHECK(r.cell == CellIndex{4, 1});
    r = cat.cell_of(p.rotate(1));
    CHECK(r.status == CellStatus::Ok);
    CHECK(r.cell == CellIndex{4, 2});
    CHECK(cat.cell_of(F("0")).status == CellStatus::BoundaryPoint);
    CHECK(cat.cell_of(F("1")).status == CellStatus::NotInU);
    REQUIRE(cat.cell_of_float(p.approx()).has_value());
    CHECK(*cat.cell_of_float(p.approx()) == CellIndex{4, 1});
    CHECK_FALSE(cat.cell_of_float(Complex(0, 0)).has_value());

    CHECK(cat.S_minus_zeta[0].contains_infinity());
    CHECK(cat.S_zeta_bar[0].contains_infinity());
}

TEST_CASE("rotations of cells") {
    const Catalog& cat = catalog();
    Stream s(101);
    for (int i = 0; i < 2000; ++i) {
        FieldElement z = sample_U(s, 12);
        for (int k = 1; k <= 6; ++k)
            for (int l = 1; l <= 6; ++l) {
                int l2 = l % 6 + 1;
                CHECK(cat.Vc(k, l2).contains(z.rotate(1)) == cat.Vc(k, l).contains(z));
                CHECK(cat.Vs(k, l2).contains(z.rotate(1) * FieldElement(3)) ==
                      cat.Vs(k, l).contains(z * FieldElement(3)));
                if (k <= 5) CHECK(cat.U(k, l2).contains(z.rotate(1)) == cat.U(k, l).contains(z));
            }
    }
}

TEST_CASE("cells partition U up to boundaries") {
    const Catalog& cat = catalog();
    Stream s(102);
    int ok = 0, boundary = 0;
    for (int i = 0; i < 4000; ++i) {
        FieldElement z = sample_U(s, i % 4 == 0 ? 3 : 14);
        CellResult r = cat.cell_of(z);
        REQUIRE(r.status != CellStatus::NotInU);
        if (r.status == CellStatus::Ok) {
            ++ok;
            auto f = cat.cell_of_float(z.approx());
            if (f) CHECK(*f == r.cell);
            for (int k = 1; k <= 5; ++k)
                for (int l = 1; l <= 6; ++l)
                    if (cat.U(k, l).contains(z)) CHECK(in_U(z));
            continue;
        }
        ++boundary;
        bool on_some = false;
        for (int k = 1; k <= 6; ++k)
            for (int l = 1; l <= 6; ++l) on_some = on_some || cat.Vc(k, l).on_boundary(z);
        CHECK(on_some);
    }
    CHECK(ok > 2900);
    CHECK(boundary > 0);  // the coarse points include cell corners
}

TEST_CASE("region maps agree with pointwise maps") {
    const Catalog& cat = catalog();
    Stream s(103);
    FieldElement t = F("1/3-2/7r");
    for (const Region* r : {&cat.Vc(2, 3), &cat.Vs(4, 5), &cat.U(3, 6), &cat.Lset(9)}) {
        Region inv = r->inverted(), rot = r->rotated(2), tr = r->translated(t), cl = r->closure();
        for (int i = 0; i < 1500; ++i) {
            FieldElement z = random_plane(s, 3);
            if (z.is_zero()) continue;
            CHECK(inv.contains(z.inv()) == r->contains(z));
            CHECK(rot.contains(z.rotate(2)) == r->contains(z));
            CHECK(tr.contains(z + t) == r->contains(z));
            if (r->contains(z)) CHECK(cl.contains(z));
        }
    }
    // |z - 2| < 1 inverts to |w - 2/3| < 1/3
    Region d = make_region("d", {Primitive::circle(FieldElement(2), 1, Rel::Lt)});
    Region di = d.inverted();
    REQUIRE(di.terms[0].size() == 1);
    CHECK(di.terms[0][0].center() == F("2/3"));
    CHECK(di.terms[0][0].r_sq() == mpq_class(1, 9));
    CHECK_FALSE(di.contains_infinity());
    // a circle through 0 inverts to a line
    Region e = make_region("e", {Primitive::circle(FieldElement(1), 1, Rel::Lt)});
    CHECK_FALSE(e.inverted().terms[0][0].is_circle());
    CHECK(e.inverted().contains(F("1")));
}

TEST_CASE("inverted V* lies in the closed unit disk") {
    const Catalog& cat = catalog();
    Stream s(104);
    for (int k = 1; k <= 6; ++k) {
        Region inv = cat.Vs(k, 1).inverted();
        for (int i = 0; i < 500; ++i) {
            FieldElement z = random_plane(s, 2);
            if (inv.contains(z)) CHECK(z.abs_sq() <= 1);
        }
    }
}

TEST_CASE("bounding boxes contain the region") {
    const Catalog& cat = catalog();
    Stream s(105);
    CHECK_FALSE(cat.Vs(1, 1).bounding_box().has_value());
    for (int k = 1; k <= 6; ++k) {
        auto b = cat.Vc(k, 1).bounding_box();
        REQUIRE(b.has_value());
        CHECK(b->x0 >= mpq_class(-1001, 1000));  // conservative: slightly padded
        CHECK(b->x1 <= mpq_class(1001, 1000));
        for (int i = 0; i < 1000; ++i) {
            FieldElement z = sample_U(s, 12);
            if (!cat.Vc(k, 1).contains(z)) continue;
            CHECK(z.x >= b->x0);
            CHECK(z.x <= b->x1);
            CHECK(z.y >= b->y0);
            CHECK(z.y <= b->y1);
        }
    }
}

TEST_CASE("kernel integral: closed forms") {
    // disk of radius 1 about 3, seen from 0: pi / 64
    Region d = make_region("d", {Primitive::circle(FieldElement(3), 1, Rel::Lt)});
    CHECK(kernel_integral(boundary_pieces(d), Complex(0, 0)) == doctest::Approx(kPi / 64).epsilon(1e-9));
    // exterior of the unit disk from z: pi / (1 - |z|^2)^2
    Region ext = make_region("ext", {Primitive::circle(FieldElement(0), 1, Rel::Gt)});
    for (Complex z : {Complex(0, 0), Complex(0.3, 0.2), Complex(-0.5, 0.1)}) {
        double want = kPi / std::pow(1 - std::norm(z), 2);
        CHECK(kernel_integral(boundary_pieces(ext), z) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("kernel integral of V* against polar quadrature") {
    const Catalog& cat = catalog();
    struct Case {
        int k, l;
        Complex z;
    };
    for (Case c : {Case{6, 1, {0.3, 0.1}}, Case{1, 1, {0.2, -0.1}}, Case{4, 3, {-0.1, 0.35}}}) {
        const Region& r = cat.Vs(c.k, c.l);
        double contour = kernel_integral(boundary_pieces(r), c.z);
        double polar = kernel_polar(r, c.z, 0.05, 40, 1500);
        CAPTURE(c.k);
        CHECK(contour == doctest::Approx(polar).epsilon(2e-3));
    }
}

TEST_CASE("figures are well-formed SVG") {
    auto figs = region_figures();
    REQUIRE(figs.size() == 5);
    for (const auto& [name, doc] : figs) {
        CAPTURE(name);
        CHECK(name.size() > 4);
        CHECK(name.substr(name.size() - 4) == ".svg");
        CHECK(doc.find("<svg") != std::string::npos);
        CHECK(doc.find("</svg>") != std::string::npos);
        CHECK(doc.find("nan") == std::string::npos);
        CHECK(doc.find("inf") == std::string::npos);
        size_t open = 0, close = 0;
        for (size_t p = 0; (p = doc.find('<', p)) != std::string::npos; ++p) ++open;
        for (size_t p = 0; (p = doc.find('>', p)) != std::string::npos; ++p) ++close;
        CHECK(open == close);
    }
}
