// Regions bounded by circles and lines with rational data.
//
// Every primitive is f(z) = A|z|^2 + 2 Re(conj(B) z) + C compared against 0,
// with A, C rational and B in Q(sqrt(-3)). In z = x + y sqrt(-3) coordinates
// f = A(x^2 + 3y^2) + 2(bx x + 3 by y) + C.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "lattice.hpp"

namespace cf {

enum class Rel { Lt, Le, Gt, Ge, Eq };

struct Primitive {
    mpq_class A;
    FieldElement B;
    mpq_class C;
    Rel rel = Rel::Lt;

    // Float copies in (x, y) coordinates.
    double fa = 0, fbx = 0, fby = 0, fc = 0;

    Primitive() = default;
    Primitive(mpq_class A_, FieldElement B_, mpq_class C_, Rel rel_);

    // |z - c|^2 (rel) r_sq. Throws Error(Domain) unless r_sq > 0.
    static Primitive circle(const FieldElement& c, const mpq_class& r_sq, Rel rel);
    // u x + v y (rel) w
    static Primitive line(const mpq_class& u, const mpq_class& v, const mpq_class& w, Rel rel);

    bool is_circle() const { return sgn(A) != 0; }
    FieldElement center() const;  // circles only
    mpq_class r_sq() const;       // circles only

    mpq_class eval(const FieldElement& z) const;
    double eval_float(Complex z) const;
    bool holds(const FieldElement& z) const;
    // +1 inside with margin, 0 within tol of the curve, -1 violated
    int holds_float(Complex z, double tol) const;
    bool contains_infinity() const;
    bool passes_through_zero() const { return sgn(C) == 0; }

    Primitive inverted() const;                    // image under z -> 1/z
    Primitive rotated(int k) const;                // image under z -> zeta^k z
    Primitive translated(const FieldElement& t) const;  // image under z -> z + t

    friend bool operator==(const Primitive& l, const Primitive& r);
    std::string str() const;
};

// Union of intersections.
struct Region {
    std::string name;
    std::vector<std::vector<Primitive>> terms;
    bool plus_infinity = false;  // infinity adjoined explicitly

    bool contains(const FieldElement& z) const;
    Membership contains_float(Complex z, double tol = 1e-12) const;
    bool contains_infinity() const;
    // z satisfies some primitive with equality
    bool on_boundary(const FieldElement& z) const;

    Region inverted() const;
    Region closure() const;  // strict relations relaxed
    Region rotated(int k) const;
    Region translated(const FieldElement& t) const;
    Region intersect(const Region& other) const;

    // conservative axis-aligned bounding box in (x, y); nullopt when unbounded
    struct Box {
        mpq_class x0, x1, y0, y1;
    };
    std::optional<Box> bounding_box() const;
};

Region make_region(std::string name, std::vector<Primitive> conj);

struct CellIndex {
    int k = 0, l = 0;
    friend bool operator==(const CellIndex& a, const CellIndex& b) { return a.k == b.k && a.l == b.l; }
};

enum class CellStatus { Ok, BoundaryPoint, NotInU };

struct CellResult {
    CellStatus status = CellStatus::Ok;
    CellIndex cell;
};

struct Catalog {
    Region U0;                                 // open hexagon
    std::array<std::array<Region, 6>, 5> Ucell;  // [k-1][l-1]
    std::array<std::array<Region, 6>, 6> V;
    std::array<std::array<Region, 6>, 6> Vstar;
    std::array<Region, 12> L;                  // [j-1]
    std::array<Region, 4> S_minus_zeta, S_zeta_bar;

    const Region& U(int k, int l) const { return Ucell[k - 1][l - 1]; }
    const Region& Vc(int k, int l) const { return V[k - 1][l - 1]; }
    const Region& Vs(int k, int l) const { return Vstar[k - 1][l - 1]; }
    const Region& Lset(int j) const { return L[j - 1]; }

    CellResult cell_of(const FieldElement& z) const;
    // nullopt when z is outside U or in the tolerance band of some cell boundary
    std::optional<CellIndex> cell_of_float(Complex z, double tol = 1e-12) const;
};

const Catalog& catalog();

// ---- float geometry: boundary pieces, rendering, contour integrals ----

struct BoundaryPiece {
    bool circle = false;
    Complex center;  // circle
    double radius = 0;
    Complex origin, dir;  // line: origin + t*dir, |dir| = 1
    double t0 = 0, t1 = 0;  // angle or line parameter, t0 < t1
    int orientation = 1;    // +1 when increasing t keeps the region on the left
    Complex at(double t) const;
    Complex tangent(double t) const;  // derivative with respect to t
};

// Pieces of the topological boundary of each conjunction; lines are clipped to |t| <= line_extent.
std::vector<BoundaryPiece> boundary_pieces(const Region& r, double line_extent = 8.0);

// Integral over r of dA(w)/|z - w|^4 via the boundary contour; z must lie off the closure of r.
double kernel_integral(const std::vector<BoundaryPiece>& boundary, Complex z);

struct SvgStyle {
    std::string stroke = "#000";
    double width = 0.01;
    std::string fill = "none";
};
struct SvgLayer {
    const Region* region;
    SvgStyle style;
    std::string label;
};
// viewBox in complex coordinates; y axis flipped so Im grows upwards.
std::string render_svg(const std::vector<SvgLayer>& layers, double x0, double y0, double x1, double y1,
                       const std::string& title);

}  // namespace cf
