#include "regions.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cf {

namespace {

bool rel_ok(int sign, Rel rel) {
    switch (rel) {
        case Rel::Lt: return sign < 0;
        case Rel::Le: return sign <= 0;
        case Rel::Gt: return sign > 0;
        case Rel::Ge: return sign >= 0;
        case Rel::Eq: return sign == 0;
    }
    return false;
}

const char* rel_str(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
        case Rel::Eq: return "=";
    }
    return "?";
}

// Re(conj(B) t) in (x, y) coordinates
mpq_class re_conj_mul(const FieldElement& B, const FieldElement& t) { return B.x * t.x + 3 * B.y * t.y; }

}  // namespace

Primitive::Primitive(mpq_class A_, FieldElement B_, mpq_class C_, Rel rel_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), rel(rel_) {
    A.canonicalize();
    C.canonicalize();
    fa = A.get_d();
    fbx = B.x.get_d();
    fby = B.y.get_d();
    fc = C.get_d();
}

Primitive Primitive::circle(const FieldElement& c, const mpq_class& r_sq, Rel rel) {
    if (sgn(r_sq) <= 0) throw Error(ErrorCode::Domain, "circle with non-positive radius");
    return Primitive(1, -c, c.abs_sq() - r_sq, rel);
}

Primitive Primitive::line(const mpq_class& u, const mpq_class& v, const mpq_class& w, Rel rel) {
    if (sgn(u) == 0 && sgn(v) == 0) throw Error(ErrorCode::Domain, "degenerate line");
    return Primitive(0, FieldElement(u / 2, v / 6), -w, rel);
}

FieldElement Primitive::center() const { return FieldElement(-B.x / A, -B.y / A); }

mpq_class Primitive::r_sq() const { return B.abs_sq() / (A * A) - C / A; }

mpq_class Primitive::eval(const FieldElement& z) const {
    return A * z.abs_sq() + 2 * re_conj_mul(B, z) + C;
}

double Primitive::eval_float(Complex z) const {
    double x = z.real(), y = z.imag() / kSqrt3;
    return fa * (x * x + 3 * y * y) + 2 * (fbx * x + 3 * fby * y) + fc;
}

bool Primitive::holds(const FieldElement& z) const { return rel_ok(sgn(eval(z)), rel); }

int Primitive::holds_float(Complex z, double tol) const {
    double v = eval_float(z);
    if (rel == Rel::Eq) return std::abs(v) <= tol ? 0 : -1;
    if (std::abs(v) <= tol) return 0;
    return rel_ok(v > 0 ? 1 : -1, rel) ? 1 : -1;
}

bool Primitive::contains_infinity() const {
    int s = sgn(A);
    if (s == 0 || rel == Rel::Eq) return false;
    return rel_ok(s, rel);
}

Primitive Primitive::inverted() const {
    if (is_circle() && sgn(r_sq()) <= 0) throw Error(ErrorCode::Domain, "degenerate circle");
    return Primitive(C, B.conj(), A, rel);
}

Primitive Primitive::rotated(int k) const { return Primitive(A, B.rotate(k), C, rel); }

Primitive Primitive::translated(const FieldElement& t) const {
    FieldElement Bp = B - FieldElement(A, 0) * t;
    mpq_class Cp = C + A * t.abs_sq() - 2 * re_conj_mul(B, t);
    return Primitive(A, Bp, Cp, rel);
}

bool operator==(const Primitive& l, const Primitive& r) {
    return l.A == r.A && l.B == r.B && l.C == r.C && l.rel == r.rel;
}

std::string Primitive::str() const {
    std::ostringstream os;
    if (is_circle()) {
        // normalise to |z - c|^2 (rel) r^2, flipping rel for negative A
        Rel r = rel;
        if (sgn(A) < 0) {
            switch (rel) {
                case Rel::Lt: r = Rel::Gt; break;
                case Rel::Le: r = Rel::Ge; break;
                case Rel::Gt: r = Rel::Lt; break;
                case Rel::Ge: r = Rel::Le; break;
                case Rel::Eq: break;
            }
        }
        os << "|z-(" << center().str() << ")|^2 " << rel_str(r) << " " << r_sq().get_str();
    } else {
        mpq_class u = 2 * B.x, v = 6 * B.y, w = -C;
        os << u.get_str() << "*x + " << v.get_str() << "*y " << rel_str(rel) << " " << w.get_str();
    }
    return os.str();
}

// ---------------------------------------------------------------- Region

Region make_region(std::string name, std::vector<Primitive> conj) {
    Region r;
    r.name = std::move(name);
    r.terms.push_back(std::move(conj));
    return r;
}

bool Region::contains(const FieldElement& z) const {
    for (const auto& t : terms) {
        bool all = true;
        for (const auto& p : t) {
            if (!p.holds(z)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

Membership Region::contains_float(Complex z, double tol) const {
    bool boundary = false;
    for (const auto& t : terms) {
        int worst = 1;
        for (const auto& p : t) {
            worst = std::min(worst, p.holds_float(z, tol));
            if (worst < 0) break;
        }
        if (worst > 0) return Membership::Inside;
        if (worst == 0) boundary = true;
    }
    return boundary ? Membership::Boundary : Membership::Outside;
}

bool Region::contains_infinity() const {
    if (plus_infinity) return true;
    for (const auto& t : terms) {
        bool all = !t.empty();
        for (const auto& p : t) all = all && p.contains_infinity();
        if (all) return true;
    }
    return false;
}

bool Region::on_boundary(const FieldElement& z) const {
    for (const auto& t : terms)
        for (const auto& p : t)
            if (sgn(p.eval(z)) == 0) return true;
    return false;
}

namespace {

template <class F>
Region map_region(const Region& r, const std::string& suffix, F f) {
    Region out;
    out.name = r.name + suffix;
    for (const auto& t : r.terms) {
        std::vector<Primitive> nt;
        nt.reserve(t.size());
        for (const auto& p : t) nt.push_back(f(p));
        out.terms.push_back(std::move(nt));
    }
    return out;
}

}  // namespace

Region Region::inverted() const {
    // An explicitly adjoined infinity is dropped; membership of 0 is decided by the primitives.
    return map_region(*this, "^-1", [](const Primitive& p) { return p.inverted(); });
}

Region Region::closure() const {
    Region out = map_region(*this, "", [](const Primitive& p) {
        Primitive q = p;
        if (q.rel == Rel::Lt) q.rel = Rel::Le;
        if (q.rel == Rel::Gt) q.rel = Rel::Ge;
        return q;
    });
    out.name = "cl(" + name + ")";
    out.plus_infinity = plus_infinity;
    return out;
}

Region Region::rotated(int k) const {
    Region out = map_region(*this, "", [k](const Primitive& p) { return p.rotated(k); });
    out.plus_infinity = plus_infinity;
    return out;
}

Region Region::translated(const FieldElement& t) const {
    Region out = map_region(*this, "", [&t](const Primitive& p) { return p.translated(t); });
    out.plus_infinity = plus_infinity;
    return out;
}

Region Region::intersect(const Region& other) const {
    Region out;
    out.name = name + "&" + other.name;
    for (const auto& a : terms) {
        for (const auto& b : other.terms) {
            std::vector<Primitive> t = a;
            t.insert(t.end(), b.begin(), b.end());
            out.terms.push_back(std::move(t));
        }
    }
    out.plus_infinity = plus_infinity && other.plus_infinity;
    return out;
}

std::optional<Region::Box> Region::bounding_box() const {
    if (contains_infinity()) return std::nullopt;
    const double extent = 8.0;
    auto pieces = boundary_pieces(*this, extent);
    if (pieces.empty()) return std::nullopt;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    auto take = [&](Complex p) {
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    };
    for (const auto& bp : pieces) {
        if (!bp.circle && (std::abs(bp.t0) >= extent - 1e-9 || std::abs(bp.t1) >= extent - 1e-9))
            return std::nullopt;
        take(bp.at(bp.t0));
        take(bp.at(bp.t1));
        if (bp.circle) {
            for (int q = -4; q <= 8; ++q) {
                double th = q * M_PI / 2;
                if (th > bp.t0 && th < bp.t1) take(bp.at(th));
            }
        }
    }
    // to (x, y) coordinates, padded and rounded outward to a dyadic grid
    const double pad = 1e-7, scale = 1 << 24;
    auto down = [&](double v) { return mpq_class(mpz_class(std::floor((v - pad) * scale)), mpz_class(1 << 24)); };
    auto up = [&](double v) { return mpq_class(mpz_class(std::ceil((v + pad) * scale)), mpz_class(1 << 24)); };
    Box b{down(x0), up(x1), down(y0 / kSqrt3), up(y1 / kSqrt3)};
    b.x0.canonicalize();
    b.x1.canonicalize();
    b.y0.canonicalize();
    b.y1.canonicalize();
    return b;
}

// ---------------------------------------------------------------- catalog

namespace {

FieldElement fe(long xn, long xd, long yn, long yd) { return FieldElement(mpq_class(xn, xd), mpq_class(yn, yd)); }

std::vector<Primitive> hexagon() {
    using P = Primitive;
    return {P::line(0, 1, mpq_class(1, 2), Rel::Lt),  P::line(0, 1, mpq_class(-1, 2), Rel::Gt),
            P::line(1, 1, 1, Rel::Lt),                P::line(1, 1, -1, Rel::Gt),
            P::line(1, -1, 1, Rel::Lt),               P::line(1, -1, -1, Rel::Gt)};
}

std::vector<Primitive> with_hexagon(std::vector<Primitive> v) {
    auto h = hexagon();
    v.insert(v.end(), h.begin(), h.end());
    return v;
}

std::vector<Primitive> rotate_all(const std::vector<Primitive>& v, int k) {
    std::vector<Primitive> out;
    for (const auto& p : v) out.push_back(p.rotated(k));
    return out;
}

// open segment p -> q; the carrier line with equality plus two strict bounds
Region segment(const std::string& name, const FieldElement& p, const FieldElement& q) {
    FieldElement d = q - p;
    // normal (u, v) = (d.y, -d.x) in (x, y) coordinates
    mpq_class u = d.y, v = -d.x;
    mpq_class w = u * p.x + v * p.y;
    // parameter s = d.x x + d.y y, strictly between its values at p and q
    mpq_class sp = d.x * p.x + d.y * p.y, sq = d.x * q.x + d.y * q.y;
    using P = Primitive;
    return make_region(name, {P::line(u, v, w, Rel::Eq), P::line(d.x, d.y, sp, Rel::Gt), P::line(d.x, d.y, sq, Rel::Lt)});
}

Catalog build_catalog() {
    using P = Primitive;
    Catalog c;
    c.U0 = make_region("U0", hexagon());
    const mpq_class third(1, 3), quarter(1, 4);
    const FieldElement eta(EisensteinInt::eta());

    // U_{k,1}
    std::array<std::vector<Primitive>, 5> ub;
    ub[0] = {P::circle(fe(-1, 1, -1, 3), third, Rel::Gt)};
    ub[1] = {P::circle(fe(-1, 2, -1, 6), third, Rel::Gt)};
    ub[2] = {P::line(-1, 1, 0, Rel::Gt)};  // y > x
    ub[3] = {ub[0][0], P::line(-1, 1, 0, Rel::Gt)};
    ub[4] = {ub[0][0].rotated(1), P::line(-1, 1, 0, Rel::Lt)};
    for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 6; ++l)
            c.Ucell[k][l] = make_region("U_" + std::to_string(k + 1) + "," + std::to_string(l + 1),
                                        with_hexagon(rotate_all(ub[k], l)));

    // V_{k,1}; disks a, b, c meet at eta/3
    const P a_in = P::circle(fe(1, 2, -1, 6), third, Rel::Lt), a_out = P::circle(fe(1, 2, -1, 6), third, Rel::Gt);
    const P b_in = P::circle(fe(0, 1, 1, 3), third, Rel::Lt), b_out = P::circle(fe(0, 1, 1, 3), third, Rel::Gt);
    const P c_in = P::circle(fe(1, 1, 1, 3), third, Rel::Lt), c_out = P::circle(fe(1, 1, 1, 3), third, Rel::Gt);
    const P x_pos = P::line(1, 0, 0, Rel::Gt), y_pos = P::line(0, 1, 0, Rel::Gt);
    const P below_diag = P::line(-1, 1, 0, Rel::Lt);  // y < x
    std::array<std::vector<Primitive>, 6> vb = {
        std::vector<Primitive>{a_in, b_in},
        std::vector<Primitive>{c_out, b_out, x_pos, y_pos},
        std::vector<Primitive>{c_out, a_out, y_pos, below_diag},
        std::vector<Primitive>{a_in, c_in},
        std::vector<Primitive>{c_in, b_in},
        std::vector<Primitive>{a_out, b_out, x_pos, y_pos},
    };
    for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l)
            c.V[k][l] = make_region("V_" + std::to_string(k + 1) + "," + std::to_string(l + 1),
                                    with_hexagon(rotate_all(vb[k], l)));

    // V*_{0,k,1}
    const P unit = P::circle(FieldElement(0), 1, Rel::Gt);
    const P Pc = P::circle(fe(0, 1, 1, 2), quarter, Rel::Gt);   // |w - sqrt(-3)/2| > 1/2
    const P Qc = P::circle(fe(3, 4, 1, 4), quarter, Rel::Gt);   // |w - eta/2| > 1/2
    const P Rc = P::circle(fe(3, 4, -1, 4), quarter, Rel::Gt);  // |w - conj(eta)/2| > 1/2
    const P Dc = P::circle(eta, 1, Rel::Gt);                    // |w - eta| > 1
    std::array<std::vector<Primitive>, 6> sb = {
        std::vector<Primitive>{unit, Pc, Qc, Rc}, std::vector<Primitive>{unit, Qc, Rc},
        std::vector<Primitive>{unit, Pc, Qc},     std::vector<Primitive>{unit, Dc, Rc},
        std::vector<Primitive>{unit, Dc, Pc},     std::vector<Primitive>{unit, Dc},
    };
    for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l)
            c.Vstar[k][l] = make_region("V*_" + std::to_string(k + 1) + "," + std::to_string(l + 1),
                                        rotate_all(sb[k], l));

    // L_1 .. L_12
    const FieldElement z(fe(1, 2, 1, 2)), mz(fe(-1, 2, -1, 2)), zb(fe(1, 2, -1, 2)), mzb(fe(-1, 2, 1, 2));
    const FieldElement one(1), mone(-1);
    c.L[0] = segment("L1", z, mzb);
    c.L[1] = segment("L2", mz, mone);
    c.L[2] = segment("L3", one, zb);
    c.L[3] = segment("L4", z, mz);
    c.L[4] = segment("L5", mone, one);
    c.L[5] = segment("L6", zb, mzb);
    for (int j = 0; j < 6; ++j) {
        int k = 2 + 2 * (j % 3);  // eta_2, eta_4, eta_6
        mpq_class s = j < 3 ? mpq_class(2, 3) : mpq_class(1, 3);
        FieldElement ctr = FieldElement(EisensteinInt::eta_k(k)) * FieldElement(s, 0);
        c.L[6 + j] = make_region("L" + std::to_string(7 + j), with_hexagon({P::circle(ctr, third, Rel::Eq)}));
    }

    // S-sets along the special orbits
    const mpq_class half(1, 2);
    c.S_minus_zeta[0] = make_region("S_-zeta,0", {P::line(0, 1, -half, Rel::Eq), P::line(1, 0, -half, Rel::Lt)});
    c.S_minus_zeta[0].plus_infinity = true;
    c.S_minus_zeta[1] = make_region("S_-zeta,1", {P::circle(fe(0, 1, -2, 3), third, Rel::Eq),
                                                  P::line(0, 1, -half, Rel::Lt), P::line(1, 0, 0, Rel::Le)});
    c.S_minus_zeta[2] = make_region("S_-zeta,2", {P::circle(fe(0, 1, -1, 3), third, Rel::Eq), P::line(0, 1, -half, Rel::Lt),
                                                  P::line(1, 0, 0, Rel::Le), unit});
    c.S_minus_zeta[3] = make_region("S_-zeta,3", {P::line(0, 1, 0, Rel::Eq), P::line(1, 0, 1, Rel::Gt)});
    c.S_zeta_bar[0] = make_region("S_zetabar,0", {P::line(0, 1, -half, Rel::Eq), P::line(1, 0, half, Rel::Gt)});
    c.S_zeta_bar[0].plus_infinity = true;
    c.S_zeta_bar[1] = make_region("S_zetabar,1", {P::circle(fe(0, 1, -2, 3), third, Rel::Eq),
                                                  P::line(0, 1, -half, Rel::Lt), P::line(1, 0, 0, Rel::Ge)});
    c.S_zeta_bar[2] = make_region("S_zetabar,2", {P::circle(fe(0, 1, -1, 3), third, Rel::Eq),
                                                  P::line(0, 1, -half, Rel::Lt), P::line(1, 0, 0, Rel::Ge)});
    c.S_zeta_bar[3] = make_region("S_zetabar,3", {P::line(0, 1, 0, Rel::Eq), P::line(1, 0, -1, Rel::Lt)});
    return c;
}

}  // namespace

const Catalog& catalog() {
    static const Catalog c = build_catalog();
    return c;
}

CellResult Catalog::cell_of(const FieldElement& z) const {
    CellResult r;
    if (!in_U(z)) {
        r.status = CellStatus::NotInU;
        return r;
    }
    int hits = 0;
    for (int k = 1; k <= 6; ++k) {
        for (int l = 1; l <= 6; ++l) {
            if (Vc(k, l).contains(z)) {
                ++hits;
                r.cell = {k, l};
            }
        }
    }
    if (hits != 1) r.status = CellStatus::BoundaryPoint;
    return r;
}

std::optional<CellIndex> Catalog::cell_of_float(Complex z, double tol) const {
    if (in_U_float(z, tol) != Membership::Inside) return std::nullopt;
    std::optional<CellIndex> found;
    for (int k = 1; k <= 6; ++k) {
        for (int l = 1; l <= 6; ++l) {
            Membership m = Vc(k, l).contains_float(z, tol);
            if (m == Membership::Boundary) return std::nullopt;
            if (m == Membership::Inside) {
                if (found) return std::nullopt;
                found = CellIndex{k, l};
            }
        }
    }
    return found;
}

// ---------------------------------------------------------------- float geometry

Complex BoundaryPiece::at(double t) const {
    if (circle) return center + radius * Complex(std::cos(t), std::sin(t));
    return origin + t * dir;
}

Complex BoundaryPiece::tangent(double t) const {
    if (circle) return radius * Complex(-std::sin(t), std::cos(t));
    return dir;
}

namespace {

struct Curve {
    bool circle;
    Complex center;
    double radius;
    Complex origin, dir;
};

Curve curve_of(const Primitive& p) {
    Complex Bc(p.fbx, kSqrt3 * p.fby);
    Curve c{};
    if (p.is_circle()) {
        c.circle = true;
        c.center = -Bc / p.fa;
        double r2 = std::norm(Bc) / (p.fa * p.fa) - p.fc / p.fa;
        c.radius = std::sqrt(std::max(r2, 0.0));
    } else {
        c.circle = false;
        double nb = std::abs(Bc);
        c.origin = -p.fc * Bc / (2 * nb * nb);
        c.dir = Complex(0, 1) * Bc / nb;
    }
    return c;
}

double param_of(const Curve& c, Complex p) {
    if (c.circle) {
        double th = std::arg(p - c.center);
        return th < 0 ? th + 2 * M_PI : th;
    }
    return std::real(std::conj(c.dir) * (p - c.origin));
}

std::vector<Complex> intersections(const Curve& a, const Curve& b) {
    std::vector<Complex> out;
    if (a.circle && b.circle) {
        Complex d = b.center - a.center;
        double dist = std::abs(d);
        if (dist < 1e-15 || dist > a.radius + b.radius || dist < std::abs(a.radius - b.radius)) return out;
        double x = (a.radius * a.radius - b.radius * b.radius + dist * dist) / (2 * dist);
        double h = std::sqrt(std::max(a.radius * a.radius - x * x, 0.0));
        Complex u = d / dist;
        out.push_back(a.center + x * u + h * Complex(0, 1) * u);
        if (h > 0) out.push_back(a.center + x * u - h * Complex(0, 1) * u);
        return out;
    }
    if (!a.circle && !b.circle) {
        double den = std::imag(std::conj(a.dir) * b.dir);
        if (std::abs(den) < 1e-15) return out;
        double t = std::imag(std::conj(b.origin - a.origin) * b.dir) / den;
        out.push_back(a.origin + t * a.dir);
        return out;
    }
    const Curve& c = a.circle ? a : b;
    const Curve& l = a.circle ? b : a;
    Complex oc = l.origin - c.center;
    double bq = std::real(std::conj(l.dir) * oc);
    double cq = std::norm(oc) - c.radius * c.radius;
    double disc = bq * bq - cq;
    if (disc < 0) return out;
    double s = std::sqrt(disc);
    out.push_back(l.origin + (-bq + s) * l.dir);
    if (s > 0) out.push_back(l.origin + (-bq - s) * l.dir);
    return out;
}

}  // namespace

std::vector<BoundaryPiece> boundary_pieces(const Region& r, double line_extent) {
    std::vector<BoundaryPiece> out;
    for (const auto& term : r.terms) {
        bool has_eq = std::any_of(term.begin(), term.end(), [](const Primitive& p) { return p.rel == Rel::Eq; });
        std::vector<Curve> curves;
        for (const auto& p : term) curves.push_back(curve_of(p));
        for (size_t i = 0; i < term.size(); ++i) {
            if (has_eq && term[i].rel != Rel::Eq) continue;
            const Curve& ci = curves[i];
            std::vector<double> ts;
            if (ci.circle) {
                ts = {0.0, 2 * M_PI};
            } else {
                ts = {-line_extent, line_extent};
            }
            for (size_t j = 0; j < term.size(); ++j) {
                if (j == i) continue;
                for (Complex p : intersections(ci, curves[j])) {
                    double t = param_of(ci, p);
                    if (!ci.circle && std::abs(t) >= line_extent) continue;
                    ts.push_back(t);
                }
            }
            std::sort(ts.begin(), ts.end());
            for (size_t s = 0; s + 1 < ts.size(); ++s) {
                double t0 = ts[s], t1 = ts[s + 1];
                if (t1 - t0 < 1e-12) continue;
                BoundaryPiece bp;
                bp.circle = ci.circle;
                bp.center = ci.center;
                bp.radius = ci.radius;
                bp.origin = ci.origin;
                bp.dir = ci.dir;
                bp.t0 = t0;
                bp.t1 = t1;
                double tm = 0.5 * (t0 + t1);
                Complex mid = bp.at(tm);
                bool keep = true;
                for (size_t j = 0; j < term.size() && keep; ++j)
                    if (j != i && term[j].holds_float(mid, 1e-13) <= 0) keep = false;
                if (!keep) continue;
                if (term[i].rel != Rel::Eq) {
                    Complex grad = 2.0 * term[i].fa * mid + 2.0 * Complex(term[i].fbx, kSqrt3 * term[i].fby);
                    bool increasing_inside = term[i].rel == Rel::Gt || term[i].rel == Rel::Ge;
                    Complex inward = increasing_inside ? grad : -grad;
                    Complex left = Complex(0, 1) * bp.tangent(tm);
                    bp.orientation = std::real(std::conj(left) * inward) > 0 ? 1 : -1;
                }
                out.push_back(bp);
            }
        }
    }
    return out;
}

double kernel_integral(const std::vector<BoundaryPiece>& boundary, Complex z) {
    using boost::math::quadrature::gauss_kronrod;
    double total = 0;
    for (const auto& bp : boundary) {
        auto g = [&](double t) {
            Complex w = bp.at(t);
            Complex d = w - z;
            Complex F = -1.0 / (d * d * std::conj(d));
            Complex v = F * bp.tangent(t) / Complex(0, 2);
            return v.real();
        };
        total += bp.orientation * gauss_kronrod<double, 31>::integrate(g, bp.t0, bp.t1, 15, 1e-12);
    }
    return total;
}

std::string render_svg(const std::vector<SvgLayer>& layers, double x0, double y0, double x1, double y1,
                       const std::string& title) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    auto pt = [&](Complex p) { return num(p.real()) + " " + num(-p.imag()); };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"" << num(800 * (y1 - y0) / (x1 - x0))
       << "\" viewBox=\"" << num(x0) << " " << num(-y1) << " " << num(x1 - x0) << " " << num(y1 - y0) << "\">\n";
    os << "<title>" << title << "</title>\n";
    for (const auto& layer : layers) {
        os << "<g id=\"" << layer.label << "\" stroke=\"" << layer.style.stroke << "\" stroke-width=\""
           << num(layer.style.width) << "\" fill=\"" << layer.style.fill << "\">\n";
        for (const auto& bp : boundary_pieces(*layer.region, std::max({std::abs(x0), std::abs(x1), std::abs(y0), std::abs(y1)}) * 2)) {
            os << "<path d=\"M " << pt(bp.at(bp.t0));
            if (bp.circle) {
                // split so that no single arc command spans more than pi
                int parts = bp.t1 - bp.t0 > M_PI ? 2 : 1;
                for (int s = 1; s <= parts; ++s) {
                    double t = bp.t0 + (bp.t1 - bp.t0) * s / parts;
                    os << " A " << num(bp.radius) << " " << num(bp.radius) << " 0 0 0 " << pt(bp.at(t));
                }
            } else {
                os << " L " << pt(bp.at(bp.t1));
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cf
