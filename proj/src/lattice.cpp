#include "lattice.hpp"

#include <cmath>
#include <vector>

namespace cf {

namespace {

mpz_class round_q(const mpq_class& q) {
    mpq_class h = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return r;
}

const mpq_class kHalf(1, 2);

}  // namespace

LatticeCoords lattice_coords(const FieldElement& z) {
    mpq_class m = 2 * z.x / 3;
    mpq_class n = z.y - z.x / 3;
    m.canonicalize();
    n.canonicalize();
    return {m, n};
}

FieldElement from_lattice(const LatticeCoords& c) {
    // eta = 3/2 + 1/2 r, sqrt(-3) = r
    return FieldElement(3 * c.m / 2, c.m / 2 + c.n);
}

EisensteinInt lattice_point(const mpz_class& m, const mpz_class& n) {
    // eta = (1,1), sqrt(-3) = (-1,2)
    return EisensteinInt(m - n, m + 2 * n);
}

bool in_U_open(const FieldElement& z) {
    const mpq_class& x = z.x;
    const mpq_class& y = z.y;
    return abs(y) < kHalf && abs(x + y) < 1 && abs(x - y) < 1;
}

bool in_U(const FieldElement& z) {
    if (in_U_open(z)) return true;
    const mpq_class& x = z.x;
    const mpq_class& y = z.y;
    if (y == kHalf && -kHalf < x && x < kHalf) return true;
    if (x - y == 1 && -kHalf <= y && sgn(y) < 0) return true;
    if (x + y == -1 && -kHalf <= y && sgn(y) < 0) return true;
    return false;
}

std::string U_violation(const FieldElement& z) {
    if (in_U(z)) return "";
    const mpq_class& x = z.x;
    const mpq_class& y = z.y;
    mpq_class s = x + y, d = x - y;
    std::string at = " (x = " + x.get_str() + ", y = " + y.get_str() + ")";
    if (abs(y) > kHalf) return "|y| <= 1/2 violated" + at;
    if (abs(s) > 1) return "|x + y| <= 1 violated" + at;
    if (abs(d) > 1) return "|x - y| <= 1 violated" + at;
    return "point on an excluded edge or vertex of the hexagon" + at;
}

Membership in_U_float(Complex z, double tol) {
    double x = z.real();
    double y = z.imag() / kSqrt3;
    double m[3] = {0.5 - std::abs(y), 1.0 - std::abs(x + y), 1.0 - std::abs(x - y)};
    bool inside = true;
    for (double v : m) {
        if (v < -tol) return Membership::Outside;
        if (v <= tol) inside = false;
    }
    return inside ? Membership::Inside : Membership::Boundary;
}

EisensteinInt floor_J(const FieldElement& z) {
    LatticeCoords c = lattice_coords(z);
    mpz_class m0 = round_q(c.m), n0 = round_q(c.n);
    std::vector<EisensteinInt> hits;
    for (int dm = -1; dm <= 1; ++dm) {
        for (int dn = -1; dn <= 1; ++dn) {
            EisensteinInt a = lattice_point(m0 + dm, n0 + dn);
            if (in_U(z - FieldElement(a))) hits.push_back(a);
        }
    }
    if (hits.size() != 1) {
        throw Error(ErrorCode::Internal, "floor_J: " + std::to_string(hits.size()) +
                                             " candidates for z = " + z.str());
    }
    return hits.front();
}

FloatDigit floor_J_float(Complex z, double tol) {
    static const Complex eta(1.5, kSqrt3 / 2);
    static const Complex r3(0.0, kSqrt3);
    double x = z.real(), y = z.imag() / kSqrt3;
    long m0 = std::lround(2 * x / 3);
    long n0 = std::lround(y - x / 3);
    FloatDigit out;
    int found = 0;
    for (int dm = -1; dm <= 1; ++dm) {
        for (int dn = -1; dn <= 1; ++dn) {
            Complex a = double(m0 + dm) * eta + double(n0 + dn) * r3;
            Membership s = in_U_float(z - a, tol);
            if (s == Membership::Boundary) out.boundary = true;
            if (s == Membership::Inside) {
                ++found;
                out.m = m0 + dm;
                out.n = n0 + dn;
                out.value = a;
            }
        }
    }
    if (found != 1) out.boundary = true;
    return out;
}

}  // namespace cf
