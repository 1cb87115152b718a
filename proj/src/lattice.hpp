// Hexagonal fundamental domain U and rounding to the digit lattice J.
#pragma once

#include "arith.hpp"

namespace cf {

enum class Membership { Inside, Boundary, Outside };

// z = m*eta + n*sqrt(-3)
struct LatticeCoords {
    mpq_class m, n;
};

LatticeCoords lattice_coords(const FieldElement& z);
FieldElement from_lattice(const LatticeCoords& c);
EisensteinInt lattice_point(const mpz_class& m, const mpz_class& n);

bool in_U(const FieldElement& z);
// Open hexagon only.
bool in_U_open(const FieldElement& z);
// Empty when z is in U, else the violated constraint in z = x + y sqrt(-3) coordinates.
std::string U_violation(const FieldElement& z);
Membership in_U_float(Complex z, double tol = 1e-12);

// Unique alpha in J with z - alpha in U. Throws Error(Internal) if the
// 9-candidate search finds zero or several hits.
EisensteinInt floor_J(const FieldElement& z);

struct FloatDigit {
    long m = 0, n = 0;  // lattice coordinates
    Complex value;
    bool boundary = false;  // some candidate fell in the tolerance band
    EisensteinInt eint() const { return lattice_point(m, n); }
};
FloatDigit floor_J_float(Complex z, double tol = 1e-12);

}  // namespace cf
