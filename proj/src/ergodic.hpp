// Natural extension simulation, invariant density and the Levy constant.
#pragma once

#include <array>
#include <optional>

#include "regions.hpp"
#include "verifier.hpp"

namespace cf {

struct Estimate {
    double value = 0;
    double stderr_ = 0;
};

struct NatExtState {
    Complex z;
    std::optional<Complex> w;  // nullopt is the point at infinity
};

// (z, w) -> (1/z - b, 1/w - b); nullopt when z is in the boundary band, zero or special.
std::optional<NatExtState> nat_ext_step(const NatExtState& s, double tol = 1e-12);

// Uniform float point of U away from the boundary band.
Complex random_point_U(Stream& s, double tol = 1e-12);

struct BirkhoffResult {
    Estimate levy;  // mean and stderr across orbits of (1/N) sum log|r_k|
    uint64_t orbits = 0, length = 0;
    uint64_t resampled = 0;  // orbits restarted after a band hit
    double min_abs_r = 0;    // smallest |r_k| seen; > 1 on valid orbits
};
// Throws Error(Config) if length < 1000 or orbits < 2.
BirkhoffResult levy_birkhoff(uint64_t orbits, uint64_t length, uint64_t seed, double tol = 1e-12);

using CellTable = std::array<std::array<Estimate, 6>, 6>;  // [k-1][l-1]

// Importance sampling of int int f / |zu - 1|^4 over z in V_{k,l}, u in 1/V*_{k,l}.
struct QuadratureResult {
    uint64_t samples = 0, hits = 0;
    Estimate total;        // int over U-hat of |z - w|^-4
    Estimate C0;           // 1 / total
    Estimate levy;         // int log|w| d mu-hat
    CellTable mass;        // mu(V_{k,l}) per cell
    CellTable mass_sym;    // averaged over the six rotations of each k
    double min_abs_zu_minus_1 = 0;
};
// Throws Error(Config) if samples < 1000.
QuadratureResult estimate_quadrature(uint64_t samples, uint64_t seed, double tol = 1e-12);

// int_{V*_{cell(z)}} dA(w) / |z - w|^4 by the boundary contour; nullopt in the band.
std::optional<double> kernel_at(Complex z, double tol = 1e-12);
// h = C0 * kernel_at
std::optional<double> density_h(Complex z, double C0, double tol = 1e-12);

// int_U int_{V*_{cell(z)}} dA(w) dA(z) / |z - w|^4 by deterministic cubature of kernel_at
// (rays split at cell boundaries, six-fold symmetry); the error is the quadrature estimate.
Estimate kernel_total(double tol = 1e-12);
// C0 * kernel_total; the error folds in the error of C0.
Estimate integral_h(const Estimate& C0, double tol = 1e-12);

// Occupation frequencies of the 36 cells along float orbits; stderr across orbits.
struct Occupation {
    CellTable freq;
    uint64_t orbits = 0, length = 0, skipped = 0;
};
Occupation cell_occupation(uint64_t orbits, uint64_t length, uint64_t seed, double tol = 1e-12);

// Compares occupation frequencies with the quadrature cell masses.
CheckReport invariance_check(const Occupation& occ, const QuadratureResult& quad);

// (1/n) log|q_n| from exact big integers against the float ratio tracker on the same digits.
struct ExactLevyCheck {
    size_t depth = 0;
    double exact = 0, tracked = 0;
    std::string z;
};
ExactLevyCheck levy_exact_crosscheck(size_t depth, uint64_t seed);

// Density values on a grid x grid lattice of cell centres over the box
// [-1, 1] x [-sqrt3/2, sqrt3/2]; 0 outside U and in the band. Row 0 is the top.
std::vector<std::vector<double>> density_grid(unsigned grid, double C0, double tol = 1e-12);

struct ErgodicConfig {
    uint64_t orbits = 64;
    uint64_t length = 20000;
    uint64_t samples = 1000000;  // quadrature points
    uint64_t seed = 42;
    double tol = 1e-12;  // float boundary band
};

struct ErgodicReport {
    ErgodicConfig config;
    BirkhoffResult birkhoff, birkhoff_doubled;
    QuadratureResult quad;
    Occupation occupation;
    Estimate integral_h;
    ExactLevyCheck exact;
    CheckReport invariance;
    bool levy_agree = false;    // within 2% relative
    bool length_stable = false; // doubling within 3 stderr
    bool h_normalized = false;  // within 1%
};
ErgodicReport run_ergodic(const ErgodicConfig& cfg);

}  // namespace cf
