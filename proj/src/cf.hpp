// The continued fraction map T, expansions, convergents and the jump map.
#pragma once

#include <optional>
#include <vector>

#include "arith.hpp"
#include "lattice.hpp"

namespace cf {

enum class SpecialPoint { MinusZeta, ZetaBar };

FieldElement special_value(SpecialPoint p);
std::optional<SpecialPoint> special_of(const FieldElement& z);
const char* special_name(SpecialPoint p);

enum class StepStatus { Ok, ZeroOrbit, DomainError, SpecialPoint };

struct Step {
    StepStatus status = StepStatus::Ok;
    EisensteinInt digit;
    FieldElement next;
};

Step step_T(const FieldElement& z);

// Period-4 digits of the special points. For zeta-bar this is the sequence
// that the convergence oracle selected; both candidates stay available.
std::vector<EisensteinInt> special_digits(SpecialPoint p, size_t count);
std::vector<EisensteinInt> zeta_bar_candidate_display(size_t count);
std::vector<EisensteinInt> zeta_bar_candidate_itemized(size_t count);

enum class Terminal { TerminatedAtZero, Truncated, SpecialPeriodic };
const char* terminal_name(Terminal t);

struct Expansion {
    std::vector<EisensteinInt> digits;
    Terminal terminal = Terminal::Truncated;
    std::optional<SpecialPoint> point;
    size_t entry_index = 0;
    // z_0 .. z_k for the steps actually taken by T (special tails not included)
    std::vector<FieldElement> orbit;
    bool exact = true;
};

constexpr size_t kDefaultMaxDigits = 256;

// Throws Error(Domain) if z is not in U.
Expansion expand(const FieldElement& z, size_t max_digits = kDefaultMaxDigits);

struct ConvergentPair {
    EisensteinInt p_prev{1, 0}, p{0, 0}, q_prev{0, 0}, q{1, 0};
    size_t n = 0;

    ConvergentPair next(const EisensteinInt& b) const {
        return {p, b * p + p_prev, q, b * q + q_prev, n + 1};
    }
    // p_{n-1} q_n - p_n q_{n-1}
    EisensteinInt determinant() const { return p_prev * q - p * q_prev; }
};

// Index 0 holds the initial state, index n the state after n digits.
std::vector<ConvergentPair> convergents(const std::vector<EisensteinInt>& digits);

// nullopt stands for the point at infinity.
using ProjValue = std::optional<FieldElement>;
ProjValue eval_cf(const std::vector<EisensteinInt>& digits, const ProjValue& tail);

struct ErrorProduct {
    StepStatus status = StepStatus::Ok;
    size_t n = 0;  // depth actually used
    mpq_class lhs, rhs;
    bool signed_identity = false;  // q_n z - p_n == (-1)^n z_0...z_n
    // status is kept for callers; special tails are handled like any other tail
};
ErrorProduct error_product_check(const FieldElement& z, size_t n);

struct JumpResult {
    StepStatus status = StepStatus::Ok;
    std::optional<size_t> n_j;  // nullopt: not found within budget
    FieldElement z_out;
};
JumpResult jump_map(const FieldElement& z, size_t max_steps);

// (-1)^n / (q_n + q_{n-1} z_n)^2, the derivative of z_n -> z. Throws Error(DivisionByZero) on a vanishing denominator.
FieldElement inverse_branch_derivative(const ConvergentPair& c, const FieldElement& z_n);

// Float path: one step of T on a machine complex number.
struct FloatStep {
    bool skip = false;  // boundary band, zero, or special
    FloatDigit digit;
    Complex next;
};
FloatStep step_T_float(Complex z, double tol = 1e-12);

}  // namespace cf
