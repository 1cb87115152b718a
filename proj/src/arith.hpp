// Exact arithmetic in Z[zeta] and Q(sqrt(-3)).
#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace cf {

enum class ErrorCode {
    Parse = 1,
    Domain,
    DivisionByZero,
    Config,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

using Complex = std::complex<double>;

inline constexpr double kSqrt3 = 1.7320508075688772935;

// a + b*zeta with zeta = (1 + sqrt(-3))/2.
struct EisensteinInt {
    mpz_class a, b;

    EisensteinInt() = default;
    EisensteinInt(long a_, long b_) : a(a_), b(b_) {}
    EisensteinInt(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    static EisensteinInt zeta() { return {0, 1}; }
    static EisensteinInt eta() { return {1, 1}; }
    static EisensteinInt sqrt_m3() { return {-1, 2}; }
    // eta_k = zeta^(k-1) eta, k taken mod 6.
    static EisensteinInt eta_k(int k);

    EisensteinInt conj() const { return {a + b, -b}; }
    mpz_class norm() const { return a * a + a * b + b * b; }
    bool is_zero() const { return a == 0 && b == 0; }

    EisensteinInt operator-() const { return {-a, -b}; }
    friend EisensteinInt operator+(const EisensteinInt& l, const EisensteinInt& r) {
        return {l.a + r.a, l.b + r.b};
    }
    friend EisensteinInt operator-(const EisensteinInt& l, const EisensteinInt& r) {
        return {l.a - r.a, l.b - r.b};
    }
    // zeta^2 = zeta - 1
    friend EisensteinInt operator*(const EisensteinInt& l, const EisensteinInt& r) {
        mpz_class bb = l.b * r.b;
        return {l.a * r.a - bb, l.a * r.b + l.b * r.a + bb};
    }
    friend bool operator==(const EisensteinInt& l, const EisensteinInt& r) {
        return l.a == r.a && l.b == r.b;
    }
    friend bool operator!=(const EisensteinInt& l, const EisensteinInt& r) { return !(l == r); }

    std::string str() const;
};

// Divisibility by eta, i.e. membership in the digit ideal J.
bool in_J(const EisensteinInt& e);
// Reference test: (a + b zeta) * conj(eta) / 3 has integral coordinates.
bool in_J_bruteforce(const EisensteinInt& e);

// x + y*sqrt(-3), x and y canonical rationals.
struct FieldElement {
    mpq_class x, y;

    FieldElement() = default;
    FieldElement(long x_) : x(x_), y(0) {}
    FieldElement(mpq_class x_, mpq_class y_) : x(std::move(x_)), y(std::move(y_)) {
        x.canonicalize();
        y.canonicalize();
    }
    FieldElement(const EisensteinInt& e);

    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
    FieldElement conj() const { return {x, -y}; }
    mpq_class abs_sq() const { return x * x + 3 * y * y; }

    std::optional<FieldElement> try_inv() const;
    // Throws Error(DivisionByZero) on zero.
    FieldElement inv() const;

    FieldElement operator-() const { return {-x, -y}; }
    friend FieldElement operator+(const FieldElement& l, const FieldElement& r) {
        return {l.x + r.x, l.y + r.y};
    }
    friend FieldElement operator-(const FieldElement& l, const FieldElement& r) {
        return {l.x - r.x, l.y - r.y};
    }
    friend FieldElement operator*(const FieldElement& l, const FieldElement& r) {
        return {l.x * r.x - 3 * l.y * r.y, l.x * r.y + l.y * r.x};
    }
    friend FieldElement operator/(const FieldElement& l, const FieldElement& r) { return l * r.inv(); }
    friend bool operator==(const FieldElement& l, const FieldElement& r) {
        return l.x == r.x && l.y == r.y;
    }
    friend bool operator!=(const FieldElement& l, const FieldElement& r) { return !(l == r); }

    // multiplication by zeta^k
    FieldElement rotate(int k) const;

    Complex approx() const;
    // Canonical `X+Yr` text.
    std::string str() const;
};

std::optional<FieldElement> q3_div(const FieldElement& l, const FieldElement& r);

FieldElement embed(const EisensteinInt& e);
Complex approx(const FieldElement& f);
Complex approx(const EisensteinInt& e);

// Parses `X+Yr`, `X`, `Yr`, `X-Yr` with X, Y integers or p/q.
FieldElement parse_field(const std::string& text);

// Back-conversion when the element lies in Z[zeta]; nullopt otherwise.
std::optional<EisensteinInt> to_eisenstein(const FieldElement& f);

}  // namespace cf
