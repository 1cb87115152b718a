#include "arith.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace cf {

EisensteinInt EisensteinInt::eta_k(int k) {
    EisensteinInt e = eta();
    int steps = ((k - 1) % 6 + 6) % 6;
    for (int i = 0; i < steps; ++i) e = zeta() * e;
    return e;
}

std::string EisensteinInt::str() const {
    return "(" + a.get_str() + "," + b.get_str() + ")";
}

bool in_J(const EisensteinInt& e) {
    mpz_class d = e.a - e.b;
    return mpz_divisible_ui_p(d.get_mpz_t(), 3) != 0;
}

bool in_J_bruteforce(const EisensteinInt& e) {
    EisensteinInt t = e * EisensteinInt::eta().conj();
    return mpz_divisible_ui_p(t.a.get_mpz_t(), 3) != 0 && mpz_divisible_ui_p(t.b.get_mpz_t(), 3) != 0;
}

FieldElement::FieldElement(const EisensteinInt& e) {
    mpq_class half(e.b, 2);
    half.canonicalize();
    x = mpq_class(e.a) + half;
    y = half;
}

std::optional<FieldElement> FieldElement::try_inv() const {
    if (is_zero()) return std::nullopt;
    mpq_class n = abs_sq();
    return FieldElement(x / n, -y / n);
}

FieldElement FieldElement::inv() const {
    auto r = try_inv();
    if (!r) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return *r;
}

std::optional<FieldElement> q3_div(const FieldElement& l, const FieldElement& r) {
    auto ri = r.try_inv();
    if (!ri) return std::nullopt;
    return l * *ri;
}

FieldElement FieldElement::rotate(int k) const {
    int steps = ((k % 6) + 6) % 6;
    FieldElement z = *this;
    for (int i = 0; i < steps; ++i) {
        mpq_class nx = (z.x - 3 * z.y) / 2;
        mpq_class ny = (z.x + z.y) / 2;
        z = FieldElement(nx, ny);
    }
    return z;
}

Complex FieldElement::approx() const { return {x.get_d(), y.get_d() * kSqrt3}; }

std::string FieldElement::str() const {
    std::string s = x.get_str();
    if (sgn(y) >= 0) s += "+";
    s += y.get_str();
    s += "r";
    return s;
}

FieldElement embed(const EisensteinInt& e) { return FieldElement(e); }
Complex approx(const FieldElement& f) { return f.approx(); }
Complex approx(const EisensteinInt& e) {
    return {e.a.get_d() + e.b.get_d() / 2.0, e.b.get_d() * kSqrt3 / 2.0};
}

namespace {

mpq_class parse_rational(const std::string& tok, const std::string& whole) {
    auto bad = [&] { return Error(ErrorCode::Parse, "cannot parse field element '" + whole + "'"); };
    if (tok.empty()) throw bad();
    size_t slash = tok.find('/');
    std::string num = tok.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
    auto digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    if (!digits(num) || !digits(den)) throw bad();
    mpz_class n(num), d(den);
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + whole + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace

FieldElement parse_field(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error(ErrorCode::Parse, "empty field element");

    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 1; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == '+' || s[i] == '-') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    if (terms.size() > 2) throw Error(ErrorCode::Parse, "too many terms in '" + text + "'");

    bool have_x = false, have_y = false;
    mpq_class x = 0, y = 0;
    for (std::string t : terms) {
        int sign = 1;
        if (t[0] == '+' || t[0] == '-') {
            if (t[0] == '-') sign = -1;
            t = t.substr(1);
        }
        bool imag = !t.empty() && t.back() == 'r';
        if (imag) t.pop_back();
        mpq_class v = (imag && t.empty()) ? mpq_class(1) : parse_rational(t, text);
        if (sign < 0) v = -v;
        if (imag) {
            if (have_y) throw Error(ErrorCode::Parse, "duplicate sqrt(-3) term in '" + text + "'");
            have_y = true;
            y = v;
        } else {
            if (have_x) throw Error(ErrorCode::Parse, "duplicate rational term in '" + text + "'");
            have_x = true;
            x = v;
        }
    }
    return FieldElement(x, y);
}

std::optional<EisensteinInt> to_eisenstein(const FieldElement& f) {
    // x = a + b/2, y = b/2
    mpq_class b2 = 2 * f.y;
    mpq_class a = f.x - f.y;
    if (b2.get_den() != 1 || a.get_den() != 1) return std::nullopt;
    return EisensteinInt(a.get_num(), b2.get_num());
}

}  // namespace cf
