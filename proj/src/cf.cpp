#include "cf.hpp"

namespace cf {

namespace {

const FieldElement kMinusZeta(mpq_class(-1, 2), mpq_class(-1, 2));
const FieldElement kZetaBar(mpq_class(1, 2), mpq_class(-1, 2));

std::vector<EisensteinInt> cycle(const EisensteinInt (&pat)[4], size_t count) {
    std::vector<EisensteinInt> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(pat[i % 4]);
    return out;
}

const EisensteinInt kR3 = EisensteinInt::sqrt_m3();
const EisensteinInt kEta = EisensteinInt::eta();
const EisensteinInt kEtaBar = EisensteinInt::eta().conj();

}  // namespace

FieldElement special_value(SpecialPoint p) {
    return p == SpecialPoint::MinusZeta ? kMinusZeta : kZetaBar;
}

std::optional<SpecialPoint> special_of(const FieldElement& z) {
    if (z == kMinusZeta) return SpecialPoint::MinusZeta;
    if (z == kZetaBar) return SpecialPoint::ZetaBar;
    return std::nullopt;
}

const char* special_name(SpecialPoint p) {
    return p == SpecialPoint::MinusZeta ? "-zeta" : "zeta_bar";
}

const char* terminal_name(Terminal t) {
    switch (t) {
        case Terminal::TerminatedAtZero: return "TerminatedAtZero";
        case Terminal::Truncated: return "Truncated";
        case Terminal::SpecialPeriodic: return "SpecialPeriodic";
    }
    return "?";
}

Step step_T(const FieldElement& z) {
    Step s;
    if (z.is_zero()) {
        s.status = StepStatus::ZeroOrbit;
        return s;
    }
    if (!in_U(z)) {
        s.status = StepStatus::DomainError;
        return s;
    }
    if (special_of(z)) {
        s.status = StepStatus::SpecialPoint;
        return s;
    }
    FieldElement w = z.inv();
    s.digit = floor_J(w);
    s.next = w - FieldElement(s.digit);
    return s;
}

std::vector<EisensteinInt> zeta_bar_candidate_display(size_t count) {
    const EisensteinInt pat[4] = {kR3, kR3, kEta, -kEtaBar};
    return cycle(pat, count);
}

std::vector<EisensteinInt> zeta_bar_candidate_itemized(size_t count) {
    const EisensteinInt pat[4] = {kR3, kR3, -kEta, kEtaBar};
    return cycle(pat, count);
}

std::vector<EisensteinInt> special_digits(SpecialPoint p, size_t count) {
    if (p == SpecialPoint::MinusZeta) {
        const EisensteinInt pat[4] = {kR3, kR3, -kEtaBar, kEta};
        return cycle(pat, count);
    }
    // The displayed expansion converges to zeta-bar; the itemized list does not.
    return zeta_bar_candidate_display(count);
}

Expansion expand(const FieldElement& z, size_t max_digits) {
    if (!in_U(z)) throw Error(ErrorCode::Domain, "z = " + z.str() + " is not in U: " + U_violation(z));
    Expansion e;
    FieldElement cur = z;
    e.orbit.push_back(cur);
    while (e.digits.size() < max_digits) {
        if (cur.is_zero()) {
            e.terminal = Terminal::TerminatedAtZero;
            return e;
        }
        if (auto sp = special_of(cur)) {
            e.terminal = Terminal::SpecialPeriodic;
            e.point = *sp;
            e.entry_index = e.digits.size();
            auto tail = special_digits(*sp, max_digits - e.digits.size());
            e.digits.insert(e.digits.end(), tail.begin(), tail.end());
            return e;
        }
        Step s = step_T(cur);
        e.digits.push_back(s.digit);
        cur = s.next;
        e.orbit.push_back(cur);
    }
    if (cur.is_zero()) {
        e.terminal = Terminal::TerminatedAtZero;
    } else if (auto sp = special_of(cur)) {
        e.terminal = Terminal::SpecialPeriodic;
        e.point = *sp;
        e.entry_index = e.digits.size();
    } else {
        e.terminal = Terminal::Truncated;
    }
    return e;
}

std::vector<ConvergentPair> convergents(const std::vector<EisensteinInt>& digits) {
    std::vector<ConvergentPair> out;
    out.reserve(digits.size() + 1);
    out.emplace_back();
    for (const auto& b : digits) out.push_back(out.back().next(b));
    return out;
}

ProjValue eval_cf(const std::vector<EisensteinInt>& digits, const ProjValue& tail) {
    ProjValue t = tail;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (!t) {
            t = FieldElement(0);  // 1/(b + inf) = 0
            continue;
        }
        FieldElement s = FieldElement(*it) + *t;
        t = s.try_inv();  // 1/0 = inf
    }
    return t;
}

ErrorProduct error_product_check(const FieldElement& z, size_t n) {
    ErrorProduct r;
    Expansion e = expand(z, n);
    size_t m = e.digits.size();  // < n only when terminated at zero
    r.n = m;
    // tails by z_k = 1/z_{k-1} - b_k; along a special expansion these are the periodic tails
    FieldElement zk = z, prod = z;
    for (size_t k = 1; k <= m; ++k) {
        zk = zk.inv() - FieldElement(e.digits[k - 1]);
        prod = prod * zk;
    }
    ConvergentPair c = convergents(e.digits).back();
    FieldElement p(c.p), q(c.q);
    FieldElement diff = q * z - p;
    FieldElement sign(m % 2 == 0 ? 1 : -1);
    r.signed_identity = diff == sign * prod;
    r.lhs = (z - p / q).abs_sq();
    r.rhs = prod.abs_sq() / q.abs_sq();
    return r;
}

JumpResult jump_map(const FieldElement& z, size_t max_steps) {
    JumpResult r;
    if (!in_U(z)) {
        r.status = StepStatus::DomainError;
        return r;
    }
    FieldElement cur = z;
    for (size_t n = 1; n <= max_steps; ++n) {
        if (cur.is_zero()) {
            r.status = StepStatus::ZeroOrbit;
            r.z_out = z;
            return r;
        }
        Step s = step_T(cur);
        if (s.status != StepStatus::Ok) {
            r.status = s.status;
            r.z_out = z;
            return r;
        }
        cur = s.next;
        if (s.digit.norm() >= 9) {
            r.n_j = n;
            // T_J = T^{N_J + 1}; T(0) = 0
            if (!cur.is_zero()) {
                Step t = step_T(cur);
                if (t.status == StepStatus::SpecialPoint) {
                    r.status = t.status;
                    r.z_out = z;
                    return r;
                }
                cur = t.next;
            }
            r.z_out = cur;
            return r;
        }
    }
    r.z_out = z;
    return r;
}

FieldElement inverse_branch_derivative(const ConvergentPair& c, const FieldElement& z_n) {
    FieldElement d = FieldElement(c.q) + FieldElement(c.q_prev) * z_n;
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse branch denominator vanishes");
    // determinant p_{n-1} q_n - p_n q_{n-1} = (-1)^n
    FieldElement r = (d * d).inv();
    return c.n % 2 ? -r : r;
}

FloatStep step_T_float(Complex z, double tol) {
    FloatStep s;
    if (std::abs(z) <= tol) {
        s.skip = true;
        return s;
    }
    Complex w = 1.0 / z;
    s.digit = floor_J_float(w, tol);
    if (s.digit.boundary) {
        s.skip = true;
        return s;
    }
    s.next = w - s.digit.value;
    return s;
}

}  // namespace cf
