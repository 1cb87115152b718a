// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--only N[,N...]] [--expect-fail N[,N...]]
//
// Exit status is 0 when every selected criterion passes, except those listed
// with --expect-fail, which must fail (an unexpected pass is an error).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "ergodic.hpp"
#include "report.hpp"

using namespace cf;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
    return out;
}

Outcome tiling() {
    const uint64_t N = 100000;
    Stream s = Stream::derive(42, 1);
    uint64_t bad = 0;
    for (uint64_t i = 0; i < N; ++i) {
        // mix of coarse denominators (which land on edges and corners) and fine ones
        unsigned bits = i % 5 == 0 ? 2 : 24;
        FieldElement z(s.rational(-40, 40, bits + 6), s.rational(-40, 40, bits + 6));
        LatticeCoords c = lattice_coords(z);
        long m0 = std::lround(c.m.get_d()), n0 = std::lround(c.n.get_d());
        int hits = 0;
        EisensteinInt found;
        for (long m = m0 - 2; m <= m0 + 2; ++m)
            for (long n = n0 - 2; n <= n0 + 2; ++n) {
                EisensteinInt a = lattice_point(m, n);
                if (in_U(z - FieldElement(a))) ++hits, found = a;
            }
        if (hits != 1 || floor_J(z) != found) ++bad;
    }
    return {bad == 0, fmt("%.0f points, %.0f exceptions", double(N), double(bad))};
}

// corpus shared by criteria 2 and 3
std::vector<FieldElement> expansion_corpus() {
    Stream s = Stream::derive(42, 2);
    std::vector<FieldElement> zs;
    while (zs.size() < 1000) zs.push_back(sample_U(s, 192));
    return zs;
}

Outcome determinant(const std::vector<FieldElement>& zs) {
    uint64_t checked = 0, bad = 0, short_ = 0;
    std::vector<uint64_t> fails(zs.size(), 0), counts(zs.size(), 0), shorts(zs.size(), 0);
    parallel_for(zs.size(), [&](size_t i) {
        Expansion e = expand(zs[i], 50);
        if (e.digits.size() < 50) shorts[i] = 1;
        auto conv = convergents(e.digits);
        for (size_t n = 0; n < conv.size(); ++n) {
            ++counts[i];
            if (conv[n].determinant() != EisensteinInt(n % 2 ? -1 : 1, 0)) ++fails[i];
        }
    });
    for (size_t i = 0; i < zs.size(); ++i) checked += counts[i], bad += fails[i], short_ += shorts[i];
    return {bad == 0 && short_ == 0,
            fmt("%.0f expansions to depth 50, %.0f identities, %.0f violations", double(zs.size()), double(checked),
                double(bad)) +
                (short_ ? fmt(", %.0f expansions shorter than 50", double(short_)) : "")};
}

Outcome reconstruction(const std::vector<FieldElement>& zs) {
    std::vector<uint64_t> fails(zs.size(), 0), counts(zs.size(), 0);
    parallel_for(zs.size(), [&](size_t i) {
        Expansion e = expand(zs[i], 50);
        for (size_t n = 0; n < e.orbit.size(); ++n) {
            std::vector<EisensteinInt> pre(e.digits.begin(), e.digits.begin() + n);
            ++counts[i];
            if (eval_cf(pre, e.orbit[n]) != ProjValue(zs[i])) ++fails[i];
        }
    });
    uint64_t checked = 0, bad = 0;
    for (size_t i = 0; i < zs.size(); ++i) checked += counts[i], bad += fails[i];
    return {bad == 0, fmt("%.0f reconstructions, %.0f mismatches", double(checked), double(bad))};
}

Outcome error_identity() {
    Stream s = Stream::derive(42, 4);
    uint64_t checked = 0, bad = 0;
    for (int i = 0; i < 100; ++i) {
        FieldElement z = sample_U(s, 96);
        for (size_t n = 1; n <= 20; ++n) {
            ErrorProduct p = error_product_check(z, n);
            ++checked;
            if (!(p.lhs == p.rhs && p.signed_identity)) ++bad;
        }
    }
    return {bad == 0, fmt("100 orbits to depth 20, %.0f identities, %.0f violations", double(checked), double(bad))};
}

Outcome sixfold() {
    std::vector<EisensteinInt> six(6, EisensteinInt::sqrt_m3());
    ProjValue v = eval_cf(six, FieldElement(0));
    bool ok = v.has_value() && v->is_zero();
    return {ok, "1/(r + 1/(r + ... )) with six r = sqrt(-3) evaluates to " + (v ? v->str() : std::string("infinity"))};
}

Outcome special() {
    const Catalog& cat = catalog();
    const size_t depth = 60;
    std::string detail;
    bool ok = true;
    for (SpecialPoint p : {SpecialPoint::MinusZeta, SpecialPoint::ZetaBar}) {
        FieldElement z = special_value(p);
        auto conv = convergents(special_digits(p, depth));
        double err = std::sqrt((z - FieldElement(conv[depth].p) / FieldElement(conv[depth].q)).abs_sq().get_d());
        const auto& S = p == SpecialPoint::MinusZeta ? cat.S_minus_zeta : cat.S_zeta_bar;
        size_t outside = S[0].contains_infinity() ? 0 : 1;
        for (size_t k = 1; k <= depth; ++k) {
            FieldElement w = -(FieldElement(conv[k].q) / FieldElement(conv[k].q_prev));
            if (!S[k % 4].contains(w)) ++outside;
        }
        ok = ok && err < 1e-8 && outside == 0;
        detail += std::string(special_name(p)) + fmt(": |error| at digit 60 = %.3g (1/|q_60| = %.3g), S-set misses %.0f; ",
                                                     err, 1 / std::sqrt(FieldElement(conv[depth].q).abs_sq().get_d()),
                                                     double(outside));
    }
    // the zeta-bar digit list: only the displayed period reproduces zeta-bar
    FieldElement zb = special_value(SpecialPoint::ZetaBar);
    bool pinned = eval_cf(zeta_bar_candidate_display(4), zb) == ProjValue(zb) &&
                  eval_cf(zeta_bar_candidate_itemized(4), zb) != ProjValue(zb) &&
                  special_digits(SpecialPoint::ZetaBar, 8) == zeta_bar_candidate_display(8);
    ok = ok && pinned;
    detail += pinned ? "zeta-bar digits pinned to the fixed-point list" : "zeta-bar digit list NOT pinned";
    return {ok, detail};
}

Outcome from_report(const CheckReport& r, const std::string& extra = "") {
    return {r.pass(), fmt("%.0f samples, %.0f failures", double(r.samples), double(r.failure_count)) + extra};
}

Outcome inversions(const CheckReport& r) {
    size_t families = 0, thin = 0;
    for (const auto& s : r.details["subchecks"]) {
        ++families;
        if (s["samples"].get<uint64_t>() < 3) ++thin;
    }
    return {r.pass() && thin == 0 && families >= 7,
            fmt("%.0f instances, %.0f with fewer than 3 points, %.0f failures", double(families), double(thin),
                double(r.failure_count))};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only, expect_fail;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if ((a == "--only" || a == "--expect-fail") && i + 1 < argc) {
            (a == "--only" ? only : expect_fail) = parse_list(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N,..] [--expect-fail N,..]\n");
            return 2;
        }
    }
    auto selected = [&](int n) { return only.empty() || only.count(n); };
    int unexpected = 0;
    auto report = [&](int n, const char* name, const Outcome& o) {
        bool xf = expect_fail.count(n) > 0;
        std::printf("criterion %2d: %s  %s: %s%s\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                    xf ? (o.pass ? "  [expected to fail, but passed]" : "  [expected failure]") : "");
        std::fflush(stdout);
        if (o.pass == xf) ++unexpected;
    };

    if (selected(1)) report(1, "tiling", tiling());
    if (selected(2) || selected(3)) {
        auto zs = expansion_corpus();
        if (selected(2)) report(2, "determinant identity", determinant(zs));
        if (selected(3)) report(3, "reconstruction", reconstruction(zs));
    }
    if (selected(4)) report(4, "error identity", error_identity());
    if (selected(5)) report(5, "six-fold sqrt(-3) expansion", sixfold());
    if (selected(6)) report(6, "special expansions", special());

    VerifyConfig vc;  // seed 42, 10^4 samples
    std::vector<CheckReport> first;
    if (selected(7) || selected(8) || selected(9) || selected(10) || selected(13)) first = run_checks("all", vc);
    auto by_name = [&](const std::string& n) -> const CheckReport& {
        for (const auto& r : first)
            if (r.name == n) return r;
        throw Error(ErrorCode::Internal, "missing report " + n);
    };
    if (selected(7)) report(7, "inversion identities", inversions(by_name("inversions")));
    if (selected(8)) {
        const CheckReport& r = by_name("frs");
        report(8, "finite range structure",
               from_report(r, fmt(", coverage grid %.0f", r.details["coverage_grid"].get<double>())));
    }
    if (selected(9)) {
        const CheckReport& d = by_name("dual");
        const CheckReport& o = by_name("orbit");
        Outcome od = from_report(d), oo = from_report(o);
        report(9, "dual system", {od.pass && oo.pass, "inclusions: " + od.detail + "; orbits: " + oo.detail});
    }
    if (selected(10)) report(10, "monotonicity", from_report(by_name("monotonic")));

    if (selected(11) || selected(12)) {
        auto t0 = std::chrono::steady_clock::now();
        ErgodicReport e = run_ergodic(ErgodicConfig{});
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (selected(11)) {
            double lb = e.birkhoff.levy.value, li = e.quad.levy.value;
            bool ok = e.levy_agree && e.length_stable && secs <= 300;
            report(11, "Levy constant",
                   {ok, fmt("Birkhoff %.5f +- %.5f, ", lb, e.birkhoff.levy.stderr_) +
                            fmt("integral %.5f +- %.5f, relative gap %.4f, ", li, e.quad.levy.stderr_, std::abs(lb - li) / lb) +
                            fmt("doubled length %.5f, %.0f s", e.birkhoff_doubled.levy.value, secs)});
        }
        if (selected(12)) {
            bool ok = e.invariance.pass() && e.h_normalized;
            report(12, "invariant density",
                   {ok, fmt("occupation vs cell masses: %.0f cells out of tolerance; ", double(e.invariance.failure_count)) +
                            fmt("int h = %.4f +- %.4f", e.integral_h.value, e.integral_h.stderr_)});
        }
    }

    if (selected(13)) {
        std::string a = verify_json(first, vc, false).dump();
        std::string b = verify_json(run_checks("all", vc), vc, false).dump();
        report(13, "determinism", {a == b, fmt("two runs of verify all --seed 42: %.0f and %.0f bytes", double(a.size()),
                                               double(b.size())) + (a == b ? ", identical" : ", DIFFERENT")});
    }
    return unexpected ? 1 : 0;
}
