#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cf {

namespace {

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double conv_error(const FieldElement& z, const ConvergentPair& c) {
    FieldElement d = z - FieldElement(c.p) / FieldElement(c.q);
    return std::sqrt(d.abs_sq().get_d());
}

// integers as JSON numbers while they fit in a long, as strings beyond that
json big(const mpz_class& v) { return v.fits_slong_p() ? json(v.get_si()) : json(v.get_str()); }
json eint(const EisensteinInt& e) { return {{"a", big(e.a)}, {"b", big(e.b)}}; }

json est(const Estimate& e) { return {{"value", e.value}, {"stderr", e.stderr_}}; }

json table(const CellTable& t) {
    json a = json::array();
    for (const auto& row : t) {
        json r = json::array();
        for (const auto& e : row) r.push_back(est(e));
        a.push_back(r);
    }
    return a;
}

}  // namespace

json expansion_json(const FieldElement& z, const Expansion& e) {
    json j = {{"schema", kSchemaVersion}, {"z", z.str()}, {"terminal", terminal_name(e.terminal)}};
    j["special_point"] = e.point ? json(special_name(*e.point)) : json(nullptr);
    if (e.point) j["entry_index"] = e.entry_index;
    json d = json::array();
    for (const auto& b : e.digits) d.push_back(eint(b));
    j["digits"] = d;
    json c = json::array();
    auto conv = convergents(e.digits);
    for (const auto& p : conv)
        c.push_back({{"n", p.n}, {"p", eint(p.p)}, {"q", eint(p.q)}, {"error", conv_error(z, p)}});
    j["convergents"] = c;
    return j;
}

std::string expansion_csv(const FieldElement& z, const Expansion& e) {
    std::ostringstream os;
    os << "n,digit,p,q,error\n";
    auto conv = convergents(e.digits);
    for (const auto& p : conv) {
        os << p.n << "," << (p.n ? "\"" + e.digits[p.n - 1].str() + "\"" : "") << ",\"" << p.p.str() << "\",\"" << p.q.str()
           << "\"," << num12(conv_error(z, p)) << "\n";
    }
    return os.str();
}

json verify_json(const std::vector<CheckReport>& reports, const VerifyConfig& cfg, bool timing) {
    bool pass = true;
    json checks = json::array();
    for (const auto& r : reports) {
        pass = pass && r.pass();
        checks.push_back(r.to_json(timing));
    }
    return {{"schema", kSchemaVersion},
            {"config",
             {{"seed", cfg.seed}, {"samples", cfg.samples}, {"depth", cfg.depth}, {"mono_depth", cfg.mono_depth}, {"grid", cfg.grid}}},
            {"verdict", pass ? "PASS" : "FAIL"},
            {"checks", checks}};
}

json ergodic_json(const ErgodicReport& r) {
    auto birk = [](const BirkhoffResult& b) {
        return json{{"value", b.levy.value}, {"stderr", b.levy.stderr_}, {"orbits", b.orbits}, {"length", b.length},
                    {"resampled_orbits", b.resampled}, {"min_abs_r", b.min_abs_r}};
    };
    return {
        {"schema", kSchemaVersion},
        {"config", {{"seed", r.config.seed}, {"orbits", r.config.orbits}, {"length", r.config.length}, {"samples", r.config.samples}}},
        {"levy_birkhoff", birk(r.birkhoff)},
        {"levy_birkhoff_doubled_length", birk(r.birkhoff_doubled)},
        {"levy_integral", est(r.quad.levy)},
        {"C0", est(r.quad.C0)},
        {"integral_over_U_hat", est(r.quad.total)},
        {"quadrature", {{"samples", r.quad.samples}, {"hits", r.quad.hits}, {"min_abs_zu_minus_1", r.quad.min_abs_zu_minus_1}}},
        {"integral_h", est(r.integral_h)},
        {"exact_crosscheck", {{"z", r.exact.z}, {"depth", r.exact.depth}, {"exact", r.exact.exact}, {"tracked", r.exact.tracked},
                              {"abs_diff", std::abs(r.exact.exact - r.exact.tracked)}}},
        {"cell_occupation", table(r.occupation.freq)},
        {"cell_mass", table(r.quad.mass)},
        {"cell_mass_symmetrized", table(r.quad.mass_sym)},
        {"invariance", r.invariance.to_json()},
        {"verdicts", {{"levy_agree_2pct", r.levy_agree}, {"length_doubling_stable", r.length_stable},
                      {"h_normalized_1pct", r.h_normalized}, {"invariance", r.invariance.pass()}}},
    };
}

std::string density_csv(const std::vector<std::vector<double>>& grid) {
    std::ostringstream os;
    for (const auto& row : grid) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << num12(row[i]);
        os << "\n";
    }
    return os.str();
}

std::vector<std::pair<std::string, std::string>> region_figures() {
    const Catalog& cat = catalog();
    static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
    std::vector<std::pair<std::string, std::string>> out;
    const SvgLayer hex{&cat.U0, {"#000", 0.03, "none"}, "U"};

    out.emplace_back("U.svg", render_svg({hex}, -1.2, -1.05, 1.2, 1.05, "Fundamental domain U"));

    std::vector<SvgLayer> uk{hex};
    for (int k = 1; k <= 5; ++k) uk.push_back({&cat.U(k, 1), {palette[k - 1], 0.012, "none"}, "U_" + std::to_string(k) + "_1"});
    out.emplace_back("U_k1.svg", render_svg(uk, -1.2, -1.05, 1.2, 1.05, "Regions U_k,1"));

    std::vector<SvgLayer> vp{hex};
    for (int k = 1; k <= 6; ++k)
        for (int l = 1; l <= 6; ++l)
            vp.push_back({&cat.Vc(k, l), {palette[k - 1], 0.008, "none"}, "V_" + std::to_string(k) + "_" + std::to_string(l)});
    out.emplace_back("V_partition.svg", render_svg(vp, -1.2, -1.05, 1.2, 1.05, "Partition into V_k,l"));

    std::vector<SvgLayer> vs;
    for (int k = 1; k <= 6; ++k) vs.push_back({&cat.Vs(k, 1), {palette[k - 1], 0.015, "none"}, "Vstar_" + std::to_string(k) + "_1"});
    out.emplace_back("Vstar_k1.svg", render_svg(vs, -2.5, -2.5, 2.5, 2.5, "Dual regions V*_k,1"));

    std::vector<SvgLayer> ls{hex};
    for (int j = 1; j <= 12; ++j) ls.push_back({&cat.Lset(j), {palette[(j - 1) % 6], 0.015, "none"}, "L_" + std::to_string(j)});
    out.emplace_back("L_sets.svg", render_svg(ls, -1.2, -1.05, 1.2, 1.05, "Segments and arcs L_1 to L_12"));
    return out;
}

}  // namespace cf
