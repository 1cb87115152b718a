// Command-line front end over the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "eisencf.h"

namespace {

int exit_code(cf_status s) {
    switch (s) {
        case CF_OK: return 0;
        case CF_VERIFY_FAIL: return 1;
        case CF_ERR_PARSE:
        case CF_ERR_CONFIG: return 2;
        case CF_ERR_DOMAIN:
        case CF_ERR_DIVISION_BY_ZERO: return 3;
        case CF_ERR_IO: return 4;
        default: return 5;
    }
}

int fail(cf_status s) {
    std::fprintf(stderr, "error: %s\n", cf_last_error());
    return exit_code(s);
}

// Writes text to path, or stdout when path is empty. Returns an exit code.
int emit(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
        return 4;
    }
    return 0;
}

struct Owned {
    char* p = nullptr;
    ~Owned() { cf_string_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein continued fractions: expansions, verification and ergodic statistics"};
    app.require_subcommand(1);
    app.fallthrough();  // global --threads is accepted after the subcommand too
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: all cores; CF_THREADS overrides)");

    std::string out, format = "json", z, which, target = "regions";
    size_t digits = 256;
    cf_verify_config vc;
    cf_verify_config_default(&vc);
    cf_ergodic_config ec;
    cf_ergodic_config_default(&ec);
    unsigned grid = 200;
    bool timing = false;

    auto* expand = app.add_subcommand("expand", "continued fraction expansion of an exact point of U");
    expand->add_option("--z", z, "point as X+Yr with r = sqrt(-3), e.g. 3/10+1/7r")->required();
    expand->add_option("--digits", digits, "maximum number of digits")->check(CLI::PositiveNumber);
    expand->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    expand->add_option("--out", out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run exact verification checks");
    verify->add_option("which", which, "inversions, frs, dual, orbit, monotonic, special or all")
        ->required()
        ->check(CLI::IsMember({"inversions", "frs", "dual", "orbit", "monotonic", "special", "all"}));
    verify->add_option("--samples", vc.samples, "samples per claim")->check(CLI::PositiveNumber);
    verify->add_option("--depth", vc.depth, "dual-orbit depth")->check(CLI::PositiveNumber);
    verify->add_option("--mono-depth", vc.mono_depth, "monotonicity depth")->check(CLI::PositiveNumber);
    verify->add_option("--grid", vc.grid, "coverage grid (default from samples)");
    verify->add_option("--seed", vc.seed, "master seed");
    verify->add_flag("--timing", timing, "include elapsed seconds in the report");
    verify->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
    verify->add_option("--out", out, "report file (default stdout)");

    auto* levy = app.add_subcommand("levy", "Levy constant by Birkhoff averages and by quadrature");
    levy->add_option("--orbits", ec.orbits, "orbits")->check(CLI::PositiveNumber);
    levy->add_option("--length", ec.length, "steps per orbit")->check(CLI::PositiveNumber);
    levy->add_option("--samples", ec.samples, "quadrature points")->check(CLI::PositiveNumber);
    levy->add_option("--seed", ec.seed, "master seed");
    levy->add_option("--tol", ec.tol, "float boundary band");
    levy->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
    levy->add_option("--out", out, "report file (default stdout)");

    auto* density = app.add_subcommand("density", "invariant density on a grid, as CSV");
    density->add_option("--grid", grid, "grid size")->check(CLI::PositiveNumber);
    density->add_option("--samples", ec.samples, "quadrature points for the normalizing constant")->check(CLI::PositiveNumber);
    density->add_option("--seed", ec.seed, "master seed");
    density->add_option("--tol", ec.tol, "float boundary band");
    density->add_option("--format", format, "csv")->check(CLI::IsMember({"csv"}));
    density->add_option("--out", out, "CSV file (default stdout)");

    auto* render = app.add_subcommand("render", "SVG figures of the regions");
    render->add_option("what", target, "regions")->check(CLI::IsMember({"regions"}));
    render->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (threads) cf_set_threads(threads);

    if (*expand) {
        cf_expansion* e = nullptr;
        cf_status s = cf_expand(z.c_str(), digits, &e);
        if (s != CF_OK) return fail(s);
        Owned text;
        s = format == "csv" ? cf_expansion_csv(e, &text.p) : cf_expansion_json(e, &text.p);
        cf_expansion_free(e);
        if (s != CF_OK) return fail(s);
        return emit(out, text.p);
    }
    if (*verify) {
        vc.timing = timing ? 1 : 0;
        Owned text;
        cf_status s = cf_verify(which.c_str(), &vc, &text.p);
        if (s != CF_OK && s != CF_VERIFY_FAIL) return fail(s);
        if (int rc = emit(out, text.p)) return rc;
        std::fprintf(stderr, "verify %s: %s\n", which.c_str(), s == CF_OK ? "PASS" : "FAIL");
        return exit_code(s);
    }
    if (*levy) {
        Owned text;
        cf_status s = cf_levy(&ec, &text.p);
        if (s != CF_OK) return fail(s);
        return emit(out, text.p);
    }
    if (*density) {
        Owned text;
        cf_status s = cf_density(grid, &ec, &text.p);
        if (s != CF_OK) return fail(s);
        return emit(out, text.p);
    }
    if (*render) {
        Owned text;
        cf_status s = cf_render(out.c_str(), &text.p);
        if (s != CF_OK) return fail(s);
        std::fputs(text.p, stdout);
        return 0;
    }
    return 2;
}
