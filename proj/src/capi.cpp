#include "eisencf.h"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "report.hpp"

using namespace cf;

struct cf_expansion {
    FieldElement z;
    Expansion e;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

cf_status to_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return CF_ERR_PARSE;
        case ErrorCode::Domain: return CF_ERR_DOMAIN;
        case ErrorCode::DivisionByZero: return CF_ERR_DIVISION_BY_ZERO;
        case ErrorCode::Config: return CF_ERR_CONFIG;
        case ErrorCode::Io: return CF_ERR_IO;
        case ErrorCode::Internal: return CF_ERR_INTERNAL;
    }
    return CF_ERR_INTERNAL;
}

template <class F>
cf_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CF_ERR_INTERNAL;
    }
}

cf_status need(const void* p, const char* what) {
    if (p) return CF_OK;
    throw Error(ErrorCode::Config, std::string("null argument: ") + what);
}

void write_file(const std::filesystem::path& p, const std::string& data) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + p.string() + " for writing");
    f << data;
    if (!f) throw Error(ErrorCode::Io, "write failed for " + p.string());
}

}  // namespace

extern "C" {

const char* cf_last_error(void) { return g_last_error.c_str(); }

void cf_string_free(char* s) { std::free(s); }

void cf_set_threads(unsigned n) { set_thread_count(n); }

cf_status cf_normalize(const char* z, char** out) {
    return guarded([&] {
        need(z, "z"), need(out, "out");
        *out = dup(parse_field(z).str());
        return CF_OK;
    });
}

cf_status cf_floor_j(const char* z, char** out) {
    return guarded([&] {
        need(z, "z"), need(out, "out");
        *out = dup(floor_J(parse_field(z)).str());
        return CF_OK;
    });
}

cf_status cf_in_u(const char* z, int* out) {
    return guarded([&] {
        need(z, "z"), need(out, "out");
        *out = in_U(parse_field(z)) ? 1 : 0;
        return CF_OK;
    });
}

cf_status cf_expand(const char* z, size_t max_digits, cf_expansion** out) {
    return guarded([&] {
        need(z, "z"), need(out, "out");
        if (max_digits < 1) throw Error(ErrorCode::Config, "digits must be at least 1");
        FieldElement v = parse_field(z);
        *out = new cf_expansion{v, expand(v, max_digits)};
        return CF_OK;
    });
}

void cf_expansion_free(cf_expansion* e) { delete e; }

size_t cf_expansion_length(const cf_expansion* e) { return e ? e->e.digits.size() : 0; }

cf_status cf_expansion_digit(const cf_expansion* e, size_t i, char** out) {
    return guarded([&] {
        need(e, "expansion"), need(out, "out");
        if (i >= e->e.digits.size()) throw Error(ErrorCode::Config, "digit index out of range");
        *out = dup(e->e.digits[i].str());
        return CF_OK;
    });
}

const char* cf_expansion_terminal(const cf_expansion* e) { return e ? terminal_name(e->e.terminal) : ""; }

cf_status cf_expansion_json(const cf_expansion* e, char** out) {
    return guarded([&] {
        need(e, "expansion"), need(out, "out");
        *out = dup(expansion_json(e->z, e->e).dump(2) + "\n");
        return CF_OK;
    });
}

cf_status cf_expansion_csv(const cf_expansion* e, char** out) {
    return guarded([&] {
        need(e, "expansion"), need(out, "out");
        *out = dup(expansion_csv(e->z, e->e));
        return CF_OK;
    });
}

void cf_verify_config_default(cf_verify_config* c) {
    if (!c) return;
    VerifyConfig d;
    *c = {d.samples, d.depth, d.mono_depth, d.grid, d.seed, 0};
}

cf_status cf_verify(const char* which, const cf_verify_config* c, char** json_out) {
    return guarded([&] {
        need(which, "which"), need(c, "config"), need(json_out, "json_out");
        if (c->samples < 1) throw Error(ErrorCode::Config, "samples must be at least 1");
        if (c->depth < 1 || c->mono_depth < 1) throw Error(ErrorCode::Config, "depth must be at least 1");
        VerifyConfig v{c->samples, c->depth, c->mono_depth, c->seed, c->grid};
        auto reports = run_checks(which, v);
        json j = verify_json(reports, v, c->timing != 0);
        *json_out = dup(j.dump(2) + "\n");
        return j["verdict"] == "PASS" ? CF_OK : CF_VERIFY_FAIL;
    });
}

void cf_ergodic_config_default(cf_ergodic_config* c) {
    if (!c) return;
    ErgodicConfig d;
    *c = {d.orbits, d.length, d.samples, d.seed, d.tol};
}

cf_status cf_levy(const cf_ergodic_config* c, char** json_out) {
    return guarded([&] {
        need(c, "config"), need(json_out, "json_out");
        ErgodicReport r = run_ergodic({c->orbits, c->length, c->samples, c->seed, c->tol});
        *json_out = dup(ergodic_json(r).dump(2) + "\n");
        return CF_OK;
    });
}

cf_status cf_density(unsigned grid, const cf_ergodic_config* c, char** csv_out) {
    return guarded([&] {
        need(c, "config"), need(csv_out, "csv_out");
        if (grid < 1) throw Error(ErrorCode::Config, "grid must be at least 1");
        if (!(c->tol > 0 && c->tol <= 1e-6)) throw Error(ErrorCode::Config, "tol must lie in (0, 1e-6]");
        QuadratureResult q = estimate_quadrature(c->samples, c->seed, c->tol);
        *csv_out = dup(density_csv(density_grid(grid, q.C0.value, c->tol)));
        return CF_OK;
    });
}

cf_status cf_render(const char* dir, char** json_out) {
    return guarded([&] {
        need(dir, "dir"), need(json_out, "json_out");
        std::filesystem::path d(dir);
        std::error_code ec;
        std::filesystem::create_directories(d, ec);
        if (ec) throw Error(ErrorCode::Io, "cannot create directory " + d.string() + ": " + ec.message());
        json files = json::array();
        for (const auto& [name, svg] : region_figures()) {
            write_file(d / name, svg);
            files.push_back((d / name).string());
        }
        *json_out = dup(json{{"schema", kSchemaVersion}, {"files", files}}.dump(2) + "\n");
        return CF_OK;
    });
}

}  // extern "C"
