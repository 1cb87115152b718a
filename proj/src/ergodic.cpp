#include "ergodic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace cf {

namespace {

enum : uint64_t { kLevy = 11, kQuad = 12, kOcc = 14, kExact = 15 };

constexpr double kPi = 3.14159265358979323846;

// mixture parameters for the importance sampler
constexpr double kUniformShare = 0.5;
constexpr double kBeta = 1.8;  // radial density ~ r^-beta near each hexagon vertex
constexpr double kRho = 0.3;

const std::array<Complex, 6>& vertices() {
    static const std::array<Complex, 6> v = [] {
        std::array<Complex, 6> a;
        for (int k = 0; k < 6; ++k) a[k] = std::polar(1.0, k * kPi / 3);
        return a;
    }();
    return v;
}

double radial_density(Complex d) {
    double r = std::abs(d);
    if (r >= kRho || r == 0) return 0;
    const double cst = (2 - kBeta) / (2 * kPi * std::pow(kRho, 2 - kBeta));
    return cst * std::pow(r, -kBeta);
}

Complex radial_sample(Stream& s) {
    double r = kRho * std::pow(s.uniform(), 1 / (2 - kBeta));
    return std::polar(r, s.uniform(0, 2 * kPi));
}

bool in_box(Complex z, double hx, double hy) { return std::abs(z.real()) <= hx && std::abs(z.imag()) <= hy; }

struct Moments {
    double n = 0, s = 0, s2 = 0;
    void add(double x) {
        n += 1;
        s += x;
        s2 += x * x;
    }
    Estimate estimate() const {
        double m = s / n;
        double var = n > 1 ? std::max(0.0, (s2 - n * m * m) / (n - 1)) : 0;
        return {m, std::sqrt(var / n)};
    }
};

// Ratio of batch sums with a linearized stderr.
Estimate ratio(const std::vector<double>& num, const std::vector<double>& den) {
    double sn = 0, sd = 0;
    for (size_t i = 0; i < num.size(); ++i) {
        sn += num[i];
        sd += den[i];
    }
    double r = sn / sd, mean_d = sd / num.size();
    Moments e;
    for (size_t i = 0; i < num.size(); ++i) e.add((num[i] - r * den[i]) / mean_d);
    return {r, e.estimate().stderr_};
}

}  // namespace

std::optional<NatExtState> nat_ext_step(const NatExtState& s, double tol) {
    FloatStep f = step_T_float(s.z, tol);
    if (f.skip) return std::nullopt;
    Complex b = f.digit.value;
    Complex w = s.w ? 1.0 / *s.w - b : -b;
    return NatExtState{f.next, w};
}

Complex random_point_U(Stream& s, double tol) {
    for (;;) {
        Complex z(s.uniform(-1, 1), s.uniform(-kSqrt3 / 2, kSqrt3 / 2));
        if (in_U_float(z, tol) == Membership::Inside) return z;
    }
}

BirkhoffResult levy_birkhoff(uint64_t orbits, uint64_t length, uint64_t seed, double tol) {
    if (length < 1000) throw Error(ErrorCode::Config, "levy: length must be at least 1000");
    if (orbits < 2) throw Error(ErrorCode::Config, "levy: need at least 2 orbits");
    struct Out {
        double mean = 0, min_r = 1e300;
        uint64_t restarts = 0;
    };
    std::vector<Out> out(orbits);
    parallel_for(orbits, [&](size_t i) {
        Stream s = Stream::derive(seed, kLevy, i);
        Out& o = out[i];
        for (;;) {
            Complex z = random_point_U(s, tol);
            Complex r;
            double sum = 0, min_r = 1e300;
            bool ok = true;
            for (uint64_t k = 0; k < length; ++k) {
                FloatStep f = step_T_float(z, tol);
                if (f.skip) {
                    ok = false;
                    break;
                }
                r = k == 0 ? f.digit.value : f.digit.value + 1.0 / r;
                double a = std::abs(r);
                sum += std::log(a);
                min_r = std::min(min_r, a);
                z = f.next;
            }
            if (!ok) {
                ++o.restarts;
                continue;
            }
            o.mean = sum / length;
            o.min_r = min_r;
            return;
        }
    });
    BirkhoffResult res;
    res.orbits = orbits;
    res.length = length;
    res.min_abs_r = 1e300;
    Moments m;
    for (const auto& o : out) {
        m.add(o.mean);
        res.resampled += o.restarts;
        res.min_abs_r = std::min(res.min_abs_r, o.min_r);
    }
    res.levy = m.estimate();
    return res;
}

QuadratureResult estimate_quadrature(uint64_t samples, uint64_t seed, double tol) {
    if (samples < 1000) throw Error(ErrorCode::Config, "quadrature: need at least 1000 samples");
    const Catalog& cat = catalog();
    const size_t B = 64;
    struct Batch {
        double n = 0, tot = 0, log = 0, min_d = 1e300;
        uint64_t hits = 0;
        std::array<double, 36> cell{};
    };
    std::vector<Batch> batches(B);
    const double hx = 1, hy = kSqrt3 / 2;
    const double uniform_density = 1 / (2 * hx * 2 * hy * 4.0);
    parallel_for(B, [&](size_t bi) {
        Stream s = Stream::derive(seed, kQuad, bi);
        Batch& b = batches[bi];
        uint64_t n = samples / B + (bi < samples % B ? 1 : 0);
        b.n = double(n);
        for (uint64_t i = 0; i < n; ++i) {
            Complex z, u;
            if (s.uniform() < kUniformShare) {
                z = Complex(s.uniform(-hx, hx), s.uniform(-hy, hy));
                u = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
            } else {
                Complex v = vertices()[s.below(6)];
                z = v + radial_sample(s);
                u = std::conj(v) + radial_sample(s);
            }
            if (u == Complex(0)) continue;
            auto cell = cat.cell_of_float(z, tol);
            if (!cell) continue;
            Complex w = 1.0 / u;
            if (cat.Vs(cell->k, cell->l).contains_float(w, tol) != Membership::Inside) continue;
            double q = (in_box(z, hx, hy) && in_box(u, 1, 1) ? kUniformShare * uniform_density : 0);
            for (const auto& v : vertices())
                q += (1 - kUniformShare) / 6 * radial_density(z - v) * radial_density(u - std::conj(v));
            double d = std::abs(z * u - 1.0);
            double wt = 1 / (std::pow(d, 4) * q);
            ++b.hits;
            b.min_d = std::min(b.min_d, d);
            b.tot += wt;
            b.log += wt * std::log(std::abs(w));
            b.cell[(cell->k - 1) * 6 + cell->l - 1] += wt;
        }
    });
    QuadratureResult r;
    r.samples = samples;
    r.min_abs_zu_minus_1 = 1e300;
    std::vector<double> tot(B), lg(B), cnt(B);
    for (size_t i = 0; i < B; ++i) {
        tot[i] = batches[i].tot;
        lg[i] = batches[i].log;
        cnt[i] = batches[i].n;
        r.hits += batches[i].hits;
        r.min_abs_zu_minus_1 = std::min(r.min_abs_zu_minus_1, batches[i].min_d);
    }
    r.total = ratio(tot, cnt);
    r.C0 = {1 / r.total.value, r.total.stderr_ / (r.total.value * r.total.value)};
    r.levy = ratio(lg, tot);
    for (int k = 0; k < 6; ++k) {
        std::vector<double> sym(B, 0);
        for (int l = 0; l < 6; ++l) {
            std::vector<double> c(B);
            for (size_t i = 0; i < B; ++i) {
                c[i] = batches[i].cell[k * 6 + l];
                sym[i] += c[i] / 6;
            }
            r.mass[k][l] = ratio(c, tot);
        }
        Estimate e = ratio(sym, tot);
        for (int l = 0; l < 6; ++l) r.mass_sym[k][l] = e;
    }
    return r;
}

namespace {

const std::array<std::array<std::vector<BoundaryPiece>, 6>, 6>& dual_boundaries() {
    static const auto b = [] {
        std::array<std::array<std::vector<BoundaryPiece>, 6>, 6> a;
        for (int k = 1; k <= 6; ++k)
            for (int l = 1; l <= 6; ++l) a[k - 1][l - 1] = boundary_pieces(catalog().Vs(k, l));
        return a;
    }();
    return b;
}

}  // namespace

std::optional<double> kernel_at(Complex z, double tol) {
    auto cell = catalog().cell_of_float(z, tol);
    if (!cell) return std::nullopt;
    double k = kernel_integral(dual_boundaries()[cell->k - 1][cell->l - 1], z);
    // within ~1e-7 of a horn tip the contour sum cancels catastrophically; treat as boundary
    if (!(k > 0) || !std::isfinite(k)) return std::nullopt;
    return k;
}

std::optional<double> density_h(Complex z, double C0, double tol) {
    auto k = kernel_at(z, tol);
    if (!k) return std::nullopt;
    return C0 * *k;
}

namespace {

// Radii where the ray at angle phi crosses some cell boundary, within (0, rmax).
std::vector<double> ray_breaks(double phi, double rmax) {
    static const std::vector<Primitive> prims = [] {
        std::vector<Primitive> v;
        const Catalog& cat = catalog();
        for (const auto& row : cat.V)
            for (const auto& cell : row)
                for (const auto& term : cell.terms)
                    for (const auto& p : term)
                        if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
        return v;
    }();
    // along z = rho e^{i phi}: f = fa rho^2 + 2 rho (fbx cos + sqrt3 fby sin) + fc
    const double c = std::cos(phi), sn = std::sin(phi);
    std::vector<double> out = {0.0, rmax};
    for (const auto& p : prims) {
        double a = p.fa, b = 2 * (p.fbx * c + kSqrt3 * p.fby * sn), cc = p.fc;
        auto keep = [&](double r) {
            if (r > 0 && r < rmax) out.push_back(r);
        };
        if (a == 0) {
            if (b != 0) keep(-cc / b);
            continue;
        }
        double disc = b * b - 4 * a * cc;
        if (disc < 0) continue;
        double sq = std::sqrt(disc);
        // stable pair of roots
        double q = -0.5 * (b + (b >= 0 ? sq : -sq));
        if (q != 0) keep(cc / q);
        keep(q / a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return y - x < 1e-14; }), out.end());
    return out;
}

}  // namespace

Estimate kernel_total(double tol) {
    using boost::math::quadrature::gauss_kronrod;
    dual_boundaries();
    double qerr = 0;
    // integral of kernel * rho over the ray at angle phi, inside the hexagon edge from 1 to zeta
    auto radial = [&](double phi) {
        double rmax = (kSqrt3 / 2) / std::cos(phi - kPi / 6);
        auto br = ray_breaks(phi, rmax);
        const Complex dir = std::polar(1.0, phi);
        double sum = 0;
        for (size_t i = 0; i + 1 < br.size(); ++i) {
            // the inner estimate is unreliable at horn tips; inner errors show up in the outer one
            sum += gauss_kronrod<double, 21>::integrate(
                [&](double r) {
                    auto k = kernel_at(r * dir, tol);
                    return k ? *k * r : 0.0;
                },
                br[i], br[i + 1], 8, 1e-6);
        }
        return sum;
    };
    // Near phi = 0 the ray runs inside the horn of V_{2,1} tangent to the real axis at 1, where the
    // kernel grows like (1 - rho)^-2, so the ray integral grows like c / sqrt(phi); likewise at pi/3.
    // Integrate over [p, pi/3 - p] in s = sqrt(phi) and add 2 p I(p) for each end.
    auto sector = [&](double p) {
        const double half = std::sqrt(kPi / 6), s0 = std::sqrt(p);
        double e1 = 0, e2 = 0;
        double v = gauss_kronrod<double, 31>::integrate([&](double t) { return 2 * t * radial(t * t); }, s0, half, 8,
                                                        1e-6, &e1) +
                   gauss_kronrod<double, 31>::integrate([&](double t) { return 2 * t * radial(kPi / 3 - t * t); }, s0,
                                                        half, 8, 1e-6, &e2);
        qerr += e1 + e2;
        return v + 2 * p * (radial(p) + radial(kPi / 3 - p));
    };
    double fine = sector(1e-4), coarse = sector(1e-3);
    // the end correction error shrinks about sevenfold per decade of p
    double err = qerr + std::abs(fine - coarse) / 5;
    // six rotated copies of the sector
    return {6 * fine, 6 * err};
}

Estimate integral_h(const Estimate& C0, double tol) {
    Estimate J = kernel_total(tol);
    return {C0.value * J.value, std::hypot(C0.value * J.stderr_, J.value * C0.stderr_)};
}

Occupation cell_occupation(uint64_t orbits, uint64_t length, uint64_t seed, double tol) {
    if (orbits < 2 || length < 1) throw Error(ErrorCode::Config, "occupation: need at least 2 orbits");
    const Catalog& cat = catalog();
    struct Out {
        std::array<double, 36> f{};
        uint64_t skipped = 0;
    };
    std::vector<Out> out(orbits);
    parallel_for(orbits, [&](size_t i) {
        Stream s = Stream::derive(seed, kOcc, i);
        Out& o = out[i];
        for (;;) {
            std::array<uint64_t, 36> c{};
            uint64_t valid = 0, skipped = 0;
            Complex z = random_point_U(s, tol);
            bool ok = true;
            for (uint64_t k = 0; k < length; ++k) {
                FloatStep f = step_T_float(z, tol);
                if (f.skip) {
                    ok = false;
                    break;
                }
                z = f.next;
                auto cell = cat.cell_of_float(z, tol);
                if (!cell) {
                    ++skipped;
                    continue;
                }
                ++valid;
                ++c[(cell->k - 1) * 6 + cell->l - 1];
            }
            if (!ok || valid == 0) continue;
            for (int j = 0; j < 36; ++j) o.f[j] = double(c[j]) / valid;
            o.skipped = skipped;
            return;
        }
    });
    Occupation occ;
    occ.orbits = orbits;
    occ.length = length;
    for (int j = 0; j < 36; ++j) {
        Moments m;
        for (const auto& o : out) m.add(o.f[j]);
        occ.freq[j / 6][j % 6] = m.estimate();
    }
    for (const auto& o : out) occ.skipped += o.skipped;
    return occ;
}

CheckReport invariance_check(const Occupation& occ, const QuadratureResult& quad) {
    CheckReport r;
    r.name = "invariance";
    r.samples = occ.orbits * occ.length;
    double sum = 0, worst = 0;
    json cells = json::array();
    for (int k = 0; k < 6; ++k) {
        for (int l = 0; l < 6; ++l) {
            const Estimate &f = occ.freq[k][l], &m = quad.mass_sym[k][l];
            sum += f.value;
            double sigma = std::hypot(f.stderr_, m.stderr_);
            double tol = std::max(3 * sigma, 0.01);
            double diff = std::abs(f.value - m.value);
            worst = std::max(worst, diff / tol);
            cells.push_back({{"cell", {k + 1, l + 1}}, {"frequency", f.value}, {"frequency_stderr", f.stderr_},
                             {"mass", m.value}, {"mass_stderr", m.stderr_}, {"tolerance", tol}});
            if (diff >= tol) r.fail({{"cell", {k + 1, l + 1}}, {"frequency", f.value}, {"mass", m.value}, {"tolerance", tol}});
        }
    }
    if (std::abs(sum - 1) > 1e-9) r.fail({{"reason", "frequencies do not sum to 1"}, {"sum", sum}});
    r.details = {{"worst_ratio_to_tolerance", worst}, {"frequency_sum", sum}, {"cells", cells}};
    return r;
}

ExactLevyCheck levy_exact_crosscheck(size_t depth, uint64_t seed) {
    Stream s = Stream::derive(seed, kExact);
    for (;;) {
        FieldElement z = sample_U(s, unsigned(2 * depth + 64));
        Expansion e = expand(z, depth);
        if (e.digits.size() < depth || e.terminal == Terminal::SpecialPeriodic) continue;
        auto conv = convergents(e.digits);
        long ex = 0;
        double mant = mpz_get_d_2exp(&ex, conv[depth].q.norm().get_mpz_t());
        double log_abs_q = 0.5 * (std::log(mant) + ex * std::log(2.0));
        Complex r;
        double sum = 0;
        for (size_t k = 0; k < depth; ++k) {
            Complex b = approx(e.digits[k]);
            r = k == 0 ? b : b + 1.0 / r;
            sum += std::log(std::abs(r));
        }
        return {depth, log_abs_q / depth, sum / depth, z.str()};
    }
}

std::vector<std::vector<double>> density_grid(unsigned grid, double C0, double tol) {
    if (grid < 1) throw Error(ErrorCode::Config, "density: grid must be positive");
    dual_boundaries();
    std::vector<std::vector<double>> g(grid, std::vector<double>(grid, 0));
    parallel_for(grid, [&](size_t j) {
        double y = kSqrt3 / 2 - (j + 0.5) * kSqrt3 / grid;
        for (unsigned i = 0; i < grid; ++i) {
            double x = -1 + (i + 0.5) * 2.0 / grid;
            auto h = density_h(Complex(x, y), C0, tol);
            g[j][i] = h ? *h : 0;
        }
    });
    return g;
}

ErgodicReport run_ergodic(const ErgodicConfig& cfg) {
    ErgodicReport rep;
    rep.config = cfg;
    if (!(cfg.tol > 0 && cfg.tol <= 1e-6)) throw Error(ErrorCode::Config, "tol must lie in (0, 1e-6]");
    rep.birkhoff = levy_birkhoff(cfg.orbits, cfg.length, cfg.seed, cfg.tol);
    rep.birkhoff_doubled = levy_birkhoff(cfg.orbits, 2 * cfg.length, mix64(cfg.seed ^ 0x5eed), cfg.tol);
    rep.quad = estimate_quadrature(cfg.samples, cfg.seed, cfg.tol);
    rep.occupation = cell_occupation(cfg.orbits, cfg.length, cfg.seed, cfg.tol);
    rep.invariance = invariance_check(rep.occupation, rep.quad);
    rep.integral_h = integral_h(rep.quad.C0, cfg.tol);
    rep.exact = levy_exact_crosscheck(200, cfg.seed);
    const double lb = rep.birkhoff.levy.value, li = rep.quad.levy.value;
    rep.levy_agree = std::isfinite(lb) && std::isfinite(li) && lb > 0 && li > 0 && std::abs(lb - li) <= 0.02 * lb;
    rep.length_stable = std::abs(lb - rep.birkhoff_doubled.levy.value) <=
                        3 * std::hypot(rep.birkhoff.levy.stderr_, rep.birkhoff_doubled.levy.stderr_);
    rep.h_normalized = std::abs(rep.integral_h.value - 1) <= 0.01;
    return rep;
}

}  // namespace cf
