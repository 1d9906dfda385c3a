// Acceptance gate for the toolkit: ten numbered criteria, one PASS/FAIL line
// each, nonzero exit if any fail.  Tolerances are pinned here, not in flags,
// so a regression cannot be waved through by loosening a knob.
//
// Usage: casimir_acceptance [data_dir]   (data_dir defaults to "data")

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/corrections.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/optics.hpp"
#include "casimir/spectral.hpp"
#include "casimir/thinfilm.hpp"

using namespace casimir;
using optics::DrudeTail;
using optics::Execution;
using optics::PermittivityModel;
using optics::PowerTail;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id,
                detail.c_str());
    if (!ok)
        ++failures;
}

void run(int id, const std::function<void(int)>& body) {
    try {
        body(id);
    } catch (const std::exception& e) {
        report(id, false, std::string("unexpected error: ") + e.what());
    }
}

std::string g3(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

// Single Lorentz oscillator sampled densely enough that log-log chords do
// not clip the resonance; the matched low tail contributes negligibly.
PermittivityModel lorentz_model(double f, double x0, double g, int n) {
    std::ostringstream s;
    s << "omega_rad_s,eps_real,eps_imag\n";
    s.precision(17);
    const double lo = 1e-2 * x0, hi = 1e2 * x0;
    for (int i = 0; i < n; ++i) {
        const double x = lo * std::pow(hi / lo, double(i) / (n - 1));
        const double d2 =
            (x0 * x0 - x * x) * (x0 * x0 - x * x) + g * g * x * x;
        s << x << ",0," << f * g * x / d2 << "\n";
    }
    std::istringstream in(s.str());
    optics::OpticalTable t = optics::load_table(in);
    const double wmin = t.omega_min();
    const double e0 = t.rows().front().eps_imag;
    return PermittivityModel::tabulated(
        std::move(t), DrudeTail{wmin * std::sqrt(2.0 * e0), wmin},
        PowerTail{3.0});
}

double lorentz_exact(double f, double x0, double g, double xi) {
    return 1.0 + f / (x0 * x0 + g * xi + xi * xi);
}

} // namespace

int main(int argc, char** argv) {
    const std::string data_dir = argc > 1 ? argv[1] : "data";

    run(1, [](int id) {
        const double p = lifshitz::ideal_pressure(1e-6);
        const double quoted = 1.3e-3; // Pa, i.e. 0.013 dyn/cm^2
        const double rel = std::abs(p - quoted) / quoted;
        report(id, rel < 0.01,
               "ideal_pressure(1 um) = " + num_str(p) + " Pa vs quoted " +
                   num_str(quoted) + " Pa (rel " + g3(rel) + ", tol 0.01)");
    });

    run(2, [](int id) {
        const auto model = PermittivityModel::constant(1e8);
        std::string detail = "constant eps = 1e8 vs ideal:";
        bool ok = true;
        for (double d : {1e-7, 1e-6}) {
            const auto t0 = std::chrono::steady_clock::now();
            const double ratio = lifshitz::lifshitz_pressure(model, d).pressure /
                                 lifshitz::ideal_pressure(d);
            const double secs = seconds_since(t0);
            const double dev = std::abs(ratio - 1.0);
            ok = ok && dev < 1e-3 && secs < 10.0;
            detail += " d=" + g3(d) + " m dev " + g3(dev) + " in " +
                      g3(secs) + " s;";
        }
        detail += " tol 1e-3, limit 10 s/point";
        report(id, ok, detail);
    });

    run(3, [](int id) {
        const double d = 1e-6;
        bool ok = true;
        std::string detail = "plasma model vs second-order series:";
        for (double x : {0.01, 0.02, 0.05}) {
            const double omega_p =
                2.0 * std::numbers::pi * c_light / (x * d);
            const double ratio =
                lifshitz::lifshitz_pressure(PermittivityModel::plasma(omega_p),
                                            d)
                    .pressure /
                lifshitz::ideal_pressure(d);
            const double series = conductivity_factor(x * d, d, 2);
            const double diff = std::abs(ratio - series);
            ok = ok && diff < 0.01;
            detail += " lambda_p/d=" + g3(x) + " |diff| " + g3(diff) + ";";
        }
        detail += " tol 0.01";
        report(id, ok, detail);
    });

    run(4, [](int id) {
        // Al-like free-electron parameters at a 100 nm gap
        const double wp = 1.25e17, g = 1.22e14, d = 1e-7;
        const double full =
            lifshitz::lifshitz_pressure(PermittivityModel::drude(wp, g), d)
                .pressure /
            lifshitz::ideal_pressure(d);
        const double series =
            conductivity_factor(optics::plasma_wavelength(wp), d, 2);
        const double dev = std::abs(full - series) / full;
        report(id, dev > 0.03 && dev < 0.08,
               "full integral " + num_str(full) + " vs series " +
                   num_str(series) + ": relative deviation " + g3(dev) +
                   ", band [0.03, 0.08]");
    });

    run(5, [](int id) {
        const double r1 = roughness_factor(30e-9, 100e-9);
        const double r2 = roughness_factor(30e-9, 600e-9);
        const bool ok =
            std::abs(r1 - 1.36) < 1e-9 && std::abs(r2 - 1.01) < 1e-9;
        report(id, ok,
               "roughness_factor(30 nm, 100 nm) = " + num_str(r1) +
                   " (want 1.36), (30 nm, 600 nm) = " + num_str(r2) +
                   " (want 1.01)");
    });

    run(6, [&data_dir](int id) {
        const auto gold = PermittivityModel::tabulated(
            optics::load_table_file(data_dir + "/gold.csv"));
        std::vector<double> seps(10);
        for (int i = 0; i < 10; ++i)
            seps[i] = 1e-7 * std::pow(2.0, i / 9.0);
        const auto curve =
            thinfilm::film_comparison_curve(gold, 35e-9, seps);
        double lo = 1.0, hi = 0.0;
        for (const auto& pt : curve) {
            lo = std::min(lo, pt.ratio);
            hi = std::max(hi, pt.ratio);
        }
        report(id, lo >= 0.35 && hi <= 0.65,
               "35 nm film effect ratio in [" + num_str(lo) + ", " +
                   num_str(hi) + "] over 100-200 nm, band [0.35, 0.65]");
    });

    run(7, [](int id) {
        const auto film = PermittivityModel::drude(1.37e16, 5.32e13);
        const double bare =
            thinfilm::film_pressure(thinfilm::LayeredCavity(1e-7, 0.0, film))
                .pressure;
        const double dev0 =
            std::abs(bare / lifshitz::ideal_pressure(1e-7) - 1.0);
        const double shifted =
            thinfilm::film_pressure(
                thinfilm::LayeredCavity(2e-7, 1e-7,
                                        PermittivityModel::constant(1e8)))
                .pressure;
        const double dev1 =
            std::abs(shifted / lifshitz::ideal_pressure(1e-7) - 1.0);
        report(id, dev0 < 1e-3 && dev1 < 5e-3,
               "a=0 dev " + g3(dev0) + " (tol 1e-3); dense-film wall shift "
                                       "dev " +
                   g3(dev1) + " (tol 5e-3)");
    });

    run(8, [](int id) {
        const double f = 8.0e30, x0 = 4.0e15, g = 6.0e14;
        const auto model = lorentz_model(f, x0, g, 2500);
        bool ok = true;
        double worst = 0.0;
        for (double xi : {x0 / 10.0, x0, 10.0 * x0}) {
            const double got = optics::eps_imag_axis(model, xi).eps;
            const double want = lorentz_exact(f, x0, g, xi);
            const double rel = std::abs(got - want) / want;
            worst = std::max(worst, rel);
            ok = ok && rel < 1e-3;
        }
        report(id, ok,
               "tabulated Lorentz line vs closed form at x0/10, x0, 10 x0: "
               "worst rel " +
                   g3(worst) + ", tol 1e-3");
    });

    run(9, [](int id) {
        using spectral::AnalyticFn;
        using spectral::Circle;
        using spectral::Contour;
        std::mt19937 rng(424243);
        std::uniform_real_distribution<double> Uc(-2.0, 2.0), Ul(0.5, 2.5);
        std::uniform_int_distribution<int> Ud(2, 8), Us(0, 1);
        int bad = 0;
        double worst_sum = 0.0, worst_res = 0.0;
        for (int it = 0; it < 100; ++it) {
            const int deg = Ud(rng);
            std::vector<double> c(deg + 1);
            for (int i = 0; i < deg; ++i)
                c[i] = Uc(rng);
            c[deg] = (Us(rng) ? 1.0 : -1.0) * Ul(rng);
            // Cauchy bound on root magnitude keeps the contour clear
            double bound = 0.0;
            for (int i = 0; i < deg; ++i)
                bound = std::max(bound, std::abs(c[i] / c[deg]));
            const Contour path(Circle{{0.0, 0.0}, 2.0 * (1.0 + bound)});
            const AnalyticFn fn = AnalyticFn::from_real_coeffs(c);

            const auto n = spectral::count_zeros_poles(fn, path);
            const double expected_sum = -c[deg - 1] / c[deg]; // Vieta
            const auto s = spectral::sum_zeros_poles(fn, path);
            const auto realness = spectral::verify_realness(fn, path);
            const double sum_err = std::abs(s.sum - std::complex<double>(
                                                        expected_sum, 0.0)) /
                                   std::max(1.0, std::abs(expected_sum));
            worst_res = std::max(worst_res, n.residual);
            worst_sum = std::max(worst_sum, sum_err);
            if (n.count != deg || n.residual > 1e-3 || sum_err > 1e-8 ||
                !realness.real_within_tol)
                ++bad;
        }
        report(id, bad == 0,
               "100 random real polynomials: failures " +
                   std::to_string(bad) + ", worst residual " + g3(worst_res) +
                   " (tol 1e-3), worst sum error " + g3(worst_sum) +
                   " (tol 1e-8)");
    });

    run(10, [](int id) {
        std::mt19937 rng(424244);
        std::uniform_real_distribution<double> Ue(1.5, 9.0), Ud(-7.0, -5.7),
            Uwp(15.7, 16.7), Ug(13.0, 14.7), Ufrac(0.05, 0.8),
            Uf(29.5, 31.0), Ux(15.0, 16.0);
        int monotone = 0, bounded = 0, ordering = 0, kk = 0, determinism = 0;
        const int cases = 50;

        for (int i = 0; i < cases; ++i) {
            const auto m = PermittivityModel::constant(std::pow(10.0, Ue(rng)));
            const double d = std::pow(10.0, Ud(rng));
            const double p1 = lifshitz::lifshitz_pressure(m, d).pressure;
            const double p2 = lifshitz::lifshitz_pressure(m, 1.5 * d).pressure;
            const double p3 = lifshitz::lifshitz_pressure(m, 2.5 * d).pressure;
            if (p1 > p2 && p2 > p3)
                ++monotone;
            if (p1 < lifshitz::ideal_pressure(d))
                ++bounded;
        }
        for (int i = 0; i < cases; ++i) {
            const double d = std::pow(10.0, Ud(rng));
            const auto curve = thinfilm::film_comparison_curve(
                PermittivityModel::drude(std::pow(10.0, Uwp(rng)),
                                         std::pow(10.0, Ug(rng))),
                Ufrac(rng) * d, {d}, {}, Execution::Serial);
            const auto& pt = curve.front();
            if (pt.f_nofilm <= pt.f_film && pt.f_film <= pt.f_perfect &&
                pt.ratio >= 0.0 && pt.ratio <= 1.0)
                ++ordering;
        }
        for (int i = 0; i < cases; ++i) {
            const auto m = lorentz_model(std::pow(10.0, Uf(rng)),
                                         std::pow(10.0, Ux(rng)),
                                         std::pow(10.0, Ux(rng)) / 5.0, 600);
            double prev = std::numeric_limits<double>::infinity();
            bool decreasing = true;
            for (double xi = 1e14; xi <= 1e17; xi *= 10.0) {
                const double e = optics::eps_imag_axis(m, xi).eps;
                decreasing = decreasing && e < prev && e >= 1.0;
                prev = e;
            }
            if (decreasing)
                ++kk;
        }
        for (int i = 0; i < cases; ++i) {
            const auto m =
                PermittivityModel::plasma(std::pow(10.0, Uwp(rng)));
            const double lo = std::pow(10.0, Ud(rng));
            const std::vector<double> grid{lo, 2.0 * lo, 4.0 * lo};
            const auto a = lifshitz::force_curve(m, lifshitz::ParallelPlates{},
                                                 grid, {},
                                                 Execution::Parallel);
            const auto b = lifshitz::force_curve(m, lifshitz::ParallelPlates{},
                                                 grid, {},
                                                 Execution::Parallel);
            const auto c = lifshitz::force_curve(m, lifshitz::ParallelPlates{},
                                                 grid, {}, Execution::Serial);
            bool same = true;
            for (size_t k = 0; k < grid.size(); ++k)
                same = same && a.points[k].value == b.points[k].value &&
                       a.points[k].value == c.points[k].value &&
                       a.points[k].err == c.points[k].err;
            if (same)
                ++determinism;
        }

        const bool ok = monotone == cases && bounded == cases &&
                        ordering == cases && kk == cases &&
                        determinism == cases;
        report(id, ok,
               "property draws (" + std::to_string(cases) +
                   " each): monotone decay " + std::to_string(monotone) +
                   ", below-ideal bound " + std::to_string(bounded) +
                   ", film ordering " + std::to_string(ordering) +
                   ", continuation monotone " + std::to_string(kk) +
                   ", determinism " + std::to_string(determinism));
    });

    if (failures > 0)
        std::printf("%d of 10 criteria failing\n", failures);
    return failures == 0 ? 0 : 1;
}
