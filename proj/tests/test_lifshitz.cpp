#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/corrections.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;
using namespace casimir::lifshitz;
using optics::PermittivityModel;

TEST_CASE("ideal closed forms") {
    // pi^2/240 hbar c / d^4 at d = 1 um
    CHECK(ideal_pressure(1e-6) ==
          doctest::Approx(1.3001257724477534e-3).epsilon(1e-14));
    // scaling: d^-4
    CHECK(ideal_pressure(5e-7) ==
          doctest::Approx(16.0 * ideal_pressure(1e-6)).epsilon(1e-14));
    // pi^3/360 hbar c R / d^3 at R = 12.5 cm, d = 1 um
    CHECK(ideal_sphere_force(1e-6, 0.125) ==
          doctest::Approx(3.4037213128871814e-10).epsilon(1e-14));
    // energy per area magnitude pi^2/720 hbar c / d^3
    CHECK(ideal_energy_per_area(1e-6) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 720.0 * hbar *
                          c_light / 1e-18)
              .epsilon(1e-14));
    // pressure = 3 E / d and sphere force = 2 pi R E for ideal mirrors
    CHECK(ideal_pressure(1e-6) ==
          doctest::Approx(3.0 * ideal_energy_per_area(1e-6) / 1e-6)
              .epsilon(1e-14));
    CHECK(ideal_sphere_force(1e-6, 0.125) ==
          doctest::Approx(2.0 * std::numbers::pi * 0.125 *
                          ideal_energy_per_area(1e-6))
              .epsilon(1e-14));
    CHECK_THROWS_AS(ideal_pressure(0.0), DomainError);
    CHECK_THROWS_AS(ideal_sphere_force(1e-6, 0.0), DomainError);
}

TEST_CASE("pft_force wraps an arbitrary energy curve") {
    auto e = [](double d) { return 3.0e-9 / (d * 1e6); };
    CHECK(pft_force(e, 2.0, 0.01) ==
          doctest::Approx(2.0 * std::numbers::pi * 0.01 * e(2.0))
              .epsilon(1e-15));
}

TEST_CASE("constant-permittivity pressure ratios against the ideal limit") {
    // Frozen from an independent evaluation of the two-axis dispersion
    // integral (Romberg on the reduced variables, cross-checked at 1e-10).
    const struct {
        double eps, ratio;
    } table[] = {
        {1e4, 0.91144924},
        {1e5, 0.96399899},
        {1e6, 0.98606696},
        {1e7, 0.99478617},
        {1e8, 0.99809560},
    };
    const double d = 1e-6;
    for (const auto& row : table) {
        const PressureResult r =
            lifshitz_pressure(PermittivityModel::constant(row.eps), d);
        CHECK(r.pressure / ideal_pressure(d) ==
              doctest::Approx(row.ratio).epsilon(2e-7));
        CHECK(r.err < 1e-5 * r.pressure);
        CHECK(r.evals > 0);
    }
}

TEST_CASE("plasma-model pressure matches the conductivity series when valid") {
    // lambda_p/d in the asymptotic window; frozen full-integral ratios.
    const struct {
        double x, ratio;
    } table[] = {
        {0.01, 0.991572179},
        {0.02, 0.983263858},
        {0.05, 0.959035552},
    };
    const double d = 1e-6;
    for (const auto& row : table) {
        const double omega_p =
            2.0 * std::numbers::pi * c_light / (row.x * d);
        const PressureResult r =
            lifshitz_pressure(PermittivityModel::plasma(omega_p), d);
        const double ratio = r.pressure / ideal_pressure(d);
        CHECK(ratio == doctest::Approx(row.ratio).epsilon(2e-7));
        const double series = conductivity_factor(row.x * d, d, 2);
        CHECK(std::abs(ratio - series) < 0.01);
    }
}

TEST_CASE("Drude relaxation weakens the attraction below the plasma result") {
    const double wp = 1.25e17, g = 1.22e14, d = 1e-7;
    const double full =
        lifshitz_pressure(PermittivityModel::drude(wp, g), d).pressure /
        ideal_pressure(d);
    CHECK(full == doctest::Approx(0.87952626).epsilon(2e-7));
    const double plasma_ratio =
        lifshitz_pressure(PermittivityModel::plasma(wp), d).pressure /
        ideal_pressure(d);
    CHECK(full < plasma_ratio);
}

TEST_CASE("vacuum gives exactly zero force") {
    const PressureResult r =
        lifshitz_pressure(PermittivityModel::vacuum(), 1e-6);
    CHECK(r.pressure == 0.0);
    CHECK(r.err == 0.0);
}

TEST_CASE("perfect conductor is rejected in favour of the closed form") {
    CHECK_THROWS_AS(
        lifshitz_pressure(PermittivityModel::perfect_conductor(), 1e-6),
        UnsupportedModel);
    CHECK_THROWS_AS(lifshitz_sphere_force(
                        PermittivityModel::perfect_conductor(), 1e-6, 0.01),
                    UnsupportedModel);
}

TEST_CASE("pressure grows toward the ideal value as eps -> infinity") {
    // Perfect-conductor limit: the deficit shrinks like ln(sqrt(eps))/sqrt(eps).
    const double d = 1e-6;
    double prev = 0.0;
    for (int k = 4; k <= 8; ++k) {
        const double eps = std::pow(10.0, k);
        const double ratio =
            lifshitz_pressure(PermittivityModel::constant(eps), d).pressure /
            ideal_pressure(d);
        CHECK(ratio > prev);
        CHECK(ratio < 1.0);
        const double s = std::sqrt(eps);
        CHECK(std::abs(ratio - 1.0) <= 2.6 * std::log(s) / s);
        prev = ratio;
    }
}

TEST_CASE("pressure decays monotonically with separation") {
    std::mt19937 rng(20240818);
    std::uniform_real_distribution<double> Ue(1.5, 9.0), Ud(5e-8, 3e-6);
    for (int k = 0; k < 50; ++k) {
        const double eps = std::pow(10.0, Ue(rng));
        const auto model = PermittivityModel::constant(eps);
        const double d = Ud(rng);
        const double p1 = lifshitz_pressure(model, d).pressure;
        const double p2 = lifshitz_pressure(model, 1.5 * d).pressure;
        CHECK(p1 > 0.0);
        CHECK(p1 > p2);
        // real media never beat ideal mirrors
        CHECK(p1 < ideal_pressure(d));
    }
}

TEST_CASE("function overload accepts any decreasing eps(i xi)") {
    const double wp = 1.37e16;
    auto eps = [wp](double xi) { return 1.0 + wp * wp / (xi * xi); };
    const double d = 1e-6;
    const PressureResult a = lifshitz_pressure(eps, d);
    const PressureResult b =
        lifshitz_pressure(PermittivityModel::plasma(wp), d);
    CHECK(a.pressure == doctest::Approx(b.pressure).epsilon(1e-12));
}

TEST_CASE("tightening rel_tol changes the value within the old error bar") {
    const auto model = PermittivityModel::constant(500.0);
    const double d = 3e-7;
    QuadratureSpec loose;
    loose.rel_tol = 1e-4;
    QuadratureSpec tight;
    tight.rel_tol = 1e-9;
    const PressureResult a = lifshitz_pressure(model, d, loose);
    const PressureResult b = lifshitz_pressure(model, d, tight);
    CHECK(std::abs(a.pressure - b.pressure) <= 2.0 * a.err);
    CHECK(b.err < a.err);
}

TEST_CASE("energy per area differentiates back to the pressure") {
    const auto model = PermittivityModel::constant(1e4);
    const double d = 1e-6, h = 5e-3 * d;
    const EnergyResult ep = lifshitz_energy_per_area(model, d + h);
    const EnergyResult em = lifshitz_energy_per_area(model, d - h);
    const double dEdd = (ep.energy - em.energy) / (2.0 * h);
    const double p = lifshitz_pressure(model, d).pressure;
    // E decreases as plates separate... the magnitude convention here makes
    // E positive and decreasing, so -dE/dd equals the (positive) pressure.
    CHECK(-dEdd == doctest::Approx(p).epsilon(5e-4));
}

TEST_CASE("sphere force equals 2 pi R times the plate energy") {
    const auto model = PermittivityModel::constant(1e5);
    const double d = 5e-7, R = 1e-4;
    const SphereForceResult f = lifshitz_sphere_force(model, d, R, {});
    const EnergyResult e = lifshitz_energy_per_area(model, d, {});
    CHECK(f.force ==
          doctest::Approx(2.0 * std::numbers::pi * R * e.energy)
              .epsilon(1e-12));
    CHECK_THROWS_AS(lifshitz_sphere_force(model, d, -1.0, {}), DomainError);
}

TEST_CASE("force_curve validates inputs and orders output like input") {
    const auto model = PermittivityModel::constant(100.0);
    CHECK_THROWS_AS(
        force_curve(model, ParallelPlates{}, {}, {}, Execution::Serial),
        ValidationError);
    CHECK_THROWS_AS(force_curve(model, ParallelPlates{}, {2e-7, 1e-7}, {},
                                Execution::Serial),
                    ValidationError);
    CHECK_THROWS_AS(force_curve(model, ParallelPlates{}, {-1e-7, 1e-7}, {},
                                Execution::Serial),
                    ValidationError);
    CHECK_THROWS_AS(force_curve(model, SpherePlate{0.0}, {1e-7}, {},
                                Execution::Serial),
                    DomainError);
    CHECK_THROWS_AS(force_curve(PermittivityModel::perfect_conductor(),
                                ParallelPlates{}, {1e-7}, {},
                                Execution::Serial),
                    UnsupportedModel);

    const std::vector<double> grid{1e-7, 2e-7, 4e-7};
    const ForceCurve c =
        force_curve(model, ParallelPlates{}, grid, {}, Execution::Serial);
    REQUIRE(c.points.size() == grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(c.points[i].separation == grid[i]);
        CHECK(c.points[i].value ==
              doctest::Approx(lifshitz_pressure(model, grid[i]).pressure)
                  .epsilon(1e-15));
    }
}

TEST_CASE("sphere curve matches pointwise sphere forces") {
    const auto model = PermittivityModel::constant(1e4);
    const std::vector<double> grid{2e-7, 5e-7};
    const double R = 1e-4;
    const ForceCurve c =
        force_curve(model, SpherePlate{R}, grid, {}, Execution::Serial);
    REQUIRE(c.points.size() == 2);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(c.points[i].value ==
              doctest::Approx(
                  lifshitz_sphere_force(model, grid[i], R, {}).force)
                  .epsilon(1e-15));
}
