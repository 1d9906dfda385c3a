#include "casimir/thinfilm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::thinfilm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Scale-free variables, with gap = d - a the vacuum width:
//   v = 2 xi gap / c,  tau = 2 K0 gap  (tau >= v),  kappa = 2 K1 gap,
// so kappa^2 = tau^2 + (eps - 1) v^2 and e^(-2 K1 a) = exp(-(a/gap) kappa).
//
// Each polarization enters through a reflection-like factor R >= 1 with the
// mode condition g = e^tau R - 1; the pressure kernel needs e^-tau/(R-e^-tau)
// = 1/g and the energy kernel log(1 - e^-tau/R), both safe for eps up to
// ~1e300 and arbitrarily large tau.  Ratios that would cancel near eps = 1
// (kappa - tau, eps tau - kappa) are formed from difference-of-squares.
struct Refl {
    double ry;
    double rz;
};

Refl reflections(double eps, double a_over_gap, double v, double tau) {
    const double kappa = std::sqrt(tau * tau + (eps - 1.0) * v * v);
    const double decay = std::exp(-a_over_gap * kappa);

    const double ny = (1.0 + decay) * kappa + (1.0 - decay) * tau;
    const double dy = (eps - 1.0) * v * v / (kappa + tau) // = kappa - tau
                      + decay * (kappa + tau);

    const double et_k = eps * tau + kappa;
    const double q = (eps + 1.0) * tau / et_k;
    const double nz = (1.0 - decay) * kappa + eps * (1.0 + decay) * tau;
    const double dz = (eps - 1.0) * tau * q    // } together: eps tau - kappa
                      - (eps - 1.0) * v * v / et_k
                      + decay * et_k;

    return {ny / dy, nz / dz};
}

double pressure_kernel(double eps, double a_over_gap, double v, double tau) {
    const Refl r = reflections(eps, a_over_gap, v, tau);
    if (!(r.ry >= 1.0 - 1e-9) || !(r.rz >= 1.0 - 1e-9))
        throw DomainError("film dispersion lost positivity (non-passive "
                          "film?)");
    const double et = std::exp(-tau);
    return tau * tau * (et / (r.ry - et) + et / (r.rz - et));
}

double energy_kernel(double eps, double a_over_gap, double v, double tau) {
    const Refl r = reflections(eps, a_over_gap, v, tau);
    if (!(r.ry >= 1.0 - 1e-9) || !(r.rz >= 1.0 - 1e-9))
        throw DomainError("film dispersion lost positivity (non-passive "
                          "film?)");
    const double et = std::exp(-tau);
    return tau * (std::log1p(-et / r.ry) + std::log1p(-et / r.rz));
}

// Same truncation bookkeeping as the half-space integral: R >= 1 caps the
// pressure kernel by 2 tau^2 e^-tau / (1 - e^-tau) and the energy kernel by
// 2 tau |log(1 - e^-tau)|.
double pressure_tail_bound(double v0) {
    return 2.0 * (v0 * (v0 + 4.0) + 6.0) * std::exp(-v0) /
               (1.0 - std::exp(-v0)) +
           2.0 * 2706.0 * std::exp(-50.0) / (1.0 - std::exp(-50.0));
}

double energy_tail_bound(double v0) {
    return 2.0 * (v0 + 2.0) * std::exp(-v0) / (1.0 - std::exp(-v0)) +
           2.0 * 52.0 * std::exp(-50.0) / (1.0 - std::exp(-50.0));
}

std::vector<double> inner_breaks(double v, double t_hi) {
    std::vector<double> br = {v,        v + 0.5,  v + 2.0, v + 6.0,
                              v + 15.0, v + 35.0, t_hi};
    for (double& b : br)
        b = std::min(b, t_hi);
    return br;
}

std::vector<double> outer_breaks(double v_max) {
    std::vector<double> br = {0.0};
    for (double b = 1.0; b < v_max; b *= 2.0)
        br.push_back(b);
    br.push_back(v_max);
    return br;
}

struct JResult {
    double value = 0.0;
    double err = 0.0;
    long evals = 0;
};

template <typename Kernel>
JResult cavity_integral(const LayeredCavity& cav, const QuadratureSpec& quad,
                        Kernel kernel, double tail_bound) {
    const double gap = cav.d - cav.a;
    const double a_over_gap = cav.a / gap;
    optics::EpsCache eps_at(cav.film, quad);

    const double v_max = 2.0 * quad.xi_cutoff_factor;
    long evals = 0;
    double inner_rel_max = 0.0;
    bool inner_ok = true;

    auto outer_integrand = [&](double v) {
        const double xi = 0.5 * v * c_light / gap;
        const double eps = eps_at(xi);
        if (!std::isfinite(eps) || eps < 1.0)
            throw DomainError("film integral: eps(i xi) must be finite and "
                              ">= 1, got " +
                              num_str(eps));
        const double t_hi = std::max(quad.p_cutoff * v, v + 50.0);
        const QuadResult inner = integrate_adaptive(
            [&](double tau) { return kernel(eps, a_over_gap, v, tau); },
            inner_breaks(v, t_hi), quad.rel_tol / 8.0, 1e-3 * quad.rel_tol,
            quad.max_subdivisions);
        evals += inner.evals;
        inner_ok = inner_ok && inner.converged;
        inner_rel_max = std::max(
            inner_rel_max, inner.err / std::max(std::abs(inner.value), 1e-3));
        return inner.value;
    };

    const QuadResult outer =
        integrate_adaptive(outer_integrand, outer_breaks(v_max), quad.rel_tol,
                           1e-2 * quad.rel_tol, quad.max_subdivisions);
    if (!outer.converged || !inner_ok)
        throw ConvergenceError("film integral: estimated error " +
                               num_str(outer.err) +
                               " above tolerance after " +
                               std::to_string(quad.max_subdivisions) +
                               " subdivisions");

    JResult r;
    r.value = outer.value;
    r.err = outer.err + std::abs(outer.value) * inner_rel_max + tail_bound;
    r.evals = evals;
    return r;
}

} // namespace

double wavenumber(double k, double xi, double eps_i_xi) {
    if (!(k >= 0.0) || !std::isfinite(k))
        throw DomainError("wavenumber: k must be >= 0");
    if (!(xi >= 0.0) || !std::isfinite(xi))
        throw DomainError("wavenumber: xi must be >= 0");
    if (!(eps_i_xi >= 1.0))
        throw DomainError("wavenumber: eps(i xi) must be >= 1");
    const double xic = xi / c_light;
    return std::sqrt(k * k + eps_i_xi * xic * xic);
}

LayeredCavity::LayeredCavity(double separation, double thickness,
                             optics::PermittivityModel film_model)
    : d(separation), a(thickness), film(std::move(film_model)) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw DomainError("LayeredCavity: separation must be > 0");
    if (!(a >= 0.0) || !(a < d))
        throw ValidationError("LayeredCavity: need 0 <= thickness < "
                              "separation");
    if (film.is_perfect_conductor())
        throw UnsupportedModel("LayeredCavity: a perfectly conducting film "
                               "is ideal mirrors at separation d - a; use "
                               "ideal_pressure");
}

LayeredCavity LayeredCavity::from_gap(double vacuum_gap, double thickness,
                                      optics::PermittivityModel film_model) {
    if (!(vacuum_gap > 0.0) || !std::isfinite(vacuum_gap))
        throw DomainError("LayeredCavity: vacuum gap must be > 0");
    if (!(thickness >= 0.0) || !std::isfinite(thickness))
        throw DomainError("LayeredCavity: thickness must be >= 0");
    return LayeredCavity(vacuum_gap + thickness, thickness,
                         std::move(film_model));
}

namespace {

double dispersion_impl(double xi, double k, const LayeredCavity& cav,
                       bool te) {
    if (!(xi >= 0.0) || !std::isfinite(xi))
        throw DomainError("dispersion: xi must be >= 0");
    if (!(k >= 0.0) || !std::isfinite(k))
        throw DomainError("dispersion: k must be >= 0");
    const double gap = cav.d - cav.a;
    // xi = 0 is taken as the limit from above; eps(i xi) xi^2 has a finite
    // limit for every supported model and a tiny probe frequency lands on it.
    const double xi_eff = xi > 0.0 ? xi : 1e-9 * c_light / cav.d;
    const double eps = optics::eps_imag_axis(cav.film, xi_eff).eps;
    const double v = 2.0 * xi_eff * gap / c_light;
    const double tau = 2.0 * wavenumber(k, xi, 1.0) * gap;
    if (tau == 0.0)
        return 0.0; // xi = k = 0: g -> e^0 - 1
    const Refl r = reflections(eps, cav.a / gap, v, tau);
    return std::expm1(tau + std::log(te ? r.ry : r.rz));
}

} // namespace

double dispersion_gy(double xi, double k, const LayeredCavity& cavity) {
    return dispersion_impl(xi, k, cavity, true);
}

double dispersion_gz(double xi, double k, const LayeredCavity& cavity) {
    return dispersion_impl(xi, k, cavity, false);
}

PressureResult film_pressure(const LayeredCavity& cavity,
                             const QuadratureSpec& quad) {
    quad.validate();
    const double gap = cavity.d - cavity.a;
    const JResult j =
        cavity_integral(cavity, quad, pressure_kernel,
                        pressure_tail_bound(2.0 * quad.xi_cutoff_factor));
    const double g2 = gap * gap;
    const double pref = hbar * c_light / (32.0 * kPi * kPi * g2 * g2);
    return {pref * j.value, pref * j.err, j.evals};
}

EnergyResult film_energy_per_area(const LayeredCavity& cavity,
                                  const QuadratureSpec& quad) {
    quad.validate();
    const double gap = cavity.d - cavity.a;
    const JResult j =
        cavity_integral(cavity, quad, energy_kernel,
                        energy_tail_bound(2.0 * quad.xi_cutoff_factor));
    const double pref =
        hbar * c_light / (32.0 * kPi * kPi * gap * gap * gap);
    return {pref * j.value, pref * j.err, j.evals};
}

std::vector<FilmComparisonPoint>
film_comparison_curve(const optics::PermittivityModel& film, double thickness,
                      const std::vector<double>& separations,
                      const QuadratureSpec& quad, Execution ex) {
    quad.validate();
    if (separations.empty())
        throw ValidationError("film_comparison_curve: empty grid");
    if (!(thickness >= 0.0) || !std::isfinite(thickness))
        throw DomainError("film_comparison_curve: thickness must be >= 0");
    for (size_t i = 0; i < separations.size(); ++i) {
        if (!(separations[i] > thickness))
            throw ValidationError("film_comparison_curve: every separation "
                                  "must exceed the film thickness");
        if (i > 0 && separations[i] <= separations[i - 1])
            throw ValidationError("film_comparison_curve: separations must "
                                  "be strictly increasing");
    }
    if (film.is_perfect_conductor())
        throw UnsupportedModel("film_comparison_curve: the perfect-film "
                               "column is computed internally; pass the real "
                               "film material");

    std::vector<FilmComparisonPoint> out(separations.size());
    std::vector<std::string> failures(separations.size());

    const long n = static_cast<long>(separations.size());
#pragma omp parallel for schedule(dynamic) if (ex == Execution::Parallel)
    for (long i = 0; i < n; ++i) {
        const size_t idx = static_cast<size_t>(i);
        const double d = separations[idx];
        try {
            FilmComparisonPoint& pt = out[idx];
            pt.d = d;
            const PressureResult bare =
                film_pressure(LayeredCavity(d, 0.0, film), quad);
            pt.f_nofilm = bare.pressure;
            pt.evals = bare.evals;
            if (thickness > 0.0) {
                const PressureResult with_film =
                    film_pressure(LayeredCavity(d, thickness, film), quad);
                pt.f_film = with_film.pressure;
                pt.evals += with_film.evals;
                pt.f_perfect = lifshitz::ideal_pressure(d - thickness);
                pt.ratio = (pt.f_film - pt.f_nofilm) /
                           (pt.f_perfect - pt.f_nofilm);
            } else {
                pt.f_film = pt.f_nofilm;
                pt.f_perfect = lifshitz::ideal_pressure(d);
                pt.ratio = 0.0;
            }
        } catch (const std::exception& e) {
            failures[idx] = e.what();
        }
    }

    std::string msg;
    for (size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            msg += " " + std::to_string(i) + " (" + failures[i] + ")";
    if (!msg.empty())
        throw ConvergenceError("film_comparison_curve: failures at grid "
                               "indices" +
                               msg);
    return out;
}

} // namespace casimir::thinfilm
