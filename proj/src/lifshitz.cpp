#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::lifshitz {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The double integral is evaluated in the scale-free variables
//   v = 2 xi d / c,   u = 2 p xi d / c   (so p = u/v, u >= v),
// where it reads J = int_0^inf dv int_v^inf du u^2 [T_te + T_tm] and the
// pressure is (hbar c / 32 pi^2 d^4) J.  Ideal mirrors give J = 2 pi^4 / 15.
//
// Reflectivities are written so that eps up to ~1e300 stays finite:
// the TE ratio (s-p)/(s+p) becomes (eps-1)/(s+p)^2 (also avoiding the s-p
// cancellation near eps = 1), and the TM ratio (eps p - s)/(eps p + s) is
// formed from t = (s/eps)/p.
double kernel(double eps, double v, double u) {
    const double p = u / v;
    const double s = std::sqrt(eps - 1.0 + p * p);
    const double sp = s + p;
    const double ry = (eps - 1.0) / (sp * sp);
    const double tz = (s / eps) / p;
    const double rz = (1.0 - tz) / (1.0 + tz);
    const double e = std::exp(-u);
    const double a = ry * ry * e;
    const double b = rz * rz * e;
    return u * u * (a / (1.0 - a) + b / (1.0 - b));
}

// With |r| <= 1 the integrand is at most 2 u^2 e^-u / (1 - e^-u), so the
// neglected v > v0 region is bounded by
//   2 (v0^2 + 4 v0 + 6) e^-v0 / (1 - e^-v0),
// and the region {u > v + 50} cut off by the inner range by
//   2 * 2706 e^-50 / (1 - e^-50)   (2706 = int_0^inf ((v+50)^2+2(v+50)+2) e^-v dv).
// Both are folded into the reported err.
double outer_tail_bound(double v0) {
    return 2.0 * (v0 * (v0 + 4.0) + 6.0) * std::exp(-v0) /
           (1.0 - std::exp(-v0));
}

double inner_tail_bound() {
    return 2.0 * 2706.0 * std::exp(-50.0) / (1.0 - std::exp(-50.0));
}

std::vector<double> inner_breaks(double v, double u_hi) {
    std::vector<double> br = {v,        v + 0.5,  v + 2.0, v + 6.0,
                              v + 15.0, v + 35.0, u_hi};
    for (double& b : br)
        b = std::min(b, u_hi);
    return br; // integrate_adaptive dedupes
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

JResult force_integral(const std::function<double(double)>& eps_i_xi,
                       double d, const QuadratureSpec& quad) {
    const double v_max = 2.0 * quad.xi_cutoff_factor;
    long evals = 0;
    double inner_rel_max = 0.0;
    bool inner_ok = true;

    auto outer_integrand = [&](double v) {
        const double xi = 0.5 * v * c_light / d;
        const double eps = eps_i_xi(xi);
        if (!std::isfinite(eps) || eps < 1.0)
            throw DomainError("lifshitz_pressure: eps(i xi) must be finite "
                              "and >= 1, got " +
                              num_str(eps));
        const double u_hi = std::max(quad.p_cutoff * v, v + 50.0);
        const QuadResult inner = integrate_adaptive(
            [&](double u) { return kernel(eps, v, u); }, inner_breaks(v, u_hi),
            quad.rel_tol / 8.0, 1e-3 * quad.rel_tol, quad.max_subdivisions);
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
        throw ConvergenceError(
            "lifshitz_pressure: estimated error " + num_str(outer.err) +
            " above tolerance after " +
            std::to_string(quad.max_subdivisions) + " subdivisions");

    JResult r;
    r.value = outer.value;
    r.err = outer.err + std::abs(outer.value) * inner_rel_max +
            outer_tail_bound(v_max) + inner_tail_bound();
    r.evals = evals;
    return r;
}

void check_separation(double d, const char* who) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw DomainError(std::string(who) + ": separation must be > 0");
}

} // namespace

double ideal_pressure(double separation) {
    check_separation(separation, "ideal_pressure");
    const double d2 = separation * separation;
    return (kPi * kPi / 240.0) * hbar * c_light / (d2 * d2);
}

double ideal_energy_per_area(double separation) {
    check_separation(separation, "ideal_energy_per_area");
    return (kPi * kPi / 720.0) * hbar * c_light /
           (separation * separation * separation);
}

double ideal_sphere_force(double separation, double radius) {
    check_separation(separation, "ideal_sphere_force");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("ideal_sphere_force: radius must be > 0");
    return 2.0 * kPi * radius * ideal_energy_per_area(separation);
}

double pft_force(const std::function<double(double)>& energy_per_area,
                 double separation, double radius) {
    check_separation(separation, "pft_force");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("pft_force: radius must be > 0");
    return 2.0 * kPi * radius * energy_per_area(separation);
}

PressureResult lifshitz_pressure(const std::function<double(double)>& eps_i_xi,
                                 double separation,
                                 const QuadratureSpec& quad) {
    quad.validate();
    check_separation(separation, "lifshitz_pressure");
    const JResult j = force_integral(eps_i_xi, separation, quad);
    const double d2 = separation * separation;
    const double pref = hbar * c_light / (32.0 * kPi * kPi * d2 * d2);
    return {pref * j.value, pref * j.err, j.evals};
}

PressureResult lifshitz_pressure(const optics::PermittivityModel& model,
                                 double separation,
                                 const QuadratureSpec& quad) {
    quad.validate();
    check_separation(separation, "lifshitz_pressure");
    if (model.is_perfect_conductor())
        throw UnsupportedModel("lifshitz_pressure: perfect conductor is the "
                               "closed form; use ideal_pressure");
    if (model.is_vacuum())
        return {0.0, 0.0, 0};
    optics::EpsCache cache(model, quad);
    return lifshitz_pressure([&cache](double xi) { return cache(xi); },
                             separation, quad);
}

EnergyResult lifshitz_energy_per_area(const optics::PermittivityModel& model,
                                      double separation,
                                      const QuadratureSpec& quad) {
    quad.validate();
    check_separation(separation, "lifshitz_energy_per_area");
    if (model.is_perfect_conductor())
        throw UnsupportedModel("lifshitz_energy_per_area: use "
                               "ideal_energy_per_area");
    if (model.is_vacuum())
        return {0.0, 0.0, 0};

    optics::EpsCache cache(model, quad);
    auto eps = [&cache](double xi) { return cache(xi); };
    QuadratureSpec pq = quad;
    pq.rel_tol = quad.rel_tol / 4.0;

    long evals = 0;
    double p_rel_max = 0.0;
    auto pressure_at = [&](double x) {
        const PressureResult pr = lifshitz_pressure(eps, x, pq);
        evals += pr.evals;
        p_rel_max = std::max(p_rel_max,
                             pr.err / std::max(pr.pressure, 1e-300));
        return pr.pressure;
    };

    std::vector<double> br;
    for (double m = 1.0; m < 50.0; m *= 2.0)
        br.push_back(m * separation);
    br.push_back(50.0 * separation);
    const QuadResult out = integrate_adaptive(pressure_at, br, quad.rel_tol,
                                              0.0, quad.max_subdivisions);
    if (!out.converged)
        throw ConvergenceError("lifshitz_energy_per_area: distance "
                               "integral did not converge");

    // 1/x^4 continuation beyond 50 d: integral_X^inf P(X) (X/x)^4 dx = P X/3.
    const double x_far = 50.0 * separation;
    const double tail = pressure_at(x_far) * x_far / 3.0;

    EnergyResult e;
    e.energy = out.value + tail;
    e.err = out.err + std::abs(out.value) * p_rel_max + 0.05 * tail;
    e.evals = evals;
    return e;
}

SphereForceResult lifshitz_sphere_force(const optics::PermittivityModel& model,
                                        double separation, double radius,
                                        const QuadratureSpec& quad) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("lifshitz_sphere_force: radius must be > 0");
    const EnergyResult e = lifshitz_energy_per_area(model, separation, quad);
    const double f = 2.0 * kPi * radius;
    return {f * e.energy, f * e.err, e.evals};
}

ForceCurve force_curve(const optics::PermittivityModel& model,
                       const Geometry& geometry,
                       const std::vector<double>& separations,
                       const QuadratureSpec& quad, Execution ex) {
    quad.validate();
    if (separations.empty())
        throw ValidationError("force_curve: empty separation grid");
    for (size_t i = 0; i < separations.size(); ++i) {
        if (!(separations[i] > 0.0) || !std::isfinite(separations[i]))
            throw ValidationError("force_curve: separations must be > 0");
        if (i > 0 && separations[i] <= separations[i - 1])
            throw ValidationError(
                "force_curve: separations must be strictly increasing");
    }
    const SpherePlate* sphere = std::get_if<SpherePlate>(&geometry);
    if (sphere && (!(sphere->radius > 0.0) || !std::isfinite(sphere->radius)))
        throw DomainError("force_curve: sphere radius must be > 0");
    if (model.is_perfect_conductor())
        throw UnsupportedModel("force_curve: perfect conductor is the closed "
                               "form; use ideal_pressure / ideal_sphere_force");

    ForceCurve curve;
    curve.points.resize(separations.size());
    std::vector<std::string> failures(separations.size());

    const long n = static_cast<long>(separations.size());
#pragma omp parallel for schedule(dynamic) if (ex == Execution::Parallel)
    for (long i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(i);
        const double d = separations[k];
        try {
            CurvePoint& pt = curve.points[k];
            pt.separation = d;
            if (sphere) {
                const SphereForceResult r =
                    lifshitz_sphere_force(model, d, sphere->radius, quad);
                pt.value = r.force;
                pt.err = r.err;
                pt.evals = r.evals;
            } else {
                const PressureResult r = lifshitz_pressure(model, d, quad);
                pt.value = r.pressure;
                pt.err = r.err;
                pt.evals = r.evals;
            }
        } catch (const std::exception& e) {
            failures[k] = e.what();
        }
    }

    std::string msg;
    for (size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            msg += " " + std::to_string(i) + " (" + failures[i] + ")";
    if (!msg.empty())
        throw ConvergenceError("force_curve: failures at grid indices" + msg);
    return curve;
}

} // namespace casimir::lifshitz
