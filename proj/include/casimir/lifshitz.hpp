#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "casimir/optics.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::lifshitz {

using optics::Execution;

// Zero-temperature attraction between ideal mirrors.  All results in this
// module are magnitudes: positive numbers meaning the bodies pull together.
double ideal_pressure(double separation);                    // Pa
double ideal_energy_per_area(double separation);             // J/m^2
double ideal_sphere_force(double separation, double radius); // N

// Proximity-force estimate: a sphere of radius R at closest approach d feels
// 2 pi R E(d), with E the parallel-plate energy per area.  Valid for d << R.
double pft_force(const std::function<double(double)>& energy_per_area,
                 double separation, double radius);

struct PressureResult {
    double pressure = 0.0; // Pa
    double err = 0.0;      // quadrature estimate plus cutoff-tail bound
    long evals = 0;        // kernel evaluations on the (frequency, angle) grid
};

// Dispersion-force integral between identical half-spaces described by their
// permittivity on the imaginary frequency axis.  The function overload takes
// eps(i xi) directly (real, >= 1 for passive media); the model overload
// wraps the optics continuation with per-run memoization.  Vacuum gives an
// exact zero; a perfect conductor is rejected in favour of ideal_pressure.
PressureResult lifshitz_pressure(const optics::PermittivityModel& model,
                                 double separation,
                                 const QuadratureSpec& quad = {});
PressureResult lifshitz_pressure(const std::function<double(double)>& eps_i_xi,
                                 double separation,
                                 const QuadratureSpec& quad = {});

struct EnergyResult {
    double energy = 0.0; // J/m^2
    double err = 0.0;
    long evals = 0;
};

// E(d) = integral of the pressure from d to infinity (work per area to pull
// the plates apart).  The integral is carried to 50 d; the remainder is
// extrapolated as 1/x^4 and 5% of it is folded into err.
EnergyResult lifshitz_energy_per_area(const optics::PermittivityModel& model,
                                      double separation,
                                      const QuadratureSpec& quad = {});

struct SphereForceResult {
    double force = 0.0; // N
    double err = 0.0;
    long evals = 0;
};

// Sphere-plate force for a real material: proximity-force conversion of
// lifshitz_energy_per_area.
SphereForceResult lifshitz_sphere_force(const optics::PermittivityModel& model,
                                        double separation, double radius,
                                        const QuadratureSpec& quad = {});

struct ParallelPlates {};
struct SpherePlate {
    double radius = 0.0; // m
};
using Geometry = std::variant<ParallelPlates, SpherePlate>;

struct CurvePoint {
    double separation = 0.0; // m
    double value = 0.0;      // Pa for plates, N for sphere
    double err = 0.0;
    long evals = 0;
};

struct ForceCurve {
    std::vector<CurvePoint> points;
};

// One point per separation (strictly increasing grid).  Points are
// independent; Parallel evaluates them concurrently with output order equal
// to input order and values bit-identical to Serial.
ForceCurve force_curve(const optics::PermittivityModel& model,
                       const Geometry& geometry,
                       const std::vector<double>& separations,
                       const QuadratureSpec& quad = {},
                       Execution ex = Execution::Parallel);

} // namespace casimir::lifshitz
