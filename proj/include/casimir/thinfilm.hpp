#pragma once

#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/optics.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::thinfilm {

using lifshitz::EnergyResult;
using lifshitz::PressureResult;
using optics::Execution;

// Imaginary-axis wave number sqrt(k^2 + eps xi^2 / c^2); real and >= 0.
double wavenumber(double k, double xi, double eps_i_xi);

// Two ideal mirrors a distance d apart, with a film of the given material
// covering the mirror at z = d to depth a (vacuum gap d - a).  The film
// model must have eps(i xi) finite: a perfectly conducting film is the
// wall-shift closed form, not a material.
struct LayeredCavity {
    LayeredCavity(double separation, double thickness,
                  optics::PermittivityModel film_model);
    // Same cavity described by the vacuum gap instead of the mirror spacing.
    static LayeredCavity from_gap(double vacuum_gap, double thickness,
                                  optics::PermittivityModel film_model);

    double d;  // mirror-to-mirror, m
    double a;  // film thickness, m, 0 <= a < d
    optics::PermittivityModel film;
};

// Mode-condition functions for the two polarizations: zeros in (xi, k) are
// the cavity modes.  a = 0 or a vacuum film gives e^(2 K0 d) - 1; a thick or
// dense film approaches e^(2 K0 (d-a)) - 1 (wall shifted to the film face).
// The value saturates to +inf once K * length exceeds ~350; the force
// integrals use internally rescaled forms and never overflow.
double dispersion_gy(double xi, double k, const LayeredCavity& cavity);
double dispersion_gz(double xi, double k, const LayeredCavity& cavity);

// Attraction per unit area between the mirrors (positive).
PressureResult film_pressure(const LayeredCavity& cavity,
                             const QuadratureSpec& quad = {});

// Interaction part of the zero-point energy per unit area: negative,
// vanishing as d -> infinity, with d(E)/dd = +film_pressure.  Terms whose
// force contribution is separation-independent (bulk and single-surface
// pieces) carry no information about the attraction and are dropped.
EnergyResult film_energy_per_area(const LayeredCavity& cavity,
                                  const QuadratureSpec& quad = {});

// One row of the three-curve comparison: bare mirrors at d, the same mirrors
// with the film, and a perfectly conducting film of the same thickness
// (= ideal mirrors at the reduced spacing d - a).  ratio measures how much
// of the perfect-film effect the real film achieves; it is 0 when a = 0.
struct FilmComparisonPoint {
    double d = 0.0;         // m
    double f_nofilm = 0.0;  // Pa
    double f_film = 0.0;    // Pa
    double f_perfect = 0.0; // Pa
    double ratio = 0.0;     // (f_film - f_nofilm) / (f_perfect - f_nofilm)
    long evals = 0;
};

std::vector<FilmComparisonPoint>
film_comparison_curve(const optics::PermittivityModel& film, double thickness,
                      const std::vector<double>& separations,
                      const QuadratureSpec& quad = {},
                      Execution ex = Execution::Parallel);

} // namespace casimir::thinfilm
