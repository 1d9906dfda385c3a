#pragma once

#include <string>
#include <vector>

namespace casimir {

// Finite-conductivity reduction of the perfect-conductor pressure, as a
// short series in plasma_wavelength / separation.  Order 1 keeps the linear
// term, order 2 adds the quadratic one.  The series is asymptotic: it is
// only trustworthy for lambda_p/d well below ~0.3, and the quadratic term
// eventually drives the factor above 1 or below 0 where the expansion has
// simply left its domain.
double conductivity_factor(double lambda_p, double separation, int order);

// Multiplicative enhancement from sinusoidal surface roughness of amplitude
// `amplitude` on both plates, to lowest nontrivial order: 1 + 4 (A/d)^2.
double roughness_factor(double amplitude, double separation);

enum class CorrectionFlag {
    SeriesOutOfRange,        // conductivity series outside its asymptotic domain
    RoughnessPeriodWarning,  // roughness formula assumes period << separation
};

std::string to_string(CorrectionFlag flag);

struct CorrectionReport {
    double conductivity = 1.0;  // factors, multiplied into corrected_pressure
    double roughness = 1.0;
    double corrected_pressure = 0.0;
    std::vector<CorrectionFlag> flags;

    bool has(CorrectionFlag f) const;
};

// Applies both corrections to a base (perfect-conductor) pressure and
// reports the factors plus any domain warnings.  `amplitude` = 0 disables
// the roughness factor; the period of the corrugation is not a parameter
// of the lowest-order formula, hence the blanket warning whenever it is
// used at all.
CorrectionReport apply_corrections(double base_pressure, double lambda_p,
                                   double separation, int order,
                                   double amplitude);

}  // namespace casimir
