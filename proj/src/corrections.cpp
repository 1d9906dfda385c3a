#include "casimir/corrections.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Largest lambda_p/d at which the two-term series is still asymptotically
// meaningful; beyond this the quadratic term rivals the linear one.
constexpr double kSeriesDomain = 0.3;
}  // namespace

double conductivity_factor(double lambda_p, double separation, int order) {
    if (!(lambda_p >= 0.0) || !std::isfinite(lambda_p))
        throw DomainError("conductivity_factor: lambda_p must be >= 0");
    if (!(separation > 0.0) || !std::isfinite(separation))
        throw DomainError("conductivity_factor: separation must be > 0");
    if (order != 1 && order != 2)
        throw DomainError("conductivity_factor: order must be 1 or 2");

    const double x = lambda_p / separation;
    double f = 1.0 - (8.0 / (3.0 * kPi)) * x;
    if (order == 2)
        f += (120.0 / (4.0 * kPi * kPi)) * x * x;
    return f;
}

double roughness_factor(double amplitude, double separation) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw DomainError("roughness_factor: amplitude must be >= 0");
    if (!(separation > 0.0) || !std::isfinite(separation))
        throw DomainError("roughness_factor: separation must be > 0");
    const double x = amplitude / separation;
    return 1.0 + 4.0 * x * x;
}

std::string to_string(CorrectionFlag flag) {
    switch (flag) {
        case CorrectionFlag::SeriesOutOfRange:
            return "series-out-of-range";
        case CorrectionFlag::RoughnessPeriodWarning:
            return "roughness-period-warning";
    }
    return "unknown";
}

bool CorrectionReport::has(CorrectionFlag f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

CorrectionReport apply_corrections(double base_pressure, double lambda_p,
                                   double separation, int order,
                                   double amplitude) {
    CorrectionReport rep;
    rep.conductivity = conductivity_factor(lambda_p, separation, order);
    rep.roughness = roughness_factor(amplitude, separation);
    rep.corrected_pressure = base_pressure * rep.conductivity * rep.roughness;

    const double x = lambda_p / separation;
    if (x > kSeriesDomain || !(rep.conductivity > 0.0) ||
        rep.conductivity > 1.0)
        rep.flags.push_back(CorrectionFlag::SeriesOutOfRange);
    if (amplitude > 0.0)
        rep.flags.push_back(CorrectionFlag::RoughnessPeriodWarning);
    return rep;
}

}  // namespace casimir
