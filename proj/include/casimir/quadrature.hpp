#pragma once

#include <functional>
#include <vector>

namespace casimir {

// Tolerances and cutoffs shared by every integral in the toolkit.  The cutoff
// fields only apply to the semi-infinite force integrals: the frequency axis
// is truncated at xi_max = xi_cutoff_factor * c / d and the p integral is
// carried at least to p_cutoff (the decay of the integrand extends the range
// further when needed; see lifshitz.cpp).
struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    int max_subdivisions = 256;
    double xi_cutoff_factor = 30.0;
    double p_cutoff = 20.0;

    void validate() const; // throws DomainError
};

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
    long evals = 0;
    bool converged = true;
};

// One Gauss-Kronrod 7/15 panel on [a,b].  err is the usual QUADPACK estimate
// built from |K15-G7| and the scaled total variation.
QuadResult gk15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive bisection over the panels defined by `breakpoints`
// (ascending, at least two entries).  Deterministic: the worst panel (ties
// broken by position) is split until
//     sum(err) <= max(abs_tol, rel_tol * |sum(value)|)
// or max_subdivisions bisections have been spent, in which case
// converged=false.  The returned value is summed left to right.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              std::vector<double> breakpoints,
                              double rel_tol, double abs_tol,
                              int max_subdivisions);

} // namespace casimir
