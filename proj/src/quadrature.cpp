#include "casimir/quadrature.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace casimir {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw DomainError("QuadratureSpec: rel_tol must be positive");
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol))
        throw DomainError("QuadratureSpec: abs_tol must be non-negative");
    if (max_subdivisions < 16)
        throw DomainError("QuadratureSpec: max_subdivisions must be at least 16");
    if (!(xi_cutoff_factor >= 20.0))
        throw DomainError("QuadratureSpec: xi_cutoff_factor must be at least 20");
    if (!(p_cutoff >= 10.0))
        throw DomainError("QuadratureSpec: p_cutoff must be at least 10");
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
// Odd-index abscissae are the Gauss nodes.
constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
};
constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278,
};
constexpr double wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
};

struct Panel {
    double a, b, value, err;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double hw = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double fv[15];
    const double fc = f(mid);
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        fv[2 * j] = f(mid - hw * xgk[j]);
        fv[2 * j + 1] = f(mid + hw * xgk[j]);
    }
    for (double v : fv)
        if (!std::isfinite(v))
            throw ValidationError("quadrature: integrand returned a non-finite value");

    double resg = wg[3] * fc;
    double resk = wgk[7] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[2 * j] + fv[2 * j + 1];
        resk += wgk[j] * sum;
        resabs += wgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
        if (j % 2 == 1)
            resg += wg[j / 2] * sum;
    }

    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));

    resabs *= std::abs(hw);
    resasc *= std::abs(hw);
    double err = std::abs((resk - resg) * hw);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);

    return {a, b, resk * hw, err};
}

} // namespace

QuadResult gk15(const std::function<double(double)>& f, double a, double b) {
    const Panel p = eval_panel(f, a, b);
    return {p.value, p.err, 15, true};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              std::vector<double> breakpoints,
                              double rel_tol, double abs_tol,
                              int max_subdivisions) {
    if (breakpoints.size() < 2)
        throw DomainError("integrate_adaptive: need at least two breakpoints");
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    if (breakpoints.size() < 2)
        throw DomainError("integrate_adaptive: degenerate interval");

    std::vector<Panel> panels;
    panels.reserve(breakpoints.size() + static_cast<size_t>(max_subdivisions));
    long evals = 0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        panels.push_back(eval_panel(f, breakpoints[i], breakpoints[i + 1]));
        evals += 15;
    }

    auto totals = [&panels](double& val, double& err) {
        val = 0.0;
        err = 0.0;
        for (const Panel& p : panels) {
            val += p.value;
            err += p.err;
        }
    };

    double val, err;
    totals(val, err);
    int splits = 0;
    while (err > std::max(abs_tol, rel_tol * std::abs(val))) {
        if (splits >= max_subdivisions)
            return {val, err, evals, false};

        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err)
                worst = i;

        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b))
            return {val, err, evals, false}; // interval exhausted at machine precision

        panels[worst] = eval_panel(f, p.a, mid);
        panels.insert(panels.begin() + static_cast<long>(worst) + 1, eval_panel(f, mid, p.b));
        evals += 30;
        ++splits;
        totals(val, err);
    }
    return {val, err, evals, true};
}

} // namespace casimir
