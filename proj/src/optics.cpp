#include "casimir/optics.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

namespace casimir::optics {

namespace {
constexpr double pi = std::numbers::pi;
}

OpticalTable::OpticalTable(std::vector<TableRow> rows) : rows_(std::move(rows)) {
    if (rows_.size() < 2)
        throw ValidationError("optical table: need at least two rows");
    for (const TableRow& r : rows_) {
        if (!(r.omega > 0.0) || !std::isfinite(r.omega))
            throw ValidationError("optical table: omega must be positive and finite");
        if (!(r.eps_imag >= 0.0) || !std::isfinite(r.eps_imag))
            throw ValidationError("optical table: eps_imag must be non-negative");
        if (!std::isfinite(r.eps_real))
            throw ValidationError("optical table: eps_real must be finite");
    }
    for (size_t i = 0; i + 1 < rows_.size(); ++i)
        if (!(rows_[i].omega < rows_[i + 1].omega))
            throw ValidationError("optical table: rows must be strictly increasing in omega");

    segs_.resize(rows_.size() - 1);
    for (size_t i = 0; i + 1 < rows_.size(); ++i) {
        const TableRow& lo = rows_[i];
        const TableRow& hi = rows_[i + 1];
        if (lo.eps_imag > 0.0 && hi.eps_imag > 0.0) {
            segs_[i].loglog = true;
            segs_[i].slope = std::log(hi.eps_imag / lo.eps_imag) / std::log(hi.omega / lo.omega);
        } else {
            segs_[i].loglog = false;
            segs_[i].slope = 0.0;
        }
    }
}

double OpticalTable::eps_imag_at(double omega) const {
    if (!(omega >= omega_min() && omega <= omega_max()))
        throw DomainError("optical table: omega outside tabulated range");
    const auto it = std::upper_bound(rows_.begin(), rows_.end(), omega,
                                     [](double w, const TableRow& r) { return w < r.omega; });
    size_t i = static_cast<size_t>(it - rows_.begin());
    i = (i == 0) ? 0 : i - 1;
    if (i >= segs_.size())
        i = segs_.size() - 1;
    const TableRow& lo = rows_[i];
    const TableRow& hi = rows_[i + 1];
    if (segs_[i].loglog)
        return lo.eps_imag * std::exp(segs_[i].slope * std::log(omega / lo.omega));
    const double t = (omega - lo.omega) / (hi.omega - lo.omega);
    return lo.eps_imag + t * (hi.eps_imag - lo.eps_imag);
}

namespace {

enum class TableFormat { OmegaEps, EnergyEvEps, EnergyEvNk };

std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, long line_no) {
    const std::string t = trim(tok);
    double out = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [p, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || p != last)
        throw ParseError("table: '" + t + "' is not a number", line_no);
    return out;
}

} // namespace

OpticalTable load_table(std::istream& in) {
    std::string line;
    long line_no = 0;
    bool have_header = false;
    TableFormat fmt = TableFormat::OmegaEps;
    std::vector<TableRow> rows;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#')
            continue;
        if (!have_header) {
            if (s == "omega_rad_s,eps_real,eps_imag")
                fmt = TableFormat::OmegaEps;
            else if (s == "energy_ev,eps_real,eps_imag")
                fmt = TableFormat::EnergyEvEps;
            else if (s == "energy_ev,n,k")
                fmt = TableFormat::EnergyEvNk;
            else
                throw ParseError("table: unrecognized header '" + s + "'", line_no);
            have_header = true;
            continue;
        }
        std::string tok;
        std::vector<double> cols;
        std::stringstream ss(s);
        while (std::getline(ss, tok, ','))
            cols.push_back(parse_double(tok, line_no));
        if (cols.size() != 3)
            throw ParseError("table: expected 3 comma-separated columns", line_no);

        TableRow r{};
        switch (fmt) {
        case TableFormat::OmegaEps:
            r = {cols[0], cols[1], cols[2]};
            break;
        case TableFormat::EnergyEvEps:
            r = {cols[0] * ev_to_rad_s, cols[1], cols[2]};
            break;
        case TableFormat::EnergyEvNk: {
            const double n = cols[1], k = cols[2];
            r = {cols[0] * ev_to_rad_s, n * n - k * k, 2.0 * n * k};
            break;
        }
        }
        rows.push_back(r);
    }
    if (!have_header)
        throw ParseError("table: empty input (missing header)", line_no);

    std::sort(rows.begin(), rows.end(),
              [](const TableRow& a, const TableRow& b) { return a.omega < b.omega; });
    return OpticalTable(std::move(rows)); // duplicate omegas rejected here
}

OpticalTable load_table_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open table file: " + path);
    return load_table(f);
}

namespace {

double drude_eps_imag(const DrudeTail& t, double x) {
    return t.omega_p * t.omega_p * t.gamma / (x * (x * x + t.gamma * t.gamma));
}

void check_splice(const OpticalTable& table, const DrudeTail& low) {
    const double table_val = table.rows().front().eps_imag;
    const double tail_val = drude_eps_imag(low, table.omega_min());
    if (table_val <= 0.0)
        throw ValidationError("tabulated model: first row has eps_imag=0, no Drude tail can match;"
                              " trim the table or supply different tail parameters");
    if (std::abs(tail_val / table_val - 1.0) > 0.2)
        throw ValidationError("tabulated model: low tail disagrees with the first table row by"
                              " more than 20% at the splice");
}

} // namespace

DrudeTail fit_drude_tail(const OpticalTable& table) {
    // Two-point Drude solve: with A = eps''_1 w_1 and B = eps''_2 w_2,
    //   gamma^2 = (A w1^2 - B w2^2) / (B - A),  omega_p^2 = A (w1^2+gamma^2)/gamma.
    const TableRow& r1 = table.rows()[0];
    const TableRow& r2 = table.rows()[1];
    if (r1.eps_imag <= 0.0 || r2.eps_imag <= 0.0)
        throw ValidationError("low tail fit: lowest rows must have positive eps_imag;"
                              " supply tail parameters explicitly");
    const double A = r1.eps_imag * r1.omega;
    const double B = r2.eps_imag * r2.omega;
    const double num = A * r1.omega * r1.omega - B * r2.omega * r2.omega;
    const double den = B - A;
    const double g2 = num / den;
    if (!(g2 > 0.0) || !std::isfinite(g2))
        throw ValidationError("low tail fit: lowest rows do not follow a Drude shape;"
                              " supply tail parameters explicitly");
    const double gamma = std::sqrt(g2);
    const double wp2 = A * (r1.omega * r1.omega + g2) / gamma;
    return {std::sqrt(wp2), gamma};
}

PermittivityModel PermittivityModel::perfect_conductor() {
    return PermittivityModel{PerfectConductor{}};
}

PermittivityModel PermittivityModel::vacuum() { return PermittivityModel{Vacuum{}}; }

PermittivityModel PermittivityModel::constant(double eps) {
    if (!(eps >= 1.0) || !std::isfinite(eps))
        throw DomainError("constant model: eps must be >= 1 and finite");
    return PermittivityModel{Constant{eps}};
}

PermittivityModel PermittivityModel::plasma(double omega_p) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
        throw DomainError("plasma model: omega_p must be positive");
    return PermittivityModel{Plasma{omega_p}};
}

PermittivityModel PermittivityModel::drude(double omega_p, double gamma) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
        throw DomainError("drude model: omega_p must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw DomainError("drude model: gamma must be positive");
    return PermittivityModel{Drude{omega_p, gamma}};
}

PermittivityModel PermittivityModel::tabulated(OpticalTable table, DrudeTail low, PowerTail high) {
    if (!(low.omega_p > 0.0) || !(low.gamma > 0.0))
        throw DomainError("tabulated model: low tail parameters must be positive");
    if (!(high.exponent >= 2.0))
        throw DomainError("tabulated model: high tail exponent must be >= 2");
    check_splice(table, low);
    return PermittivityModel{Tabulated{std::move(table), low, high}};
}

PermittivityModel PermittivityModel::tabulated(OpticalTable table, PowerTail high) {
    const DrudeTail low = fit_drude_tail(table);
    return tabulated(std::move(table), low, high);
}

bool PermittivityModel::is_perfect_conductor() const {
    return std::holds_alternative<PerfectConductor>(v_);
}

bool PermittivityModel::is_vacuum() const { return std::holds_alternative<Vacuum>(v_); }

std::string PermittivityModel::describe() const {
    struct V {
        std::string operator()(const PerfectConductor&) const { return "perfect conductor"; }
        std::string operator()(const Vacuum&) const { return "vacuum"; }
        std::string operator()(const Constant& m) const {
            return "constant eps=" + num_str(m.eps);
        }
        std::string operator()(const Plasma& m) const {
            return "plasma omega_p=" + num_str(m.omega_p) + " rad/s";
        }
        std::string operator()(const Drude& m) const {
            return "drude omega_p=" + num_str(m.omega_p) +
                   " gamma=" + num_str(m.gamma) + " rad/s";
        }
        std::string operator()(const Tabulated& m) const {
            return "tabulated (" + std::to_string(m.table.rows().size()) + " rows, " +
                   num_str(m.table.omega_min()) + ".." +
                   num_str(m.table.omega_max()) + " rad/s)";
        }
    };
    return std::visit(V{}, v_);
}

namespace {

// integral_0^W  wp^2 g dx / ((x^2+g^2)(x^2+xi^2)),  the low-tail piece of the
// dispersion integral, in closed form.
double low_tail_integral(const DrudeTail& t, double W, double xi) {
    const double g = t.gamma;
    const double wp2 = t.omega_p * t.omega_p;
    if (std::abs(xi - g) <= 1e-8 * g) {
        // integral dx/(x^2+g^2)^2 = x/(2g^2(x^2+g^2)) + atan(x/g)/(2g^3)
        return wp2 * g * (W / (2.0 * g * g * (W * W + g * g)) + std::atan(W / g) / (2.0 * g * g * g));
    }
    return wp2 * g / (xi * xi - g * g) * (std::atan(W / g) / g - std::atan(W / xi) / xi);
}

// integral_W^inf  C x^{1-p} dx / (x^2+xi^2)  with C = eps''(W) W^p.
double high_tail_integral(const PowerTail& t, double eps_imag_W, double W, double xi,
                          const QuadratureSpec& quad, double& err_out, long& evals_out) {
    const double p = t.exponent;
    const double C = eps_imag_W * std::pow(W, p);
    if (p == 3.0)
        return C / (xi * xi) * (1.0 / W - (pi / 2.0 - std::atan(W / xi)) / xi);
    if (p == 2.0)
        return C / (2.0 * xi * xi) * std::log1p(xi * xi / (W * W));
    // x = W/t maps the range onto (0,1]; the transformed integrand is smooth.
    auto f = [&](double u) {
        return C * std::pow(W, 2.0 - p) * std::pow(u, p - 1.0) / (W * W + xi * xi * u * u);
    };
    QuadResult r = integrate_adaptive(f, {0.0, 0.5, 1.0}, quad.rel_tol, 0.0,
                                      quad.max_subdivisions);
    if (!r.converged)
        throw ConvergenceError("high tail integral did not converge");
    err_out += r.err;
    evals_out += r.evals;
    return r.value;
}

} // namespace

KkResult eps_imag_axis(const PermittivityModel& model, double xi, const QuadratureSpec& quad) {
    quad.validate();
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw DomainError("eps_imag_axis: xi must be positive");

    const PermittivityModel::Storage& v = model.storage();
    if (std::holds_alternative<PerfectConductor>(v))
        throw UnsupportedModel("eps_imag_axis: perfect conductor has no finite permittivity;"
                               " treat it as the ideal limit instead");
    if (std::holds_alternative<Vacuum>(v))
        return {xi, 1.0, 0.0};
    if (const auto* m = std::get_if<Constant>(&v))
        return {xi, m->eps, 0.0};
    if (const auto* m = std::get_if<Plasma>(&v))
        return {xi, 1.0 + m->omega_p * m->omega_p / (xi * xi), 0.0};
    if (const auto* m = std::get_if<Drude>(&v))
        return {xi, 1.0 + m->omega_p * m->omega_p / (xi * (xi + m->gamma)), 0.0};

    const Tabulated& tab = std::get<Tabulated>(v);
    const OpticalTable& table = tab.table;
    double err = 0.0;
    long evals = 0;

    double acc = low_tail_integral(tab.low_tail, table.omega_min(), xi);

    // Middle: x eps''(x)/(x^2+xi^2) over the tabulated range, panel edges at
    // the rows and at x = xi when it falls inside.
    std::vector<double> bp;
    bp.reserve(table.rows().size() + 1);
    for (const TableRow& r : table.rows())
        bp.push_back(r.omega);
    if (xi > table.omega_min() && xi < table.omega_max())
        bp.push_back(xi);
    auto mid = [&table, xi](double x) {
        return x * table.eps_imag_at(x) / (x * x + xi * xi);
    };
    QuadResult rmid =
        integrate_adaptive(mid, std::move(bp), quad.rel_tol, 0.0, quad.max_subdivisions);
    if (!rmid.converged)
        throw ConvergenceError("dispersion integral over the table did not converge");
    acc += rmid.value;
    err += rmid.err;
    evals += rmid.evals;

    acc += high_tail_integral(tab.high_tail, table.rows().back().eps_imag, table.omega_max(), xi,
                              quad, err, evals);

    return {xi, 1.0 + (2.0 / pi) * acc, (2.0 / pi) * err};
}

double plasma_wavelength(double omega_p) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
        throw DomainError("plasma_wavelength: omega_p must be positive");
    return 2.0 * pi * c_light / omega_p;
}

EpsCache::EpsCache(const PermittivityModel& model, QuadratureSpec quad)
    : model_(model), quad_(quad) {}

double EpsCache::operator()(double xi) {
    const auto it = memo_.find(xi);
    if (it != memo_.end())
        return it->second;
    const KkResult r = eps_imag_axis(model_, xi, quad_);
    max_err_ = std::max(max_err_, r.err);
    memo_.emplace(xi, r.eps);
    return r.eps;
}

std::vector<KkCurvePoint> kk_curve(const PermittivityModel& model,
                                   const std::vector<double>& xi_grid,
                                   const QuadratureSpec& quad, Execution ex) {
    // Reject bad grid values here so the sweep can only fail by
    // non-convergence; the parallel loop rethrows everything as such.
    for (double xi : xi_grid)
        if (!(xi > 0.0) || !std::isfinite(xi))
            throw DomainError("kk_curve: frequencies must be positive");
    std::vector<KkCurvePoint> out(xi_grid.size());
    std::vector<std::string> failures(xi_grid.size());

    const long n = static_cast<long>(xi_grid.size());
#pragma omp parallel for schedule(dynamic) if (ex == Execution::Parallel)
    for (long i = 0; i < n; ++i) {
        try {
            const KkResult r = eps_imag_axis(model, xi_grid[static_cast<size_t>(i)], quad);
            out[static_cast<size_t>(i)] = {r.xi, r.eps, r.err};
        } catch (const std::exception& e) {
            failures[static_cast<size_t>(i)] = e.what();
        }
    }
    std::string msg;
    for (size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            msg += " " + std::to_string(i) + " (" + failures[i] + ")";
    if (!msg.empty())
        throw ConvergenceError("kk_curve: failures at grid indices" + msg);
    return out;
}

} // namespace casimir::optics
