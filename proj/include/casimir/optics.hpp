#pragma once

#include "casimir/quadrature.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace casimir::optics {

struct TableRow {
    double omega;    // rad/s, > 0
    double eps_real; // informational; only eps_imag enters the imaginary-axis integral
    double eps_imag; // >= 0
};

// Validated absorption data, strictly increasing in omega, at least two rows.
// Between rows eps'' is interpolated log-log (linear when a zero endpoint
// makes the logarithm unusable).
class OpticalTable {
  public:
    explicit OpticalTable(std::vector<TableRow> rows);

    const std::vector<TableRow>& rows() const { return rows_; }
    double omega_min() const { return rows_.front().omega; }
    double omega_max() const { return rows_.back().omega; }

    // Interpolated eps''(omega); omega must lie within [omega_min, omega_max].
    double eps_imag_at(double omega) const;

  private:
    std::vector<TableRow> rows_;
    struct Segment {
        bool loglog;
        double slope; // d ln eps'' / d ln omega   (log-log)
    };
    std::vector<Segment> segs_;
};

// Accepted CSV headers:
//   omega_rad_s,eps_real,eps_imag
//   energy_ev,eps_real,eps_imag
//   energy_ev,n,k              (eps = (n+ik)^2)
// '#' lines are comments; rows are sorted by omega before validation.
OpticalTable load_table(std::istream& in);
OpticalTable load_table_file(const std::string& path); // IoError if unreadable

// eps''(x) = omega_p^2 gamma / (x (x^2 + gamma^2)) below the table.
struct DrudeTail {
    double omega_p; // rad/s, > 0
    double gamma;   // rad/s, > 0
};

// eps''(x) = eps''(omega_max) (omega_max/x)^exponent above the table.
struct PowerTail {
    double exponent = 3.0; // >= 2
};

// Fit (omega_p, gamma) so the Drude form passes through the two lowest rows.
// ValidationError when the rows do not admit a Drude shape.
DrudeTail fit_drude_tail(const OpticalTable& table);

struct PerfectConductor {};
struct Vacuum {};
struct Constant {
    double eps; // >= 1
};
struct Plasma {
    double omega_p; // rad/s, > 0
};
struct Drude {
    double omega_p; // rad/s, > 0
    double gamma;   // rad/s, > 0
};
struct Tabulated {
    OpticalTable table;
    DrudeTail low_tail;
    PowerTail high_tail;
};

// Closed set of dielectric-response descriptions used throughout the toolkit.
// Construction validates parameters; Tabulated additionally requires the low
// tail to agree with the first table row within 20% at the splice.
class PermittivityModel {
  public:
    using Storage =
        std::variant<PerfectConductor, Vacuum, Constant, Plasma, Drude, Tabulated>;

    static PermittivityModel perfect_conductor();
    static PermittivityModel vacuum();
    static PermittivityModel constant(double eps);
    static PermittivityModel plasma(double omega_p);
    static PermittivityModel drude(double omega_p, double gamma);
    static PermittivityModel tabulated(OpticalTable table, DrudeTail low, PowerTail high = {});
    // Low tail fitted to the two lowest rows.
    static PermittivityModel tabulated(OpticalTable table, PowerTail high = {});

    bool is_perfect_conductor() const;
    bool is_vacuum() const;
    const Storage& storage() const { return v_; }

    std::string describe() const;

  private:
    explicit PermittivityModel(Storage v) : v_(std::move(v)) {}
    Storage v_;
};

struct KkResult {
    double xi;  // rad/s
    double eps; // eps(i xi) >= 1
    double err; // quadrature part of the uncertainty (zero for closed forms)
};

// Dispersion-integral continuation of eps'' to the imaginary frequency axis,
//   eps(i xi) = 1 + (2/pi) integral_0^inf x eps''(x) / (x^2 + xi^2) dx,
// with closed forms for the analytic models and tails.  xi must be > 0;
// PerfectConductor is rejected (UnsupportedModel).
KkResult eps_imag_axis(const PermittivityModel& model, double xi,
                       const QuadratureSpec& quad = {});

double plasma_wavelength(double omega_p); // 2 pi c / omega_p

// Per-run memo of eps(i xi).  Reuse inside a force integral never changes
// values: entries are keyed by the exact xi bit pattern.
class EpsCache {
  public:
    EpsCache(const PermittivityModel& model, QuadratureSpec quad);
    double operator()(double xi);
    double max_err() const { return max_err_; }

  private:
    const PermittivityModel& model_;
    QuadratureSpec quad_;
    std::map<double, double> memo_;
    double max_err_ = 0.0;
};

struct KkCurvePoint {
    double xi, eps, err;
};

enum class Execution { Serial, Parallel };

// eps(i xi) over a grid; Parallel evaluates grid points concurrently with
// output order matching input order and values bit-identical to Serial.
std::vector<KkCurvePoint> kk_curve(const PermittivityModel& model,
                                   const std::vector<double>& xi_grid,
                                   const QuadratureSpec& quad,
                                   Execution ex = Execution::Parallel);

} // namespace casimir::optics
