#include "casimir/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::spectral {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

void require_samples(int samples) {
    if (samples < 64)
        throw ValidationError("Contour: need at least 64 samples");
}

} // namespace

Contour::Contour(Circle c, int samples) : samples_(samples) {
    require_samples(samples);
    if (!(c.radius > 0.0) || !std::isfinite(c.radius))
        throw DomainError("Contour: circle radius must be > 0");
    Arc a;
    a.center_or_a = c.center;
    a.radius_or_b = {c.radius, 0.0};
    a.t0 = 0.0;
    a.t1 = 2.0 * kPi;
    a.is_arc = true;
    a.len = 2.0 * kPi * c.radius;
    pieces_.push_back(a);
    periodic_ = true;
    length_ = a.len;
    scale_ = c.radius;
}

Contour::Contour(Rectangle r, int samples) : samples_(samples) {
    require_samples(samples);
    const double x0 = std::min(r.corner_a.real(), r.corner_b.real());
    const double x1 = std::max(r.corner_a.real(), r.corner_b.real());
    const double y0 = std::min(r.corner_a.imag(), r.corner_b.imag());
    const double y1 = std::max(r.corner_a.imag(), r.corner_b.imag());
    if (!(x1 > x0) || !(y1 > y0))
        throw DomainError("Contour: rectangle corners must span both axes");
    const Complex corners[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    for (int i = 0; i < 4; ++i) {
        Arc a;
        a.center_or_a = corners[i];
        a.radius_or_b = corners[(i + 1) % 4];
        a.len = std::abs(a.radius_or_b - a.center_or_a);
        pieces_.push_back(a);
        length_ += a.len;
    }
    scale_ = std::max(x1 - x0, y1 - y0);
}

Contour::Contour(RightHalfPlaneSemicircle s, int samples) : samples_(samples) {
    require_samples(samples);
    if (!(s.radius > 0.0) || !std::isfinite(s.radius))
        throw DomainError("Contour: semicircle radius must be > 0");
    // Counterclockwise: down the vertical diameter, back along the arc.
    Arc seg;
    seg.center_or_a = {s.axis_offset, s.radius};
    seg.radius_or_b = {s.axis_offset, -s.radius};
    seg.len = 2.0 * s.radius;
    pieces_.push_back(seg);
    Arc arc;
    arc.center_or_a = {s.axis_offset, 0.0};
    arc.radius_or_b = {s.radius, 0.0};
    arc.t0 = -0.5 * kPi;
    arc.t1 = 0.5 * kPi;
    arc.is_arc = true;
    arc.len = kPi * s.radius;
    pieces_.push_back(arc);
    length_ = seg.len + arc.len;
    scale_ = s.radius;
}

void Contour::nodes(int n, std::vector<Complex>& z,
                    std::vector<Complex>& w) const {
    z.clear();
    w.clear();
    if (periodic_) {
        const Arc& a = pieces_[0];
        const double r = a.radius_or_b.real();
        const double span = a.t1 - a.t0;
        for (int j = 0; j < n; ++j) {
            const double th = a.t0 + span * j / n;
            const Complex e = std::polar(r, th);
            z.push_back(a.center_or_a + e);
            w.push_back(kI * e * (span / n));
        }
        return;
    }
    for (const Arc& a : pieces_) {
        const int m = std::max<int>(
            8, static_cast<int>(std::llround(n * a.len / length_)));
        if (a.is_arc) {
            const double r = a.radius_or_b.real();
            const double dth = (a.t1 - a.t0) / m;
            for (int k = 0; k <= m; ++k) {
                const double th = a.t0 + dth * k;
                const Complex e = std::polar(r, th);
                z.push_back(a.center_or_a + e);
                w.push_back(kI * e * dth * ((k == 0 || k == m) ? 0.5 : 1.0));
            }
        } else {
            const Complex dz = (a.radius_or_b - a.center_or_a) / double(m);
            for (int k = 0; k <= m; ++k) {
                z.push_back(a.center_or_a +
                            (a.radius_or_b - a.center_or_a) * (double(k) / m));
                w.push_back(dz * ((k == 0 || k == m) ? 0.5 : 1.0));
            }
        }
    }
}

AnalyticFn::AnalyticFn(Fn f) : f_(std::move(f)) {
    if (!f_)
        throw ValidationError("AnalyticFn: empty function");
}

AnalyticFn::AnalyticFn(Fn f, Fn derivative)
    : f_(std::move(f)), df_(std::move(derivative)) {
    if (!f_ || !df_)
        throw ValidationError("AnalyticFn: empty function");
}

AnalyticFn AnalyticFn::from_real_coeffs(std::vector<double> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0.0)
        coeffs.pop_back();
    if (coeffs.empty())
        throw ValidationError("from_real_coeffs: the zero polynomial has no "
                              "log-derivative");
    std::vector<double> dcoeffs;
    for (size_t k = 1; k < coeffs.size(); ++k)
        dcoeffs.push_back(coeffs[k] * double(k));
    auto horner = [](const std::vector<double>& c, Complex z) {
        Complex acc(0.0, 0.0);
        for (size_t i = c.size(); i-- > 0;)
            acc = acc * z + c[i];
        return acc;
    };
    AnalyticFn fn([coeffs, horner](Complex z) { return horner(coeffs, z); },
                  [dcoeffs, horner](Complex z) {
                      if (dcoeffs.empty())
                          return Complex(0.0, 0.0);
                      return horner(dcoeffs, z);
                  });
    return fn;
}

AnalyticFn AnalyticFn::from_roots(std::vector<Complex> zeros,
                                  std::vector<Complex> poles) {
    auto prod = [](const std::vector<Complex>& roots, Complex z) {
        Complex p(1.0, 0.0);
        for (const Complex& r : roots)
            p *= z - r;
        return p;
    };
    // derivative of a product: sum over terms with one factor dropped
    auto dprod = [](const std::vector<Complex>& roots, Complex z) {
        Complex s(0.0, 0.0);
        for (size_t i = 0; i < roots.size(); ++i) {
            Complex t(1.0, 0.0);
            for (size_t j = 0; j < roots.size(); ++j)
                if (j != i)
                    t *= z - roots[j];
            s += t;
        }
        return s;
    };
    auto f = [zeros, poles, prod](Complex z) {
        return prod(zeros, z) / prod(poles, z);
    };
    auto df = [zeros, poles, prod, dprod](Complex z) {
        const Complex n = prod(zeros, z), dn = dprod(zeros, z);
        const Complex d = prod(poles, z), dd = dprod(poles, z);
        return (dn * d - n * dd) / (d * d);
    };
    AnalyticFn fn{Fn(f), Fn(df)};
    fn.zeros_ = std::move(zeros);
    fn.poles_ = std::move(poles);
    return fn;
}

Complex AnalyticFn::log_derivative(Complex z, double fd_scale) const {
    if (df_)
        return df_(z) / f_(z);
    const double h = 1e-6 * fd_scale;
    return (f_(z + h) - f_(z - h)) / (2.0 * h * f_(z));
}

namespace {

struct Sweep {
    Complex integral;
    double min_abs_f = std::numeric_limits<double>::infinity();
    double max_logder = 0.0;
};

Sweep sweep(const AnalyticFn& f, const Contour& contour, int n,
            bool weight_z) {
    std::vector<Complex> z, w;
    contour.nodes(n, z, w);
    Sweep s;
    Complex acc(0.0, 0.0);
    for (size_t i = 0; i < z.size(); ++i) {
        const Complex fz = f(z[i]);
        const double af = std::abs(fz);
        if (!std::isfinite(af) || af == 0.0)
            throw ContourTooClose("contour hits a zero or pole at z = (" +
                                  num_str(z[i].real()) + ", " +
                                  num_str(z[i].imag()) + ")");
        s.min_abs_f = std::min(s.min_abs_f, af);
        const Complex ld = f.log_derivative(z[i], contour.scale());
        s.max_logder = std::max(s.max_logder, std::abs(ld));
        acc += w[i] * ld * (weight_z ? z[i] : Complex(1.0, 0.0));
    }
    s.integral = acc;
    return s;
}

// A zero/pole within a few node spacings of the path makes |f'/f| ~ 1/dist
// comparable to 1/spacing and the quadrature meaningless.
void check_distance(const Sweep& s, const Contour& contour, int n) {
    const double spacing = contour.length() / n;
    if (s.max_logder * spacing > 0.5)
        throw ContourTooClose(
            "a zero or pole sits within ~" + num_str(2.0 * spacing) +
            " of the contour (|f'/f| reaches " +
            num_str(s.max_logder) + ")");
}

} // namespace

CountResult count_zeros_poles(const AnalyticFn& f, const Contour& contour) {
    const int n = contour.samples();
    const Sweep s1 = sweep(f, contour, n, false);
    const Sweep s2 = sweep(f, contour, 2 * n, false);
    check_distance(s2, contour, 2 * n);
    const Complex val = s2.integral / (2.0 * kPi * kI);
    const double doubling = std::abs(s2.integral - s1.integral) / (2.0 * kPi);
    const long nearest = std::lround(val.real());
    const double off = std::abs(val - Complex(double(nearest), 0.0));
    if (off > 1e-3)
        throw NonIntegerResult("winding number " + num_str(val.real()) +
                               " + " + num_str(val.imag()) +
                               "i is not close to an integer");
    return {static_cast<int>(nearest), std::max(off, doubling)};
}

SumResult sum_zeros_poles(const AnalyticFn& f, const Contour& contour) {
    const int n = contour.samples();
    const Sweep s1 = sweep(f, contour, n, true);
    const Sweep s2 = sweep(f, contour, 2 * n, true);
    check_distance(s2, contour, 2 * n);
    return {s2.integral / (2.0 * kPi * kI),
            std::abs(s2.integral - s1.integral) / (2.0 * kPi)};
}

RealnessReport verify_realness(const AnalyticFn& f, const Contour& contour) {
    // Symmetry spot checks on a sparse subset of the nodes, off the real
    // axis where conjugation actually probes something.
    std::vector<Complex> z, w;
    contour.nodes(64, z, w);
    int checked = 0;
    for (size_t i = 0; i < z.size() && checked < 16; i += 5) {
        if (std::abs(z[i].imag()) < 1e-12 * (contour.scale() + 1.0))
            continue;
        const Complex a = f(std::conj(z[i]));
        const Complex b = std::conj(f(z[i]));
        if (std::abs(a - b) > 1e-8 * (std::abs(b) + 1e-300))
            throw SymmetryViolation(
                "f(conj z) != conj f(z) at z = (" +
                num_str(z[i].real()) + ", " +
                num_str(z[i].imag()) + "); zero-sum realness needs "
                "conjugate symmetry");
        ++checked;
    }
    const SumResult s = sum_zeros_poles(f, contour);
    RealnessReport rep;
    rep.sum = s.sum;
    rep.imag_magnitude = std::abs(s.sum.imag());
    rep.real_within_tol =
        rep.imag_magnitude < 1e-8 * std::abs(s.sum.real()) + 1e-12;
    return rep;
}

} // namespace casimir::spectral
