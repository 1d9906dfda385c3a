#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace casimir::spectral {

using Complex = std::complex<double>;

// Closed integration paths, traversed counterclockwise.
struct Circle {
    Complex center;
    double radius;
};
struct Rectangle {
    Complex corner_a; // any two opposite corners
    Complex corner_b;
};
// Boundary of the half-disc {Re z > axis_offset, |z - axis_offset| < radius}:
// the vertical diameter plus the right-hand arc.
struct RightHalfPlaneSemicircle {
    double radius;
    double axis_offset = 0.0;
};

class Contour {
  public:
    explicit Contour(Circle c, int samples = 256);
    explicit Contour(Rectangle r, int samples = 256);
    explicit Contour(RightHalfPlaneSemicircle s, int samples = 256);

    int samples() const { return samples_; }
    double length() const { return length_; }
    // Characteristic size; sets the finite-difference step for derivatives.
    double scale() const { return scale_; }

    // Quadrature nodes z_i and weights w_i such that the contour integral of
    // h is approximately sum w_i h(z_i): the trapezoidal rule, periodic on
    // circles and composite on the straight pieces.  n overrides the stored
    // sample count (used for the doubled-resolution error estimate).
    void nodes(int n, std::vector<Complex>& z, std::vector<Complex>& w) const;

  private:
    struct Arc { // circular arc or straight segment
        Complex center_or_a;
        Complex radius_or_b; // circle: (radius, 0); segment: endpoint b
        double t0 = 0.0, t1 = 0.0; // arc angles; unused for segments
        bool is_arc = false;
        double len = 0.0;
    };
    std::vector<Arc> pieces_;
    bool periodic_ = false; // single smooth closed piece (circle)
    int samples_;
    double length_ = 0.0;
    double scale_ = 0.0;
};

// A function the contour machinery can probe, with an optional exact
// derivative (central differences otherwise) and optional declared roots
// used by test fixtures to state the expected answer.
class AnalyticFn {
  public:
    using Fn = std::function<Complex(Complex)>;

    explicit AnalyticFn(Fn f);
    AnalyticFn(Fn f, Fn derivative);

    // Polynomial with real coefficients, ascending powers.
    static AnalyticFn from_real_coeffs(std::vector<double> coeffs);
    // Rational function built from its zeros and poles (with multiplicity).
    static AnalyticFn from_roots(std::vector<Complex> zeros,
                                 std::vector<Complex> poles = {});

    Complex operator()(Complex z) const { return f_(z); }
    // f'(z)/f(z); fd_scale sets the step (1e-6 * fd_scale) when no
    // derivative was supplied.
    Complex log_derivative(Complex z, double fd_scale) const;

    const std::vector<Complex>& declared_zeros() const { return zeros_; }
    const std::vector<Complex>& declared_poles() const { return poles_; }

  private:
    Fn f_;
    Fn df_;
    std::vector<Complex> zeros_, poles_;
};

// (1/2 pi i) contour integral of f'/f: the number of enclosed zeros minus
// poles, counted with multiplicity.  residual is the distance of the raw
// integral from the returned integer, combined with the change under sample
// doubling; NonIntegerResult if it exceeds 1e-3, ContourTooClose if a
// zero/pole sits within a few node spacings of the path.
struct CountResult {
    int count = 0;
    double residual = 0.0;
};
CountResult count_zeros_poles(const AnalyticFn& f, const Contour& contour);

// (1/2 pi i) contour integral of z f'/f: sum of enclosed zeros minus sum of
// enclosed poles.  residual is the sample-doubling estimate.
struct SumResult {
    Complex sum;
    double residual = 0.0;
};
SumResult sum_zeros_poles(const AnalyticFn& f, const Contour& contour);

// Conjugate-symmetric functions (f(conj z) = conj f(z)) have zeros in
// conjugate pairs, so the zero-sum is real.  Spot-checks the symmetry on the
// contour (SymmetryViolation if it fails), then reports whether the computed
// sum is real to within 1e-8 relative + 1e-12 absolute.
struct RealnessReport {
    Complex sum;
    double imag_magnitude = 0.0;
    bool real_within_tol = false;
};
RealnessReport verify_realness(const AnalyticFn& f, const Contour& contour);

} // namespace casimir::spectral
