// Closed-form kernels, decay rates, and antiderivatives used by the contour
// solver and the variational verification suite.  Everything here is a pure
// function of its arguments; pole inputs throw instead of returning inf.
#pragma once

#include <stdexcept>

namespace muskat {

/// Slope bound a together with the derived combination A = 1/a - a.
/// A is computed once in the constructor so that every kernel sees the same
/// value.
struct SlopeParam {
    double a;
    double A;

    explicit SlopeParam(double a_) : a(a_), A(1.0 / a_ - a_) {
        if (!(a_ > 0.0) || !(a_ <= 1.0))
            throw std::invalid_argument("SlopeParam: a must lie in (0, 1]");
    }
};

/// One sigma-branch of the contour integrand,
///   y (f_x(x) + sigma f_x(x-y)) / (y^2 + (f(x) + sigma f(x-y))^2).
/// Returns 0 at y = 0 by convention; the analytic y->0 limit is the caller's
/// responsibility (the evolution layer owns that rule).
double integrand_pair(double y, double fx0, double fxy, double f0, double fy,
                      int sigma);

/// h_a(y, r) = (y^2 - r^2 - A y r) / (y^2 + r^2)^2.  Pole at (0, 0).
double h_kernel(const SlopeParam& p, double y, double r);

/// g(s) = (2 s^3 + 3 A s^2 - 6 s - A) / (1 + s^2)^3, the radial derivative
/// kernel of h: d/dr h(y, r) = g(r/y) / y^3.
double g_fun(const SlopeParam& p, double s);

/// Sign-definite dissipation rate
///   lambda(a, b, c) = (a+b)^2 (a-b)^2 / (2 [c^2+(a+b)^2][c^2+(a-b)^2]).
/// Heights must be nonnegative; the all-zero corner returns 0 (the limit
/// enforced by the vanishing numerator), not an error.
double lambda_rate(double height_a, double height_b, double offset);

/// Variant with denominator [c^2 + 2a^2 + 2b^2][c^2 + (a-b)^2]; dominates
/// lambda_rate pointwise for nonnegative heights.
double tilde_lambda_rate(double height_a, double height_b, double offset);

/// Periodized Cauchy-type kernel: the image sum
///   sum_n (y + n nu) / ((y + n nu)^2 + d^2)
/// in closed form, (pi/nu) sin(2 pi y/nu) / (cosh(2 pi d/nu) - cos(2 pi y/nu)).
/// The sum converges only as a symmetric limit; the closed form encodes that.
/// Pole when y = 0 (mod nu) and d = 0 simultaneously.
double periodized_kernel(double y, double d, double nu);

/// Periodized flux kernel: sum_n arctan(d / (y + n nu)) in closed form,
///   atan2(cos(pi y/nu) sinh(pi d/nu), sin(pi y/nu) cosh(pi d/nu)),
/// valid for y in (0, nu).  Its d-derivative is periodized_kernel.
double periodized_flux_kernel(double y, double d, double nu);

/// Antiderivatives of h along the two slope-a rays:
/// d/dy G_plus(B, y) = h(y, B + a y) and d/dy G_minus(B, y) = h(y, B - a y).
double G_plus(const SlopeParam& p, double B, double y);
double G_minus(const SlopeParam& p, double B, double y);

/// B-derivatives of the ray antiderivatives (closed forms).
double dB_G_plus(const SlopeParam& p, double B, double y);
double dB_G_minus(const SlopeParam& p, double B, double y);

/// Integral of arctan from 0 to s: s arctan s - ln sqrt(1 + s^2).  Even in s.
double arctan_primitive(double s);

/// Antiderivative in w of arctan(c / w):
///   w arctan(c/w) + (c/2) ln(w^2 + c^2),
/// continuous through w = 0.  Used for the exact far-field tails of the
/// non-periodic flux assembly.
double arctan_flux_primitive(double w, double c);

}  // namespace muskat
