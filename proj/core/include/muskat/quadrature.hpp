// Small numerical helpers shared by the variational suite: adaptive Simpson
// quadrature with an error estimate, and Richardson-extrapolated central
// differences for derivative checks.
#pragma once

#include <functional>

namespace muskat {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // accumulated local error estimate (abs)
};

/// Adaptive Simpson on [a, b].  tol is an absolute tolerance; the returned
/// error field is the sum of the accepted panels' |S2 - S1| / 15 estimates.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-10, int max_depth = 48);

/// Integrate f over [a, inf) by mapping y = a/w (a > 0) or y = a + (1-w)/w
/// onto (0, 1]; f must decay at least like y^-2.
QuadResult integrate_to_infinity(const std::function<double(double)>& f,
                                 double a, double tol = 1e-10);

/// Central difference with one Richardson step: error O(h^4).
double central_derivative(const std::function<double(double)>& f, double x,
                          double h = 1e-3);

}  // namespace muskat
