// Uniform-grid representation of the interface height together with the
// differentiation, norm, and seminorm helpers the rest of the code needs.
//
// The numerical kernels (derivatives, norms, Hoelder quotient) are exposed as
// free functions on raw sample arrays so they can be exercised on data that
// deliberately violates the profile invariants; InterfaceProfile wraps them
// behind the validated type.
#pragma once

#include <span>
#include <vector>

#include "muskat/domain.hpp"

namespace muskat {

class InterfaceProfile {
  public:
    InterfaceProfile(DomainSpec domain, std::vector<double> samples);

    const DomainSpec& domain() const { return domain_; }
    int size() const { return static_cast<int>(samples_.size()); }
    double dx() const { return dx_; }
    double x(int i) const { return domain_.origin() + i * dx_; }
    const std::vector<double>& samples() const { return samples_; }
    double operator[](int i) const { return samples_[i]; }

  private:
    DomainSpec domain_;
    std::vector<double> samples_;
    double dx_;
};

// -- raw-array numerics ------------------------------------------------------

/// Derivative of order 1, 2 or 3.  Periodic mode: FFT spectral differentiation
/// (annihilates constants exactly; the mean is removed before transforming).
/// Non-periodic mode: 4th-order centered differences with constant extension
/// beyond the grid.  Requires n >= 8.
std::vector<double> derivative_raw(std::span<const double> f, double dx,
                                   bool periodic, int order);

double max_abs(std::span<const double> f);
double max_of(std::span<const double> f);
double min_of(std::span<const double> f);

/// Trapezoid integral of (f - base) over the grid.  Periodic mode wraps; the
/// asymptotic grid gets a virtual right endpoint equal to base.
double integral_raw(std::span<const double> f, double dx, bool periodic,
                    double base);
double integral_sq_raw(std::span<const double> f, double dx, bool periodic,
                       double base);

/// Hoelder quotient sup |g(x_i)-g(x_j)| / dist^gamma over pairs with
/// dist >= dx (periodic mode uses the wrapped distance).
double holder_quotient_raw(std::span<const double> g, double dx, double extent,
                           bool periodic, double gamma);

// -- profile-level operations ------------------------------------------------

std::vector<double> derivative(const InterfaceProfile& p, int order);

double max_slope(const InterfaceProfile& p);
double sup_norm(const InterfaceProfile& p);
double min_height(const InterfaceProfile& p);

/// Integral of f over one period (periodic) or of f - psi_inf (asymptotic).
double l1_mass(const InterfaceProfile& p);
/// Integral of f^2 over one period (periodic) or of (f - psi_inf)^2.
double l2_energy(const InterfaceProfile& p);

/// Hoelder seminorm of f_xx at exponent gamma_prime in (0, 1].
double holder_seminorm_fxx(const InterfaceProfile& p, double gamma_prime);

}  // namespace muskat
