// Numerical verification of the variational structure behind the slope
// maximum principle: the kernel functionals H and H+, the extrema pattern of
// the derivative kernel g, the printed integral identities, and direct
// constrained minimization of H+ over the admissible Lipschitz class.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "muskat/kernels.hpp"
#include "muskat/quadrature.hpp"

namespace muskat {

/// Constrained profile on [0, Y]: f(0) = 1, first slope -a, slopes in [-a, a],
/// f >= 0.  Stored as M+1 uniform samples.
struct VariationalCandidate {
    SlopeParam a;
    double Y;
    std::vector<double> samples;  // size M + 1

    VariationalCandidate(SlopeParam a_, double Y_, std::vector<double> samples_);

    int segments() const { return static_cast<int>(samples.size()) - 1; }
    double dy() const { return Y / segments(); }
    double y(int j) const { return j * dy(); }
};

/// Tent profile a |y - 1/a| sampled on M+1 points over [0, Y].
VariationalCandidate tent_candidate(const SlopeParam& a, double Y, int segments);

/// Exact value of H+ at the tent: -(1 - 3a^2) / (4a (1 + a^2)).
double H_plus_tent_exact(const SlopeParam& a);

/// Two-sided functional H(f) = int [h(y, f(0)+f(y)) + h(y, f(0)-f(y))] dy for
/// a callable f, by adaptive quadrature over [-Y, Y] plus closed-form tails
/// obtained by continuing f beyond +-Y at the extreme admissible slopes.
/// Requires f(0) > 0.  quad_error, when given, receives the quadrature error
/// estimate (the tails are exact).
double H_functional(const SlopeParam& a, const std::function<double(double)>& f,
                    double Y, double tol = 1e-9, double* quad_error = nullptr);

/// One-sided discrete functional over [0, Y]: composite Simpson on the sample
/// grid plus the closed-form slope-a tail anchored at f(Y).
double H_plus(const SlopeParam& a, const VariationalCandidate& cand);

/// The four local extrema of g, bracketed and bisected.  Checks the bracket
/// pattern s1 < -1/a < s2 < -a < 0 < s3 < a < s4 and the min/max sign
/// pattern; throws if the root count or pattern is wrong.  a in (0, 3/10].
std::array<double, 4> g_extrema(const SlopeParam& a);

struct InequalityReport {
    bool pass = false;
    int checked = 0;
    double min_margin = 0.0;    // smallest (lhs - rhs) over the grid
    double max_quad_error = 0.0;
    std::string detail;
};

/// Strictness of int_{s0-a}^{s0-b} g > int_b^a g for every sampled pair
/// (b in [-a, a), s0 < 0); the margin must exceed the quadrature error bound.
InequalityReport verify_22_4(const SlopeParam& a,
                             const std::vector<double>& b_samples,
                             const std::vector<double>& s0_samples);

struct TailIntegralResult {
    double quadrature = 0.0;      // direct integral (same normalization as closed)
    double quad_error = 0.0;
    double closed = 0.0;          // dB_G_plus - dB_G_minus combination
    double closed_scaled = 0.0;   // 2a * closed
    double bound = 0.0;           // printed upper bound for the scaled form
};

/// The strictly negative suffix integral of the first-variation analysis:
///   int_p^inf [-g((2-2ap)/y + a) + g(2ap/y - a)] y^-3 dy
/// together with its closed form and the bound -4(1-ap)^2/[p^2+(2-ap)^2]^2.
/// Requires p in (0, 1/a).
TailIntegralResult integral_3_6(const SlopeParam& a, double p);

/// The vanishing suffix integral at the tent vertex:
///   int_{1/a}^inf [-g(a) + g(2/y - a)] y^-3 dy = 0,
/// closed form dB_G_plus(0, 1/a) - dB_G_minus(2, 1/a).
TailIntegralResult integral_3_9(const SlopeParam& a);

struct StartLog {
    std::string name;
    double value = 0.0;
    double sup_dist_tent = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> final_samples;
};

struct MinimizeParams {
    int max_iterations = 200000;
    double stall_tol = 1e-12;   // sup-norm of an accepted move below this stalls
    int probe_positions = 64;   // escape probes tried at a stalled iterate
};

struct MinimizeResult {
    VariationalCandidate best;
    double value = 0.0;
    bool converged = false;
    std::vector<StartLog> starts;
};

/// Projected gradient descent on the sampled profile with projection by
/// cumulative slope clamping, run from >= 5 admissible starts (tent,
/// descend-then-flat, and three distinct re-ascent shapes).  Flat segments are
/// first-order stationary, so a stalled iterate is probed with deterministic
/// admissible perturbations (suffix re-ascents and local raises) and descent
/// resumes whenever a probe strictly lowers the objective.
MinimizeResult minimize_H_plus(const SlopeParam& a, double Y, int segments,
                               const MinimizeParams& params = {});

struct NonnegReport {
    bool pass = false;
    long samples = 0;
    double worst_normalized = 0.0;  // min of h * (y^2+r^2)^2 / y^2 over draws
};

/// Random (y, r) with |r| <= a |y|: h_a(y, r) must be nonnegative.
NonnegReport check_h_nonneg(const std::vector<double>& a_values,
                            long samples_per_a = 10000, unsigned seed = 20250809);

struct DerivativeIdentityReport {
    bool pass = false;
    double max_deviation = 0.0;
    double tail_integral = 0.0;  // int_{-R}^{R} h(y, 2-ay) dy at the largest R
};

/// a(1+a^2) h(y, 2-ay) against the derivative of its printed antiderivative,
/// by Richardson central differences over a y-grid; also reports the decay of
/// the symmetric integral of h(y, 2-ay).
DerivativeIdentityReport verify_22_2b(const SlopeParam& a,
                                      const std::vector<double>& y_grid,
                                      double tol = 1e-8);

/// Measured near-tent deviation constant: max over y in [-1, 1] of
/// |f(y) - (1 - a y)| / |y|^{3/2}.  Reported, not asserted against a bound.
double measure_near_tent_deviation(const SlopeParam& a,
                                   const std::function<double(double)>& f);

}  // namespace muskat
