#include "muskat/profile.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace muskat {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW's planner is not thread-safe and the cached plans share buffers, so
// the whole spectral call is serialized.  Derivatives only run in the
// single-threaded orchestration layer; the lock is for contract safety.
std::mutex fft_mutex;

struct FftWorkspace {
    int n = 0;
    double* in = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    void ensure(int n_) {
        if (n == n_) return;
        release();
        n = n_;
        in = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, in, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, in, FFTW_ESTIMATE);
    }
    void release() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (in) fftw_free(in);
        if (spec) fftw_free(spec);
        fwd = bwd = nullptr;
        in = nullptr;
        spec = nullptr;
        n = 0;
    }
    ~FftWorkspace() { release(); }
};

std::vector<double> spectral_derivative(std::span<const double> f, double dx,
                                        int order) {
    const int n = static_cast<int>(f.size());
    std::lock_guard<std::mutex> lock(fft_mutex);
    static FftWorkspace ws;
    ws.ensure(n);

    // Removing the mean makes derivative(const) exactly zero and costs nothing.
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= n;
    for (int i = 0; i < n; ++i) ws.in[i] = f[i] - mean;

    fftw_execute(ws.fwd);

    const double length = n * dx;
    const int nc = n / 2 + 1;
    for (int k = 0; k < nc; ++k) {
        const double xi = 2.0 * M_PI * k / length;
        double re = ws.spec[k][0], im = ws.spec[k][1];
        double mul_re = 0.0, mul_im = 0.0;
        switch (order) {
            case 1: mul_im = xi; break;                 // i xi
            case 2: mul_re = -xi * xi; break;           // -xi^2
            case 3: mul_im = -xi * xi * xi; break;      // -i xi^3
        }
        // Odd orders cannot represent the Nyquist mode of a real signal.
        if ((order % 2 == 1) && k == n / 2) { mul_re = mul_im = 0.0; }
        ws.spec[k][0] = re * mul_re - im * mul_im;
        ws.spec[k][1] = re * mul_im + im * mul_re;
    }

    fftw_execute(ws.bwd);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = ws.in[i] / n;
    return out;
}

std::vector<double> fd_derivative(std::span<const double> f, double dx,
                                  int order) {
    const int n = static_cast<int>(f.size());
    auto at = [&](int i) {
        return f[std::clamp(i, 0, n - 1)];  // constant extension
    };
    std::vector<double> out(n);
    // Stencils grouped as differences/sums of mirrored nodes so constant data
    // cancels exactly instead of leaving summation-order residue.
    for (int i = 0; i < n; ++i) {
        switch (order) {
            case 1:
                out[i] = (8.0 * (at(i + 1) - at(i - 1)) - (at(i + 2) - at(i - 2))) /
                         (12.0 * dx);
                break;
            case 2:
                out[i] = (16.0 * (at(i + 1) + at(i - 1)) - (at(i + 2) + at(i - 2)) -
                          30.0 * at(i)) /
                         (12.0 * dx * dx);
                break;
            case 3:
                out[i] = ((at(i - 3) - at(i + 3)) - 8.0 * (at(i - 2) - at(i + 2)) +
                          13.0 * (at(i - 1) - at(i + 1))) /
                         (8.0 * dx * dx * dx);
                break;
        }
    }
    return out;
}

}  // namespace

InterfaceProfile::InterfaceProfile(DomainSpec domain, std::vector<double> samples)
    : domain_(domain), samples_(std::move(samples)) {
    const int n = static_cast<int>(samples_.size());
    if (n < 8) throw std::invalid_argument("InterfaceProfile: need at least 8 samples");
    if (domain_.periodic_mode() && !power_of_two(n))
        throw std::invalid_argument("InterfaceProfile: periodic grid size must be a power of two");
    dx_ = domain_.extent() / n;
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(samples_[i]))
            throw std::invalid_argument("InterfaceProfile: non-finite sample");
        if (domain_.half_plane() && samples_[i] < 0.0)
            throw std::invalid_argument("InterfaceProfile: negative sample on the half-plane");
    }
    if (!domain_.periodic_mode()) {
        // Outer 10% of the grid (both ends combined) must already sit at the
        // far-field constant; the evolution tails assume it exactly.
        const int edge = std::max(1, n / 20);
        for (int i = 0; i < edge; ++i) {
            if (std::abs(samples_[i] - domain_.psi_inf) > 1e-12 ||
                std::abs(samples_[n - 1 - i] - domain_.psi_inf) > 1e-12)
                throw std::invalid_argument(
                    "InterfaceProfile: asymptotic samples must equal psi_inf on the outer 10% of the grid");
        }
    }
}

std::vector<double> derivative_raw(std::span<const double> f, double dx,
                                   bool periodic, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("derivative_raw: order must be 1, 2 or 3");
    if (f.size() < 8) throw std::invalid_argument("derivative_raw: need n >= 8");
    return periodic ? spectral_derivative(f, dx, order)
                    : fd_derivative(f, dx, order);
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}
double max_of(std::span<const double> f) {
    double m = f[0];
    for (double v : f) m = std::max(m, v);
    return m;
}
double min_of(std::span<const double> f) {
    double m = f[0];
    for (double v : f) m = std::min(m, v);
    return m;
}

double integral_raw(std::span<const double> f, double dx, bool periodic,
                    double base) {
    const int n = static_cast<int>(f.size());
    double s = 0.0;
    if (periodic) {
        for (int i = 0; i < n; ++i) s += f[i] - base;
        return s * dx;
    }
    s = 0.5 * (f[0] - base);  // virtual right endpoint contributes base - base = 0
    for (int i = 1; i < n; ++i) s += f[i] - base;
    return s * dx;
}

double integral_sq_raw(std::span<const double> f, double dx, bool periodic,
                       double base) {
    const int n = static_cast<int>(f.size());
    auto sq = [&](int i) {
        const double v = f[i] - base;
        return v * v;
    };
    double s = 0.0;
    if (periodic) {
        for (int i = 0; i < n; ++i) s += sq(i);
        return s * dx;
    }
    s = 0.5 * sq(0);
    for (int i = 1; i < n; ++i) s += sq(i);
    return s * dx;
}

double holder_quotient_raw(std::span<const double> g, double dx, double extent,
                           bool periodic, double gamma) {
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw std::invalid_argument("holder_quotient_raw: gamma must be in (0, 1]");
    const int n = static_cast<int>(g.size());
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dist = (j - i) * dx;
            if (periodic) dist = std::min(dist, extent - dist);
            if (dist < dx * (1.0 - 1e-12)) continue;
            best = std::max(best, std::abs(g[i] - g[j]) / std::pow(dist, gamma));
        }
    }
    return best;
}

std::vector<double> derivative(const InterfaceProfile& p, int order) {
    return derivative_raw(p.samples(), p.dx(), p.domain().periodic_mode(), order);
}

double max_slope(const InterfaceProfile& p) { return max_abs(derivative(p, 1)); }
double sup_norm(const InterfaceProfile& p) { return max_of(p.samples()); }
double min_height(const InterfaceProfile& p) { return min_of(p.samples()); }

double l1_mass(const InterfaceProfile& p) {
    const bool per = p.domain().periodic_mode();
    return integral_raw(p.samples(), p.dx(), per, per ? 0.0 : p.domain().psi_inf);
}

double l2_energy(const InterfaceProfile& p) {
    const bool per = p.domain().periodic_mode();
    return integral_sq_raw(p.samples(), p.dx(), per, per ? 0.0 : p.domain().psi_inf);
}

double holder_seminorm_fxx(const InterfaceProfile& p, double gamma_prime) {
    const auto fxx = derivative(p, 2);
    return holder_quotient_raw(fxx, p.dx(), p.domain().extent(),
                               p.domain().periodic_mode(), gamma_prime);
}

}  // namespace muskat
