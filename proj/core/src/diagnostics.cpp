#include "muskat/diagnostics.hpp"

#include <cmath>

#include "muskat/kernels.hpp"

namespace muskat {

double lambda_dissipation(const InterfaceProfile& p, int threads) {
    if (!p.domain().half_plane())
        throw std::invalid_argument(
            "lambda_dissipation: the lambda bound applies on the half-plane only");
    const int n = p.size();
    const double dx = p.dx();
    const bool periodic = p.domain().periodic_mode();
    const double extent = p.domain().extent();
    const auto& f = p.samples();

    const auto fx = derivative_raw(f, dx, periodic, 1);
    std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        // Diagonal node: the limit of lambda along y -> x is
        // f'(x)^2 / (2 (1 + f'(x)^2)) wherever f > 0 (and 0 at a touch).
        double acc = f[i] > 0.0 ? fx[i] * fx[i] / (2.0 * (1.0 + fx[i] * fx[i]))
                                : 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double c = (i - j) * dx;
            if (periodic) c -= extent * std::round(c / extent);
            acc += lambda_rate(f[i], f[j], c);
        }
        partial[i] = acc;
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += partial[i];
    return total * dx * dx;
}

double ln_dissipation_plane(const InterfaceProfile& p, int threads,
                            int window_periods) {
    if (p.domain().half_plane())
        throw std::invalid_argument(
            "ln_dissipation_plane: identity holds for the whole-plane equation");
    const int n = p.size();
    const double dx = p.dx();
    const auto& f = p.samples();
    const bool periodic = p.domain().periodic_mode();

    std::vector<double> partial(n, 0.0);
    if (periodic) {
        const double nu = p.domain().period;
        const int k = window_periods;
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) {
                const double df = f[i] - f[j];
                for (int m = -k; m <= k; ++m) {
                    const double c = (i - j) * dx - m * nu;
                    if (c == 0.0) continue;  // diagonal: zero-measure limit
                    const double q = df / c;
                    acc += std::log1p(q * q);
                }
            }
            partial[i] = acc;
        }
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += partial[i];
        total *= dx * dx;
        // Analytic remainder of the image sum: beyond the window the summand
        // is ~ (f(x)-f(y))^2 / c^2, whose image tail is
        // 2 sum_{m>k} 1/(m nu)^2 per pair, up to O(1/m^3) corrections.
        double mean = 0.0, meansq = 0.0;
        for (double v : f) {
            mean += v;
            meansq += v * v;
        }
        mean = mean * dx;           // integral of f
        meansq = meansq * dx;       // integral of f^2
        const double pairsq = 2.0 * (nu * meansq - mean * mean);
        const double kk = k;
        const double tail_sum = 1.0 / kk - 1.0 / (2.0 * kk * kk) +
                                1.0 / (6.0 * kk * kk * kk);  // ~ sum_{m>k} m^-2
        total += 2.0 * pairsq / (nu * nu) * tail_sum;  // both image signs
        return total;
    }

    const double X = p.domain().half_width;
    const double psi_inf = p.domain().psi_inf;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        const double xi = -X + i * dx;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double c = (i - j) * dx;
            const double q = (f[i] - f[j]) / c;
            acc += std::log1p(q * q) * dx;
        }
        // Exact tail with f = psi_inf outside the window: the full-line
        // integral of ln(1 + C^2/w^2) is 2 pi |C|, and the window part has
        // the closed antiderivative w ln(1 + C^2/w^2) + 2C arctan(w/C).
        const double C = f[i] - psi_inf;
        if (C != 0.0) {
            auto F = [&](double w) {
                return w * std::log1p(C * C / (w * w)) + 2.0 * C * std::atan(w / C);
            };
            acc += 2.0 * M_PI * std::abs(C) - (F(xi + X) - F(xi - X));
        }
        partial[i] = acc;
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += partial[i];
    return total * dx;
}

namespace {
double key_value(const DiagnosticsRecord& r, MonotoneKey key) {
    return key == MonotoneKey::MaxSlope ? r.max_slope : r.l2_energy;
}
}  // namespace

CheckReport check_monotone(const std::vector<DiagnosticsRecord>& records,
                           MonotoneKey key, double tol, bool half_plane) {
    CheckReport rep;
    if (records.size() < 2) {
        rep.applicable = false;
        rep.detail = "not applicable: fewer than two records";
        return rep;
    }
    if (key == MonotoneKey::MaxSlope) {
        const double threshold = half_plane ? 0.3 : 1.0;
        if (records.front().max_slope > threshold) {
            rep.applicable = false;
            rep.detail = "not applicable: initial slope above the principle threshold";
            return rep;
        }
    }
    rep.worst = 0.0;
    for (size_t i = 1; i < records.size(); ++i) {
        const double inc = key_value(records[i], key) - key_value(records[i - 1], key);
        if (inc > rep.worst) {
            rep.worst = inc;
            rep.worst_index = static_cast<int>(i);
        }
    }
    rep.pass = rep.worst <= tol;
    rep.detail = "largest increment " + std::to_string(rep.worst);
    return rep;
}

CheckReport check_energy_inequality(const std::vector<DiagnosticsRecord>& records,
                                    double tol, double slack) {
    CheckReport rep;
    if (records.size() < 2 || !records.front().lambda_dissipation) {
        rep.applicable = false;
        rep.detail = "not applicable: needs a half-plane run with lambda records";
        return rep;
    }
    rep.worst = -1e300;
    for (size_t i = 1; i < records.size(); ++i) {
        const double dt = records[i].t - records[i - 1].t;
        if (dt <= 0.0) continue;
        const double dE = (records[i].l2_energy - records[i - 1].l2_energy) / dt;
        const double lam = std::min(*records[i - 1].lambda_dissipation,
                                    *records[i].lambda_dissipation);
        const double excess = dE - (-(1.0 - slack) * lam + tol);
        if (excess > rep.worst) {
            rep.worst = excess;
            rep.worst_index = static_cast<int>(i);
        }
    }
    rep.pass = rep.worst <= 0.0;
    rep.detail = "largest excess over the dissipation bound " + std::to_string(rep.worst);
    return rep;
}

CheckReport check_mass(const std::vector<DiagnosticsRecord>& records, double tol) {
    CheckReport rep;
    if (records.empty()) {
        rep.applicable = false;
        rep.detail = "not applicable: no records";
        return rep;
    }
    const double m0 = records.front().l1_mass;
    rep.worst = 0.0;
    for (size_t i = 0; i < records.size(); ++i) {
        const double drift = std::abs(records[i].l1_mass - m0);
        if (drift > rep.worst) {
            rep.worst = drift;
            rep.worst_index = static_cast<int>(i);
        }
    }
    rep.pass = rep.worst <= tol;
    rep.detail = "largest mass drift " + std::to_string(rep.worst);
    return rep;
}

std::optional<double> singularity_time_bound(const InterfaceProfile& psi) {
    if (!psi.domain().half_plane() || !psi.domain().periodic_mode())
        return std::nullopt;
    if (min_height(psi) > 1e-12) return std::nullopt;
    if (max_slope(psi) > 0.3 + 1e-12) return std::nullopt;
    const double L = l1_mass(psi);
    if (!(L > 0.0 && L < 3.0 / 40.0)) return std::nullopt;
    const double L3 = L * L * L;
    return 20.0 * l2_energy(psi) / (L3 * L3);
}

}  // namespace muskat
