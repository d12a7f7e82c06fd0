#include "muskat/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "muskat/diagnostics.hpp"
#include "muskat/kernels.hpp"

namespace muskat {

namespace {

// atan2(cos(pi u/nu) sinh(pi d/nu), sin(pi u/nu) cosh(pi d/nu)) with the
// trig factors precomputed; one exp per call.
inline double theta_kernel(double cpi, double spi, double w) {
    const double aw = std::abs(w);
    if (aw > 350.0) return std::atan2(w > 0 ? cpi : -cpi, spi);
    const double e = std::exp(w);
    const double ei = 1.0 / e;
    return std::atan2(cpi * 0.5 * (e - ei), spi * 0.5 * (e + ei));
}

// (pi/nu) sin(2 pi u/nu) / (cosh(2 pi d/nu) - cos(2 pi u/nu)) with trig
// factors precomputed (used only by the near-touch direct evaluation).
inline double cauchy_kernel(double pi_over_nu, double sin2, double cos2,
                            double w2) {
    const double aw = std::abs(w2);
    if (aw > 350.0) return 0.0;
    const double e = std::exp(-aw);
    const double denom = 0.5 * (std::exp(aw) + e) - cos2;
    return pi_over_nu * sin2 / denom;
}

struct RawRhs {
    std::vector<double> values;
    bool ok = true;
    int bad_index = -1;
};

void scan_finite(RawRhs& r) {
    for (int i = 0; i < static_cast<int>(r.values.size()); ++i) {
        if (!std::isfinite(r.values[i])) {
            r.ok = false;
            r.bad_index = i;
            return;
        }
    }
}

RawRhs rhs_periodic_raw(const DomainSpec& dom, const std::vector<double>& f,
                        const RhsOptions& opts) {
    const int n = static_cast<int>(f.size());
    const double nu = dom.period;
    const double dx = nu / n;
    const bool half = dom.half_plane();

    const auto fx = derivative_raw(f, dx, true, 1);

    std::vector<double> cpi(n), spi(n);
    for (int j = 0; j < n; ++j) {
        const double th = M_PI * j * dx / nu;
        cpi[j] = std::cos(th);
        spi[j] = std::sin(th);
    }
    const double piw = M_PI / nu;

    std::vector<double> phi(n);
#pragma omp parallel for schedule(static) num_threads(opts.threads)
    for (int i = 0; i < n; ++i) {
        const double fi = f[i];
        double acc = std::atan(fx[i]);  // u -> 0 limit of the difference branch
        // The reflection branch jumps by pi across u = 0; its node value is the
        // two-sided average, which is 0.
        for (int j = 1; j < n; ++j) {
            int z = i - j;
            if (z < 0) z += n;
            const double fz = f[z];
            acc += theta_kernel(cpi[j], spi[j], piw * (fi - fz));
            if (half) acc += theta_kernel(cpi[j], spi[j], piw * (fi + fz));
        }
        phi[i] = acc * dx;
    }

    RawRhs r;
    r.values = derivative_raw(phi, dx, true, 1);

    // Near-touch blend: the flux form loses the exact cancellation of the two
    // branches at f = 0, so points with f <= h_floor are pulled toward the
    // direct kernel-sum value, which cancels exactly there.  The blend's mass
    // defect is spread uniformly to keep the total exactly conserved.
    if (half && opts.h_floor_factor > 0.0) {
        const double h_floor = opts.h_floor_factor * dx * max_abs(fx);
        if (h_floor > 0.0) {
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (f[i] < h_floor) idx.push_back(i);
            if (!idx.empty()) {
                const auto fxx = derivative_raw(f, dx, true, 2);
                std::vector<double> sin2(n), cos2(n);
                for (int j = 0; j < n; ++j) {
                    const double th = 2.0 * M_PI * j * dx / nu;
                    sin2[j] = std::sin(th);
                    cos2[j] = std::cos(th);
                }
                const double pi2w = 2.0 * M_PI / nu;
                const int m = static_cast<int>(idx.size());
                std::vector<double> corr(m);
#pragma omp parallel for schedule(static) num_threads(opts.threads)
                for (int k = 0; k < m; ++k) {
                    const int i = idx[k];
                    const double fi = f[i];
                    const double weight =
                        std::clamp(1.0 - fi / h_floor, 0.0, 1.0);
                    const double limit = fxx[i] / (1.0 + fx[i] * fx[i]);
                    double acc = limit - limit * weight;
                    for (int j = 1; j < n; ++j) {
                        int z = i - j;
                        if (z < 0) z += n;
                        acc += (fx[i] - fx[z]) *
                               cauchy_kernel(piw, sin2[j], cos2[j],
                                             pi2w * (fi - f[z]));
                        acc += (fx[i] + fx[z]) *
                               cauchy_kernel(piw, sin2[j], cos2[j],
                                             pi2w * (fi + f[z]));
                    }
                    corr[k] = weight * (acc * dx - r.values[i]);
                }
                double defect = 0.0;
                for (int k = 0; k < m; ++k) {
                    r.values[idx[k]] += corr[k];
                    defect += corr[k] * dx;
                }
                const double shift = defect / nu;
                for (int i = 0; i < n; ++i) r.values[i] -= shift;
            }
        }
    }

    scan_finite(r);
    return r;
}

RawRhs rhs_asymptotic_raw(const DomainSpec& dom, const std::vector<double>& f,
                          const RhsOptions& opts) {
    const int n = static_cast<int>(f.size());
    const double X = dom.half_width;
    const double dx = 2.0 * X / n;
    const bool half = dom.half_plane();
    const double psi_inf = dom.psi_inf;

    const auto fx = derivative_raw(f, dx, false, 1);

    std::vector<double> phi(n);
#pragma omp parallel for schedule(static) num_threads(opts.threads)
    for (int i = 0; i < n; ++i) {
        const double xi = -X + i * dx;
        const double fi = f[i];
        const double d0 = 2.0 * fi;
        double acc = 0.0;
        // grid nodes plus the virtual right endpoint z = +X (f = psi_inf)
        for (int j = 0; j <= n; ++j) {
            const double wt = (j == 0 || j == n) ? 0.5 * dx : dx;
            const double w = xi - (-X + j * dx);
            const double fz = (j == n) ? psi_inf : f[j];
            if (w == 0.0) {
                acc += wt * std::atan(fx[i]);  // difference-branch limit
                continue;                      // reflection-branch node is 0
            }
            acc += wt * std::atan((fi - fz) / w);
            if (half) acc += wt * (std::atan((fi + fz) / w) - std::atan(d0 / w));
        }
        // Exact far-field tails (f = psi_inf beyond the window) plus the
        // window integral of the subtracted reflection kernel.
        const double cm = fi - psi_inf;
        acc += arctan_flux_primitive(xi - X, cm) - arctan_flux_primitive(xi + X, cm);
        if (half) {
            const double cp = fi + psi_inf;
            acc += arctan_flux_primitive(xi + X, d0) - arctan_flux_primitive(xi - X, d0);
            acc += arctan_flux_primitive(xi - X, cp) - arctan_flux_primitive(xi + X, cp);
        }
        phi[i] = acc;
    }

    RawRhs r;
    r.values = derivative_raw(phi, dx, false, 1);

    if (half && opts.h_floor_factor > 0.0) {
        const double h_floor = opts.h_floor_factor * dx * max_abs(fx);
        if (h_floor > 0.0) {
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (f[i] < h_floor) idx.push_back(i);
            if (!idx.empty()) {
                const auto fxx = derivative_raw(f, dx, false, 2);
                const int m = static_cast<int>(idx.size());
                std::vector<double> corr(m);
#pragma omp parallel for schedule(static) num_threads(opts.threads)
                for (int k = 0; k < m; ++k) {
                    const int i = idx[k];
                    const double xi = -X + i * dx;
                    const double fi = f[i];
                    const double weight =
                        std::clamp(1.0 - fi / h_floor, 0.0, 1.0);
                    const double limit = fxx[i] / (1.0 + fx[i] * fx[i]);
                    double acc = limit - limit * weight;
                    acc *= dx;  // node weight (interior; touch points are interior)
                    for (int j = 0; j <= n; ++j) {
                        if (j == i) continue;
                        const double wt = (j == 0 || j == n) ? 0.5 * dx : dx;
                        const double w = xi - (-X + j * dx);
                        const double fz = (j == n) ? psi_inf : f[j];
                        const double fxz = (j == n) ? 0.0 : fx[j];
                        double dminus = fi - fz, dplus = fi + fz;
                        acc += wt * (fx[i] - fxz) * w / (w * w + dminus * dminus);
                        acc += wt * (fx[i] + fxz) * w / (w * w + dplus * dplus);
                    }
                    // symmetric PV tails of the direct kernels
                    if (fx[i] != 0.0) {
                        const double l = X - xi, rgt = X + xi;
                        const double cmi = fi - psi_inf, cpl = fi + psi_inf;
                        acc += 0.5 * fx[i] *
                               (std::log((l * l + cmi * cmi) / (rgt * rgt + cmi * cmi)) +
                                std::log((l * l + cpl * cpl) / (rgt * rgt + cpl * cpl)));
                    }
                    corr[k] = weight * (acc - r.values[i]);
                }
                for (int k = 0; k < m; ++k) r.values[idx[k]] += corr[k];
            }
        }
    }

    // Far-field sponge: the quadrature tails assume f = psi_inf on the outer
    // band exactly, so that band is held fixed.
    const int edge = std::max(1, n / 20);
    for (int i = 0; i < edge; ++i) {
        r.values[i] = 0.0;
        r.values[n - 1 - i] = 0.0;
    }

    scan_finite(r);
    return r;
}

RawRhs rhs_raw(const DomainSpec& dom, const std::vector<double>& f,
               const RhsOptions& opts) {
    return dom.periodic_mode() ? rhs_periodic_raw(dom, f, opts)
                               : rhs_asymptotic_raw(dom, f, opts);
}

std::vector<double> rhs_checked(const InterfaceProfile& p, const RhsOptions& opts,
                                bool want_half) {
    if (p.domain().half_plane() != want_half)
        throw std::invalid_argument("rhs: wrong plane kind for this operation");
    if (want_half) {
        for (double v : p.samples())
            if (v < 0.0) throw std::invalid_argument("rhs_halfplane: negative sample");
    }
    RawRhs r = rhs_raw(p.domain(), p.samples(), opts);
    if (!r.ok)
        throw std::runtime_error("rhs: non-finite value at grid index " +
                                 std::to_string(r.bad_index));
    return std::move(r.values);
}

struct Attempt {
    std::vector<double> samples;
    double error_ratio = 0.0;
    bool ok = false;
};

void clamp_stage(std::vector<double>& v, bool half) {
    if (!half) return;
    for (double& x : v) x = std::max(x, 0.0);
}

bool rk4_raw(const DomainSpec& dom, const std::vector<double>& f0, double dt,
             const RhsOptions& opts, const std::vector<double>* k1_opt,
             std::vector<double>& out, std::vector<double>* k1_out) {
    const int n = static_cast<int>(f0.size());
    const bool half = dom.half_plane();
    std::vector<double> k1;
    if (k1_opt) {
        k1 = *k1_opt;
    } else {
        RawRhs r = rhs_raw(dom, f0, opts);
        if (!r.ok) return false;
        k1 = std::move(r.values);
    }
    if (k1_out) *k1_out = k1;

    std::vector<double> stage(n);
    auto advance = [&](const std::vector<double>& k, double c) {
        for (int i = 0; i < n; ++i) stage[i] = f0[i] + c * dt * k[i];
        clamp_stage(stage, half);
    };

    advance(k1, 0.5);
    RawRhs r2 = rhs_raw(dom, stage, opts);
    if (!r2.ok) return false;
    advance(r2.values, 0.5);
    RawRhs r3 = rhs_raw(dom, stage, opts);
    if (!r3.ok) return false;
    advance(r3.values, 1.0);
    RawRhs r4 = rhs_raw(dom, stage, opts);
    if (!r4.ok) return false;

    out.resize(n);
    for (int i = 0; i < n; ++i)
        out[i] = f0[i] + dt / 6.0 *
                             (k1[i] + 2.0 * r2.values[i] + 2.0 * r3.values[i] +
                              r4.values[i]);
    return true;
}

Attempt attempt_step(const DomainSpec& dom, const std::vector<double>& f0,
                     double dt, const StepControl& control,
                     const RhsOptions& opts) {
    Attempt a;
    const bool half = dom.half_plane();
    std::vector<double> k1, big, mid, fine;
    if (!rk4_raw(dom, f0, dt, opts, nullptr, big, &k1)) return a;
    if (!rk4_raw(dom, f0, 0.5 * dt, opts, &k1, mid, nullptr)) return a;
    clamp_stage(mid, half);
    if (!rk4_raw(dom, mid, 0.5 * dt, opts, nullptr, fine, nullptr)) return a;

    double ratio = 0.0;
    double undershoot = 0.0;
    for (size_t i = 0; i < f0.size(); ++i) {
        if (!std::isfinite(big[i]) || !std::isfinite(fine[i])) return a;
        const double scale =
            control.atol +
            control.rtol * std::max(std::abs(f0[i]), std::abs(fine[i]));
        ratio = std::max(ratio, std::abs(big[i] - fine[i]) / (15.0 * scale));
        if (half) undershoot = std::max(undershoot, -fine[i]);
    }
    a.error_ratio = ratio;
    if (ratio <= 1.0 && undershoot <= control.atol) {
        clamp_stage(fine, half);
        a.samples = std::move(fine);
        a.ok = true;
    }
    return a;
}

double grow_dt(double dt, double ratio) {
    const double fac =
        ratio > 0.0 ? std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0) : 5.0;
    return dt * fac;
}
double shrink_dt(double dt, double ratio) {
    const double fac =
        ratio > 1.0 ? std::clamp(0.9 * std::pow(ratio, -0.25), 0.1, 0.9) : 0.2;
    return dt * fac;
}

}  // namespace

std::vector<double> rhs_halfplane(const InterfaceProfile& p, const RhsOptions& opts) {
    return rhs_checked(p, opts, true);
}
std::vector<double> rhs_plane(const InterfaceProfile& p, const RhsOptions& opts) {
    return rhs_checked(p, opts, false);
}

StepResult step(const SimState& state, const StepControl& control,
                const RhsOptions& opts) {
    control.validate();
    const DomainSpec& dom = state.profile.domain();
    const double dx = state.profile.dx();
    const double cap = std::min(control.dt_max, control.cfl_cap * dx);
    double dt = std::clamp(state.dt_last > 0.0 ? state.dt_last : control.dt_init,
                           control.dt_min, cap);
    long rejects = 0;
    while (true) {
        Attempt a = attempt_step(dom, state.profile.samples(), dt, control, opts);
        if (a.ok) {
            SimState next{state.t + dt,
                          InterfaceProfile(dom, std::move(a.samples)),
                          std::min(grow_dt(dt, a.error_ratio), cap),
                          state.step_count + 1,
                          state.reject_count + rejects};
            return {std::move(next), a.error_ratio};
        }
        ++rejects;
        const double next_dt = shrink_dt(dt, a.error_ratio);
        if (next_dt < control.dt_min) {
            SimState carried = state;
            carried.reject_count += rejects;
            throw BlowupSuspected(std::move(carried),
                                  "step rejected down to dt_min at t = " +
                                      std::to_string(state.t));
        }
        dt = next_dt;
    }
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::BlowupSuspected_: return "blowup_suspected";
        case Termination::WallClock: return "wall_clock_cap";
    }
    return "unknown";
}

DiagnosticsRecord make_record(const InterfaceProfile& p, double t,
                              double gamma_prime, int threads) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.max_slope = max_slope(p);
    rec.l1_mass = l1_mass(p);
    rec.l2_energy = l2_energy(p);
    rec.min_height = min_height(p);
    rec.holder_fxx = holder_seminorm_fxx(p, gamma_prime);
    if (p.domain().half_plane())
        rec.lambda_dissipation = lambda_dissipation(p, threads);
    else
        rec.ln_dissipation = ln_dissipation_plane(p, threads);
    return rec;
}

RunResult run(const InterfaceProfile& initial, const RunParams& params) {
    params.control.validate();
    if (params.record_every < 1)
        throw std::invalid_argument("run: record_every must be >= 1");
    if (!(params.t_end >= 0.0))
        throw std::invalid_argument("run: t_end must be >= 0");
    if (!(params.gamma_prime > 0.0 && params.gamma_prime <= 1.0))
        throw std::invalid_argument("run: gamma_prime must be in (0, 1]");

    const auto wall_start = std::chrono::steady_clock::now();
    auto wall_exceeded = [&] {
        if (params.max_wall_seconds <= 0.0) return false;
        const std::chrono::duration<double> el =
            std::chrono::steady_clock::now() - wall_start;
        return el.count() > params.max_wall_seconds;
    };

    std::vector<DiagnosticsRecord> records;
    std::vector<std::pair<double, InterfaceProfile>> snapshots;
    Termination termination = Termination::Completed;
    SimState state{0.0, initial, 0.0, 0, 0};

    auto snaps = params.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    size_t next_snap = 0;

    double prev_q = std::pow(
        holder_seminorm_fxx(initial, params.gamma_prime), 4.0);
    double prev_t = 0.0;
    double accumulator = 0.0;

    auto push_record = [&](const SimState& s) {
        DiagnosticsRecord rec = make_record(s.profile, s.t, params.gamma_prime,
                                            params.rhs.threads);
        const double q = std::pow(rec.holder_fxx, 4.0);
        accumulator += 0.5 * (q + prev_q) * (s.t - prev_t);
        prev_q = q;
        prev_t = s.t;
        rec.blowup_accumulator = accumulator;
        records.push_back(rec);
    };

    push_record(state);
    snapshots.emplace_back(0.0, initial);
    while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) ++next_snap;

    long since_record = 0;
    while (state.t < params.t_end) {
        StepControl ctl = params.control;
        // Land exactly on t_end without tripping the dt_min check.
        const double remaining = params.t_end - state.t;
        if (remaining < ctl.dt_max) ctl.dt_max = remaining;
        if (ctl.dt_min > ctl.dt_max) ctl.dt_min = ctl.dt_max;
        if (ctl.dt_init > ctl.dt_max) ctl.dt_init = ctl.dt_max;
        double saved_dt = state.dt_last;
        if (state.dt_last > remaining) state.dt_last = remaining;
        try {
            StepResult sr = step(state, ctl, params.rhs);
            state = std::move(sr.state);
            if (saved_dt > 0.0 && state.dt_last > saved_dt &&
                remaining < saved_dt)
                state.dt_last = saved_dt;  // do not let the end clamp inflate dt
        } catch (const BlowupSuspected& b) {
            state = b.state;
            termination = Termination::BlowupSuspected_;
            break;
        }
        ++since_record;
        if (since_record >= params.record_every) {
            push_record(state);
            since_record = 0;
        }
        if (next_snap < snaps.size() && state.t >= snaps[next_snap]) {
            snapshots.emplace_back(state.t, state.profile);
            while (next_snap < snaps.size() && snaps[next_snap] <= state.t)
                ++next_snap;
        }
        if (wall_exceeded()) {
            termination = Termination::WallClock;
            break;
        }
    }

    if (records.empty() || records.back().t != state.t) push_record(state);
    if (snapshots.empty() || snapshots.back().first != state.t)
        snapshots.emplace_back(state.t, state.profile);
    return RunResult{std::move(records), std::move(snapshots), termination,
                     std::move(state)};
}

}  // namespace muskat
