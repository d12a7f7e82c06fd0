#include "muskat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace muskat {

namespace {

struct Panel {
    double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

void adapt(const std::function<double(double)>& f, const Panel& p, double tol,
           int depth, int max_depth, QuadResult& out) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double err = (left + right - p.whole) / 15.0;
    if (depth >= max_depth || std::abs(err) <= tol) {
        out.value += left + right + err;  // Richardson-corrected panel
        out.error += std::abs(err);
        return;
    }
    adapt(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1, max_depth, out);
    adapt(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol, int max_depth) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw std::invalid_argument("integrate: non-finite interval");
    QuadResult out;
    if (a == b) return out;
    // Seed with a few panels so narrow interior features are not missed by
    // the very first Simpson estimate.
    const int seeds = 8;
    const double h = (b - a) / seeds;
    for (int i = 0; i < seeds; ++i) {
        const double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), f1 = f(x1), fm = f(xm);
        adapt(f, {x0, x1, f0, fm, f1, simpson(x0, x1, f0, fm, f1)},
              tol / seeds, 0, max_depth, out);
    }
    return out;
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f,
                                 double a, double tol) {
    if (!(a > 0.0))
        throw std::invalid_argument("integrate_to_infinity: requires a > 0");
    // y = a / w maps (0, 1] onto [a, inf); dy = -a / w^2 dw.
    auto mapped = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double y = a / w;
        return f(y) * a / (w * w);
    };
    return integrate(mapped, 0.0, 1.0, tol);
}

double central_derivative(const std::function<double(double)>& f, double x,
                          double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace muskat
