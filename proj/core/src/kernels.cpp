#include "muskat/kernels.hpp"

#include <cmath>

namespace muskat {

namespace {
void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string("non-finite input: ") + what);
}
}  // namespace

double integrand_pair(double y, double fx0, double fxy, double f0, double fy,
                      int sigma) {
    require_finite(y, "y");
    require_finite(fx0, "fx0");
    require_finite(fxy, "fxy");
    require_finite(f0, "f0");
    require_finite(fy, "fy");
    if (sigma != 1 && sigma != -1)
        throw std::invalid_argument("integrand_pair: sigma must be +1 or -1");
    if (y == 0.0) return 0.0;
    const double d = f0 + sigma * fy;
    return y * (fx0 + sigma * fxy) / (y * y + d * d);
}

double h_kernel(const SlopeParam& p, double y, double r) {
    const double q = y * y + r * r;
    if (q == 0.0)
        throw std::domain_error("h_kernel: pole at (y, r) = (0, 0)");
    return (y * y - r * r - p.A * y * r) / (q * q);
}

double g_fun(const SlopeParam& p, double s) {
    require_finite(s, "s");
    const double q = 1.0 + s * s;
    return (2.0 * s * s * s + 3.0 * p.A * s * s - 6.0 * s - p.A) / (q * q * q);
}

double lambda_rate(double height_a, double height_b, double offset) {
    if (!(height_a >= 0.0) || !(height_b >= 0.0))
        throw std::invalid_argument("lambda_rate: heights must be >= 0");
    require_finite(offset, "offset");
    const double s = height_a + height_b;
    const double d = height_a - height_b;
    const double num = s * s * d * d;
    if (num == 0.0) return 0.0;
    const double c2 = offset * offset;
    return num / (2.0 * (c2 + s * s) * (c2 + d * d));
}

double tilde_lambda_rate(double height_a, double height_b, double offset) {
    if (!(height_a >= 0.0) || !(height_b >= 0.0))
        throw std::invalid_argument("tilde_lambda_rate: heights must be >= 0");
    require_finite(offset, "offset");
    const double s = height_a + height_b;
    const double d = height_a - height_b;
    const double num = s * s * d * d;
    if (num == 0.0) return 0.0;
    const double c2 = offset * offset;
    return num / ((c2 + 2.0 * height_a * height_a + 2.0 * height_b * height_b) *
                  (c2 + d * d));
}

double periodized_kernel(double y, double d, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("periodized_kernel: nu <= 0");
    require_finite(y, "y");
    require_finite(d, "d");
    // Reduce y to (-nu/2, nu/2]; the closed form is nu-periodic in y.
    const double yr = y - nu * std::round(y / nu);
    const double th = 2.0 * M_PI * yr / nu;
    const double w = 2.0 * M_PI * d / nu;
    if (yr == 0.0 && d == 0.0)
        throw std::domain_error("periodized_kernel: pole at y = 0 (mod nu), d = 0");
    const double aw = std::abs(w);
    if (aw > 30.0) {
        // cosh(w) - cos(th) ~ e^|w|/2; rescale to avoid overflow.
        const double e = std::exp(-aw);
        return (M_PI / nu) * std::sin(th) * 2.0 * e /
               (1.0 + e * e - 2.0 * std::cos(th) * e);
    }
    if (std::abs(th) < 1e-4 && aw < 1e-4) {
        // cosh - cos cancels to rounding here; the n = 0 image dominates and
        // the remaining images contribute O(yr/nu^2).
        const double r2 = yr * yr + d * d;
        double tail = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const double up = yr + n * nu, um = yr - n * nu;
            tail += up / (up * up + d * d) + um / (um * um + d * d);
        }
        return yr / r2 + tail;
    }
    return (M_PI / nu) * std::sin(th) / (std::cosh(w) - std::cos(th));
}

double periodized_flux_kernel(double y, double d, double nu) {
    if (!(nu > 0.0))
        throw std::invalid_argument("periodized_flux_kernel: nu <= 0");
    const double th = M_PI * y / nu;
    const double w = M_PI * d / nu;
    const double aw = std::abs(w);
    if (aw > 30.0) {
        // sinh and cosh overflow together; their ratio tends to sign(w), so
        // atan2(cos(th) sinh, sin(th) cosh) -> atan2(cos(th) sign(w), sin(th)).
        const double sw = w > 0.0 ? 1.0 : -1.0;
        return std::atan2(std::cos(th) * sw, std::sin(th));
    }
    return std::atan2(std::cos(th) * std::sinh(w), std::sin(th) * std::cosh(w));
}

namespace {
double ray_denom(double y, double r) { return y * y + r * r; }
}  // namespace

double G_plus(const SlopeParam& p, double B, double y) {
    const double r = B + p.a * y;
    const double q = ray_denom(y, r);
    if (q == 0.0) throw std::domain_error("G_plus: pole");
    return (0.5 / p.a) * B / q;
}

double G_minus(const SlopeParam& p, double B, double y) {
    const double r = B - p.a * y;
    const double q = ray_denom(y, r);
    if (q == 0.0) throw std::domain_error("G_minus: pole");
    const double a2 = p.a * p.a;
    return (1.0 - 3.0 * a2) / (2.0 * p.a * (1.0 + a2)) * B / q -
           2.0 * (1.0 - a2) / (1.0 + a2) * y / q;
}

double dB_G_plus(const SlopeParam& p, double B, double y) {
    const double r = B + p.a * y;
    const double q = ray_denom(y, r);
    if (q == 0.0) throw std::domain_error("dB_G_plus: pole");
    const double a2 = p.a * p.a;
    return (0.5 / p.a) * ((1.0 + a2) * y * y - B * B) / (q * q);
}

double dB_G_minus(const SlopeParam& p, double B, double y) {
    const double r = B - p.a * y;
    const double q = ray_denom(y, r);
    if (q == 0.0) throw std::domain_error("dB_G_minus: pole");
    const double a2 = p.a * p.a;
    const double num = (3.0 * a2 - 1.0) * B * B +
                       8.0 * p.a * (1.0 - a2) * y * B +
                       (1.0 - 10.0 * a2 + 5.0 * a2 * a2) * y * y;
    return num / (2.0 * p.a * (1.0 + a2) * q * q);
}

double arctan_primitive(double s) {
    require_finite(s, "s");
    return s * std::atan(s) - 0.5 * std::log1p(s * s);
}

double arctan_flux_primitive(double w, double c) {
    if (c == 0.0) return 0.0;
    if (w == 0.0) return c * std::log(std::abs(c));
    return w * std::atan(c / w) + 0.5 * c * std::log(w * w + c * c);
}

}  // namespace muskat
