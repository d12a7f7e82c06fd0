#include <doctest.h>

#include <cmath>
#include <random>

#include "muskat/kernels.hpp"
#include "muskat/quadrature.hpp"

using namespace muskat;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("slope param validates and derives A once") {
    CHECK_THROWS_AS(SlopeParam(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SlopeParam(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(SlopeParam(1.5), std::invalid_argument);
    const SlopeParam p(0.3);
    CHECK(p.A == 1.0 / 0.3 - 0.3);
    CHECK(SlopeParam(1.0).A == 0.0);
}

TEST_CASE("integrand pair evaluates the printed kernel") {
    // constant state: zero numerator
    CHECK(integrand_pair(1.0, 0.0, 0.0, 0.7, 0.7, -1) == 0.0);
    // direct evaluation: 1 * 0.6 / (1 + 4)
    CHECK(integrand_pair(1.0, 0.3, 0.3, 1.0, 1.0, +1) == doctest::Approx(0.12).epsilon(1e-15));
    // y = 0 returns 0 by convention
    CHECK(integrand_pair(0.0, 0.1, 0.1, 1.0, 1.0, +1) == 0.0);
    CHECK(integrand_pair(0.0, 0.1, 0.1, 0.0, 0.0, +1) == 0.0);
    CHECK_THROWS_AS(integrand_pair(1.0, 0.1, 0.1, 1.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(integrand_pair(NAN, 0.1, 0.1, 1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("h kernel values and pole") {
    const SlopeParam p(0.3);
    CHECK(h_kernel(p, 1.0, 0.3) == 0.0);  // vanishes on the slope ray
    CHECK(h_kernel(p, 1.0, 0.0) == 1.0);
    // direct evaluation with A = 10/3 - 0.3: (1 - 0.09 + 0.3 A) / 1.1881
    CHECK(h_kernel(p, 1.0, -0.3) ==
          doctest::Approx((0.91 + 0.3 * p.A) / 1.1881).epsilon(1e-14));
    CHECK(h_kernel(p, 1.0, -0.3) == doctest::Approx(1.5318575877451392).epsilon(1e-13));
    CHECK_THROWS_AS(h_kernel(p, 0.0, 0.0), std::domain_error);
}

TEST_CASE("h vanishes identically on r = a y") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> ua(0.01, 1.0), uy(-30.0, 30.0);
    for (int i = 0; i < 1000; ++i) {
        const SlopeParam p(ua(rng));
        double y = uy(rng);
        if (std::abs(y) < 1e-3) y = 1e-3;
        // normalized by the kernel's y^-2 scale
        CHECK(std::abs(h_kernel(p, y, p.a * y)) * y * y <= 1e-12);
    }
}

TEST_CASE("h is nonnegative in the admissible cone |r| <= a|y|") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ua(0.05, 1.0), uy(-50.0, 50.0),
        ur(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const SlopeParam p(ua(rng));
        double y = uy(rng);
        if (std::abs(y) < 1e-3) y = 1e-3;
        const double r = ur(rng) * p.a * std::abs(y);
        const double q = y * y + r * r;
        CHECK(h_kernel(p, y, r) * q * q / (y * y) >= -1e-12);
    }
}

TEST_CASE("g closed-form values") {
    const SlopeParam p(0.3);
    // g(0) = -A exactly (the numerator reduces to -A, the denominator to 1)
    CHECK(g_fun(p, 0.0) == -p.A);
    CHECK(g_fun(p, p.a) ==
          doctest::Approx(-(1.0 / 0.3 + 2.0 * 0.3 + 0.027) / std::pow(1.09, 3))
              .epsilon(1e-14));
    CHECK(g_fun(p, p.a) == doctest::Approx(-3.0581039755351678).epsilon(1e-14));
    CHECK(g_fun(p, -p.a) ==
          doctest::Approx(-(1.0 / 0.3 - 3.0 + 5.0 * 0.027) / std::pow(1.09, 3))
              .epsilon(1e-14));
    CHECK(g_fun(p, -p.a) == doctest::Approx(-0.36163926316193185).epsilon(1e-13));
    // sign facts at +-1/a
    CHECK(g_fun(p, -1.0 / p.a) > 0.0);
    CHECK(g_fun(p, 1.0 / p.a) > 0.0);
}

TEST_CASE("g is the radial derivative kernel of h") {
    const SlopeParam p(0.17);
    for (double y : {0.7, -1.3, 2.9}) {
        for (double r : {-0.4, 0.2, 1.8}) {
            const double fd = central_derivative(
                [&](double t) { return h_kernel(p, y, t); }, r, 1e-4);
            CHECK(fd == doctest::Approx(g_fun(p, r / y) / (y * y * y)).epsilon(1e-7));
        }
    }
}

TEST_CASE("lambda rate values and edge cases") {
    CHECK(lambda_rate(1.0, 1.0, 5.0) == 0.0);
    CHECK(lambda_rate(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lambda_rate(0.0, 0.0, 0.0) == 0.0);  // limit, not an error
    CHECK_THROWS_AS(lambda_rate(-1.0, 0.0, 0.0), std::invalid_argument);
    CHECK(tilde_lambda_rate(1.0, 1.0, 5.0) == 0.0);
    CHECK(tilde_lambda_rate(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("tilde lambda dominates lambda on nonnegative heights") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 4.0), uc(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const double ah = u(rng), bh = u(rng), c = uc(rng);
        CHECK(tilde_lambda_rate(ah, bh, c) >= lambda_rate(ah, bh, c) - 1e-15);
    }
    // specific point from the dominance family
    CHECK(tilde_lambda_rate(0.15, 0.05, 1.0) >= lambda_rate(0.15, 0.05, 1.0));
}

namespace {
// independent oracle: symmetric truncated image sum plus the analytic
// pair-tail (pairs decay like -2y / (n nu)^2)
double periodized_sum_oracle(double y, double d, double nu, long n_images) {
    double s = y / (y * y + d * d);
    for (long n = 1; n <= n_images; ++n) {
        const double up = y + n * nu, um = y - n * nu;
        s += up / (up * up + d * d) + um / (um * um + d * d);
    }
    const double nn = static_cast<double>(n_images);
    s += -2.0 * y / (nu * nu) * (1.0 / nn - 1.0 / (2.0 * nn * nn));
    return s;
}
}  // namespace

TEST_CASE("periodized kernel matches the truncated image sum") {
    const double v = periodized_kernel(0.25, 0.5, 1.0);
    CHECK(std::abs(v - periodized_sum_oracle(0.25, 0.5, 1.0, 100000)) / std::abs(v) <=
          1e-8);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uy(0.05, 0.95), ud(-1.2, 1.2);
    for (int i = 0; i < 20; ++i) {
        const double y = uy(rng), d = ud(rng);
        const double c = periodized_kernel(y, d, 1.0);
        const double s = periodized_sum_oracle(y, d, 1.0, 50000);
        CHECK(c == doctest::Approx(s).epsilon(1e-7));
    }
}

TEST_CASE("periodized kernel truncation error decays like 1/N") {
    const double y = 0.3, d = 0.4, nu = 1.0;
    const double exact = periodized_kernel(y, d, nu);
    auto bare = [&](long N) {
        double s = y / (y * y + d * d);
        for (long n = 1; n <= N; ++n) {
            const double up = y + n * nu, um = y - n * nu;
            s += up / (up * up + d * d) + um / (um * um + d * d);
        }
        return std::abs(s - exact);
    };
    const double e1 = bare(1000), e2 = bare(2000), e4 = bare(4000);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(e2 / e4 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("periodized kernel symmetry, decay and pole") {
    CHECK(std::abs(periodized_kernel(0.5, 0.0, 1.0)) <= 1e-12);  // half period
    CHECK(std::abs(periodized_kernel(0.1, 10.0, 1.0)) <= 1e-16);  // cosh dominates
    CHECK_THROWS_AS(periodized_kernel(0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(periodized_kernel(2.0, 0.0, 1.0), std::domain_error);  // y = 0 mod nu
    CHECK_THROWS_AS(periodized_kernel(0.5, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("periodized flux kernel sums arctan images") {
    // oracle: symmetric truncated sum of arctan(d/(y + n nu)) with pair tail
    auto oracle = [](double y, double d, double nu, long N) {
        double s = std::atan(d / y);
        for (long n = 1; n <= N; ++n)
            s += std::atan(d / (y + n * nu)) + std::atan(d / (y - n * nu));
        s += -2.0 * y * d / (nu * nu) * (1.0 / N);
        return s;
    };
    for (auto [y, d, nu] : {std::tuple{0.3, 0.7, 1.0}, std::tuple{0.9, -0.2, 1.0},
                            std::tuple{1.7, 0.4, 2.0}}) {
        CHECK(periodized_flux_kernel(y, d, nu) ==
              doctest::Approx(oracle(y, d, nu, 100000)).epsilon(1e-7));
    }
    // its d-derivative is the periodized Cauchy kernel
    const double fd = central_derivative(
        [](double t) { return periodized_flux_kernel(0.3, t, 1.0); }, 0.7, 1e-4);
    CHECK(fd == doctest::Approx(periodized_kernel(0.3, 0.7, 1.0)).epsilon(1e-9));
}

TEST_CASE("ray antiderivatives differentiate to h") {
    const SlopeParam p(0.3);
    for (double B : {0.5, 2.0})
        for (double y : {-1.7, 1.0, 3.2}) {
            CHECK(central_derivative([&](double t) { return G_plus(p, B, t); }, y) ==
                  doctest::Approx(h_kernel(p, y, B + p.a * y)).epsilon(1e-8));
            CHECK(central_derivative([&](double t) { return G_minus(p, B, t); }, y) ==
                  doctest::Approx(h_kernel(p, y, B - p.a * y)).epsilon(1e-8));
        }
    CHECK(G_plus(p, 0.0, 1.7) == 0.0);
    // G_minus(0, y) = -2 (1-a^2) / ((1+a^2)^2 y)
    const double a2 = 0.09;
    CHECK(G_minus(p, 0.0, 2.0) ==
          doctest::Approx(-2.0 * (1.0 - a2) / ((1.0 + a2) * (1.0 + a2) * 2.0))
              .epsilon(1e-14));
}

TEST_CASE("dB formulas match finite differences and the zero-identity value") {
    const SlopeParam p(0.3);
    CHECK(dB_G_plus(p, 0.0, 10.0 / 3.0) ==
          doctest::Approx(0.3 / (2.0 * 1.09)).epsilon(1e-14));
    CHECK(dB_G_minus(p, 2.0, 10.0 / 3.0) ==
          doctest::Approx(0.3 / (2.0 * 1.09)).epsilon(1e-12));
    CHECK(central_derivative([&](double t) { return G_plus(p, t, 2.0); }, 1.0) ==
          doctest::Approx(dB_G_plus(p, 1.0, 2.0)).epsilon(1e-8));
    CHECK(central_derivative([&](double t) { return G_minus(p, t, 2.0); }, 1.0) ==
          doctest::Approx(dB_G_minus(p, 1.0, 2.0)).epsilon(1e-8));
}

TEST_CASE("arctan primitive") {
    CHECK(arctan_primitive(0.0) == 0.0);
    CHECK(arctan_primitive(1.0) ==
          doctest::Approx(M_PI / 4.0 - std::log(2.0) / 2.0).epsilon(1e-15));
    for (double s : {0.3, 1.7, 12.0})
        CHECK(arctan_primitive(s) == arctan_primitive(-s));
    // flux primitive differentiates to arctan(c/w)
    CHECK(central_derivative([](double w) { return arctan_flux_primitive(w, 0.7); },
                             1.3) == doctest::Approx(std::atan(0.7 / 1.3)).epsilon(1e-9));
}

TEST_CASE("slope-ray identity for the printed antiderivative") {
    // a(1+a^2) h(y, 2-ay) = d/dy [ (1-3a^2-2a(1-a^2)y) / (y^2+(2-ay)^2) ]
    for (double av : {0.1, 0.3}) {
        const SlopeParam p(av);
        const double a2 = av * av;
        auto antideriv = [&](double y) {
            const double r = 2.0 - av * y;
            return (1.0 - 3.0 * a2 - 2.0 * av * (1.0 - a2) * y) / (y * y + r * r);
        };
        for (double y : {-3.0, -1.0, 0.5, 1.0, 4.0}) {
            CHECK(av * (1.0 + a2) * h_kernel(p, y, 2.0 - av * y) ==
                  doctest::Approx(central_derivative(antideriv, y, 1e-3)).epsilon(1e-9));
        }
    }
}

TEST_SUITE_END();
