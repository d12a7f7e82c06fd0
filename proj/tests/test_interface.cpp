#include <doctest.h>

#include <cmath>

#include "muskat/profile.hpp"
#include "muskat/run_io.hpp"

using namespace muskat;

namespace {

InterfaceProfile cos_bump(double eps, double nu, int n) {
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i)
        s[i] = eps * (1.0 - std::cos(2.0 * M_PI * i / n)) / 2.0;
    return InterfaceProfile(DomainSpec::periodic(PlaneKind::HalfPlane, nu),
                            std::move(s));
}

}  // namespace

TEST_SUITE_BEGIN("interface");

TEST_CASE("domain spec validation") {
    CHECK_THROWS_AS(DomainSpec::periodic(PlaneKind::HalfPlane, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(DomainSpec::asymptotic(PlaneKind::HalfPlane, -0.5, 4.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(DomainSpec::asymptotic(PlaneKind::HalfPlane, 1.0, 0.0),
                    std::invalid_argument);
    // whole plane allows any real far field
    CHECK_NOTHROW(DomainSpec::asymptotic(PlaneKind::WholePlane, -2.0, 4.0));
}

TEST_CASE("profile invariants are enforced") {
    const auto dom = DomainSpec::periodic(PlaneKind::HalfPlane, 1.0);
    CHECK_THROWS_AS(InterfaceProfile(dom, std::vector<double>(24, 0.1)),
                    std::invalid_argument);  // not a power of two
    std::vector<double> neg(32, 0.1);
    neg[5] = -1e-3;
    CHECK_THROWS_AS(InterfaceProfile(dom, neg), std::invalid_argument);
    std::vector<double> bad(32, 0.1);
    bad[7] = NAN;
    CHECK_THROWS_AS(InterfaceProfile(dom, bad), std::invalid_argument);
    CHECK_THROWS_AS(InterfaceProfile(dom, std::vector<double>(4, 0.1)),
                    std::invalid_argument);  // too small

    const auto adom = DomainSpec::asymptotic(PlaneKind::HalfPlane, 1.0, 8.0);
    std::vector<double> tail_bad(64, 1.0);
    tail_bad[1] = 1.1;  // violates the far-field band
    CHECK_THROWS_AS(InterfaceProfile(adom, tail_bad), std::invalid_argument);
    CHECK_NOTHROW(InterfaceProfile(adom, std::vector<double>(64, 1.0)));
}

TEST_CASE("spectral derivative annihilates constants exactly") {
    const int n = 64;
    const std::vector<double> c(n, 3.7);
    for (int order : {1, 2, 3}) {
        const auto d = derivative_raw(c, 0.01, true, order);
        for (double v : d) CHECK(v == 0.0);
    }
    const auto fd = derivative_raw(c, 0.01, false, 1);
    for (double v : fd) CHECK(v == 0.0);
}

TEST_CASE("spectral derivative is spectrally accurate on the cosine bump") {
    const double eps = 0.1, nu = 1.0;
    const int n = 256;
    const auto p = cos_bump(eps, nu, n);
    const auto d1 = derivative(p, 1);
    const auto d2 = derivative(p, 2);
    const auto d3 = derivative(p, 3);
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        e1 = std::max(e1, std::abs(d1[i] - eps * M_PI * std::sin(2.0 * M_PI * x)));
        e2 = std::max(e2, std::abs(d2[i] - 2.0 * eps * M_PI * M_PI * std::cos(2.0 * M_PI * x)));
        e3 = std::max(e3,
                      std::abs(d3[i] + 4.0 * eps * std::pow(M_PI, 3) * std::sin(2.0 * M_PI * x)));
    }
    CHECK(e1 <= 1e-10);
    CHECK(e2 <= 1e-9);
    CHECK(e3 <= 1e-7);
}

TEST_CASE("derivative is linear") {
    const int n = 128;
    std::vector<double> f(n), g(n), sum(n);
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        f[i] = std::sin(2.0 * M_PI * x);
        g[i] = std::cos(4.0 * M_PI * x);
        sum[i] = 2.0 * f[i] + 0.5 * g[i];
    }
    const auto df = derivative_raw(f, 1.0 / n, true, 1);
    const auto dg = derivative_raw(g, 1.0 / n, true, 1);
    const auto ds = derivative_raw(sum, 1.0 / n, true, 1);
    for (int i = 0; i < n; ++i)
        CHECK(ds[i] == doctest::Approx(2.0 * df[i] + 0.5 * dg[i]).epsilon(1e-11));
}

TEST_CASE("finite-difference derivative is 4th order on polynomials") {
    const int n = 64;
    const double dx = 0.1;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        const double x = i * dx;
        f[i] = 0.3 * x * x * x - x * x + 2.0 * x + 5.0;
    }
    const auto d1 = derivative_raw(f, dx, false, 1);
    const auto d2 = derivative_raw(f, dx, false, 2);
    const auto d3 = derivative_raw(f, dx, false, 3);
    for (int i = 4; i < n - 4; ++i) {  // interior (constant extension pollutes edges)
        const double x = i * dx;
        CHECK(d1[i] == doctest::Approx(0.9 * x * x - 2.0 * x + 2.0).epsilon(1e-11));
        CHECK(d2[i] == doctest::Approx(1.8 * x - 2.0).epsilon(1e-10));
        CHECK(d3[i] == doctest::Approx(1.8).epsilon(1e-9));
    }
    CHECK_THROWS_AS(derivative_raw(f, dx, false, 4), std::invalid_argument);
}

TEST_CASE("norms of a constant profile") {
    const auto dom = DomainSpec::periodic(PlaneKind::HalfPlane, 1.0);
    const InterfaceProfile p(dom, std::vector<double>(64, 0.7));
    CHECK(max_slope(p) == 0.0);
    CHECK(sup_norm(p) == 0.7);
    CHECK(min_height(p) == 0.7);
}

TEST_CASE("slope, mass and energy of the touching cosine bump") {
    const double eps = 3.0 / (10.0 * M_PI);  // max slope exactly 0.3
    const int n = 256;
    const auto p = cos_bump(eps, 1.0, n);
    CHECK(max_slope(p) == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(min_height(p) == 0.0);  // cos(0) = 1 makes the sample exactly 0
    // analytic: integral eps/2, squared integral 3 eps^2 / 8 (trapezoid is
    // exact for low trигonometric modes)
    CHECK(l1_mass(p) == doctest::Approx(eps / 2.0).epsilon(1e-13));
    CHECK(l2_energy(p) == doctest::Approx(3.0 * eps * eps / 8.0).epsilon(1e-13));
}

TEST_CASE("asymptotic mass and energy vanish at the far-field constant") {
    const auto dom = DomainSpec::asymptotic(PlaneKind::HalfPlane, 1.3, 8.0);
    const InterfaceProfile p(dom, std::vector<double>(64, 1.3));
    CHECK(l1_mass(p) == 0.0);
    CHECK(l2_energy(p) == 0.0);
}

TEST_CASE("mass and energy are rotation invariant on the periodic grid") {
    const int n = 128;
    const auto p = cos_bump(0.08, 1.0, n);
    auto rotated = p.samples();
    std::rotate(rotated.begin(), rotated.begin() + 37, rotated.end());
    const InterfaceProfile q(p.domain(), rotated);
    CHECK(l1_mass(q) == doctest::Approx(l1_mass(p)).epsilon(1e-14));
    CHECK(l2_energy(q) == doctest::Approx(l2_energy(p)).epsilon(1e-14));
}

TEST_CASE("holder seminorm of f_xx") {
    const int n = 256;
    const auto dom = DomainSpec::periodic(PlaneKind::HalfPlane, 1.0);
    CHECK(holder_seminorm_fxx(InterfaceProfile(dom, std::vector<double>(n, 0.4)), 0.5) ==
          0.0);
    // quadratic data has constant f_xx; checked on the raw interior since a
    // quadratic violates the asymptotic far-field invariant
    {
        const double dx = 0.05;
        std::vector<double> f(n);
        for (int i = 0; i < n; ++i) f[i] = 0.3 * (i * dx) * (i * dx);
        const auto fxx = derivative_raw(f, dx, false, 2);
        const std::vector<double> inner(fxx.begin() + 8, fxx.end() - 8);
        CHECK(holder_quotient_raw(inner, dx, dx * inner.size(), false, 0.5) <= 1e-9);
    }
    // Lipschitz seminorm of f_xx for the cosine bump approaches sup|f_xxx|
    const double eps = 0.1;
    const auto p = cos_bump(eps, 1.0, n);
    const double expect = 4.0 * eps * std::pow(M_PI, 3);
    CHECK(holder_seminorm_fxx(p, 1.0) == doctest::Approx(expect).epsilon(0.05));
    // scaling: f -> c f scales the seminorm by c
    std::vector<double> scaled = p.samples();
    for (double& v : scaled) v *= 2.5;
    const InterfaceProfile q(p.domain(), scaled);
    CHECK(holder_seminorm_fxx(q, 0.5) ==
          doctest::Approx(2.5 * holder_seminorm_fxx(p, 0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(holder_seminorm_fxx(p, 1.5), std::invalid_argument);
}

TEST_CASE("snapshot json round-trips samples bit-identically") {
    const auto p = cos_bump(0.085, 1.0, 64);
    const std::string text = snapshot_to_json(0.375, p);
    const auto [t, q] = snapshot_from_json(text);
    CHECK(t == 0.375);
    REQUIRE(q.size() == p.size());
    for (int i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
    CHECK(q.domain().period == p.domain().period);
    // and a second round trip is byte-identical
    CHECK(snapshot_to_json(0.375, q) == text);
}

TEST_SUITE_END();
