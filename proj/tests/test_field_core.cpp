#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "sqglab/datasets.hpp"
#include "sqglab/transform.hpp"

using namespace sqg;

TEST_CASE("make_grid derives dx and validates input") {
    Grid g = make_grid(64, 3.14159265);
    CHECK(g.dx == doctest::Approx(0.09817477).epsilon(1e-6));
    CHECK(make_grid(16, 1.0).dx == 0.125);
    CHECK_THROWS_AS(make_grid(15, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(64, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(64, -2.0), std::invalid_argument);
}

TEST_CASE("grid coordinates round-trip") {
    Grid g = make_grid(32, 2.5);
    for (int i = 0; i < g.n; ++i)
        CHECK(g.x(i) == doctest::Approx(-g.l + i * g.dx).epsilon(1e-15));
    CHECK(g.x(0) == -g.l);
}

TEST_CASE("cosine transforms to a single mode pair") {
    Grid g = make_grid(64, 2.0);
    RealField f = RealField::from_function(
        g, [&](double x, double) { return std::cos(M_PI * x / g.l); });
    SpectralField F = to_spectral(f);

    CHECK(F.coeff(1, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(F.coeff(-1, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(F.coeff(1, 0).imag()) < 1e-14);

    double other = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            int k1 = g.wavenumber(i), k2 = g.wavenumber(j);
            if (std::abs(k1) == 1 && k2 == 0) continue;
            other = std::max(other, std::abs(F.at(i, j)));
        }
    CHECK(other < 1e-14);
}

TEST_CASE("zero field transforms to zero coefficients") {
    Grid g = make_grid(16, 1.0);
    SpectralField F = to_spectral(RealField(g));
    for (auto z : F.data()) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("transform round-trip is identity to 1e-12 relative") {
    Grid g = make_grid(128, 3.0);
    RealField f = random_smooth_field(g, 7, 2.5);
    RealField back = to_real(to_spectral(f));
    double err = 0.0;
    for (size_t k = 0; k < f.values().size(); ++k)
        err = std::max(err, std::abs(f.values()[k] - back.values()[k]));
    CHECK(err <= 1e-12 * f.max_abs());
}

TEST_CASE("non-finite input is rejected") {
    Grid g = make_grid(16, 1.0);
    RealField f(g);
    f(3, 4) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(to_spectral(f), std::invalid_argument);
}

TEST_CASE("hermitian symmetry and real zero mode") {
    Grid g = make_grid(64, 1.5);
    SpectralField F = to_spectral(random_smooth_field(g, 9, 1.0));
    CHECK(F.hermitian_defect() < 1e-14);
}

TEST_CASE("gradient of resolved modes is exact") {
    Grid g = make_grid(64, 2.0);
    const double k = M_PI / g.l;

    RealField s = RealField::from_function(g, [&](double x, double) { return std::sin(k * x); });
    VectorField gs = gradient(to_spectral(s));
    double e1 = 0.0, e2 = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            e1 = std::max(e1, std::abs(gs.v1(i, j) - k * std::cos(k * g.x(i))));
            e2 = std::max(e2, std::abs(gs.v2(i, j)));
        }
    CHECK(e1 < 1e-12);
    CHECK(e2 < 1e-13);

    RealField c = RealField::from_function(g, [&](double, double y) { return std::cos(2 * k * y); });
    VectorField gc = gradient(to_spectral(c));
    e1 = e2 = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            e1 = std::max(e1, std::abs(gc.v1(i, j)));
            e2 = std::max(e2, std::abs(gc.v2(i, j) + 2 * k * std::sin(2 * k * g.x(j))));
        }
    CHECK(e1 < 1e-13);
    CHECK(e2 < 1e-12);

    VectorField gconst = gradient(to_spectral(RealField(g, 4.2)));
    CHECK(gconst.v1.max_abs() < 1e-14);
    CHECK(gconst.v2.max_abs() < 1e-14);
}

TEST_CASE("gradient of a product of low modes matches the analytic derivative") {
    Grid g = make_grid(128, 2.0);
    const double k = M_PI / g.l;
    RealField f = RealField::from_function(
        g, [&](double x, double y) { return std::cos(k * x) * std::sin(2 * k * y); });
    VectorField gf = gradient(to_spectral(f));
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double x = g.x(i), y = g.x(j);
            worst = std::max(worst,
                             std::abs(gf.v1(i, j) + k * std::sin(k * x) * std::sin(2 * k * y)));
            worst = std::max(worst,
                             std::abs(gf.v2(i, j) - 2 * k * std::cos(k * x) * std::cos(2 * k * y)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("dealias truncates above n/3 and is idempotent") {
    Grid g = make_grid(16, 1.0);
    SpectralField F(g);
    F.set_coeff(7, 0, {1.0, 0.0});
    F.set_coeff(-7, 0, {1.0, 0.0});
    F.set_coeff(1, 1, {0.5, 0.0});
    F.set_coeff(-1, -1, {0.5, 0.0});
    SpectralField D = dealias(F);
    CHECK(std::abs(D.coeff(7, 0)) == 0.0);
    CHECK(std::abs(D.coeff(1, 1)) == doctest::Approx(0.5));

    Grid g2 = make_grid(64, 2.0);
    SpectralField R = to_spectral(random_smooth_field(g2, 11, 1.0, 20));
    SpectralField D1 = dealias(R);
    SpectralField D2 = dealias(D1);
    for (size_t i = 0; i < D1.data().size(); ++i) CHECK(D1.data()[i] == D2.data()[i]);
}

TEST_CASE("parseval identity on random fields") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Grid g = make_grid(64, 2.7);
        RealField f = random_smooth_field(g, seed, 1.0 + static_cast<double>(seed));
        double phys = parseval_physical(f);
        double spec = parseval_spectral(to_spectral(f));
        CHECK(std::abs(phys - spec) <= 1e-10 * phys);
    }
}

TEST_CASE("transforms are deterministic bit for bit") {
    Grid g = make_grid(128, 2.0);
    RealField f = random_smooth_field(g, 31, 1.0);
    SpectralField a = to_spectral(f);
    SpectralField b = to_spectral(f);
    CHECK(std::memcmp(a.data().data(), b.data().data(),
                      a.data().size() * sizeof(std::complex<double>)) == 0);
}
