#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eisen/hyperbolic.hpp"

using namespace eisen;

namespace {

// Cosine-rule form of the distance, independent of the library's asinh form.
double dist_acosh(const UHPoint& z, const UHPoint& w)
{
    const double dx = z.x() - w.x(), dy = z.y() - w.y();
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y() * w.y()));
}

MoebiusTransform random_sl2(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c > 0.1) return MoebiusTransform(a, b, c, d);
    }
}

}  // namespace

TEST(UHPoint, RejectsLowerHalfPlane)
{
    EXPECT_THROW(UHPoint(0.0, 0.0), domain_error);
    EXPECT_THROW(UHPoint(0.0, -1.0), domain_error);
    EXPECT_THROW(UHPoint(NAN, 1.0), domain_error);
}

TEST(Moebius, NormalizesDeterminantAndSign)
{
    const MoebiusTransform m(2.0, 0.0, 0.0, 2.0);
    EXPECT_TRUE(m.approx_equal(MoebiusTransform::identity(), 1e-15));
    const MoebiusTransform n(-1.0, -2.0, -3.0, -7.0);
    EXPECT_NEAR(n.matrix().det(), 1.0, 1e-12);
    EXPECT_TRUE(n.approx_equal(MoebiusTransform(1.0, 2.0, 3.0, 7.0), 1e-15));
    EXPECT_THROW(MoebiusTransform(0.0, 1.0, 1.0, 0.0), domain_error);
}

TEST(Apply, Examples)
{
    const UHPoint i(0.0, 1.0);
    EXPECT_EQ(apply(MoebiusTransform::identity(), i), i);
    const UHPoint t = apply(MoebiusTransform::translation(1.0), i);
    EXPECT_DOUBLE_EQ(t.x(), 1.0);
    EXPECT_DOUBLE_EQ(t.y(), 1.0);
    const UHPoint d = apply(MoebiusTransform::diagonal(2.0), i);
    EXPECT_DOUBLE_EQ(d.x(), 0.0);
    EXPECT_DOUBLE_EQ(d.y(), 4.0);
}

TEST(Dist, Examples)
{
    EXPECT_DOUBLE_EQ(dist(UHPoint(0, 1), UHPoint(0, 1)), 0.0);
    EXPECT_NEAR(dist(UHPoint(0, 1), UHPoint(0, 4)), std::log(4.0), 1e-15);
    EXPECT_NEAR(dist(UHPoint(0, 1), UHPoint(1, 1)), std::acosh(1.5), 1e-15);
    EXPECT_NEAR(dist(UHPoint(0, 1), UHPoint(1, 1)), 0.962424, 1e-6);
}

TEST(Dist, MetricPropertiesAndInvariance)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.05, 4);
    for (int k = 0; k < 2000; ++k) {
        const UHPoint z(ux(rng), uy(rng)), w(ux(rng), uy(rng)), v(ux(rng), uy(rng));
        const double d = dist(z, w);
        EXPECT_NEAR(d, dist(w, z), 1e-14);
        EXPECT_NEAR(d, dist_acosh(z, w), 1e-9 * (1 + d));
        EXPECT_LE(d, dist(z, v) + dist(v, w) + 1e-12);
        const MoebiusTransform m = random_sl2(rng);
        const double dm = dist(apply(m, z), apply(m, w));
        EXPECT_NEAR(dm, d, 1e-9 * (1 + d));
    }
}

TEST(AxisCoords, ExamplesAndRoundTrip)
{
    auto c = axis_coords(UHPoint(0, 1));
    EXPECT_NEAR(c.rho, 0.0, 1e-15);
    EXPECT_NEAR(c.theta, pi / 2, 1e-15);
    c = axis_coords(UHPoint(0, std::exp(1.0)));
    EXPECT_NEAR(c.rho, 1.0, 1e-15);
    c = axis_coords(UHPoint(1, 1));
    EXPECT_NEAR(c.rho, 0.5 * std::log(2.0), 1e-15);
    EXPECT_NEAR(c.theta, pi / 4, 1e-15);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ur(-4, 4), ut(1e-3, pi - 1e-3);
    for (int k = 0; k < 1000; ++k) {
        const AxisCoords a{ur(rng), ut(rng)};
        const AxisCoords b = axis_coords(from_axis_coords(a));
        EXPECT_NEAR(a.rho, b.rho, 1e-13);
        EXPECT_NEAR(a.theta, b.theta, 1e-13);
    }
    EXPECT_THROW(from_axis_coords({0.0, 0.0}), domain_error);
}

TEST(DistToAxis, Examples)
{
    EXPECT_DOUBLE_EQ(dist_to_axis(UHPoint(0, 3)), 0.0);
    EXPECT_NEAR(dist_to_axis(UHPoint(1, 1)), std::log(std::sqrt(2.0) + 1.0), 1e-15);
    EXPECT_NEAR(dist_to_axis(UHPoint(1, 1)), 0.881374, 1e-6);
}

TEST(DistToAxis, SinCoshIdentityAndMinimality)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(-3, 3), ut(1e-3, pi - 1e-3), ua(-6, 6);
    for (int k = 0; k < 2000; ++k) {
        const double theta = ut(rng);
        const UHPoint z = from_axis_coords({ur(rng), theta});
        const double d = dist_to_axis(z);
        EXPECT_NEAR(std::sin(theta) * std::cosh(d), 1.0, 1e-12);
        EXPECT_NEAR(d, std::abs(std::log(1.0 / std::sin(theta) + 1.0 / std::tan(theta))), 1e-9 * (1 + d));
        // No point of the axis is closer.
        const UHPoint on_axis(0.0, std::exp(ua(rng)));
        EXPECT_GE(dist(z, on_axis), d - 1e-12);
    }
}

TEST(DistToHorocycle, Examples)
{
    EXPECT_DOUBLE_EQ(dist_to_horocycle(UHPoint(0, 1), 1.0), 0.0);
    EXPECT_NEAR(dist_to_horocycle(UHPoint(0, 1), std::exp(1.0)), 1.0, 1e-15);
    EXPECT_NEAR(dist_to_horocycle(UHPoint(3, 2), 8.0), std::log(4.0), 1e-15);
    EXPECT_THROW(dist_to_horocycle(UHPoint(0, 2), 1.0), domain_error);
}

TEST(DistToHorocycle, MatchesPointAbove)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.01, 2), up(0.01, 5);
    for (int k = 0; k < 1000; ++k) {
        const UHPoint z(ux(rng), uy(rng));
        const double y0 = z.y() * std::exp(up(rng));
        EXPECT_NEAR(dist_to_horocycle(z, y0), dist_acosh(z, UHPoint(z.x(), y0)), 1e-7);
    }
}

TEST(Classify, Examples)
{
    EXPECT_EQ(classify(MoebiusTransform::translation(1.0)), ElementClass::Parabolic);
    EXPECT_THROW(translation_length(MoebiusTransform::translation(1.0)), classification_error);
    EXPECT_EQ(classify(MoebiusTransform::diagonal(2.0)), ElementClass::Hyperbolic);
    EXPECT_NEAR(translation_length(MoebiusTransform::diagonal(2.0)), 2.0 * std::log(2.0), 1e-14);
    EXPECT_EQ(classify(MoebiusTransform(0, 1, -1, 0)), ElementClass::Elliptic);
    EXPECT_EQ(classify(MoebiusTransform::identity()), ElementClass::Identity);
}

TEST(Diagonalize, Postcondition)
{
    auto check = [](const MoebiusTransform& m) {
        const MoebiusTransform c = diagonalize(m);
        const MoebiusTransform d = c * m * c.inverse();
        const double l = translation_length(m);
        EXPECT_TRUE(d.approx_equal(MoebiusTransform(std::exp(l / 2), 0, 0, std::exp(-l / 2)), 1e-10))
            << m << " -> " << d;
    };
    check(MoebiusTransform::diagonal(2.0));
    const MoebiusTransform t = MoebiusTransform::translation(1.0);
    check(t * MoebiusTransform::diagonal(2.0) * t.inverse());
    std::mt19937_64 rng(17);
    int n = 0;
    while (n < 200) {
        const MoebiusTransform m = random_sl2(rng);
        if (std::abs(m.trace()) < 2.05) continue;
        check(m);
        ++n;
    }
}

TEST(CuspToInfinity, WidthAndFixedPoint)
{
    // Parabolic fixing 1 with some translation amount.
    const MoebiusTransform move(1, 1, 0, 1);
    const MoebiusTransform m = move * MoebiusTransform(1, 0, -3, 1) * move.inverse();
    ASSERT_EQ(classify(m), ElementClass::Parabolic);
    const MoebiusTransform c = cusp_to_infinity(m, 2.5);
    const MoebiusTransform t = c * m * c.inverse();
    EXPECT_NEAR(t.c(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(t.b() / t.a()), 2.5, 1e-12);
}

TEST(MoebiusFromPoints, SendsTriples)
{
    const std::array<ProjPoint, 3> src{ProjPoint::real(-1), ProjPoint::real(0), ProjPoint::real(1)};
    const std::array<ProjPoint, 3> dst{ProjPoint::real(0), ProjPoint::real(1), ProjPoint::at_infinity()};
    const MoebiusTransform m = moebius_from_points(src, dst);
    for (int i = 0; i < 3; ++i) {
        const ProjPoint q = transform(m.matrix(), src[i]);
        const ProjPoint e = dst[i];
        EXPECT_NEAR(q.u * e.v - q.v * e.u, 0.0, 1e-12) << i;
    }
}

TEST(BallVolume, Examples)
{
    EXPECT_DOUBLE_EQ(ball_volume(0.0), 0.0);
    for (double r : {1e-2, 1e-3, 1e-4}) EXPECT_NEAR(ball_volume(r) / (pi * r * r), 1.0, r);
    EXPECT_NEAR(ball_volume(2.0), 4.0 * pi * std::sinh(1.0) * std::sinh(1.0), 1e-12);
    EXPECT_NEAR(ball_volume(2.0), 17.35539, 1e-5);
    // Area of the disc as the integral of 2 pi sinh(t).
    EXPECT_NEAR(ball_volume(3.0), 2.0 * pi * (std::cosh(3.0) - 1.0), 1e-10);
    EXPECT_THROW(ball_volume(-1.0), domain_error);
}
