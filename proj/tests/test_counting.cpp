#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "eisen/counting.hpp"
#include "eisen/degeneration.hpp"
#include "eisen/verify.hpp"

#include "brute_force.hpp"

using namespace eisen;

namespace {

double sinh2(double x) { return std::sinh(x) * std::sinh(x); }

std::size_t count_below(const std::map<std::string, double>& m, double T)
{
    std::size_t n = 0;
    for (const auto& [w, d] : m) n += d < T ? 1 : 0;
    return n;
}

std::vector<double> grid(double a, double b, double step)
{
    std::vector<double> v;
    for (double x = a; x <= b + 1e-12; x += step) v.push_back(x);
    return v;
}

}  // namespace

TEST(CountingFunction, DefinitionAndMonotone)
{
    const FuchsianGroup g = punctured_torus_group(1.0);
    const UHPoint z(0.3, 1.1);
    const CountingFunction N(orbit_distances_hyp(g, g.word("A"), z, 6.0), CountingKind::Hyp);
    EXPECT_EQ(N(0.0), 0u);
    std::size_t prev = 0;
    for (double T = 0.0; T <= 6.0; T += 0.01) {
        const std::size_t n = N(T);
        EXPECT_GE(n, prev);
        prev = n;
        std::size_t direct = 0;
        for (double d : N.spectrum().distances) direct += d < T ? 1 : 0;
        EXPECT_EQ(n, direct) << T;
    }
    EXPECT_EQ(N(6.0), N.spectrum().size());
    EXPECT_THROW(N(6.5), incomplete_spectrum);
}

TEST(CountingFunction, IncompleteSpectrumRefusesToCount)
{
    const FuchsianGroup g = punctured_torus_group(1.0);
    EnumerationOptions o;
    o.max_depth = 2;
    const DistanceSpectrum spec = orbit_distances_hyp(g, g.word("A"), UHPoint(0.3, 1.1), 6.0, o);
    ASSERT_FALSE(spec.complete);
    const CountingFunction N(spec, CountingKind::Hyp);
    EXPECT_THROW(N(1.0), incomplete_spectrum);
    EXPECT_THROW(n_hyp(g, g.word("A"), UHPoint(0.3, 1.1), 6.0, o), incomplete_spectrum);
}

TEST(NHyp, CyclicStep)
{
    const FuchsianGroup g = cyclic_group(MoebiusTransform::diagonal(std::exp(0.5)));
    const UHPoint z(0.7, 1.3);
    const double d = dist_to_axis(z);
    EXPECT_EQ(n_hyp(g, Word{0}, z, d - 1e-6), 0u);
    EXPECT_EQ(n_hyp(g, Word{0}, z, d), 0u);
    EXPECT_EQ(n_hyp(g, Word{0}, z, d + 1e-6), 1u);
    EXPECT_EQ(n_hyp(g, Word{0}, z, 0.0), 0u);
}

TEST(NHyp, TorusMatchesBruteForce)
{
    const FuchsianGroup g = punctured_torus_group(1.0);
    const UHPoint z(0.3, 1.1);
    const int L = static_cast<int>(orbit_distances_hyp(g, g.word("A"), z, 4.5).search_depth) + 4;
    const auto brute = brute::brute_cosets(
        g, 'A', L, [](const UHPoint& w) { return dist_to_axis(w); }, z, 4.5);
    for (double T : grid(0.25, 4.5, 0.25)) EXPECT_EQ(n_hyp(g, g.word("A"), z, T), count_below(brute, T)) << T;
}

TEST(NPar, CyclicStepAndLevelTwoBruteForce)
{
    const FuchsianGroup c = cyclic_group(MoebiusTransform::translation(1.0));
    const UHPoint w(0.1, 0.5);
    const double step = std::log(3.0 / 0.5);
    EXPECT_EQ(n_par(c, Word{0}, w, 3.0, step - 1e-9), 0u);
    EXPECT_EQ(n_par(c, Word{0}, w, 3.0, step + 1e-9), 1u);

    const FuchsianGroup g = thrice_punctured_sphere_group();
    const UHPoint z(0.0, 1.0);
    const int L = static_cast<int>(orbit_distances_par(g, g.word("A"), z, 10.0, 5.0).search_depth) + 4;
    const auto brute = brute::brute_cosets(
        g, 'A', L, [](const UHPoint& p) { return std::log(10.0 / p.y()); }, z, 5.0);
    for (double T : grid(0.25, 5.0, 0.25)) EXPECT_EQ(n_par(g, g.word("A"), z, 10.0, T), count_below(brute, T)) << T;
}

TEST(NPar, HeightShiftsCounts)
{
    const FuchsianGroup g = thrice_punctured_sphere_group();
    const UHPoint z(0.3, 1.1);
    for (double T : grid(0.5, 5.0, 0.5)) {
        EXPECT_EQ(n_par(g, g.word("A"), z, 10.0, T), n_par(g, g.word("A"), z, 30.0, T + std::log(3.0)));
    }
}

TEST(NBoundary, ShiftIdentityExact)
{
    const double ell = 0.5, omega = 2.0, y0 = 10.0;
    const double eps = horocycle_area_relation(omega, y0).epsilon;
    const double g = collar_half_width(y0, ell, omega);
    EXPECT_NEAR(collar_boundary_height(ell, eps), g, 1e-14);
    const FuchsianGroup G = punctured_torus_group(ell);
    const UHPoint z(0.3, 1.1);
    const CountingFunction N(orbit_distances_hyp(G, G.word("A"), z, 8.0 + g), CountingKind::Hyp);
    for (double T : grid(0.13, 7.93, 0.2)) EXPECT_EQ(N(T + g), n_boundary(G, G.word("A"), z, eps, T)) << T;
}

TEST(NBoundary, CyclicStepAndOutsideCollar)
{
    const double ell = 0.8;
    const FuchsianGroup g = cyclic_group(MoebiusTransform::diagonal(std::exp(ell / 2.0)));
    const double eps = 0.4;
    const double gw = collar_boundary_height(ell, eps);
    const UHPoint z = from_axis_coords({0.2, 0.3});
    const double d = dist_to_axis(z);
    ASSERT_GT(d, gw);
    EXPECT_EQ(n_boundary(g, Word{0}, z, eps, 0.0), 0u);
    EXPECT_EQ(n_boundary(g, Word{0}, z, eps, d - gw - 1e-9), 0u);
    EXPECT_EQ(n_boundary(g, Word{0}, z, eps, d - gw + 1e-9), 1u);
    EXPECT_NEAR(dist_to_collar_boundary(z, ell, eps), d - gw, 1e-12);
}

TEST(BoundRhs, Examples)
{
    const double expect = 2.0 + (sinh2(1.75) - sinh2(0.25)) / sinh2(0.25);
    EXPECT_NEAR(bound_rhs(2, 1.0, 3.0, 0.5), expect, 1e-12);
    EXPECT_NEAR(bound_rhs(2, 1.0, 3.0, 0.5), 123.02, 0.01);
    // At u = T0 the increment is sinh(r) sinh(T0) / sinh^2(r/2).
    for (double r : {0.1, 0.5, 1.0}) {
        for (double T0 : {1.5, 3.0}) {
            const double inc = bound_rhs(0, T0, T0 * (1 + 1e-13), r);
            EXPECT_NEAR(inc, std::sinh(r) * std::sinh(T0) / sinh2(r / 2.0), 1e-8 * inc);
        }
    }
    double prev = 0.0;
    for (double u : grid(1.1, 9.0, 0.1)) {
        const double b = bound_rhs(3, 1.0, u, 0.5);
        EXPECT_GT(b, prev);
        prev = b;
    }
    EXPECT_THROW(bound_rhs(1, 1.0, 0.5, 0.5), domain_error);
    EXPECT_THROW(bound_rhs(1, 0.4, 2.0, 0.5), domain_error);
    EXPECT_THROW(bound_rhs(1, 1.0, 2.0, 0.0), domain_error);
}

TEST(VerifyBound, HoldsOnCyclicTorusAndLevelTwo)
{
    const FuchsianGroup c = cyclic_group(MoebiusTransform::diagonal(std::exp(0.5)));
    BoundSetup cs;
    cs.stabilizer = Word{0};
    EXPECT_TRUE(verify_bound(c, UHPoint(0.2, 1.0), {1.0, 2.0}, grid(1.5, 6.0, 0.25), cs).ok());

    const FuchsianGroup t = punctured_torus_group(1.0);
    BoundSetup ts;
    ts.stabilizer = t.word("A");
    const BoundReport rt = verify_bound(t, UHPoint(0.3, 1.1), {1.0}, grid(1.5, 6.0, 0.25), ts);
    EXPECT_TRUE(rt.ok());
    EXPECT_EQ(rt.checked, 19u);
    EXPECT_GT(rt.worst_margin, 0.0);

    const FuchsianGroup l2 = thrice_punctured_sphere_group();
    BoundSetup ps;
    ps.kind = CountingKind::Par;
    ps.stabilizer = l2.word("A");
    ps.y0 = 10.0;
    EXPECT_TRUE(verify_bound(l2, UHPoint(0.3, 1.1), {1.0, 2.0}, grid(1.5, 8.0, 0.25), ps).ok());

    BoundSetup bad = ts;
    bad.kind = CountingKind::Boundary;
    EXPECT_THROW(verify_bound(t, UHPoint(0.3, 1.1), {1.0}, {2.0}, bad), domain_error);
}

// Negative control: a corrupted bound formula must be caught.
TEST(VerifyBound, CorruptedFormulaIsDetected)
{
    const FuchsianGroup t = punctured_torus_group(1.0);
    BoundSetup ts;
    ts.stabilizer = t.word("A");
    const BoundFormula corrupted = [](double n0, double, double, double) { return n0; };
    const BoundReport rep = verify_bound(t, UHPoint(0.3, 1.1), {1.0}, grid(1.5, 6.0, 0.25), ts, corrupted);
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.violations.empty());

    verify::Options opt;
    opt.bound = corrupted;
    const verify::SuiteResult res = verify::bounds(opt);
    EXPECT_FALSE(res.pass());
    bool named = false;
    for (const auto& c : res.checks) named = named || (!c.pass && c.invariant == "bound violations");
    EXPECT_TRUE(named);
}
