#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eisen/fuchsian.hpp"
#include "eisen/orbit.hpp"

using namespace eisen;

namespace {

double max_entry_diff(const MoebiusTransform& m, const MoebiusTransform& n)
{
    auto diff = [&](double s) {
        return std::max({std::abs(m.a() - s * n.a()), std::abs(m.b() - s * n.b()), std::abs(m.c() - s * n.c()),
                         std::abs(m.d() - s * n.d())});
    };
    return std::min(diff(1.0), diff(-1.0));
}

void expect_inverse_pairs(const FuchsianGroup& g, double tol)
{
    for (int i = 0; i < g.rank(); ++i) {
        const Letter l = generator_letter(i);
        const MoebiusTransform prod = g.image(l) * g.image(inverse(l));
        EXPECT_LE(max_entry_diff(prod, MoebiusTransform::identity()), tol);
    }
}

}  // namespace

TEST(PuncturedTorus, TraceIdentities)
{
    for (double ell : {2.0, 1.0, 0.5, 0.1, 0.01, 0.002}) {
        const FuchsianGroup g = punctured_torus_group(ell);
        expect_inverse_pairs(g, 1e-12);
        const MoebiusTransform A = g.evaluate(g.word("A"));
        const MoebiusTransform B = g.evaluate(g.word("B"));
        const MoebiusTransform AB = g.evaluate(g.word("AB"));
        EXPECT_NEAR(translation_length(A), ell, 1e-12);
        // tr [A, B] from the Fricke trace identity.
        const double x = A.trace(), y = B.trace(), z = AB.trace();
        const double fricke = x * x + y * y + z * z - x * y * z - 2.0;
        EXPECT_NEAR(fricke, -2.0, 1e-9 * y * y) << ell;
        // Markov equation.
        EXPECT_NEAR((x * x + y * y + z * z) / (x * y * z), 1.0, 1e-12);
        // tr [A, B] by multiplying SL(2) matrices; the PSL(2) wrapper
        // forgets the sign. Rounding grows like tr(B)^2.
        const Mat2 a = A.matrix(), b = B.matrix();
        const Mat2 ai{a.d, -a.b, -a.c, a.a}, bi{b.d, -b.b, -b.c, b.a};
        const double direct = (a * b * ai * bi).trace();
        EXPECT_NEAR(direct, -2.0, std::max(1e-12, 1e-14 * y * y)) << ell;
        const MoebiusTransform P = g.evaluate(g.word("baBA"));
        EXPECT_NEAR(std::abs(P.trace()), 2.0, std::max(1e-12, 1e-13 * y * y)) << ell;
        if (ell >= 0.1) EXPECT_EQ(classify(P), ElementClass::Parabolic);
    }
}

TEST(PuncturedTorus, TraceOfBGrowsLikeFourOverEll)
{
    for (double ell : {1e-2, 5e-3, 2e-3, 1e-3}) {
        const FuchsianGroup g = punctured_torus_group(ell);
        EXPECT_NEAR(g.image(generator_letter(1)).trace() * ell / 4.0, 1.0, ell);
    }
    EXPECT_THROW(punctured_torus_group(5e-4), domain_error);
    EXPECT_THROW(punctured_torus_group(-1.0), domain_error);
}

TEST(PuncturedTorus, DomainPairingAndReduction)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ux(-5, 5), uy(0.02, 5);
    for (double ell : {1.0, 0.25, 0.01}) {
        const FuchsianGroup g = punctured_torus_group(ell);
        EXPECT_NO_THROW(g.validate_domain(1e-7));
        for (int k = 0; k < 200; ++k) {
            const UHPoint z(ux(rng), uy(rng));
            const DomainReduction red = g.reduce_to_domain(z);
            EXPECT_TRUE(g.in_domain(red.point));
            const UHPoint again = apply(g.evaluate(red.word), z);
            EXPECT_NEAR(dist(again, red.point), 0.0, 1e-7);
        }
    }
}

TEST(ThricePuncturedSphere, Generators)
{
    const FuchsianGroup g = thrice_punctured_sphere_group();
    expect_inverse_pairs(g, 1e-15);
    EXPECT_EQ(classify(g.image(generator_letter(0))), ElementClass::Parabolic);
    EXPECT_EQ(classify(g.image(generator_letter(1))), ElementClass::Parabolic);
    // [[1,2],[0,1]] [[1,0],[2,1]] = [[5,2],[2,1]]: hyperbolic. The third cusp
    // is A B^-1 = [[-3,2],[-2,1]], trace -2.
    EXPECT_NEAR(g.evaluate(g.word("AB")).trace(), 6.0, 1e-14);
    const MoebiusTransform ab_inv = g.evaluate(g.word("Ab"));
    EXPECT_NEAR(std::abs(ab_inv.trace()), 2.0, 1e-14);
    EXPECT_EQ(classify(ab_inv), ElementClass::Parabolic);
    const ProjPoint p = g.cusp_point(g.word("Ab"));
    EXPECT_NEAR(p.value(), 1.0, 1e-15);
    EXPECT_EQ(coset_reps(g.rank(), g.word("A"), 2).size(), 9u);
}

TEST(Frames, AxisAndCusp)
{
    const FuchsianGroup g = punctured_torus_group(0.7);
    const Frame bf = axis_frame(g, g.word("B"));
    const MoebiusTransform B = bf.group.evaluate(g.word("B"));
    EXPECT_NEAR(B.b(), 0.0, 1e-10);
    EXPECT_NEAR(B.c(), 0.0, 1e-10);
    EXPECT_GT(B.a(), 1.0);
    EXPECT_NO_THROW(bf.group.validate_domain(1e-7));
    const Frame cf = cusp_frame(g, g.word("baBA"), 2.0);
    const MoebiusTransform P = cf.group.evaluate(g.word("baBA"));
    EXPECT_NEAR(P.c(), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(P.b() / P.a()), 2.0, 1e-9);
    // Distances are preserved by the change of frame.
    const UHPoint z(0.3, 1.1), w(-0.2, 0.5);
    EXPECT_NEAR(dist(cf.to_frame(z), cf.to_frame(w)), dist(z, w), 1e-10);
}

TEST(Cyclic, Groups)
{
    const FuchsianGroup h = cyclic_group(MoebiusTransform::diagonal(std::exp(0.4)));
    EXPECT_NEAR(*h.ell(), 0.8, 1e-14);
    EXPECT_TRUE(h.in_domain(UHPoint(0.0, 1.0)));
    const FuchsianGroup p = cyclic_group(MoebiusTransform::translation(3.0));
    EXPECT_TRUE(p.in_domain(UHPoint(1.4, 0.1)));
    EXPECT_FALSE(p.in_domain(UHPoint(1.6, 0.1)));
    EXPECT_THROW(cyclic_group(MoebiusTransform(0, 1, -1, 0)), domain_error);
}

// The tracking frame converges to the level-2 group at rate ell^2.
TEST(TrackingFrame, ConvergesQuadratically)
{
    const FuchsianGroup lim = thrice_punctured_sphere_group();
    const MoebiusTransform A0 = lim.image(generator_letter(0));
    const MoebiusTransform Binv0 = lim.image(inverse(generator_letter(1)));
    std::vector<double> errs;
    for (double ell : {0.2, 0.1, 0.05, 0.025}) {
        const Frame f = punctured_torus_tracking_frame(ell);
        EXPECT_NEAR(translation_length(f.group.evaluate(f.group.word("A"))), ell, 1e-12);
        const double ea = max_entry_diff(f.group.evaluate(f.group.word("A")), A0);
        const double eb = max_entry_diff(f.group.evaluate(f.group.word("Bab")), Binv0);
        errs.push_back(std::max(ea, eb));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        EXPECT_GT(errs[i - 1] / errs[i], 3.5) << i;
        EXPECT_LT(errs[i - 1] / errs[i], 4.5) << i;
    }
    // The pants frame alone is only first order.
    const double p1 = max_entry_diff(punctured_torus_pants_frame(0.05).group.image(generator_letter(0)), A0);
    const double p2 = max_entry_diff(punctured_torus_pants_frame(0.025).group.image(generator_letter(0)), A0);
    EXPECT_NEAR(p1 / p2, 2.0, 0.2);
}
