#include "freefft/classical.hpp"
#include "freefft/freealg.hpp"

#include "gen.hpp"

#include <gtest/gtest.h>

using namespace freefft;

namespace {

std::size_t binom(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Polynomial x_var(int n, int i, int j) { return Polynomial::variable(static_cast<std::size_t>(4), static_cast<std::size_t>(i * n + j)); }

Polynomial random_poly(std::mt19937& rng, std::size_t nvars, int degree, int terms = 3)
{
    Polynomial p(nvars);
    for (int s = 0; s < terms; ++s) {
        Exponent e(nvars, 0);
        for (int d = 0; d < degree; ++d)
            ++e[rng() % nvars];
        p.add_term(e, gen::rational(rng));
    }
    return p;
}

} // namespace

TEST(PolyRingTest, MonomialCounts)
{
    auto r = PolyRing::matrix("X", 2, 2);
    EXPECT_EQ(r.nvars(), 4u);
    EXPECT_EQ(r.name(1), "X12");
    for (int k = 0; k <= 4; ++k)
        EXPECT_EQ(r.monomials(k).size(), binom(static_cast<std::size_t>(k + 3), 3));
    auto ms = r.monomials(2);
    EXPECT_EQ(ms.front(), (Exponent{2, 0, 0, 0}));
    EXPECT_EQ(ms.back(), (Exponent{0, 0, 0, 2}));
}

TEST(PolynomialTest, Arithmetic)
{
    auto a = x_var(2, 0, 0), b = x_var(2, 1, 1);
    auto p = (a + b) * (a - b);
    EXPECT_EQ(p, a * a - b * b);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p.degree(), 2);
    EXPECT_TRUE(p.is_homogeneous());
    EXPECT_FALSE((p + Polynomial::constant(4, Rational(1))).is_homogeneous());
}

TEST(ThetaStar, GeneratorImage)
{
    // Y is 2x2 at 0..3, Z is 2x2 at 4..7
    auto img = theta_star_generator(2, 2, 2, 0, 1);
    auto expected = Polynomial::variable(8, 0) * Polynomial::variable(8, 5) +
                    Polynomial::variable(8, 1) * Polynomial::variable(8, 7);
    EXPECT_EQ(img, expected);
}

TEST(ThetaStar, DeterminantIsKernelForT1)
{
    auto det = x_var(2, 0, 0) * x_var(2, 1, 1) - x_var(2, 0, 1) * x_var(2, 1, 0);
    EXPECT_EQ(det, minor(2, 2, {0, 1}, {0, 1}));
    EXPECT_TRUE(theta_star(2, 2, 1, det).is_zero());
    EXPECT_FALSE(theta_star(2, 2, 2, det).is_zero());
    auto ker = theta_star_kernel(2, 2, 1, 2);
    EXPECT_EQ(ker.dim(), 1u);
    auto ring = PolyRing::matrix("X", 2, 2);
    EXPECT_TRUE(ker.contains(coordinates(ring, det, 2)));
}

TEST(ThetaStar, KernelDimensions)
{
    std::vector<std::size_t> expect{0, 0, 1, 4, 10};
    for (int k = 0; k <= 4; ++k)
        EXPECT_EQ(theta_star_kernel(2, 2, 1, k).dim(), expect[static_cast<std::size_t>(k)]) << k;
    for (int k = 0; k <= 3; ++k)
        EXPECT_EQ(theta_star_kernel(2, 2, 2, k).dim(), 0u);
    EXPECT_EQ(theta_star_kernel(3, 3, 2, 3).dim(), 1u);
}

TEST(Minors, Components)
{
    EXPECT_EQ(minors(2, 2, 2).size(), 1u);
    EXPECT_EQ(minors(2, 3, 2).size(), 3u);
    EXPECT_EQ(minors_component(2, 2, 1, 2).dim(), 1u);
    EXPECT_EQ(minors_component(2, 2, 1, 3).dim(), 4u);
    EXPECT_EQ(minors_component(2, 2, 1, 1).dim(), 0u);
    EXPECT_EQ(minors_component(2, 2, 2, 3).dim(), 0u);
}

TEST(Invariants, Dimensions)
{
    EXPECT_EQ(glt_invariants(2, 2, 1, 0).dim(), 1u);
    EXPECT_EQ(glt_invariants(2, 2, 1, 2).dim(), 4u);
    EXPECT_EQ(glt_invariants(2, 2, 1, 1).dim(), 0u);
    EXPECT_EQ(glt_invariants(1, 1, 2, 2).dim(), 1u);
}

TEST(Invariants, ThetaImageIsInvariant)
{
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            EXPECT_TRUE(derivation(2, 2, 2, a, b, theta_star_generator(2, 2, 2, 1, 0)).is_zero());
    auto y = Polynomial::variable(8, 0);
    EXPECT_FALSE(derivation(2, 2, 2, 1, 0, y).is_zero());
}

TEST(Reports, Fft1)
{
    for (auto [m, n, t, top] : std::vector<std::tuple<int, int, int, int>>{{2, 2, 1, 4}, {2, 2, 2, 2}, {2, 1, 2, 2}}) {
        auto r = fft1_check(m, n, t, top);
        EXPECT_TRUE(r.passed()) << m << n << t;
        ASSERT_EQ(r.degrees.size(), static_cast<std::size_t>(top + 1));
        for (const auto& d : r.degrees) {
            EXPECT_TRUE(d.equal);
            EXPECT_TRUE(d.odd_vanish);
        }
    }
    auto r = fft1_check(2, 2, 1, 4);
    std::vector<std::size_t> dims{1, 4, 9, 16, 25};
    for (std::size_t k = 0; k < dims.size(); ++k)
        EXPECT_EQ(r.degrees[k].lhs_dim, dims[k]);
}

TEST(Reports, Fft2)
{
    for (auto [m, n, t, top] : std::vector<std::tuple<int, int, int, int>>{{2, 2, 1, 4}, {3, 3, 2, 3}, {2, 2, 2, 3}}) {
        auto r = fft2_check(m, n, t, top);
        EXPECT_TRUE(r.passed()) << m << n << t;
    }
}

TEST(Contrast, FreeVersusCommutative)
{
    // same (m,n,t,k): the commutative map has a kernel, the free one does not
    EXPECT_EQ(theta_star_kernel(2, 2, 1, 2).dim(), 1u);
    EXPECT_EQ(rank(theta_matrix(2, 2, 1, 2)), 16u);
}

// ---------------------------------------------------------------------------

TEST(ClassicalProperty, LeibnizRule)
{
    std::mt19937 rng(71);
    const std::size_t nv = 8;
    for (int trial = 0; trial < 30; ++trial) {
        auto p = random_poly(rng, nv, 1 + static_cast<int>(rng() % 3));
        auto q = random_poly(rng, nv, 1 + static_cast<int>(rng() % 3));
        const int a = static_cast<int>(rng() % 2), b = static_cast<int>(rng() % 2);
        EXPECT_EQ(derivation(2, 2, 2, a, b, p * q),
                  derivation(2, 2, 2, a, b, p) * q + p * derivation(2, 2, 2, a, b, q));
    }
}

TEST(ClassicalProperty, ThetaStarMultiplicative)
{
    std::mt19937 rng(72);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_poly(rng, 4, 1 + static_cast<int>(rng() % 2));
        auto q = random_poly(rng, 4, 1 + static_cast<int>(rng() % 2));
        EXPECT_EQ(theta_star(2, 2, 2, p * q), theta_star(2, 2, 2, p) * theta_star(2, 2, 2, q));
    }
}

TEST(ClassicalProperty, MinorsInKernel)
{
    for (auto [m, n, t] : std::vector<std::tuple<int, int, int>>{{2, 2, 1}, {3, 3, 2}, {2, 3, 1}})
        for (const auto& p : minors(m, n, t + 1))
            EXPECT_TRUE(theta_star(m, n, t, p).is_zero());
}

TEST(ClassicalProperty, ImageInsideInvariants)
{
    std::mt19937 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = random_poly(rng, 4, 2);
        auto img = theta_star(2, 2, 2, p);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                EXPECT_TRUE(derivation(2, 2, 2, a, b, img).is_zero());
    }
}
