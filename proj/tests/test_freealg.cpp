#include "freefft/freealg.hpp"

#include "gen.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace freefft;

namespace {

FreeElement gen_of(const AlgebraRef& a, int i, int j) { return FreeElement::generator(a, a->letter(i, j)); }

} // namespace

TEST(FreeAlgebra, ProductConcatenates)
{
    auto y = make_algebra("y", 2, 2);
    auto p = gen_of(y, 0, 0) * gen_of(y, 0, 1);
    ASSERT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.coefficient({y->letter(0, 0), y->letter(0, 1)}), 1);
    EXPECT_EQ(word_to_string(*y, p.terms().begin()->first), "y11*y12");
}

TEST(FreeAlgebra, Distributive)
{
    auto y = make_algebra("y", 2, 2);
    auto a = gen_of(y, 0, 0), b = gen_of(y, 0, 1);
    auto lhs = (a + b) * a;
    auto rhs = FreeElement::monomial(y, {y->letter(0, 0), y->letter(0, 0)}) +
               FreeElement::monomial(y, {y->letter(0, 1), y->letter(0, 0)});
    EXPECT_EQ(lhs, rhs);
}

TEST(FreeAlgebra, UnitLaw)
{
    std::mt19937 rng(21);
    auto y = make_algebra("y", 2, 3);
    for (int i = 0; i < 20; ++i) {
        auto a = gen::element(rng, y, 3);
        EXPECT_EQ(FreeElement::one(y) * a, a);
        EXPECT_EQ(a * FreeElement::one(y), a);
    }
}

TEST(FreeAlgebra, MismatchThrows)
{
    auto y = make_algebra("y", 2, 2);
    auto z = make_algebra("z", 2, 2);
    EXPECT_THROW(gen_of(y, 0, 0) * gen_of(z, 0, 0), std::invalid_argument);
    EXPECT_THROW(gen_of(y, 0, 0) + gen_of(z, 0, 0), std::invalid_argument);
}

TEST(FreeAlgebra, GeneratorIndexOutOfRange)
{
    auto y = make_algebra("y", 2, 2);
    EXPECT_THROW(y->letter(2, 0), std::out_of_range);
    EXPECT_THROW(GeneratorSet("bad", 0, 2), std::invalid_argument);
}

TEST(FreeAlgebra, ZeroCoefficientsAreDropped)
{
    auto y = make_algebra("y", 1, 1);
    auto a = gen_of(y, 0, 0);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a - a).degree(), -1);
}

TEST(DegreeBasis, Counts)
{
    EXPECT_EQ(degree_basis(*make_algebra("x", 2, 2), 2).size(), 16u);
    EXPECT_EQ(degree_basis(*make_algebra("x", 1, 1), 3).size(), 1u);
    EXPECT_EQ(degree_basis(*make_algebra("x", 2, 2), 0).size(), 1u);
}

TEST(DegreeBasis, LexOrder)
{
    auto y = make_algebra("y", 2, 1);
    auto words = degree_basis(*y, 2);
    std::vector<std::string> names;
    for (const auto& w : words)
        names.push_back(word_to_string(*y, w));
    EXPECT_EQ(names, (std::vector<std::string>{"y11*y11", "y11*y21", "y21*y11", "y21*y21"}));
}

TEST(DegreeBasis, RankRoundTrip)
{
    auto x = make_algebra("x", 2, 2);
    auto words = degree_basis(*x, 3);
    for (std::size_t r = 0; r < words.size(); ++r) {
        EXPECT_EQ(word_rank(words[r], 4), r);
        EXPECT_EQ(word_unrank(r, 3, 4), words[r]);
    }
}

TEST(Theta, GeneratorImageT2)
{
    auto th = make_theta(2, 2, 2);
    auto img = th.hom.apply(FreeElement::generator(th.x_alg, th.x_alg->letter(0, 0)));
    auto expected = tensor(gen_of(th.y_alg, 0, 0), gen_of(th.z_alg, 0, 0)) +
                    tensor(gen_of(th.y_alg, 0, 1), gen_of(th.z_alg, 1, 0));
    EXPECT_EQ(img, expected);
}

TEST(Theta, GeneratorImageT1)
{
    auto th = make_theta(2, 2, 1);
    auto img = th.hom.apply(FreeElement::generator(th.x_alg, th.x_alg->letter(0, 1)));
    EXPECT_EQ(img, tensor(gen_of(th.y_alg, 0, 0), gen_of(th.z_alg, 0, 1)));
}

TEST(Theta, ProductImageT1)
{
    auto th = make_theta(2, 2, 1);
    auto x = FreeElement::monomial(th.x_alg, {th.x_alg->letter(0, 0), th.x_alg->letter(0, 1)});
    auto expected = tensor(gen_of(th.y_alg, 0, 0) * gen_of(th.y_alg, 0, 0),
                           gen_of(th.z_alg, 0, 0) * gen_of(th.z_alg, 0, 1));
    EXPECT_EQ(th.hom.apply(x), expected);
}

TEST(Theta, UnitMapsToUnit)
{
    auto th = make_theta(2, 1, 2);
    EXPECT_EQ(th.hom.apply(FreeElement::one(th.x_alg)), TensorElement::one({th.y_alg, th.z_alg}));
}

TEST(Theta, ApplyOutsideSourceThrows)
{
    auto th = make_theta(2, 2, 1);
    EXPECT_THROW(th.hom.apply(FreeElement::one(th.y_alg)), std::invalid_argument);
}

TEST(ThetaMatrix, Ranks)
{
    EXPECT_EQ(rank(theta_matrix(2, 2, 1, 2)), 16u);
    EXPECT_EQ(rank(theta_matrix(1, 1, 1, 5)), 1u);
    EXPECT_EQ(rank(theta_matrix(2, 2, 2, 1)), 4u);
}

TEST(ThetaMatrix, T1ImagesAreDistinctBasisWords)
{
    // independent check: with t = 1 every column has exactly one entry and
    // distinct columns hit distinct rows
    auto m = theta_matrix(2, 2, 1, 2).transpose();
    std::set<std::size_t> rows;
    for (std::size_t c = 0; c < m.rows(); ++c) {
        ASSERT_EQ(m.row(c).size(), 1u);
        EXPECT_EQ(m.row(c)[0].value, 1);
        rows.insert(m.row(c)[0].col);
    }
    EXPECT_EQ(rows.size(), 16u);
}

TEST(ThetaMatrix, ColumnsMatchHom)
{
    auto th = make_theta(2, 1, 2);
    auto m = theta_matrix(2, 1, 2, 2);
    auto words = degree_basis(*th.x_alg, 2);
    auto cols = m.transpose();
    for (std::size_t c = 0; c < words.size(); ++c)
        EXPECT_EQ(cols.row(c), bidegree_coordinates(th.hom.apply_word(words[c]), 2, 2));
}

TEST(Tensor, ComponentwiseProduct)
{
    auto y = make_algebra("y", 1, 2);
    auto z = make_algebra("z", 2, 1);
    auto a = tensor(gen_of(y, 0, 0), gen_of(z, 0, 0));
    auto b = tensor(gen_of(y, 0, 1), gen_of(z, 1, 0));
    EXPECT_EQ(a * b, tensor(gen_of(y, 0, 0) * gen_of(y, 0, 1), gen_of(z, 0, 0) * gen_of(z, 1, 0)));
}

TEST(Tensor, CoordinatesRoundTrip)
{
    std::mt19937 rng(22);
    auto th = make_theta(2, 2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        TensorElement x({th.y_alg, th.z_alg});
        for (int i = 0; i < 5; ++i)
            x.add_term({gen::word(rng, 4, 2), gen::word(rng, 4, 1)}, gen::rational(rng));
        auto v = bidegree_coordinates(x, 2, 1);
        EXPECT_EQ(from_bidegree_coordinates(v, th.y_alg, th.z_alg, 2, 1), x);
    }
}

// ---------------------------------------------------------------------------

TEST(FreealgProperty, ThetaMultiplicative)
{
    std::mt19937 rng(23);
    auto th = make_theta(2, 2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = gen::element(rng, th.x_alg, 2, 3);
        auto b = gen::element(rng, th.x_alg, 2, 3);
        EXPECT_EQ(th.hom.apply(a * b), th.hom.apply(a) * th.hom.apply(b));
    }
}

TEST(FreealgProperty, ThetaInjectiveDegreewise)
{
    for (auto [m, n, t, top] : std::vector<std::tuple<int, int, int, int>>{
             {1, 1, 1, 4}, {2, 1, 1, 3}, {2, 2, 1, 3}, {1, 1, 2, 3}, {2, 2, 2, 2}, {1, 2, 3, 2}}) {
        std::size_t expect = 1;
        for (int k = 0; k <= top; ++k) {
            EXPECT_EQ(rank(theta_matrix(m, n, t, k)), expect) << m << n << t << " k=" << k;
            expect *= static_cast<std::size_t>(m * n);
        }
    }
}

TEST(FreealgProperty, DegreeBasisCount)
{
    for (int u = 1; u <= 3; ++u)
        for (int v = 1; v <= 2; ++v)
            for (int k = 0; k <= 3; ++k) {
                std::size_t expect = 1;
                for (int i = 0; i < k; ++i)
                    expect *= static_cast<std::size_t>(u * v);
                EXPECT_EQ(degree_basis(*make_algebra("a", u, v), k).size(), expect);
            }
}

TEST(FreealgProperty, TensorProductBidegreeAdditive)
{
    std::mt19937 rng(24);
    auto y = make_algebra("y", 2, 2);
    auto z = make_algebra("z", 2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const int i1 = rng() % 3, j1 = rng() % 3, i2 = rng() % 3, j2 = rng() % 3;
        TensorElement a({y, z}), b({y, z});
        for (int s = 0; s < 3; ++s) {
            a.add_term({gen::word(rng, 4, i1), gen::word(rng, 4, j1)}, gen::rational(rng));
            b.add_term({gen::word(rng, 4, i2), gen::word(rng, 4, j2)}, gen::rational(rng));
        }
        auto p = a * b;
        for (const auto& deg : p.multidegrees())
            EXPECT_EQ(deg, (std::vector<int>{i1 + i2, j1 + j2}));
    }
}
