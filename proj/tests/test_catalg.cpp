#include "freefft/catalg.hpp"

#include "gen.hpp"

#include <gtest/gtest.h>

using namespace freefft;

namespace {

std::vector<FMatrix> grid_f()
{
    return {FMatrix::identity(2), FMatrix::diagonal({Rational(1), Rational(2)}), FMatrix::jordan(2)};
}

Word x_word(int n, std::vector<std::pair<int, int>> letters)
{
    Word w;
    for (auto [i, j] : letters)
        w.push_back(static_cast<Letter>(i * n + j));
    return w;
}

std::size_t ones(const RationalMatrix& m)
{
    std::size_t c = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r)) {
            EXPECT_EQ(e.value, 1);
            ++c;
        }
    return c;
}

} // namespace

TEST(Comodules, FundamentalIsMultiplicative)
{
    for (const auto& f : grid_f()) {
        auto h = build_HF(f);
        EXPECT_TRUE(is_multiplicative(h, fundamental_left(h)));
        EXPECT_TRUE(is_multiplicative(h, tensor_power(h, fundamental_left(h), 2)));
        EXPECT_TRUE(is_multiplicative(h, direct_power(fundamental_left(h), 2)));
    }
}

TEST(Comodules, DualCoefficientsAreAntipodes)
{
    auto h = build_HF(FMatrix::jordan(2));
    auto u = fundamental_left(h);
    auto ud = dual(h, u);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            EXPECT_EQ(ud.coeff[a][b], h.antipode(u.coeff[b][a]));
    // S(u_ba) = v_ab
    EXPECT_EQ(ud.coeff[0][1], h.v(0, 1));
}

TEST(Psi, GeneratorHasTOnes)
{
    const int t = 2;
    auto m = psi_matrix(2, 3, t, x_word(3, {{0, 0}}));
    EXPECT_EQ(m.rows(), 6u);
    EXPECT_EQ(m.cols(), 4u);
    EXPECT_EQ(ones(m), static_cast<std::size_t>(t));
    // u_1 o p_1 is the identity between the first copies
    EXPECT_EQ(m.at(0, 0), 1);
    EXPECT_EQ(m.at(1, 1), 1);
}

TEST(Psi, SingleCopyGivesIdentity)
{
    for (int k = 0; k <= 3; ++k) {
        std::size_t dim = 1;
        for (int i = 0; i < k; ++i)
            dim *= 2;
        EXPECT_EQ(psi_matrix(1, 1, 2, Word(static_cast<std::size_t>(k), 0)), RationalMatrix::identity(dim));
    }
}

TEST(Psi, DistinctWordsDisjointSupport)
{
    auto words = degree_basis(*make_algebra("x", 2, 2), 2);
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            auto pa = psi_matrix(2, 2, 2, words[a]);
            auto pb = psi_matrix(2, 2, 2, words[b]);
            for (std::size_t r = 0; r < pa.rows(); ++r)
                for (const auto& e : pa.row(r))
                    EXPECT_EQ(pb.at(r, e.col), 0);
        }
}

TEST(Psi, RejectsForeignLetter)
{
    EXPECT_THROW(psi_matrix(1, 1, 2, Word{1}), std::out_of_range);
}

TEST(Intertwiners, EndUIsScalars)
{
    auto h = build_HF(FMatrix::identity(2));
    auto s = intertwiner_space(h, 1, 1, 1, 1, 4);
    ASSERT_EQ(s.size(), 1u);
    const auto& m = s[0].matrix;
    EXPECT_NE(m.at(0, 0), 0);
    EXPECT_EQ(m.at(1, 1), m.at(0, 0));
    EXPECT_EQ(m.at(0, 1), 0);
    EXPECT_EQ(m.at(1, 0), 0);
}

TEST(Intertwiners, OffDiagonalZeroAndExact)
{
    auto h = build_HF(FMatrix::jordan(2));
    EXPECT_EQ(intertwiner_space(h, 1, 1, 1, 2, 3).size(), 0u);
    EXPECT_TRUE(hom_off_diagonal_vanish(h, 1, 1, 1, 2).valid());
    EXPECT_TRUE(hom_off_diagonal_vanish(h, 2, 1, 0, 3).valid());
    EXPECT_THROW(hom_off_diagonal_vanish(h, 1, 1, 2, 2), std::invalid_argument);
}

TEST(Intertwiners, TwoProjections)
{
    auto h = build_HF(FMatrix::identity(1));
    auto s = intertwiner_space(h, 2, 1, 1, 1, 2);
    EXPECT_EQ(s.size(), 2u);
    // oracle: p_1 = [1 0], p_2 = [0 1] span the solution space
    std::vector<SparseVector> flat;
    for (const auto& t : s)
        flat.push_back(t.matrix.row(0));
    auto span = Subspace::span(2, flat);
    EXPECT_TRUE(span.contains(std::vector<Rational>{1, 0}));
    EXPECT_TRUE(span.contains(std::vector<Rational>{0, 1}));
}

TEST(Intertwiners, TruncationTooSmall)
{
    auto h = build_HF(FMatrix::identity(2));
    EXPECT_THROW(intertwiner_space(h, 1, 1, 1, 1, 1), std::invalid_argument);
}

TEST(Intertwiners, SolutionsAreMorphisms)
{
    auto h = build_HF(FMatrix::diagonal({Rational(1), Rational(2)}));
    for (const auto& t : intertwiner_space(h, 2, 1, 1, 1, 4))
        EXPECT_EQ(is_morphism(h, *t.source, *t.target, t.matrix, 4), Certification::CertifiedZero);
    auto u = fundamental_left(h);
    RationalMatrix bad = RationalMatrix::from_dense({{1, 0}, {0, 0}});
    EXPECT_EQ(is_morphism(h, u, u, bad, 4), Certification::NotCertified);
    EXPECT_THROW(is_morphism(h, u, u, RationalMatrix(1, 2), 4), std::invalid_argument);
}

TEST(Duality, T1)
{
    auto h = build_HF(FMatrix::identity(1));
    auto dd = build_duality(h);
    EXPECT_EQ(dd.e, RationalMatrix::from_dense({{1}}));
    EXPECT_EQ(dd.d, RationalMatrix::from_dense({{1}}));
    EXPECT_TRUE(check_snakes(dd).ok());
}

TEST(Duality, T2SnakesAndMorphisms)
{
    for (const auto& f : grid_f()) {
        auto h = build_HF(f);
        auto dd = build_duality(h);
        EXPECT_EQ(dd.e, RationalMatrix::from_dense({{1, 0, 0, 1}}));
        EXPECT_TRUE(check_snakes(dd).ok());
        EXPECT_EQ(is_morphism(h, tensor_product(*dd.object, *dd.dual), trivial_comodule(h), dd.e, 4),
                  Certification::CertifiedZero);
        EXPECT_EQ(is_morphism(h, trivial_comodule(h), tensor_product(*dd.dual, *dd.object), dd.d, 4),
                  Certification::CertifiedZero);
    }
}

TEST(Duality, IteratedPowers)
{
    auto h = build_HF(FMatrix::jordan(2));
    auto base = build_duality(h);
    for (int n = 1; n <= 3; ++n) {
        auto dn = duality_power(h, base, n);
        EXPECT_TRUE(check_snakes(dn).ok()) << n;
    }
    auto d2 = duality_power(h, base, 2);
    EXPECT_EQ(is_morphism(h, tensor_product(*d2.object, *d2.dual), trivial_comodule(h), d2.e, 4),
              Certification::CertifiedZero);
}

TEST(CoinvToHom, UnitGivesIdentity)
{
    CoactionContext ctx(1, 1, FMatrix::identity(2));
    auto one = TensorElement::one({ctx.y_alg(), ctx.z_alg()});
    EXPECT_EQ(coinv_to_hom(ctx, one, 0, 0).matrix, RationalMatrix::identity(1));
}

TEST(CoinvToHom, T1IsIdentity)
{
    CoactionContext ctx(1, 1, FMatrix::identity(1));
    auto yz = tensor(FreeElement::generator(ctx.y_alg(), 0), FreeElement::generator(ctx.z_alg(), 0));
    EXPECT_EQ(coinv_to_hom(ctx, yz, 1, 2).matrix, RationalMatrix::identity(1));
}

TEST(CoinvToHom, DisplayedElement)
{
    // sum_k v_i(e_k)* (x) u_j(e_k) |-> u_j o p_i, m = n = t = 2
    CoactionContext ctx(2, 2, FMatrix::identity(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            TensorElement x({ctx.y_alg(), ctx.z_alg()});
            for (int k = 0; k < 2; ++k)
                x += tensor(FreeElement::generator(ctx.y_alg(), ctx.y_alg()->letter(i, k)),
                            FreeElement::generator(ctx.z_alg(), ctx.z_alg()->letter(k, j)));
            RationalMatrix expected(4, 4);
            for (int a = 0; a < 2; ++a)
                expected.set(static_cast<std::size_t>(j * 2 + a), static_cast<std::size_t>(i * 2 + a), Rational(1));
            EXPECT_EQ(coinv_to_hom(ctx, x, 1, 2).matrix, expected);
        }
}

TEST(CoinvToHom, RejectsNonCoinvariant)
{
    CoactionContext ctx(1, 1, FMatrix::identity(2));
    auto x = tensor(FreeElement::generator(ctx.y_alg(), 0), FreeElement::generator(ctx.z_alg(), 0));
    EXPECT_THROW(coinv_to_hom(ctx, x, 1, 4), std::invalid_argument);
}

TEST(Correspondence, Examples)
{
    {
        CoactionContext ctx(1, 1, FMatrix::identity(1));
        for (int k = 0; k <= 3; ++k)
            EXPECT_TRUE(main_correspondence_check(ctx, k, 2 * k).passed());
    }
    {
        CoactionContext ctx(2, 2, FMatrix::identity(1));
        auto r = main_correspondence_check(ctx, 2, 4);
        EXPECT_TRUE(r.passed());
        EXPECT_EQ(r.matches, 16u);
    }
    {
        CoactionContext ctx(2, 2, FMatrix::identity(2));
        auto r = main_correspondence_check(ctx, 1, 2);
        EXPECT_TRUE(r.passed());
        EXPECT_EQ(r.matches, 4u);
        EXPECT_EQ(r.end_u_dim, 1u);
    }
}

// ---------------------------------------------------------------------------

TEST(CatalgProperty, PsiMultiplicative)
{
    std::mt19937 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 2), b = 1 + static_cast<int>(rng() % 2);
        auto w1 = gen::word(rng, 4, a);
        auto w2 = gen::word(rng, 4, b);
        Word w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        EXPECT_EQ(psi_matrix(2, 2, 2, w), kron(psi_matrix(2, 2, 2, w1), psi_matrix(2, 2, 2, w2)));
    }
}

TEST(CatalgProperty, PsiIndependent)
{
    for (auto [m, n, t] : std::vector<std::tuple<int, int, int>>{{2, 2, 1}, {2, 1, 2}, {2, 2, 2}})
        for (int k = 0; k <= 2; ++k) {
            auto words = degree_basis(*make_algebra("x", m, n), k);
            std::vector<SparseVector> flat;
            std::size_t cols = 0;
            for (const auto& w : words) {
                auto p = psi_matrix(m, n, t, w);
                cols = p.rows() * p.cols();
                SparseVector v;
                for (std::size_t r = 0; r < p.rows(); ++r)
                    for (const auto& e : p.row(r))
                        v.push_back({r * p.cols() + e.col, e.value});
                flat.push_back(v);
            }
            EXPECT_EQ(rank(RationalMatrix::from_rows(cols, flat)), words.size());
        }
}

TEST(CatalgProperty, CoinvToHomLinearAndLandsInHom)
{
    std::mt19937 rng(62);
    CoactionContext ctx(2, 1, FMatrix::jordan(2));
    auto image = [&](int i) {
        TensorElement x({ctx.y_alg(), ctx.z_alg()});
        for (int k = 0; k < 2; ++k)
            x += tensor(FreeElement::generator(ctx.y_alg(), ctx.y_alg()->letter(i, k)),
                        FreeElement::generator(ctx.z_alg(), ctx.z_alg()->letter(k, 0)));
        return x;
    };
    auto xa = image(0), xb = image(1);
    auto ta = coinv_to_hom(ctx, xa, 1, 2).matrix;
    auto tb = coinv_to_hom(ctx, xb, 1, 2).matrix;
    EXPECT_NE(ta, tb);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = gen::rational(rng), b = gen::rational(rng);
        auto tc = coinv_to_hom(ctx, xa * a + xb * b, 1, 2);
        RationalMatrix expected(ta.rows(), ta.cols());
        for (std::size_t r = 0; r < ta.rows(); ++r)
            for (std::size_t c = 0; c < ta.cols(); ++c)
                expected.set(r, c, ta.at(r, c) * a + tb.at(r, c) * b);
        EXPECT_EQ(tc.matrix, expected);
        EXPECT_EQ(is_morphism(ctx.hopf(), *tc.source, *tc.target, tc.matrix, 4), Certification::CertifiedZero);
    }
}

TEST(CatalgProperty, HomDimensions)
{
    for (const auto& f : grid_f()) {
        auto h = build_HF(f);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j)
                EXPECT_EQ(intertwiner_space(h, 1, 1, i, j, i + j + 2).size(), i == j ? 1u : 0u)
                    << f.to_string() << " " << i << "," << j;
    }
}
