#include "freefft/catalg.hpp"

namespace freefft {

namespace {

std::size_t ipow(std::size_t b, int e)
{
    std::size_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

ComoduleSpace matrix_comodule(const HopfAlgebra& h, std::string name, Side side, bool use_v)
{
    const int t = h.t();
    ComoduleSpace c;
    c.name = std::move(name);
    c.side = side;
    c.dim = static_cast<std::size_t>(t);
    for (int i = 0; i < t; ++i) {
        std::vector<FreeElement> row;
        for (int j = 0; j < t; ++j)
            row.push_back(use_v ? h.v(i, j) : h.u(i, j));
        c.coeff.push_back(std::move(row));
    }
    return c;
}

} // namespace

ComoduleSpace fundamental_left(const HopfAlgebra& h)
{
    return matrix_comodule(h, "U", Side::Left, false);
}

ComoduleSpace fundamental_right(const HopfAlgebra& h)
{
    return matrix_comodule(h, "U_r", Side::Right, false);
}

ComoduleSpace trivial_comodule(const HopfAlgebra& h)
{
    ComoduleSpace c;
    c.name = "I";
    c.dim = 1;
    c.coeff = {{h.one()}};
    return c;
}

ComoduleSpace direct_power(const ComoduleSpace& u, int copies)
{
    if (copies < 1)
        throw std::invalid_argument("direct_power needs at least one copy");
    const auto& alg = u.coeff.at(0).at(0).algebra();
    ComoduleSpace c;
    c.name = u.name + "^" + std::to_string(copies);
    c.side = u.side;
    c.dim = u.dim * static_cast<std::size_t>(copies);
    c.coeff.assign(c.dim, std::vector<FreeElement>(c.dim, FreeElement(alg)));
    for (std::size_t k = 0; k < static_cast<std::size_t>(copies); ++k)
        for (std::size_t a = 0; a < u.dim; ++a)
            for (std::size_t b = 0; b < u.dim; ++b)
                c.coeff[k * u.dim + a][k * u.dim + b] = u.coeff[a][b];
    return c;
}

ComoduleSpace tensor_product(const ComoduleSpace& a, const ComoduleSpace& b)
{
    if (a.side != b.side)
        throw std::invalid_argument("tensor product of comodules on different sides");
    ComoduleSpace c;
    c.name = a.name + "(x)" + b.name;
    c.side = a.side;
    c.dim = a.dim * b.dim;
    c.coeff.assign(c.dim, std::vector<FreeElement>(c.dim, FreeElement(a.coeff.at(0).at(0).algebra())));
    for (std::size_t x = 0; x < a.dim; ++x)
        for (std::size_t y = 0; y < b.dim; ++y)
            for (std::size_t x2 = 0; x2 < a.dim; ++x2)
                for (std::size_t y2 = 0; y2 < b.dim; ++y2) {
                    // left: x_(-1) y_(-1); right: x_(1) y_(1)
                    c.coeff[x * b.dim + y][x2 * b.dim + y2] = a.coeff[x][x2] * b.coeff[y][y2];
                }
    return c;
}

ComoduleSpace tensor_power(const HopfAlgebra& h, const ComoduleSpace& u, int k)
{
    if (k < 0)
        throw std::invalid_argument("negative tensor power");
    ComoduleSpace out = trivial_comodule(h);
    out.side = u.side;
    for (int i = 0; i < k; ++i)
        out = i == 0 ? u : tensor_product(out, u);
    if (k > 1)
        out.name = u.name + "^(x)" + std::to_string(k);
    return out;
}

ComoduleSpace dual(const HopfAlgebra& h, const ComoduleSpace& u)
{
    if (u.side != Side::Left)
        throw std::invalid_argument("dual is implemented for left comodules");
    ComoduleSpace c;
    c.name = u.name + "*";
    c.side = Side::Left;
    c.dim = u.dim;
    for (std::size_t a = 0; a < u.dim; ++a) {
        std::vector<FreeElement> row;
        for (std::size_t b = 0; b < u.dim; ++b)
            row.push_back(h.antipode(u.coeff[b][a]));
        c.coeff.push_back(std::move(row));
    }
    return c;
}

bool is_multiplicative(const HopfAlgebra& h, const ComoduleSpace& c)
{
    const auto& alg = h.algebra();
    for (std::size_t a = 0; a < c.dim; ++a) {
        for (std::size_t b = 0; b < c.dim; ++b) {
            TensorElement rhs({alg, alg});
            for (std::size_t k = 0; k < c.dim; ++k)
                rhs += tensor(c.coeff[a][k], c.coeff[k][b]);
            if (!(h.delta(c.coeff[a][b]) == rhs))
                return false;
            if (h.counit(c.coeff[a][b]) != (a == b ? 1 : 0))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

// Coefficient of e_d in (id (x) T) beta_src(e_a) - beta_tgt(T e_a).
FreeElement morphism_defect(const ComoduleSpace& source, const ComoduleSpace& target, const RationalMatrix& t,
                            std::size_t a, std::size_t d)
{
    FreeElement out(source.coeff.at(0).at(0).algebra());
    for (std::size_t b = 0; b < source.dim; ++b) {
        Rational c = t.at(d, b);
        if (sgn(c) != 0)
            out += source.coeff[a][b] * c;
    }
    for (std::size_t c = 0; c < target.dim; ++c) {
        Rational v = t.at(c, a);
        if (sgn(v) != 0)
            out -= target.coeff[c][d] * v;
    }
    return out;
}

} // namespace

Certification is_morphism(const HopfAlgebra& h, const ComoduleSpace& source, const ComoduleSpace& target,
                          const RationalMatrix& t, int d)
{
    if (t.rows() != target.dim || t.cols() != source.dim)
        throw std::invalid_argument("morphism matrix has the wrong shape");
    auto q = h.quotient(std::max(d, h.presentation().max_relation_degree()));
    for (std::size_t a = 0; a < source.dim; ++a)
        for (std::size_t dd = 0; dd < target.dim; ++dd) {
            auto defect = morphism_defect(source, target, t, a, dd);
            if (defect.degree() > q->truncation())
                throw std::invalid_argument("truncation below the coaction degree");
            if (q->is_zero_mod(defect) == Certification::NotCertified)
                return Certification::NotCertified;
        }
    return Certification::CertifiedZero;
}

RationalMatrix psi_matrix(int m, int n, int t, const Word& w)
{
    const int k = static_cast<int>(w.size());
    const std::size_t mt = static_cast<std::size_t>(m * t);
    const std::size_t nt = static_cast<std::size_t>(n * t);
    const std::size_t src_dim = ipow(mt, k);
    const std::size_t tgt_dim = ipow(nt, k);
    std::vector<int> rows_i(k), cols_j(k);
    for (int l = 0; l < k; ++l) {
        if (w[l] >= m * n)
            throw std::out_of_range("psi: letter outside A(m,n)");
        rows_i[l] = w[l] / n;
        cols_j[l] = w[l] % n;
    }
    RationalMatrix out(tgt_dim, src_dim);
    std::vector<std::size_t> digits(static_cast<std::size_t>(k));
    for (std::size_t s = 0; s < src_dim; ++s) {
        std::size_t rest = s;
        for (int l = k - 1; l >= 0; --l) {
            digits[l] = rest % mt;
            rest /= mt;
        }
        bool hit = true;
        std::size_t target = 0;
        for (int l = 0; l < k && hit; ++l) {
            const int copy = static_cast<int>(digits[l]) / t;
            const int vec = static_cast<int>(digits[l]) % t;
            // p_i picks copy i; u_j embeds into copy j
            hit = copy == rows_i[l];
            target = target * nt + static_cast<std::size_t>(cols_j[l] * t + vec);
        }
        if (hit)
            out.set(target, s, Rational(1));
    }
    return out;
}

Intertwiner psi(const HopfAlgebra& h, int m, int n, const Word& w)
{
    const int k = static_cast<int>(w.size());
    auto u = fundamental_left(h);
    Intertwiner out;
    out.source = std::make_shared<ComoduleSpace>(tensor_power(h, direct_power(u, m), k));
    out.target = std::make_shared<ComoduleSpace>(tensor_power(h, direct_power(u, n), k));
    out.matrix = psi_matrix(m, n, h.t(), w);
    return out;
}

std::vector<Intertwiner> intertwiner_space(const HopfAlgebra& h, int m, int n, int i, int j, int d)
{
    if (d < i + j)
        throw std::invalid_argument("intertwiner_space needs d >= i + j");
    auto u = fundamental_left(h);
    auto source = std::make_shared<ComoduleSpace>(tensor_power(h, direct_power(u, m), i));
    auto target = std::make_shared<ComoduleSpace>(tensor_power(h, direct_power(u, n), j));
    const std::size_t S = source->dim;
    const std::size_t T = target->dim;

    auto q = h.quotient(std::max(d, h.presentation().max_relation_degree()));
    // unknown T_{db} at index d*S + b
    CertifiedSystem system(q, S * T);
    for (std::size_t a = 0; a < S; ++a) {
        for (std::size_t dd = 0; dd < T; ++dd) {
            std::vector<std::pair<std::size_t, FreeElement>> eq;
            for (std::size_t b = 0; b < S; ++b)
                if (!source->coeff[a][b].is_zero())
                    eq.emplace_back(dd * S + b, source->coeff[a][b]);
            for (std::size_t c = 0; c < T; ++c)
                if (!target->coeff[c][dd].is_zero())
                    eq.emplace_back(c * S + a, target->coeff[c][dd] * Rational(-1));
            system.add_equation(eq);
        }
    }
    auto space = system.solve();
    std::vector<Intertwiner> out;
    for (const auto& row : space.basis().row_data()) {
        RationalMatrix m_t(T, S);
        for (const auto& e : row)
            m_t.set(e.col / S, e.col % S, e.value);
        out.push_back({source, target, std::move(m_t)});
    }
    return out;
}

HomVanishingCertificate hom_off_diagonal_vanish(const HopfAlgebra& h, int m, int n, int i, int j)
{
    if (i == j)
        throw std::invalid_argument("hom_off_diagonal_vanish needs i != j");
    auto u = fundamental_left(h);
    auto source = tensor_power(h, direct_power(u, m), i);
    auto target = tensor_power(h, direct_power(u, n), j);
    auto diagonal = [&](const ComoduleSpace& c, int exponent) {
        for (std::size_t a = 0; a < c.dim; ++a)
            for (std::size_t b = 0; b < c.dim; ++b) {
                auto p = h.grading_specialize(c.coeff[a][b]);
                auto expected = a == b ? LaurentPolynomial::monomial(exponent) : LaurentPolynomial{};
                if (!(p == expected))
                    return false;
            }
        return true;
    };
    HomVanishingCertificate cert;
    cert.i = i;
    cert.j = j;
    // specialized condition reads (z^i - z^j) T = 0
    cert.source_diagonal = diagonal(source, i);
    cert.target_diagonal = diagonal(target, j);
    return cert;
}

// ---------------------------------------------------------------------------

DualityData build_duality(const HopfAlgebra& h, int copies)
{
    auto x = direct_power(fundamental_left(h), copies);
    DualityData dd;
    dd.dual = std::make_shared<ComoduleSpace>(dual(h, x));
    dd.object = std::make_shared<ComoduleSpace>(std::move(x));
    const std::size_t dim = dd.object->dim;
    dd.e = RationalMatrix(1, dim * dim);
    dd.d = RationalMatrix(dim * dim, 1);
    for (std::size_t a = 0; a < dim; ++a) {
        dd.e.set(0, a * dim + a, Rational(1));
        dd.d.set(a * dim + a, 0, Rational(1));
    }
    return dd;
}

DualityData duality_power(const HopfAlgebra& h, const DualityData& base, int n)
{
    if (n < 0)
        throw std::invalid_argument("negative duality power");
    DualityData out;
    out.object = std::make_shared<ComoduleSpace>(tensor_power(h, *base.object, n));
    out.dual = std::make_shared<ComoduleSpace>(tensor_power(h, *base.dual, n));
    if (n == 0) {
        out.e = RationalMatrix::identity(1);
        out.d = RationalMatrix::identity(1);
        return out;
    }
    const std::size_t dim = base.object->dim;
    out.e = base.e;
    out.d = base.d;
    std::size_t inner = 1; // dim^(p-1)
    for (int p = 2; p <= n; ++p) {
        inner *= dim;
        auto id = RationalMatrix::identity(inner);
        // e_p = e_{p-1} o (1_{X^{p-1}} (x) e (x) 1_{X*^{p-1}})
        out.e = out.e * kron(kron(id, base.e), id);
        // d_p = (1_{X*^{p-1}} (x) d (x) 1_{X^{p-1}}) o d_{p-1}
        out.d = kron(kron(id, base.d), id) * out.d;
    }
    return out;
}

SnakeCheck check_snakes(const DualityData& dd)
{
    const std::size_t dim = dd.object->dim;
    auto id = RationalMatrix::identity(dim);
    SnakeCheck s;
    s.first = kron(dd.e, id) * kron(id, dd.d) == id;
    s.second = kron(id, dd.e) * kron(dd.d, id) == id;
    return s;
}

namespace {

Intertwiner transport(const CoactionContext& ctx, const DualityData& ek, const TensorElement& x, int k)
{
    const int t = ctx.t();
    const std::size_t dx = ipow(static_cast<std::size_t>(ctx.m() * t), k);
    const std::size_t dy = ipow(static_cast<std::size_t>(ctx.n() * t), k);
    const std::size_t mt = static_cast<std::size_t>(ctx.m() * t);
    const std::size_t nt = static_cast<std::size_t>(ctx.n() * t);

    // f in X*^{(x)k} (x) Y^{(x)k}
    RationalMatrix f(dx * dy, 1);
    for (const auto& [key, c] : x.terms()) {
        if (static_cast<int>(key[0].size()) != k || static_cast<int>(key[1].size()) != k)
            throw std::invalid_argument("coinv_to_hom: element not of bidegree (k,k)");
        std::size_t xs = 0, ys = 0;
        for (int l = 0; l < k; ++l) {
            // phi_1 lands in the opposite algebra: factors are reversed
            auto yi = ctx.y_alg()->index(key[0][static_cast<std::size_t>(k - 1 - l)]);
            xs = xs * mt + static_cast<std::size_t>(yi.row * t + yi.col);
            auto zi = ctx.z_alg()->index(key[1][static_cast<std::size_t>(l)]);
            ys = ys * nt + static_cast<std::size_t>(zi.col * t + zi.row);
        }
        f.add(xs * dy + ys, 0, c);
    }
    auto lhs = kron(ek.e, RationalMatrix::identity(dy));
    auto rhs = kron(RationalMatrix::identity(dx), f);
    Intertwiner out;
    auto u = fundamental_left(ctx.hopf());
    out.source = ek.object;
    out.target = std::make_shared<ComoduleSpace>(tensor_power(ctx.hopf(), direct_power(u, ctx.n()), k));
    out.matrix = lhs * rhs;
    return out;
}

} // namespace

Intertwiner coinv_to_hom(const CoactionContext& ctx, const TensorElement& x, int k, int d)
{
    if (is_coinvariant(ctx, x, d) != Certification::CertifiedZero)
        throw std::invalid_argument("coinv_to_hom: element is not certified coinvariant at truncation " +
                                    std::to_string(d));
    auto ek = duality_power(ctx.hopf(), build_duality(ctx.hopf(), ctx.m()), k);
    return transport(ctx, ek, x, k);
}

CorrespondenceReport main_correspondence_check(const CoactionContext& ctx, int k, int d)
{
    if (d < 2 * k)
        throw std::invalid_argument("main_correspondence_check needs d >= 2k");
    CorrespondenceReport rep;
    rep.k = k;
    rep.d = d;
    rep.end_u_dim = intertwiner_space(ctx.hopf(), 1, 1, 1, 1, 4).size();

    auto theta = make_theta(ctx.m(), ctx.n(), ctx.t());
    auto ek = duality_power(ctx.hopf(), build_duality(ctx.hopf(), ctx.m()), k);
    std::vector<SparseVector> flattened;
    const auto words = degree_basis(*theta.x_alg, k);
    rep.words = words.size();
    rep.expected_rank = words.size();
    for (const auto& w : words) {
        auto image = theta.hom.apply_word(w);
        auto expected = psi_matrix(ctx.m(), ctx.n(), ctx.t(), w);
        if (is_coinvariant(ctx, image, d) != Certification::CertifiedZero) {
            rep.mismatches.push_back(word_to_string(*theta.x_alg, w) + ": theta(w) not certified coinvariant");
            continue;
        }
        auto got = transport(ctx, ek, image, k);
        if (got.matrix == expected)
            ++rep.matches;
        else
            rep.mismatches.push_back(word_to_string(*theta.x_alg, w) + ": got " + to_string(got.matrix) +
                                     ", psi gives " + to_string(expected));
        SparseVector flat;
        for (std::size_t r = 0; r < expected.rows(); ++r)
            for (const auto& e : expected.row(r))
                flat.push_back({r * expected.cols() + e.col, e.value});
        flattened.push_back(std::move(flat));
    }
    const std::size_t cols = words.empty() ? 0
                                           : ipow(static_cast<std::size_t>(ctx.n() * ctx.t()), k) *
                                                 ipow(static_cast<std::size_t>(ctx.m() * ctx.t()), k);
    rep.psi_rank = rank(RationalMatrix::from_rows(cols, flattened));
    return rep;
}

} // namespace freefft
