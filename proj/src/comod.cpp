#include "freefft/comod.hpp"

#include <random>

namespace freefft {

namespace {

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace

// ---------------------------------------------------------------------------

CertifiedSystem::CertifiedSystem(std::shared_ptr<const TruncatedQuotient> q, std::size_t unknowns)
    : q_(std::move(q)), unknowns_(unknowns)
{
}

const FreeElement& CertifiedSystem::normal_word(const Word& w)
{
    auto it = nf_cache_.find(w);
    if (it == nf_cache_.end())
        it = nf_cache_.emplace(w, q_->normal_form(FreeElement::monomial(q_->presentation().algebra(), w))).first;
    return it->second;
}

void CertifiedSystem::add_equation(const std::vector<std::pair<std::size_t, FreeElement>>& terms)
{
    std::map<Word, SparseVector> rows;
    for (const auto& [u, h] : terms) {
        if (u >= unknowns_)
            throw std::out_of_range("certified system: unknown index out of range");
        for (const auto& [w, c] : h.terms()) {
            for (const auto& [qw, qc] : normal_word(w).terms())
                rows[qw].push_back({u, c * qc});
        }
    }
    for (auto& [w, r] : rows) {
        sparse::canonicalize(r);
        if (!r.empty())
            rows_.push_back(std::move(r));
    }
    ++equations_;
}

RationalMatrix CertifiedSystem::matrix() const
{
    return RationalMatrix::from_rows(unknowns_, rows_);
}

// ---------------------------------------------------------------------------

CoactionContext::CoactionContext(int m, int n, const FMatrix& f)
    : m_(m), n_(n), hopf_(build_HF(f))
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("m and n must be positive");
    const int t = hopf_.t();
    y_ = make_algebra("y", m, t);
    z_ = make_algebra("z", t, n);
    const auto& H = hopf_.algebra();

    std::vector<TensorElement> rho_images;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < t; ++j) {
            TensorElement img({y_, H});
            for (int k = 0; k < t; ++k)
                img.add_term({Word{y_->letter(i, k)}, Word{hopf_.u_letter(k, j)}}, Rational(1));
            rho_images.push_back(std::move(img));
        }
    rho_ = std::make_shared<TensorHom>(y_, std::move(rho_images), TensorElement::one({y_, H}));

    std::vector<TensorElement> lambda_images;
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < n; ++j) {
            TensorElement img({H, z_});
            for (int k = 0; k < t; ++k)
                img.add_term({Word{hopf_.u_letter(i, k)}, Word{z_->letter(k, j)}}, Rational(1));
            lambda_images.push_back(std::move(img));
        }
    lambda_ = std::make_shared<TensorHom>(z_, std::move(lambda_images), TensorElement::one({H, z_}));
}

TensorElement CoactionContext::flipped_coaction(const FreeElement& x) const
{
    auto r = rho_->apply(x);
    auto s = r.map_leg(1, hopf_.algebra(), [&](const Word& w) { return hopf_.antipode_word(w); });
    return s.permute({1, 0});
}

TensorElement CoactionContext::flipped_generator_image(int i, int j) const
{
    TensorElement img({hopf_.algebra(), y_});
    for (int k = 0; k < t(); ++k)
        img.add_term({Word{hopf_.v_letter(j, k)}, Word{y_->letter(i, k)}}, Rational(1));
    return img;
}

TensorElement CoactionContext::tensor_coaction_of(const TensorElement& x) const
{
    if (x.arity() != 2 || !(*x.factors()[0] == *y_) || !(*x.factors()[1] == *z_))
        throw std::invalid_argument("tensor coaction expects an element of A(m,t) (x) A(t,n)");
    const auto& H = hopf_.algebra();
    TensorElement out({H, y_, z_});
    for (const auto& [key, c] : x.terms()) {
        auto ra = flipped_coaction(FreeElement::monomial(y_, key[0]));
        auto lb = lambda_->apply_word(key[1]);
        for (const auto& [ka, ca] : ra.terms()) {
            for (const auto& [kb, cb] : lb.terms()) {
                Word h = ka[0];
                h.insert(h.end(), kb[0].begin(), kb[0].end());
                out.add_term({std::move(h), ka[1], kb[1]}, c * ca * cb);
            }
        }
    }
    return out;
}

BidegreeCoaction tensor_coaction(const CoactionContext& ctx, int i, int j)
{
    if (i < 0 || j < 0)
        throw std::invalid_argument("bidegree must be non-negative");
    const auto& hopf = ctx.hopf();
    const auto& H = hopf.algebra();
    const std::size_t gy = ctx.y_alg()->size();
    const std::size_t gz = ctx.z_alg()->size();
    const std::uint64_t ny = ipow(gy, i);
    const std::uint64_t nz = ipow(gz, j);

    BidegreeCoaction out;
    out.i = i;
    out.j = j;
    out.dim = static_cast<std::size_t>(ny * nz);
    out.coefficients.resize(out.dim);

    // per-word coactions are shared across the product basis
    std::vector<TensorElement> rho_words;
    rho_words.reserve(ny);
    for (std::uint64_t r = 0; r < ny; ++r)
        rho_words.push_back(ctx.right_coaction().apply_word(word_unrank(r, static_cast<std::size_t>(i), gy)));
    std::vector<TensorElement> lambda_words;
    lambda_words.reserve(nz);
    for (std::uint64_t r = 0; r < nz; ++r)
        lambda_words.push_back(ctx.left_coaction().apply_word(word_unrank(r, static_cast<std::size_t>(j), gz)));

    for (std::uint64_t ya = 0; ya < ny; ++ya) {
        // the u-word accumulated by rho is sent through S once
        std::vector<std::pair<std::uint64_t, FreeElement>> flipped;
        for (const auto& [key, c] : rho_words[ya].terms())
            flipped.emplace_back(word_rank(key[0], gy), hopf.antipode_word(key[1]) * c);
        for (std::uint64_t zb = 0; zb < nz; ++zb) {
            auto& row = out.coefficients[static_cast<std::size_t>(ya * nz + zb)];
            for (const auto& [ta, ha] : flipped) {
                for (const auto& [key, c] : lambda_words[zb].terms()) {
                    FreeElement h = ha * FreeElement::monomial(H, key[0], c);
                    row.emplace_back(static_cast<std::size_t>(ta * nz + word_rank(key[1], gz)), std::move(h));
                }
            }
        }
    }
    return out;
}

Subspace coinvariants(const CoactionContext& ctx, int i, int j, int d)
{
    if (d < i + j)
        throw std::invalid_argument("truncation d=" + std::to_string(d) + " below coaction degree " +
                                    std::to_string(i + j));
    auto coaction = tensor_coaction(ctx, i, j);
    auto q = ctx.hopf().quotient(std::max(d, ctx.hopf().presentation().max_relation_degree()));

    // equation for target s: sum_x c_x h_{x,s} - c_s * 1 in I_{<=d}
    std::vector<std::vector<std::pair<std::size_t, FreeElement>>> equations(coaction.dim);
    for (std::size_t x = 0; x < coaction.dim; ++x)
        for (const auto& [s, h] : coaction.coefficients[x])
            equations[s].emplace_back(x, h);
    CertifiedSystem system(q, coaction.dim);
    for (std::size_t s = 0; s < coaction.dim; ++s) {
        equations[s].emplace_back(s, ctx.hopf().one() * Rational(-1));
        system.add_equation(equations[s]);
    }
    return system.solve();
}

Certification is_coinvariant(const CoactionContext& ctx, const TensorElement& x, int d)
{
    auto alpha = ctx.tensor_coaction_of(x);
    const auto& H = ctx.hopf().algebra();
    // alpha(x) - 1 (x) x, grouped by the (A, B) legs
    std::map<std::pair<Word, Word>, FreeElement> coeff;
    for (const auto& [key, c] : alpha.terms())
        coeff.try_emplace({key[1], key[2]}, H).first->second.add_term(key[0], c);
    for (const auto& [key, c] : x.terms())
        coeff.try_emplace({key[0], key[1]}, H).first->second.add_term({}, -c);

    int need = 0;
    for (const auto& [k, h] : coeff)
        need = std::max(need, h.degree());
    if (need > d)
        throw std::invalid_argument("truncation d=" + std::to_string(d) + " below coaction degree " +
                                    std::to_string(need));
    auto q = ctx.hopf().quotient(std::max(d, ctx.hopf().presentation().max_relation_degree()));
    for (const auto& [k, h] : coeff)
        if (q->is_zero_mod(h) == Certification::NotCertified)
            return Certification::NotCertified;
    return Certification::CertifiedZero;
}

OffDiagonalCertificate off_diagonal_vanish(int m, int n, int t, int i, int j, const FMatrix* f)
{
    if (i == j)
        throw std::invalid_argument("off_diagonal_vanish needs i != j");
    if (i < 0 || j < 0)
        throw std::invalid_argument("bidegree must be non-negative");
    CoactionContext ctx(m, n, f ? *f : FMatrix::identity(t));
    if (ctx.t() != t)
        throw std::invalid_argument("F has the wrong size");

    OffDiagonalCertificate cert;
    cert.i = i;
    cert.j = j;
    cert.exponent = j - i;

    cert.relations_annihilated = true;
    for (const auto& r : ctx.hopf().relation_entries())
        if (!ctx.hopf().grading_specialize(r.element).is_zero())
            cert.relations_annihilated = false;

    // The specialization is an algebra map into a commutative ring, so the
    // specialized coefficient of a tensor word is the product of the
    // specialized letter coefficients; no need to expand in H first.
    const auto& hopf = ctx.hopf();
    const int t_ = ctx.t();
    const std::size_t gy = ctx.y_alg()->size();
    const std::size_t gz = ctx.z_alg()->size();
    using Entries = std::vector<std::pair<std::size_t, LaurentPolynomial>>;
    std::vector<Entries> y_letter(gy), z_letter(gz);
    for (int a = 0; a < ctx.m(); ++a)
        for (int b = 0; b < t_; ++b)
            for (int k = 0; k < t_; ++k) {
                // rho'(y_ab) = sum_k S(u_kb) (x) y_ak
                auto p = hopf.grading_specialize(hopf.antipode(hopf.u(k, b)));
                if (!p.is_zero())
                    y_letter[ctx.y_alg()->letter(a, b)].emplace_back(ctx.y_alg()->letter(a, k), p);
            }
    for (int a = 0; a < t_; ++a)
        for (int b = 0; b < ctx.n(); ++b)
            for (int k = 0; k < t_; ++k) {
                // lambda(z_ab) = sum_k u_ak (x) z_kb
                auto p = hopf.grading_specialize(hopf.u(a, k));
                if (!p.is_zero())
                    z_letter[ctx.z_alg()->letter(a, b)].emplace_back(ctx.z_alg()->letter(k, b), p);
            }

    const std::uint64_t ny = ipow(gy, i);
    const std::uint64_t nz = ipow(gz, j);
    cert.coefficients_match = true;
    for (std::uint64_t x = 0; x < ny * nz && cert.coefficients_match; ++x) {
        Word yw = word_unrank(static_cast<std::size_t>(x / nz), static_cast<std::size_t>(i), gy);
        Word zw = word_unrank(static_cast<std::size_t>(x % nz), static_cast<std::size_t>(j), gz);
        // partial[target index] = specialized coefficient, built letter by letter
        std::map<std::uint64_t, LaurentPolynomial> partial{{0, LaurentPolynomial::monomial(0)}};
        auto extend = [&](const Word& w, const std::vector<Entries>& table, std::size_t base) {
            for (Letter l : w) {
                std::map<std::uint64_t, LaurentPolynomial> next;
                for (const auto& [idx, p] : partial)
                    for (const auto& [target, q] : table[l])
                        next[idx * base + target] += p * q;
                partial = std::move(next);
            }
        };
        extend(yw, y_letter, gy);
        extend(zw, z_letter, gz);
        cert.checked_coefficients += partial.size();
        bool diagonal_seen = false;
        for (const auto& [s, p] : partial) {
            const bool on_diagonal = s == x;
            diagonal_seen = diagonal_seen || on_diagonal;
            const auto expected = on_diagonal ? LaurentPolynomial::monomial(cert.exponent) : LaurentPolynomial{};
            if (!(p == expected))
                cert.coefficients_match = false;
        }
        if (!diagonal_seen)
            cert.coefficients_match = false;
    }
    return cert;
}

CoinvariantReport certify_fft(const CoactionContext& ctx, int k, int d)
{
    if (k < 0)
        throw std::invalid_argument("degree must be non-negative");
    if (d < 2 * k)
        throw std::invalid_argument("certify_fft needs d >= 2k");
    CoinvariantReport rep;
    rep.m = ctx.m();
    rep.n = ctx.n();
    rep.t = ctx.t();
    rep.f = ctx.hopf().f().to_string();
    rep.i = rep.j = k;
    rep.d = d;
    rep.computed = coinvariants(ctx, k, k, d);

    auto theta = theta_matrix(ctx.m(), ctx.n(), ctx.t(), k);
    rep.theta_image = Subspace::span(theta.transpose());
    rep.theta_rank = rep.theta_image.dim();
    rep.expected_dim = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(ctx.m()) * ctx.n(), k));

    if (rep.computed.dim() > rep.expected_dim)
        throw InternalError("computed coinvariant space of dimension " + std::to_string(rep.computed.dim()) +
                            " exceeds (mn)^k = " + std::to_string(rep.expected_dim) +
                            " in bidegree (" + std::to_string(k) + "," + std::to_string(k) + ")");
    rep.image_contained = rep.computed.contains(rep.theta_image);
    rep.certified = rep.image_contained && rep.computed.dim() == rep.expected_dim &&
                    rep.theta_rank == rep.expected_dim;
    return rep;
}

SubalgebraReport subalgebra_check(const CoactionContext& ctx, int samples, std::uint64_t seed, int max_total,
                                  int margin)
{
    SubalgebraReport rep;
    rep.seed = seed;
    std::vector<Subspace> spaces;
    for (int a = 0; a <= max_total; ++a)
        spaces.push_back(coinvariants(ctx, a, a, 2 * a + margin));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_element = [&](int a) {
        SparseVector v;
        const auto& basis = spaces[static_cast<std::size_t>(a)].basis();
        for (std::size_t r = 0; r < basis.rows(); ++r)
            sparse::axpy(v, Rational(coeff(rng)), basis.row(r));
        return from_bidegree_coordinates(v, ctx.y_alg(), ctx.z_alg(), a, a);
    };

    for (int s = 0; s < samples; ++s) {
        const int a = std::uniform_int_distribution<int>(0, max_total)(rng);
        const int b = std::uniform_int_distribution<int>(0, max_total - a)(rng);
        auto x = random_element(a);
        auto y = random_element(b);
        auto product = x * y;
        ++rep.samples;
        if (is_coinvariant(ctx, product, 2 * (a + b) + margin) == Certification::CertifiedZero) {
            ++rep.certified;
        } else {
            ++rep.failures;
            rep.failed_cases.push_back("(" + std::to_string(a) + "," + std::to_string(a) + ")*(" +
                                       std::to_string(b) + "," + std::to_string(b) + ")");
        }
    }
    return rep;
}

} // namespace freefft
