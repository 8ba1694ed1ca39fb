#include "freefft/hopf.hpp"

#include <sstream>
#include <unordered_map>

namespace freefft {

RationalMatrix inverse(const RationalMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    // row-reduce [m | I]
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        SparseVector r = m.row(i);
        r.push_back({n + i, Rational(1)});
        aug.set_row(i, std::move(r));
    }
    auto red = rref(aug);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= red.rank || red.pivot_cols[i] != i)
            throw std::domain_error("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        SparseVector r;
        for (const auto& e : red.reduced.row(i))
            if (e.col >= n)
                r.push_back({e.col - n, e.value});
        inv.set_row(i, std::move(r));
    }
    return inv;
}

FMatrix::FMatrix(RationalMatrix m)
    : t_(static_cast<int>(m.rows())), f_(std::move(m))
{
    if (f_.rows() == 0 || f_.rows() != f_.cols())
        throw std::invalid_argument("F must be a non-empty square matrix");
    f_inv_ = freefft::inverse(f_);
}

FMatrix FMatrix::identity(int t)
{
    return FMatrix(RationalMatrix::identity(static_cast<std::size_t>(t)));
}

FMatrix FMatrix::diagonal(const std::vector<Rational>& entries)
{
    RationalMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.set(i, i, entries[i]);
    return FMatrix(std::move(m));
}

FMatrix FMatrix::jordan(int t)
{
    RationalMatrix m = RationalMatrix::identity(static_cast<std::size_t>(t));
    for (int i = 0; i + 1 < t; ++i)
        m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1), Rational(1));
    return FMatrix(std::move(m));
}

std::string FMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < t_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < t_; ++j)
            os << (j ? "," : "") << '"' << f_.at(i, j).get_str() << '"';
        os << ']';
    }
    os << ']';
    return os.str();
}

const char* to_string(RelationFamily f)
{
    switch (f) {
    case RelationFamily::UVt: return "u*v^T";
    case RelationFamily::VtU: return "v^T*u";
    case RelationFamily::VFUtFinv: return "v*F*u^T*F^-1";
    case RelationFamily::FUtFinvV: return "F*u^T*F^-1*v";
    }
    return "?";
}

// ---------------------------------------------------------------------------

LaurentPolynomial LaurentPolynomial::monomial(int exponent, const Rational& c)
{
    LaurentPolynomial p;
    p.add_term(exponent, c);
    return p;
}

void LaurentPolynomial::add_term(int exponent, const Rational& c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    LaurentPolynomial out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term(ea + eb, ca * cb);
    return out;
}

std::string LaurentPolynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        os << (first ? "" : " + ") << c.get_str();
        if (e != 0)
            os << "*z^" << e;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

HopfAlgebra::HopfAlgebra(FMatrix f)
    : f_(std::move(f)),
      alg_(make_algebra("H", {{"u", f_.size(), f_.size()}, {"v", f_.size(), f_.size()}}))
{
}

HopfAlgebra build_HF(const FMatrix& f)
{
    HopfAlgebra h(f);
    const int t = f.size();
    const auto& F = f.matrix();
    const auto& Fi = f.inverse();
    const auto alg = h.alg_;
    auto U = [&](int i, int j) { return h.u(i, j); };
    auto V = [&](int i, int j) { return h.v(i, j); };

    // (F u^T F^-1)_{ij} = sum_{k,l} F_ik u_lk Finv_lj
    auto fut = [&](int i, int j) {
        FreeElement e(alg);
        for (int k = 0; k < t; ++k)
            for (int l = 0; l < t; ++l) {
                Rational c = F.at(i, k) * Fi.at(l, j);
                if (sgn(c) != 0)
                    e += U(l, k) * c;
            }
        return e;
    };

    for (int fam = 0; fam < 4; ++fam) {
        for (int i = 0; i < t; ++i) {
            for (int j = 0; j < t; ++j) {
                FreeElement e(alg);
                for (int k = 0; k < t; ++k) {
                    switch (static_cast<RelationFamily>(fam)) {
                    case RelationFamily::UVt: e += U(i, k) * V(j, k); break;
                    case RelationFamily::VtU: e += V(k, i) * U(k, j); break;
                    case RelationFamily::VFUtFinv: e += V(i, k) * fut(k, j); break;
                    case RelationFamily::FUtFinvV: e += fut(i, k) * V(k, j); break;
                    }
                }
                if (i == j)
                    e -= h.one();
                h.entries_.push_back({static_cast<RelationFamily>(fam), i, j, std::move(e)});
            }
        }
    }

    std::vector<FreeElement> relations;
    for (const auto& entry : h.entries_) {
        if (entry.element.is_zero())
            continue;
        bool dup = false;
        for (const auto& r : relations)
            dup = dup || r == entry.element;
        if (!dup)
            relations.push_back(entry.element);
    }
    std::vector<int> weights(alg->size());
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
            weights[h.u_letter(i, j)] = 1;
            weights[h.v_letter(i, j)] = -1;
        }
    h.presentation_ = std::make_shared<Presentation>(alg, std::move(relations), std::move(weights));

    std::vector<TensorElement> delta_images(alg->size(), TensorElement({alg, alg}));
    std::vector<FreeElement> s_images(alg->size(), FreeElement(alg));
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < t; ++j) {
            TensorElement du({alg, alg}), dv({alg, alg});
            for (int k = 0; k < t; ++k) {
                du.add_term({Word{h.u_letter(i, k)}, Word{h.u_letter(k, j)}}, Rational(1));
                dv.add_term({Word{h.v_letter(i, k)}, Word{h.v_letter(k, j)}}, Rational(1));
            }
            delta_images[h.u_letter(i, j)] = std::move(du);
            delta_images[h.v_letter(i, j)] = std::move(dv);
            // S(u) = v^T, S(v) = F u^T F^-1
            s_images[h.u_letter(i, j)] = V(j, i);
            s_images[h.v_letter(i, j)] = fut(i, j);
        }
    }
    h.delta_ = std::make_shared<TensorHom>(alg, std::move(delta_images), TensorElement::one({alg, alg}));
    h.antipode_ = std::make_shared<FreeHom>(alg, std::move(s_images), h.one(), /*anti=*/true);

    for (const auto& r : h.presentation_->relations()) {
        if (!h.grading_specialize(r).is_zero())
            throw std::logic_error("grading specialization does not annihilate relation " + r.to_string());
        if (sgn(h.counit(r)) != 0)
            throw std::logic_error("counit does not annihilate relation " + r.to_string());
    }
    return h;
}

Rational HopfAlgebra::counit(const FreeElement& x) const
{
    Rational total(0);
    for (const auto& [w, c] : x.terms()) {
        bool diag = true;
        for (Letter l : w) {
            auto idx = alg_->index(l);
            if (idx.row != idx.col) {
                diag = false;
                break;
            }
        }
        if (diag)
            total += c;
    }
    return total;
}

LaurentPolynomial HopfAlgebra::grading_specialize_word(const Word& w) const
{
    int exponent = 0;
    for (Letter l : w) {
        auto idx = alg_->index(l);
        if (idx.row != idx.col)
            return {};
        exponent += idx.block == 0 ? 1 : -1;
    }
    return LaurentPolynomial::monomial(exponent);
}

LaurentPolynomial HopfAlgebra::grading_specialize(const FreeElement& x) const
{
    LaurentPolynomial out;
    for (const auto& [w, c] : x.terms()) {
        auto p = grading_specialize_word(w);
        for (const auto& [e, pc] : p.terms())
            out.add_term(e, pc * c);
    }
    return out;
}

std::shared_ptr<const TruncatedQuotient> HopfAlgebra::quotient(int d) const
{
    return QuotientCache::global().get(*presentation_, d);
}

// ---------------------------------------------------------------------------

Certification tensor_is_zero_mod(const TruncatedQuotient& q, const TensorElement& x)
{
    if (x.arity() != 2)
        throw std::invalid_argument("tensor_is_zero_mod expects two legs");
    const auto& alg = q.presentation().algebra();
    std::map<Word, FreeElement> nf;
    auto normal = [&](const Word& w) -> const FreeElement& {
        auto it = nf.find(w);
        if (it == nf.end())
            it = nf.emplace(w, q.normal_form(FreeElement::monomial(alg, w))).first;
        return it->second;
    };
    TensorElement acc({alg, alg});
    for (const auto& [key, c] : x.terms()) {
        const auto& a = normal(key[0]);
        const auto& b = normal(key[1]);
        for (const auto& [wa, ca] : a.terms())
            for (const auto& [wb, cb] : b.terms())
                acc.add_term({wa, wb}, c * ca * cb);
    }
    return acc.is_zero() ? Certification::CertifiedZero : Certification::NotCertified;
}

HopfCompatReport check_hopf_compat(const HopfAlgebra& h, int d)
{
    if (d < 4)
        throw std::invalid_argument("check_hopf_compat needs truncation d >= 4");
    HopfCompatReport rep;
    rep.t = h.t();
    rep.d = d;
    auto q = h.quotient(d);
    const auto& alg = h.algebra();

    auto tally = [&](Certification c) {
        if (c == Certification::CertifiedZero)
            ++rep.certified;
        else
            ++rep.inconclusive;
    };

    for (const auto& entry : h.relation_entries()) {
        const auto& r = entry.element;
        HopfCheckEntry e;
        e.label = std::string(to_string(entry.family)) + "[" + std::to_string(entry.row + 1) + "," +
                  std::to_string(entry.col + 1) + "]";
        e.counit_zero = sgn(h.counit(r)) == 0;
        if (e.counit_zero)
            ++rep.certified;
        else
            ++rep.failures;
        e.delta = tensor_is_zero_mod(*q, h.delta(r));
        e.antipode = q->is_zero_mod(h.antipode(r));
        tally(e.delta);
        tally(e.antipode);
        rep.relations.push_back(std::move(e));
    }

    // exact identities on generators in the free cover
    rep.coassociative = true;
    rep.counital = true;
    for (Letter l = 0; l < alg->size(); ++l) {
        auto x = FreeElement::generator(alg, l);
        auto dx = h.delta(x);
        auto left = dx.expand_leg(0, [&](const Word& w) { return h.delta(FreeElement::monomial(alg, w)); });
        auto right = dx.expand_leg(1, [&](const Word& w) { return h.delta(FreeElement::monomial(alg, w)); });
        if (!(left == right))
            rep.coassociative = false;

        FreeElement eps_left(alg), eps_right(alg);
        for (const auto& [key, c] : dx.terms()) {
            eps_left += FreeElement::monomial(alg, key[1], c * h.counit(FreeElement::monomial(alg, key[0])));
            eps_right += FreeElement::monomial(alg, key[0], c * h.counit(FreeElement::monomial(alg, key[1])));
        }
        if (!(eps_left == x) || !(eps_right == x))
            rep.counital = false;
    }
    if (!rep.coassociative)
        ++rep.failures;
    if (!rep.counital)
        ++rep.failures;
    return rep;
}

} // namespace freefft
