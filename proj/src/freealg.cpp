#include "freefft/freealg.hpp"

#include <optional>
#include <set>
#include <sstream>

namespace freefft {

GeneratorSet::GeneratorSet(std::string name, int rows, int cols)
    : GeneratorSet(name, std::vector<GeneratorBlock>{{name, rows, cols}})
{
}

GeneratorSet::GeneratorSet(std::string name, std::vector<GeneratorBlock> blocks)
    : name_(std::move(name)), blocks_(std::move(blocks))
{
    if (blocks_.empty())
        throw std::invalid_argument("generator set needs at least one block");
    for (const auto& b : blocks_) {
        if (b.rows < 1 || b.cols < 1)
            throw std::invalid_argument("generator block '" + b.symbol + "' must have rows, cols >= 1");
        offsets_.push_back(size_);
        size_ += static_cast<std::size_t>(b.rows) * static_cast<std::size_t>(b.cols);
    }
    if (size_ > 0xFFFF)
        throw std::invalid_argument("too many generators");
}

Letter GeneratorSet::letter(std::size_t block, int i, int j) const
{
    const auto& b = blocks_.at(block);
    if (i < 0 || i >= b.rows || j < 0 || j >= b.cols)
        throw std::out_of_range("generator index out of range");
    return static_cast<Letter>(offsets_[block] + static_cast<std::size_t>(i * b.cols + j));
}

GeneratorSet::Index GeneratorSet::index(Letter l) const
{
    if (l >= size_)
        throw std::out_of_range("unknown generator");
    std::size_t block = blocks_.size() - 1;
    while (offsets_[block] > l)
        --block;
    const int local = static_cast<int>(l - offsets_[block]);
    return {block, local / blocks_[block].cols, local % blocks_[block].cols};
}

std::string GeneratorSet::label(Letter l) const
{
    auto idx = index(l);
    const auto& b = blocks_[idx.block];
    std::string s = b.symbol;
    if (b.rows == 1 && b.cols == 1)
        return s;
    if (b.rows >= 10 || b.cols >= 10)
        return s + "[" + std::to_string(idx.row + 1) + "," + std::to_string(idx.col + 1) + "]";
    return s + std::to_string(idx.row + 1) + std::to_string(idx.col + 1);
}

AlgebraRef make_algebra(std::string name, int rows, int cols)
{
    return std::make_shared<const GeneratorSet>(std::move(name), rows, cols);
}

AlgebraRef make_algebra(std::string name, std::vector<GeneratorBlock> blocks)
{
    return std::make_shared<const GeneratorSet>(std::move(name), std::move(blocks));
}

std::string word_to_string(const GeneratorSet& alg, const Word& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k)
            s += '*';
        s += alg.label(w[k]);
    }
    return s;
}

std::uint64_t word_rank(const Word& w, std::size_t alphabet)
{
    std::uint64_t r = 0;
    for (Letter l : w)
        r = r * alphabet + l;
    return r;
}

Word word_unrank(std::uint64_t rank, std::size_t length, std::size_t alphabet)
{
    Word w(length);
    for (std::size_t k = length; k-- > 0;) {
        w[k] = static_cast<Letter>(rank % alphabet);
        rank /= alphabet;
    }
    return w;
}

std::vector<Word> degree_basis(const GeneratorSet& alg, int k)
{
    if (k < 0)
        throw std::invalid_argument("degree_basis: negative degree");
    const std::size_t g = alg.size();
    std::vector<Word> out;
    Word w(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(w);
        int pos = k - 1;
        while (pos >= 0 && w[pos] + 1u == g) {
            w[pos] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++w[pos];
    }
    return out;
}

// ---------------------------------------------------------------------------

FreeElement::FreeElement(AlgebraRef alg)
    : alg_(std::move(alg))
{
    if (!alg_)
        throw std::invalid_argument("free element without algebra");
}

FreeElement::FreeElement(AlgebraRef alg, const Rational& scalar)
    : FreeElement(std::move(alg))
{
    add_term({}, scalar);
}

FreeElement FreeElement::generator(AlgebraRef alg, Letter l)
{
    if (l >= alg->size())
        throw std::out_of_range("unknown generator");
    return monomial(std::move(alg), Word{l});
}

FreeElement FreeElement::monomial(AlgebraRef alg, Word w, const Rational& c)
{
    FreeElement e(std::move(alg));
    for (Letter l : w)
        if (l >= e.alg_->size())
            throw std::out_of_range("unknown generator");
    e.add_term(w, c);
    return e;
}

int FreeElement::degree() const
{
    int d = -1;
    for (const auto& [w, c] : terms_)
        d = std::max(d, static_cast<int>(w.size()));
    return d;
}

FreeElement FreeElement::homogeneous_part(int k) const
{
    FreeElement out(alg_);
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) == k)
            out.terms_.emplace(w, c);
    return out;
}

Rational FreeElement::coefficient(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void FreeElement::add_term(const Word& w, const Rational& c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

void FreeElement::check_same(const FreeElement& other) const
{
    if (alg_ != other.alg_ && !(*alg_ == *other.alg_))
        throw std::invalid_argument("free algebra mismatch: " + alg_->name() + " vs " + other.alg_->name());
}

FreeElement& FreeElement::operator+=(const FreeElement& other)
{
    check_same(other);
    for (const auto& [w, c] : other.terms_)
        add_term(w, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& other)
{
    check_same(other);
    for (const auto& [w, c] : other.terms_)
        add_term(w, -c);
    return *this;
}

FreeElement& FreeElement::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_)
        v *= c;
    return *this;
}

FreeElement mul(const FreeElement& a, const FreeElement& b)
{
    a.check_same(b);
    FreeElement out(a.alg_);
    Word w;
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            w.assign(wa.begin(), wa.end());
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    }
    return out;
}

bool FreeElement::operator==(const FreeElement& other) const
{
    return *alg_ == *other.alg_ && terms_ == other.terms_;
}

std::string FreeElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << '-';
        first = false;
        Rational a = abs(c);
        if (w.empty())
            os << a.get_str();
        else if (a == 1)
            os << word_to_string(*alg_, w);
        else
            os << a.get_str() << '*' << word_to_string(*alg_, w);
    }
    return os.str();
}

// ---------------------------------------------------------------------------

TensorElement::TensorElement(std::vector<AlgebraRef> factors)
    : factors_(std::move(factors))
{
    for (const auto& f : factors_)
        if (!f)
            throw std::invalid_argument("tensor element without algebra");
}

TensorElement TensorElement::one(std::vector<AlgebraRef> factors)
{
    TensorElement e(std::move(factors));
    e.add_term(Key(e.factors_.size()), Rational(1));
    return e;
}

TensorElement TensorElement::pure(const std::vector<FreeElement>& legs)
{
    std::vector<AlgebraRef> factors;
    for (const auto& l : legs)
        factors.push_back(l.algebra());
    TensorElement out(factors);
    out.add_term(Key(legs.size()), Rational(1));
    for (std::size_t k = 0; k < legs.size(); ++k) {
        TensorElement next(factors);
        for (const auto& [key, c] : out.terms_) {
            for (const auto& [w, cw] : legs[k].terms()) {
                Key nk = key;
                nk[k] = w;
                next.add_term(std::move(nk), c * cw);
            }
        }
        out = std::move(next);
    }
    return out;
}

TensorElement tensor(const FreeElement& a, const FreeElement& b)
{
    return TensorElement::pure({a, b});
}

void TensorElement::add_term(Key key, const Rational& c)
{
    if (key.size() != factors_.size())
        throw std::invalid_argument("tensor term of wrong arity");
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(std::move(key), c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

void TensorElement::check_same(const TensorElement& other) const
{
    if (factors_.size() != other.factors_.size())
        throw std::invalid_argument("tensor arity mismatch");
    for (std::size_t k = 0; k < factors_.size(); ++k)
        if (factors_[k] != other.factors_[k] && !(*factors_[k] == *other.factors_[k]))
            throw std::invalid_argument("tensor factor mismatch at leg " + std::to_string(k));
}

TensorElement& TensorElement::operator+=(const TensorElement& other)
{
    check_same(other);
    for (const auto& [k, c] : other.terms_)
        add_term(k, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other)
{
    check_same(other);
    for (const auto& [k, c] : other.terms_)
        add_term(k, -c);
    return *this;
}

TensorElement& TensorElement::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_)
        v *= c;
    return *this;
}

TensorElement mul(const TensorElement& a, const TensorElement& b)
{
    a.check_same(b);
    TensorElement out(a.factors_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            TensorElement::Key key = ka;
            for (std::size_t l = 0; l < key.size(); ++l)
                key[l].insert(key[l].end(), kb[l].begin(), kb[l].end());
            out.add_term(std::move(key), ca * cb);
        }
    }
    return out;
}

std::vector<std::vector<int>> TensorElement::multidegrees() const
{
    std::set<std::vector<int>> seen;
    for (const auto& [key, c] : terms_) {
        std::vector<int> d;
        for (const auto& w : key)
            d.push_back(static_cast<int>(w.size()));
        seen.insert(d);
    }
    return {seen.begin(), seen.end()};
}

TensorElement TensorElement::permute(const std::vector<std::size_t>& perm) const
{
    if (perm.size() != factors_.size())
        throw std::invalid_argument("permutation of wrong arity");
    std::vector<AlgebraRef> f;
    for (auto p : perm)
        f.push_back(factors_.at(p));
    TensorElement out(f);
    for (const auto& [key, c] : terms_) {
        Key nk;
        for (auto p : perm)
            nk.push_back(key[p]);
        out.add_term(std::move(nk), c);
    }
    return out;
}

TensorElement TensorElement::map_leg(std::size_t leg, AlgebraRef target,
                                     const std::function<FreeElement(const Word&)>& f) const
{
    auto factors = factors_;
    factors.at(leg) = std::move(target);
    TensorElement out(factors);
    for (const auto& [key, c] : terms_) {
        FreeElement img = f(key[leg]);
        for (const auto& [w, cw] : img.terms()) {
            Key nk = key;
            nk[leg] = w;
            out.add_term(std::move(nk), c * cw);
        }
    }
    return out;
}

TensorElement TensorElement::expand_leg(std::size_t leg, const std::function<TensorElement(const Word&)>& f) const
{
    if (terms_.empty())
        throw std::invalid_argument("expand_leg on zero tensor: target factors unknown");
    std::vector<AlgebraRef> factors;
    std::optional<TensorElement> result;
    for (const auto& [key, c] : terms_) {
        TensorElement img = f(key.at(leg));
        if (!result) {
            factors.assign(factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(leg));
            factors.insert(factors.end(), img.factors().begin(), img.factors().end());
            factors.insert(factors.end(), factors_.begin() + static_cast<std::ptrdiff_t>(leg) + 1, factors_.end());
            result.emplace(factors);
        }
        for (const auto& [ik, ic] : img.terms()) {
            Key nk(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(leg));
            nk.insert(nk.end(), ik.begin(), ik.end());
            nk.insert(nk.end(), key.begin() + static_cast<std::ptrdiff_t>(leg) + 1, key.end());
            result->add_term(std::move(nk), c * ic);
        }
    }
    return *result;
}

FreeElement TensorElement::leg_coefficient(std::size_t leg, const Key& rest) const
{
    FreeElement out(factors_.at(leg));
    for (const auto& [key, c] : terms_) {
        bool match = true;
        for (std::size_t l = 0, r = 0; l < key.size() && match; ++l) {
            if (l == leg)
                continue;
            match = key[l] == rest.at(r++);
        }
        if (match)
            out.add_term(key[leg], c);
    }
    return out;
}

bool TensorElement::operator==(const TensorElement& other) const
{
    if (factors_.size() != other.factors_.size())
        return false;
    for (std::size_t k = 0; k < factors_.size(); ++k)
        if (!(*factors_[k] == *other.factors_[k]))
            return false;
    return terms_ == other.terms_;
}

std::string TensorElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << '-';
        first = false;
        Rational a = abs(c);
        if (a != 1)
            os << a.get_str() << '*';
        os << '(';
        for (std::size_t l = 0; l < key.size(); ++l)
            os << (l ? " (x) " : "") << word_to_string(*factors_[l], key[l]);
        os << ')';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

ThetaMap make_theta(int m, int n, int t)
{
    if (m < 1 || n < 1 || t < 1)
        throw std::invalid_argument("theta: m, n, t must be positive");
    auto x = make_algebra("x", m, n);
    auto y = make_algebra("y", m, t);
    auto z = make_algebra("z", t, n);
    std::vector<TensorElement> images;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            TensorElement img({y, z});
            for (int k = 0; k < t; ++k)
                img.add_term({Word{y->letter(i, k)}, Word{z->letter(k, j)}}, Rational(1));
            images.push_back(std::move(img));
        }
    }
    TensorHom hom(x, std::move(images), TensorElement::one({y, z}));
    return {x, y, z, std::move(hom)};
}

static std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

SparseVector bidegree_coordinates(const TensorElement& x, int i, int j)
{
    if (x.arity() != 2)
        throw std::invalid_argument("bidegree coordinates need a binary tensor");
    const std::size_t ga = x.factors()[0]->size();
    const std::size_t gb = x.factors()[1]->size();
    const std::uint64_t stride = ipow(gb, j);
    SparseVector v;
    for (const auto& [key, c] : x.terms()) {
        if (static_cast<int>(key[0].size()) != i || static_cast<int>(key[1].size()) != j)
            throw std::invalid_argument("tensor is not homogeneous of the requested bidegree");
        v.push_back({static_cast<std::size_t>(word_rank(key[0], ga) * stride + word_rank(key[1], gb)), c});
    }
    sparse::canonicalize(v);
    return v;
}

TensorElement from_bidegree_coordinates(const SparseVector& v, const AlgebraRef& a, const AlgebraRef& b, int i, int j)
{
    const std::uint64_t stride = ipow(b->size(), j);
    TensorElement out({a, b});
    for (const auto& e : v)
        out.add_term({word_unrank(e.col / stride, static_cast<std::size_t>(i), a->size()),
                      word_unrank(e.col % stride, static_cast<std::size_t>(j), b->size())},
                     e.value);
    return out;
}

RationalMatrix theta_matrix(int m, int n, int t, int k)
{
    if (k < 0)
        throw std::invalid_argument("theta_matrix: negative degree");
    auto theta = make_theta(m, n, t);
    auto source = degree_basis(*theta.x_alg, k);
    const std::size_t rows = ipow(static_cast<std::uint64_t>(m) * t, k) * ipow(static_cast<std::uint64_t>(t) * n, k);
    // built column by column, then transposed into row storage
    std::vector<SparseVector> cols;
    cols.reserve(source.size());
    for (const auto& w : source)
        cols.push_back(bidegree_coordinates(theta.hom.apply_word(w), k, k));
    return RationalMatrix::from_rows(rows, std::move(cols)).transpose();
}

} // namespace freefft
