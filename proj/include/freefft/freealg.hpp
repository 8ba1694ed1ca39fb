#pragma once

// Free associative algebras on matrix-indexed generators, their tensor
// products, and algebra morphisms defined on generators.

#include "freefft/exactlin.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace freefft {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

/// A rectangular family of generators s_{ij}, 1 <= i <= rows, 1 <= j <= cols.
struct GeneratorBlock {
    std::string symbol;
    int rows = 1;
    int cols = 1;

    bool operator==(const GeneratorBlock&) const = default;
};

/// Generators of a free algebra, made of one or more blocks. Letters are
/// numbered block by block, row-major inside a block; the lexicographic
/// order on words uses these numbers.
class GeneratorSet {
public:
    GeneratorSet(std::string name, int rows, int cols);
    GeneratorSet(std::string name, std::vector<GeneratorBlock> blocks);

    const std::string& name() const { return name_; }
    const std::vector<GeneratorBlock>& blocks() const { return blocks_; }
    std::size_t size() const { return size_; }

    /// 0-based block/row/col.
    Letter letter(std::size_t block, int i, int j) const;
    Letter letter(int i, int j) const { return letter(0, i, j); }

    struct Index {
        std::size_t block;
        int row;
        int col;
    };
    Index index(Letter l) const;
    /// e.g. "y12" (1-based indices, as in the usual matrix notation).
    std::string label(Letter l) const;

    bool operator==(const GeneratorSet& other) const
    {
        return name_ == other.name_ && blocks_ == other.blocks_;
    }

private:
    std::string name_;
    std::vector<GeneratorBlock> blocks_;
    std::vector<std::size_t> offsets_;
    std::size_t size_ = 0;
};

using AlgebraRef = std::shared_ptr<const GeneratorSet>;

AlgebraRef make_algebra(std::string name, int rows, int cols);
AlgebraRef make_algebra(std::string name, std::vector<GeneratorBlock> blocks);

std::string word_to_string(const GeneratorSet& alg, const Word& w);
/// Rank of w among the words of the same length in lexicographic order.
std::uint64_t word_rank(const Word& w, std::size_t alphabet);
Word word_unrank(std::uint64_t rank, std::size_t length, std::size_t alphabet);

/// All (rows*cols)^k words of degree k, lexicographically ordered.
std::vector<Word> degree_basis(const GeneratorSet& alg, int k);

// ---------------------------------------------------------------------------

class FreeElement {
public:
    using Terms = std::map<Word, Rational>;

    explicit FreeElement(AlgebraRef alg);
    FreeElement(AlgebraRef alg, const Rational& scalar);

    static FreeElement zero(AlgebraRef alg) { return FreeElement(std::move(alg)); }
    static FreeElement one(AlgebraRef alg) { return FreeElement(std::move(alg), Rational(1)); }
    static FreeElement generator(AlgebraRef alg, Letter l);
    static FreeElement monomial(AlgebraRef alg, Word w, const Rational& c = Rational(1));

    const AlgebraRef& algebra() const { return alg_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero element.
    int degree() const;
    FreeElement homogeneous_part(int k) const;
    Rational coefficient(const Word& w) const;

    void add_term(const Word& w, const Rational& c);

    FreeElement& operator+=(const FreeElement& other);
    FreeElement& operator-=(const FreeElement& other);
    FreeElement& operator*=(const Rational& c);

    friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
    friend FreeElement operator*(FreeElement a, const Rational& c) { return a *= c; }
    friend FreeElement operator*(const Rational& c, FreeElement a) { return a *= c; }
    friend FreeElement operator*(const FreeElement& a, const FreeElement& b) { return mul(a, b); }
    friend FreeElement mul(const FreeElement& a, const FreeElement& b);

    bool operator==(const FreeElement& other) const;
    std::string to_string() const;

private:
    void check_same(const FreeElement& other) const;

    AlgebraRef alg_;
    Terms terms_;
};

/// An element of A_1 (x) ... (x) A_r, stored as a combination of word tuples.
class TensorElement {
public:
    using Key = std::vector<Word>;
    using Terms = std::map<Key, Rational>;

    explicit TensorElement(std::vector<AlgebraRef> factors);

    static TensorElement zero(std::vector<AlgebraRef> factors) { return TensorElement(std::move(factors)); }
    static TensorElement one(std::vector<AlgebraRef> factors);
    static TensorElement pure(const std::vector<FreeElement>& legs);

    const std::vector<AlgebraRef>& factors() const { return factors_; }
    std::size_t arity() const { return factors_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Key key, const Rational& c);

    TensorElement& operator+=(const TensorElement& other);
    TensorElement& operator-=(const TensorElement& other);
    TensorElement& operator*=(const Rational& c);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(TensorElement a, const Rational& c) { return a *= c; }
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b) { return mul(a, b); }
    /// Componentwise: (a (x) b)(a' (x) b') = aa' (x) bb'.
    friend TensorElement mul(const TensorElement& a, const TensorElement& b);

    /// Degree vectors of the terms, without repetition.
    std::vector<std::vector<int>> multidegrees() const;
    /// Permutes legs: leg k of the result is leg perm[k] of this.
    TensorElement permute(const std::vector<std::size_t>& perm) const;
    /// Applies a linear map (given on words) to one leg. The map's output
    /// algebra replaces that leg's algebra.
    TensorElement map_leg(std::size_t leg, AlgebraRef target,
                          const std::function<FreeElement(const Word&)>& f) const;
    /// Replaces leg `leg` by the legs of f(word); arity grows by f-arity - 1.
    TensorElement expand_leg(std::size_t leg, const std::function<TensorElement(const Word&)>& f) const;
    /// Coefficient on leg `leg` paired with the remaining key.
    FreeElement leg_coefficient(std::size_t leg, const Key& rest) const;

    bool operator==(const TensorElement& other) const;
    std::string to_string() const;

private:
    void check_same(const TensorElement& other) const;

    std::vector<AlgebraRef> factors_;
    Terms terms_;
};

/// Tensor of two free elements as a binary TensorElement.
TensorElement tensor(const FreeElement& a, const FreeElement& b);

// ---------------------------------------------------------------------------

/// A unital algebra morphism (or anti-morphism) out of a free algebra,
/// determined by the images of the generators.
template <class Target>
class AlgebraHom {
public:
    AlgebraHom(AlgebraRef source, std::vector<Target> images, Target unit, bool anti = false)
        : source_(std::move(source)), images_(std::move(images)), unit_(std::move(unit)), anti_(anti)
    {
        if (images_.size() != source_->size())
            throw std::invalid_argument("algebra morphism: need one image per generator");
    }

    const AlgebraRef& source() const { return source_; }
    const Target& image(Letter l) const
    {
        if (l >= images_.size())
            throw std::out_of_range("algebra morphism: unknown generator");
        return images_[l];
    }
    const Target& unit() const { return unit_; }
    bool is_anti() const { return anti_; }

    Target apply_word(const Word& w) const
    {
        Target acc = unit_;
        if (anti_) {
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                acc = mul(acc, image(*it));
        } else {
            for (Letter l : w)
                acc = mul(acc, image(l));
        }
        return acc;
    }

    Target apply(const FreeElement& x) const
    {
        if (!(*x.algebra() == *source_))
            throw std::invalid_argument("algebra morphism applied outside its source algebra");
        Target out = unit_ * Rational(0);
        for (const auto& [w, c] : x.terms())
            out += apply_word(w) * c;
        return out;
    }

private:
    AlgebraRef source_;
    std::vector<Target> images_;
    Target unit_;
    bool anti_;
};

using FreeHom = AlgebraHom<FreeElement>;
using TensorHom = AlgebraHom<TensorElement>;

template <class Target>
Target apply_hom(const AlgebraHom<Target>& h, const FreeElement& x)
{
    return h.apply(x);
}

/// theta : A(m,n) -> A(m,t) (x) A(t,n), x_ij -> sum_k y_ik (x) z_kj.
struct ThetaMap {
    AlgebraRef x_alg;
    AlgebraRef y_alg;
    AlgebraRef z_alg;
    TensorHom hom;
};

ThetaMap make_theta(int m, int n, int t);

/// Columns: degree-k words of A(m,n); rows: pairs (y-word, z-word) of
/// bidegree (k,k), indexed y_rank * (tn)^k + z_rank.
RationalMatrix theta_matrix(int m, int n, int t, int k);

/// Coordinates of a bidegree (i,j) tensor in the (y-word, z-word) basis.
SparseVector bidegree_coordinates(const TensorElement& x, int i, int j);
TensorElement from_bidegree_coordinates(const SparseVector& v, const AlgebraRef& a, const AlgebraRef& b, int i, int j);

} // namespace freefft
