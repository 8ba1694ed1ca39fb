#pragma once

// The universal cosovereign Hopf algebra H(F) for F in GL_t(Q): generators
// u_ij, v_ij, relations u v^T = v^T u = I = v F u^T F^-1 = F u^T F^-1 v, and
// its coproduct, counit and antipode on the free cover.

#include "freefft/exactlin.hpp"
#include "freefft/fpquot.hpp"
#include "freefft/freealg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace freefft {

/// An invertible t x t rational matrix together with its exact inverse.
class FMatrix {
public:
    /// Throws std::domain_error if m is singular, std::invalid_argument if
    /// it is not square or empty.
    explicit FMatrix(RationalMatrix m);

    static FMatrix identity(int t);
    static FMatrix diagonal(const std::vector<Rational>& entries);
    /// Ones on the diagonal and the superdiagonal.
    static FMatrix jordan(int t);

    int size() const { return t_; }
    const RationalMatrix& matrix() const { return f_; }
    const RationalMatrix& inverse() const { return f_inv_; }
    /// e.g. [["1","0"],["0","2"]]
    std::string to_string() const;

private:
    int t_;
    RationalMatrix f_;
    RationalMatrix f_inv_;
};

/// Exact inverse of a square matrix; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// One of the four matrix identities defining H(F).
enum class RelationFamily { UVt, VtU, VFUtFinv, FUtFinvV };

const char* to_string(RelationFamily f);

struct RelationEntry {
    RelationFamily family;
    int row;
    int col;
    FreeElement element; // entry (row, col) of the matrix product minus the identity
};

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    static LaurentPolynomial monomial(int exponent, const Rational& c = Rational(1));

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(int exponent, const Rational& c);

    LaurentPolynomial& operator+=(const LaurentPolynomial& o);
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    bool operator==(const LaurentPolynomial& o) const = default;
    std::string to_string() const;

private:
    std::map<int, Rational> terms_;
};

class HopfAlgebra {
public:
    const FMatrix& f() const { return f_; }
    int t() const { return f_.size(); }
    /// Free cover: blocks "u" and "v", both t x t.
    const AlgebraRef& algebra() const { return alg_; }
    /// Relations (duplicates removed), graded by u -> +1, v -> -1.
    const Presentation& presentation() const { return *presentation_; }
    /// All 4t^2 entries, by family, including coinciding ones.
    const std::vector<RelationEntry>& relation_entries() const { return entries_; }

    Letter u_letter(int i, int j) const { return alg_->letter(0, i, j); }
    Letter v_letter(int i, int j) const { return alg_->letter(1, i, j); }
    FreeElement u(int i, int j) const { return FreeElement::generator(alg_, u_letter(i, j)); }
    FreeElement v(int i, int j) const { return FreeElement::generator(alg_, v_letter(i, j)); }
    FreeElement one() const { return FreeElement::one(alg_); }

    TensorElement delta(const FreeElement& x) const { return delta_->apply(x); }
    Rational counit(const FreeElement& x) const;
    FreeElement antipode(const FreeElement& x) const { return antipode_->apply(x); }
    FreeElement antipode_word(const Word& w) const { return antipode_->apply_word(w); }

    /// u -> z I, v -> z^-1 I.
    LaurentPolynomial grading_specialize(const FreeElement& x) const;
    LaurentPolynomial grading_specialize_word(const Word& w) const;

    /// Shared truncated quotient of the presentation.
    std::shared_ptr<const TruncatedQuotient> quotient(int d) const;

private:
    explicit HopfAlgebra(FMatrix f);
    friend HopfAlgebra build_HF(const FMatrix& f);

    FMatrix f_;
    AlgebraRef alg_;
    std::vector<RelationEntry> entries_;
    std::shared_ptr<Presentation> presentation_;
    std::shared_ptr<TensorHom> delta_;
    std::shared_ptr<FreeHom> antipode_;
};

/// Builds H(F). Verifies on construction that the grading specialization
/// annihilates every relation and that the counit kills every relation.
HopfAlgebra build_HF(const FMatrix& f);

struct HopfCheckEntry {
    std::string label;
    bool counit_zero = false;
    Certification delta = Certification::NotCertified;
    Certification antipode = Certification::NotCertified;
};

struct HopfCompatReport {
    int t = 0;
    int d = 0;
    std::vector<HopfCheckEntry> relations;
    bool coassociative = false;   // on generators, exact
    bool counital = false;        // on generators, exact
    std::size_t certified = 0;    // certified (relation, check) pairs
    std::size_t inconclusive = 0;
    std::size_t failures = 0;     // exact identities that failed

    bool passed() const { return failures == 0 && inconclusive == 0; }
};

/// Checks that the relations generate a Hopf ideal at truncation d (d >= 4).
HopfCompatReport check_hopf_compat(const HopfAlgebra& h, int d);

/// Membership of a two-leg tensor in I_{<=d} (x) F + F (x) I_{<=d}.
Certification tensor_is_zero_mod(const TruncatedQuotient& q, const TensorElement& x);

} // namespace freefft
