#pragma once

// Coactions of H(F) on A(m,t) and A(t,n), the coaction on A(m,t) (x) A(t,n),
// coinvariants at a truncation degree, and the certification of
//
//     theta : A(m,n) -> (A(m,t) (x) A(t,n))^{co H(F)}  is onto in bidegree (k,k)
//
// The computed coinvariant space V only ever under-approximates the true
// one (non-certified H-coefficients are treated as nonzero). Combined with
// Im theta_k <= V and dim Im theta_k = (mn)^k this pins V down exactly.

#include "freefft/exactlin.hpp"
#include "freefft/fpquot.hpp"
#include "freefft/freealg.hpp"
#include "freefft/hopf.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace freefft {

/// Raised when a computed result contradicts a proven theorem; always an
/// implementation bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Kernel of a linear system whose equations say "sum_u c_u h_u lies in
/// I_{<=d}", solved through normal forms.
class CertifiedSystem {
public:
    CertifiedSystem(std::shared_ptr<const TruncatedQuotient> q, std::size_t unknowns);

    void add_equation(const std::vector<std::pair<std::size_t, FreeElement>>& terms);
    std::size_t unknowns() const { return unknowns_; }
    std::size_t equations() const { return equations_; }
    /// Matrix with one row per (equation, quotient word); columns = unknowns.
    RationalMatrix matrix() const;
    Subspace solve() const { return kernel_basis(matrix()); }

private:
    const FreeElement& normal_word(const Word& w);

    std::shared_ptr<const TruncatedQuotient> q_;
    std::size_t unknowns_;
    std::size_t equations_ = 0;
    std::map<Word, FreeElement> nf_cache_;
    std::vector<SparseVector> rows_;
};

/// The setting (m, n, t, F): algebras A(m,t) ("y"), A(t,n) ("z") and H(F).
class CoactionContext {
public:
    CoactionContext(int m, int n, const FMatrix& f);

    int m() const { return m_; }
    int n() const { return n_; }
    int t() const { return hopf_.t(); }
    const HopfAlgebra& hopf() const { return hopf_; }
    const AlgebraRef& y_alg() const { return y_; }
    const AlgebraRef& z_alg() const { return z_; }

    /// rho(y_ij) = sum_k y_ik (x) u_kj, into A(m,t) (x) H.
    const TensorHom& right_coaction() const { return *rho_; }
    /// lambda(z_ij) = sum_k u_ik (x) z_kj, into H (x) A(t,n).
    const TensorHom& left_coaction() const { return *lambda_; }
    /// rho' = tau o (id (x) S) o rho, into H (x) A(m,t).
    TensorElement flipped_coaction(const FreeElement& x) const;
    /// rho'(y_ij) = sum_k v_jk (x) y_ik, written down directly.
    TensorElement flipped_generator_image(int i, int j) const;
    /// alpha(a (x) b) = a_(-1) b_(-1) (x) a_(0) (x) b_(0), into H (x) A (x) B.
    TensorElement tensor_coaction_of(const TensorElement& x) const;

private:
    int m_;
    int n_;
    HopfAlgebra hopf_;
    AlgebraRef y_;
    AlgebraRef z_;
    std::shared_ptr<TensorHom> rho_;
    std::shared_ptr<TensorHom> lambda_;
};

/// H-coefficients of alpha on the (y-word, z-word) basis of bidegree (i,j),
/// indexed y_rank * (tn)^j + z_rank.
struct BidegreeCoaction {
    int i = 0;
    int j = 0;
    std::size_t dim = 0;
    /// coefficients[x] lists (s, h) with alpha(b_x) = sum_s h (x) b_s.
    std::vector<std::vector<std::pair<std::size_t, FreeElement>>> coefficients;
};

BidegreeCoaction tensor_coaction(const CoactionContext& ctx, int i, int j);

/// Coinvariants of bidegree (i,j) certified at truncation d (d >= i+j), in
/// bidegree coordinates.
Subspace coinvariants(const CoactionContext& ctx, int i, int j, int d);

/// Whether x (binary tensor in A(m,t) (x) A(t,n)) has alpha(x) - 1 (x) x
/// certified zero at truncation d.
Certification is_coinvariant(const CoactionContext& ctx, const TensorElement& x, int d);

/// Exact proof that bidegree (i,j), i != j, carries no coinvariants: under
/// u -> zI, v -> z^-1 I every coaction coefficient becomes delta * z^(j-i).
struct OffDiagonalCertificate {
    int i = 0;
    int j = 0;
    int exponent = 0;
    std::size_t checked_coefficients = 0;
    bool relations_annihilated = false;
    bool coefficients_match = false;
    bool valid() const { return exponent != 0 && relations_annihilated && coefficients_match; }
};

/// Throws std::invalid_argument when i == j.
OffDiagonalCertificate off_diagonal_vanish(int m, int n, int t, int i, int j,
                                           const FMatrix* f = nullptr);

struct CoinvariantReport {
    int m = 0;
    int n = 0;
    int t = 0;
    std::string f;
    int i = 0;
    int j = 0;
    int d = 0;
    Subspace computed;
    Subspace theta_image;
    std::size_t expected_dim = 0; // (mn)^k
    std::size_t theta_rank = 0;
    bool image_contained = false;
    bool certified = false;
    bool off_diagonal_vanishing = false;
};

/// Squeeze certification in bidegree (k,k). Requires d >= 2k. Throws
/// InternalError if the computed space is larger than (mn)^k.
CoinvariantReport certify_fft(const CoactionContext& ctx, int k, int d);

/// Default truncation for bidegree (i,j).
inline int auto_truncation(int i, int j) { return i + j + 2; }

struct SubalgebraReport {
    std::uint64_t seed = 0;
    int samples = 0;
    int certified = 0;
    int failures = 0;
    std::vector<std::string> failed_cases;
};

/// Multiplies random elements of certified coinvariant spaces of bidegrees
/// (a,a), (b,b) with a + b <= max_total and checks the product is certified
/// coinvariant at truncation 2(a+b) + margin.
SubalgebraReport subalgebra_check(const CoactionContext& ctx, int samples, std::uint64_t seed,
                                  int max_total = 2, int margin = 0);

} // namespace freefft
