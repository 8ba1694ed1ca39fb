#pragma once

// Commutative counterparts: the map theta* : O(M_{m,n}) -> O(M_{m,t}) (x) O(M_{t,n}),
// X_ij -> sum_k Y_ik Z_kj, the ideal of (t+1)-minors, and invariants of the
// polarization derivations E_ab. Everything is done degree by degree.

#include "freefft/exactlin.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace freefft {

using Exponent = std::vector<std::uint8_t>;

/// Graded lexicographic: higher total degree first, then larger exponent
/// vector first.
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Polynomial ring over Q in named variables.
class PolyRing {
public:
    explicit PolyRing(std::vector<std::string> names);

    /// X_ij for an r x c matrix of variables named symbol.
    static PolyRing matrix(const std::string& symbol, int rows, int cols);
    /// Y (m x t) followed by Z (t x n).
    static PolyRing tensor(int m, int n, int t);

    std::size_t nvars() const { return names_.size(); }
    const std::string& name(std::size_t v) const { return names_.at(v); }
    /// Degree-k monomials in grlex order (largest first).
    std::vector<Exponent> monomials(int k) const;

private:
    std::vector<std::string> names_;
};

class Polynomial {
public:
    using Terms = std::map<Exponent, Rational, GrlexGreater>;

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t v);
    static Polynomial monomial(const Exponent& e, const Rational& c = Rational(1));

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for zero.
    int degree() const;
    bool is_homogeneous() const;
    void add_term(const Exponent& e, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c);
    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    std::string to_string(const PolyRing& ring) const;

private:
    std::size_t nvars_;
    Terms terms_;
};

/// Coordinates of a homogeneous degree-k polynomial against ring.monomials(k).
SparseVector coordinates(const PolyRing& ring, const Polynomial& p, int k);

/// theta*(X_ij) in the tensor ring.
Polynomial theta_star_generator(int m, int n, int t, int i, int j);
Polynomial theta_star(int m, int n, int t, const Polynomial& p);

/// Matrix of the degree-k component: rows = degree-k X monomials, columns =
/// degree-2k tensor monomials (row r is the image of monomial r).
RationalMatrix theta_star_matrix(int m, int n, int t, int k);
/// Kernel of the degree-k component, in X-monomial coordinates.
Subspace theta_star_kernel(int m, int n, int t, int k);
/// Image of the degree-k component, in degree-2k tensor coordinates.
Subspace theta_star_image(int m, int n, int t, int k);

/// det of the submatrix of X on the given rows and columns (Leibniz).
Polynomial minor(int m, int n, const std::vector<int>& rows, const std::vector<int>& cols);
/// All (size x size) minors of the generic m x n matrix.
std::vector<Polynomial> minors(int m, int n, int size);
/// Degree-k component of the ideal generated by the (t+1)-minors.
Subspace minors_component(int m, int n, int t, int k);

/// E_ab on the tensor ring: E_ab(Y_ic) = -delta_bc Y_ia, E_ab(Z_cj) = delta_ac Z_bj.
Polynomial derivation(int m, int n, int t, int a, int b, const Polynomial& p);
/// Joint kernel of all E_ab on the total-degree-k component of the tensor ring.
Subspace glt_invariants(int m, int n, int t, int k);

struct ClassicalDegree {
    int k = 0;
    std::size_t lhs_dim = 0;
    std::size_t rhs_dim = 0;
    bool inclusion = false; // rhs contained in lhs
    bool equal = false;
    bool odd_vanish = true; // fft1 only: no invariants in total degree 2k-1
};

struct ClassicalReport {
    int m = 0;
    int n = 0;
    int t = 0;
    int max_degree = 0;
    std::vector<ClassicalDegree> degrees;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// For each theta* degree k <= max_degree: glt_invariants in total degree
/// 2k equals the image of theta*, and odd total degree 2k-1 carries no
/// invariants. lhs = invariants, rhs = image.
ClassicalReport fft1_check(int m, int n, int t, int max_degree);
/// For each k <= max_degree: theta_star_kernel equals minors_component.
/// lhs = kernel, rhs = minors.
ClassicalReport fft2_check(int m, int n, int t, int max_degree);

} // namespace freefft
