#pragma once

// Concrete comodule category over H(F): the fundamental comodule U = U_l,
// direct sums, tensor powers and duals; the category algebra C(U^m, U^n)
// and the morphism psi(x_ij) = u_j o p_i; right duality (e, d) and the
// transport of coinvariants to morphisms.
//
// Basis conventions (the category is treated as strict):
//  - U^m has basis (copy c, vector a) at index c*t + a;
//  - X (x) Y has basis index x*dim(Y) + y, so tensor powers are ordered
//    left to right with the first factor most significant;
//  - a comodule is stored by its coefficient matrix h, with
//    beta(e_a) = sum_b h_ab (x) e_b for left comodules and
//    alpha(e_a) = sum_b e_b (x) h_ba for right comodules.

#include "freefft/comod.hpp"
#include "freefft/exactlin.hpp"
#include "freefft/hopf.hpp"

#include <memory>
#include <string>
#include <vector>

namespace freefft {

enum class Side { Left, Right };

struct ComoduleSpace {
    std::string name;
    Side side = Side::Left;
    std::size_t dim = 0;
    /// dim x dim coefficients in the free cover of H(F).
    std::vector<std::vector<FreeElement>> coeff;
};

/// U_l: beta(e_i) = sum_j u_ij (x) e_j.
ComoduleSpace fundamental_left(const HopfAlgebra& h);
/// U_r: alpha(e_i) = sum_j e_j (x) u_ji.
ComoduleSpace fundamental_right(const HopfAlgebra& h);
ComoduleSpace trivial_comodule(const HopfAlgebra& h);
ComoduleSpace direct_power(const ComoduleSpace& u, int copies);
ComoduleSpace tensor_product(const ComoduleSpace& a, const ComoduleSpace& b);
ComoduleSpace tensor_power(const HopfAlgebra& h, const ComoduleSpace& u, int k);
/// Right dual of a left comodule: beta*(e^a) = sum_b S(h_ba) (x) e^b.
ComoduleSpace dual(const HopfAlgebra& h, const ComoduleSpace& u);

/// Delta(h_ab) = sum_c h_ac (x) h_cb and eps(h_ab) = delta_ab, exactly.
bool is_multiplicative(const HopfAlgebra& h, const ComoduleSpace& c);

struct Intertwiner {
    std::shared_ptr<const ComoduleSpace> source;
    std::shared_ptr<const ComoduleSpace> target;
    RationalMatrix matrix; // target.dim x source.dim
};

/// Comodule-morphism condition for a left-comodule map, certified at d.
Certification is_morphism(const HopfAlgebra& h, const ComoduleSpace& source, const ComoduleSpace& target,
                          const RationalMatrix& t, int d);

/// psi(w) for a degree-k word of A(m,n): the 0/1 matrix of
/// (u_j1 (x) ... (x) u_jk) o (p_i1 (x) ... (x) p_ik).
RationalMatrix psi_matrix(int m, int n, int t, const Word& w);
Intertwiner psi(const HopfAlgebra& h, int m, int n, const Word& w);

/// Basis of Hom((U^m)^{(x)i}, (U^n)^{(x)j}) certified at truncation d >= i+j.
std::vector<Intertwiner> intertwiner_space(const HopfAlgebra& h, int m, int n, int i, int j, int d);

/// Exact vanishing of Hom for i != j through the grading specialization.
struct HomVanishingCertificate {
    int i = 0;
    int j = 0;
    bool source_diagonal = false; // source coefficients specialize to delta z^i
    bool target_diagonal = false; // target coefficients specialize to delta z^j
    bool valid() const { return i != j && source_diagonal && target_diagonal; }
};
HomVanishingCertificate hom_off_diagonal_vanish(const HopfAlgebra& h, int m, int n, int i, int j);

struct DualityData {
    std::shared_ptr<const ComoduleSpace> object;
    std::shared_ptr<const ComoduleSpace> dual;
    RationalMatrix e; // X (x) X* -> I,  1 x dim^2
    RationalMatrix d; // I -> X* (x) X,  dim^2 x 1
};

/// Duality for U^copies (U = U_l).
DualityData build_duality(const HopfAlgebra& h, int copies = 1);
/// (X^{(x)n}, X*^{(x)n}, e_n, d_n) from the iterated formulas.
DualityData duality_power(const HopfAlgebra& h, const DualityData& base, int n);

struct SnakeCheck {
    bool first = false;  // (e (x) 1_X) o (1_X (x) d) = 1_X
    bool second = false; // (1_X* (x) e) o (d (x) 1_X*) = 1_X*
    bool ok() const { return first && second; }
};
SnakeCheck check_snakes(const DualityData& dd);

/// Coinvariant of bidegree (k,k) in A(m,t) (x) A(t,n) -> morphism
/// (U^m)^{(x)k} -> (U^n)^{(x)k}, through y_ij -> v_i(e_j)*, z_ij -> u_j(e_i)
/// and f -> (e_k (x) 1) o (1 (x) f). Throws std::invalid_argument if x is
/// not certified coinvariant at truncation d.
Intertwiner coinv_to_hom(const CoactionContext& ctx, const TensorElement& x, int k, int d);

struct CorrespondenceReport {
    int k = 0;
    int d = 0;
    std::size_t words = 0;
    std::size_t matches = 0;
    std::vector<std::string> mismatches;
    std::size_t psi_rank = 0;
    std::size_t expected_rank = 0;
    std::size_t end_u_dim = 0;
    bool passed() const
    {
        return mismatches.empty() && matches == words && psi_rank == expected_rank && end_u_dim == 1;
    }
};

/// coinv_to_hom(theta(w)) == psi(w) for every degree-k word, psi of the
/// degree-k words linearly independent, and End(U) one-dimensional.
CorrespondenceReport main_correspondence_check(const CoactionContext& ctx, int k, int d);

} // namespace freefft
