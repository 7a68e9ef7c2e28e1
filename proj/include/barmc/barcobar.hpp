#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "barmc/dgcore.hpp"
#include "barmc/words.hpp"

namespace barmc {

/* Splitting A = K*1 (+) Abar for a unital algebra, with the induced
 * projections. iota embeds Abar coordinates into A. */
struct UnitalSplitting {
    GradedVectorSpace abar;   // names/degrees of the complement basis
    SparseMat iota;           // dim A x dim Abar
    SparseMat proj_abar;      // dim Abar x dim A
    SparseMat proj_unit;      // 1 x dim A
};

/* A bar-type conilpotent coalgebra stored weight by weight up to W.
 * The coradical filtration is F_k = (weights <= k); all coproduct tables are
 * weight-additive by construction. Curved kinds carry a curvature functional
 * on weights 1 and 2. */
struct WeightGradedCoalgebra {
    enum class Kind { Coass, CoLie, CoCom, CurvedCoass, CurvedCoLie };

    Kind kind = Kind::Coass;
    int W = 0;
    std::vector<GradedVectorSpace> comp;  // comp[w-1]
    std::vector<LinMap> d0;               // weight-preserving part, comp[w] -> comp[w]
    std::vector<LinMap> d1;               // weight-lowering part, comp[w] -> comp[w-1]
    /* cop[w-1][i]: list of (u, j, k, c): coproduct/cobracket term
     * c * (weight-u basis j) (x) (weight-(w-u) basis k) */
    std::vector<std::vector<std::vector<std::tuple<int, int, int, Rat>>>> cop;
    std::vector<std::map<int, Rat>> theta;  // theta[w-1]: basis -> K, degree -2

    /* Word model (bar-type provenance): ambient suspended word spaces with the
     * projection onto comp and a representative section. Identity for the
     * associative bar; empty for the Chevalley-Eilenberg bar. */
    std::vector<int> sletter_deg;
    std::vector<WordSpace> wordspaces;
    std::vector<LinMap> pi;    // wordspace -> comp
    std::vector<LinMap> lift;  // comp -> wordspace

    std::optional<UnitalSplitting> splitting;  // curved kinds only

    bool curved() const {
        return kind == Kind::CurvedCoass || kind == Kind::CurvedCoLie;
    }
    bool lie_kind() const { return kind == Kind::CoLie || kind == Kind::CurvedCoLie; }
    int dim_w(int w) const { return comp[w - 1].dim(); }
    Rat theta_of(int w, int i) const;
};

enum class UnitalFlavor { Associative, Commutative };

/* Bar construction of a non-unital dg algebra: weight w component (sA)^{(x)w},
 * deconcatenation coproduct. */
WeightGradedCoalgebra bar_ass(const DgAlgebra& A, int W);

/* Harrison bar: quotient of bar_ass by signed shuffles; a Lie coalgebra.
 * Requires A commutative. */
WeightGradedCoalgebra bar_com(const DgAlgebra& A, int W);

/* Chevalley-Eilenberg bar of a dg Lie algebra: Lambda^w(sg), unshuffle
 * coproduct, cocommutative. */
WeightGradedCoalgebra bar_lie(const DgLieAlgebra& g, int W);

/* Curved bar of a unital algebra over a chosen splitting A = K1 (+) Abar.
 * Curvature: on weight 1 the unit component of d, on weight 2 the unit
 * component of the product. */
WeightGradedCoalgebra bar_unital(const DgAlgebra& A, UnitalFlavor flavor, int W);

/* Weightwise quotient maps p_w : (B A)_w -> (B_Com A)_w. Requires matching
 * truncations. */
std::vector<LinMap> harrison_projection(const WeightGradedCoalgebra& ba,
                                        const WeightGradedCoalgebra& bcom);

/* Truncated cobar construction: the non-unital tensor algebra on the
 * desuspension, graded by total weight <= W (a genuine quotient algebra). */
struct CobarAlgebra {
    DgAlgebra A;                       // non-unital presentation
    std::vector<int> weight;           // per basis element
};

CobarAlgebra cobar_ass(const WeightGradedCoalgebra& C, int W);

/* Axioms of the weight-graded object through W: d^2 equals the curvature
 * identity, coassociativity / co-Jacobi, cocommutativity where claimed,
 * curvature degree and placement. */
AxiomReport check_weighted(const WeightGradedCoalgebra& C);

/* Shared sign conventions (see also the dg core):
 *   suspended degree  s(a) = |a| + 1,
 *   d_s(sa) = -s(da),
 *   m_s(sa (x) sb) = (-1)^{|sa|} s(ab). */
UnitalSplitting make_splitting(const DgAlgebra& A);

}  // namespace barmc
