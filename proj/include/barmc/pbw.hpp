#pragma once

#include <set>

#include "barmc/barcobar.hpp"
#include "barmc/perm.hpp"

namespace barmc {

/* The arity-n PBW decomposition certificate: Eulerian projectors on K[S_n],
 * verified idempotent, orthogonal and summing to the identity. Ranks come
 * from traces (exact for verified idempotents); image bases are computed when
 * `with_bases` is set. */
struct PbwDecomposition {
    int n = 0;
    std::vector<GroupAlgElt> projectors;        // index k-1
    std::vector<int> ranks;                     // rank of projector k
    std::vector<std::vector<Vec>> component_bases;  // in K[S_n] coords; may be empty
};

PbwDecomposition pbw_decompose(int n, bool with_bases = false, int arity_cap = 7);

/* Brute-force oracle: dimension of the span of all left-normed bracket words
 * [x_{s(1)},...,x_{s(n)}] in the multilinear slice of the free algebra. */
int lie_multilinear_dim(int n);

/* Same oracle for graded letters: dimension of the span of signed left-normed
 * brackets of length w on the given alphabet, inside the word space. */
int graded_bracket_span_dim(const std::vector<int>& letter_deg, int w);

/* Left multiplication matrix of z on K[S_n] (regular representation). */
SparseMat regular_rep(const GroupAlgElt& z);

/* The Harrison section s_w : (B_Com A)_w -> (B A)_w induced by the first
 * Eulerian idempotent acting on suspended words with Koszul signs, together
 * with everything needed to build the convolution retraction. */
struct BarRetraction {
    WeightGradedCoalgebra ba;    // bar (curved bar when unital)
    WeightGradedCoalgebra bcom;  // Harrison bar (curved when unital)
    std::vector<LinMap> p;       // ba_w -> bcom_w
    std::vector<LinMap> s;       // bcom_w -> ba_w, p o s = id
};

BarRetraction build_bar_retraction(const DgAlgebra& A, int W);

/* Weightwise numerical shadow of dual PBW: dim (B A)_{w,deg} must match the
 * cofree cocommutative coalgebra on B_Com A, and p o s = id. */
struct UcCompareReport {
    bool ok = true;
    std::vector<std::string> mismatches;
    /* (weight, degree) -> (dim B A, dim Sym^c B_Com A) */
    std::map<std::pair<int, int>, std::pair<int, int>> dims;
};

UcCompareReport uc_compare(const DgAlgebra& A, int W);

/* Universal enveloping algebra on PBW monomials of length <= T. Products are
 * computed by straightening; any term discarded by the length cap is recorded
 * in `overflow` so truncation is sound by alarm. */
struct EnvelopingAlgebra {
    DgLieAlgebra g;
    int T = 0;
    GradedVectorSpace V;          // monomial names; index 0 is the unit
    std::vector<Word> monos;      // weakly increasing words, odd letters squarefree
    std::map<Word, int> index;
    LinMap d;
    ProductTable mul;
    std::set<std::pair<int, int>> overflow;  // basis pairs with dropped terms

    int unit = 0;
    int length_of(int i) const { return static_cast<int>(monos[i].size()); }
    DgAlgebra as_dg_algebra() const;
};

EnvelopingAlgebra enveloping_algebra(const DgLieAlgebra& g, int T);

/* PBW retraction U g -> g: first Eulerian idempotent of the Hopf structure
 * followed by projection onto word length 1. */
LinMap primitive_projection(const EnvelopingAlgebra& U);

}  // namespace barmc
