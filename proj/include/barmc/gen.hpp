#pragma once

#include <random>

#include "barmc/conv.hpp"
#include "barmc/pbw.hpp"

namespace barmc {

/* Seeded deterministic randomness; no wall clock or OS entropy anywhere. */
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}
    int pick(int lo, int hi);  // inclusive
    Rat small_rat(int denom_cap = 2);
    bool chance(int num, int den);
};

/* Tensor product and direct sum of presented algebras (Koszul signs). */
DgAlgebra tensor_dga(const DgAlgebra& A, const DgAlgebra& B);
DgAlgebra direct_sum_dga(const DgAlgebra& A, const DgAlgebra& B);

/* Transport the structure through a random invertible degree-0 change of
 * basis (the unit stays fixed when present). */
DgAlgebra transported(const DgAlgebra& A, Rng& rng);
DgLieAlgebra transported(const DgLieAlgebra& g, Rng& rng);

/* Random valid instances built from structured templates plus transport.
 * Degrees land within [deg_lo, deg_hi]; dimension at most max_dim. */
DgAlgebra random_commutative_dga(Rng& rng, int max_dim, int deg_lo, int deg_hi,
                                 bool structured_bias = false);
DgAlgebra random_unital_commutative_dga(Rng& rng, int max_dim);
DgLieAlgebra random_dgla(Rng& rng, int max_dim, int deg_lo, int deg_hi);

/* Random Maurer-Cartan element constructed weight by weight (affine solves,
 * random kernel offsets). Returns nothing when extension is obstructed. */
std::optional<ConvElem> random_mc(const ConvolutionLie& g, Rng& rng);

/* Random degree-0 element of F^1 with sparse small entries. */
ConvElem random_gauge(const ConvolutionLie& g, Rng& rng);

/* Random element of the stabilizer of beta: exp of a cycle of the
 * beta-twisted differential. */
ConvElem random_stabilizer_gauge(const ConvolutionLie& g, const ConvElem& beta, Rng& rng);

}  // namespace barmc
