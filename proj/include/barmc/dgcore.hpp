#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "barmc/graded.hpp"

namespace barmc {

/* Structure constants on basis pairs; bilinear extension everywhere. */
struct ProductTable {
    std::map<std::pair<int, int>, std::map<int, Rat>> t;

    void set(int i, int j, std::map<int, Rat> val);
    const std::map<int, Rat>* find(int i, int j) const;
};

Vec bilinear(const ProductTable& p, const Vec& a, const Vec& b, int dim);

/* Presented finite-dimensional dg algebra. If unital, `unit` designates the
 * unit basis element and `splitting` (optional) lists basis vectors for a
 * degree-homogeneous complement of K*unit; by default the complement is the
 * span of all non-unit basis elements. */
struct DgAlgebra {
    GradedVectorSpace V;
    LinMap d;  // degree -1
    ProductTable mul;
    bool unital = false;
    int unit = -1;
    bool commutative = false;
    std::optional<std::vector<Vec>> splitting;

    Vec mul_vec(const Vec& a, const Vec& b) const { return bilinear(mul, a, b, V.dim()); }
    Vec basis_vec(int i) const;
};

struct DgLieAlgebra {
    GradedVectorSpace V;
    LinMap d;  // degree -1
    ProductTable br;

    Vec br_vec(const Vec& a, const Vec& b) const { return bilinear(br, a, b, V.dim()); }
    Vec basis_vec(int i) const;
};

/* Curved Lie algebra: d is only a pre-differential, d^2 = [theta, -], with
 * theta of degree -2 and d(theta) = 0. `weight` (optional) records a positive
 * filtration weight per basis element, multiplicative under the bracket. */
struct CurvedLieAlgebra {
    GradedVectorSpace V;
    LinMap d;
    ProductTable br;
    Vec theta;
    std::vector<int> weight;  // empty = no filtration data

    Vec br_vec(const Vec& a, const Vec& b) const { return bilinear(br, a, b, V.dim()); }
    Vec basis_vec(int i) const;
};

/* Sweedler-style tables: cop[i] lists (j, k, c) meaning a term c * e_j (x) e_k
 * in the (reduced) coproduct or cobracket of e_i. */
using SweedlerTable = std::vector<std::vector<std::tuple<int, int, Rat>>>;

struct DgCoalgebra {
    GradedVectorSpace V;
    LinMap d;
    SweedlerTable cop;
};

struct DgLieCoalgebra {
    GradedVectorSpace V;
    LinMap d;
    SweedlerTable cobr;
};

struct AxiomViolation {
    std::string identity;
    std::vector<std::string> witness;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

AxiomReport check_axioms(const DgAlgebra& A);
AxiomReport check_axioms(const DgLieAlgebra& g);
AxiomReport check_axioms(const CurvedLieAlgebra& g);
AxiomReport check_axioms(const DgCoalgebra& C);
AxiomReport check_axioms(const DgLieCoalgebra& L);

struct DegreeHomology {
    int dimension = 0;
    std::vector<int> slice;     // basis indices of V in this degree
    std::vector<Vec> reps;      // coordinates w.r.t. slice
};

/* Exact homology of (V, d) per degree. Checks d^2 = 0 on the window first. */
std::map<int, DegreeHomology> homology_of(const GradedVectorSpace& V, const LinMap& d,
                                          std::optional<std::pair<int, int>> window = {});

/* Twist by a degree -1 element: d^a = d + [a, -], theta^a = theta + da + [a,a]/2.
 * If weights are present, a must be supported in weight >= 1. */
CurvedLieAlgebra twist(const CurvedLieAlgebra& g, const Vec& alpha);

CurvedLieAlgebra as_curved(const DgLieAlgebra& g, std::vector<int> weight = {});

/* Shared helpers (Koszul conventions live here). */
int koszul_pow(int a, int b);  // (-1)^{ab} as +-1

}  // namespace barmc
