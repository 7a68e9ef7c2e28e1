#pragma once

#include <map>
#include <optional>
#include <vector>

#include "barmc/errors.hpp"
#include "barmc/rational.hpp"

namespace barmc {

/* Sparse matrix over Q. No zero entries are ever stored. */
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::map<int, Rat>> rdata;  // rdata[r]: col -> value

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), rdata(r) {}

    static SparseMat identity(int n);

    const Rat& get(int r, int c) const;
    void set(int r, int c, const Rat& v);
    void add_to(int r, int c, const Rat& v);
    bool is_zero() const;
    int nnz() const;

    SparseMat operator+(const SparseMat& o) const;
    SparseMat operator-(const SparseMat& o) const;
    SparseMat operator*(const SparseMat& o) const;
    SparseMat scaled(const Rat& c) const;
    SparseMat transpose() const;
    bool operator==(const SparseMat& o) const;

    Vec apply(const Vec& v) const;
    static SparseMat from_columns(const std::vector<Vec>& cols, int rows);
};

/* Solution set of M x = b: a particular solution (when consistent) plus a
 * basis of ker M. */
struct AffineSolutionSet {
    bool consistent = false;
    Vec particular;                // size = cols, valid iff consistent
    std::vector<Vec> kernel;       // basis of ker M
};

/* Fraction-free (Bareiss) sparse elimination with the fixed pivot rule:
 * next column in increasing index, first available row. All downstream
 * output is reproducible bit for bit. */
AffineSolutionSet solve_linear(const SparseMat& M, const Vec& b);

int rank_of(const SparseMat& M);
std::vector<Vec> kernel_basis(const SparseMat& M);

/* Reduce v modulo the row space of `rows` (given as vectors); returns the
 * reduced vector. Used for homology representatives. */
struct RowBasis {
    /* echelonized rows over Q, each with a pivot column */
    std::vector<Vec> rows;
    std::vector<int> pivots;
    int width = 0;

    explicit RowBasis(int w) : width(w) {}
    /* reduce, and if nonzero remainder optionally insert it */
    Vec reduce(const Vec& v) const;
    bool insert(const Vec& v);  // true if v was independent
    int rank() const { return static_cast<int>(rows.size()); }
};

struct HomologyResult {
    int dimension = 0;
    std::vector<Vec> representatives;  // span a complement of im(d_in) in ker(d_out)
};

/* Homology at the middle spot of  C_in --d_in--> C --d_out--> C_out.
 * Requires d_out * d_in = 0 (else NotAComplex). */
HomologyResult homology(const SparseMat& d_in, const SparseMat& d_out);

}  // namespace barmc
