#pragma once

#include <map>
#include <vector>

#include "barmc/rational.hpp"

namespace barmc {

/* One-line notation, 0-based: p[i] is the position that slot i is sent to.
 * Acting on tensor words, sigma places the letter in slot i at slot sigma(i). */
using Perm = std::vector<int>;

Perm perm_id(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // (a o b)(i) = a[b[i]]
Perm perm_inverse(const Perm& a);
int perm_descents(const Perm& a);
std::vector<Perm> all_perms(int n);

/* (p,q)-shuffles: permutations increasing on the first p and last q slots. */
std::vector<Perm> shuffles(int p, int q);

/* Block sum: acts as a on the first |a| slots and as b on the rest. */
Perm perm_block(const Perm& a, const Perm& b);

/* Element of Q[S_n]. */
struct GroupAlgElt {
    int n = 0;
    std::map<Perm, Rat> c;

    static GroupAlgElt zero(int n) { return {n, {}}; }
    static GroupAlgElt identity(int n);
    void add_term(const Perm& p, const Rat& v);
    GroupAlgElt operator+(const GroupAlgElt& o) const;
    GroupAlgElt operator-(const GroupAlgElt& o) const;
    GroupAlgElt scaled(const Rat& v) const;
    /* group algebra product (composition of permutations) */
    GroupAlgElt operator*(const GroupAlgElt& o) const;
    bool operator==(const GroupAlgElt& o) const { return n == o.n && c == o.c; }
    bool is_zero() const { return c.empty(); }
};

/* Convolution product of the tensor-bialgebra endomorphism calculus:
 * cut into two blocks, apply x and y, shuffle back together. */
GroupAlgElt conv(const GroupAlgElt& x, const GroupAlgElt& y);

/* First Eulerian idempotent e^{(1)}_n = log_*(id), by descent statistics.
 * Higher ones: e^{(k)} = (e^{(1)})^{*k} / k!. Exact rationals; cached. */
const GroupAlgElt& eulerian_idempotent(int n, int k);

}  // namespace barmc
