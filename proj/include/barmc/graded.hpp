#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "barmc/linalg.hpp"

namespace barmc {

struct BasisElt {
    std::string name;
    int degree = 0;
};

/* Finite Z-graded vector space with a named basis. Homological convention:
 * differentials lower degree by 1 throughout. */
struct GradedVectorSpace {
    std::vector<BasisElt> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    int degree(int i) const { return basis[i].degree; }
    const std::string& name(int i) const { return basis[i].name; }
    int add(const std::string& name, int degree);
    int index_of(const std::string& name) const;  // -1 if absent
    std::vector<int> in_degree(int n) const;
    std::vector<int> degrees_present() const;     // sorted, unique
};

/* A degree-homogeneous linear map between two spaces given by context.
 * m has shape (dim target) x (dim source); every entry must connect basis
 * elements with deg(target) = deg(source) + deg. */
struct LinMap {
    int deg = 0;
    SparseMat m;

    LinMap() = default;
    LinMap(int d, int dst_dim, int src_dim) : deg(d), m(dst_dim, src_dim) {}
    bool is_zero() const { return m.is_zero(); }
};

LinMap lm_identity(int dim);
LinMap lm_compose(const LinMap& f, const LinMap& g);  // f after g
LinMap lm_add(const LinMap& a, const LinMap& b);
LinMap lm_sub(const LinMap& a, const LinMap& b);
LinMap lm_scale(const Rat& c, const LinMap& a);
bool lm_equal(const LinMap& a, const LinMap& b);

/* Throws InputError if an entry violates the degree rule. */
void check_degrees(const GradedVectorSpace& src, const GradedVectorSpace& dst,
                   const LinMap& f, const std::string& what);

std::string elt_str(const GradedVectorSpace& V, const Vec& v);

}  // namespace barmc
