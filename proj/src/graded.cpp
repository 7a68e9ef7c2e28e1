#include "barmc/graded.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace barmc {

int GradedVectorSpace::add(const std::string& nm, int degree) {
    if (index_of(nm) >= 0) throw InputError("duplicate basis name '" + nm + "'");
    basis.push_back({nm, degree});
    return dim() - 1;
}

int GradedVectorSpace::index_of(const std::string& nm) const {
    for (int i = 0; i < dim(); ++i)
        if (basis[i].name == nm) return i;
    return -1;
}

std::vector<int> GradedVectorSpace::in_degree(int n) const {
    std::vector<int> r;
    for (int i = 0; i < dim(); ++i)
        if (basis[i].degree == n) r.push_back(i);
    return r;
}

std::vector<int> GradedVectorSpace::degrees_present() const {
    std::set<int> s;
    for (const auto& b : basis) s.insert(b.degree);
    return {s.begin(), s.end()};
}

LinMap lm_identity(int dim) {
    LinMap f(0, dim, dim);
    f.m = SparseMat::identity(dim);
    return f;
}

LinMap lm_compose(const LinMap& f, const LinMap& g) {
    LinMap r(f.deg + g.deg, f.m.rows, g.m.cols);
    r.m = f.m * g.m;
    return r;
}

LinMap lm_add(const LinMap& a, const LinMap& b) {
    if (a.deg != b.deg) throw InputError("adding maps of different degree");
    LinMap r(a.deg, a.m.rows, a.m.cols);
    r.m = a.m + b.m;
    return r;
}

LinMap lm_sub(const LinMap& a, const LinMap& b) {
    if (a.deg != b.deg) throw InputError("subtracting maps of different degree");
    LinMap r(a.deg, a.m.rows, a.m.cols);
    r.m = a.m - b.m;
    return r;
}

LinMap lm_scale(const Rat& c, const LinMap& a) {
    LinMap r(a.deg, a.m.rows, a.m.cols);
    r.m = a.m.scaled(c);
    return r;
}

bool lm_equal(const LinMap& a, const LinMap& b) {
    return a.deg == b.deg && a.m == b.m;
}

void check_degrees(const GradedVectorSpace& src, const GradedVectorSpace& dst,
                   const LinMap& f, const std::string& what) {
    if (f.m.rows != dst.dim() || f.m.cols != src.dim())
        throw InputError(what + ": shape does not match spaces");
    for (int i = 0; i < f.m.rows; ++i)
        for (const auto& [j, v] : f.m.rdata[i]) {
            (void)v;
            if (dst.degree(i) != src.degree(j) + f.deg)
                throw InputError(what + ": entry (" + dst.name(i) + ", " + src.name(j) +
                                 ") violates degree " + std::to_string(f.deg));
        }
}

std::string elt_str(const GradedVectorSpace& V, const Vec& v) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < V.dim(); ++i) {
        if (is_zero(v[i])) continue;
        if (!first) os << " + ";
        os << rat_str(v[i]) << "*" << V.name(i);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace barmc
