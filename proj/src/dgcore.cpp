#include "barmc/dgcore.hpp"

#include <sstream>

namespace barmc {

int koszul_pow(int a, int b) { return (a & 1) && (b & 1) ? -1 : 1; }

void ProductTable::set(int i, int j, std::map<int, Rat> val) {
    for (auto it = val.begin(); it != val.end();) {
        if (is_zero(it->second))
            it = val.erase(it);
        else
            ++it;
    }
    if (val.empty())
        t.erase({i, j});
    else
        t[{i, j}] = std::move(val);
}

const std::map<int, Rat>* ProductTable::find(int i, int j) const {
    auto it = t.find({i, j});
    return it == t.end() ? nullptr : &it->second;
}

Vec bilinear(const ProductTable& p, const Vec& a, const Vec& b, int dim) {
    Vec r = vec_zero(dim);
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (is_zero(a[i])) continue;
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            if (is_zero(b[j])) continue;
            const auto* e = p.find(i, j);
            if (!e) continue;
            Rat c = a[i] * b[j];
            for (const auto& [k, v] : *e) r[k] += c * v;
        }
    }
    return r;
}

Vec DgAlgebra::basis_vec(int i) const {
    Vec v = vec_zero(V.dim());
    v[i] = 1;
    return v;
}

Vec DgLieAlgebra::basis_vec(int i) const {
    Vec v = vec_zero(V.dim());
    v[i] = 1;
    return v;
}

Vec CurvedLieAlgebra::basis_vec(int i) const {
    Vec v = vec_zero(V.dim());
    v[i] = 1;
    return v;
}

std::string AxiomReport::to_string() const {
    if (ok()) return "all axioms hold";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.identity << " fails";
        if (!v.witness.empty()) {
            os << " at (";
            for (size_t i = 0; i < v.witness.size(); ++i) {
                if (i) os << ", ";
                os << v.witness[i];
            }
            os << ")";
        }
        if (!v.detail.empty()) os << ": " << v.detail;
        os << "\n";
    }
    return os.str();
}

namespace {

void check_d_squared(const GradedVectorSpace& V, const LinMap& d, AxiomReport& rep) {
    check_degrees(V, V, d, "differential");
    if (d.deg != -1) {
        rep.violations.push_back({"differential degree", {}, "degree must be -1"});
        return;
    }
    SparseMat dd = d.m * d.m;
    for (int j = 0; j < V.dim(); ++j) {
        bool bad = false;
        for (int i = 0; i < V.dim(); ++i)
            if (!is_zero(dd.get(i, j))) bad = true;
        if (bad) rep.violations.push_back({"d^2 = 0", {V.name(j)}, ""});
    }
}

Vec d_of(const LinMap& d, const Vec& v) { return d.m.apply(v); }

}  // namespace

AxiomReport check_axioms(const DgAlgebra& A) {
    AxiomReport rep;
    const auto& V = A.V;
    check_d_squared(V, A.d, rep);
    const int n = V.dim();
    /* degree homogeneity of the product */
    for (const auto& [ij, val] : A.mul.t)
        for (const auto& [k, c] : val) {
            (void)c;
            if (V.degree(k) != V.degree(ij.first) + V.degree(ij.second))
                rep.violations.push_back(
                    {"product degree", {V.name(ij.first), V.name(ij.second)}, ""});
        }
    /* associativity */
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Vec lhs = A.mul_vec(A.mul_vec(A.basis_vec(a), A.basis_vec(b)), A.basis_vec(c));
                Vec rhs = A.mul_vec(A.basis_vec(a), A.mul_vec(A.basis_vec(b), A.basis_vec(c)));
                if (!vec_is_zero(vec_sub(lhs, rhs)))
                    rep.violations.push_back(
                        {"associativity", {V.name(a), V.name(b), V.name(c)}, ""});
            }
    /* Leibniz: d(ab) = (da)b + (-1)^|a| a(db) */
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Vec lhs = d_of(A.d, A.mul_vec(A.basis_vec(a), A.basis_vec(b)));
            Vec rhs = A.mul_vec(d_of(A.d, A.basis_vec(a)), A.basis_vec(b));
            rhs = vec_add(rhs, vec_scale(Rat(koszul_pow(V.degree(a), 1)),
                                         A.mul_vec(A.basis_vec(a), d_of(A.d, A.basis_vec(b)))));
            if (!vec_is_zero(vec_sub(lhs, rhs)))
                rep.violations.push_back({"Leibniz", {V.name(a), V.name(b)}, ""});
        }
    if (A.commutative) {
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Vec lhs = A.mul_vec(A.basis_vec(a), A.basis_vec(b));
                Vec rhs = vec_scale(Rat(koszul_pow(V.degree(a), V.degree(b))),
                                    A.mul_vec(A.basis_vec(b), A.basis_vec(a)));
                if (!vec_is_zero(vec_sub(lhs, rhs)))
                    rep.violations.push_back(
                        {"graded commutativity", {V.name(a), V.name(b)}, ""});
            }
    }
    if (A.unital) {
        if (A.unit < 0 || A.unit >= n) {
            rep.violations.push_back({"unit designation", {}, "missing unit element"});
        } else {
            if (V.degree(A.unit) != 0)
                rep.violations.push_back({"unit degree", {V.name(A.unit)}, ""});
            if (!vec_is_zero(d_of(A.d, A.basis_vec(A.unit))))
                rep.violations.push_back({"d(1) = 0", {V.name(A.unit)}, ""});
            for (int a = 0; a < n; ++a) {
                if (!vec_is_zero(
                        vec_sub(A.mul_vec(A.basis_vec(A.unit), A.basis_vec(a)), A.basis_vec(a))))
                    rep.violations.push_back({"left unit", {V.name(a)}, ""});
                if (!vec_is_zero(
                        vec_sub(A.mul_vec(A.basis_vec(a), A.basis_vec(A.unit)), A.basis_vec(a))))
                    rep.violations.push_back({"right unit", {V.name(a)}, ""});
            }
        }
    }
    return rep;
}

namespace {

template <typename LieLike>
void check_lie_core(const LieLike& g, AxiomReport& rep) {
    const auto& V = g.V;
    const int n = V.dim();
    for (const auto& [ij, val] : g.br.t)
        for (const auto& [k, c] : val) {
            (void)c;
            if (V.degree(k) != V.degree(ij.first) + V.degree(ij.second))
                rep.violations.push_back(
                    {"bracket degree", {V.name(ij.first), V.name(ij.second)}, ""});
        }
    /* graded antisymmetry */
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Vec lhs = g.br_vec(g.basis_vec(a), g.basis_vec(b));
            Vec rhs = vec_scale(Rat(-koszul_pow(V.degree(a), V.degree(b))),
                                g.br_vec(g.basis_vec(b), g.basis_vec(a)));
            if (!vec_is_zero(vec_sub(lhs, rhs)))
                rep.violations.push_back({"antisymmetry", {V.name(a), V.name(b)}, ""});
        }
    /* graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]] */
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Vec lhs = g.br_vec(g.basis_vec(a), g.br_vec(g.basis_vec(b), g.basis_vec(c)));
                Vec rhs = g.br_vec(g.br_vec(g.basis_vec(a), g.basis_vec(b)), g.basis_vec(c));
                rhs = vec_add(rhs,
                              vec_scale(Rat(koszul_pow(V.degree(a), V.degree(b))),
                                        g.br_vec(g.basis_vec(b),
                                                 g.br_vec(g.basis_vec(a), g.basis_vec(c)))));
                if (!vec_is_zero(vec_sub(lhs, rhs)))
                    rep.violations.push_back({"Jacobi", {V.name(a), V.name(b), V.name(c)}, ""});
            }
    /* Leibniz for d over the bracket */
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Vec lhs = g.d.m.apply(g.br_vec(g.basis_vec(a), g.basis_vec(b)));
            Vec rhs = g.br_vec(g.d.m.apply(g.basis_vec(a)), g.basis_vec(b));
            rhs = vec_add(rhs, vec_scale(Rat(koszul_pow(V.degree(a), 1)),
                                         g.br_vec(g.basis_vec(a), g.d.m.apply(g.basis_vec(b)))));
            if (!vec_is_zero(vec_sub(lhs, rhs)))
                rep.violations.push_back({"Leibniz (bracket)", {V.name(a), V.name(b)}, ""});
        }
}

}  // namespace

AxiomReport check_axioms(const DgLieAlgebra& g) {
    AxiomReport rep;
    check_d_squared(g.V, g.d, rep);
    check_lie_core(g, rep);
    return rep;
}

AxiomReport check_axioms(const CurvedLieAlgebra& g) {
    AxiomReport rep;
    check_degrees(g.V, g.V, g.d, "pre-differential");
    check_lie_core(g, rep);
    /* theta: degree -2, d(theta) = 0, d^2 = [theta, -] */
    for (int i = 0; i < g.V.dim(); ++i)
        if (!is_zero(g.theta[i]) && g.V.degree(i) != -2)
            rep.violations.push_back({"curvature degree", {g.V.name(i)}, ""});
    if (!vec_is_zero(g.d.m.apply(g.theta)))
        rep.violations.push_back({"d(theta) = 0", {}, ""});
    for (int a = 0; a < g.V.dim(); ++a) {
        Vec lhs = g.d.m.apply(g.d.m.apply(g.basis_vec(a)));
        Vec rhs = g.br_vec(g.theta, g.basis_vec(a));
        if (!vec_is_zero(vec_sub(lhs, rhs)))
            rep.violations.push_back({"curvature identity d^2 = [theta,-]", {g.V.name(a)}, ""});
    }
    if (!g.weight.empty()) {
        for (const auto& [ij, val] : g.br.t)
            for (const auto& [k, c] : val) {
                (void)c;
                if (g.weight[k] < g.weight[ij.first] + g.weight[ij.second])
                    rep.violations.push_back(
                        {"filtration multiplicativity",
                         {g.V.name(ij.first), g.V.name(ij.second)},
                         ""});
            }
    }
    return rep;
}

AxiomReport check_axioms(const DgCoalgebra& C) {
    AxiomReport rep;
    check_d_squared(C.V, C.d, rep);
    const int n = C.V.dim();
    /* coassociativity of the (reduced) coproduct */
    for (int x = 0; x < n; ++x) {
        std::map<std::tuple<int, int, int>, Rat> lhs, rhs;
        for (const auto& [a, b, c] : C.cop[x]) {
            for (const auto& [a1, a2, c2] : C.cop[a]) {
                lhs[{a1, a2, b}] += c * c2;
            }
            for (const auto& [b1, b2, c2] : C.cop[b]) {
                rhs[{a, b1, b2}] += c * c2;
            }
        }
        for (auto* m : {&lhs, &rhs})
            for (auto it = m->begin(); it != m->end();)
                it = is_zero(it->second) ? m->erase(it) : std::next(it);
        if (lhs != rhs) rep.violations.push_back({"coassociativity", {C.V.name(x)}, ""});
    }
    /* co-Leibniz: Delta(dx) = (d (x) 1 + 1 (x) d) Delta(x) with Koszul sign */
    for (int x = 0; x < n; ++x) {
        std::map<std::pair<int, int>, Rat> lhs, rhs;
        for (int y = 0; y < n; ++y) {
            const Rat& c = C.d.m.get(y, x);
            if (is_zero(c)) continue;
            for (const auto& [a, b, c2] : C.cop[y]) lhs[{a, b}] += c * c2;
        }
        for (const auto& [a, b, c] : C.cop[x]) {
            for (int y = 0; y < n; ++y) {
                const Rat& c2 = C.d.m.get(y, a);
                if (!is_zero(c2)) rhs[{y, b}] += c * c2;
            }
            for (int y = 0; y < n; ++y) {
                const Rat& c2 = C.d.m.get(y, b);
                if (!is_zero(c2))
                    rhs[{a, y}] += Rat(koszul_pow(C.V.degree(a), 1)) * c * c2;
            }
        }
        for (auto* m : {&lhs, &rhs})
            for (auto it = m->begin(); it != m->end();)
                it = is_zero(it->second) ? m->erase(it) : std::next(it);
        if (lhs != rhs) rep.violations.push_back({"co-Leibniz", {C.V.name(x)}, ""});
    }
    /* conilpotency: the iterated reduced coproduct must vanish eventually */
    {
        using Tensor = std::map<std::vector<int>, Rat>;
        std::vector<Tensor> cur(n);
        for (int x = 0; x < n; ++x)
            for (const auto& [a, b, c] : C.cop[x]) cur[x][{a, b}] += c;
        for (int step = 0; step <= n + 1; ++step) {
            bool any = false;
            for (auto& m : cur)
                for (auto it = m.begin(); it != m.end();)
                    it = is_zero(it->second) ? m.erase(it) : std::next(it);
            for (const auto& m : cur)
                if (!m.empty()) any = true;
            if (!any) break;
            if (step == n + 1) {
                rep.violations.push_back(
                    {"conilpotency", {}, "coradical filtration not exhaustive"});
                break;
            }
            /* expand the left-most leg once more */
            std::vector<Tensor> nxt(n);
            for (int x = 0; x < n; ++x)
                for (const auto& [word, cw] : cur[x])
                    for (const auto& [a1, a2, c2] : C.cop[word[0]]) {
                        std::vector<int> w2;
                        w2.push_back(a1);
                        w2.push_back(a2);
                        w2.insert(w2.end(), word.begin() + 1, word.end());
                        nxt[x][w2] += cw * c2;
                    }
            cur = std::move(nxt);
        }
    }
    return rep;
}

AxiomReport check_axioms(const DgLieCoalgebra& L) {
    AxiomReport rep;
    check_d_squared(L.V, L.d, rep);
    const int n = L.V.dim();
    /* co-antisymmetry: delta = -tau delta */
    for (int x = 0; x < n; ++x) {
        std::map<std::pair<int, int>, Rat> lhs;
        for (const auto& [a, b, c] : L.cobr[x]) {
            lhs[{a, b}] += c;
            lhs[{b, a}] += Rat(koszul_pow(L.V.degree(a), L.V.degree(b))) * c;
        }
        for (auto it = lhs.begin(); it != lhs.end();)
            it = is_zero(it->second) ? lhs.erase(it) : std::next(it);
        if (!lhs.empty()) rep.violations.push_back({"co-antisymmetry", {L.V.name(x)}, ""});
    }
    /* co-Jacobi: (1 + zeta + zeta^2)(delta (x) 1) delta = 0 */
    for (int x = 0; x < n; ++x) {
        std::map<std::tuple<int, int, int>, Rat> acc;
        for (const auto& [a, b, c] : L.cobr[x])
            for (const auto& [a1, a2, c2] : L.cobr[a]) {
                Rat v = c * c2;
                int d1 = L.V.degree(a1), d2 = L.V.degree(a2), d3 = L.V.degree(b);
                acc[{a1, a2, b}] += v;
                acc[{a2, b, a1}] += Rat(koszul_pow(d1, d2 + d3)) * v;
                acc[{b, a1, a2}] += Rat(koszul_pow(d1 + d2, d3)) * v;
            }
        for (auto it = acc.begin(); it != acc.end();)
            it = is_zero(it->second) ? acc.erase(it) : std::next(it);
        if (!acc.empty()) rep.violations.push_back({"co-Jacobi", {L.V.name(x)}, ""});
    }
    /* co-Leibniz, same shape as the coassociative case */
    for (int x = 0; x < n; ++x) {
        std::map<std::pair<int, int>, Rat> lhs, rhs;
        for (int y = 0; y < n; ++y) {
            const Rat& c = L.d.m.get(y, x);
            if (is_zero(c)) continue;
            for (const auto& [a, b, c2] : L.cobr[y]) lhs[{a, b}] += c * c2;
        }
        for (const auto& [a, b, c] : L.cobr[x]) {
            for (int y = 0; y < n; ++y) {
                const Rat& c2 = L.d.m.get(y, a);
                if (!is_zero(c2)) rhs[{y, b}] += c * c2;
            }
            for (int y = 0; y < n; ++y) {
                const Rat& c2 = L.d.m.get(y, b);
                if (!is_zero(c2))
                    rhs[{a, y}] += Rat(koszul_pow(L.V.degree(a), 1)) * c * c2;
            }
        }
        for (auto* m : {&lhs, &rhs})
            for (auto it = m->begin(); it != m->end();)
                it = is_zero(it->second) ? m->erase(it) : std::next(it);
        if (lhs != rhs) rep.violations.push_back({"co-Leibniz", {L.V.name(x)}, ""});
    }
    return rep;
}

std::map<int, DegreeHomology> homology_of(const GradedVectorSpace& V, const LinMap& d,
                                          std::optional<std::pair<int, int>> window) {
    if (d.deg != -1) throw InputError("homology_of: differential must have degree -1");
    check_degrees(V, V, d, "homology_of");
    std::vector<int> degs = V.degrees_present();
    std::map<int, DegreeHomology> out;

    auto slice_of = [&](int n) { return V.in_degree(n); };
    auto d_block = [&](int from_deg) {
        std::vector<int> src = slice_of(from_deg), dst = slice_of(from_deg - 1);
        SparseMat m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (size_t j = 0; j < src.size(); ++j)
            for (size_t i = 0; i < dst.size(); ++i) {
                const Rat& v = d.m.get(dst[i], src[j]);
                if (!is_zero(v)) m.rdata[i][static_cast<int>(j)] = v;
            }
        return m;
    };

    for (int n : degs) {
        if (window && (n < window->first || n > window->second)) continue;
        SparseMat din = d_block(n + 1);
        SparseMat dout = d_block(n);
        HomologyResult h = homology(din, dout);
        DegreeHomology dh;
        dh.dimension = h.dimension;
        dh.slice = slice_of(n);
        dh.reps = h.representatives;
        out[n] = std::move(dh);
    }
    return out;
}

CurvedLieAlgebra twist(const CurvedLieAlgebra& g, const Vec& alpha) {
    for (int i = 0; i < g.V.dim(); ++i) {
        if (is_zero(alpha[i])) continue;
        if (g.V.degree(i) != -1)
            throw InputError("twist: element must be concentrated in degree -1");
        if (!g.weight.empty() && g.weight[i] < 1)
            throw InputError("twist: element must lie in filtration weight >= 1");
    }
    CurvedLieAlgebra r = g;
    /* d^a = d + [a, -] */
    for (int j = 0; j < g.V.dim(); ++j) {
        Vec col = g.br_vec(alpha, g.basis_vec(j));
        for (int i = 0; i < g.V.dim(); ++i)
            if (!is_zero(col[i])) r.d.m.add_to(i, j, col[i]);
    }
    /* theta^a = theta + d a + [a,a]/2 */
    Vec th = vec_add(g.theta, g.d.m.apply(alpha));
    th = vec_add(th, vec_scale(frac(1, 2), g.br_vec(alpha, alpha)));
    r.theta = th;
    return r;
}

CurvedLieAlgebra as_curved(const DgLieAlgebra& g, std::vector<int> weight) {
    CurvedLieAlgebra c;
    c.V = g.V;
    c.d = g.d;
    c.br = g.br;
    c.theta = vec_zero(g.V.dim());
    c.weight = std::move(weight);
    return c;
}

}  // namespace barmc
