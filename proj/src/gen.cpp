#include "barmc/gen.hpp"

#include <algorithm>

namespace barmc {

int Rng::pick(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng);
}

Rat Rng::small_rat(int denom_cap) {
    int num = pick(-2, 2);
    int den = pick(1, denom_cap);
    return frac(num, den);
}

bool Rng::chance(int num, int den) { return pick(1, den) <= num; }

DgAlgebra tensor_dga(const DgAlgebra& A, const DgAlgebra& B) {
    DgAlgebra T;
    const int na = A.V.dim(), nb = B.V.dim();
    auto id = [&](int a, int b) { return a * nb + b; };
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            T.V.add(A.V.name(a) + "&" + B.V.name(b), A.V.degree(a) + B.V.degree(b));
    T.d = LinMap(-1, na * nb, na * nb);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            for (int a2 = 0; a2 < na; ++a2) {
                const Rat& c = A.d.m.get(a2, a);
                if (!is_zero(c)) T.d.m.add_to(id(a2, b), id(a, b), c);
            }
            int sgn = koszul_pow(A.V.degree(a), 1);
            for (int b2 = 0; b2 < nb; ++b2) {
                const Rat& c = B.d.m.get(b2, b);
                if (!is_zero(c)) T.d.m.add_to(id(a, b2), id(a, b), Rat(sgn) * c);
            }
        }
    for (int a1 = 0; a1 < na; ++a1)
        for (int b1 = 0; b1 < nb; ++b1)
            for (int a2 = 0; a2 < na; ++a2)
                for (int b2 = 0; b2 < nb; ++b2) {
                    const auto* pa = A.mul.find(a1, a2);
                    const auto* pb = B.mul.find(b1, b2);
                    if (!pa || !pb) continue;
                    int sgn = koszul_pow(B.V.degree(b1), A.V.degree(a2));
                    std::map<int, Rat> entry;
                    for (const auto& [ta, ca] : *pa)
                        for (const auto& [tb, cb] : *pb) {
                            Rat v = Rat(sgn) * ca * cb;
                            if (!is_zero(v)) entry[id(ta, tb)] += v;
                        }
                    T.mul.set(id(a1, b1), id(a2, b2), std::move(entry));
                }
    T.commutative = A.commutative && B.commutative;
    if (A.unital && B.unital) {
        T.unital = true;
        T.unit = id(A.unit, B.unit);
    }
    return T;
}

DgAlgebra direct_sum_dga(const DgAlgebra& A, const DgAlgebra& B) {
    DgAlgebra S;
    const int na = A.V.dim();
    for (int a = 0; a < na; ++a) S.V.add("l." + A.V.name(a), A.V.degree(a));
    for (int b = 0; b < B.V.dim(); ++b) S.V.add("r." + B.V.name(b), B.V.degree(b));
    const int n = S.V.dim();
    S.d = LinMap(-1, n, n);
    for (int a = 0; a < na; ++a)
        for (int a2 = 0; a2 < na; ++a2) {
            const Rat& c = A.d.m.get(a2, a);
            if (!is_zero(c)) S.d.m.add_to(a2, a, c);
        }
    for (int b = 0; b < B.V.dim(); ++b)
        for (int b2 = 0; b2 < B.V.dim(); ++b2) {
            const Rat& c = B.d.m.get(b2, b);
            if (!is_zero(c)) S.d.m.add_to(na + b2, na + b, c);
        }
    for (const auto& [ij, val] : A.mul.t) {
        std::map<int, Rat> entry(val);
        S.mul.set(ij.first, ij.second, std::move(entry));
    }
    for (const auto& [ij, val] : B.mul.t) {
        std::map<int, Rat> entry;
        for (const auto& [k, c] : val) entry[na + k] = c;
        S.mul.set(na + ij.first, na + ij.second, std::move(entry));
    }
    S.commutative = A.commutative && B.commutative;
    return S;  // never unital
}

namespace {

/* random invertible degree-0 matrix: permutation within degrees times
 * unitriangular with small entries */
SparseMat random_change(const GradedVectorSpace& V, Rng& rng, int fixed_idx) {
    const int n = V.dim();
    SparseMat P = SparseMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || j == fixed_idx) continue;
            if (V.degree(i) != V.degree(j)) continue;
            if (i < j && rng.chance(1, 2)) P.add_to(i, j, rng.small_rat(1));
        }
    /* allow mixing the fixed element (the unit) into others */
    if (fixed_idx >= 0)
        for (int j = 0; j < n; ++j) {
            if (j == fixed_idx || V.degree(j) != V.degree(fixed_idx)) continue;
            if (rng.chance(1, 3)) P.add_to(fixed_idx, j, rng.small_rat(1));
        }
    return P;
}

SparseMat invert(const SparseMat& P) {
    const int n = P.rows;
    SparseMat Q(n, n);
    for (int j = 0; j < n; ++j) {
        Vec e = vec_zero(n);
        e[j] = 1;
        auto sol = solve_linear(P, e);
        if (!sol.consistent || !sol.kernel.empty())
            throw InputError("transport: change of basis not invertible");
        for (int i = 0; i < n; ++i)
            if (!is_zero(sol.particular[i])) Q.set(i, j, sol.particular[i]);
    }
    return Q;
}

}  // namespace

DgAlgebra transported(const DgAlgebra& A, Rng& rng) {
    SparseMat P = random_change(A.V, rng, A.unital ? A.unit : -1);
    SparseMat Q = invert(P);
    DgAlgebra R = A;
    R.d.m = P * (A.d.m * Q);
    R.mul = ProductTable{};
    const int n = A.V.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec a = vec_zero(n), b = vec_zero(n);
            for (int t = 0; t < n; ++t) {
                a[t] = Q.get(t, i);
                b[t] = Q.get(t, j);
            }
            Vec prod = P.apply(A.mul_vec(a, b));
            std::map<int, Rat> entry;
            for (int t = 0; t < n; ++t)
                if (!is_zero(prod[t])) entry[t] = prod[t];
            R.mul.set(i, j, std::move(entry));
        }
    R.splitting.reset();
    return R;
}

DgLieAlgebra transported(const DgLieAlgebra& g, Rng& rng) {
    SparseMat P = random_change(g.V, rng, -1);
    SparseMat Q = invert(P);
    DgLieAlgebra R = g;
    R.d.m = P * (g.d.m * Q);
    R.br = ProductTable{};
    const int n = g.V.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec a = vec_zero(n), b = vec_zero(n);
            for (int t = 0; t < n; ++t) {
                a[t] = Q.get(t, i);
                b[t] = Q.get(t, j);
            }
            Vec prod = P.apply(g.br_vec(a, b));
            std::map<int, Rat> entry;
            for (int t = 0; t < n; ++t)
                if (!is_zero(prod[t])) entry[t] = prod[t];
            R.br.set(i, j, std::move(entry));
        }
    return R;
}

namespace {

/* non-unital templates */
DgAlgebra tpl_square_zero(Rng& rng, int dim, int deg_lo, int deg_hi) {
    DgAlgebra A;
    for (int i = 0; i < dim; ++i)
        A.V.add("x" + std::to_string(i), rng.pick(deg_lo, deg_hi));
    A.d = LinMap(-1, dim, dim);
    /* random cone pairs */
    std::vector<bool> used(dim, false);
    for (int i = 0; i < dim; ++i) {
        if (used[i] || !rng.chance(1, 2)) continue;
        for (int j = 0; j < dim; ++j) {
            if (used[j] || j == i) continue;
            if (A.V.degree(i) == A.V.degree(j) + 1) {
                A.d.m.set(j, i, rng.chance(1, 2) ? Rat(1) : Rat(-1));
                used[i] = used[j] = true;
                break;
            }
        }
    }
    A.commutative = true;
    return A;
}

DgAlgebra tpl_trunc_poly(int len, int gen_deg) {
    /* reduced K[x]/(x^{len+1}) with |x| = gen_deg (even) */
    DgAlgebra A;
    for (int i = 1; i <= len; ++i) A.V.add("t" + std::to_string(i), i * gen_deg);
    A.d = LinMap(-1, len, len);
    for (int i = 1; i <= len; ++i)
        for (int j = 1; j <= len; ++j)
            if (i + j <= len) A.mul.set(i - 1, j - 1, {{i + j - 1, Rat(1)}});
    A.commutative = true;
    return A;
}

DgAlgebra tpl_exterior_pair(int dx, int dy) {
    /* odd x, odd y, z = xy */
    DgAlgebra A;
    A.V.add("ex", dx);
    A.V.add("ey", dy);
    A.V.add("ez", dx + dy);
    A.d = LinMap(-1, 3, 3);
    A.mul.set(0, 1, {{2, Rat(1)}});
    A.mul.set(1, 0, {{2, Rat(koszul_pow(dx, dy))}});
    A.commutative = true;
    return A;
}

DgAlgebra tpl_poly_with_d() {
    /* x, x^2, y with dy = x^2 */
    DgAlgebra A;
    A.V.add("px", 0);
    A.V.add("px2", 0);
    A.V.add("py", 1);
    A.d = LinMap(-1, 3, 3);
    A.d.m.set(1, 2, Rat(1));
    A.mul.set(0, 0, {{1, Rat(1)}});
    A.commutative = true;
    return A;
}

/* unital templates */
DgAlgebra tpl_unit_plus(const DgAlgebra& nonunital) {
    DgAlgebra A;
    A.V.add("1", 0);
    const int n0 = nonunital.V.dim();
    for (int i = 0; i < n0; ++i) A.V.add(nonunital.V.name(i), nonunital.V.degree(i));
    const int n = n0 + 1;
    A.d = LinMap(-1, n, n);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j) {
            const Rat& c = nonunital.d.m.get(j, i);
            if (!is_zero(c)) A.d.m.set(j + 1, i + 1, c);
        }
    A.mul.set(0, 0, {{0, Rat(1)}});
    for (int i = 0; i < n0; ++i) {
        A.mul.set(0, i + 1, {{i + 1, Rat(1)}});
        A.mul.set(i + 1, 0, {{i + 1, Rat(1)}});
    }
    for (const auto& [ij, val] : nonunital.mul.t) {
        std::map<int, Rat> entry;
        for (const auto& [k, c] : val) entry[k + 1] = c;
        A.mul.set(ij.first + 1, ij.second + 1, std::move(entry));
    }
    A.unital = true;
    A.unit = 0;
    A.commutative = nonunital.commutative;
    return A;
}

DgAlgebra tpl_kxk() {
    /* K x K presented as K[e]/(e^2 - 1) */
    DgAlgebra A;
    A.V.add("1", 0);
    A.V.add("e", 0);
    A.d = LinMap(-1, 2, 2);
    A.mul.set(0, 0, {{0, Rat(1)}});
    A.mul.set(0, 1, {{1, Rat(1)}});
    A.mul.set(1, 0, {{1, Rat(1)}});
    A.mul.set(1, 1, {{0, Rat(1)}});
    A.unital = true;
    A.unit = 0;
    A.commutative = true;
    return A;
}

DgAlgebra tpl_cone() {
    /* K + Kv with dv = 1, |v| = 1 */
    DgAlgebra A;
    A.V.add("1", 0);
    A.V.add("v", 1);
    A.d = LinMap(-1, 2, 2);
    A.d.m.set(0, 1, Rat(1));
    A.mul.set(0, 0, {{0, Rat(1)}});
    A.mul.set(0, 1, {{1, Rat(1)}});
    A.mul.set(1, 0, {{1, Rat(1)}});
    A.unital = true;
    A.unit = 0;
    A.commutative = true;
    return A;
}

}  // namespace

DgAlgebra random_commutative_dga(Rng& rng, int max_dim, int deg_lo, int deg_hi,
                                 bool structured_bias) {
    DgAlgebra A;
    switch (structured_bias ? rng.pick(1, 3) : rng.pick(0, 4)) {
        case 0:
            A = tpl_square_zero(rng, rng.pick(1, max_dim), deg_lo, deg_hi);
            break;
        case 1:
            A = tpl_trunc_poly(std::min(max_dim, rng.pick(2, 3)), 0);
            break;
        case 2: {
            int dx = 1, dy = 1;
            if (deg_lo <= -1 && rng.chance(1, 2)) dy = -1;
            if (max_dim >= 3)
                A = tpl_exterior_pair(dx, dy);
            else
                A = tpl_square_zero(rng, max_dim, deg_lo, deg_hi);
            break;
        }
        case 3:
            if (max_dim >= 3)
                A = tpl_poly_with_d();
            else
                A = tpl_square_zero(rng, max_dim, deg_lo, deg_hi);
            break;
        default: {
            /* direct sum of two tiny square-zero pieces */
            DgAlgebra B = tpl_square_zero(rng, 1, deg_lo, deg_hi);
            DgAlgebra C = tpl_square_zero(rng, std::min(2, max_dim - 1), deg_lo, deg_hi);
            A = max_dim >= 2 ? direct_sum_dga(B, C) : B;
            break;
        }
    }
    return transported(A, rng);
}

DgAlgebra random_unital_commutative_dga(Rng& rng, int max_dim) {
    DgAlgebra A;
    switch (rng.pick(0, 3)) {
        case 0:
            A = tpl_kxk();
            break;
        case 1:
            A = tpl_cone();
            break;
        case 2:
            A = tpl_unit_plus(tpl_square_zero(rng, std::min(2, max_dim - 1), 0, 2));
            break;
        default:
            A = rng.chance(1, 2) ? tensor_dga(tpl_cone(), tpl_kxk())
                                 : tpl_unit_plus(tpl_trunc_poly(2, 0));
            break;
    }
    if (A.V.dim() > max_dim) A = tpl_kxk();
    A = transported(A, rng);
    /* occasionally pick a nontrivial splitting: complement mixes the unit */
    if (rng.chance(1, 3)) {
        const int n = A.V.dim();
        std::vector<Vec> split;
        for (int i = 0; i < n; ++i) {
            if (i == A.unit) continue;
            Vec v = vec_zero(n);
            v[i] = 1;
            if (A.V.degree(i) == A.V.degree(A.unit) && rng.chance(1, 2))
                v[A.unit] = rng.small_rat(1);
            split.push_back(v);
        }
        A.splitting = split;
    }
    return A;
}

DgLieAlgebra random_dgla(Rng& rng, int max_dim, int deg_lo, int deg_hi) {
    /* class <= 2 nilpotent: brackets of non-central elements land in the
     * center, differential maps non-central to central */
    DgLieAlgebra g;
    int m = rng.pick(1, std::max(1, max_dim - 1));   // non-central
    int c = rng.pick(max_dim > m ? 1 : 0, max_dim - m);  // central
    std::vector<int> ncdeg(m), cdeg(c);
    for (int i = 0; i < m; ++i) {
        ncdeg[i] = rng.pick(deg_lo, deg_hi);
        g.V.add("x" + std::to_string(i), ncdeg[i]);
    }
    for (int i = 0; i < c; ++i) {
        /* center degrees chosen to be reachable as sums when possible */
        int a = ncdeg[rng.pick(0, m - 1)], b = ncdeg[rng.pick(0, m - 1)];
        cdeg[i] = rng.chance(2, 3) ? a + b : rng.pick(deg_lo, deg_hi);
        g.V.add("z" + std::to_string(i), cdeg[i]);
    }
    const int n = m + c;
    g.d = LinMap(-1, n, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < c; ++j)
            if (ncdeg[i] - 1 == cdeg[j] && rng.chance(2, 3))
                g.d.m.set(m + j, i, Rat(rng.chance(1, 2) ? 1 : -1));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            std::map<int, Rat> entry;
            for (int k = 0; k < c; ++k)
                if (cdeg[k] == ncdeg[i] + ncdeg[j] && rng.chance(3, 4))
                    entry[m + k] = rng.small_rat(1);
            if (i == j && (ncdeg[i] & 1) == 0) continue;  // [x,x] = 0 for even x
            if (entry.empty()) continue;
            g.br.set(i, j, entry);
            if (i != j) {
                std::map<int, Rat> sym;
                int sgn = -koszul_pow(ncdeg[i], ncdeg[j]);
                for (const auto& [k, v] : entry) sym[k] = Rat(sgn) * v;
                g.br.set(j, i, std::move(sym));
            }
        }
    return transported(g, rng);
}

std::optional<ConvElem> random_mc(const ConvolutionLie& g, Rng& rng) {
    /* weightwise extension; kernel offsets can obstruct later weights, so
     * retry with progressively tamer choices */
    for (int attempt = 0; attempt < 10; ++attempt) {
        const int offset_den = attempt < 5 ? 3 : 6;
        const bool offsets = attempt < 9;
        ConvElem alpha = g.zero(-1);
        bool ok = true;
        for (int w = 0; w < g.W(); ++w) {
            AffineSolutionSet sol = g.mc_extend(alpha, w);
            if (!sol.consistent) {
                ok = false;
                break;
            }
            Vec x = sol.particular;
            if (offsets)
                for (const auto& k : sol.kernel)
                    if (rng.chance(1, offset_den)) x = vec_add(x, vec_scale(rng.small_rat(1), k));
            g.unflatten_into(alpha, x, g.slice(w + 1, -1));
        }
        if (ok && g.is_mc(alpha)) return alpha;
    }
    return std::nullopt;
}

ConvElem random_gauge(const ConvolutionLie& g, Rng& rng) {
    ConvElem l = g.zero(0);
    for (int w = 1; w <= g.W(); ++w) {
        auto s = g.slice(w, 0);
        Vec x = vec_zero(static_cast<int>(s.cells.size()));
        for (size_t i = 0; i < s.cells.size(); ++i)
            if (rng.chance(1, 2)) x[i] = rng.small_rat(2);
        g.unflatten_into(l, x, s);
    }
    return l;
}

ConvElem random_stabilizer_gauge(const ConvolutionLie& g, const ConvElem& beta, Rng& rng) {
    /* cycles of the beta-twisted differential in degree 0 */
    ConvolutionLie t = g.twisted_by(beta);
    std::vector<std::pair<int, int>> cols;  // (w, cell index)
    for (int w = 1; w <= g.W(); ++w) {
        auto s = g.slice(w, 0);
        for (size_t i = 0; i < s.cells.size(); ++i) cols.push_back({w, static_cast<int>(i)});
    }
    /* build the matrix of d^beta on degree 0 into degree -1, all weights */
    std::vector<std::pair<int, int>> rows;
    std::map<std::pair<int, std::pair<int, int>>, int> row_idx;
    for (int w = 1; w <= g.W(); ++w) {
        auto s = g.slice(w, -1);
        for (size_t i = 0; i < s.cells.size(); ++i) {
            row_idx[{w, s.cells[i]}] = static_cast<int>(rows.size());
            rows.push_back({w, static_cast<int>(i)});
        }
    }
    SparseMat M(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        auto [w, ci] = cols[j];
        auto s = g.slice(w, 0);
        ConvElem e = g.zero(0);
        Vec x = vec_zero(static_cast<int>(s.cells.size()));
        x[ci] = 1;
        g.unflatten_into(e, x, s);
        ConvElem de = t.diff(e);
        for (int ww = 1; ww <= g.W(); ++ww) {
            auto s2 = g.slice(ww, -1);
            Vec y = g.flatten(de, s2);
            for (size_t i = 0; i < s2.cells.size(); ++i)
                if (!is_zero(y[i]))
                    M.add_to(row_idx.at({ww, s2.cells[i]}), static_cast<int>(j), y[i]);
        }
    }
    auto ker = kernel_basis(M);
    ConvElem l = g.zero(0);
    if (ker.empty()) return l;
    Vec x = vec_zero(static_cast<int>(cols.size()));
    int uses = std::min<int>(2, static_cast<int>(ker.size()));
    for (int u = 0; u < uses; ++u) {
        int pick = rng.pick(0, static_cast<int>(ker.size()) - 1);
        x = vec_add(x, vec_scale(rng.small_rat(1), ker[pick]));
    }
    for (size_t j = 0; j < cols.size(); ++j) {
        if (is_zero(x[j])) continue;
        auto [w, ci] = cols[j];
        auto s = g.slice(w, 0);
        l.comp[w - 1].m.add_to(s.cells[ci].second, s.cells[ci].first, x[j]);
    }
    return l;
}

}  // namespace barmc
