#include "barmc/pbw.hpp"

#include <algorithm>
#include <sstream>

namespace barmc {

SparseMat regular_rep(const GroupAlgElt& z) {
    auto perms = all_perms(z.n);
    std::map<Perm, int> idx;
    for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = static_cast<int>(i);
    SparseMat m(static_cast<int>(perms.size()), static_cast<int>(perms.size()));
    for (size_t j = 0; j < perms.size(); ++j)
        for (const auto& [p, c] : z.c)
            m.add_to(idx.at(perm_compose(p, perms[j])), static_cast<int>(j), c);
    return m;
}

int lie_multilinear_dim(int n) {
    /* expand [x_{s(1)},...,x_{s(n)}] left-normed, over all s, and rank them */
    auto perms = all_perms(n);
    std::map<Perm, int> idx;
    for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = static_cast<int>(i);
    RowBasis rb(static_cast<int>(perms.size()));
    int rank = 0;
    for (const auto& s : perms) {
        std::map<Word, Rat> acc;
        acc[{s[0]}] = 1;
        for (int i = 1; i < n; ++i) {
            std::map<Word, Rat> nxt;
            for (const auto& [w, c] : acc) {
                Word l(w);
                l.push_back(s[i]);
                nxt[l] += c;
                Word r;
                r.push_back(s[i]);
                r.insert(r.end(), w.begin(), w.end());
                nxt[r] -= c;
            }
            acc = std::move(nxt);
        }
        Vec row = vec_zero(static_cast<int>(perms.size()));
        for (const auto& [w, c] : acc) {
            Perm p(w.begin(), w.end());
            row[idx.at(p)] = c;
        }
        if (rb.insert(row)) ++rank;
    }
    return rank;
}

int graded_bracket_span_dim(const std::vector<int>& letter_deg, int w) {
    WordSpace ws = tensor_words(letter_deg, w);
    RowBasis rb(ws.dim());
    int rank = 0;
    for (int seed = 0; seed < ws.dim(); ++seed) {
        const Word& letters = ws.words[seed];
        std::map<Word, Rat> acc;
        acc[{letters[0]}] = 1;
        int ldeg = letter_deg[letters[0]];
        for (int i = 1; i < w; ++i) {
            std::map<Word, Rat> nxt;
            int rdeg = letter_deg[letters[i]];
            for (const auto& [word, c] : acc) {
                Word l(word);
                l.push_back(letters[i]);
                nxt[l] += c;
                Word r;
                r.push_back(letters[i]);
                r.insert(r.end(), word.begin(), word.end());
                nxt[r] -= Rat(koszul_pow(ldeg, rdeg)) * c;
            }
            acc = std::move(nxt);
            ldeg += rdeg;
        }
        Vec row = vec_zero(ws.dim());
        for (const auto& [word, c] : acc) row[ws.index.at(word)] = c;
        if (rb.insert(row)) ++rank;
    }
    return rank;
}

PbwDecomposition pbw_decompose(int n, bool with_bases, int arity_cap) {
    if (n < 1) throw InputError("pbw_decompose: n must be >= 1");
    if (n > arity_cap) throw InputError("pbw_decompose: arity cap exceeded");
    PbwDecomposition out;
    out.n = n;
    for (int k = 1; k <= n; ++k) out.projectors.push_back(eulerian_idempotent(n, k));
    GroupAlgElt sum = GroupAlgElt::zero(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            GroupAlgElt prod = out.projectors[j] * out.projectors[k];
            GroupAlgElt expect = (j == k) ? out.projectors[j] : GroupAlgElt::zero(n);
            if (!(prod == expect))
                throw StageError("pbw_decompose: projectors fail orthogonality at (" +
                                 std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
        sum = sum + out.projectors[j];
    }
    if (!(sum == GroupAlgElt::identity(n)))
        throw StageError("pbw_decompose: projectors do not sum to the identity");
    /* ranks: trace of the regular representation, exact for verified
     * idempotents: n! times the coefficient of the identity */
    Int nfact(1);
    for (int i = 2; i <= n; ++i) nfact *= i;
    for (int k = 0; k < n; ++k) {
        auto it = out.projectors[k].c.find(perm_id(n));
        Rat cid = it == out.projectors[k].c.end() ? Rat(0) : it->second;
        Rat tr = Rat(nfact) * cid;
        if (tr.get_den() != 1) throw StageError("pbw_decompose: non-integral trace");
        out.ranks.push_back(static_cast<int>(tr.get_num().get_si()));
    }
    if (with_bases) {
        for (int k = 0; k < n; ++k) {
            SparseMat m = regular_rep(out.projectors[k]);
            RowBasis rb(m.rows);
            std::vector<Vec> basis;
            for (int j = 0; j < m.cols; ++j) {
                Vec col = vec_zero(m.rows);
                for (int i = 0; i < m.rows; ++i) col[i] = m.get(i, j);
                if (rb.insert(col)) basis.push_back(col);
            }
            if (static_cast<int>(basis.size()) != out.ranks[k])
                throw StageError("pbw_decompose: image rank disagrees with trace");
            out.component_bases.push_back(std::move(basis));
        }
    }
    return out;
}

BarRetraction build_bar_retraction(const DgAlgebra& A, int W) {
    BarRetraction R;
    if (A.unital) {
        R.ba = bar_unital(A, UnitalFlavor::Associative, W);
        R.bcom = bar_unital(A, UnitalFlavor::Commutative, W);
    } else {
        R.ba = bar_ass(A, W);
        R.bcom = bar_com(A, W);
    }
    R.p = harrison_projection(R.ba, R.bcom);
    for (int w = 1; w <= W; ++w) {
        const GroupAlgElt& e1 = eulerian_idempotent(w, 1);
        SparseMat act = action_matrix(e1, R.ba.sletter_deg, R.ba.wordspaces[w - 1]);
        LinMap s(0, R.ba.dim_w(w), R.bcom.dim_w(w));
        s.m = act * R.bcom.lift[w - 1].m;
        R.s.push_back(s);
    }
    return R;
}

UcCompareReport uc_compare(const DgAlgebra& A, int W) {
    BarRetraction R = build_bar_retraction(A, W);
    UcCompareReport rep;
    struct Gen {
        int w, deg;
    };
    std::vector<Gen> gens;
    for (int w = 1; w <= W; ++w)
        for (int i = 0; i < R.bcom.dim_w(w); ++i)
            gens.push_back({w, R.bcom.comp[w - 1].degree(i)});
    std::map<std::pair<int, int>, int> sym_dims;
    auto rec = [&](auto&& self, size_t g, int wt, int deg) -> void {
        if (g == gens.size()) {
            if (wt >= 1) sym_dims[{wt, deg}] += 1;
            return;
        }
        self(self, g + 1, wt, deg);
        int maxrep = (gens[g].deg & 1) ? 1 : W;
        for (int r = 1; r <= maxrep; ++r) {
            if (wt + r * gens[g].w > W) break;
            self(self, g + 1, wt + r * gens[g].w, deg + r * gens[g].deg);
        }
    };
    rec(rec, 0, 0, 0);
    for (int w = 1; w <= W; ++w) {
        std::map<int, int> ba_deg;
        for (int i = 0; i < R.ba.dim_w(w); ++i) ba_deg[R.ba.comp[w - 1].degree(i)] += 1;
        std::set<int> degs;
        for (const auto& [d, c] : ba_deg) {
            (void)c;
            degs.insert(d);
        }
        for (const auto& [key, c] : sym_dims) {
            (void)c;
            if (key.first == w) degs.insert(key.second);
        }
        for (int d : degs) {
            int lhs = ba_deg.count(d) ? ba_deg.at(d) : 0;
            int rhs = sym_dims.count({w, d}) ? sym_dims.at({w, d}) : 0;
            rep.dims[{w, d}] = {lhs, rhs};
            if (lhs != rhs) {
                rep.ok = false;
                rep.mismatches.push_back("weight " + std::to_string(w) + " degree " +
                                         std::to_string(d) + ": " + std::to_string(lhs) +
                                         " vs " + std::to_string(rhs));
            }
        }
    }
    for (int w = 1; w <= W; ++w) {
        LinMap ps = lm_compose(R.p[w - 1], R.s[w - 1]);
        if (!(ps.m == SparseMat::identity(R.bcom.dim_w(w)))) {
            rep.ok = false;
            rep.mismatches.push_back("p o s != id at weight " + std::to_string(w));
        }
    }
    return rep;
}

namespace {

/* Straighten into the PBW order: weakly increasing, odd letters squarefree.
 * Rewriting never lengthens a word, so this terminates. */
void straighten(const DgLieAlgebra& g, const std::vector<int>& deg, const Word& w,
                const Rat& coeff, std::map<Word, Rat>& out) {
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        int a = w[i], b = w[i + 1];
        if (a > b) {
            Word swapped(w);
            std::swap(swapped[i], swapped[i + 1]);
            straighten(g, deg, swapped, coeff * koszul_pow(deg[a], deg[b]), out);
            const auto* br = g.br.find(a, b);
            if (br)
                for (const auto& [t, c] : *br) {
                    Word shorter;
                    shorter.insert(shorter.end(), w.begin(), w.begin() + i);
                    shorter.push_back(t);
                    shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                    straighten(g, deg, shorter, coeff * c, out);
                }
            return;
        }
        if (a == b && (deg[a] & 1)) {
            const auto* br = g.br.find(a, b);
            if (br)
                for (const auto& [t, c] : *br) {
                    Word shorter;
                    shorter.insert(shorter.end(), w.begin(), w.begin() + i);
                    shorter.push_back(t);
                    shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                    straighten(g, deg, shorter, coeff * c * frac(1, 2), out);
                }
            return;
        }
    }
    auto it = out.find(w);
    if (it == out.end()) {
        if (!is_zero(coeff)) out[w] = coeff;
        return;
    }
    it->second += coeff;
    if (is_zero(it->second)) out.erase(it);
}

std::string mono_name(const DgLieAlgebra& g, const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ".";
        os << g.V.name(w[i]);
    }
    return os.str();
}

}  // namespace

EnvelopingAlgebra enveloping_algebra(const DgLieAlgebra& g, int T) {
    if (T < 1) throw InputError("enveloping_algebra: T must be >= 1");
    EnvelopingAlgebra U;
    U.g = g;
    U.T = T;
    const int n = g.V.dim();
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = g.V.degree(i);
    Word cur;
    auto rec = [&](auto&& self, int start) -> void {
        int d = 0;
        for (int l : cur) d += deg[l];
        U.index[cur] = static_cast<int>(U.monos.size());
        U.monos.push_back(cur);
        U.V.add(mono_name(g, cur), d);
        if (static_cast<int>(cur.size()) == T) return;
        for (int l = start; l < n; ++l) {
            if (!cur.empty() && cur.back() == l && (deg[l] & 1)) continue;
            cur.push_back(l);
            self(self, l);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    U.unit = U.index.at({});
    const int N = static_cast<int>(U.monos.size());
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            Word ab(U.monos[a]);
            ab.insert(ab.end(), U.monos[b].begin(), U.monos[b].end());
            std::map<Word, Rat> terms;
            straighten(g, deg, ab, Rat(1), terms);
            std::map<int, Rat> entry;
            bool dropped = false;
            for (const auto& [w, c] : terms) {
                if (static_cast<int>(w.size()) > T) {
                    dropped = true;
                    continue;
                }
                entry[U.index.at(w)] += c;
            }
            U.mul.set(a, b, std::move(entry));
            if (dropped) U.overflow.insert({a, b});
        }
    U.d = LinMap(-1, N, N);
    for (int a = 0; a < N; ++a) {
        const Word& w = U.monos[a];
        int prefix = 0;
        for (size_t slot = 0; slot < w.size(); ++slot) {
            int sign = (prefix & 1) ? -1 : 1;
            for (int t = 0; t < n; ++t) {
                const Rat& c = g.d.m.get(t, w[slot]);
                if (is_zero(c)) continue;
                Word w2(w);
                w2[slot] = t;
                std::map<Word, Rat> terms;
                straighten(g, deg, w2, Rat(sign) * c, terms);
                for (const auto& [ww, cc] : terms) U.d.m.add_to(U.index.at(ww), a, cc);
            }
            prefix += deg[w[slot]];
        }
    }
    return U;
}

DgAlgebra EnvelopingAlgebra::as_dg_algebra() const {
    DgAlgebra A;
    A.V = V;
    A.d = d;
    A.mul = mul;
    A.unital = true;
    A.unit = unit;
    return A;
}

LinMap primitive_projection(const EnvelopingAlgebra& U) {
    const int N = U.V.dim();
    const int n = U.g.V.dim();
    using Tensor = std::map<std::pair<int, int>, Rat>;
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = U.g.V.degree(i);
    std::vector<int> gdeg(N);
    for (int i = 0; i < N; ++i) gdeg[i] = U.V.degree(i);
    /* full coproduct on monomials: product of x (x) 1 + 1 (x) x */
    std::vector<Tensor> cop(N);
    for (int a = 0; a < N; ++a) {
        Tensor acc;
        acc[{U.unit, U.unit}] = 1;
        for (int letter : U.monos[a]) {
            Tensor nxt;
            for (const auto& [uv, c] : acc) {
                auto [u, v] = uv;
                {
                    /* (u (x) v)(x (x) 1) = (-1)^{|v||x|} ux (x) v */
                    Word w(U.monos[u]);
                    w.push_back(letter);
                    std::map<Word, Rat> terms;
                    straighten(U.g, deg, w, c * koszul_pow(gdeg[v], deg[letter]), terms);
                    for (const auto& [ww, cc] : terms) {
                        auto key = std::make_pair(U.index.at(ww), v);
                        nxt[key] += cc;
                        if (is_zero(nxt[key])) nxt.erase(key);
                    }
                }
                {
                    /* (u (x) v)(1 (x) x) = u (x) vx */
                    Word w(U.monos[v]);
                    w.push_back(letter);
                    std::map<Word, Rat> terms;
                    straighten(U.g, deg, w, c, terms);
                    for (const auto& [ww, cc] : terms) {
                        auto key = std::make_pair(u, U.index.at(ww));
                        nxt[key] += cc;
                        if (is_zero(nxt[key])) nxt.erase(key);
                    }
                }
            }
            acc = std::move(nxt);
        }
        cop[a] = std::move(acc);
    }
    /* convolution powers of J = id - unit projection:
     * pow[k][a] = (J^{*k})(e_a), nonzero only for k <= length(a) */
    int maxlen = 0;
    for (int a = 0; a < N; ++a) maxlen = std::max(maxlen, U.length_of(a));
    std::vector<std::vector<Vec>> pow(maxlen + 1, std::vector<Vec>(N));
    for (int a = 0; a < N; ++a) {
        pow[1][a] = vec_zero(N);
        if (U.length_of(a) >= 1) pow[1][a][a] = 1;
    }
    for (int k = 2; k <= maxlen; ++k)
        for (int a = 0; a < N; ++a) {
            Vec r = vec_zero(N);
            if (U.length_of(a) >= k) {
                for (const auto& [uv, c] : cop[a]) {
                    auto [u, v] = uv;
                    if (U.length_of(v) == 0 || U.length_of(u) == 0) continue;
                    const Vec& pu = pow[k - 1][u];
                    for (int t = 0; t < N; ++t) {
                        if (is_zero(pu[t])) continue;
                        const auto* e = U.mul.find(t, v);
                        if (!e) continue;
                        for (const auto& [tt, cc] : *e) r[tt] += c * pu[t] * cc;
                    }
                }
            }
            pow[k][a] = std::move(r);
        }
    LinMap rU(0, n, N);
    for (int a = 0; a < N; ++a) {
        Vec e = vec_zero(N);
        for (int k = 1; k <= U.length_of(a); ++k)
            e = vec_add(e, vec_scale(frac((k & 1) ? 1 : -1, k), pow[k][a]));
        for (int t = 0; t < N; ++t) {
            if (is_zero(e[t]) || U.length_of(t) != 1) continue;
            rU.m.add_to(U.monos[t][0], a, e[t]);
        }
    }
    return rU;
}

}  // namespace barmc
