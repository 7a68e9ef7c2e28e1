#include "barmc/barcobar.hpp"

#include <algorithm>
#include <sstream>

namespace barmc {

Rat WeightGradedCoalgebra::theta_of(int w, int i) const {
    if (w < 1 || w > 2 || theta.size() < static_cast<size_t>(w)) return Rat(0);
    auto it = theta[w - 1].find(i);
    return it == theta[w - 1].end() ? Rat(0) : it->second;
}

namespace {

struct Alphabet {
    GradedVectorSpace letters;     // underlying (unsuspended) names/degrees
    std::vector<int> sdeg;         // suspended degrees
    LinMap d;                      // on letters, degree -1
    ProductTable mul;              // on letters
};

Alphabet alphabet_of(const DgAlgebra& A) {
    Alphabet al;
    al.letters = A.V;
    al.sdeg.resize(A.V.dim());
    for (int i = 0; i < A.V.dim(); ++i) al.sdeg[i] = A.V.degree(i) + 1;
    al.d = A.d;
    al.mul = A.mul;
    return al;
}

GradedVectorSpace word_space_named(const WordSpace& ws, const GradedVectorSpace& letters,
                                   char open, char close) {
    GradedVectorSpace V;
    for (int i = 0; i < ws.dim(); ++i)
        V.add(word_name(letters, ws.words[i], open, close), ws.degree[i]);
    return V;
}

/* d0: apply -s d s^{-1} in every slot with Koszul prefix signs. */
LinMap word_d0(const WordSpace& ws, const Alphabet& al) {
    LinMap out(-1, ws.dim(), ws.dim());
    for (int j = 0; j < ws.dim(); ++j) {
        const Word& w = ws.words[j];
        int prefix = 0;
        for (size_t slot = 0; slot < w.size(); ++slot) {
            int sign = (prefix & 1) ? -1 : 1;
            for (int t = 0; t < al.letters.dim(); ++t) {
                const Rat& c = al.d.m.get(t, w[slot]);
                if (is_zero(c)) continue;
                Word w2(w);
                w2[slot] = t;
                auto it = ws.index.find(w2);
                if (it == ws.index.end()) throw InputError("word_d0: missing word");
                out.m.add_to(it->second, j, Rat(-sign) * c);
            }
            prefix += al.sdeg[w[slot]];
        }
    }
    return out;
}

/* d1: contract adjacent slots with m_s; sign is the Koszul prefix through the
 * left slot inclusive. */
LinMap word_d1(const WordSpace& src, const WordSpace& dst, const Alphabet& al) {
    LinMap out(-1, dst.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
        const Word& w = src.words[j];
        int prefix = 0;
        for (size_t slot = 0; slot + 1 < w.size(); ++slot) {
            prefix += al.sdeg[w[slot]];
            int sign = (prefix & 1) ? -1 : 1;
            const auto* prod = al.mul.find(w[slot], w[slot + 1]);
            if (prod) {
                for (const auto& [t, c] : *prod) {
                    Word w2;
                    w2.reserve(w.size() - 1);
                    w2.insert(w2.end(), w.begin(), w.begin() + slot);
                    w2.push_back(t);
                    w2.insert(w2.end(), w.begin() + slot + 2, w.end());
                    auto it = dst.index.find(w2);
                    if (it == dst.index.end()) throw InputError("word_d1: missing word");
                    out.m.add_to(it->second, j, Rat(sign) * c);
                }
            }
        }
    }
    return out;
}

/* Deconcatenation entries for a word basis. */
std::vector<std::vector<std::tuple<int, int, int, Rat>>> word_cop(
    const std::vector<WordSpace>& spaces, int w) {
    std::vector<std::vector<std::tuple<int, int, int, Rat>>> table(spaces[w - 1].dim());
    for (int i = 0; i < spaces[w - 1].dim(); ++i) {
        const Word& word = spaces[w - 1].words[i];
        for (int u = 1; u <= w - 1; ++u) {
            Word pre(word.begin(), word.begin() + u);
            Word suf(word.begin() + u, word.end());
            int j = spaces[u - 1].index.at(pre);
            int k = spaces[w - u - 1].index.at(suf);
            table[i].push_back({u, j, k, Rat(1)});
        }
    }
    return table;
}

WeightGradedCoalgebra build_bar_ass(const Alphabet& al, int W, bool curved,
                                    const std::vector<Rat>& tau,
                                    const std::map<std::pair<int, int>, Rat>& kappa) {
    WeightGradedCoalgebra C;
    C.kind = curved ? WeightGradedCoalgebra::Kind::CurvedCoass
                    : WeightGradedCoalgebra::Kind::Coass;
    C.W = W;
    C.sletter_deg = al.sdeg;
    std::vector<WordSpace> spaces;
    for (int w = 1; w <= W; ++w) spaces.push_back(tensor_words(al.sdeg, w));
    /* suspended degrees for the named component spaces */
    for (int w = 1; w <= W; ++w) {
        WordSpace& ws = spaces[w - 1];
        for (int i = 0; i < ws.dim(); ++i) {
            int d = 0;
            for (int l : ws.words[i]) d += al.sdeg[l];
            ws.degree[i] = d;
        }
        C.comp.push_back(word_space_named(ws, al.letters, '[', ']'));
    }
    for (int w = 1; w <= W; ++w) {
        C.d0.push_back(word_d0(spaces[w - 1], al));
        if (w == 1)
            C.d1.push_back(LinMap(-1, 0, spaces[0].dim()));
        else
            C.d1.push_back(word_d1(spaces[w - 1], spaces[w - 2], al));
        C.cop.push_back(word_cop(spaces, w));
    }
    C.theta.resize(W);
    if (curved) {
        /* weight 1: theta(sa) = -tau(a); weight 2: theta(sa|sb) = (-1)^{|sa|} kappa(a,b) */
        for (int i = 0; i < spaces[0].dim(); ++i) {
            const Rat& t = tau[spaces[0].words[i][0]];
            if (!is_zero(t)) C.theta[0][i] = -t;
        }
        if (W >= 2) {
            for (int i = 0; i < spaces[1].dim(); ++i) {
                const Word& w2 = spaces[1].words[i];
                auto it = kappa.find({w2[0], w2[1]});
                if (it == kappa.end() || is_zero(it->second)) continue;
                int sign = (al.sdeg[w2[0]] & 1) ? -1 : 1;
                C.theta[1][i] = Rat(sign) * it->second;
            }
        }
    }
    for (int w = 1; w <= W; ++w) {
        C.pi.push_back(lm_identity(spaces[w - 1].dim()));
        C.lift.push_back(lm_identity(spaces[w - 1].dim()));
    }
    C.wordspaces = std::move(spaces);
    return C;
}

/* Echelon basis of the signed-shuffle span in weight w. */
RowBasis shuffle_span(const std::vector<int>& sdeg, const std::vector<WordSpace>& spaces,
                      int w) {
    RowBasis rb(spaces[w - 1].dim());
    for (int u = 1; u <= w / 2; ++u) {
        int v = w - u;
        for (int a = 0; a < spaces[u - 1].dim(); ++a)
            for (int b = 0; b < spaces[v - 1].dim(); ++b) {
                WVec sh = shuffle_product(sdeg, spaces[u - 1], spaces[v - 1], spaces[w - 1],
                                          a, b);
                Vec row = vec_zero(spaces[w - 1].dim());
                for (const auto& [i, c] : sh) row[i] = c;
                rb.insert(row);
            }
    }
    return rb;
}

WeightGradedCoalgebra build_bar_com(const Alphabet& al, int W, bool curved,
                                    const std::vector<Rat>& tau,
                                    const std::map<std::pair<int, int>, Rat>& kappa) {
    WeightGradedCoalgebra BA = build_bar_ass(al, W, curved, tau, kappa);
    WeightGradedCoalgebra C;
    C.kind = curved ? WeightGradedCoalgebra::Kind::CurvedCoLie
                    : WeightGradedCoalgebra::Kind::CoLie;
    C.W = W;
    C.sletter_deg = al.sdeg;
    C.wordspaces = BA.wordspaces;

    std::vector<RowBasis> spans;
    std::vector<std::vector<int>> reps;  // representative word indices per weight
    for (int w = 1; w <= W; ++w) {
        RowBasis rb = shuffle_span(al.sdeg, C.wordspaces, w);
        std::vector<bool> is_pivot(C.wordspaces[w - 1].dim(), false);
        for (int p : rb.pivots) is_pivot[p] = true;
        std::vector<int> rep;
        for (int i = 0; i < C.wordspaces[w - 1].dim(); ++i)
            if (!is_pivot[i]) rep.push_back(i);
        /* component space: classes of representative words */
        GradedVectorSpace V;
        for (int i : rep)
            V.add(word_name(al.letters, C.wordspaces[w - 1].words[i], '{', '}'),
                  C.wordspaces[w - 1].degree[i]);
        C.comp.push_back(V);
        /* pi: reduce each word modulo the span, read representative coords */
        const int dim = C.wordspaces[w - 1].dim();
        std::map<int, int> rep_pos;
        for (size_t r = 0; r < rep.size(); ++r) rep_pos[rep[r]] = static_cast<int>(r);
        LinMap pi(0, static_cast<int>(rep.size()), dim);
        for (int i = 0; i < dim; ++i) {
            Vec e = vec_zero(dim);
            e[i] = 1;
            Vec red = rb.reduce(e);
            for (int j = 0; j < dim; ++j)
                if (!is_zero(red[j])) pi.m.add_to(rep_pos.at(j), i, red[j]);
        }
        LinMap lift(0, dim, static_cast<int>(rep.size()));
        for (size_t r = 0; r < rep.size(); ++r) lift.m.set(rep[r], static_cast<int>(r), Rat(1));
        C.pi.push_back(pi);
        C.lift.push_back(lift);
        spans.push_back(std::move(rb));
        reps.push_back(std::move(rep));
    }
    /* differentials transported to the quotient */
    for (int w = 1; w <= W; ++w) {
        C.d0.push_back(lm_compose(C.pi[w - 1], lm_compose(BA.d0[w - 1], C.lift[w - 1])));
        if (w == 1)
            C.d1.push_back(LinMap(-1, 0, C.comp[0].dim()));
        else
            C.d1.push_back(lm_compose(C.pi[w - 2], lm_compose(BA.d1[w - 1], C.lift[w - 1])));
    }
    /* cobracket: (pi (x) pi)(Delta - tau Delta) on representatives */
    for (int w = 1; w <= W; ++w) {
        std::vector<std::vector<std::tuple<int, int, int, Rat>>> table(C.comp[w - 1].dim());
        for (int q = 0; q < C.comp[w - 1].dim(); ++q) {
            const Word& word = C.wordspaces[w - 1].words[reps[w - 1][q]];
            std::map<std::tuple<int, int, int>, Rat> acc;
            for (int u = 1; u <= w - 1; ++u) {
                int v = w - u;
                Word pre(word.begin(), word.begin() + u);
                Word suf(word.begin() + u, word.end());
                int pi_idx_u = C.wordspaces[u - 1].index.at(pre);
                int pi_idx_v = C.wordspaces[v - 1].index.at(suf);
                int dpre = word_degree(al.sdeg, pre), dsuf = word_degree(al.sdeg, suf);
                int flip = koszul_pow(dpre, dsuf);
                /* expand pi(pre) (x) pi(suf) */
                for (int j = 0; j < C.comp[u - 1].dim(); ++j) {
                    const Rat& cj = C.pi[u - 1].m.get(j, pi_idx_u);
                    if (is_zero(cj)) continue;
                    for (int k = 0; k < C.comp[v - 1].dim(); ++k) {
                        const Rat& ck = C.pi[v - 1].m.get(k, pi_idx_v);
                        if (is_zero(ck)) continue;
                        acc[{u, j, k}] += cj * ck;
                        acc[{v, k, j}] -= Rat(flip) * cj * ck;
                    }
                }
            }
            for (const auto& [key, c] : acc)
                if (!is_zero(c))
                    table[q].push_back({std::get<0>(key), std::get<1>(key),
                                        std::get<2>(key), c});
        }
        C.cop.push_back(std::move(table));
    }
    /* curvature descends: theta(lift(q)) */
    C.theta.resize(W);
    if (curved) {
        for (int w = 1; w <= std::min(W, 2); ++w)
            for (int q = 0; q < C.comp[w - 1].dim(); ++q) {
                const Rat t = BA.theta_of(w, reps[w - 1][q]);
                if (!is_zero(t)) C.theta[w - 1][q] = t;
            }
    }
    C.splitting = BA.splitting;
    return C;
}

}  // namespace

WeightGradedCoalgebra bar_ass(const DgAlgebra& A, int W) {
    if (A.unital)
        throw InputError("bar_ass expects a non-unital algebra; use bar_unital");
    if (W < 1) throw InputError("bar_ass: W must be >= 1");
    return build_bar_ass(alphabet_of(A), W, false, {}, {});
}

WeightGradedCoalgebra bar_com(const DgAlgebra& A, int W) {
    if (A.unital)
        throw InputError("bar_com expects a non-unital algebra; use bar_unital");
    if (!A.commutative) throw InputError("Harrison quotient requires commutativity");
    if (W < 1) throw InputError("bar_com: W must be >= 1");
    return build_bar_com(alphabet_of(A), W, false, {}, {});
}

UnitalSplitting make_splitting(const DgAlgebra& A) {
    if (!A.unital || A.unit < 0) throw InputError("make_splitting: no unit");
    const int n = A.V.dim();
    std::vector<Vec> cols;
    UnitalSplitting sp;
    /* column 0 = unit, then the complement basis */
    Vec unit = vec_zero(n);
    unit[A.unit] = 1;
    cols.push_back(unit);
    if (A.splitting) {
        for (const auto& v : *A.splitting) {
            cols.push_back(v);
            /* complement vectors must be degree homogeneous */
            int deg = INT32_MIN;
            for (int i = 0; i < n; ++i)
                if (!is_zero(v[i])) {
                    if (deg == INT32_MIN) deg = A.V.degree(i);
                    if (A.V.degree(i) != deg)
                        throw InputError("splitting vector not degree homogeneous");
                }
            if (deg == INT32_MIN) throw InputError("splitting vector is zero");
            sp.abar.add("c" + std::to_string(cols.size() - 2), deg);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            if (i == A.unit) continue;
            Vec v = vec_zero(n);
            v[i] = 1;
            cols.push_back(v);
            sp.abar.add(A.V.name(i), A.V.degree(i));
        }
    }
    if (static_cast<int>(cols.size()) != n)
        throw InputError("splitting does not have complementary dimension");
    SparseMat P = SparseMat::from_columns(cols, n);
    /* invert P column by column; failure means the splitting is degenerate */
    SparseMat Pinv(n, n);
    for (int j = 0; j < n; ++j) {
        Vec e = vec_zero(n);
        e[j] = 1;
        auto sol = solve_linear(P, e);
        if (!sol.consistent || !sol.kernel.empty())
            throw InputError("splitting is not complementary to the unit");
        for (int i = 0; i < n; ++i)
            if (!is_zero(sol.particular[i])) Pinv.set(i, j, sol.particular[i]);
    }
    sp.iota = SparseMat(n, n - 1);
    for (int j = 0; j < n - 1; ++j)
        for (int i = 0; i < n; ++i) {
            const Rat& v = P.get(i, j + 1);
            if (!is_zero(v)) sp.iota.set(i, j, v);
        }
    sp.proj_abar = SparseMat(n - 1, n);
    sp.proj_unit = SparseMat(1, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n - 1; ++i) {
            const Rat& v = Pinv.get(i + 1, j);
            if (!is_zero(v)) sp.proj_abar.set(i, j, v);
        }
        const Rat& u = Pinv.get(0, j);
        if (!is_zero(u)) sp.proj_unit.set(0, j, u);
    }
    return sp;
}

WeightGradedCoalgebra bar_unital(const DgAlgebra& A, UnitalFlavor flavor, int W) {
    if (!A.unital) throw InputError("bar_unital expects a unital algebra");
    if (flavor == UnitalFlavor::Commutative && !A.commutative)
        throw InputError("Harrison quotient requires commutativity");
    if (W < 1) throw InputError("bar_unital: W must be >= 1");
    UnitalSplitting sp = make_splitting(A);
    const int m = sp.abar.dim();
    Alphabet al;
    al.letters = sp.abar;
    al.sdeg.resize(m);
    for (int i = 0; i < m; ++i) al.sdeg[i] = sp.abar.degree(i) + 1;
    /* projected differential and its unit component */
    std::vector<Rat> tau(m, Rat(0));
    al.d = LinMap(-1, m, m);
    for (int j = 0; j < m; ++j) {
        Vec aj = vec_zero(A.V.dim());
        for (int i = 0; i < A.V.dim(); ++i) aj[i] = sp.iota.get(i, j);
        Vec dj = A.d.m.apply(aj);
        Vec bar = sp.proj_abar.apply(dj);
        for (int i = 0; i < m; ++i)
            if (!is_zero(bar[i])) al.d.m.set(i, j, bar[i]);
        tau[j] = sp.proj_unit.apply(dj)[0];
    }
    /* projected product and its unit component */
    std::map<std::pair<int, int>, Rat> kappa;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            Vec va = vec_zero(A.V.dim()), vb = vec_zero(A.V.dim());
            for (int i = 0; i < A.V.dim(); ++i) {
                va[i] = sp.iota.get(i, a);
                vb[i] = sp.iota.get(i, b);
            }
            Vec prod = A.mul_vec(va, vb);
            Vec bar = sp.proj_abar.apply(prod);
            std::map<int, Rat> entry;
            for (int i = 0; i < m; ++i)
                if (!is_zero(bar[i])) entry[i] = bar[i];
            al.mul.set(a, b, std::move(entry));
            Rat k = sp.proj_unit.apply(prod)[0];
            if (!is_zero(k)) kappa[{a, b}] = k;
        }
    WeightGradedCoalgebra C = flavor == UnitalFlavor::Associative
                                  ? build_bar_ass(al, W, true, tau, kappa)
                                  : build_bar_com(al, W, true, tau, kappa);
    C.splitting = sp;
    return C;
}

std::vector<LinMap> harrison_projection(const WeightGradedCoalgebra& ba,
                                        const WeightGradedCoalgebra& bcom) {
    if (ba.W != bcom.W) throw InputError("harrison_projection: truncation mismatch");
    if (ba.kind != WeightGradedCoalgebra::Kind::Coass &&
        ba.kind != WeightGradedCoalgebra::Kind::CurvedCoass)
        throw InputError("harrison_projection: first argument must be a bar construction");
    if (!bcom.lie_kind())
        throw InputError("harrison_projection: second argument must be a Harrison bar");
    std::vector<LinMap> p;
    for (int w = 1; w <= ba.W; ++w) {
        if (ba.wordspaces[w - 1].dim() != bcom.pi[w - 1].m.cols)
            throw InputError("harrison_projection: incompatible bar constructions");
        p.push_back(bcom.pi[w - 1]);
    }
    return p;
}

CobarAlgebra cobar_ass(const WeightGradedCoalgebra& C, int W) {
    if (C.kind != WeightGradedCoalgebra::Kind::Coass &&
        C.kind != WeightGradedCoalgebra::Kind::CoCom)
        throw InputError("cobar_ass expects a coassociative (or cocommutative) source");
    if (W > C.W) throw InputError("cobar_ass: requested weight exceeds source truncation");
    /* sanity: coproduct tables must be weight-additive within W */
    for (int w = 1; w <= W; ++w)
        for (const auto& terms : C.cop[w - 1])
            for (const auto& [u, j, k, c] : terms) {
                (void)j;
                (void)k;
                (void)c;
                if (u < 1 || u > w - 1)
                    throw TruncationError("cobar_ass: differential escapes at weight " +
                                          std::to_string(w));
            }

    /* generators: s^{-1} of every basis element of every weight <= W */
    struct Gen {
        int w, i, deg;
    };
    std::vector<Gen> gens;
    for (int w = 1; w <= W; ++w)
        for (int i = 0; i < C.dim_w(w); ++i)
            gens.push_back({w, i, C.comp[w - 1].degree(i) - 1});
    auto gen_index = [&](int w, int i) {
        for (size_t g = 0; g < gens.size(); ++g)
            if (gens[g].w == w && gens[g].i == i) return static_cast<int>(g);
        throw InputError("cobar_ass: generator not found");
    };

    /* words of generators with total weight <= W, nonempty */
    std::vector<Word> words;
    std::map<Word, int> index;
    std::vector<int> wweight;
    auto rec = [&](auto&& self, Word& cur, int wt) -> void {
        if (!cur.empty()) {
            index[cur] = static_cast<int>(words.size());
            words.push_back(cur);
            wweight.push_back(wt);
        }
        for (size_t g = 0; g < gens.size(); ++g) {
            if (wt + gens[g].w > W) continue;
            cur.push_back(static_cast<int>(g));
            self(self, cur, wt + gens[g].w);
            cur.pop_back();
        }
    };
    Word cur;
    rec(rec, cur, 0);

    CobarAlgebra out;
    for (size_t i = 0; i < words.size(); ++i) {
        std::ostringstream nm;
        int deg = 0;
        for (size_t p = 0; p < words[i].size(); ++p) {
            if (p) nm << ".";
            nm << "w" << gens[words[i][p]].w << ":"
               << C.comp[gens[words[i][p]].w - 1].name(gens[words[i][p]].i);
            deg += gens[words[i][p]].deg;
        }
        out.A.V.add(nm.str(), deg);
        out.weight.push_back(wweight[i]);
    }
    /* product: concatenation, zero past the weight cap (quotient algebra) */
    for (size_t a = 0; a < words.size(); ++a)
        for (size_t b = 0; b < words.size(); ++b) {
            if (wweight[a] + wweight[b] > W) continue;
            Word ab(words[a]);
            ab.insert(ab.end(), words[b].begin(), words[b].end());
            out.A.mul.set(static_cast<int>(a), static_cast<int>(b),
                          {{index.at(ab), Rat(1)}});
        }
    /* differential: d(s^{-1}x) = -s^{-1}(d0 x + d1 x)
     *                + sum (-1)^{|x1|} s^{-1}x1 . s^{-1}x2, derivation extension */
    const int N = static_cast<int>(words.size());
    out.A.d = LinMap(-1, N, N);
    std::vector<std::map<int, Rat>> dgen(gens.size());
    for (size_t g = 0; g < gens.size(); ++g) {
        const int w = gens[g].w, i = gens[g].i;
        for (int t = 0; t < C.dim_w(w); ++t) {
            const Rat& c = C.d0[w - 1].m.get(t, i);
            if (!is_zero(c)) dgen[g][index.at({gen_index(w, t)})] += -c;
        }
        if (w >= 2)
            for (int t = 0; t < C.dim_w(w - 1); ++t) {
                const Rat& c = C.d1[w - 1].m.get(t, i);
                if (!is_zero(c)) dgen[g][index.at({gen_index(w - 1, t)})] += -c;
            }
        for (const auto& [u, j, k, c] : C.cop[w - 1][i]) {
            int sign = (C.comp[u - 1].degree(j) & 1) ? -1 : 1;
            Word pair = {gen_index(u, j), gen_index(w - u, k)};
            dgen[g][index.at(pair)] += Rat(sign) * c;
        }
    }
    for (int a = 0; a < N; ++a) {
        const Word& w = words[a];
        int prefix = 0;
        for (size_t slot = 0; slot < w.size(); ++slot) {
            int sign = (prefix & 1) ? -1 : 1;
            for (const auto& [target_word_idx, c] : dgen[w[slot]]) {
                /* splice the target word of d(gen) into the slot */
                const Word& tw = words[target_word_idx];
                Word w2;
                w2.insert(w2.end(), w.begin(), w.begin() + slot);
                w2.insert(w2.end(), tw.begin(), tw.end());
                w2.insert(w2.end(), w.begin() + slot + 1, w.end());
                int wt = 0;
                for (int g : w2) wt += gens[g].w;
                if (wt > W) continue;  // cannot happen: d preserves weight
                out.A.d.m.add_to(index.at(w2), a, Rat(sign) * c);
            }
            prefix += gens[w[slot]].deg;
        }
    }
    return out;
}

namespace {

/* Chevalley-Eilenberg suspended bracket: ell_s(sx (x) sy) = (-1)^{|sx|} s[x,y]. */
WeightGradedCoalgebra build_bar_lie(const DgLieAlgebra& g, int W) {
    WeightGradedCoalgebra C;
    C.kind = WeightGradedCoalgebra::Kind::CoCom;
    C.W = W;
    const int n = g.V.dim();
    std::vector<int> sdeg(n);
    for (int i = 0; i < n; ++i) sdeg[i] = g.V.degree(i) + 1;
    C.sletter_deg = sdeg;
    std::vector<SymWordSpace> spaces;
    for (int w = 1; w <= W; ++w) {
        SymWordSpace ss = sym_words(sdeg, w);
        GradedVectorSpace V;
        for (int i = 0; i < ss.dim(); ++i)
            V.add(word_name(g.V, ss.words[i], '<', '>'), ss.degree[i]);
        C.comp.push_back(V);
        spaces.push_back(std::move(ss));
    }
    for (int w = 1; w <= W; ++w) {
        const SymWordSpace& ss = spaces[w - 1];
        LinMap d0(-1, ss.dim(), ss.dim());
        for (int j = 0; j < ss.dim(); ++j) {
            const Word& word = ss.words[j];
            int prefix = 0;
            for (size_t slot = 0; slot < word.size(); ++slot) {
                int sign = (prefix & 1) ? -1 : 1;
                for (int t = 0; t < n; ++t) {
                    const Rat& c = g.d.m.get(t, word[slot]);
                    if (is_zero(c)) continue;
                    Word w2(word);
                    w2[slot] = t;
                    auto [idx, s2] = sym_normalize(sdeg, ss, w2);
                    if (s2 == 0) continue;
                    d0.m.add_to(idx, j, Rat(-sign * s2) * c);
                }
                prefix += sdeg[word[slot]];
            }
        }
        C.d0.push_back(d0);

        if (w == 1) {
            C.d1.push_back(LinMap(-1, 0, ss.dim()));
        } else {
            const SymWordSpace& dst = spaces[w - 2];
            LinMap d1(-1, dst.dim(), ss.dim());
            for (int j = 0; j < ss.dim(); ++j) {
                const Word& word = ss.words[j];
                const int L = static_cast<int>(word.size());
                for (int a = 0; a < L; ++a)
                    for (int b = a + 1; b < L; ++b) {
                        /* Koszul sign to pull slots a, b to the front */
                        int sgn = 1;
                        for (int k = 0; k < a; ++k)
                            sgn *= koszul_pow(sdeg[word[k]], sdeg[word[a]]);
                        for (int k = 0; k < b; ++k)
                            if (k != a) sgn *= koszul_pow(sdeg[word[k]], sdeg[word[b]]);
                        const auto* br = g.br.find(word[a], word[b]);
                        if (!br) continue;
                        int ms = (sdeg[word[a]] & 1) ? -1 : 1;
                        for (const auto& [t, c] : *br) {
                            Word w2;
                            w2.push_back(t);
                            for (int k = 0; k < L; ++k)
                                if (k != a && k != b) w2.push_back(word[k]);
                            auto [idx, s2] = sym_normalize(sdeg, dst, w2);
                            if (s2 == 0) continue;
                            d1.m.add_to(idx, j, Rat(sgn * ms * s2) * c);
                        }
                    }
            }
            C.d1.push_back(d1);
        }
        /* unshuffle coproduct over position subsets */
        std::vector<std::vector<std::tuple<int, int, int, Rat>>> table(ss.dim());
        for (int i = 0; i < ss.dim(); ++i) {
            const Word& word = ss.words[i];
            const int L = static_cast<int>(word.size());
            for (int mask = 1; mask < (1 << L) - 1; ++mask) {
                Word pre, suf;
                int sgn = 1;
                /* sign: for each picked slot, letters of unpicked slots before it */
                for (int p = 0; p < L; ++p) {
                    if (mask & (1 << p)) {
                        for (int q = 0; q < p; ++q)
                            if (!(mask & (1 << q)))
                                sgn *= koszul_pow(sdeg[word[q]], sdeg[word[p]]);
                        pre.push_back(word[p]);
                    } else {
                        suf.push_back(word[p]);
                    }
                }
                int u = static_cast<int>(pre.size());
                auto [jdx, s1] = sym_normalize(sdeg, spaces[u - 1], pre);
                auto [kdx, s2] = sym_normalize(sdeg, spaces[w - u - 1], suf);
                if (s1 == 0 || s2 == 0) continue;  // subsequences are sorted: never zero
                table[i].push_back({u, jdx, kdx, Rat(sgn * s1 * s2)});
            }
        }
        /* merge duplicate entries */
        for (auto& terms : table) {
            std::map<std::tuple<int, int, int>, Rat> acc;
            for (const auto& [u, j, k, c] : terms) acc[{u, j, k}] += c;
            terms.clear();
            for (const auto& [key, c] : acc)
                if (!is_zero(c))
                    terms.push_back(
                        {std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
        }
        C.cop.push_back(std::move(table));
    }
    C.theta.resize(W);
    return C;
}

}  // namespace

WeightGradedCoalgebra bar_lie(const DgLieAlgebra& g, int W) {
    if (W < 1) throw InputError("bar_lie: W must be >= 1");
    return build_bar_lie(g, W);
}

AxiomReport check_weighted(const WeightGradedCoalgebra& C) {
    AxiomReport rep;
    using K = WeightGradedCoalgebra::Kind;
    for (int w = 1; w <= C.W; ++w) {
        check_degrees(C.comp[w - 1], C.comp[w - 1], C.d0[w - 1], "d0");
        if (w >= 2) check_degrees(C.comp[w - 1], C.comp[w - 2], C.d1[w - 1], "d1");
        for (int i = 0; i < C.dim_w(w); ++i)
            for (const auto& [u, j, k, c] : C.cop[w - 1][i]) {
                (void)c;
                if (u < 1 || u > w - 1 || j >= C.dim_w(u) || k >= C.dim_w(w - u))
                    rep.violations.push_back(
                        {"weight additivity", {C.comp[w - 1].name(i)}, ""});
                else if (C.comp[u - 1].degree(j) + C.comp[w - u - 1].degree(k) !=
                         C.comp[w - 1].degree(i))
                    rep.violations.push_back(
                        {"coproduct degree", {C.comp[w - 1].name(i)}, ""});
            }
    }
    /* curvature placement */
    for (size_t wi = 0; wi < C.theta.size(); ++wi)
        for (const auto& [i, v] : C.theta[wi]) {
            (void)v;
            if (wi >= 2)
                rep.violations.push_back({"curvature weight", {}, "supported above weight 2"});
            else if (C.comp[wi].degree(i) != 2)
                rep.violations.push_back({"curvature degree", {C.comp[wi].name(i)}, ""});
        }
    /* d^2 = curvature identity, weight by weight */
    for (int w = 1; w <= C.W; ++w) {
        const int dim = C.dim_w(w);
        for (int i = 0; i < dim; ++i) {
            /* d(d x) collected per output weight */
            std::map<std::pair<int, int>, Rat> dd;  // (weight, index) -> coeff
            auto add_d_of = [&](int ww, int idx, const Rat& c) {
                for (int t = 0; t < C.dim_w(ww); ++t) {
                    const Rat& v = C.d0[ww - 1].m.get(t, idx);
                    if (!is_zero(v)) {
                        dd[{ww, t}] += c * v;
                        if (is_zero(dd[{ww, t}])) dd.erase({ww, t});
                    }
                }
                if (ww >= 2)
                    for (int t = 0; t < C.dim_w(ww - 1); ++t) {
                        const Rat& v = C.d1[ww - 1].m.get(t, idx);
                        if (!is_zero(v)) {
                            dd[{ww - 1, t}] += c * v;
                            if (is_zero(dd[{ww - 1, t}])) dd.erase({ww - 1, t});
                        }
                    }
            };
            for (int t = 0; t < dim; ++t) {
                const Rat& v = C.d0[w - 1].m.get(t, i);
                if (!is_zero(v)) add_d_of(w, t, v);
            }
            if (w >= 2)
                for (int t = 0; t < C.dim_w(w - 1); ++t) {
                    const Rat& v = C.d1[w - 1].m.get(t, i);
                    if (!is_zero(v)) add_d_of(w - 1, t, v);
                }
            /* curvature side */
            std::map<std::pair<int, int>, Rat> cv;
            if (C.curved()) {
                for (const auto& [u, j, k, c] : C.cop[w - 1][i]) {
                    const Rat tl = C.theta_of(u, j);
                    if (!is_zero(tl)) {
                        cv[{w - u, k}] += tl * c;
                        if (is_zero(cv[{w - u, k}])) cv.erase({w - u, k});
                    }
                    if (!C.lie_kind()) {
                        const Rat tr = C.theta_of(w - u, k);
                        if (!is_zero(tr)) {
                            cv[{u, j}] -= tr * c;
                            if (is_zero(cv[{u, j}])) cv.erase({u, j});
                        }
                    }
                }
            }
            if (dd != cv)
                rep.violations.push_back({C.curved() ? "curvature identity" : "d^2 = 0",
                                          {C.comp[w - 1].name(i)},
                                          "weight " + std::to_string(w)});
        }
    }
    /* coassociativity / co-Jacobi; cocommutativity / co-antisymmetry */
    for (int w = 1; w <= C.W; ++w) {
        for (int i = 0; i < C.dim_w(w); ++i) {
            if (C.kind == K::Coass || C.kind == K::CurvedCoass || C.kind == K::CoCom) {
                std::map<std::tuple<int, int, int, int, int>, Rat> lhs, rhs;
                for (const auto& [u, j, k, c] : C.cop[w - 1][i]) {
                    for (const auto& [u2, j2, k2, c2] : C.cop[u - 1][j])
                        lhs[{u2, j2, u - u2, k2, k}] += c * c2;  // (x1, x2, x3 = k at w-u)
                    for (const auto& [u2, j2, k2, c2] : C.cop[w - u - 1][k])
                        rhs[{u, j, u2, j2, k2}] += c * c2;
                }
                /* keys: (wt1, i1, wt2, i2, i3) with wt3 implied; normalize shape */
                std::map<std::tuple<int, int, int, int, int>, Rat> L2, R2;
                for (const auto& [key, c] : lhs)
                    if (!is_zero(c)) L2[key] = c;
                for (const auto& [key, c] : rhs)
                    if (!is_zero(c)) R2[key] = c;
                if (L2 != R2)
                    rep.violations.push_back({"coassociativity", {C.comp[w - 1].name(i)}, ""});
                if (C.kind == K::CoCom) {
                    std::map<std::tuple<int, int, int>, Rat> a, b;
                    for (const auto& [u, j, k, c] : C.cop[w - 1][i]) {
                        a[{u, j, k}] += c;
                        int sign = koszul_pow(C.comp[u - 1].degree(j),
                                              C.comp[w - u - 1].degree(k));
                        b[{w - u, k, j}] += Rat(sign) * c;
                    }
                    for (auto* mp : {&a, &b})
                        for (auto it = mp->begin(); it != mp->end();)
                            it = is_zero(it->second) ? mp->erase(it) : std::next(it);
                    if (a != b)
                        rep.violations.push_back(
                            {"cocommutativity", {C.comp[w - 1].name(i)}, ""});
                }
            } else {
                /* co-antisymmetry */
                std::map<std::tuple<int, int, int>, Rat> acc;
                for (const auto& [u, j, k, c] : C.cop[w - 1][i]) {
                    acc[{u, j, k}] += c;
                    int sign = koszul_pow(C.comp[u - 1].degree(j),
                                          C.comp[w - u - 1].degree(k));
                    acc[{w - u, k, j}] += Rat(sign) * c;
                }
                for (auto it = acc.begin(); it != acc.end();)
                    it = is_zero(it->second) ? acc.erase(it) : std::next(it);
                if (!acc.empty())
                    rep.violations.push_back({"co-antisymmetry", {C.comp[w - 1].name(i)}, ""});
                /* co-Jacobi */
                std::map<std::tuple<int, int, int, int, int>, Rat> jac;
                for (const auto& [u, j, k, c] : C.cop[w - 1][i])
                    for (const auto& [u2, j2, k2, c2] : C.cop[u - 1][j]) {
                        Rat v = c * c2;
                        int w1 = u2, w2 = u - u2, w3 = w - u;
                        int d1 = C.comp[w1 - 1].degree(j2);
                        int d2 = C.comp[w2 - 1].degree(k2);
                        int d3 = C.comp[w3 - 1].degree(k);
                        jac[{w1, j2, w2, k2, k}] += v;
                        jac[{w2, k2, w3, k, j2}] += Rat(koszul_pow(d1, d2 + d3)) * v;
                        jac[{w3, k, w1, j2, k2}] += Rat(koszul_pow(d1 + d2, d3)) * v;
                    }
                for (auto it = jac.begin(); it != jac.end();)
                    it = is_zero(it->second) ? jac.erase(it) : std::next(it);
                if (!jac.empty())
                    rep.violations.push_back({"co-Jacobi", {C.comp[w - 1].name(i)}, ""});
            }
        }
    }
    return rep;
}

}  // namespace barmc
