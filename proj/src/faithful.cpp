#include "barmc/faithful.hpp"

#include <algorithm>
#include <sstream>

namespace barmc {

ConvElem ConvRetraction::i(const ConvElem& f) const {
    ConvElem r = g.zero(f.degree);
    for (int w = 1; w <= g.W(); ++w) r.comp[w - 1] = lm_compose(f.comp[w - 1], bars.p[w - 1]);
    return r;
}

ConvElem ConvRetraction::r(const ConvElem& f) const {
    ConvElem out = h.zero(f.degree);
    for (int w = 1; w <= h.W(); ++w)
        out.comp[w - 1] = lm_compose(f.comp[w - 1], bars.s[w - 1]);
    return out;
}

std::function<ConvElem(const ConvElem&)> ConvRetraction::i_fn() const {
    return [this](const ConvElem& f) { return i(f); };
}

std::function<ConvElem(const ConvElem&)> ConvRetraction::r_fn() const {
    return [this](const ConvElem& f) { return r(f); };
}

ConvRetraction build_convolution_retraction(const DgAlgebra& A, const DgAlgebra& Aprime,
                                            int W) {
    if (!Aprime.commutative)
        throw InputError("convolution retraction requires a commutative target");
    if (A.unital != Aprime.unital)
        throw InputError("source and target must both be unital or both non-unital");
    ConvRetraction R;
    R.bars = build_bar_retraction(A, W);
    R.h = ConvolutionLie::build(R.bars.bcom, Aprime, W);
    R.g = ConvolutionLie::build(R.bars.ba, Aprime, W);
    return R;
}

namespace {

/* The comodule identity (pi (x) id)(Delta - tau Delta) s = (id (x) s) delta,
 * which is exactly the module-map property of r on the convolution side. */
bool comodule_equivariance(const BarRetraction& R, int W, std::string* what) {
    for (int w = 2; w <= W; ++w)
        for (int q = 0; q < R.bcom.dim_w(w); ++q) {
            std::map<std::tuple<int, int, int>, Rat> lhs, rhs;
            for (int t = 0; t < R.ba.dim_w(w); ++t) {
                const Rat& c = R.s[w - 1].m.get(t, q);
                if (is_zero(c)) continue;
                const Word& word = R.ba.wordspaces[w - 1].words[t];
                for (int u = 1; u <= w - 1; ++u) {
                    int v = w - u;
                    Word pre(word.begin(), word.begin() + u);
                    Word suf(word.begin() + u, word.end());
                    int pidx = R.ba.wordspaces[u - 1].index.at(pre);
                    int sidx = R.ba.wordspaces[v - 1].index.at(suf);
                    int dpre = word_degree(R.ba.sletter_deg, pre);
                    int dsuf = word_degree(R.ba.sletter_deg, suf);
                    for (int j = 0; j < R.bcom.dim_w(u); ++j) {
                        const Rat& pj = R.bcom.pi[u - 1].m.get(j, pidx);
                        if (!is_zero(pj)) lhs[{u, j, sidx}] += c * pj;
                    }
                    for (int j = 0; j < R.bcom.dim_w(v); ++j) {
                        const Rat& pj = R.bcom.pi[v - 1].m.get(j, sidx);
                        if (!is_zero(pj))
                            lhs[{v, j, pidx}] -= Rat(koszul_pow(dpre, dsuf)) * c * pj;
                    }
                }
            }
            for (const auto& [u, j, k, c] : R.bcom.cop[w - 1][q])
                for (int t = 0; t < R.ba.dim_w(w - u); ++t) {
                    const Rat& sc = R.s[w - u - 1].m.get(t, k);
                    if (!is_zero(sc)) rhs[{u, j, t}] += c * sc;
                }
            for (auto* m : {&lhs, &rhs})
                for (auto it = m->begin(); it != m->end();)
                    it = is_zero(it->second) ? m->erase(it) : std::next(it);
            if (lhs != rhs) {
                if (what)
                    *what = "module identity (comodule equivariance of s) at weight " +
                            std::to_string(w) + ", class " + R.bcom.comp[w - 1].name(q);
                return false;
            }
        }
    return true;
}

ContractReport verify_retraction_core(const BarRetraction& bars, const ConvolutionLie& h,
                                      const ConvolutionLie& g) {
    ContractReport rep;
    const int W = h.W();
    /* p o s = id, weightwise */
    for (int w = 1; w <= W; ++w) {
        LinMap ps = lm_compose(bars.p[w - 1], bars.s[w - 1]);
        if (!(ps.m == SparseMat::identity(bars.bcom.dim_w(w))))
            rep.violations.push_back("r o i = id fails at weight " + std::to_string(w));
    }
    /* s and p chain maps (this makes r and i chain maps on hom spaces) */
    for (int w = 1; w <= W; ++w) {
        if (!lm_equal(lm_compose(bars.ba.d0[w - 1], bars.s[w - 1]),
                      lm_compose(bars.s[w - 1], bars.bcom.d0[w - 1])))
            rep.violations.push_back("chain map (s, d0) fails at weight " + std::to_string(w));
        if (w >= 2 && !lm_equal(lm_compose(bars.ba.d1[w - 1], bars.s[w - 1]),
                                lm_compose(bars.s[w - 2], bars.bcom.d1[w - 1])))
            rep.violations.push_back("chain map (s, d1) fails at weight " + std::to_string(w));
        if (!lm_equal(lm_compose(bars.p[w - 1], bars.ba.d0[w - 1]),
                      lm_compose(bars.bcom.d0[w - 1], bars.p[w - 1])))
            rep.violations.push_back("chain map (p, d0) fails at weight " + std::to_string(w));
        if (w >= 2 && !lm_equal(lm_compose(bars.p[w - 2], bars.ba.d1[w - 1]),
                                lm_compose(bars.bcom.d1[w - 1], bars.p[w - 1])))
            rep.violations.push_back("chain map (p, d1) fails at weight " + std::to_string(w));
    }
    /* filtration preservation is structural (weightwise maps); record a rank
     * sanity check: s injective, p surjective */
    for (int w = 1; w <= W; ++w) {
        if (rank_of(bars.s[w - 1].m) != bars.bcom.dim_w(w))
            rep.violations.push_back("section rank fails at weight " + std::to_string(w));
        if (rank_of(bars.p[w - 1].m) != bars.bcom.dim_w(w))
            rep.violations.push_back("projection rank fails at weight " + std::to_string(w));
    }
    /* module identity: exhaustive tensor form */
    std::string what;
    if (!comodule_equivariance(bars, W, &what)) rep.violations.push_back(what);
    /* curvature compatibility for curved bars */
    if (bars.ba.curved()) {
        for (int w = 1; w <= std::min(2, W); ++w) {
            for (int q = 0; q < bars.bcom.dim_w(w); ++q) {
                Rat via_s(0);
                for (int t = 0; t < bars.ba.dim_w(w); ++t) {
                    const Rat& c = bars.s[w - 1].m.get(t, q);
                    if (!is_zero(c)) via_s += c * bars.ba.theta_of(w, t);
                }
                if (via_s != bars.bcom.theta_of(w, q))
                    rep.violations.push_back("curvature compatibility fails at weight " +
                                             std::to_string(w));
            }
        }
    }
    /* convolution-level spot checks of the module identity and strictness of i,
     * on low-weight basis cells */
    {
        auto i_of = [&](const ConvElem& f) {
            ConvElem r = g.zero(f.degree);
            for (int w = 1; w <= W; ++w) r.comp[w - 1] = lm_compose(f.comp[w - 1], bars.p[w - 1]);
            return r;
        };
        auto r_of = [&](const ConvElem& f) {
            ConvElem r = h.zero(f.degree);
            for (int w = 1; w <= W; ++w) r.comp[w - 1] = lm_compose(f.comp[w - 1], bars.s[w - 1]);
            return r;
        };
        const auto& T = h.target_space();
        std::vector<ConvElem> hcells, gcells;
        std::vector<int> hw, gw;
        for (int w = 1; w <= W; ++w) {
            for (int c = 0; c < h.comp_space(w).dim(); ++c)
                for (int t = 0; t < T.dim(); ++t) {
                    ConvElem e = h.zero(T.degree(t) - h.comp_space(w).degree(c));
                    e.comp[w - 1].m.set(t, c, Rat(1));
                    hcells.push_back(e);
                    hw.push_back(w);
                }
            for (int c = 0; c < g.comp_space(w).dim(); ++c)
                for (int t = 0; t < T.dim(); ++t) {
                    ConvElem e = g.zero(T.degree(t) - g.comp_space(w).degree(c));
                    e.comp[w - 1].m.set(t, c, Rat(1));
                    gcells.push_back(e);
                    gw.push_back(w);
                }
        }
        for (size_t a = 0; a < hcells.size(); ++a) {
            /* strictness of i: brackets and differentials commute with i */
            ConvElem di = g.diff(i_of(hcells[a]));
            ConvElem id = i_of(h.diff(hcells[a]));
            if (!g.equal(di, id))
                rep.violations.push_back("i fails to be a chain map");
            for (size_t b = 0; b < hcells.size(); ++b) {
                if (hw[a] + hw[b] > W) continue;
                ConvElem lhs = i_of(h.bracket(hcells[a], hcells[b]));
                ConvElem rhs = g.bracket(i_of(hcells[a]), i_of(hcells[b]));
                if (!g.equal(lhs, rhs))
                    rep.violations.push_back("i fails to be a Lie morphism");
            }
        }
        for (size_t a = 0; a < hcells.size(); ++a)
            for (size_t b = 0; b < gcells.size(); ++b) {
                if (hw[a] + gw[b] > W) continue;
                ConvElem lhs = r_of(g.bracket(i_of(hcells[a]), gcells[b]));
                ConvElem rhs = h.bracket(hcells[a], r_of(gcells[b]));
                if (!h.equal(lhs, rhs))
                    rep.violations.push_back("module identity fails on convolution cells");
            }
        /* r chain map */
        for (size_t b = 0; b < gcells.size(); ++b) {
            ConvElem dr = h.diff(r_of(gcells[b]));
            ConvElem rd = r_of(g.diff(gcells[b]));
            if (!h.equal(dr, rd)) rep.violations.push_back("r fails to be a chain map");
        }
    }
    /* deduplicate */
    std::sort(rep.violations.begin(), rep.violations.end());
    rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end()),
                         rep.violations.end());
    return rep;
}

}  // namespace

ContractReport verify_retraction_contract(const ConvRetraction& R) {
    return verify_retraction_core(R.bars, R.h, R.g);
}

ContractReport verify_retraction_contract(const DgAlgebra& A, const DgAlgebra& Aprime,
                                          int W) {
    return verify_retraction_contract(build_convolution_retraction(A, Aprime, W));
}

ContractReport verify_retraction_contract_tampered(const DgAlgebra& A,
                                                   const DgAlgebra& Aprime, int W) {
    ConvRetraction R = build_convolution_retraction(A, Aprime, W);
    /* replace the weight-2 section by a non-section: add a shuffle-span vector */
    if (W >= 2 && R.bars.bcom.dim_w(2) > 0 && R.bars.ba.dim_w(2) > 1) {
        /* perturb s_2 by something outside its image: a multiple of a word
         * that the projection does not kill */
        R.bars.s[1].m.add_to(0, 0, Rat(1));
    }
    return verify_retraction_core(R.bars, R.h, R.g);
}

GaugeLiftResult faithfulness_witness(const ConvRetraction& R, const ConvElem& f,
                                     const ConvElem& g, const ConvElem& witness,
                                     int budget) {
    if (!R.h.is_mc(f) || !R.h.is_mc(g))
        throw InputError("faithfulness_witness: morphisms fail the Maurer-Cartan check");
    auto hypothesis = [&R]() {
        ContractReport rep = verify_retraction_contract(R);
        return rep.ok() ? std::string{} : rep.violations.front();
    };
    return gauge_lift(R.h, R.g, R.i_fn(), R.r_fn(), f, g, witness, budget, hypothesis);
}

GaugeLiftResult unital_faithfulness_witness(const ConvRetraction& R, const ConvElem& f,
                                            const ConvElem& g, const ConvElem& witness,
                                            int budget) {
    if (!R.h.curved())
        throw InputError("unital_faithfulness_witness expects curved convolution algebras");
    if (!R.h.is_mc(f) || !R.h.is_mc(g))
        throw InputError("unital_faithfulness_witness: morphisms fail the curved MC check");
    /* twist both sides at f; the twisted algebras are flat */
    ConvolutionLie h_tw = R.h.twisted_by(f);
    ConvolutionLie g_tw = R.g.twisted_by(R.i(f));
    if (!h_tw.curvature().is_zero() || !g_tw.curvature().is_zero())
        throw StageError("unital_faithfulness_witness: twisted algebra is not flat");
    ConvElem x = h_tw.zero(-1);
    ConvElem xp = R.h.sub(g, f);
    auto i_fn = R.i_fn();
    auto r_fn = R.r_fn();
    auto hypothesis = [&R]() {
        ContractReport rep = verify_retraction_contract(R);
        return rep.ok() ? std::string{} : rep.violations.front();
    };
    GaugeLiftResult res =
        gauge_lift(h_tw, g_tw, i_fn, r_fn, x, xp, witness, budget, hypothesis);
    /* verify back in the curved algebra */
    if (!R.h.equal(R.h.gauge_act(res.mu, f), g))
        throw StageError("unital_faithfulness_witness: curved verification failed");
    return res;
}

ConvElem EnvelopingRetraction::i(const ConvElem& f) const {
    ConvElem out = g.zero(f.degree);
    for (int w = 1; w <= g.W(); ++w) {
        LinMap incl(0, U.V.dim(), hl.V.dim());
        for (int x = 0; x < hl.V.dim(); ++x) incl.m.set(U.index.at({x}), x, Rat(1));
        out.comp[w - 1] = lm_compose(incl, f.comp[w - 1]);
    }
    return out;
}

ConvElem EnvelopingRetraction::r(const ConvElem& f) const {
    ConvElem out = h.zero(f.degree);
    for (int w = 1; w <= h.W(); ++w) out.comp[w - 1] = lm_compose(rU, f.comp[w - 1]);
    return out;
}

EnvelopingRetraction build_enveloping_retraction(const DgLieAlgebra& gl,
                                                 const DgLieAlgebra& hl, int W, int T) {
    EnvelopingRetraction R;
    R.gl = gl;
    R.hl = hl;
    R.U = enveloping_algebra(hl, T);
    R.rU = primitive_projection(R.U);
    WeightGradedCoalgebra blie = bar_lie(gl, W);
    R.h = ConvolutionLie::build_lie_target(blie, hl, W);
    ConvolutionLie g = ConvolutionLie::build(blie, R.U.as_dg_algebra(), W);
    g.set_target_overflow(R.U.overflow);
    R.g = std::move(g);
    return R;
}

ContractReport verify_enveloping_contract(const EnvelopingRetraction& R) {
    ContractReport rep;
    const int n = R.hl.V.dim();
    /* r_U o iota = id */
    for (int x = 0; x < n; ++x) {
        Vec v = vec_zero(R.U.V.dim());
        v[R.U.index.at({x})] = 1;
        Vec rx = R.rU.m.apply(v);
        Vec want = vec_zero(n);
        want[x] = 1;
        if (rx != want) rep.violations.push_back("r_U o iota != id");
    }
    /* r_U kills the unit */
    {
        Vec v = vec_zero(R.U.V.dim());
        v[R.U.unit] = 1;
        if (!vec_is_zero(R.rU.m.apply(v)))
            rep.violations.push_back("r_U does not kill the unit");
    }
    /* r_U chain map */
    {
        LinMap lhs = lm_compose(R.hl.d, R.rU);
        LinMap rhs = lm_compose(R.rU, R.U.d);
        if (!lm_equal(lhs, rhs)) rep.violations.push_back("r_U fails to be a chain map");
    }
    /* adjoint equivariance where the cap allows */
    DgAlgebra UA = R.U.as_dg_algebra();
    for (int x = 0; x < n; ++x) {
        int xg = R.U.index.at({x});
        for (int u = 0; u < R.U.V.dim(); ++u) {
            if (R.U.length_of(u) + 1 > R.U.T) continue;
            Vec xu = UA.mul_vec(UA.basis_vec(xg), UA.basis_vec(u));
            Vec ux = UA.mul_vec(UA.basis_vec(u), UA.basis_vec(xg));
            int sign = koszul_pow(R.hl.V.degree(x), R.U.V.degree(u));
            Vec ad = vec_sub(xu, vec_scale(Rat(sign), ux));
            Vec lhs = R.rU.m.apply(ad);
            Vec rhs = R.hl.br_vec(R.hl.basis_vec(x), R.rU.m.apply(UA.basis_vec(u)));
            if (lhs != rhs) {
                rep.violations.push_back("r_U fails adjoint equivariance");
                break;
            }
        }
    }
    return rep;
}

GaugeLiftResult enveloping_faithfulness_witness(const EnvelopingRetraction& R,
                                                const ConvElem& f, const ConvElem& g,
                                                const ConvElem& witness, int budget) {
    auto hypothesis = [&R]() {
        ContractReport rep = verify_enveloping_contract(R);
        return rep.ok() ? std::string{} : rep.violations.front();
    };
    auto i_fn = [&R](const ConvElem& e) { return R.i(e); };
    auto r_fn = [&R](const ConvElem& e) { return R.r(e); };
    return gauge_lift(R.h, R.g, i_fn, r_fn, f, g, witness, budget, hypothesis);
}

PolyFormsLine poly_forms_line(int D) {
    if (D < 1) throw InputError("poly_forms_line: D must be >= 1");
    PolyFormsLine P;
    P.D = D;
    for (int k = 0; k <= D; ++k)
        P.A.V.add(k == 0 ? "1" : "t^" + std::to_string(k), 0);
    for (int k = 0; k <= D - 1; ++k)
        P.A.V.add(k == 0 ? "dt" : "t^" + std::to_string(k) + ".dt", -1);
    const int n = P.A.V.dim();
    P.A.d = LinMap(-1, n, n);
    for (int k = 1; k <= D; ++k) P.A.d.m.set(P.t_pow_dt(k - 1), P.t_pow(k), Rat(k));
    for (int a = 0; a <= D; ++a)
        for (int b = 0; b <= D; ++b) {
            if (a + b <= D)
                P.A.mul.set(P.t_pow(a), P.t_pow(b), {{P.t_pow(a + b), Rat(1)}});
            else
                P.overflow.insert({P.t_pow(a), P.t_pow(b)});
        }
    for (int a = 0; a <= D; ++a)
        for (int b = 0; b <= D - 1; ++b) {
            if (a + b <= D - 1) {
                P.A.mul.set(P.t_pow(a), P.t_pow_dt(b), {{P.t_pow_dt(a + b), Rat(1)}});
                P.A.mul.set(P.t_pow_dt(b), P.t_pow(a), {{P.t_pow_dt(a + b), Rat(1)}});
            } else {
                P.overflow.insert({P.t_pow(a), P.t_pow_dt(b)});
                P.overflow.insert({P.t_pow_dt(b), P.t_pow(a)});
            }
        }
    P.A.unital = true;
    P.A.unit = 0;
    P.A.commutative = true;
    return P;
}

namespace {

struct EndpointData {
    /* cycles of A' (x) Omega in a fixed degree, and the endpoint-difference
     * subspace ev1 - ev0 inside the cycles of A' */
    int z_dim = 0;        // cycles of A' in this degree
    RowBasis reach;       // endpoint differences, in A'-degree-slice coords

    EndpointData() : reach(0) {}
};

/* degree-n part of A' (x) Omega_D: pairs (a, omega) with deg a + deg omega = n */
EndpointData endpoint_data(const DgAlgebra& Ap, int D, int n) {
    PolyFormsLine P = poly_forms_line(D);
    DgAlgebra T = tensor_dga(Ap, P.A);
    const int np = Ap.V.dim();
    auto idx = [&](int a, int o) { return a * P.A.V.dim() + o; };
    /* slice of degree n */
    std::vector<int> slice;
    for (int a = 0; a < np; ++a)
        for (int o = 0; o < P.A.V.dim(); ++o)
            if (Ap.V.degree(a) + P.A.V.degree(o) == n) slice.push_back(idx(a, o));
    std::vector<int> below;
    for (int a = 0; a < np; ++a)
        for (int o = 0; o < P.A.V.dim(); ++o)
            if (Ap.V.degree(a) + P.A.V.degree(o) == n - 1) below.push_back(idx(a, o));
    std::map<int, int> below_pos;
    for (size_t i = 0; i < below.size(); ++i) below_pos[below[i]] = static_cast<int>(i);
    SparseMat d(static_cast<int>(below.size()), static_cast<int>(slice.size()));
    for (size_t j = 0; j < slice.size(); ++j)
        for (const auto& [i, pos] : below_pos) {
            const Rat& c = T.d.m.get(i, slice[j]);
            if (!is_zero(c)) d.add_to(pos, static_cast<int>(j), c);
        }
    auto ker = kernel_basis(d);

    /* evaluations at t = 0, 1: t^k -> (k == 0 ? 1 : t-value), dt-terms -> 0 */
    auto eval = [&](const Vec& cycle, bool at_one) {
        Vec out = vec_zero(np);
        for (size_t j = 0; j < slice.size(); ++j) {
            if (is_zero(cycle[j])) continue;
            int a = slice[j] / P.A.V.dim();
            int o = slice[j] % P.A.V.dim();
            if (o <= P.D) {  // a t-power
                if (at_one || o == 0) out[a] += cycle[j];
            }
        }
        return out;
    };

    /* cycles of A' itself in degree n (for the classification) */
    EndpointData E;
    std::vector<int> ap_slice = Ap.V.in_degree(n);
    std::vector<int> ap_below = Ap.V.in_degree(n - 1);
    SparseMat dA(static_cast<int>(ap_below.size()), static_cast<int>(ap_slice.size()));
    for (size_t j = 0; j < ap_slice.size(); ++j)
        for (size_t i = 0; i < ap_below.size(); ++i) {
            const Rat& c = Ap.d.m.get(ap_below[i], ap_slice[j]);
            if (!is_zero(c)) dA.add_to(static_cast<int>(i), static_cast<int>(j), c);
        }
    E.z_dim = static_cast<int>(kernel_basis(dA).size());
    /* endpoint differences projected to the degree-n slice coordinates of A' */
    E.reach = RowBasis(static_cast<int>(ap_slice.size()));
    std::map<int, int> ap_pos;
    for (size_t i = 0; i < ap_slice.size(); ++i) ap_pos[ap_slice[i]] = static_cast<int>(i);
    for (const auto& k : ker) {
        Vec diff = vec_sub(eval(k, true), eval(k, false));
        Vec row = vec_zero(static_cast<int>(ap_slice.size()));
        bool nonzero = false;
        for (int a = 0; a < np; ++a) {
            if (is_zero(diff[a])) continue;
            row[ap_pos.at(a)] = diff[a];
            nonzero = true;
        }
        if (nonzero) E.reach.insert(row);
    }
    return E;
}

}  // namespace

Example14Report example_1_4(const DgAlgebra& Aprime, int D) {
    if (!Aprime.unital || !Aprime.commutative)
        throw InputError("example_1_4 requires a unital commutative algebra");
    if (!check_axioms(Aprime).ok()) throw InputError("example_1_4: algebra fails its axioms");
    Example14Report rep;
    auto H = homology_of(Aprime.V, Aprime.d);
    rep.h0 = H.count(0) ? H.at(0).dimension : 0;
    rep.h1 = H.count(1) ? H.at(1).dimension : 0;

    EndpointData e0 = endpoint_data(Aprime, D, 0);
    EndpointData e1 = endpoint_data(Aprime, D, 1);
    rep.z0 = e0.z_dim;
    rep.z1 = e1.z_dim;
    rep.reach0 = e0.reach.rank();
    rep.reach1 = e1.reach.rank();
    rep.commutative_params = 2 * (rep.z0 - rep.reach0);
    rep.associative_params = 2 * (rep.z0 - rep.reach0) + (rep.z1 - rep.reach1);
    /* the comparison (X, Y) -> (X, Y, 0) is injective: the associative-side
     * relation restricted to the first two coordinates is the commutative one */
    rep.injective = true;
    rep.surjective = (rep.z1 - rep.reach1) == 0;
    /* homotopy classification must reproduce homology */
    if (rep.z0 - rep.reach0 != rep.h0 || rep.z1 - rep.reach1 != rep.h1)
        throw StageError("example_1_4: classification disagrees with homology");
    /* stabilization */
    EndpointData f0 = endpoint_data(Aprime, D + 1, 0);
    EndpointData f1 = endpoint_data(Aprime, D + 1, 1);
    rep.stable = f0.reach.rank() == e0.reach.rank() && f1.reach.rank() == e1.reach.rank() &&
                 f0.z_dim == e0.z_dim && f1.z_dim == e1.z_dim;
    std::ostringstream os;
    os << rep.commutative_params << " vs " << rep.associative_params << "; "
       << (rep.injective ? "injective" : "not injective") << ", "
       << (rep.surjective ? "surjective" : "not surjective");
    rep.verdict = os.str();
    return rep;
}

SplitInjectivityReport homology_split_injectivity(const ConvRetraction& R,
                                                  const ConvElem& alpha,
                                                  std::optional<std::pair<int, int>> window) {
    SplitInjectivityReport rep;
    ConvElem ia = R.i(alpha);
    TwistedHomologyReport hh = twisted_homology(R.h, alpha, window);
    TwistedHomologyReport gg = twisted_homology(R.g, ia, window);
    ConvolutionLie g_tw = R.g.twisted_by(ia);
    /* boundary images of the g-side twisted complex per degree */
    for (const auto& [deg, reps] : hh.reps) {
        int dim_h = hh.total.at(deg);
        int dim_g = gg.total.count(deg) ? gg.total.at(deg) : 0;
        const auto& gcells = gg.cells.count(deg) ? gg.cells.at(deg)
                                                 : std::vector<std::tuple<int, int, int>>{};
        std::map<std::tuple<int, int, int>, int> gpos;
        for (size_t i = 0; i < gcells.size(); ++i) gpos[gcells[i]] = static_cast<int>(i);
        /* image of the twisted boundary from degree + 1 */
        RowBasis image(static_cast<int>(gcells.size()));
        if (gg.cells.count(deg + 1)) {
            for (const auto& [w, c, t] : gg.cells.at(deg + 1)) {
                ConvElem e = R.g.zero(deg + 1);
                e.comp[w - 1].m.set(t, c, Rat(1));
                ConvElem de = g_tw.diff(e);
                Vec row = vec_zero(static_cast<int>(gcells.size()));
                for (int ww = 1; ww <= R.g.W(); ++ww)
                    for (int cc = 0; cc < R.g.comp_space(ww).dim(); ++cc)
                        for (int t2 = 0; t2 < R.g.target_space().dim(); ++t2) {
                            const Rat& v = de.comp[ww - 1].m.get(t2, cc);
                            if (is_zero(v)) continue;
                            auto it = gpos.find({ww, cc, t2});
                            if (it != gpos.end()) row[it->second] = v;
                        }
                image.insert(row);
            }
        }
        /* map h-classes through i and check independence modulo boundaries */
        RowBasis classes = image;
        bool injective = true, split = true;
        const auto& hcells = hh.cells.at(deg);
        for (const auto& rvec : reps) {
            ConvElem e = R.h.zero(deg);
            for (size_t i = 0; i < hcells.size(); ++i) {
                if (is_zero(rvec[i])) continue;
                auto [w, c, t] = hcells[i];
                e.comp[w - 1].m.add_to(t, c, rvec[i]);
            }
            ConvElem ie = R.i(e);
            Vec row = vec_zero(static_cast<int>(gcells.size()));
            for (int ww = 1; ww <= R.g.W(); ++ww)
                for (int cc = 0; cc < R.g.comp_space(ww).dim(); ++cc)
                    for (int t2 = 0; t2 < R.g.target_space().dim(); ++t2) {
                        const Rat& v = ie.comp[ww - 1].m.get(t2, cc);
                        if (is_zero(v)) continue;
                        auto it = gpos.find({ww, cc, t2});
                        if (it != gpos.end()) row[it->second] = v;
                    }
            if (!classes.insert(row)) injective = false;
            /* splitting: r(i(rep)) = rep on the nose */
            if (!R.h.equal(R.r(ie), e)) split = false;
        }
        rep.per_degree[deg] = {dim_h, dim_g, injective, split};
        if (!injective || !split) rep.ok = false;
        if (dim_h > dim_g) rep.ok = false;
    }
    return rep;
}

namespace {

/* Draw mu0 a few times, preferring gauges that actually move f. */
template <typename IFn>
std::optional<SynthesizedPair> synthesize_core(const ConvolutionLie& h,
                                               const ConvolutionLie& gbig, IFn&& i_of,
                                               Rng& rng) {
    auto f = random_mc(h, rng);
    if (!f) return std::nullopt;
    ConvElem mu0 = h.zero(0);
    ConvElem g = *f;
    for (int attempt = 0; attempt < 6; ++attempt) {
        ConvElem cand = random_gauge(h, rng);
        ConvElem moved = h.gauge_act(cand, *f);
        mu0 = cand;
        g = moved;
        if (!h.equal(moved, *f)) break;
    }
    ConvElem ig = i_of(g);
    ConvElem rho = random_stabilizer_gauge(gbig, ig, rng);
    ConvElem witness = gbig.bch(rho, i_of(mu0));
    SynthesizedPair out{*f, g, witness};
    if (!gbig.equal(gbig.gauge_act(witness, i_of(*f)), ig)) return std::nullopt;
    return out;
}

}  // namespace

std::optional<SynthesizedPair> synthesize_pair(const ConvRetraction& R, Rng& rng) {
    return synthesize_core(R.h, R.g, [&R](const ConvElem& e) { return R.i(e); }, rng);
}

std::optional<SynthesizedPair> synthesize_enveloping_pair(const EnvelopingRetraction& R,
                                                          Rng& rng) {
    return synthesize_core(R.h, R.g, [&R](const ConvElem& e) { return R.i(e); }, rng);
}

}  // namespace barmc
