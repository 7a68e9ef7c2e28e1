#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barmc/faithful.hpp"

using namespace barmc;

TEST_CASE("cobar of B_Lie matches the reduced enveloping algebra homology") {
    DgLieAlgebra g;
    g.V.add("x", 1);
    g.d = LinMap(-1, 1, 1);
    auto C = bar_lie(g, 4);
    auto Om = cobar_ass(C, 4);
    auto H = homology_of(Om.A.V, Om.A.d);
    /* U g = Lambda(x), reduced part: one class in degree 1 */
    auto U = enveloping_algebra(g, 4);
    std::map<int, int> u_red_dims;
    for (int i = 0; i < U.V.dim(); ++i)
        if (i != U.unit) u_red_dims[U.V.degree(i)] += 1;
    CHECK(u_red_dims == std::map<int, int>{{1, 1}});
    for (const auto& [deg, h] : H) {
        int want = u_red_dims.count(deg) ? u_red_dims.at(deg) : 0;
        CHECK(h.dimension == want);
    }
}

TEST_CASE("PBW monomial dims equal symmetric power dims for random Lie algebras") {
    Rng rng(101);
    int done = 0;
    for (int t = 0; t < 10 && done < 5; ++t) {
        DgLieAlgebra g = random_dgla(rng, 3, 1, 2);
        if (!check_axioms(g).ok()) continue;
        auto U = enveloping_algebra(g, 4);
        /* independent count: multisets of basis elements, odd squarefree */
        std::vector<int> deg;
        for (int i = 0; i < g.V.dim(); ++i) deg.push_back(g.V.degree(i));
        std::map<int, int> want;
        std::function<void(size_t, int)> rec = [&](size_t i, int len) {
            if (i == deg.size()) {
                want[len] += 1;
                return;
            }
            int maxrep = (deg[i] & 1) ? 1 : 4;
            for (int r = 0; r <= maxrep; ++r) {
                if (len + r > 4) break;
                rec(i + 1, len + r);
            }
        };
        rec(0, 0);
        std::map<int, int> got;
        for (int i = 0; i < U.V.dim(); ++i) got[U.length_of(i)] += 1;
        CHECK(got == want);
        CHECK(verify_enveloping_contract(build_enveloping_retraction(g, g, 2, 4)).ok());
        ++done;
    }
    CHECK(done >= 5);
}

TEST_CASE("convolution-level module identity for the enveloping retraction") {
    DgLieAlgebra gl;
    gl.V.add("x", 1);
    gl.d = LinMap(-1, 1, 1);
    DgLieAlgebra hl;
    hl.V.add("a", 1);
    hl.V.add("z", 2);
    hl.d = LinMap(-1, 2, 2);
    hl.br.set(0, 0, {{1, Rat(2)}});
    auto R = build_enveloping_retraction(gl, hl, 3, 6);
    /* r([i(x), y]) = [x, r(y)] on basis cells through weight 3 */
    const auto& T = R.h.target_space();
    const auto& TU = R.g.target_space();
    for (int wu = 1; wu <= 2; ++wu)
        for (int c = 0; c < R.h.comp_space(wu).dim(); ++c)
            for (int t = 0; t < T.dim(); ++t) {
                ConvElem x = R.h.zero(T.degree(t) - R.h.comp_space(wu).degree(c));
                x.comp[wu - 1].m.set(t, c, Rat(1));
                for (int wv = 1; wv + wu <= 3; ++wv)
                    for (int c2 = 0; c2 < R.g.comp_space(wv).dim(); ++c2)
                        for (int t2 = 0; t2 < TU.dim(); ++t2) {
                            /* keep products within the length cap */
                            if (R.U.length_of(t2) + 1 > R.U.T) continue;
                            ConvElem y =
                                R.g.zero(TU.degree(t2) - R.g.comp_space(wv).degree(c2));
                            y.comp[wv - 1].m.set(t2, c2, Rat(1));
                            ConvElem lhs = R.r(R.g.bracket(R.i(x), y));
                            ConvElem rhs = R.h.bracket(x, R.r(y));
                            CHECK(R.h.equal(lhs, rhs));
                        }
            }
}

TEST_CASE("i is a strict morphism into the enveloping convolution algebra") {
    DgLieAlgebra gl;
    gl.V.add("x", 1);
    gl.V.add("y", 2);
    gl.d = LinMap(-1, 2, 2);
    gl.br.set(0, 0, {{1, Rat(1)}});
    DgLieAlgebra hl;
    hl.V.add("a", 1);
    hl.V.add("z", 2);
    hl.d = LinMap(-1, 2, 2);
    hl.d.m.set(0, 1, Rat(0));
    hl.br.set(0, 0, {{1, Rat(2)}});
    auto R = build_enveloping_retraction(gl, hl, 3, 6);
    const auto& T = R.h.target_space();
    std::vector<ConvElem> cells;
    std::vector<int> cw;
    for (int w = 1; w <= 2; ++w)
        for (int c = 0; c < R.h.comp_space(w).dim(); ++c)
            for (int t = 0; t < T.dim(); ++t) {
                ConvElem e = R.h.zero(T.degree(t) - R.h.comp_space(w).degree(c));
                e.comp[w - 1].m.set(t, c, Rat(1));
                cells.push_back(e);
                cw.push_back(w);
            }
    for (size_t a = 0; a < cells.size(); ++a) {
        CHECK(R.g.equal(R.g.diff(R.i(cells[a])), R.i(R.h.diff(cells[a]))));
        for (size_t b = 0; b < cells.size(); ++b) {
            if (cw[a] + cw[b] > 3) continue;
            ConvElem lhs = R.i(R.h.bracket(cells[a], cells[b]));
            ConvElem rhs = R.g.bracket(R.i(cells[a]), R.i(cells[b]));
            CHECK(R.g.equal(lhs, rhs));
        }
    }
}

TEST_CASE("escape alarms fire when the cap is unsound") {
    DgLieAlgebra gl;
    gl.V.add("x", 1);
    gl.d = LinMap(-1, 1, 1);
    DgLieAlgebra hl;
    hl.V.add("a", 1);
    hl.V.add("z", 2);
    hl.d = LinMap(-1, 2, 2);
    hl.br.set(0, 0, {{1, Rat(2)}});
    auto R = build_enveloping_retraction(gl, hl, 3, 1);  // T = 1: too small
    Rng rng(2);
    bool alarmed = false;
    try {
        for (int t = 0; t < 5 && !alarmed; ++t) {
            auto pair = synthesize_enveloping_pair(R, rng);
            (void)pair;
        }
    } catch (const TruncationError&) {
        alarmed = true;
    }
    CHECK(alarmed);
}

TEST_CASE("uc_compare holds on random commutative algebras") {
    Rng rng(77);
    int done = 0;
    for (int t = 0; t < 10 && done < 5; ++t) {
        DgAlgebra A = random_commutative_dga(rng, 2, -1, 2);
        if (!check_axioms(A).ok()) continue;
        auto rep = uc_compare(A, 4);
        CHECK(rep.ok);
        ++done;
    }
    CHECK(done >= 5);
}
