#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barmc/conv.hpp"
#include "barmc/gen.hpp"
#include "barmc/pbw.hpp"

using namespace barmc;

namespace {

DgAlgebra sq_line() {
    DgAlgebra A;
    A.V.add("x", 0);
    A.d = LinMap(-1, 1, 1);
    A.commutative = true;
    return A;
}

DgAlgebra ku_target() {
    DgAlgebra A;
    A.V.add("1", 0);
    A.V.add("u", 1);
    A.d = LinMap(-1, 2, 2);
    A.mul.set(0, 0, {{0, Rat(1)}});
    A.mul.set(0, 1, {{1, Rat(1)}});
    A.mul.set(1, 0, {{1, Rat(1)}});
    A.unital = true;
    A.unit = 0;
    A.commutative = true;
    return A;
}

DgAlgebra reduced_ku() {
    /* non-unital: span{u}, |u| = 1, u^2 = 0 */
    DgAlgebra A;
    A.V.add("u", 1);
    A.d = LinMap(-1, 1, 1);
    A.commutative = true;
    return A;
}

DgAlgebra poly_with_d() {
    DgAlgebra A;
    A.V.add("x", 0);
    A.V.add("x2", 0);
    A.V.add("y", 1);
    A.d = LinMap(-1, 3, 3);
    A.d.m.set(1, 2, Rat(1));
    A.mul.set(0, 0, {{1, Rat(1)}});
    A.commutative = true;
    return A;
}

}  // namespace

TEST_CASE("convolution with zero coproduct source is abelian") {
    WeightGradedCoalgebra C;
    C.kind = WeightGradedCoalgebra::Kind::Coass;
    C.W = 2;
    GradedVectorSpace V1, V2;
    V1.add("a", 1);
    V2.add("b", 2);
    C.comp = {V1, V2};
    C.d0 = {LinMap(-1, 1, 1), LinMap(-1, 1, 1)};
    C.d1 = {LinMap(-1, 0, 1), LinMap(-1, 1, 1)};
    C.cop.resize(2);
    C.cop[0].resize(1);
    C.cop[1].resize(1);
    C.theta.resize(2);
    auto g = ConvolutionLie::build(C, ku_target(), 2, true);
    ConvElem f = g.zero(0), h = g.zero(-1);
    f.comp[0].m.set(1, 0, Rat(1));
    h.comp[0].m.set(0, 0, Rat(1));
    CHECK(g.bracket(f, h).is_zero());
}

TEST_CASE("weight-2 bracket against a hand-computed Sweedler term") {
    /* hom(B(sq_line), reduced K+Ku): alpha, beta weight-1 maps sx -> u.
     * Bracket on [x|x]: deconcatenation gives one term (sx)(x)(sx);
     * [f,g]([x|x]) = (-1)^{|g||sx|} f(sx) g(sx) - (-1)^{|f||g|} (-1)^{|f||sx|} g(sx) f(sx).
     * With f = g degree 0: = fg - gf = 0; with u^2 = 0 target both die: use
     * target with nonzero product instead. */
    auto BA = bar_ass(sq_line(), 2);
    DgAlgebra T;  // x, x2 truncated polynomial target
    T.V.add("t", 0);
    T.V.add("t2", 0);
    T.d = LinMap(-1, 2, 2);
    T.mul.set(0, 0, {{1, Rat(1)}});
    T.commutative = true;
    auto g = ConvolutionLie::build(BA, T, 2, true);
    ConvElem f = g.zero(-1);
    f.comp[0].m.set(0, 0, Rat(1));  // sx -> t, degree -1
    ConvElem br = g.bracket(f, f);
    /* [f,f]([x|x]) = (-1)^{(-1)(1)} t.t - (-1)^{(-1)(-1)}(-1)^{(-1)(1)} t.t = -t2 - t2 */
    CHECK(br.comp[1].m.get(1, 0) == Rat(-2));
    /* mc residual of f: d = 0 so residual = [f,f]/2 */
    ConvElem res = g.mc_residual(f);
    CHECK(res.comp[1].m.get(1, 0) == Rat(-1));
}

TEST_CASE("curved convolution from bar_unital of K[u]/u^2 has zero curvature value") {
    DgAlgebra A = ku_target();
    auto BU = bar_unital(A, UnitalFlavor::Commutative, 3);
    auto g = ConvolutionLie::build(BU, ku_target(), 3, true);
    CHECK(g.curvature().is_zero());
}

TEST_CASE("curved convolution with genuine curvature satisfies the curved axioms") {
    /* K x K: theta != 0 */
    Rng rng(7);
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
    auto BU = bar_unital(A, UnitalFlavor::Commutative, 3);
    auto g = ConvolutionLie::build(BU, A, 3, true);  // verify includes d^2 = [theta,-]
    CHECK(!g.curvature().is_zero());
    /* alpha = 0 residual = theta */
    ConvElem res = g.mc_residual(g.zero(-1));
    CHECK(g.equal(res, g.curvature()));
}

TEST_CASE("strict algebra maps induce Maurer-Cartan elements (unital, curved)") {
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        Rng rng(seed);
        DgAlgebra A = random_unital_commutative_dga(rng, 4);
        REQUIRE(check_axioms(A).ok());
        auto BU = bar_unital(A, UnitalFlavor::Commutative, 3);
        auto g = ConvolutionLie::build(BU, A, 3);
        /* identity map: alpha(s abar) = -iota(abar), supported in weight 1 */
        ConvElem alpha = g.zero(-1);
        const auto& sp = *BU.splitting;
        for (int c = 0; c < BU.dim_w(1); ++c)
            for (int t = 0; t < A.V.dim(); ++t) {
                const Rat& v = sp.iota.get(t, c);
                if (!is_zero(v)) alpha.comp[0].m.set(t, c, -v);
            }
        CHECK(g.is_mc(alpha));
        /* twisting by it kills the curvature */
        auto tw = g.twisted_by(alpha);
        CHECK(tw.curvature().is_zero());
    }
}

TEST_CASE("strict maps induce MC elements (non-unital)") {
    auto A = poly_with_d();
    auto BC = bar_com(A, 4);
    auto g = ConvolutionLie::build(BC, A, 4);
    ConvElem alpha = g.zero(-1);
    for (int c = 0; c < BC.dim_w(1); ++c) {
        /* weight-1 classes are the words [x_i]; alpha = -identity */
        alpha.comp[0].m.set(c, c, Rat(-1));
    }
    CHECK(g.is_mc(alpha));
}

TEST_CASE("mc_extend: zero algebra gives cycles; extensions re-check") {
    auto A = poly_with_d();
    auto BC = bar_com(A, 3);
    auto g = ConvolutionLie::build(BC, A, 3);
    Rng rng(42);
    for (int t = 0; t < 5; ++t) {
        auto alpha = random_mc(g, rng);
        REQUIRE(alpha.has_value());
        CHECK(g.is_mc(*alpha));
    }
}

TEST_CASE("gauge action preserves Maurer-Cartan exactly, curved included") {
    Rng rng(11);
    int good = 0;
    for (int t = 0; t < 20; ++t) {
        DgAlgebra A = random_commutative_dga(rng, 3, -1, 2);
        DgAlgebra B = random_commutative_dga(rng, 3, -1, 2);
        if (!check_axioms(A).ok() || !check_axioms(B).ok()) continue;
        auto BC = bar_com(A, 3);
        auto g = ConvolutionLie::build(BC, B, 3);
        auto alpha = random_mc(g, rng);
        if (!alpha) continue;
        ConvElem l = random_gauge(g, rng);
        ConvElem moved = g.gauge_act(l, *alpha);
        CHECK(g.is_mc(moved));
        ++good;
    }
    CHECK(good >= 10);
    /* curved case */
    for (uint64_t seed : {21u, 22u, 23u}) {
        Rng r2(seed);
        DgAlgebra A = random_unital_commutative_dga(r2, 4);
        auto BU = bar_unital(A, UnitalFlavor::Commutative, 3);
        auto g = ConvolutionLie::build(BU, A, 3);
        auto alpha = random_mc(g, r2);
        if (!alpha) continue;
        REQUIRE(g.is_mc(*alpha));
        ConvElem l = random_gauge(g, r2);
        CHECK(g.is_mc(g.gauge_act(l, *alpha)));
    }
}

TEST_CASE("central gauge with dl = 0 fixes every element") {
    /* abelian convolution algebra: everything brackets to zero and d = 0 */
    auto A = sq_line();
    auto BC = bar_com(A, 2);
    DgAlgebra T;
    T.V.add("t", 0);
    T.d = LinMap(-1, 1, 1);
    T.commutative = true;
    auto g = ConvolutionLie::build(BC, T, 2, true);
    ConvElem l = g.zero(0);
    l.comp[0].m.set(0, 0, Rat(3));  // wait: degree of cell (sx -> t) is -1... adjust below
    /* pick the degree-0 slice instead */
    l = g.zero(0);
    auto s = g.slice(1, 0);
    Vec x = vec_zero(static_cast<int>(s.cells.size()));
    for (auto& xi : x) xi = Rat(2);
    g.unflatten_into(l, x, s);
    ConvElem alpha = g.zero(-1);
    auto s2 = g.slice(1, -1);
    Vec y = vec_zero(static_cast<int>(s2.cells.size()));
    for (auto& yi : y) yi = Rat(1);
    g.unflatten_into(alpha, y, s2);
    CHECK(g.equal(g.gauge_act(l, alpha), alpha));
}

TEST_CASE("bch consistency: gauge composition and round trips") {
    Rng rng(5);
    auto A = poly_with_d();
    auto BC = bar_com(A, 4);
    auto g = ConvolutionLie::build(BC, A, 4);
    auto alpha = random_mc(g, rng);
    REQUIRE(alpha.has_value());
    for (int t = 0; t < 5; ++t) {
        ConvElem l1 = random_gauge(g, rng);
        ConvElem l2 = random_gauge(g, rng);
        ConvElem lhs = g.gauge_act(g.bch(l1, l2), *alpha);
        ConvElem rhs = g.gauge_act(l1, g.gauge_act(l2, *alpha));
        CHECK(g.equal(lhs, rhs));
        /* inverse round trip */
        ConvElem back = g.gauge_act(g.bch(g.scale(Rat(-1), l1), l1), *alpha);
        CHECK(g.equal(back, *alpha));
        ConvElem via = g.gauge_act(g.scale(Rat(-1), l1), g.gauge_act(l1, *alpha));
        CHECK(g.equal(via, *alpha));
    }
}

TEST_CASE("gauge_search: identity, synthesized, and planted obstruction") {
    Rng rng(9);
    auto A = poly_with_d();
    auto BC = bar_com(A, 4);
    auto g = ConvolutionLie::build(BC, A, 4);
    auto alpha = random_mc(g, rng);
    REQUIRE(alpha.has_value());
    /* identity */
    auto r0 = gauge_search(g, *alpha, *alpha, 1, 100);
    REQUIRE(std::holds_alternative<GaugeElement>(r0));
    CHECK(std::get<GaugeElement>(r0).is_zero());
    /* synthesized */
    for (int t = 0; t < 5; ++t) {
        ConvElem l = random_gauge(g, rng);
        ConvElem ap = g.gauge_act(l, *alpha);
        auto r = gauge_search(g, *alpha, ap, 1, 200);
        REQUIRE(std::holds_alternative<GaugeElement>(r));
        ConvElem found = std::get<GaugeElement>(r);
        CHECK(g.equal(g.gauge_act(found, *alpha), ap));
    }
}

TEST_CASE("gauge_search reports a proven obstruction at weight 1") {
    /* target K+Ku with du = 0: H_{-1}(gr^1) detects the difference u vs 0.
     * Build alpha = 0 and alpha' a weight-1 cycle that is not a boundary. */
    auto A = reduced_ku();          // sx' has degree 2
    auto BC = bar_com(A, 2);        // weight dims (1, 0)
    DgAlgebra T = ku_target();
    auto g = ConvolutionLie::build(BC, T, 2);
    ConvElem zero = g.zero(-1);
    ConvElem ap = g.zero(-1);
    /* cell: su -> u has degree 1 - 2 = -1: a valid MC candidate */
    ap.comp[0].m.set(1, 0, Rat(1));
    REQUIRE(g.is_mc(ap));  // brackets vanish (weight 2 empty), d = 0
    auto r = gauge_search(g, zero, ap, 1, 50);
    REQUIRE(std::holds_alternative<ObstructionReport>(r));
    const auto& rep = std::get<ObstructionReport>(r);
    CHECK(rep.weight == 1);
    CHECK(rep.proven);
    CHECK(!rep.inconclusive);
}

TEST_CASE("twisted homology: alpha = 0 gives untwisted homology") {
    auto A = poly_with_d();
    auto BC = bar_com(A, 3);
    auto g = ConvolutionLie::build(BC, A, 3);
    auto rep = twisted_homology(g, g.zero(-1));
    /* sanity: total dims match direct per-degree computation of the complex */
    int total = 0;
    for (const auto& [deg, d] : rep.total) total += d;
    CHECK(total >= 0);  // structural smoke plus exactness below
    /* graded pieces: sum over weights of gr dims >= total dims (spectral bound) */
    std::map<int, int> grsum;
    for (const auto& [wd, d] : rep.graded) grsum[wd.second] += d;
    for (const auto& [deg, d] : rep.total) CHECK(grsum[deg] >= d);
}

TEST_CASE("twisted homology rejects non-MC twists") {
    auto A = poly_with_d();
    auto BC = bar_com(A, 3);
    auto g = ConvolutionLie::build(BC, A, 3);
    ConvElem bad = g.zero(-1);
    auto s = g.slice(1, -1);
    if (!s.cells.empty()) {
        Vec x = vec_zero(static_cast<int>(s.cells.size()));
        x[0] = 1;
        g.unflatten_into(bad, x, s);
    }
    if (!g.is_mc(bad)) CHECK_THROWS_AS(twisted_homology(g, bad), InputError);
}

TEST_CASE("mc_extend linearity: doubling the unknown doubles the residual delta") {
    auto A = poly_with_d();
    auto BC = bar_com(A, 3);
    auto g = ConvolutionLie::build(BC, A, 3);
    Rng rng(3);
    auto alpha = random_mc(g, rng);
    REQUIRE(alpha.has_value());
    /* truncate alpha to weight 1, then perturb weight-2 component */
    ConvElem a1 = g.only_weight(*alpha, 1);
    ConvElem x = g.zero(-1);
    auto s = g.slice(2, -1);
    if (!s.cells.empty()) {
        Vec v = vec_zero(static_cast<int>(s.cells.size()));
        v[0] = 1;
        g.unflatten_into(x, v, s);
        ConvElem r0 = g.mc_residual(a1);
        ConvElem r1 = g.mc_residual(g.add(a1, x));
        ConvElem r2 = g.mc_residual(g.add(a1, g.scale(Rat(2), x)));
        ConvElem d1 = g.sub(r1, r0), d2 = g.sub(r2, r0);
        /* deltas live in weight 2 where the dependence is linear */
        CHECK(d2.comp[1].m == d1.comp[1].m.scaled(Rat(2)));
    }
}

TEST_CASE("filtration multiplicativity of the convolution bracket") {
    auto A = poly_with_d();
    auto BC = bar_com(A, 4);
    auto g = ConvolutionLie::build(BC, A, 4);
    Rng rng(17);
    for (int t = 0; t < 5; ++t) {
        ConvElem f = random_gauge(g, rng);
        ConvElem h = random_gauge(g, rng);
        for (int u = 1; u <= 4; ++u)
            for (int v = 1; v <= 4; ++v) {
                ConvElem fu = g.only_weight(f, u);
                ConvElem hv = g.only_weight(h, v);
                ConvElem br = g.bracket(fu, hv);
                for (int w = 1; w <= 4; ++w)
                    if (w != u + v) CHECK(br.comp[w - 1].is_zero());
            }
    }
}
