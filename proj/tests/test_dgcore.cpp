#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barmc/dgcore.hpp"

using namespace barmc;

namespace {

DgAlgebra square_zero_one_dim() {
    DgAlgebra A;
    A.V.add("x", 0);
    A.d = LinMap(-1, 1, 1);
    return A;  // x*x = 0
}

/* K + K*u with |u| = 1, du = 0, u^2 = 0; unital commutative. */
DgAlgebra ku_algebra() {
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

CurvedLieAlgebra heisenberg_odd() {
    /* x, y in degree -1, z = [x,y] in degree -2, class 2 nilpotent */
    DgLieAlgebra g;
    g.V.add("x", -1);
    g.V.add("y", -1);
    g.V.add("z", -2);
    g.d = LinMap(-1, 3, 3);
    g.br.set(0, 1, {{2, Rat(1)}});
    g.br.set(1, 0, {{2, Rat(1)}});  // [y,x] = -(-1)^{1*1}[x,y] = [x,y]
    return as_curved(g, {1, 1, 2});
}

}  // namespace

TEST_CASE("zero algebra passes all axioms") {
    DgAlgebra A = square_zero_one_dim();
    CHECK(check_axioms(A).ok());
}

TEST_CASE("planted associativity defect is witnessed") {
    DgAlgebra A;
    A.V.add("a", 0);
    A.V.add("b", 0);
    A.V.add("c", 0);
    A.d = LinMap(-1, 3, 3);
    /* a*(b*c) != (a*b)*c: set b*c = c, a*c = c, a*b = 0 */
    A.mul.set(1, 2, {{2, Rat(1)}});
    A.mul.set(0, 2, {{2, Rat(1)}});
    auto rep = check_axioms(A);
    REQUIRE(!rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.identity == "associativity" &&
            v.witness == std::vector<std::string>{"a", "b", "c"})
            found = true;
    CHECK(found);
}

TEST_CASE("curved algebra with theta = 0 and d^2 != 0 reports curvature identity") {
    CurvedLieAlgebra g;
    g.V.add("p", 1);
    g.V.add("q", 0);
    g.V.add("r", -1);
    g.d = LinMap(-1, 3, 3);
    g.d.m.set(1, 0, Rat(1));  // d p = q
    g.d.m.set(2, 1, Rat(1));  // d q = r
    g.theta = vec_zero(3);
    auto rep = check_axioms(g);
    REQUIRE(!rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.identity.find("curvature identity") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("sl2 bracket passes Lie axioms") {
    DgLieAlgebra g;
    g.V.add("e", 0);
    g.V.add("f", 0);
    g.V.add("h", 0);
    g.d = LinMap(-1, 3, 3);
    g.br.set(0, 1, {{2, Rat(1)}});   // [e,f] = h
    g.br.set(1, 0, {{2, Rat(-1)}});
    g.br.set(2, 0, {{0, Rat(2)}});   // [h,e] = 2e
    g.br.set(0, 2, {{0, Rat(-2)}});
    g.br.set(2, 1, {{1, Rat(-2)}});  // [h,f] = -2f
    g.br.set(1, 2, {{1, Rat(2)}});
    CHECK(check_axioms(g).ok());
    /* plant a Jacobi defect */
    g.br.set(2, 0, {{0, Rat(3)}});
    g.br.set(0, 2, {{0, Rat(-3)}});
    auto rep = check_axioms(g);
    CHECK(!rep.ok());
}

TEST_CASE("homology of K + Ku with zero differential") {
    DgAlgebra A = ku_algebra();
    auto h = homology_of(A.V, A.d);
    CHECK(h.at(0).dimension == 1);
    CHECK(h.at(1).dimension == 1);
}

TEST_CASE("homology of acyclic two-term complex") {
    GradedVectorSpace V;
    V.add("v", 1);
    V.add("w", 0);
    LinMap d(-1, 2, 2);
    d.m.set(1, 0, Rat(1));
    auto h = homology_of(V, d);
    CHECK(h.at(0).dimension == 0);
    CHECK(h.at(1).dimension == 0);
}

TEST_CASE("homology of 6-dim degree-0 space with zero differential") {
    GradedVectorSpace V;
    for (auto n : {"1", "x", "y", "x2", "xy", "y2"}) V.add(n, 0);
    LinMap d(-1, 6, 6);
    auto h = homology_of(V, d);
    CHECK(h.at(0).dimension == 6);
}

TEST_CASE("homology invariant under basis relabeling") {
    GradedVectorSpace V;
    V.add("v", 1);
    V.add("w", 0);
    V.add("s", 0);
    LinMap d(-1, 3, 3);
    d.m.set(1, 0, Rat(1));
    auto h1 = homology_of(V, d);
    GradedVectorSpace V2;
    V2.add("s", 0);
    V2.add("v", 1);
    V2.add("w", 0);
    LinMap d2(-1, 3, 3);
    d2.m.set(2, 1, Rat(1));
    auto h2 = homology_of(V2, d2);
    CHECK(h1.at(0).dimension == h2.at(0).dimension);
    CHECK(h1.at(1).dimension == h2.at(1).dimension);
}

TEST_CASE("homology_of rejects non-complexes") {
    GradedVectorSpace V;
    V.add("a", 2);
    V.add("b", 1);
    V.add("c", 0);
    LinMap d(-1, 3, 3);
    d.m.set(1, 0, Rat(1));
    d.m.set(2, 1, Rat(1));  // d^2 a = c != 0
    CHECK_THROWS_AS(homology_of(V, d), NotAComplex);
}

TEST_CASE("twist by zero leaves the algebra unchanged") {
    CurvedLieAlgebra g = heisenberg_odd();
    REQUIRE(check_axioms(g).ok());
    CurvedLieAlgebra t = twist(g, vec_zero(3));
    CHECK(lm_equal(t.d, g.d));
    CHECK(t.theta == g.theta);
}

TEST_CASE("twice twisting equals twisting by the sum") {
    CurvedLieAlgebra g = heisenberg_odd();
    for (int t1 = -2; t1 <= 2; ++t1)
        for (int t2 = -2; t2 <= 2; ++t2) {
            Vec a = {Rat(t1), Rat(t2), Rat(0)};
            Vec b = {Rat(t2), Rat(-t1), Rat(0)};
            CurvedLieAlgebra lhs = twist(twist(g, a), b);
            CurvedLieAlgebra rhs = twist(g, vec_add(a, b));
            CHECK(lm_equal(lhs.d, rhs.d));
            CHECK(lhs.theta == rhs.theta);
        }
}

TEST_CASE("twisting by a Maurer-Cartan element yields a flat dg Lie algebra") {
    CurvedLieAlgebra g = heisenberg_odd();
    /* alpha = x satisfies [x,x] = 0, d = 0, theta = 0 */
    Vec alpha = {Rat(1), Rat(0), Rat(0)};
    Vec mc = vec_add(g.d.m.apply(alpha), vec_scale(frac(1, 2), g.br_vec(alpha, alpha)));
    REQUIRE(vec_is_zero(mc));
    CurvedLieAlgebra t = twist(g, alpha);
    CHECK(vec_is_zero(t.theta));
    CHECK(check_axioms(t).ok());
    CHECK((t.d.m * t.d.m).is_zero());
}

TEST_CASE("twist rejects wrong degrees") {
    CurvedLieAlgebra g = heisenberg_odd();
    Vec bad = {Rat(0), Rat(0), Rat(1)};  // z has degree -2
    CHECK_THROWS_AS(twist(g, bad), InputError);
}

TEST_CASE("coassociative coalgebra checks") {
    /* dual of K[x]/(x^3), reduced: cop(e2) = e1 (x) e1 */
    DgCoalgebra C;
    C.V.add("e1", 0);
    C.V.add("e2", 0);
    C.d = LinMap(-1, 2, 2);
    C.cop.resize(2);
    C.cop[1].push_back({0, 0, Rat(1)});
    CHECK(check_axioms(C).ok());
    /* break coassociativity */
    DgCoalgebra Cbad = C;
    Cbad.cop[1].clear();
    Cbad.cop[1].push_back({0, 1, Rat(1)});
    auto rep = check_axioms(Cbad);
    CHECK(!rep.ok());
}

TEST_CASE("Lie coalgebra checks") {
    DgLieCoalgebra L;
    L.V.add("a", 0);
    L.V.add("b", 0);
    L.V.add("c", 0);
    L.d = LinMap(-1, 3, 3);
    L.cobr.resize(3);
    /* delta(c) = a (x) b - b (x) a (both even, sign -1) */
    L.cobr[2].push_back({0, 1, Rat(1)});
    L.cobr[2].push_back({1, 0, Rat(-1)});
    CHECK(check_axioms(L).ok());
    DgLieCoalgebra Lbad = L;
    Lbad.cobr[2].clear();
    Lbad.cobr[2].push_back({0, 1, Rat(1)});  // not co-antisymmetric
    CHECK(!check_axioms(Lbad).ok());
}
