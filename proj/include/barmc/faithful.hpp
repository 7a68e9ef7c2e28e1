#pragma once

#include "barmc/conv.hpp"
#include "barmc/gen.hpp"
#include "barmc/pbw.hpp"

namespace barmc {

/* The paired convolution algebras h = hom(B_Com A, A') and g = hom(B A, A'),
 * with i(f) = f o p and r(f) = f o s. Curved variants when A is unital. */
struct ConvRetraction {
    BarRetraction bars;
    ConvolutionLie h, g;

    ConvElem i(const ConvElem& f) const;
    ConvElem r(const ConvElem& f) const;
    std::function<ConvElem(const ConvElem&)> i_fn() const;
    std::function<ConvElem(const ConvElem&)> r_fn() const;
};

ConvRetraction build_convolution_retraction(const DgAlgebra& A, const DgAlgebra& Aprime,
                                            int W);

struct ContractReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/* Exact checks on weight-homogeneous bases: r o i = id, both chain maps,
 * filtration preservation, the module identity r([i(x),y]) = [x, r(y)]
 * (verified as the coadjoint-coaction equivariance of the section plus
 * convolution-level spot identities), and strictness of i. */
ContractReport verify_retraction_contract(const ConvRetraction& R);
ContractReport verify_retraction_contract(const DgAlgebra& A, const DgAlgebra& Aprime, int W);

/* A planted-defect variant for negative controls: tamper with s before
 * verification. */
ContractReport verify_retraction_contract_tampered(const DgAlgebra& A,
                                                   const DgAlgebra& Aprime, int W);

/* Theorem: an A-infinity homotopy between C-infinity morphisms yields a
 * C-infinity homotopy. f, g are MC in h; witness is a gauge in g between
 * i(f) and i(g). Returns a verified gauge in h. */
GaugeLiftResult faithfulness_witness(const ConvRetraction& R, const ConvElem& f,
                                     const ConvElem& g, const ConvElem& witness,
                                     int budget = 2000);

/* Unital version: twist both curved algebras at f, lift, verify in the curved
 * algebra directly. */
GaugeLiftResult unital_faithfulness_witness(const ConvRetraction& R, const ConvElem& f,
                                            const ConvElem& g, const ConvElem& witness,
                                            int budget = 2000);

/* Enveloping-algebra side: h = hom(B_Lie gl, hl), g = hom(B_Lie gl, U hl). */
struct EnvelopingRetraction {
    DgLieAlgebra gl, hl;
    EnvelopingAlgebra U;
    LinMap rU;
    ConvolutionLie h, g;

    ConvElem i(const ConvElem& f) const;
    ConvElem r(const ConvElem& f) const;
};

EnvelopingRetraction build_enveloping_retraction(const DgLieAlgebra& gl,
                                                 const DgLieAlgebra& hl, int W, int T);

ContractReport verify_enveloping_contract(const EnvelopingRetraction& R);

GaugeLiftResult enveloping_faithfulness_witness(const EnvelopingRetraction& R,
                                                const ConvElem& f, const ConvElem& g,
                                                const ConvElem& witness, int budget = 2000);

/* Sullivan polynomial forms on the interval, truncated at t-degree D.
 * Degrees: t^k in 0, t^k dt in -1; d(t^k) = k t^{k-1} dt. */
struct PolyFormsLine {
    int D = 0;
    DgAlgebra A;           // unital commutative; products above the cap alarm
    std::set<std::pair<int, int>> overflow;

    int t_pow(int k) const { return k; }            // index of t^k
    int t_pow_dt(int k) const { return D + 1 + k; } // index of t^k dt
};

PolyFormsLine poly_forms_line(int D);

/* Evaluation at t = 0 and t = 1 as maps A' (x) Omega -> A'. */
struct Example14Report {
    int h0 = 0, h1 = 0;
    int z0 = 0, z1 = 0;             // cycle space dims in degrees 0 and 1
    int reach0 = 0, reach1 = 0;     // endpoint-difference subspace dims
    int commutative_params = 0;     // 2 * dim(Z0 / R0)
    int associative_params = 0;     // 2 * dim(Z0 / R0) + dim(Z1 / R1)
    bool injective = false;
    bool surjective = false;
    bool stable = false;            // results equal at D and D + 1
    std::string verdict;
};

Example14Report example_1_4(const DgAlgebra& Aprime, int D);

struct SplitInjectivityReport {
    bool ok = true;
    /* degree -> (dim H(h^a), dim H(g^ia), injective, split) */
    std::map<int, std::tuple<int, int, bool, bool>> per_degree;
    std::vector<std::string> notes;
};

SplitInjectivityReport homology_split_injectivity(const ConvRetraction& R,
                                                  const ConvElem& alpha,
                                                  std::optional<std::pair<int, int>> window = {});

/* Synthesis of instances whose witnesses exist by construction. */
struct SynthesizedPair {
    ConvElem f, g, witness;
};

std::optional<SynthesizedPair> synthesize_pair(const ConvRetraction& R, Rng& rng);
std::optional<SynthesizedPair> synthesize_enveloping_pair(const EnvelopingRetraction& R,
                                                          Rng& rng);

}  // namespace barmc
