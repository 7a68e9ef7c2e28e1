#pragma once

#include <functional>
#include <optional>
#include <set>
#include <variant>

#include "barmc/barcobar.hpp"

namespace barmc {

/* Element of a convolution algebra: a weight-indexed family of maps
 * C_w -> target, all of one homogeneous degree. */
struct ConvElem {
    int degree = 0;
    std::vector<LinMap> comp;  // index w-1

    bool is_zero() const;
    bool supported_above(int w) const;  // zero in all weights < w
    int lowest_weight() const;          // 0 if zero
};

using MCElement = ConvElem;     // degree -1
using GaugeElement = ConvElem;  // degree 0, weights >= 1

struct ObstructionReport {
    int weight = 0;
    Vec residual;        // flattened failing right-hand side
    bool proven = false; // residual class nonzero in gr-homology, no backtracking left
    bool inconclusive = false;  // solver budget exhausted
    std::vector<std::string> trace;
};

struct StageRecord {
    int stage = 0;
    char strategy = '?';  // 'A' retraction-guided, 'B' direct, 'T' trivial
    int solves = 0;
    std::string note;
};

struct GaugeLiftResult {
    GaugeElement mu;
    std::vector<StageRecord> log;
};

/* The complete filtered (curved) Lie algebra hom(C, A') truncated at W,
 * i.e. g / F^{W+1} g. Weight-w component: hom(C_w, target). */
class ConvolutionLie {
  public:
    enum class Mode { AssocCommutator, CoLieCommutative, CoComLieTarget };

    static ConvolutionLie build(WeightGradedCoalgebra C, DgAlgebra target, int W,
                                bool verify = false);
    static ConvolutionLie build_lie_target(WeightGradedCoalgebra C, DgLieAlgebra target,
                                           int W, bool verify = false);

    int W() const { return W_; }
    Mode mode() const { return mode_; }
    bool curved() const;
    const WeightGradedCoalgebra& source() const { return C_; }
    const GradedVectorSpace& target_space() const;
    const GradedVectorSpace& comp_space(int w) const { return C_.comp[w - 1]; }
    const std::optional<ConvElem>& twist() const { return twist_; }

    /* pairs whose target product was truncated; consulting one raises */
    void set_target_overflow(std::set<std::pair<int, int>> o) { overflow_ = std::move(o); }

    ConvElem zero(int degree) const;
    ConvElem only_weight(const ConvElem& e, int w) const;
    ConvElem add(const ConvElem& a, const ConvElem& b) const;
    ConvElem sub(const ConvElem& a, const ConvElem& b) const;
    ConvElem scale(const Rat& c, const ConvElem& a) const;
    bool equal(const ConvElem& a, const ConvElem& b) const;

    ConvElem bracket(const ConvElem& f, const ConvElem& g) const;
    ConvElem diff(const ConvElem& f) const;       // twist-aware pre-differential
    ConvElem curvature() const;                    // degree -2; zero map if flat
    ConvElem d0_only(const ConvElem& f) const;     // weight-preserving part (untwisted)

    /* theta + d f + [f,f]/2, weight by weight */
    ConvElem mc_residual(const ConvElem& alpha) const;
    bool is_mc(const ConvElem& alpha) const;

    /* Twist by a degree -1 element in F^1; composes with any existing twist. */
    ConvolutionLie twisted_by(const ConvElem& alpha) const;

    /* lambda . alpha = e^{ad}(alpha) - ((e^{ad}-1)/ad)(d lambda) */
    ConvElem gauge_act(const ConvElem& lambda, const ConvElem& alpha) const;

    /* Baker-Campbell-Hausdorff composite: (bch(a,b)) . x = a . (b . x). */
    ConvElem bch(const ConvElem& a, const ConvElem& b) const;

    /* Affine solution set for extending a partial MC element one weight up. */
    AffineSolutionSet mc_extend(const ConvElem& alpha, int upto_weight) const;

    /* Flattened coordinates of hom(C_w, target)_degree. */
    struct Slice {
        int w = 0, degree = 0;
        std::vector<std::pair<int, int>> cells;  // (source basis, target basis)
    };
    Slice slice(int w, int degree) const;
    Vec flatten(const ConvElem& e, const Slice& s) const;
    void unflatten_into(ConvElem& e, const Vec& v, const Slice& s) const;
    SparseMat d0_matrix(int w, int degree) const;

    AxiomReport verify_tables() const;  // Jacobi/Leibniz/antisymmetry weightwise

  private:
    WeightGradedCoalgebra C_;
    std::optional<DgAlgebra> targetA_;
    std::optional<DgLieAlgebra> targetL_;
    int W_ = 0;
    Mode mode_ = Mode::AssocCommutator;
    std::optional<ConvElem> twist_;
    std::set<std::pair<int, int>> overflow_;

    Vec target_mul(const Vec& a, const Vec& b) const;
    ConvElem base_diff(const ConvElem& f) const;
    ConvElem base_curvature() const;
};

/* Residuals per weight (degree -2 element); empty support = MC. */
ConvElem mc_check(const ConvolutionLie& g, const ConvElem& alpha);

/* Weightwise greedy search with bounded backtracking over kernel directions.
 * A returned gauge is verified exactly before returning. */
std::variant<GaugeElement, ObstructionReport> gauge_search(const ConvolutionLie& g,
                                                           const ConvElem& alpha,
                                                           const ConvElem& alpha_prime,
                                                           int start_weight, int budget);

/* The criterion's lifting algorithm. i_map/r_map transport elements between
 * the small algebra h and the big algebra g; r must be a filtered chain map,
 * a module map, and satisfy r o i = id (verified by the caller's contract
 * checks). Every stage's postcondition and the final gauge are verified
 * exactly. `hypothesis_check` is invoked to build diagnostics when a stage
 * fails. */
GaugeLiftResult gauge_lift(const ConvolutionLie& h, const ConvolutionLie& g,
                           const std::function<ConvElem(const ConvElem&)>& i_map,
                           const std::function<ConvElem(const ConvElem&)>& r_map,
                           const ConvElem& alpha, const ConvElem& alpha_prime,
                           const ConvElem& lambda, int budget,
                           const std::function<std::string()>& hypothesis_check = {});

struct TwistedHomologyReport {
    /* total homology dimensions per degree */
    std::map<int, int> total;
    /* associated-graded dimensions per (weight, degree) */
    std::map<std::pair<int, int>, int> graded;
    /* representatives per degree, flattened across weights */
    std::map<int, std::vector<Vec>> reps;
    std::map<int, std::vector<std::tuple<int, int, int>>> cells;  // (w, src, tgt) per degree
};

TwistedHomologyReport twisted_homology(const ConvolutionLie& g, const ConvElem& alpha,
                                       std::optional<std::pair<int, int>> window = {});

}  // namespace barmc
