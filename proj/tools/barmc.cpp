#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "barmc/presentation.hpp"
#include "barmc/report.hpp"
#include "barmc/suite.hpp"

using namespace barmc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct GlobalOpts {
    int W = 3;
    int capT = 6;
    int polyD = 3;
    int budget = 2000;
    uint64_t seed = 1;
    std::string format = "text";
    std::string degree_window;
};

std::optional<std::pair<int, int>> parse_window(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto colon = s.find(':');
    if (colon == std::string::npos) throw InputError("degree window must be lo:hi");
    return std::make_pair(std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1)));
}

DgAlgebra load_algebra(const std::string& path) {
    auto p = load_presentation(path);
    if (!std::holds_alternative<DgAlgebra>(p))
        throw InputError(path + ": expected an algebra presentation");
    return std::get<DgAlgebra>(p);
}

DgLieAlgebra load_lie(const std::string& path) {
    auto p = load_presentation(path);
    if (!std::holds_alternative<DgLieAlgebra>(p))
        throw InputError(path + ": expected a lie presentation");
    return std::get<DgLieAlgebra>(p);
}

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    return Json::parse(f);
}

void emit(const GlobalOpts& g, const Json& machine, const std::string& text) {
    if (g.format == "json")
        std::cout << dump_json(machine);
    else
        std::cout << text;
}

WeightGradedCoalgebra build_flavor(const DgAlgebra& A, const std::string& flavor, int W) {
    if (flavor == "ass") return bar_ass(A, W);
    if (flavor == "com") return bar_com(A, W);
    if (flavor == "uass") return bar_unital(A, UnitalFlavor::Associative, W);
    if (flavor == "ucom") return bar_unital(A, UnitalFlavor::Commutative, W);
    throw InputError("unknown flavor '" + flavor + "' for an algebra input");
}

Json dims_json(const WeightGradedCoalgebra& C) {
    Json dims = Json::array();
    for (int w = 1; w <= C.W; ++w) dims.push_back(C.dim_w(w));
    return dims;
}

int cmd_check(const GlobalOpts& g, const std::string& file) {
    try {
        auto p = load_presentation(file);
        Json j;
        j["ok"] = true;
        std::string kind = std::holds_alternative<DgAlgebra>(p) ? "algebra" : "lie";
        j["kind"] = kind;
        emit(g, j, "ok: " + kind + " presentation passes all axioms\n");
        return kExitOk;
    } catch (const InputError& e) {
        Json j;
        j["ok"] = false;
        j["error"] = e.what();
        emit(g, j, std::string("error: ") + e.what() + "\n");
        return kExitVerification;
    }
}

int cmd_bar(const GlobalOpts& g, const std::string& file, std::string flavor) {
    auto p = load_presentation(file);
    WeightGradedCoalgebra C;
    if (std::holds_alternative<DgLieAlgebra>(p)) {
        if (flavor != "lie" && flavor != "")
            throw InputError("lie inputs take flavor 'lie'");
        C = bar_lie(std::get<DgLieAlgebra>(p), g.W);
    } else {
        if (flavor == "lie" || flavor == "ulie")
            throw InputError("flavor '" + flavor + "' requires a lie presentation");
        const DgAlgebra& A = std::get<DgAlgebra>(p);
        if (flavor.empty()) flavor = A.unital ? "uass" : "ass";
        C = build_flavor(A, flavor, g.W);
    }
    auto rep = check_weighted(C);
    Json j;
    j["dims"] = dims_json(C);
    j["axioms"] = axiom_report_to_json(rep);
    Json diffs = Json::object();
    for (int w = 1; w <= C.W; ++w) {
        Json entries = Json::array();
        for (int i = 0; i < C.d0[w - 1].m.rows; ++i)
            for (const auto& [jj, v] : C.d0[w - 1].m.rdata[i])
                entries.push_back({{"part", "d0"},
                                   {"dst", C.comp[w - 1].name(i)},
                                   {"src", C.comp[w - 1].name(jj)},
                                   {"c", rat_str(v)}});
        if (w >= 2)
            for (int i = 0; i < C.d1[w - 1].m.rows; ++i)
                for (const auto& [jj, v] : C.d1[w - 1].m.rdata[i])
                    entries.push_back({{"part", "d1"},
                                       {"dst", C.comp[w - 2].name(i)},
                                       {"src", C.comp[w - 1].name(jj)},
                                       {"c", rat_str(v)}});
        diffs[std::to_string(w)] = entries;
    }
    j["differential"] = diffs;
    std::ostringstream os;
    os << "weight dims:";
    for (int w = 1; w <= C.W; ++w) os << " " << C.dim_w(w);
    os << "\n" << (rep.ok() ? "axioms hold through W\n" : rep.to_string());
    emit(g, j, os.str());
    return rep.ok() ? kExitOk : kExitVerification;
}

int cmd_cobar(const GlobalOpts& g, const std::string& file, std::string flavor) {
    auto p = load_presentation(file);
    WeightGradedCoalgebra C;
    if (std::holds_alternative<DgLieAlgebra>(p))
        C = bar_lie(std::get<DgLieAlgebra>(p), g.W);
    else {
        const DgAlgebra& A = std::get<DgAlgebra>(p);
        if (flavor.empty()) flavor = "ass";
        if (flavor != "ass") throw InputError("cobar takes coassociative sources");
        C = bar_ass(A, g.W);
    }
    auto Om = cobar_ass(C, g.W);
    auto H = homology_of(Om.A.V, Om.A.d, parse_window(g.degree_window));
    Json j;
    j["dim"] = Om.A.V.dim();
    Json hj = Json::object();
    for (const auto& [deg, h] : H) hj[std::to_string(deg)] = h.dimension;
    j["homology"] = hj;
    std::ostringstream os;
    os << "cobar dimension " << Om.A.V.dim() << "\nhomology:";
    for (const auto& [deg, h] : H) os << " H_" << deg << "=" << h.dimension;
    os << "\n";
    emit(g, j, os.str());
    return kExitOk;
}

int cmd_mc(const GlobalOpts& g, const std::string& fileA, const std::string& fileA2,
           const std::string& flavor, const std::string& elem_file) {
    DgAlgebra A = load_algebra(fileA);
    DgAlgebra A2 = load_algebra(fileA2);
    std::string fl = flavor.empty() ? (A.unital ? "ucom" : "com") : flavor;
    auto C = build_flavor(A, fl, g.W);
    auto conv = ConvolutionLie::build(C, A2, g.W, true);
    Json j;
    j["component_dims"] = dims_json(C);
    j["curved"] = conv.curved();
    std::ostringstream os;
    os << "convolution algebra built; component dims:";
    for (int w = 1; w <= g.W; ++w) os << " " << C.dim_w(w);
    os << (conv.curved() ? "\ncurved: yes\n" : "\ncurved: no\n");
    int code = kExitOk;
    if (!elem_file.empty()) {
        ConvElem alpha = elem_from_json(conv, load_json(elem_file));
        ConvElem res = conv.mc_residual(alpha);
        j["residual"] = elem_to_json(conv, res);
        j["is_mc"] = res.is_zero();
        os << (res.is_zero() ? "element is Maurer-Cartan\n"
                             : "element fails the Maurer-Cartan equation\n");
        if (!res.is_zero()) code = kExitVerification;
    }
    emit(g, j, os.str());
    return code;
}

int cmd_gauge_search(const GlobalOpts& g, const std::string& fileA, const std::string& fileA2,
                     const std::string& alpha_file, const std::string& alpha2_file,
                     int start) {
    DgAlgebra A = load_algebra(fileA);
    DgAlgebra A2 = load_algebra(fileA2);
    auto C = build_flavor(A, A.unital ? "ucom" : "com", g.W);
    auto conv = ConvolutionLie::build(C, A2, g.W);
    ConvElem a = elem_from_json(conv, load_json(alpha_file));
    ConvElem a2 = elem_from_json(conv, load_json(alpha2_file));
    auto res = gauge_search(conv, a, a2, start, g.budget);
    Json j;
    if (std::holds_alternative<GaugeElement>(res)) {
        const auto& lam = std::get<GaugeElement>(res);
        j["found"] = true;
        j["gauge"] = elem_to_json(conv, lam);
        emit(g, j, "GAUGE FOUND (verified exactly)\n" + dump_json(elem_to_json(conv, lam)));
        return kExitOk;
    }
    const auto& rep = std::get<ObstructionReport>(res);
    j["found"] = false;
    j["obstruction"] = obstruction_to_json(rep);
    std::ostringstream os;
    os << (rep.inconclusive ? "INCONCLUSIVE" : (rep.proven ? "OBSTRUCTED" : "NOT FOUND"))
       << " at weight " << rep.weight << "\n";
    emit(g, j, os.str());
    return rep.inconclusive ? kExitInconclusive : kExitVerification;
}

int cmd_gauge_lift(const GlobalOpts& g, const std::string& fileA, const std::string& fileA2,
                   const std::string& f_file, const std::string& g_file,
                   const std::string& w_file) {
    DgAlgebra A = load_algebra(fileA);
    DgAlgebra A2 = load_algebra(fileA2);
    ConvRetraction R = build_convolution_retraction(A, A2, g.W);
    ConvElem f = elem_from_json(R.h, load_json(f_file));
    ConvElem gg = elem_from_json(R.h, load_json(g_file));
    ConvElem wit = elem_from_json(R.g, load_json(w_file));
    GaugeLiftResult res = A.unital ? unital_faithfulness_witness(R, f, gg, wit, g.budget)
                                   : faithfulness_witness(R, f, gg, wit, g.budget);
    Json j;
    j["mu"] = elem_to_json(R.h, res.mu);
    j["stages"] = lift_log_to_json(res.log);
    emit(g, j, "WITNESS FOUND (verified exactly)\n" + dump_json(elem_to_json(R.h, res.mu)));
    return kExitOk;
}

int cmd_retraction(const GlobalOpts& g, const std::string& fileA, const std::string& fileA2) {
    DgAlgebra A = load_algebra(fileA);
    DgAlgebra A2 = load_algebra(fileA2);
    auto rep = verify_retraction_contract(A, A2, g.W);
    emit(g, contract_to_json(rep),
         rep.ok() ? "retraction contract holds (r o i = id, chain map, filtration, module)\n"
                  : "retraction contract FAILS:\n  " + [&] {
                        std::string s;
                        for (const auto& v : rep.violations) s += v + "\n  ";
                        return s;
                    }());
    return rep.ok() ? kExitOk : kExitVerification;
}

int cmd_pbw(const GlobalOpts& g, int n) {
    auto D = pbw_decompose(n, n <= 5);
    Json j;
    j["n"] = n;
    j["ranks"] = D.ranks;
    Json projs = Json::array();
    for (int k = 0; k < n; ++k) {
        Json terms = Json::array();
        for (const auto& [p, c] : D.projectors[k].c) {
            Json perm = Json::array();
            for (int x : p) perm.push_back(x);
            terms.push_back({{"perm", perm}, {"c", rat_str(c)}});
        }
        projs.push_back(terms);
    }
    j["projectors"] = projs;
    j["lie_oracle"] = lie_multilinear_dim(n);
    std::ostringstream os;
    os << "ranks";
    for (int k : D.ranks) os << " " << k;
    os << " (total " << [&] {
        int t = 0;
        for (int k : D.ranks) t += k;
        return t;
    }() << ", e1 oracle " << lie_multilinear_dim(n) << ")\n";
    emit(g, j, os.str());
    return kExitOk;
}

int cmd_envelope(const GlobalOpts& g, const std::string& fileG, const std::string& fileH,
                 uint64_t synth_seed, bool do_synth) {
    DgLieAlgebra gl = load_lie(fileG);
    DgLieAlgebra hl = load_lie(fileH);
    auto R = build_enveloping_retraction(gl, hl, g.W, g.capT);
    auto rep = verify_enveloping_contract(R);
    Json j;
    j["contract"] = contract_to_json(rep);
    std::ostringstream os;
    os << (rep.ok() ? "enveloping retraction contract holds\n" : "contract FAILS\n");
    int code = rep.ok() ? kExitOk : kExitVerification;
    if (do_synth && rep.ok()) {
        Rng rng(synth_seed);
        auto pair = synthesize_enveloping_pair(R, rng);
        if (!pair) {
            os << "synthesis failed for this seed\n";
            j["witness_found"] = false;
            code = kExitInconclusive;
        } else {
            auto res = enveloping_faithfulness_witness(R, pair->f, pair->g, pair->witness,
                                                       g.budget);
            j["witness_found"] = true;
            j["mu"] = elem_to_json(R.h, res.mu);
            j["stages"] = lift_log_to_json(res.log);
            os << "WITNESS FOUND (verified exactly)\n";
        }
    }
    emit(g, j, os.str());
    return code;
}

int cmd_example14(const GlobalOpts& g, const std::string& file) {
    DgAlgebra A = load_algebra(file);
    auto rep = example_1_4(A, g.polyD);
    std::ostringstream os;
    os << "commutative classification: " << rep.commutative_params
       << " parameters (H0 x H0)\n"
       << "associative classification: " << rep.associative_params
       << " parameters (H0 x H0 x H1)\n"
       << "comparison: " << rep.verdict << "\n"
       << "stabilization at D and D+1: " << (rep.stable ? "stable" : "UNSTABLE") << "\n";
    emit(g, example14_to_json(rep), os.str());
    return rep.stable ? kExitOk : kExitVerification;
}

int cmd_faithful(const GlobalOpts& g, const std::string& fileA, const std::string& fileA2,
                 bool synth, uint64_t synth_seed, const std::string& f_file,
                 const std::string& g_file, const std::string& w_file) {
    DgAlgebra A = load_algebra(fileA);
    DgAlgebra A2 = load_algebra(fileA2);
    ConvRetraction R = build_convolution_retraction(A, A2, g.W);
    ConvElem f = R.h.zero(-1), gg = R.h.zero(-1), wit = R.g.zero(0);
    if (synth) {
        Rng rng(synth_seed);
        auto pair = synthesize_pair(R, rng);
        if (!pair) {
            emit(g, Json{{"witness_found", false}}, "synthesis failed for this seed\n");
            return kExitInconclusive;
        }
        f = pair->f;
        gg = pair->g;
        wit = pair->witness;
    } else {
        f = elem_from_json(R.h, load_json(f_file));
        gg = elem_from_json(R.h, load_json(g_file));
        wit = elem_from_json(R.g, load_json(w_file));
    }
    GaugeLiftResult res = A.unital ? unital_faithfulness_witness(R, f, gg, wit, g.budget)
                                   : faithfulness_witness(R, f, gg, wit, g.budget);
    Json j;
    j["witness_found"] = true;
    j["f"] = elem_to_json(R.h, f);
    j["g"] = elem_to_json(R.h, gg);
    j["a_infinity_witness"] = elem_to_json(R.g, wit);
    j["mu"] = elem_to_json(R.h, res.mu);
    j["stages"] = lift_log_to_json(res.log);
    emit(g, j, "WITNESS FOUND, certificate verifies\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bar/cobar, Maurer-Cartan and gauge-lifting computations"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("-W,--max-weight", g.W, "weight truncation")->capture_default_str();
    app.add_option("--cap-T", g.capT, "enveloping word-length cap")->capture_default_str();
    app.add_option("--poly-D", g.polyD, "polynomial forms cap")->capture_default_str();
    app.add_option("--budget", g.budget, "solver backtracking budget")->capture_default_str();
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--format", g.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--degree-window", g.degree_window, "degree window lo:hi");

    std::string file, file2, flavor, elem, alpha, alpha2, witness, ffile, gfile;
    int n = 3, start = 1;
    uint64_t synth_seed = 0;
    bool do_synth = false;

    auto* c_check = app.add_subcommand("check", "parse and verify a presentation");
    c_check->add_option("file", file)->required();

    auto* c_bar = app.add_subcommand("bar", "bar construction dimension/differential tables");
    c_bar->add_option("file", file)->required();
    c_bar->add_option("--flavor", flavor, "ass|com|uass|ucom|lie");

    auto* c_cobar = app.add_subcommand("cobar", "truncated cobar with homology");
    c_cobar->add_option("file", file)->required();
    c_cobar->add_option("--flavor", flavor);

    auto* c_mc = app.add_subcommand("mc", "build a convolution algebra; check an element");
    c_mc->add_option("fileA", file)->required();
    c_mc->add_option("fileA2", file2)->required();
    c_mc->add_option("--flavor", flavor);
    c_mc->add_option("--element", elem, "element file (json)");

    auto* c_gs = app.add_subcommand("gauge-search", "weightwise gauge search");
    c_gs->add_option("fileA", file)->required();
    c_gs->add_option("fileA2", file2)->required();
    c_gs->add_option("--alpha", alpha)->required();
    c_gs->add_option("--alpha2", alpha2)->required();
    c_gs->add_option("--start", start);

    auto* c_gl = app.add_subcommand("gauge-lift", "criterion gauge lifting");
    c_gl->add_option("fileA", file)->required();
    c_gl->add_option("fileA2", file2)->required();
    c_gl->add_option("--f", ffile)->required();
    c_gl->add_option("--g", gfile)->required();
    c_gl->add_option("--witness", witness)->required();

    auto* c_re = app.add_subcommand("retraction", "verify the retraction contract");
    c_re->add_option("fileA", file)->required();
    c_re->add_option("fileA2", file2)->required();

    auto* c_pbw = app.add_subcommand("pbw", "Eulerian/PBW certificates");
    c_pbw->add_option("n", n)->required();

    auto* c_env = app.add_subcommand("envelope", "enveloping retraction and witnesses");
    c_env->add_option("fileG", file)->required();
    c_env->add_option("fileH", file2)->required();
    c_env->add_flag("--synthesize", do_synth);
    c_env->add_option("--synth-seed", synth_seed);

    auto* c_ex = app.add_subcommand("example-1-4", "the introductory classification");
    c_ex->add_option("fileA2", file)->required();

    auto* c_fa = app.add_subcommand("faithful", "find a C-infinity homotopy");
    c_fa->add_option("fileA", file)->required();
    c_fa->add_option("fileA2", file2)->required();
    c_fa->add_option("--synthesize", synth_seed);
    c_fa->add_option("--f", ffile);
    c_fa->add_option("--g", gfile);
    c_fa->add_option("--witness", witness);

    auto* c_suite = app.add_subcommand("suite", "run the verification suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) return cmd_check(g, file);
        if (c_bar->parsed()) return cmd_bar(g, file, flavor);
        if (c_cobar->parsed()) return cmd_cobar(g, file, flavor);
        if (c_mc->parsed()) return cmd_mc(g, file, file2, flavor, elem);
        if (c_gs->parsed()) return cmd_gauge_search(g, file, file2, alpha, alpha2, start);
        if (c_gl->parsed()) return cmd_gauge_lift(g, file, file2, ffile, gfile, witness);
        if (c_re->parsed()) return cmd_retraction(g, file, file2);
        if (c_pbw->parsed()) return cmd_pbw(g, n);
        if (c_env->parsed()) return cmd_envelope(g, file, file2, synth_seed, do_synth);
        if (c_ex->parsed()) return cmd_example14(g, file);
        if (c_fa->parsed()) {
            bool synth = c_fa->count("--synthesize") > 0;
            if (!synth && (ffile.empty() || gfile.empty() || witness.empty())) {
                std::cerr << "faithful needs --synthesize SEED or --f/--g/--witness\n";
                return kExitUsage;
            }
            return cmd_faithful(g, file, file2, synth, synth_seed, ffile, gfile, witness);
        }
        if (c_suite->parsed()) {
            SuiteOptions opt;
            opt.seed = g.seed;
            auto results = run_acceptance(opt, std::cerr);
            Json j = Json::array();
            for (const auto& r : results)
                j.push_back({{"id", r.id},
                             {"name", r.name},
                             {"pass", r.pass},
                             {"detail", r.detail}});
            if (g.format == "json")
                std::cout << dump_json(j);
            else
                for (const auto& r : results)
                    std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.name << " — "
                              << r.detail << "\n";
            return all_passed(results) ? kExitOk : kExitVerification;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const StageError& e) {
        std::cerr << "stage error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const NotAComplex& e) {
        std::cerr << "not a complex: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
