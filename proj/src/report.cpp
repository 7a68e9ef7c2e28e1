#include "barmc/report.hpp"

namespace barmc {

Json elem_to_json(const ConvolutionLie& g, const ConvElem& e) {
    Json j;
    j["degree"] = e.degree;
    Json weights = Json::object();
    for (int w = 1; w <= g.W(); ++w) {
        Json entries = Json::array();
        const auto& C = g.comp_space(w);
        const auto& T = g.target_space();
        for (int t = 0; t < T.dim(); ++t)
            for (const auto& [c, v] : e.comp[w - 1].m.rdata[t])
                entries.push_back({{"src", C.name(c)}, {"dst", T.name(t)}, {"c", rat_str(v)}});
        if (!entries.empty()) weights[std::to_string(w)] = entries;
    }
    j["weights"] = weights;
    return j;
}

ConvElem elem_from_json(const ConvolutionLie& g, const Json& j) {
    ConvElem e = g.zero(j.at("degree").get<int>());
    for (const auto& [ws, entries] : j.at("weights").items()) {
        int w = std::stoi(ws);
        if (w < 1 || w > g.W()) throw InputError("element weight out of range");
        const auto& C = g.comp_space(w);
        const auto& T = g.target_space();
        for (const auto& ent : entries) {
            int c = C.index_of(ent.at("src").get<std::string>());
            int t = T.index_of(ent.at("dst").get<std::string>());
            if (c < 0 || t < 0) throw InputError("element entry names unknown basis");
            Rat v = rat_parse(ent.at("c").get<std::string>());
            if (T.degree(t) != C.degree(c) + e.degree)
                throw InputError("element entry violates its degree");
            e.comp[w - 1].m.add_to(t, c, v);
        }
    }
    return e;
}

Json axiom_report_to_json(const AxiomReport& rep) {
    Json j;
    j["ok"] = rep.ok();
    Json v = Json::array();
    for (const auto& x : rep.violations)
        v.push_back({{"identity", x.identity}, {"witness", x.witness}, {"detail", x.detail}});
    j["violations"] = v;
    return j;
}

Json obstruction_to_json(const ObstructionReport& rep) {
    Json j;
    j["weight"] = rep.weight;
    j["proven"] = rep.proven;
    j["inconclusive"] = rep.inconclusive;
    Json res = Json::array();
    for (const auto& v : rep.residual) res.push_back(rat_str(v));
    j["residual"] = res;
    j["trace"] = rep.trace;
    return j;
}

Json lift_log_to_json(const std::vector<StageRecord>& log) {
    Json j = Json::array();
    for (const auto& s : log)
        j.push_back({{"stage", s.stage},
                     {"strategy", std::string(1, s.strategy)},
                     {"solves", s.solves},
                     {"note", s.note}});
    return j;
}

Json contract_to_json(const ContractReport& rep) {
    Json j;
    j["ok"] = rep.ok();
    j["violations"] = rep.violations;
    return j;
}

Json example14_to_json(const Example14Report& rep) {
    Json j;
    j["h0"] = rep.h0;
    j["h1"] = rep.h1;
    j["commutative_params"] = rep.commutative_params;
    j["associative_params"] = rep.associative_params;
    j["injective"] = rep.injective;
    j["surjective"] = rep.surjective;
    j["stable"] = rep.stable;
    j["verdict"] = rep.verdict;
    return j;
}

Json split_injectivity_to_json(const SplitInjectivityReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json per = Json::object();
    for (const auto& [deg, t] : rep.per_degree)
        per[std::to_string(deg)] = {{"dim_h", std::get<0>(t)},
                                    {"dim_g", std::get<1>(t)},
                                    {"injective", std::get<2>(t)},
                                    {"split", std::get<3>(t)}};
    j["per_degree"] = per;
    j["notes"] = rep.notes;
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace barmc
