#pragma once

#include <json.hpp>

#include "barmc/faithful.hpp"

namespace barmc {

using Json = nlohmann::json;

/* Elements serialize as weight-indexed tables with "p/q" entries and basis
 * names; re-parsing against the same algebra reproduces the element. */
Json elem_to_json(const ConvolutionLie& g, const ConvElem& e);
ConvElem elem_from_json(const ConvolutionLie& g, const Json& j);

Json axiom_report_to_json(const AxiomReport& rep);
Json obstruction_to_json(const ObstructionReport& rep);
Json lift_log_to_json(const std::vector<StageRecord>& log);
Json contract_to_json(const ContractReport& rep);
Json example14_to_json(const Example14Report& rep);
Json split_injectivity_to_json(const SplitInjectivityReport& rep);

std::string dump_json(const Json& j);

}  // namespace barmc
