#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfa/dataset.hpp"
#include "pfa/depgraph.hpp"
#include "pfa/dissect.hpp"
#include "pfa/pfa.hpp"

namespace pfa {

// ordered_json keeps keys in insertion order, which makes reports
// byte-stable.
using Json = nlohmann::ordered_json;

Json to_json(const IndependenceVerdict& v, const NodePair& pair);
/// {"nodes", "edges", "tests"}
Json to_json(const DependencyGraph& g);
/// {"removed", "complete_subgraphs"}
Json to_json(const DissectionResult& d);
Json to_json(const PfaConfig& cfg);

/// Full run report. `timings` (seconds per phase) is only emitted when
/// non-empty since it breaks byte-for-byte reproducibility.
Json run_report(const PfaResult& result, const Dataset& ds,
                const std::map<std::string, double>& timings = {});

Json robust_report(const RobustResult& robust, const PfaConfig& cfg,
                   std::size_t runs, double fraction,
                   const std::vector<std::string>& run_report_files);

/// One id per line, ascending, LF endings.
std::string features_text(std::vector<VariableId> ids);

}  // namespace pfa
