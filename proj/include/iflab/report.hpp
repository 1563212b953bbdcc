#pragma once

// JSON payloads for run reports. Key order is sorted by the JSON library,
// so reports are byte-stable for identical inputs.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iflab/dimension.hpp"
#include "iflab/gdifs.hpp"
#include "iflab/generated.hpp"
#include "iflab/paramscan.hpp"
#include "iflab/regularity.hpp"

namespace iflab {

// Words are reported 1-based.
nlohmann::json word_json(const Word& w);

nlohmann::json to_json(const SmallnessReport& r);
nlohmann::json to_json(const RegularityResult& r);
nlohmann::json to_json(const DimensionReport& r);
nlohmann::json to_json(const EscReport& r);
nlohmann::json to_json(const BoxEstimate& r);
nlohmann::json to_json(const MarkovMeasure& m);
nlohmann::json to_json(const SandwichCheck& s);
nlohmann::json to_json(const ScanResult& s);  // summary only; the grid goes to CSV

struct RunReport {
    std::string command;
    std::vector<std::string> arguments;
    std::string digest;
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::optional<double> seconds;  // only when timing was requested
};

nlohmann::json to_json(const RunReport& r);

}  // namespace iflab
