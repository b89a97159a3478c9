#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "spherestat/energy_stats.hpp"
#include "spherestat/hemisphere_transform.hpp"
#include "spherestat/negative_type.hpp"

namespace spherestat::cli {

enum class OutputFormat { json, tsv };

OutputFormat parse_format(const std::string& name);

// Doubles rounded to 12 significant digits before they enter a report, so
// printed output is stable across platforms and float-printing libraries.
nlohmann::ordered_json number12(double value);

nlohmann::ordered_json to_json(const TestReport& report);
nlohmann::ordered_json to_json(const MonteCarloEstimate& estimate);
nlohmann::ordered_json to_json(const StrictnessCertificate& certificate);

// JSON: pretty-printed object. TSV: one key<TAB>value line per leaf, nested
// keys joined with dots, arrays comma-joined.
void emit(const nlohmann::ordered_json& report, OutputFormat format,
          std::ostream& out);

}  // namespace spherestat::cli
