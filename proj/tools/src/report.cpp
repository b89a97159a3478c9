#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace spherestat::cli {

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "tsv") return OutputFormat::tsv;
  throw std::invalid_argument("unknown output format '" + name + "'");
}

nlohmann::ordered_json number12(double value) {
  if (!std::isfinite(value)) return nullptr;
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return nlohmann::ordered_json::parse(buffer);
}

nlohmann::ordered_json to_json(const TestReport& report) {
  nlohmann::ordered_json j;
  j["statistic"] = number12(report.statistic);
  j["p_value"] = number12(report.p_value);
  j["replications"] = report.replications;
  j["seed"] = report.seed;
  j["method"] = report.method;
  return j;
}

nlohmann::ordered_json to_json(const MonteCarloEstimate& estimate) {
  nlohmann::ordered_json j;
  j["value"] = number12(estimate.value);
  j["std_error"] = number12(estimate.std_error);
  j["samples"] = estimate.samples;
  j["seed"] = estimate.seed;
  return j;
}

nlohmann::ordered_json to_json(const StrictnessCertificate& certificate) {
  nlohmann::ordered_json j;
  j["max_restricted_eigenvalue"] =
      number12(certificate.max_restricted_eigenvalue);
  j["verdict"] = to_string(certificate.verdict);
  if (certificate.witness) {
    nlohmann::ordered_json witness = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < certificate.witness->size(); ++i) {
      witness.push_back(number12((*certificate.witness)[i]));
    }
    j["witness"] = std::move(witness);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

namespace {

std::string scalar_to_string(const nlohmann::ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

void emit_tsv(const nlohmann::ordered_json& node, const std::string& prefix,
              std::ostream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      emit_tsv(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (node.is_array()) {
    bool nested = false;
    for (const auto& item : node) {
      if (item.is_object() || item.is_array()) nested = true;
    }
    if (nested) {
      int index = 0;
      for (const auto& item : node) {
        emit_tsv(item, prefix + "." + std::to_string(index), out);
        ++index;
      }
    } else {
      out << prefix << '\t';
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i > 0) out << ',';
        out << scalar_to_string(node[i]);
      }
      out << '\n';
    }
    return;
  }
  out << prefix << '\t' << scalar_to_string(node) << '\n';
}

}  // namespace

void emit(const nlohmann::ordered_json& report, OutputFormat format,
          std::ostream& out) {
  if (format == OutputFormat::json) {
    out << report.dump(2) << '\n';
  } else {
    emit_tsv(report, "", out);
  }
}

}  // namespace spherestat::cli
