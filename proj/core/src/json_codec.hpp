#pragma once

#include <json.hpp>

#include "ilpbench/scoring.hpp"
#include "ilpbench/synth.hpp"

namespace ilpbench::detail {

nlohmann::ordered_json meta_json(const DatasetMeta& meta);
DatasetMeta meta_from(const nlohmann::json& j);

nlohmann::ordered_json report_json(const EvalReport& report);
EvalReport report_from(const nlohmann::json& j);

nlohmann::ordered_json error_class_json(const ErrorClass& error);
ErrorClass error_class_from(const nlohmann::json& j);

nlohmann::ordered_json atoms_json(const std::vector<Atom>& atoms);
std::vector<Atom> atoms_from(const nlohmann::json& j);

}  // namespace ilpbench::detail
