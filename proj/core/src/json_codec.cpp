#include "json_codec.hpp"

#include "ilpbench/reader.hpp"

namespace ilpbench::detail {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json atoms_json(const std::vector<Atom>& atoms) {
  ordered_json out = ordered_json::array();
  for (const Atom& a : atoms) out.push_back(render_atom(a));
  return out;
}

std::vector<Atom> atoms_from(const json& j) {
  std::vector<Atom> out;
  for (const auto& a : j) out.push_back(parse_ground_atom(a.get<std::string>()));
  return out;
}

ordered_json report_json(const EvalReport& r) {
  ordered_json j;
  j["counts"] = {{"tp", r.counts.tp}, {"fp", r.counts.fp}, {"fn", r.counts.fn}, {"tn", r.counts.tn}};
  j["accuracy"] = r.accuracy;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["misclassified_pos"] = atoms_json(r.misclassified_pos);
  j["misclassified_neg"] = atoms_json(r.misclassified_neg);
  j["warnings"] = r.warnings;
  return j;
}

EvalReport report_from(const json& j) {
  EvalReport r;
  const json& c = j.at("counts");
  r.counts = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(), c.at("fn").get<std::size_t>(),
              c.at("tn").get<std::size_t>()};
  r.accuracy = j.at("accuracy").get<double>();
  r.precision = j.at("precision").get<double>();
  r.recall = j.at("recall").get<double>();
  r.f1 = j.at("f1").get<double>();
  r.misclassified_pos = atoms_from(j.value("misclassified_pos", json::array()));
  r.misclassified_neg = atoms_from(j.value("misclassified_neg", json::array()));
  r.warnings = j.value("warnings", std::vector<std::string>{});
  return r;
}

ordered_json error_class_json(const ErrorClass& e) {
  ordered_json j;
  j["kind"] = std::string(error_kind_name(e.kind));
  ordered_json reasons = ordered_json::array();
  for (const ErrorReason& r : e.reasons) reasons.push_back(r.to_string());
  j["reasons"] = reasons;
  if (!e.message.empty()) j["message"] = e.message;
  return j;
}

ErrorClass error_class_from(const json& j) {
  ErrorClass e;
  e.kind = parse_error_kind(j.at("kind").get<std::string>());
  for (const auto& r : j.value("reasons", json::array())) e.reasons.push_back(ErrorReason::parse(r.get<std::string>()));
  e.message = j.value("message", std::string());
  return e;
}

}  // namespace ilpbench::detail
