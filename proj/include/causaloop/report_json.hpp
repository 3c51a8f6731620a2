// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <json.hpp>

#include <causaloop/census.hpp>
#include <causaloop/classify.hpp>
#include <causaloop/dsl.hpp>
#include <causaloop/structure.hpp>
#include <causaloop/verify.hpp>

namespace causaloop {

using json = nlohmann::ordered_json;

/*! Decode an encoded index to its tuple, emitted as an integer array in
    party order. */
inline json tuple_json(index_t encoded, const std::vector<value_t>& sizes) {
  return json(decode_tuple(encoded, sizes));
}

inline json to_json(const induced_function& omega) {
  json j;
  j["parties"] = omega.party_count();
  j["out"] = omega.out_sizes();
  j["in"] = omega.in_sizes();
  j["components"] = omega.components();
  return j;
}

inline json to_json(const intervention_profile& f) {
  json j = json::array();
  for (const auto& part : f) j.push_back(part.table);
  return j;
}

inline json to_json(const fixed_point_set& fps, const std::vector<value_t>& in_sizes) {
  json points = json::array();
  for (index_t p : fps.points) points.push_back(tuple_json(p, in_sizes));
  json j;
  j["count"] = fps.size();
  j["points"] = std::move(points);
  return j;
}

inline json to_json(const classification& c, const induced_function& omega) {
  json j;
  if (const auto* process = std::get_if<process_verdict>(&c)) {
    j["verdict"] = "process";
    if (process->fixed_point_index.empty()) {
      j["fixed_point_index"] = nullptr;
    } else {
      json table = json::array();
      for (index_t p : process->fixed_point_index)
        table.push_back(tuple_json(p, omega.in_sizes()));
      j["fixed_point_index"] = std::move(table);
    }
  } else {
    const auto& v = std::get<antinomic_verdict>(c);
    j["verdict"] = "antinomic";
    json grandfather;
    grandfather["index"] = v.grandfather_index ? json(*v.grandfather_index) : json(nullptr);
    grandfather["profile"] = to_json(v.grandfather);
    j["grandfather"] = std::move(grandfather);
    json information;
    information["index"] = v.information_index ? json(*v.information_index) : json(nullptr);
    information["profile"] = to_json(v.information);
    information["points"] = json::array({tuple_json(v.point_a, omega.in_sizes()),
                                         tuple_json(v.point_b, omega.in_sizes())});
    j["information"] = std::move(information);
  }
  return j;
}

inline json to_json(const violation& v) {
  json j;
  j["code"] = violation_code_name(v.code);
  j["message"] = v.message;
  if (v.vertex) j["vertex"] = *v.vertex;
  if (v.edge) j["edge"] = json::array({v.edge->src, v.edge->dst});
  return j;
}

inline json to_json(const validation_report& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back(to_json(w));
  json j;
  j["ok"] = r.ok;
  j["violations"] = std::move(violations);
  j["warnings"] = std::move(warnings);
  if (r.cut_cycle_witness) j["cut_cycle"] = *r.cut_cycle_witness;
  return j;
}

inline json to_json(const verification_report& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    json entry;
    entry["instance"] = f.instance;
    entry["expected"] = f.expected;
    entry["observed"] = f.observed;
    failures.push_back(std::move(entry));
  }
  json j;
  j["suite"] = r.suite;
  j["instances"] = r.instances;
  j["passed"] = r.passed();
  j["failures"] = std::move(failures);
  return j;
}

/*! Census payload. Worker count and wall time are execution details, not
    results, and stay out so the payload is byte-identical for every worker
    count. */
inline json to_json(const census_report& r) {
  json space;
  space["out"] = r.spec.out_sizes;
  space["in"] = r.spec.in_sizes;
  space["constant_components"] = r.spec.restrict_constant_components;
  json j;
  j["space"] = std::move(space);
  j["total"] = r.total;
  j["process"] = r.process_count;
  j["antinomic"] = r.antinomic_count;
  j["equivalence_violations"] = r.equivalence_violations;
  json reps;
  reps["process"] = r.process_representatives;
  reps["antinomic"] = r.antinomic_representatives;
  j["representatives"] = std::move(reps);
  return j;
}

/*! One JSON-Lines record of a census. */
inline json record_json(const census_record& rec, const std::vector<value_t>& in_sizes) {
  json j;
  j["index"] = rec.index;
  j["verdict"] = rec.process ? "process" : "antinomic";
  if (!rec.process) {
    json witnesses;
    witnesses["grandfather_index"] =
        rec.grandfather_index ? json(*rec.grandfather_index) : json(nullptr);
    witnesses["information_index"] =
        rec.information_index ? json(*rec.information_index) : json(nullptr);
    witnesses["points"] =
        json::array({tuple_json(rec.point_a, in_sizes), tuple_json(rec.point_b, in_sizes)});
    j["witnesses"] = std::move(witnesses);
  }
  return j;
}

inline json to_json(const parse_error& e) {
  json j;
  j["error"] = "PARSE";
  j["line"] = e.line();
  j["column"] = e.column();
  j["code"] = e.tag();
  j["message"] = std::string(e.what());
  j["excerpt"] = e.excerpt();
  return j;
}

inline json to_json(const validation_error& e) {
  json violations = json::array();
  for (const auto& av : e.violations()) {
    json entry = to_json(av.v);
    entry["line"] = av.line ? json(*av.line) : json(nullptr);
    violations.push_back(std::move(entry));
  }
  json j;
  j["error"] = "VALIDATION";
  j["violations"] = std::move(violations);
  return j;
}

} // namespace causaloop
