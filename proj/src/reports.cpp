#include "homega/reports.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "homega/weights.hpp"

namespace homega {

namespace {

using nlohmann::json;

// JSON has no inf/nan; emit null for the linear value and keep the log.
json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json levels_json(const std::vector<TraceLevel>& levels) {
  json arr = json::array();
  for (const auto& l : levels)
    arr.push_back({{"depth", l.depth}, {"log_stat", finite_or_null(l.log_stat)}});
  return arr;
}

}  // namespace

std::string to_json(const RatioReport& r) {
  json j{{"kind", "ratio_scan"},
         {"lhs", r.lhs_id},
         {"rhs", r.rhs_id},
         {"weight", r.weight},
         {"grid", r.grid},
         {"ratio_min", finite_or_null(r.ratio_min)},
         {"ratio_max", finite_or_null(r.ratio_max)},
         {"log_ratio_min", finite_or_null(r.log_ratio_min)},
         {"log_ratio_max", finite_or_null(r.log_ratio_max)},
         {"stable", r.stable},
         {"skipped_points", r.skipped_points}};
  json band = json::array();
  for (const auto& b : r.band_trace)
    band.push_back({finite_or_null(b[0]), finite_or_null(b[1])});
  j["band_trace"] = band;
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"x", s.x},
                       {"y", s.y},
                       {"lhs", finite_or_null(s.lhs)},
                       {"rhs", finite_or_null(s.rhs)},
                       {"log_ratio", finite_or_null(s.log_ratio)}});
  j["samples"] = samples;
  return j.dump(2);
}

std::string to_json(const ConditionReport& r) {
  json j{{"kind", "condition"},
         {"condition_id", r.condition_id},
         {"weight", r.weight},
         {"verdict", to_string(r.verdict)},
         {"slope_estimate", finite_or_null(r.slope_estimate)},
         {"hypothesis_dhat", r.hypothesis_dhat}};
  if (!r.nu.empty()) j["nu"] = r.nu;
  j["params"] = r.params;
  json trace = json::array();
  for (const auto& t : r.sup_trace)
    trace.push_back({{"grid_point", t[0]},
                     {"value", finite_or_null(t[1])},
                     {"log_value", finite_or_null(t[2])}});
  j["sup_trace"] = trace;
  j["levels"] = levels_json(r.levels);
  return j.dump(2);
}

std::string to_json(const ProbeReport& r) {
  json j{{"kind", "probe"},
         {"probe_id", r.probe_id},
         {"operator", r.operator_desc},
         {"source_norm", r.source_norm},
         {"target_norm", r.target_norm},
         {"family", r.family},
         {"weight", r.weight},
         {"verdict", to_string(r.verdict)},
         {"slope_estimate", finite_or_null(r.slope_estimate)},
         {"hypothesis_dhat", r.hypothesis_dhat},
         {"cross_check", r.cross_check_id}};
  j["params"] = r.params;
  json trace = json::array();
  for (const auto& t : r.trace)
    trace.push_back({{"parameter", t[0]},
                     {"ratio", finite_or_null(t[1])},
                     {"log_ratio", finite_or_null(t[2])}});
  j["trace"] = trace;
  j["levels"] = levels_json(r.levels);
  return j.dump(2);
}

std::string to_json(const ClassReport& r) {
  json j{{"kind", "classification"},
         {"class", r.class_id},
         {"weight", r.weight},
         {"verdict", to_string(r.verdict)},
         {"witness",
          {{"grid_point", r.witness.grid_point},
           {"ratio", finite_or_null(r.witness.ratio)},
           {"log_ratio", finite_or_null(r.witness.log_ratio)}}}};
  if (r.constant_k) j["k"] = *r.constant_k;
  j["trace"] = levels_json(r.trace);
  return j.dump(2);
}

void write_csv(std::ostream& os, const RatioReport& r) {
  os << "# ratio_scan lhs=" << r.lhs_id << " rhs=" << r.rhs_id
     << " weight=" << r.weight << "\n";
  os << "grid_point,value\n";
  for (const auto& s : r.samples)
    os << s.x << "," << std::exp(s.log_ratio) << "\n";
}

void write_csv(std::ostream& os, const ConditionReport& r) {
  os << "# condition=" << r.condition_id << " weight=" << r.weight;
  for (const auto& [k, v] : r.params) os << " " << k << "=" << v;
  os << " verdict=" << to_string(r.verdict) << "\n";
  os << "grid_point,value\n";
  for (const auto& t : r.sup_trace) os << t[0] << "," << t[1] << "\n";
}

void write_csv(std::ostream& os, const ProbeReport& r) {
  os << "# probe=" << r.probe_id << " weight=" << r.weight
     << " verdict=" << to_string(r.verdict) << "\n";
  os << "grid_point,value\n";
  for (const auto& t : r.trace) os << t[0] << "," << t[1] << "\n";
}

}  // namespace homega
