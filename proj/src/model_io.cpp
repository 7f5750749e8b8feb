#include <fstream>

#include "drns/model.hpp"
#include "json.hpp"

namespace drns {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json attendance_to_json(const AttendanceFunction& f) {
  return json{{"base_level", f.base_level}, {"values", f.values}};
}

AttendanceFunction attendance_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("base_level") || !j.contains("values"))
    throw ParseError(where + ": attendance needs base_level and values");
  AttendanceFunction f;
  f.base_level = j.at("base_level").get<int>();
  f.values = j.at("values").get<std::vector<double>>();
  return f;
}

json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(path.string() + ": expected an object");
  const int version = doc.value("version", -1);
  if (version != kSchemaVersion)
    throw ParseError(path.string() + ": unsupported schema version " +
                     std::to_string(version));
  return doc;
}

void store_document(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["label"] = inst.label;
  doc["costs"] = {{"unit_nurse", inst.costs.unit_nurse},
                  {"pool_nurse", inst.costs.pool_nurse},
                  {"temp_nurse", inst.costs.temp_nurse},
                  {"excess_credit", inst.costs.excess_credit}};
  doc["units"] = json::array();
  for (const auto& u : inst.units) {
    doc["units"].push_back({{"moments", u.moments},
                            {"demand_bounds", {u.demand_min, u.demand_max}},
                            {"staffing_bounds", {u.staff_min, u.staff_max}},
                            {"attendance", attendance_to_json(u.attendance)}});
  }
  doc["pools"] = json::array();
  for (const auto& p : inst.pools) {
    std::vector<int> one_based;
    for (int j : p.members) one_based.push_back(j + 1);
    doc["pools"].push_back({{"members", one_based},
                            {"staffing_bounds", {p.staff_min, p.staff_max}},
                            {"attendance", attendance_to_json(p.attendance)}});
  }
  if (inst.resource_cap)
    doc["resource_cap"] = *inst.resource_cap;
  else
    doc["resource_cap"] = nullptr;
  store_document(doc, path);
}

Instance read_instance(const std::filesystem::path& path) {
  const json doc = load_document(path);
  Instance inst;
  inst.label = doc.value("label", std::string{});
  try {
    const auto& c = doc.at("costs");
    inst.costs.unit_nurse = c.at("unit_nurse").get<double>();
    inst.costs.pool_nurse = c.at("pool_nurse").get<double>();
    inst.costs.temp_nurse = c.at("temp_nurse").get<double>();
    inst.costs.excess_credit = c.at("excess_credit").get<double>();

    int j = 0;
    for (const auto& ju : doc.at("units")) {
      const std::string where = path.string() + ": units[" + std::to_string(j++) + "]";
      UnitSpec u;
      u.moments = ju.at("moments").get<std::vector<double>>();
      u.demand_min = ju.at("demand_bounds").at(0).get<int>();
      u.demand_max = ju.at("demand_bounds").at(1).get<int>();
      u.staff_min = ju.at("staffing_bounds").at(0).get<int>();
      u.staff_max = ju.at("staffing_bounds").at(1).get<int>();
      u.attendance = attendance_from_json(ju.at("attendance"), where);
      inst.units.push_back(std::move(u));
    }
    int i = 0;
    for (const auto& jp : doc.at("pools")) {
      const std::string where = path.string() + ": pools[" + std::to_string(i++) + "]";
      PoolSpec p;
      for (int m : jp.at("members").get<std::vector<int>>()) p.members.push_back(m - 1);
      p.staff_min = jp.at("staffing_bounds").at(0).get<int>();
      p.staff_max = jp.at("staffing_bounds").at(1).get<int>();
      p.attendance = attendance_from_json(jp.at("attendance"), where);
      inst.pools.push_back(std::move(p));
    }
    if (doc.contains("resource_cap") && !doc.at("resource_cap").is_null())
      inst.resource_cap = doc.at("resource_cap").get<long long>();
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return inst;
}

void write_solution(const StaffingSolution& sol, const std::filesystem::path& path) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["unit_staff"] = sol.unit_staff;
  doc["pool_staff"] = sol.pool_staff;
  doc["dr_cost"] = sol.dr_cost;
  doc["first_stage_cost"] = sol.first_stage_cost;
  doc["worst_case_expectation"] = sol.worst_case_expectation;
  doc["method"] = sol.method;
  doc["cuts_used"] = sol.cuts_used;
  doc["wall_time_s"] = sol.wall_time_s;
  store_document(doc, path);
}

StaffingSolution read_solution(const std::filesystem::path& path) {
  const json doc = load_document(path);
  StaffingSolution sol;
  try {
    sol.unit_staff = doc.at("unit_staff").get<std::vector<int>>();
    sol.pool_staff = doc.at("pool_staff").get<std::vector<int>>();
    sol.dr_cost = doc.at("dr_cost").get<double>();
    sol.first_stage_cost = doc.at("first_stage_cost").get<double>();
    sol.worst_case_expectation = doc.at("worst_case_expectation").get<double>();
    sol.method = doc.value("method", std::string{});
    sol.cuts_used = doc.value("cuts_used", 0);
    sol.wall_time_s = doc.value("wall_time_s", 0.0);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return sol;
}

}  // namespace drns
