#include "drns/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include "drns/random.hpp"
#include "json.hpp"

namespace drns {

std::vector<double> empirical_moments(const std::vector<int>& demands,
                                      int order_count) {
  if (demands.empty())
    throw std::invalid_argument("empirical_moments: empty demand history");
  std::vector<double> mu(order_count, 0.0);
  for (int d : demands) {
    double power = 1.0;
    for (int q = 0; q < order_count; ++q) {
      power *= d;
      mu[q] += power;
    }
  }
  for (double& m : mu) m /= static_cast<double>(demands.size());
  return mu;
}

AttendanceFunction fit_attendance(const std::vector<std::pair<int, int>>& records,
                                  int lo, int hi) {
  if (records.empty())
    throw std::invalid_argument("fit_attendance: no observations");

  std::map<int, std::pair<double, int>> sums;  // level -> (total, count)
  for (auto [level, showed] : records) {
    if (showed < 0 || showed > level)
      throw std::invalid_argument("fit_attendance: show-ups outside [0, level]");
    auto& s = sums[level];
    s.first += showed;
    s.second += 1;
  }

  // Anchors: the origin plus per-level sample means.
  std::vector<std::pair<double, double>> anchors = {{0.0, 0.0}};
  for (auto& [level, s] : sums)
    if (level > 0) anchors.emplace_back(level, s.first / s.second);

  auto eval = [&](int level) -> double {
    if (level <= 0) return 0.0;
    const double x = level;
    for (size_t n = 1; n < anchors.size(); ++n)
      if (x <= anchors[n].first) {
        const auto [x0, y0] = anchors[n - 1];
        const auto [x1, y1] = anchors[n];
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
      }
    if (anchors.size() == 1) return 0.0;  // only the origin: no show-up signal
    const auto [x0, y0] = anchors[anchors.size() - 2];
    const auto [x1, y1] = anchors.back();
    return y1 + (y1 - y0) * (x - x1) / (x1 - x0);
  };

  AttendanceFunction f;
  f.base_level = lo;
  for (int level = lo; level <= hi; ++level)
    f.values.push_back(std::clamp(eval(level), 0.0, static_cast<double>(level)));
  return f;
}

namespace {

std::vector<double> resolve_rates(const std::vector<double>& given, size_t count,
                                  auto&& spec_at, const char* kind) {
  if (!given.empty()) {
    if (given.size() != count)
      throw std::invalid_argument(std::string("explicit ") + kind +
                                  " rates have the wrong length");
    return given;
  }
  std::vector<double> rates;
  for (size_t n = 0; n < count; ++n) {
    double rate = 0.0;
    if (!spec_at(n).linear_rate(&rate))
      throw std::invalid_argument(
          std::string(kind) + " attendance is not a linear rate; pass explicit rates");
    rates.push_back(rate);
  }
  return rates;
}

}  // namespace

ScenarioBatch sample_scenarios(const Instance& inst, const Staffing& staffing,
                               int count, std::uint64_t seed,
                               const std::vector<double>& unit_rates,
                               const std::vector<double>& pool_rates) {
  if (count < 1) throw std::invalid_argument("sample_scenarios: count must be >= 1");
  const int J = inst.unit_count(), I = inst.pool_count();
  const auto u_rates = resolve_rates(unit_rates, J,
                                     [&](size_t j) -> const AttendanceFunction& {
                                       return inst.units[j].attendance;
                                     },
                                     "unit");
  const auto p_rates = resolve_rates(pool_rates, I,
                                     [&](size_t i) -> const AttendanceFunction& {
                                       return inst.pools[i].attendance;
                                     },
                                     "pool");

  ScenarioBatch batch;
  batch.seed = seed;
  batch.metadata = "demand: log-normal matched to the first two moments, "
                   "rounded and clamped; show-ups: binomial at the attendance rates";
  batch.scenarios.reserve(count);
  for (int n = 0; n < count; ++n) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(n)));
    Scenario sc;
    for (int j = 0; j < J; ++j) {
      const auto& u = inst.units[j];
      const double mean = u.moments.at(0);
      const double var = u.moments.size() > 1 ? u.moments[1] - mean * mean : 0.0;
      const double draw = rng.lognormal_mean_sd(mean, std::sqrt(std::max(0.0, var)));
      const int d = std::clamp(static_cast<int>(std::lround(draw)), u.demand_min,
                               u.demand_max);
      sc.demand.push_back(d);
    }
    for (int j = 0; j < J; ++j)
      sc.unit_show.push_back(rng.binomial(staffing.unit_staff[j], u_rates[j]));
    for (int i = 0; i < I; ++i)
      sc.pool_show.push_back(rng.binomial(staffing.pool_staff[i], p_rates[i]));
    batch.scenarios.push_back(std::move(sc));
  }
  return batch;
}

EvaluationReport out_of_sample(const Instance& inst, const Staffing& staffing,
                               const ScenarioBatch& batch, int jobs) {
  const int n = static_cast<int>(batch.scenarios.size());
  if (n == 0) throw std::invalid_argument("out_of_sample: empty batch");
  const double base = first_stage_cost(inst, staffing);

  std::vector<double> costs(n);
  std::vector<double> temps(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
      const RecourseResult r = recourse_lp(inst, staffing, batch.scenarios[k]);
      costs[k] = base + r.value;
      double t = 0.0;
      for (int x : r.temps) t += x;
      temps[k] = t;
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EvaluationReport rep;
  rep.scenario_costs = costs;
  for (int k = 0; k < n; ++k) {
    rep.avg_cost += costs[k];
    rep.avg_temporaries += temps[k];
  }
  rep.avg_cost /= n;
  rep.avg_temporaries /= n;
  double ss = 0.0;
  for (double c : costs) ss += (c - rep.avg_cost) * (c - rep.avg_cost);
  rep.cost_stddev = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return rep;
}

Instance absenteeism_blind_variant(const Instance& inst) {
  Instance blind = inst;
  for (auto& u : blind.units)
    u.attendance = AttendanceFunction::identity(u.staff_min, u.staff_max);
  for (auto& p : blind.pools)
    p.attendance = AttendanceFunction::identity(p.staff_min, p.staff_max);
  blind.label = inst.label + "-blind";
  return blind;
}

void write_batch(const ScenarioBatch& b, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["seed"] = b.seed;
  doc["metadata"] = b.metadata;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& sc : b.scenarios)
    rows.push_back({{"unit_show", sc.unit_show},
                    {"pool_show", sc.pool_show},
                    {"demand", sc.demand}});
  doc["scenarios"] = rows;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump() << '\n';
}

ScenarioBatch read_batch(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  ScenarioBatch b;
  b.seed = doc.at("seed").get<std::uint64_t>();
  b.metadata = doc.value("metadata", std::string{});
  for (const auto& row : doc.at("scenarios")) {
    Scenario sc;
    sc.unit_show = row.at("unit_show").get<std::vector<int>>();
    sc.pool_show = row.at("pool_show").get<std::vector<int>>();
    sc.demand = row.at("demand").get<std::vector<int>>();
    b.scenarios.push_back(std::move(sc));
  }
  return b;
}

void write_report(const EvaluationReport& r, const Instance& inst,
                  const Staffing& staffing, std::uint64_t seed,
                  const std::filesystem::path& path, bool per_scenario) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["label"] = inst.label;
  doc["seed"] = seed;
  doc["scenarios"] = r.scenario_costs.size();
  doc["unit_staff"] = staffing.unit_staff;
  doc["pool_staff"] = staffing.pool_staff;
  doc["avg_cost"] = r.avg_cost;
  doc["avg_temporaries"] = r.avg_temporaries;
  doc["cost_stddev"] = r.cost_stddev;
  if (per_scenario) doc["scenario_costs"] = r.scenario_costs;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace drns
