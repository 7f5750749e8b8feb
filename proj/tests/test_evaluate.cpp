#include <cmath>

#include "doctest.h"
#include "drns/evaluate.hpp"
#include "drns/random.hpp"
#include "support.hpp"

using namespace drns;

TEST_SUITE("evaluate") {
  TEST_CASE("raw sample moments") {
    const auto mu = empirical_moments({2, 4}, 2);
    CHECK(mu[0] == doctest::Approx(3.0));
    CHECK(mu[1] == doctest::Approx(10.0));

    const auto constant = empirical_moments({5, 5, 5}, 3);
    CHECK(constant[0] == doctest::Approx(5.0));
    CHECK(constant[1] == doctest::Approx(25.0));
    CHECK(constant[2] == doctest::Approx(125.0));

    CHECK_THROWS_AS(empirical_moments({}, 2), std::invalid_argument);
  }

  TEST_CASE("moments match a hand recomputation on a longer history") {
    const std::vector<int> history = {3, 7, 7, 2, 9, 4, 4, 4, 1, 6};
    const auto mu = empirical_moments(history, 2);
    double m1 = 0, m2 = 0;
    for (int d : history) {
      m1 += d;
      m2 += d * d;
    }
    CHECK(mu[0] == doctest::Approx(m1 / 10.0));
    CHECK(mu[1] == doctest::Approx(m2 / 10.0));
  }

  TEST_CASE("attendance fit averages repeated observations") {
    const AttendanceFunction f = fit_attendance({{5, 4}, {5, 5}}, 0, 6);
    CHECK(f.at(5) == doctest::Approx(4.5));
    CHECK(f.at(0) == doctest::Approx(0.0));
    // interpolation toward the origin, extrapolation beyond the data
    CHECK(f.at(1) == doctest::Approx(0.9));
    CHECK(f.at(6) == doctest::Approx(5.4));
  }

  TEST_CASE("a single observed level extrapolates through the origin") {
    const AttendanceFunction f = fit_attendance({{4, 3}}, 0, 8);
    for (int level = 0; level <= 8; ++level)
      CHECK(f.at(level) == doctest::Approx(0.75 * level));
  }

  TEST_CASE("values never exceed the staffing level") {
    const AttendanceFunction f = fit_attendance({{2, 2}, {4, 2}}, 0, 10);
    for (int level = 0; level <= 10; ++level) {
      CHECK(f.at(level) >= 0.0);
      CHECK(f.at(level) <= level);
    }
  }

  TEST_CASE("binomial records fit back to the generating rate") {
    Rng rng(51);
    const double rate = 0.8;
    std::vector<std::pair<int, int>> records;
    for (int n = 0; n < 4000; ++n) {
      const int level = rng.uniform_int(3, 12);
      records.emplace_back(level, rng.binomial(level, rate));
    }
    const AttendanceFunction f = fit_attendance(records, 0, 12);
    for (int level = 3; level <= 12; ++level)
      CHECK(f.at(level) == doctest::Approx(rate * level).epsilon(0.05));
  }

  TEST_CASE("scenario sampling is deterministic and stays in the box") {
    const Instance inst = test::tiny_instance(3, {{0, 1, 2}}, 8, 6, 0.8, 0.99);
    const Staffing st{{6, 5, 4}, {3}};
    const ScenarioBatch a = sample_scenarios(inst, st, 200, 9);
    const ScenarioBatch b = sample_scenarios(inst, st, 200, 9);
    REQUIRE(a.scenarios.size() == 200);
    for (size_t n = 0; n < a.scenarios.size(); ++n) {
      const Scenario& sc = a.scenarios[n];
      CHECK(sc.demand == b.scenarios[n].demand);
      CHECK(sc.unit_show == b.scenarios[n].unit_show);
      CHECK(sc.pool_show == b.scenarios[n].pool_show);
      for (int j = 0; j < 3; ++j) {
        CHECK(sc.unit_show[j] >= 0);
        CHECK(sc.unit_show[j] <= st.unit_staff[j]);
        CHECK(sc.demand[j] >= inst.units[j].demand_min);
        CHECK(sc.demand[j] <= inst.units[j].demand_max);
      }
      CHECK(sc.pool_show[0] <= st.pool_staff[0]);
    }
  }

  TEST_CASE("perfect attendance always shows everyone") {
    const Instance inst = test::tiny_instance(2, {}, 6, 6, 1.0);
    const Staffing st{{4, 6}, {}};
    const ScenarioBatch batch = sample_scenarios(inst, st, 50, 3);
    for (const auto& sc : batch.scenarios) {
      CHECK(sc.unit_show[0] == 4);
      CHECK(sc.unit_show[1] == 6);
    }
  }

  TEST_CASE("zero demand spread degenerates to the mean") {
    Instance inst = test::tiny_instance(1, {}, 6, 8);
    inst.units[0].moments = {4.0, 16.0};  // sd = 0
    const ScenarioBatch batch = sample_scenarios(inst, {{5}, {}}, 30, 4);
    for (const auto& sc : batch.scenarios) CHECK(sc.demand[0] == 4);
  }

  TEST_CASE("show-up means track the binomial rate") {
    const Instance inst = test::tiny_instance(1, {}, 30, 6, 0.7);
    const Staffing st{{20}, {}};
    const int n = 20000;
    const ScenarioBatch batch = sample_scenarios(inst, st, n, 5);
    double mean = 0.0;
    for (const auto& sc : batch.scenarios) mean += sc.unit_show[0];
    mean /= n;
    const double sigma = std::sqrt(20 * 0.7 * 0.3 / n);
    CHECK(std::abs(mean - 14.0) <= 3.0 * sigma);
  }

  TEST_CASE("nonlinear attendance needs explicit rates") {
    Instance inst = test::tiny_instance(1, {}, 4, 6);
    inst.units[0].attendance.values = {0.0, 0.9, 1.2, 1.3, 1.35};
    CHECK_THROWS_AS(sample_scenarios(inst, {{3}, {}}, 10, 1),
                    std::invalid_argument);
    const ScenarioBatch batch = sample_scenarios(inst, {{3}, {}}, 10, 1, {0.45}, {});
    CHECK(batch.scenarios.size() == 10);
  }

  TEST_CASE("zero demand with no credit leaves only the first stage") {
    Instance inst = test::tiny_instance(2, {{0, 1}}, 6, 6);
    inst.costs.excess_credit = 0.0;
    const Staffing st{{3, 3}, {2}};
    ScenarioBatch batch;
    batch.scenarios.assign(4, Scenario{{3, 3}, {2}, {0, 0}});
    const EvaluationReport rep = out_of_sample(inst, st, batch);
    CHECK(rep.avg_cost == doctest::Approx(first_stage_cost(inst, st)));
    CHECK(rep.avg_temporaries == doctest::Approx(0.0));
  }

  TEST_CASE("a single scenario reproduces its recourse value") {
    const Instance inst = test::tiny_instance(2, {{0, 1}}, 6, 6);
    const Staffing st{{2, 2}, {1}};
    const Scenario sc{{1, 2}, {1}, {4, 2}};
    ScenarioBatch batch;
    batch.scenarios = {sc};
    const EvaluationReport rep = out_of_sample(inst, st, batch);
    CHECK(rep.avg_cost == doctest::Approx(first_stage_cost(inst, st) +
                                          recourse_lp(inst, st, sc).value));
  }

  TEST_CASE("parallel evaluation matches the sequential path") {
    const Instance inst = test::tiny_instance(3, {{0, 1, 2}}, 6, 6, 0.8, 0.99);
    const Staffing st{{4, 4, 4}, {2}};
    const ScenarioBatch batch = sample_scenarios(inst, st, 120, 6);
    const EvaluationReport seq = out_of_sample(inst, st, batch, 1);
    const EvaluationReport par = out_of_sample(inst, st, batch, 4);
    CHECK(seq.avg_cost == doctest::Approx(par.avg_cost).epsilon(1e-12));
    CHECK(seq.avg_temporaries == doctest::Approx(par.avg_temporaries));
  }

  TEST_CASE("the blind variant assumes perfect attendance") {
    const Instance inst = test::tiny_instance(2, {{0, 1}}, 6, 6, 0.7, 0.95);
    const Instance blind = absenteeism_blind_variant(inst);
    double rate = 0.0;
    REQUIRE(blind.units[0].attendance.linear_rate(&rate));
    CHECK(rate == doctest::Approx(1.0));
    REQUIRE(blind.pools[0].attendance.linear_rate(&rate));
    CHECK(rate == doctest::Approx(1.0));
  }

  TEST_CASE("batch files round-trip") {
    const Instance inst = test::tiny_instance(2, {}, 6, 6, 0.9);
    const ScenarioBatch batch = sample_scenarios(inst, {{3, 4}, {}}, 25, 8);
    const auto path = std::filesystem::temp_directory_path() / "batch.json";
    write_batch(batch, path);
    const ScenarioBatch back = read_batch(path);
    CHECK(back.seed == batch.seed);
    REQUIRE(back.scenarios.size() == batch.scenarios.size());
    for (size_t n = 0; n < back.scenarios.size(); ++n)
      CHECK(back.scenarios[n].demand == batch.scenarios[n].demand);
    std::remove(path.string().c_str());
  }
}
