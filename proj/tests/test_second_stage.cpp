#include <cmath>

#include "doctest.h"
#include "drns/random.hpp"
#include "drns/second_stage.hpp"
#include "support.hpp"

using namespace drns;

namespace {

// Random staffing/scenario pair within the instance's boxes.
std::pair<Staffing, Scenario> random_point(const Instance& inst, Rng& rng) {
  Staffing st;
  Scenario sc;
  for (const auto& u : inst.units) {
    const int w = rng.uniform_int(u.staff_min, u.staff_max);
    st.unit_staff.push_back(w);
    sc.unit_show.push_back(rng.uniform_int(0, w));
    sc.demand.push_back(rng.uniform_int(u.demand_min, u.demand_max));
  }
  for (const auto& p : inst.pools) {
    const int y = rng.uniform_int(p.staff_min, p.staff_max);
    st.pool_staff.push_back(y);
    sc.pool_show.push_back(rng.uniform_int(0, y));
  }
  return {st, sc};
}

}  // namespace

TEST_SUITE("second_stage") {
  TEST_CASE("uncovered shortage hires temporaries") {
    const Instance inst = test::tiny_instance(1, {});
    const Staffing st{{5}, {}};
    const Scenario sc{{2}, {}, {5}};  // shortage 3
    const RecourseResult r = recourse_lp(inst, st, sc);
    CHECK(r.value == doctest::Approx(1200.0));
    CHECK(r.temps[0] == 3);
    CHECK(r.excess[0] == 0);
    CHECK(recourse_dual(inst, st, sc) == doctest::Approx(1200.0));
    CHECK(recourse_bruteforce(inst, st, sc, 8) == doctest::Approx(1200.0));
  }

  TEST_CASE("pool nurses cover before temporaries") {
    const Instance inst = test::tiny_instance(1, {{0}});
    const Staffing st{{5}, {3}};
    const Scenario sc{{2}, {2}, {5}};  // shortage 3, two pool nurses present
    const RecourseResult r = recourse_lp(inst, st, sc);
    CHECK(r.value == doctest::Approx(400.0));
    CHECK(r.reassigned[0][0] == 2);
    CHECK(r.temps[0] == 1);
    CHECK(recourse_dual(inst, st, sc) == doctest::Approx(400.0));
    CHECK(recourse_bruteforce(inst, st, sc, 8) == doctest::Approx(400.0));
  }

  TEST_CASE("surplus costs nothing when the credit is zero") {
    Instance inst = test::tiny_instance(2, {{0, 1}});
    inst.costs.excess_credit = 0.0;
    const Staffing st{{4, 4}, {2}};
    const Scenario sc{{4, 4}, {2}, {1, 2}};
    CHECK(recourse_bruteforce(inst, st, sc, 8) == doctest::Approx(0.0));
    CHECK(recourse_lp(inst, st, sc).value == doctest::Approx(0.0));
  }

  TEST_CASE("surplus earns the credit when positive") {
    const Instance inst = test::tiny_instance(1, {});
    const Staffing st{{5}, {}};
    const Scenario sc{{5}, {}, {2}};
    const RecourseResult r = recourse_lp(inst, st, sc);
    CHECK(r.value == doctest::Approx(-150.0));  // 3 spare at credit 50
    CHECK(r.excess[0] == 3);
  }

  TEST_CASE("lp matches the enumeration oracle on random points") {
    const Instance inst = test::tiny_instance(3, {{0, 1, 2}}, 5, 5);
    Rng rng(11);
    for (int n = 0; n < 60; ++n) {
      const auto [st, sc] = random_point(inst, rng);
      const double lp = recourse_lp(inst, st, sc).value;
      const double brute = recourse_bruteforce(inst, st, sc, 6);
      CHECK(lp == doctest::Approx(brute).epsilon(1e-9));
    }
  }

  TEST_CASE("lp matches the dual enumeration on overlapping pools") {
    const Instance inst = test::tiny_instance(4, {{0, 1, 2}, {1, 2, 3}}, 5, 5);
    Rng rng(12);
    for (int n = 0; n < 60; ++n) {
      const auto [st, sc] = random_point(inst, rng);
      const double lp = recourse_lp(inst, st, sc).value;
      CHECK(lp == doctest::Approx(recourse_dual(inst, st, sc)).epsilon(1e-9));
    }
  }

  TEST_CASE("dual enumeration is guarded") {
    const Instance inst = test::tiny_instance(13, {});
    Staffing st;
    Scenario sc;
    st.unit_staff.assign(13, 1);
    sc.unit_show.assign(13, 1);
    sc.demand.assign(13, 1);
    CHECK_THROWS_AS(recourse_dual(inst, st, sc), std::invalid_argument);
  }

  TEST_CASE("monotonicity in pool show-ups and demand") {
    const Instance inst = test::tiny_instance(3, {{0, 1}, {1, 2}}, 5, 6);
    Rng rng(13);
    for (int n = 0; n < 40; ++n) {
      auto [st, sc] = random_point(inst, rng);
      const double base = recourse_lp(inst, st, sc).value;

      Scenario more_pool = sc;
      const int i = rng.uniform_int(0, 1);
      if (more_pool.pool_show[i] < st.pool_staff[i]) {
        more_pool.pool_show[i] += 1;
        CHECK(recourse_lp(inst, st, more_pool).value <= base + 1e-9);
      }
      Scenario more_demand = sc;
      const int j = rng.uniform_int(0, 2);
      if (more_demand.demand[j] < inst.units[j].demand_max) {
        more_demand.demand[j] += 1;
        CHECK(recourse_lp(inst, st, more_demand).value >= base - 1e-9);
      }
    }
  }

  TEST_CASE("scenario outside the box is rejected") {
    const Instance inst = test::tiny_instance(1, {});
    CHECK_THROWS_AS(recourse_lp(inst, {{2}, {}}, {{3}, {}, {1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(recourse_lp(inst, {{2}, {}}, {{1}, {}, {99}}),
                    std::invalid_argument);
  }
}
