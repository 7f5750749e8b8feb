#include <cmath>

#include "doctest.h"
#include "drns/ambiguity.hpp"
#include "support.hpp"

using namespace drns;

namespace {

const std::filesystem::path kFixture =
    std::filesystem::path(DRNS_TEST_DATA_DIR) / "representative.json";

// The explicit product distribution behind the sufficiency argument: demand
// marginals from the moment LP, two-point marginals {0, level} for show-ups.
void check_certificate(const Instance& inst, const Staffing& st,
                       const FeasibilityReport& rep, double tol) {
  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& pmf = rep.demand_pmf[j];
    double mass = 0.0;
    for (double p : pmf) mass += p;
    CHECK(mass == doctest::Approx(1.0).epsilon(tol));
    for (size_t q = 0; q < inst.units[j].moments.size(); ++q) {
      double moment = 0.0;
      for (size_t k = 0; k < pmf.size(); ++k)
        moment += pmf[k] * std::pow(inst.units[j].demand_min + static_cast<int>(k),
                                    static_cast<double>(q + 1));
      CHECK(moment == doctest::Approx(inst.units[j].moments[q]).epsilon(1e-7));
    }
    // two-point marginal on {0, w} with mean f(w)
    const double mean = inst.units[j].attendance.at(st.unit_staff[j]);
    if (st.unit_staff[j] > 0) {
      const double hi = mean / st.unit_staff[j];
      CHECK(hi >= -tol);
      CHECK(hi <= 1.0 + tol);
      CHECK(hi * st.unit_staff[j] == doctest::Approx(mean).epsilon(1e-12));
    } else {
      CHECK(mean == doctest::Approx(0.0));
    }
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    const double mean = inst.pools[i].attendance.at(st.pool_staff[i]);
    if (st.pool_staff[i] > 0) {
      const double hi = mean / st.pool_staff[i];
      CHECK(hi >= -tol);
      CHECK(hi <= 1.0 + tol);
    }
  }
}

}  // namespace

TEST_SUITE("ambiguity") {
  TEST_CASE("moments from an empirical pmf are representable") {
    Instance inst = test::tiny_instance(2, {{0, 1}}, 6, 6, 0.8, 0.99);
    // moments of the empirical distribution {2: 1/2, 5: 1/2} on [0, 6]
    inst.units[0].moments = {3.5, 14.5};
    inst.units[1].moments = {3.5, 14.5};
    const Staffing st{{4, 4}, {3}};
    const auto rep = check_feasibility(inst, st);
    CHECK(rep.overall);
    CHECK(rep.moment_gap[0] == doctest::Approx(0.0).epsilon(1e-7));
    check_certificate(inst, st, rep, 1e-7);
  }

  TEST_CASE("a mean outside the support box is caught") {
    Instance inst = test::tiny_instance(1, {});
    inst.units[0].moments = {inst.units[0].demand_max + 1.0,
                             std::pow(inst.units[0].demand_max + 1.0, 2)};
    const auto rep = check_feasibility(inst, {{3}, {}});
    CHECK_FALSE(rep.overall);
    CHECK(rep.moment_gap[0] > 1e-7);
  }

  TEST_CASE("show-up means above the staffing level are caught") {
    Instance inst = test::tiny_instance(1, {});
    inst.units[0].attendance.values[2] = 3.5;  // f(2) > 2
    const auto rep = check_feasibility(inst, {{2}, {}});
    CHECK_FALSE(rep.unit_mean_ok[0]);
    CHECK_FALSE(rep.overall);
    CHECK(staffing_box_feasible(inst).has_value());
  }

  TEST_CASE("representative fixture passes end to end") {
    const Instance inst = read_instance(kFixture);
    CHECK_FALSE(staffing_box_feasible(inst).has_value());
    Staffing st;
    for (const auto& u : inst.units) st.unit_staff.push_back(u.staff_min);
    for (const auto& p : inst.pools) st.pool_staff.push_back(p.staff_min);
    const auto rep = check_feasibility(inst, st);
    CHECK(rep.overall);
    check_certificate(inst, st, rep, 1e-7);
  }

  TEST_CASE("condition three does not depend on the staffing") {
    const Instance inst = test::tiny_instance(2, {{0, 1}});
    const auto a = moment_feasibility(inst);
    const auto b = moment_feasibility(inst);
    REQUIRE(a.size() == 2);
    CHECK(a[0].gap == doctest::Approx(b[0].gap));
    CHECK(a[1].gap == doctest::Approx(b[1].gap));
  }
}
