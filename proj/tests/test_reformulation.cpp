#include <cmath>

#include "doctest.h"
#include "drns/adversary.hpp"
#include "drns/random.hpp"
#include "drns/reformulation.hpp"
#include "support.hpp"

using namespace drns;

namespace {

void pin(LinearModel& m, int var, double value) {
  m.add_row({var}, {1.0}, RowSense::Equal, value);
}

void pin_iterate(LinearModel& m, const ExpansionVars& vars,
                 const Instance& inst, const MasterIterate& it) {
  for (int j = 0; j < inst.unit_count(); ++j) {
    pin(m, vars.gamma[j], it.gamma[j]);
    for (size_t q = 0; q < it.rho[j].size(); ++q)
      pin(m, vars.rho[j][q], it.rho[j][q]);
    for (size_t k = 0; k < it.u[j].size(); ++k) pin(m, vars.u[j][k], it.u[j][k]);
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    pin(m, vars.lambda[i], it.lambda[i]);
    for (size_t l = 0; l < it.v[i].size(); ++l) pin(m, vars.v[i][l], it.v[i][l]);
  }
}

MasterIterate random_iterate(const Instance& inst, Rng& rng) {
  MasterIterate it;
  const double cx = inst.costs.temp_nurse;
  for (int j = 0; j < inst.unit_count(); ++j) {
    it.gamma.push_back(rng.uniform(-cx, 0.0));
    it.rho.push_back({rng.uniform(-3.0, 3.0), rng.uniform(-0.5, 0.5)});
    const int range = inst.units[j].staff_max - inst.units[j].staff_min;
    const int on = rng.uniform_int(0, range);
    std::vector<double> u(range, 0.0), phi(range, 0.0);
    for (int k = 0; k < on; ++k) {
      u[k] = 1.0;
      phi[k] = it.gamma[j];
    }
    it.u.push_back(std::move(u));
    it.phi.push_back(std::move(phi));
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    it.lambda.push_back(rng.uniform(-cx, 0.0));
    const int range = inst.pools[i].staff_max - inst.pools[i].staff_min;
    const int on = rng.uniform_int(0, range);
    std::vector<double> v(range, 0.0), nu(range, 0.0);
    for (int l = 0; l < on; ++l) {
      v[l] = 1.0;
      nu[l] = it.lambda[i];
    }
    it.v.push_back(std::move(v));
    it.nu.push_back(std::move(nu));
  }
  return it;
}

// Objective of the linearized model evaluated term by term from first
// principles, for regression against LinearModel's bookkeeping.
double direct_objective(const Instance& inst, const MasterIterate& it,
                        double theta) {
  double total = theta;
  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& u = inst.units[j];
    total += inst.costs.unit_nurse * u.staff_min +
             u.attendance.values.front() * it.gamma[j];
    for (size_t q = 0; q < u.moments.size(); ++q)
      total += u.moments[q] * it.rho[j][q];
    for (size_t k = 0; k < it.u[j].size(); ++k)
      total += inst.costs.unit_nurse * it.u[j][k] +
               u.attendance.increment(static_cast<int>(k) + 1) * it.phi[j][k];
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& p = inst.pools[i];
    total += inst.costs.pool_nurse * p.staff_min +
             p.attendance.values.front() * it.lambda[i];
    for (size_t l = 0; l < it.v[i].size(); ++l)
      total += inst.costs.pool_nurse * it.v[i][l] +
               p.attendance.increment(static_cast<int>(l) + 1) * it.nu[i][l];
  }
  return total;
}

}  // namespace

TEST_SUITE("reformulation") {
  TEST_CASE("linear attendance has constant increments") {
    const auto f = AttendanceFunction::linear(0.8, 2, 10);
    for (int k = 1; k <= 8; ++k) CHECK(f.increment(k) == doctest::Approx(0.8));
  }

  TEST_CASE("a degenerate staffing range creates no expansion variables") {
    Instance inst = test::tiny_instance(1, {});
    inst.units[0].staff_min = inst.units[0].staff_max = 4;
    inst.units[0].attendance = AttendanceFunction::linear(0.9, 4, 4);
    LinearModel m;
    const auto vars = add_expansion(m, inst);
    CHECK(vars.u[0].empty());
    CHECK(vars.phi[0].empty());
  }

  TEST_CASE("product rows force the bilinear surrogate") {
    const Instance inst = test::tiny_instance(1, {}, 4);
    LinearModel m;
    const auto vars = add_expansion(m, inst);
    pin(m, vars.gamma[0], -2.0);
    pin(m, vars.u[0][0], 1.0);
    pin(m, vars.u[0][1], 1.0);
    pin(m, vars.u[0][2], 0.0);
    pin(m, vars.u[0][3], 0.0);
    m.clear_objective();
    const auto out = solve(m);
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(out.values[vars.phi[0][0]] == doctest::Approx(-2.0));
    CHECK(out.values[vars.phi[0][1]] == doctest::Approx(-2.0));
    CHECK(out.values[vars.phi[0][2]] == doctest::Approx(0.0));
    CHECK(out.values[vars.phi[0][3]] == doctest::Approx(0.0));
  }

  TEST_CASE("ordering rows forbid gaps in the expansion") {
    const Instance inst = test::tiny_instance(1, {}, 3);
    LinearModel m;
    const auto vars = add_expansion(m, inst);
    pin(m, vars.u[0][0], 0.0);
    pin(m, vars.u[0][1], 1.0);
    m.clear_objective();
    CHECK(solve(m).status == SolveStatus::Infeasible);
  }

  TEST_CASE("epigraph minima equal the coefficient expressions") {
    Rng rng(31);
    for (int n = 0; n < 25; ++n) {
      const Instance inst = test::tiny_instance(2, {{0, 1}}, 4, 8);
      const MasterIterate it = random_iterate(inst, rng);
      const CutCoefficients want = coefficients(inst, it);

      LinearModel m;
      const auto vars = add_expansion(m, inst);
      const auto epi = add_epigraphs(m, inst, vars);
      pin_iterate(m, vars, inst, it);
      m.clear_objective();
      for (int j = 0; j < 2; ++j) {
        m.set_objective(epi.eta_x[j], 1.0);
        m.set_objective(epi.eta_e[j], 1.0);
        m.set_objective(epi.zeta[j], 1.0);
      }
      m.set_objective(epi.pool_hinge[0], 1.0);
      const auto out = solve(m);
      REQUIRE(out.status == SolveStatus::Optimal);
      for (int j = 0; j < 2; ++j) {
        CHECK(out.values[epi.eta_x[j]] == doctest::Approx(want.t[j]).epsilon(1e-7));
        CHECK(out.values[epi.zeta[j]] + out.values[epi.eta_e[j]] ==
              doctest::Approx(want.r[j]).epsilon(1e-7));
      }
      CHECK(out.values[epi.pool_hinge[0]] == doctest::Approx(want.p[0]).epsilon(1e-7));
    }
  }

  TEST_CASE("epigraph demand rows on the worked example") {
    Instance inst = test::tiny_instance(1, {}, 4, 10);
    LinearModel m;
    const auto vars = add_expansion(m, inst);
    const auto epi = add_epigraphs(m, inst, vars);
    pin(m, vars.rho[0][0], 0.0);

    SUBCASE("linear supremum sits at the upper bound") {
      pin(m, vars.rho[0][1], 0.0);
      m.clear_objective();
      m.set_objective(epi.eta_x[0], 1.0);
      const auto out = solve(m);
      CHECK(out.objective == doctest::Approx(4000.0));
    }
    SUBCASE("quadratic penalty moves the supremum inside") {
      pin(m, vars.rho[0][1], 50.0);
      m.clear_objective();
      m.set_objective(epi.eta_x[0], 1.0);
      const auto out = solve(m);
      CHECK(out.objective == doctest::Approx(800.0));
    }
  }

  TEST_CASE("zero iterate with a zero floor leaves only nonnegativity") {
    const Instance inst = test::tiny_instance(1, {}, 4, 6);  // staff_min = 0
    LinearModel m;
    const auto vars = add_expansion(m, inst);
    const auto epi = add_epigraphs(m, inst, vars);
    for (int k = 0; k < 4; ++k) pin(m, vars.u[0][k], 0.0);
    pin(m, vars.gamma[0], 0.0);
    m.clear_objective();
    m.set_objective(epi.zeta[0], 1.0);
    const auto out = solve(m);
    CHECK(out.objective == doctest::Approx(0.0));
  }

  TEST_CASE("cut rows bind theta to the selected epigraphs") {
    const Instance inst = test::tiny_instance(2, {{0, 1}}, 3, 5);
    MasterModel mm = build_master(inst);
    const CutCoefficients zero{{0.0, 0.0}, {0.0, 0.0}, {0.0}, {0.0}};

    const AdversaryPoint idle = complete_point(inst, zero, {0, 0});
    const AdversaryPoint marked = complete_point(inst, zero, {1, 1});
    CHECK(encode_cut(mm, inst, idle));
    CHECK(encode_cut(mm, inst, marked));
    CHECK_FALSE(encode_cut(mm, inst, marked));  // duplicate

    // with both cuts, theta must reach max(sum eta_x, hinge + sum(zeta+eta_e))
    Rng rng(32);
    const MasterIterate it = random_iterate(inst, rng);
    pin_iterate(mm.model, mm.vars, inst, it);
    const auto out = solve(mm.model);
    REQUIRE(out.status == SolveStatus::Optimal);
    const CutCoefficients c = coefficients(inst, it);
    const double idle_val = c.p[0] + c.r[0] + c.r[1];
    const double marked_val = c.t[0] + c.t[1];
    CHECK(out.values[mm.theta] >=
          std::max(idle_val, marked_val) - 1e-6 * (1 + std::abs(idle_val)));
  }

  TEST_CASE("model objective matches the direct expression") {
    Rng rng(33);
    const Instance inst = test::tiny_instance(2, {{0, 1}}, 4, 6);
    MasterModel mm = build_master(inst);
    const MasterIterate it = random_iterate(inst, rng);
    pin_iterate(mm.model, mm.vars, inst, it);
    pin(mm.model, mm.theta, 17.0);
    const auto out = solve(mm.model);
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(out.objective == doctest::Approx(direct_objective(inst, it, 17.0)));
    CHECK(mm.model.objective_value(out.values) == doctest::Approx(out.objective));
  }

  TEST_CASE("budget row counts staffing above the floors") {
    Instance inst = test::tiny_instance(2, {}, 5);
    inst.resource_cap = 4;
    LinearModel m;
    const auto vars = add_expansion(m, inst);
    add_budget_row(m, inst, vars);
    m.clear_objective();
    m.set_minimize(false);
    for (int j = 0; j < 2; ++j)
      for (int var : vars.u[j]) m.set_objective(var, 1.0);
    const auto out = solve(m);
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(out.objective == doctest::Approx(4.0));
  }
}
