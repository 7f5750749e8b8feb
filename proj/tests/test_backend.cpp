#include "doctest.h"
#include "drns/backend.hpp"

using namespace drns;

TEST_SUITE("backend") {
  TEST_CASE("integer minimum") {
    LinearModel m;
    const int x = m.add_var(0.0, kInf, true, "x");
    m.set_objective(x, 1.0);
    m.add_row({x}, {1.0}, RowSense::GreaterEqual, 3.0);
    const auto out = solve(m);
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.objective == doctest::Approx(3.0));
    CHECK(out.values[x] == doctest::Approx(3.0));
  }

  TEST_CASE("infeasible box") {
    LinearModel m;
    const int x = m.add_var(-kInf, kInf, false, "x");
    m.set_minimize(false);
    m.set_objective(x, 1.0);
    m.add_row({x}, {1.0}, RowSense::LessEqual, 3.0);
    m.add_row({x}, {1.0}, RowSense::GreaterEqual, 5.0);
    CHECK(solve(m).status == SolveStatus::Infeasible);
  }

  TEST_CASE("unbounded") {
    LinearModel m;
    const int x = m.add_var(0.0, kInf, false, "x");
    m.set_minimize(false);
    m.set_objective(x, 1.0);
    CHECK(solve(m).status == SolveStatus::Unbounded);
  }

  TEST_CASE("duals on a pure LP") {
    LinearModel m;
    const int x = m.add_var(0.0, kInf, false, "x");
    m.set_objective(x, 1.0);
    const int row = m.add_row({x}, {1.0}, RowSense::GreaterEqual, 3.0);
    const auto out = solve(m);
    REQUIRE(out.status == SolveStatus::Optimal);
    REQUIRE(out.row_duals.size() == 1);
    CHECK(out.row_duals[row] == doctest::Approx(1.0));
  }

  TEST_CASE("objective constant is included") {
    LinearModel m;
    const int x = m.add_var(2.0, 10.0, false, "x");
    m.set_objective(x, 1.0);
    m.add_objective_constant(5.0);
    const auto out = solve(m);
    CHECK(out.objective == doctest::Approx(7.0));
  }

  TEST_CASE("re-solving is deterministic") {
    LinearModel m;
    const int x = m.add_var(0.0, 10.0, true, "x");
    const int y = m.add_var(0.0, 10.0, true, "y");
    m.set_minimize(false);
    m.set_objective(x, 3.0);
    m.set_objective(y, 2.0);
    m.add_row({x, y}, {2.0, 1.0}, RowSense::LessEqual, 11.0);
    const auto a = solve(m);
    const auto b = solve(m);
    REQUIRE(a.status == SolveStatus::Optimal);
    CHECK(a.status == b.status);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
    CHECK(a.values == b.values);
  }
}
