#include <cmath>

#include "doctest.h"
#include "drns/pool_design.hpp"
#include "drns/solver.hpp"
#include "support.hpp"

using namespace drns;

namespace {

// Four high-absence units and a near-perfect, mildly priced pool: pooling is
// strictly valuable, so tight targets need cross-training. The pool capacity
// is ample, so splitting a pool never beats merging one.
Instance design_template() {
  Instance inst = test::tiny_instance(4, {{0, 1, 2, 3}}, 5, 5, 0.6, 1.0);
  inst.costs.pool_nurse = 105.0;
  inst.pools[0].staff_max = 25;
  inst.pools[0].attendance = AttendanceFunction::linear(1.0, 0, 25);
  return inst;
}

}  // namespace

TEST_SUITE("pool_design") {
  TEST_CASE("a loose target needs no cross-training") {
    const Instance tmpl = design_template();
    const double z_none =
        solve_monolithic(strip_pools(tmpl), PoolStructure::NoPool).dr_cost;
    const PoolDesign d = solve_opd(tmpl, z_none);
    CHECK(d.pair_count == 0);
    CHECK(d.achieved_dr_cost <= z_none + 1e-5 * (1 + std::abs(z_none)));
  }

  TEST_CASE("the tightest target round-trips through a concrete instance") {
    const Instance tmpl = design_template();
    const double z_one =
        solve_monolithic(merge_to_one_pool(tmpl), PoolStructure::OnePool).dr_cost;
    const double z_none =
        solve_monolithic(strip_pools(tmpl), PoolStructure::NoPool).dr_cost;
    CHECK(z_one < z_none - 1e-6);  // pooling genuinely helps here

    const PoolDesign d = solve_opd(tmpl, z_one);
    CHECK(d.pair_count >= 1);
    CHECK(d.achieved_dr_cost <= z_one + 1e-5 * (1 + std::abs(z_one)));

    const Instance realized = realize_design(tmpl, d);
    const auto structure = classify_structure(realized);
    const double re_solved = solve_monolithic(realized, structure).dr_cost;
    CHECK(re_solved <= z_one + 1e-5 * (1 + std::abs(z_one)));
  }

  TEST_CASE("opened pools and pairs are consistent") {
    const Instance tmpl = design_template();
    const double z_one =
        solve_monolithic(merge_to_one_pool(tmpl), PoolStructure::OnePool).dr_cost;
    const PoolDesign d = solve_opd(tmpl, z_one);
    const int I = static_cast<int>(d.open.size());
    int expected_pairs = 0;
    for (int i = 0; i < I; ++i) {
      int members = 0;
      for (auto b : d.assign[i]) members += b;
      if (!d.open[i]) CHECK(members == 0);
      expected_pairs += members * (members - 1) / 2;
    }
    CHECK(d.pair_count == expected_pairs);
    // every unit is assigned exactly once, counting the unpooled slot
    for (int j = 0; j < tmpl.unit_count(); ++j) {
      int total = 0;
      for (int i = 0; i <= I; ++i) total += d.assign[i][j];
      CHECK(total == 1);
    }
  }

  TEST_CASE("an unreachable target is rejected") {
    const Instance tmpl = design_template();
    const double z_one =
        solve_monolithic(merge_to_one_pool(tmpl), PoolStructure::OnePool).dr_cost;
    CHECK_THROWS_AS(solve_opd(tmpl, z_one - 50.0), DesignError);
  }

  TEST_CASE("frontier is nonincreasing and hits both endpoints") {
    const Instance tmpl = design_template();
    const auto curve = frontier(tmpl, 5);
    REQUIRE(curve.size() == 5);
    CHECK(curve.front().second == 0);  // at the no-pool cost
    for (size_t n = 1; n < curve.size(); ++n) {
      CHECK(curve[n].first <= curve[n - 1].first + 1e-9);
      CHECK(curve[n].second >= curve[n - 1].second);
    }
    CHECK(curve.back().second >= 1);
  }

  TEST_CASE("symmetry breaking preserves the optimal value") {
    const Instance tmpl = design_template();
    const double z_one =
        solve_monolithic(merge_to_one_pool(tmpl), PoolStructure::OnePool).dr_cost;
    OpdParams plain;
    plain.symmetry_breaking = false;
    const PoolDesign with = solve_opd(tmpl, z_one);
    const PoolDesign without = solve_opd(tmpl, z_one, plain);
    CHECK(with.pair_count == without.pair_count);
  }

  TEST_CASE("doubling the box constant leaves the optimum unchanged") {
    const Instance tmpl = design_template();
    const double z_one =
        solve_monolithic(merge_to_one_pool(tmpl), PoolStructure::OnePool).dr_cost;
    OpdParams doubled;
    doubled.big_k = 2.0 * default_big_k(tmpl);
    const PoolDesign a = solve_opd(tmpl, z_one);
    const PoolDesign b = solve_opd(tmpl, z_one, doubled);
    CHECK(a.pair_count == b.pair_count);
  }

  TEST_CASE("design files round-trip") {
    const Instance tmpl = design_template();
    const double z_none =
        solve_monolithic(strip_pools(tmpl), PoolStructure::NoPool).dr_cost;
    const PoolDesign d = solve_opd(tmpl, z_none);
    const auto path = std::filesystem::temp_directory_path() / "design.json";
    write_design(d, path);
    const PoolDesign back = read_design(path);
    CHECK(back.pair_count == d.pair_count);
    CHECK(back.assign == d.assign);
    CHECK(back.open == d.open);
    std::remove(path.string().c_str());
  }
}
