#include <cstdio>
#include <fstream>
#include <functional>

#include "doctest.h"
#include "drns/adversary.hpp"
#include "drns/random.hpp"
#include "drns/solver.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace drns;

namespace {

Instance small_case(PoolStructure s) {
  switch (s) {
    case PoolStructure::NoPool:
      return test::tiny_instance(3, {}, 5, 5, 0.8);
    case PoolStructure::OnePool:
      return test::tiny_instance(3, {{0, 1, 2}}, 5, 5, 0.8, 0.99);
    case PoolStructure::Disjoint:
      return test::tiny_instance(3, {{0, 1}, {2}}, 5, 5, 0.8, 0.99);
    case PoolStructure::Chained:
      return test::tiny_instance(3, {{0, 1}, {1, 2}, {0, 2}}, 5, 5, 0.8, 0.99);
    case PoolStructure::Arbitrary:
      return test::tiny_instance(3, {{0, 1}, {1, 2}}, 4, 4, 0.8, 0.99);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("separation agrees with the monolithic model per structure") {
    for (auto s : {PoolStructure::NoPool, PoolStructure::OnePool,
                   PoolStructure::Disjoint, PoolStructure::Chained}) {
      CAPTURE(to_string(s));
      const Instance inst = small_case(s);
      const StaffingSolution milp = solve_monolithic(inst, s);
      const SeparationResult sep = solve_separation(inst);
      CHECK(sep.converged);
      CHECK(sep.solution.dr_cost ==
            doctest::Approx(milp.dr_cost).epsilon(1e-5));
      CHECK(milp.dr_cost == doctest::Approx(milp.first_stage_cost +
                                            milp.worst_case_expectation));
    }
  }

  TEST_CASE("master objective is nondecreasing across iterations") {
    const Instance inst = small_case(PoolStructure::Arbitrary);
    const SeparationResult sep = solve_separation(inst);
    REQUIRE(sep.converged);
    for (size_t n = 1; n < sep.log.size(); ++n)
      CHECK(sep.log[n].master_obj >= sep.log[n - 1].master_obj - 1e-7);
    CHECK(sep.log.back().violation <= 1e-6);
  }

  TEST_CASE("no violated vertex survives at termination") {
    const Instance inst = small_case(PoolStructure::Arbitrary);
    const SeparationResult sep = solve_separation(inst);
    REQUIRE(sep.converged);
    const CutCoefficients c = coefficients(inst, sep.final_iterate);
    Rng rng(41);
    for (int n = 0; n < 100; ++n) {
      std::vector<std::uint8_t> t(inst.unit_count());
      for (auto& b : t) b = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
      const AdversaryPoint pt = complete_point(inst, c, t);
      CHECK(sep.final_theta >= pt.value - 1e-6);
    }
  }

  TEST_CASE("separation matches exhaustive enumeration on overlapping pools") {
    const Instance inst = test::tiny_instance(3, {{0, 1}, {1, 2}}, 3, 4, 0.8, 0.99);
    const SeparationResult sep = solve_separation(inst);
    REQUIRE(sep.converged);
    CHECK(sep.solution.dr_cost ==
          doctest::Approx(test::grid_optimum(inst)).epsilon(1e-6));
  }

  TEST_CASE("monolithic model rejects a structure mismatch") {
    const Instance inst = small_case(PoolStructure::OnePool);
    CHECK_THROWS_AS(solve_monolithic(inst, PoolStructure::Disjoint), SolverError);
  }

  TEST_CASE("unrepresentable moments are refused") {
    Instance inst = small_case(PoolStructure::OnePool);
    inst.units[0].moments = {inst.units[0].demand_max + 2.0, 1.0};
    CHECK_THROWS_AS(solve_monolithic(inst, PoolStructure::OnePool), SolverError);
    CHECK_THROWS_AS(solve_separation(inst), SolverError);
  }

  TEST_CASE("pooling never hurts, and cannot help when pool nurses cost more "
            "than temporaries") {
    Instance inst = small_case(PoolStructure::OnePool);
    const FlexibilityValue fv = flexibility_value(inst);
    CHECK(fv.one_pool_cost <= fv.no_pool_cost + 1e-6);
    CHECK(fv.ovg_percent >= -1e-9);

    inst.costs.pool_nurse = inst.costs.temp_nurse + 10.0;
    const FlexibilityValue dominated = flexibility_value(inst);
    CHECK(dominated.ovg_percent == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("a favorable pool yields strictly positive flexibility value") {
    // high absenteeism in the units, near-perfect pool attendance, cheap pool
    Instance inst = test::tiny_instance(2, {{0, 1}}, 5, 5, 0.55, 1.0);
    inst.costs.pool_nurse = 105.0;
    const FlexibilityValue fv = flexibility_value(inst);
    CHECK(fv.ovg_percent > 0.1);
  }

  TEST_CASE("iteration log lands on disk in order") {
    const Instance inst = small_case(PoolStructure::OnePool);
    const SeparationResult sep = solve_separation(inst);
    const auto path = std::filesystem::temp_directory_path() / "iters.csv";
    write_iteration_log(sep.log, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "iter,master_obj,separation_value,violation,cuts,elapsed_s");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == static_cast<int>(sep.log.size()));
    std::remove(path.string().c_str());
  }
}
