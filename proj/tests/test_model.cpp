#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "drns/model.hpp"
#include "support.hpp"

using namespace drns;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

const std::filesystem::path kFixture =
    std::filesystem::path(DRNS_TEST_DATA_DIR) / "representative.json";

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("representative fixture is valid") {
    const Instance inst = read_instance(kFixture);
    CHECK(validate(inst).empty());
    CHECK(inst.unit_count() == 7);
    CHECK(inst.pool_count() == 1);
    CHECK(classify_structure(inst) == PoolStructure::OnePool);
    CHECK(inst.units[0].moments[0] == doctest::Approx(11.42));
    // second moment carries the 5.05 standard deviation
    const double sd1 = std::sqrt(inst.units[0].moments[1] -
                                 inst.units[0].moments[0] * inst.units[0].moments[0]);
    CHECK(sd1 == doctest::Approx(5.05));
    double rate = 0.0;
    REQUIRE(inst.units[0].attendance.linear_rate(&rate));
    CHECK(rate == doctest::Approx(0.97));
    CHECK(inst.costs.unit_nurse == 100.0);
    CHECK(inst.costs.pool_nurse == 130.0);
    CHECK(inst.costs.temp_nurse == 400.0);
    CHECK(inst.costs.excess_credit == 50.0);
  }

  TEST_CASE("validate flags a collapsed dual box") {
    Instance inst = test::tiny_instance(2, {{0, 1}});
    inst.costs.excess_credit = inst.costs.temp_nurse;
    const auto violations = validate(inst);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("excess_credit") != std::string::npos);
  }

  TEST_CASE("validate flags an out-of-range pool member") {
    Instance inst = test::tiny_instance(2, {{0, 2}});
    const auto violations = validate(inst);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("pools[0].members") != std::string::npos);
  }

  TEST_CASE("validate flags a budget below the staffing floors") {
    Instance inst = test::tiny_instance(2, {{0, 1}});
    inst.units[0].staff_min = 3;
    inst.units[0].attendance = AttendanceFunction::linear(0.9, 3, 6);
    inst.resource_cap = 2;
    const auto violations = validate(inst);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("resource_cap") != std::string::npos);
  }

  TEST_CASE("classification precedence") {
    CHECK(classify_structure(test::tiny_instance(3, {})) == PoolStructure::NoPool);
    CHECK(classify_structure(test::tiny_instance(3, {{0, 1, 2}})) ==
          PoolStructure::OnePool);
    CHECK(classify_structure(test::tiny_instance(3, {{0, 1}, {1, 2}, {0, 2}})) ==
          PoolStructure::Chained);
    CHECK(classify_structure(test::tiny_instance(4, {{0, 1}, {2, 3}})) ==
          PoolStructure::Disjoint);
    CHECK(classify_structure(test::tiny_instance(4, {{0, 1}, {1, 2}})) ==
          PoolStructure::Arbitrary);

    // idle pools (zero staffing caps) classify as no pooling at all
    Instance idle = test::tiny_instance(3, {{0, 1, 2}});
    idle.pools[0].staff_max = 0;
    idle.pools[0].attendance = AttendanceFunction::linear(0.99, 0, 0);
    CHECK(classify_structure(idle) == PoolStructure::NoPool);
  }

  TEST_CASE("classification ignores pool order where structure is symmetric") {
    Instance inst = test::tiny_instance(6, {{0, 1}, {2, 3}, {4, 5}});
    const auto before = classify_structure(inst);
    std::swap(inst.pools[0], inst.pools[2]);
    CHECK(classify_structure(inst) == before);
  }

  TEST_CASE("generator emits valid instances for every structure") {
    const struct {
      PoolStructure s;
      int units, pools;
    } cases[] = {{PoolStructure::NoPool, 5, 0},
                 {PoolStructure::OnePool, 5, 1},
                 {PoolStructure::Disjoint, 6, 3},
                 {PoolStructure::Chained, 5, 5},
                 {PoolStructure::Arbitrary, 5, 2}};
    for (const auto& c : cases) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = generate_instance(seed, c.units, c.pools, c.s);
        CAPTURE(inst.label);
        CHECK(validate(inst).empty());
        CHECK(classify_structure(inst) == c.s);
        for (const auto& u : inst.units) {
          CHECK(u.staff_max == 200);
          CHECK(u.moments[1] >= u.moments[0] * u.moments[0]);  // nonneg variance
        }
        for (const auto& p : inst.pools) {
          CHECK(p.staff_min == 0);
          CHECK(p.staff_max == 200);
        }
      }
    }
  }

  TEST_CASE("generator is deterministic in the seed") {
    const Instance a = generate_instance(7, 4, 1, PoolStructure::OnePool);
    const Instance b = generate_instance(7, 4, 1, PoolStructure::OnePool);
    const auto pa = temp_file("gen_a.json"), pb = temp_file("gen_b.json");
    write_instance(a, pa);
    write_instance(b, pb);
    CHECK(slurp(pa) == slurp(pb));
    std::remove(pa.string().c_str());
    std::remove(pb.string().c_str());
  }

  TEST_CASE("generator wires the chain wrap-around") {
    const Instance inst = generate_instance(2, 4, 4, PoolStructure::Chained);
    CHECK(inst.pools[0].members == std::vector<int>{0, 1});
    CHECK(inst.pools[2].members == std::vector<int>{2, 3});
    CHECK(inst.pools[3].members == std::vector<int>{0, 3});
  }

  TEST_CASE("generator rejects incompatible shapes") {
    CHECK_THROWS_AS(generate_instance(1, 5, 2, PoolStructure::OnePool),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(1, 5, 4, PoolStructure::Chained),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(1, 3, 4, PoolStructure::Disjoint),
                    std::invalid_argument);
  }

  TEST_CASE("instance files round-trip bit-exactly") {
    const Instance inst = generate_instance(42, 6, 3, PoolStructure::Disjoint);
    const auto p1 = temp_file("rt_1.json"), p2 = temp_file("rt_2.json");
    write_instance(inst, p1);
    write_instance(read_instance(p1), p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.string().c_str());
    std::remove(p2.string().c_str());
  }

  TEST_CASE("empty or versionless files are rejected") {
    const auto p = temp_file("empty.json");
    std::ofstream(p).close();
    CHECK_THROWS_AS(read_instance(p), ParseError);
    std::ofstream(p) << "{\"units\": []}";
    CHECK_THROWS_AS(read_instance(p), ParseError);
    std::remove(p.string().c_str());
  }

  TEST_CASE("solution files round-trip") {
    StaffingSolution sol;
    sol.unit_staff = {3, 4};
    sol.pool_staff = {2};
    sol.dr_cost = 1234.5;
    sol.first_stage_cost = 960.0;
    sol.worst_case_expectation = 274.5;
    sol.method = "milp-one-pool";
    const auto p = temp_file("sol.json");
    write_solution(sol, p);
    const StaffingSolution back = read_solution(p);
    CHECK(back.unit_staff == sol.unit_staff);
    CHECK(back.pool_staff == sol.pool_staff);
    CHECK(back.dr_cost == sol.dr_cost);
    CHECK(back.method == sol.method);
    std::remove(p.string().c_str());
  }
}
