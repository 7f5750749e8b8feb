#include <cmath>

#include "doctest.h"
#include "drns/adversary.hpp"
#include "drns/random.hpp"
#include "support.hpp"

using namespace drns;

namespace {

CutCoefficients random_coeffs(const Instance& inst, Rng& rng) {
  CutCoefficients c;
  for (int j = 0; j < inst.unit_count(); ++j) {
    c.t.push_back(rng.uniform(-10.0, 10.0));
    c.r.push_back(rng.uniform(-10.0, 10.0));
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    c.p.push_back(rng.uniform(0.0, 10.0));
    c.s.push_back(rng.uniform(0.0, 5.0));
  }
  return c;
}

CutCoefficients flat_coeffs(const Instance& inst, double t, double r, double p,
                            double s = 0.0) {
  CutCoefficients c;
  c.t.assign(inst.unit_count(), t);
  c.r.assign(inst.unit_count(), r);
  c.p.assign(inst.pool_count(), p);
  c.s.assign(inst.pool_count(), s);
  return c;
}

// Iterate with exact bilinear surrogates phi = u*gamma, nu = v*lambda.
MasterIterate make_iterate(const Instance& inst, const Staffing& st,
                           const std::vector<double>& gamma,
                           const std::vector<double>& lambda,
                           const std::vector<std::vector<double>>& rho) {
  MasterIterate it;
  it.gamma = gamma;
  it.lambda = lambda;
  it.rho = rho;
  for (int j = 0; j < inst.unit_count(); ++j) {
    const int range = inst.units[j].staff_max - inst.units[j].staff_min;
    std::vector<double> u(range, 0.0), phi(range, 0.0);
    for (int k = 0; k < st.unit_staff[j] - inst.units[j].staff_min; ++k) {
      u[k] = 1.0;
      phi[k] = gamma[j];
    }
    it.u.push_back(std::move(u));
    it.phi.push_back(std::move(phi));
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    const int range = inst.pools[i].staff_max - inst.pools[i].staff_min;
    std::vector<double> v(range, 0.0), nu(range, 0.0);
    for (int l = 0; l < st.pool_staff[i] - inst.pools[i].staff_min; ++l) {
      v[l] = 1.0;
      nu[l] = lambda[i];
    }
    it.v.push_back(std::move(v));
    it.nu.push_back(std::move(nu));
  }
  return it;
}

// Direct evaluation of the inner maximization from its definition: alpha in
// {credit, temp-cost}^J, beta the tightest feasible response, hinge terms at
// the staffing levels.
double lambda_vertex_max(const Instance& inst, const Staffing& st,
                         const std::vector<double>& gamma,
                         const std::vector<double>& lambda,
                         const std::vector<std::vector<double>>& rho) {
  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;
  const int J = inst.unit_count(), I = inst.pool_count();
  double best = -1e300;
  for (unsigned mask = 0; mask < (1u << J); ++mask) {
    double val = 0.0;
    for (int j = 0; j < J; ++j) {
      const double alpha = (mask >> j) & 1u ? cx : ce;
      val += std::max(0.0, (-alpha - gamma[j]) * st.unit_staff[j]);
      double sup = -1e300;
      for (int d = inst.units[j].demand_min; d <= inst.units[j].demand_max; ++d) {
        double v = alpha * d, power = 1.0;
        for (double r : rho[j]) {
          power *= d;
          v -= r * power;
        }
        sup = std::max(sup, v);
      }
      val += sup;
    }
    for (int i = 0; i < I; ++i) {
      double amax = 0.0;
      for (int j : inst.pools[i].members)
        amax = std::max(amax, (mask >> j) & 1u ? cx : ce);
      val += std::max(0.0, (-amax - lambda[i]) * st.pool_staff[i]);
    }
    best = std::max(best, val);
  }
  return best;
}

void check_point(const Instance& inst, const CutCoefficients& c,
                 const AdversaryPoint& pt, double want) {
  CHECK(in_feasible_set(inst, pt));
  CHECK(pt.value == doctest::Approx(want).epsilon(1e-9));
  CHECK(point_value(inst, c, pt) == doctest::Approx(want).epsilon(1e-9));
}

}  // namespace

TEST_SUITE("adversary") {
  TEST_CASE("coefficient demand terms take the discrete supremum") {
    Instance inst = test::tiny_instance(1, {{0}}, 6, 10);
    const Staffing st{{4}, {2}};
    auto it = make_iterate(inst, st, {0.0}, {0.0}, {{0.0, 0.0}});
    CHECK(coefficients(inst, it).t[0] == doctest::Approx(4000.0));  // 400*10

    it.rho[0] = {0.0, 50.0};
    CHECK(coefficients(inst, it).t[0] == doctest::Approx(800.0));  // at d = 4
    double brute = -1e300;
    for (int d = 0; d <= 10; ++d) brute = std::max(brute, 400.0 * d - 50.0 * d * d);
    CHECK(coefficients(inst, it).t[0] == doctest::Approx(brute));
  }

  TEST_CASE("the staffing hinge clips at zero") {
    Instance inst = test::tiny_instance(1, {}, 6, 10);
    inst.units[0].staff_min = 2;
    inst.units[0].attendance = AttendanceFunction::linear(0.9, 2, 6);
    const Staffing st{{2}, {}};
    const auto it = make_iterate(inst, st, {0.0}, {}, {{0.0, 0.0}});
    const auto c = coefficients(inst, it);
    // (-50 - 0) * 2 < 0, so only the demand part remains
    CHECK(c.r[0] == doctest::Approx(50.0 * 10));
  }

  TEST_CASE("brute force picks the canonical vertex on ties") {
    const Instance inst = test::tiny_instance(2, {{0, 1}});
    const auto c = flat_coeffs(inst, 0.0, 0.0, 0.0);
    const AdversaryPoint pt = solve_bruteforce(inst, c);
    CHECK(pt.value == doctest::Approx(0.0));
    CHECK(pt.t == std::vector<std::uint8_t>{0, 0});
    CHECK(pt.p[0] == 1);
  }

  TEST_CASE("brute force finds the mixed marking") {
    const Instance inst = test::tiny_instance(2, {{0, 1}});
    CutCoefficients c = flat_coeffs(inst, 0.0, 0.0, 0.0);
    c.t = {1.0, 0.0};
    c.r = {0.0, 1.0};
    const AdversaryPoint pt = solve_bruteforce(inst, c);
    check_point(inst, c, pt, 2.0);
    CHECK(pt.t == std::vector<std::uint8_t>{1, 0});
    CHECK(pt.s[0] == std::vector<std::uint8_t>{1, 0});
  }

  TEST_CASE("one-pool closed form on the worked examples") {
    const Instance inst = test::tiny_instance(2, {{0, 1}});
    CutCoefficients c = flat_coeffs(inst, 0.0, 0.0, 0.0);
    c.t = {5.0, 1.0};
    AdversaryPoint pt = closed_one_pool(inst, c);
    check_point(inst, c, pt, 6.0);
    CHECK(pt.t == std::vector<std::uint8_t>{1, 1});
    CHECK(pt.s[0] == std::vector<std::uint8_t>{0, 1});

    c.t = {-1.0, -2.0};
    c.p = {10.0};
    pt = closed_one_pool(inst, c);
    check_point(inst, c, pt, 10.0);
    CHECK(pt.t == std::vector<std::uint8_t>{0, 0});
    CHECK(pt.p[0] == 1);
  }

  TEST_CASE("one-pool closed form equals brute force") {
    Rng rng(21);
    for (int n = 0; n < 300; ++n) {
      const int J = rng.uniform_int(1, 8);
      std::vector<int> all(J);
      for (int j = 0; j < J; ++j) all[j] = j;
      const Instance inst = test::tiny_instance(J, {all});
      const auto c = random_coeffs(inst, rng);
      const AdversaryPoint a = closed_one_pool(inst, c);
      const AdversaryPoint b = solve_bruteforce(inst, c);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
      CHECK(in_feasible_set(inst, a));
    }
  }

  TEST_CASE("disjoint closed form covers free units") {
    const Instance inst = test::tiny_instance(3, {{0}, {1}});
    CutCoefficients c = flat_coeffs(inst, 0.0, 0.0, 0.0);
    c.t = {4.0, -1.0, 7.0};
    c.r = {1.0, 3.0, 2.0};
    c.p = {0.5, 2.0};
    const AdversaryPoint pt = closed_disjoint(inst, c);
    // pool {0}: max(p=0.5+1, t=4) = 4; pool {1}: max(2+3, -1) = 5; free unit 2: 7
    check_point(inst, c, pt, 16.0);
    CHECK(pt.t == std::vector<std::uint8_t>{1, 0, 1});
  }

  TEST_CASE("disjoint closed form equals brute force") {
    Rng rng(22);
    for (int n = 0; n < 300; ++n) {
      const Instance inst = test::tiny_instance(5, {{0, 1}, {2, 3}});  // unit 4 free
      const auto c = random_coeffs(inst, rng);
      const AdversaryPoint a = closed_disjoint(inst, c);
      const AdversaryPoint b = solve_bruteforce(inst, c);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
      CHECK(in_feasible_set(inst, a));
    }
  }

  TEST_CASE("chained recursion on the flat cases") {
    const Instance inst = test::tiny_instance(3, {{0, 1}, {1, 2}, {0, 2}});
    AdversaryPoint pt = solve_chained(inst, flat_coeffs(inst, 0.0, 0.0, 0.0));
    CHECK(pt.value == doctest::Approx(0.0));

    pt = solve_chained(inst, flat_coeffs(inst, 0.0, 0.0, 1.0));
    check_point(inst, flat_coeffs(inst, 0.0, 0.0, 1.0), pt, 3.0);
    CHECK(pt.t == std::vector<std::uint8_t>{0, 0, 0});
  }

  TEST_CASE("chained recursion equals brute force") {
    Rng rng(23);
    for (int n = 0; n < 300; ++n) {
      const int J = rng.uniform_int(3, 10);
      std::vector<std::vector<int>> pools;
      for (int i = 0; i < J; ++i) {
        std::vector<int> mem = {i, (i + 1) % J};
        if (mem[0] > mem[1]) std::swap(mem[0], mem[1]);
        pools.push_back(mem);
      }
      const Instance inst = test::tiny_instance(J, pools);
      const auto c = random_coeffs(inst, rng);
      const AdversaryPoint a = solve_chained(inst, c);
      const AdversaryPoint b = solve_bruteforce(inst, c);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
      CHECK(in_feasible_set(inst, a));
    }
  }

  TEST_CASE("the generic program handles overlapping pools") {
    Rng rng(24);
    for (int n = 0; n < 40; ++n) {
      const Instance inst = test::tiny_instance(6, {{0, 1, 2}, {2, 3, 4}, {4, 5}});
      const auto c = random_coeffs(inst, rng);
      const AdversaryPoint a = solve_generic(inst, c);
      const AdversaryPoint b = solve_bruteforce(inst, c);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
      CHECK(in_feasible_set(inst, a));
    }
  }

  TEST_CASE("generic program stays integral on the three-chain") {
    const Instance inst = test::tiny_instance(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto c = flat_coeffs(inst, 1.0, 1.0, 1.0, 1.0);
    const AdversaryPoint a = solve_generic(inst, c);
    const AdversaryPoint b = solve_bruteforce(inst, c);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    CHECK(in_feasible_set(inst, a));
  }

  TEST_CASE("coefficients agree with the dual vertex enumeration") {
    Rng rng(25);
    for (int n = 0; n < 50; ++n) {
      const Instance inst =
          n % 2 ? test::tiny_instance(4, {{0, 1, 2, 3}}, 5, 6)
                : test::tiny_instance(4, {{0, 1}, {1, 2}, {2, 3}}, 5, 6);
      const double cx = inst.costs.temp_nurse;
      Staffing st;
      std::vector<double> gamma, lambda;
      std::vector<std::vector<double>> rho;
      for (const auto& u : inst.units) {
        st.unit_staff.push_back(rng.uniform_int(u.staff_min, u.staff_max));
        gamma.push_back(rng.uniform(-cx, 0.0));
        rho.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-1.0, 1.0)});
      }
      for (const auto& p : inst.pools) {
        st.pool_staff.push_back(rng.uniform_int(p.staff_min, p.staff_max));
        lambda.push_back(rng.uniform(-cx, 0.0));
      }
      const auto it = make_iterate(inst, st, gamma, lambda, rho);
      const auto c = coefficients(inst, it);
      const double via_h = solve_bruteforce(inst, c).value;
      const double via_lambda = lambda_vertex_max(inst, st, gamma, lambda, rho);
      CHECK(via_h == doctest::Approx(via_lambda).epsilon(1e-9));
    }
  }

  TEST_CASE("enumeration guard") {
    const Instance inst = test::tiny_instance(21, {});
    CutCoefficients c = flat_coeffs(inst, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(solve_bruteforce(inst, c), std::invalid_argument);
  }
}
