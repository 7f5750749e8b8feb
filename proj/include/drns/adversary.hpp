#pragma once

#include <cstdint>

#include "drns/model.hpp"

namespace drns {

// Values of the master variables at one iterate, in tabulated form:
// u/phi indexed [unit][k], v/nu indexed [pool][l], rho indexed [unit][q-1].
struct MasterIterate {
  std::vector<double> gamma;
  std::vector<double> lambda;
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> u, phi;
  std::vector<std::vector<double>> v, nu;
};

// Objective coefficients of the adversary integer program. s is identically
// zero for iterates of the linearized master but kept for generality.
struct CutCoefficients {
  std::vector<double> t, r;  // per unit
  std::vector<double> p, s;  // per pool
};

// A vertex of the binary encoding of the dual extreme points: t_j marks the
// high dual value on unit j, r = 1 - t, s picks the largest marked member of
// each pool, and p marks pools with no marked member.
struct AdversaryPoint {
  std::vector<std::uint8_t> t, r;
  std::vector<std::vector<std::uint8_t>> s;  // aligned with pool member lists
  std::vector<std::uint8_t> p;
  double value = 0.0;
};

// Evaluates the cut coefficients at an iterate; the demand terms take the
// exact discrete supremum over the integer demand support.
CutCoefficients coefficients(const Instance& inst, const MasterIterate& it);

double point_value(const Instance& inst, const CutCoefficients& c,
                   const AdversaryPoint& pt);

// Exact membership check of the encoding constraints.
bool in_feasible_set(const Instance& inst, const AdversaryPoint& pt);

// Builds the unique (s, r, p) completion of a marking t.
AdversaryPoint complete_point(const Instance& inst, const CutCoefficients& c,
                              const std::vector<std::uint8_t>& t);

// Oracle: enumerates all 2^J markings. Guarded to J <= 20.
AdversaryPoint solve_bruteforce(const Instance& inst, const CutCoefficients& c);

// Any pool structure, via a MILP strengthened with the chain-order valid
// inequalities.
AdversaryPoint solve_generic(const Instance& inst, const CutCoefficients& c);

// Closed form for a single pool covering all units.
AdversaryPoint closed_one_pool(const Instance& inst, const CutCoefficients& c);

// Closed form for pairwise-disjoint pools; units outside every pool
// contribute max(t, r) independently.
AdversaryPoint closed_disjoint(const Instance& inst, const CutCoefficients& c);

// Exact dynamic program over the chain; equivalent to the longest path on the
// layered two-state network.
AdversaryPoint solve_chained(const Instance& inst, const CutCoefficients& c);

// Dispatches on the classified structure.
AdversaryPoint solve_adversary(const Instance& inst, const CutCoefficients& c,
                               PoolStructure structure);

}  // namespace drns
