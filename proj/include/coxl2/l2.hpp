#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coxl2/cohomology.hpp"
#include "coxl2/coxeter.hpp"
#include "coxl2/davis.hpp"

namespace coxl2 {

/// How D_J is realized when its cohomology has to be computed.
///   Nerve:        simplicial nerve of the mirror cover (smallest; default).
///   OrderComplex: the chamber's order complex restricted to D_J.
///   Cubical:      the chamber's cube structure restricted to D_J.
/// All three are homotopy equivalent and yield identical profiles.
enum class CohomologyModel { Nerve, OrderComplex, Cubical };

CohomologyModel parse_model(std::string_view name);
std::string model_name(CohomologyModel m);

/// Reduced cohomology of D_J, short-circuited by fast_path when it is conclusive.
CohomologyProfile d_sigma_cohomology(const CoxeterMatrix& m, GenSet j, CohomologyModel model = CohomologyModel::Nerve,
                                     bool use_fast_path = true);

struct SigmaContribution {
  GenSet j;
  int degree = 0;  // L2 degree k = cohomological degree + 1
  std::int64_t dim = 0;
  friend bool operator==(const SigmaContribution&, const SigmaContribution&) = default;
};

using DegreeCoefficients = std::map<int, std::int64_t>;

/// Topological coefficients of the L2-Betti numbers of the completed group.
///
/// `coefficients[k]` lists every candidate J with dim H^{k-1}(D_J) > 0. The
/// analytic multiplicities are positive once q exceeds `q_threshold` = 2^(|S|-1).
struct BettiSupport {
  int rank = 0;
  std::uint64_t q_threshold = 0;
  std::map<int, std::vector<SigmaContribution>> coefficients;

  /// Per-degree sum of the listed dimensions.
  DegreeCoefficients totals() const;
  std::set<int> support() const;
};

/// Throws Error for reducible input or finite W.
BettiSupport betti_support(const CoxeterMatrix& m, CohomologyModel model = CohomologyModel::Nerve);

/// Self-convolution: out[k] = sum_{i+j=k} c_i c_j.
DegreeCoefficients kunneth_square(const DegreeCoefficients& c);
DegreeCoefficients kunneth_square(const BettiSupport& b);

/// Support of the Kunneth square; checks it lies in [2, 2|S| - 2].
std::set<int> lattice_degrees(const BettiSupport& b);
std::set<int> lattice_degrees(const CoxeterMatrix& m);

enum class MeVerdict { Distinguishable, Inconclusive };

std::string verdict_name(MeVerdict v);

/// Different degree supports rule out measure equivalence; equal supports decide nothing.
MeVerdict me_compare(const std::set<int>& a, const std::set<int>& b);

}  // namespace coxl2
