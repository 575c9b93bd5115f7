#include "coxl2/l2.hpp"

namespace coxl2 {

CohomologyModel parse_model(std::string_view name) {
  if (name == "nerve") return CohomologyModel::Nerve;
  if (name == "order") return CohomologyModel::OrderComplex;
  if (name == "cubical") return CohomologyModel::Cubical;
  throw Error("unknown cohomology model '" + std::string(name) + "' (expected nerve, order or cubical)");
}

std::string model_name(CohomologyModel m) {
  switch (m) {
    case CohomologyModel::Nerve:
      return "nerve";
    case CohomologyModel::OrderComplex:
      return "order";
    case CohomologyModel::Cubical:
      return "cubical";
  }
  return "nerve";
}

CohomologyProfile d_sigma_cohomology(const CoxeterMatrix& m, GenSet j, CohomologyModel model, bool use_fast_path) {
  if (use_fast_path) {
    const FastPath fp = fast_path(m, j);
    if (fp.kind == FastPathKind::Contractible) return CohomologyProfile{};
    if (fp.kind == FastPathKind::Sphere) return CohomologyProfile(std::map<int, std::int64_t>{{fp.sphere_dimension, 1}});
  }
  switch (model) {
    case CohomologyModel::OrderComplex:
      return reduced_cohomology(d_sigma(m, j));
    case CohomologyModel::Cubical:
      return reduced_cohomology(d_sigma_cubical(m, j));
    case CohomologyModel::Nerve:
      break;
  }
  return reduced_cohomology(d_sigma_nerve(m, j));
}

DegreeCoefficients BettiSupport::totals() const {
  DegreeCoefficients out;
  for (const auto& [k, list] : coefficients)
    for (const auto& c : list) out[k] += c.dim;
  return out;
}

std::set<int> BettiSupport::support() const {
  std::set<int> out;
  for (const auto& [k, list] : coefficients)
    if (!list.empty()) out.insert(k);
  return out;
}

BettiSupport betti_support(const CoxeterMatrix& m, CohomologyModel model) {
  if (!is_connected(m, m.all())) throw Error("betti support needs an irreducible system");
  if (is_spherical(m, m.all())) throw Error("finite Weyl group: no σ candidates");
  BettiSupport out;
  out.rank = m.rank();
  out.q_threshold = std::uint64_t{1} << (m.rank() - 1);
  for (GenSet j : sigma_candidates(m)) {
    const CohomologyProfile p = d_sigma_cohomology(m, j, model);
    for (auto [deg, dim] : p.nonzero()) {
      const int k = deg + 1;
      if (k < 1 || k > m.rank() - 1)
        throw std::logic_error("D_J contributes outside [1, |S|-1]: J = " + m.label(j) + " degree " +
                               std::to_string(k));
      out.coefficients[k].push_back({j, k, dim});
    }
  }
  return out;
}

DegreeCoefficients kunneth_square(const DegreeCoefficients& c) {
  DegreeCoefficients out;
  for (auto [i, ci] : c)
    for (auto [j, cj] : c)
      if (ci != 0 && cj != 0) out[i + j] += ci * cj;
  return out;
}

DegreeCoefficients kunneth_square(const BettiSupport& b) { return kunneth_square(b.totals()); }

std::set<int> lattice_degrees(const BettiSupport& b) {
  std::set<int> out;
  for (auto [k, c] : kunneth_square(b))
    if (c > 0) out.insert(k);
  for (int k : out)
    if (k < 2 || k > 2 * (b.rank - 1))
      throw std::logic_error("lattice degree " + std::to_string(k) + " outside [2, 2|S|-2]");
  return out;
}

std::set<int> lattice_degrees(const CoxeterMatrix& m) { return lattice_degrees(betti_support(m)); }

std::string verdict_name(MeVerdict v) {
  return v == MeVerdict::Distinguishable ? "distinguishable" : "inconclusive";
}

MeVerdict me_compare(const std::set<int>& a, const std::set<int>& b) {
  return a == b ? MeVerdict::Inconclusive : MeVerdict::Distinguishable;
}

}  // namespace coxl2
