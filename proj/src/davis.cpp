#include "coxl2/davis.hpp"

#include <algorithm>
#include <unordered_set>

namespace coxl2 {

namespace {

std::size_t factorial_capped(int n, std::size_t cap) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::size_t>(i);
    if (f > cap) return cap + 1;
  }
  return f;
}

void require_spherical(const CoxeterMatrix& m, GenSet j) {
  if (!j.subset_of(m.all())) throw Error("subset references generators outside the system");
  if (!is_spherical(m, j)) throw Error("J = " + m.label(j) + " is not spherical");
}

/// Saturated chains of the spherical poset ending at a maximal element and
/// starting either at the empty set (`from_empty`) or at a singleton inside `roots`.
SimplicialComplex chain_complex(const CoxeterMatrix& m, const SphericalPoset& poset, GenSet roots, bool from_empty,
                                std::size_t facet_limit) {
  // Vertices: the poset elements that occur in some chain.
  std::vector<GenSet> verts;
  for (GenSet t : poset.elements()) {
    if (from_empty ? true : t.intersects(roots)) verts.push_back(t);
  }
  std::unordered_map<GenSet, std::uint32_t> vid;
  for (std::size_t i = 0; i < verts.size(); ++i) vid.emplace(verts[i], static_cast<std::uint32_t>(i));

  std::size_t expected = 0;
  for (GenSet b : poset.maximal()) {
    const int starts = from_empty ? (b.empty() ? 1 : b.size()) : (b & roots).size();
    if (starts == 0) continue;
    const std::size_t tail = factorial_capped(std::max(b.size() - 1, 0), facet_limit);
    expected += static_cast<std::size_t>(starts) * tail;
    if (expected > facet_limit)
      throw Error("order complex would exceed " + std::to_string(facet_limit) +
                  " facets; use the nerve or cubical model for this system");
  }

  std::vector<Simplex> facets;
  facets.reserve(expected);
  for (GenSet b : poset.maximal()) {
    if (!from_empty && !b.intersects(roots)) continue;
    std::vector<int> order = b.indices();
    do {
      if (!from_empty && !roots.contains(order.front())) continue;
      Simplex chain;
      GenSet acc;
      if (from_empty) chain.push_back(vid.at(acc));
      for (int g : order) {
        acc = acc.with(g);
        chain.push_back(vid.at(acc));
      }
      facets.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }

  std::vector<std::string> labels;
  labels.reserve(verts.size());
  for (GenSet t : verts) labels.push_back(m.label(t));
  return SimplicialComplex(std::move(labels), std::move(facets));
}

}  // namespace

SphericalPoset::SphericalPoset(const CoxeterMatrix& m) : elements_(spherical_subsets(m)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) ids_.emplace(elements_[i], static_cast<std::uint32_t>(i));
  for (GenSet s : elements_) {
    bool maximal = true;
    for (int i = 0; i < m.rank() && maximal; ++i)
      if (!s.contains(i) && ids_.count(s.with(i))) maximal = false;
    if (maximal) maximal_.push_back(s);
  }
}

std::optional<std::uint32_t> SphericalPoset::id(GenSet s) const {
  auto it = ids_.find(s);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

SimplicialComplex davis_chamber(const CoxeterMatrix& m, std::size_t facet_limit) {
  const SphericalPoset poset(m);
  return chain_complex(m, poset, m.all(), true, facet_limit);
}

std::vector<GenSet> sigma_candidates(const CoxeterMatrix& m) {
  std::vector<GenSet> out;
  for (GenSet j : spherical_subsets(m))
    if (!is_spherical(m, m.all() - j)) out.push_back(j);
  return out;
}

SimplicialComplex d_sigma(const CoxeterMatrix& m, GenSet j, std::size_t facet_limit) {
  require_spherical(m, j);
  const SphericalPoset poset(m);
  return chain_complex(m, poset, m.all() - j, false, facet_limit);
}

SimplicialComplex d_sigma_nerve(const CoxeterMatrix& m, GenSet j) {
  require_spherical(m, j);
  const GenSet k = m.all() - j;
  const auto kidx = k.indices();
  std::vector<GenSet> inside;
  for (GenSet t : spherical_subsets(m))
    if (!t.empty() && t.subset_of(k)) inside.push_back(t);
  const std::unordered_set<GenSet> members(inside.begin(), inside.end());
  std::vector<Simplex> facets;
  for (GenSet t : inside) {
    bool maximal = true;
    for (int g : kidx)
      if (!t.contains(g) && members.count(t.with(g))) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    Simplex f;
    for (std::size_t v = 0; v < kidx.size(); ++v)
      if (t.contains(kidx[v])) f.push_back(static_cast<std::uint32_t>(v));
    facets.push_back(std::move(f));
  }
  return SimplicialComplex(m.names(k), std::move(facets));
}

CubicalComplex davis_chamber_cubical(const CoxeterMatrix& m) {
  std::vector<Cube> cells;
  for (GenSet upper : spherical_subsets(m)) {
    const std::uint64_t ub = upper.bits();
    for (std::uint64_t a = ub;; a = (a - 1) & ub) {
      cells.push_back({GenSet(a), upper});
      if (a == 0) break;
    }
  }
  return CubicalComplex(std::move(cells));
}

CubicalComplex d_sigma_cubical(const CoxeterMatrix& m, GenSet j) {
  require_spherical(m, j);
  const GenSet k = m.all() - j;
  std::vector<Cube> cells;
  for (GenSet upper : spherical_subsets(m)) {
    const std::uint64_t ub = upper.bits();
    for (std::uint64_t a = ub;; a = (a - 1) & ub) {
      if (GenSet(a).intersects(k)) cells.push_back({GenSet(a), upper});
      if (a == 0) break;
    }
  }
  return CubicalComplex(std::move(cells));
}

FastPath fast_path(const CoxeterMatrix& m, GenSet j) {
  require_spherical(m, j);
  const GenSet k = m.all() - j;
  if (is_spherical(m, k)) return {FastPathKind::Contractible, 0};
  if (is_connected(m, k) && all_proper_parabolics_finite(m, k)) return {FastPathKind::Sphere, k.size() - 2};
  return {FastPathKind::Unknown, 0};
}

}  // namespace coxl2
