#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxl2/classify.hpp"
#include "coxl2/complex.hpp"
#include "coxl2/coxeter.hpp"

namespace coxl2 {

/// Spherical subsets of S ordered by inclusion; ids follow the canonical order.
class SphericalPoset {
 public:
  explicit SphericalPoset(const CoxeterMatrix& m);

  const std::vector<GenSet>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(GenSet s) const { return ids_.count(s) > 0; }
  std::optional<std::uint32_t> id(GenSet s) const;
  const std::vector<GenSet>& maximal() const { return maximal_; }

 private:
  std::vector<GenSet> elements_;
  std::unordered_map<GenSet, std::uint32_t> ids_;
  std::vector<GenSet> maximal_;
};

/// Guard on order-complex facet counts; maximal chains grow factorially with rank.
inline constexpr std::size_t kDefaultFacetLimit = 2'000'000;

/// Order complex of the spherical poset (vertices = spherical subsets, including
/// the empty set; simplices = chains). Throws Error when the facet count
/// would exceed `facet_limit`.
SimplicialComplex davis_chamber(const CoxeterMatrix& m, std::size_t facet_limit = kDefaultFacetLimit);

/// Spherical J whose complement is not spherical, in canonical order.
std::vector<GenSet> sigma_candidates(const CoxeterMatrix& m);

/// Full subcomplex of the chamber on the nonempty spherical T meeting S \ J.
SimplicialComplex d_sigma(const CoxeterMatrix& m, GenSet j, std::size_t facet_limit = kDefaultFacetLimit);

/// Nerve of the cover of D_J by the mirrors D_s, s in S \ J: vertices are the
/// generators of S \ J, simplices their nonempty spherical subsets. Homotopy
/// equivalent to d_sigma(m, j) via T -> T n (S \ J).
SimplicialComplex d_sigma_nerve(const CoxeterMatrix& m, GenSet j);

/// Cube complex of the chamber: cells [A, B] for spherical A <= B.
CubicalComplex davis_chamber_cubical(const CoxeterMatrix& m);

/// Cells [A, B] of the cubical chamber with A meeting S \ J.
CubicalComplex d_sigma_cubical(const CoxeterMatrix& m, GenSet j);

enum class FastPathKind { Contractible, Sphere, Unknown };

struct FastPath {
  FastPathKind kind = FastPathKind::Unknown;
  int sphere_dimension = 0;
  friend bool operator==(const FastPath&, const FastPath&) = default;
};

/// Predicts D_J without computing cohomology: contractible if S \ J is
/// spherical; a (|S \ J| - 2)-sphere if S \ J is irreducible, infinite and
/// every proper subset is spherical; Unknown otherwise.
FastPath fast_path(const CoxeterMatrix& m, GenSet j);

}  // namespace coxl2
