#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coxl2/genset.hpp"

namespace coxl2 {

using Simplex = std::vector<std::uint32_t>;

/// Finite abstract simplicial complex given by its facets.
///
/// Facets are stored sorted, each with sorted vertex ids. Vertex labels are
/// informational and carried through to exports.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(std::vector<std::string> vertex_labels, std::vector<Simplex> facets);

  std::size_t num_vertices() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Simplex>& facets() const { return facets_; }
  bool empty() const { return facets_.empty(); }
  /// Largest facet size minus one; -1 for the empty complex.
  int dimension() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Simplex> facets_;
};

/// A cell [lower, upper] of a cube complex built from an interval of subsets.
/// Its dimension is |upper \ lower|.
struct Cube {
  GenSet lower;
  GenSet upper;
  int dimension() const { return (upper - lower).size(); }
  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Cube complex whose cells are intervals of a downward closed family of sets.
/// Cells are closed under taking faces.
class CubicalComplex {
 public:
  CubicalComplex() = default;
  explicit CubicalComplex(std::vector<Cube> cells);

  const std::vector<Cube>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  int dimension() const;

 private:
  std::vector<Cube> cells_;
};

}  // namespace coxl2
