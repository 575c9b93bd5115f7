#include "coxl2/complex.hpp"

#include <algorithm>

namespace coxl2 {

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertex_labels, std::vector<Simplex> facets)
    : labels_(std::move(vertex_labels)), facets_(std::move(facets)) {
  for (auto& f : facets_) {
    if (f.empty()) throw Error("facet must contain at least one vertex");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw Error("facet repeats a vertex");
    if (f.back() >= labels_.size()) throw Error("facet references an unknown vertex");
  }
  std::sort(facets_.begin(), facets_.end());
}

int SimplicialComplex::dimension() const {
  std::size_t top = 0;
  for (const auto& f : facets_) top = std::max(top, f.size());
  return static_cast<int>(top) - 1;
}

CubicalComplex::CubicalComplex(std::vector<Cube> cells) : cells_(std::move(cells)) {
  for (const Cube& c : cells_)
    if (!c.lower.subset_of(c.upper)) throw Error("cube lower set must be contained in its upper set");
}

int CubicalComplex::dimension() const {
  int top = -1;
  for (const Cube& c : cells_) top = std::max(top, c.dimension());
  return top;
}

}  // namespace coxl2
