#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxl2/complex.hpp"

namespace coxl2 {

/// Reduced rational Betti numbers by degree (>= -1). Absent degrees are zero.
class CohomologyProfile {
 public:
  CohomologyProfile() = default;
  explicit CohomologyProfile(std::map<int, std::int64_t> betti);

  std::int64_t operator[](int degree) const;
  const std::map<int, std::int64_t>& nonzero() const { return betti_; }
  bool acyclic() const { return betti_.empty(); }
  /// Exactly one class, in `degree`.
  bool is_sphere(int degree) const;
  /// Alternating sum over degrees >= 0.
  std::int64_t alternating_sum() const;
  std::string to_string() const;

  friend bool operator==(const CohomologyProfile&, const CohomologyProfile&) = default;

 private:
  std::map<int, std::int64_t> betti_;
};

/// Sparse integer boundary map C_d -> C_{d-1}, stored column-wise.
struct BoundaryMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> index;
  std::vector<int> coeff;

  std::size_t cols() const { return offsets.size() - 1; }
};

/// Augmented chain complex: degree -1 holds a single cell for nonempty complexes.
/// `cells[d + 1]` counts the d-cells; `boundary[d]` maps C_d to C_{d-1} for d >= 0.
struct ChainComplex {
  std::vector<std::size_t> cells;
  std::vector<BoundaryMatrix> boundary;

  int top_dimension() const { return static_cast<int>(cells.size()) - 2; }
};

ChainComplex chain_complex(const SimplicialComplex& x);
ChainComplex chain_complex(const CubicalComplex& x);

/// Rank over Q of an integer matrix, by fraction-free sparse elimination.
std::size_t rational_rank(const BoundaryMatrix& m);

/// Reduced Betti numbers of an augmented chain complex. Free face pairs are
/// collapsed first; the remaining boundary ranks are computed exactly.
CohomologyProfile reduced_betti(const ChainComplex& c);

/// Throws Error if some facet is contained in another. Verifies the Euler
/// relation against the face counts before returning.
CohomologyProfile reduced_cohomology(const SimplicialComplex& x);
CohomologyProfile reduced_cohomology(const CubicalComplex& x);

std::int64_t euler_characteristic(const SimplicialComplex& x);
std::int64_t euler_characteristic(const CubicalComplex& x);

/// chi(X) = 1 + sum_{k>=0} (-1)^k b_k for nonempty X; b_{-1} = 1 for empty X.
bool euler_consistent(std::int64_t euler, const CohomologyProfile& p, bool empty);

}  // namespace coxl2
