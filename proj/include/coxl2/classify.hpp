#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coxl2/coxeter.hpp"

namespace coxl2 {

enum class TypeKind { Finite, Affine, Indefinite };

/// Classification verdict for an irreducible Coxeter system.
///
/// Finite and affine verdicts carry the series letter and index of the
/// classical diagram (`I` with `dihedral_order` for I_2(m)). Indefinite
/// verdicts record whether every proper parabolic subgroup is finite, which
/// singles out the compact hyperbolic groups without naming them.
struct TypeTag {
  TypeKind kind = TypeKind::Indefinite;
  char series = 0;
  int index = 0;
  int dihedral_order = 0;
  bool all_proper_parabolics_finite = false;

  /// "A3", "I2(5)", "~A2", "~E8", or "indefinite".
  std::string name() const;
  friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

std::string kind_name(TypeKind k);

/// Throws Error unless M has exactly one irreducible component.
TypeTag classify_irreducible(const CoxeterMatrix& m);

/// Classifies the connected subdiagram on `component` without building a
/// restricted matrix. The all_proper_parabolics_finite flag is only
/// evaluated when `with_parabolic_flag` is set.
TypeTag classify_component(const CoxeterMatrix& m, GenSet component, bool with_parabolic_flag = false);

bool is_spherical(const CoxeterMatrix& m, GenSet j);
bool is_spherical(const CoxeterMatrix& m, std::span<const std::string> names);

/// Every spherical subset (including the empty set), in canonical order.
std::vector<GenSet> spherical_subsets(const CoxeterMatrix& m);

/// Inclusion-maximal spherical subsets, in canonical order.
std::vector<GenSet> maximal_finite_parabolics(const CoxeterMatrix& m);

/// Largest k such that every subset of size <= k is spherical.
int sphericity(const CoxeterMatrix& m);

/// Every proper subset of `within` is spherical. Throws if `within` is not connected.
bool all_proper_parabolics_finite(const CoxeterMatrix& m, GenSet within);
bool all_proper_parabolics_finite(const CoxeterMatrix& m);

struct SphAffPartition {
  GenSet spherical;
  GenSet affine;
  friend bool operator==(const SphAffPartition&, const SphAffPartition&) = default;
};

/// All partitions S = J_sph + J_aff with J_sph spherical and J_aff irreducible affine,
/// ordered canonically by J_sph.
std::vector<SphAffPartition> find_sph_aff_partitions(const CoxeterMatrix& m);

/// Uniform: every pair labelled uniformly from kScanLabels, conditioned on connectivity.
/// Sparse: a path, cycle, branched path or random tree whose edges are mostly
/// labelled 3, plus an occasional chord; reaches high sphericity often.
enum class ScanSampler { Uniform, Sparse };

struct ScanOptions {
  ScanSampler sampler = ScanSampler::Uniform;
  int min_rank = 10;
  int max_rank = 12;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

struct ScanResult {
  std::size_t samples = 0;
  std::size_t nine_spherical = 0;
  std::size_t finite = 0;
  std::size_t affine = 0;
  std::vector<CoxeterMatrix> counterexamples;
};

/// Labels drawn by the scan sampler.
inline constexpr int kScanLabels[] = {2, 3, 4, 5, 6, kInfinity};

/// Sample `index` of the seeded stream: a connected diagram with labels uniform
/// over kScanLabels. The (seed, index) pair fully determines the result.
CoxeterMatrix random_connected_diagram(std::uint64_t seed, std::uint64_t index, int min_rank, int max_rank);

CoxeterMatrix random_sparse_diagram(std::uint64_t seed, std::uint64_t index, int min_rank, int max_rank);

/// True when M is irreducible, at least 9-spherical, and classifies Indefinite.
bool violates_nine_spherical_dichotomy(const CoxeterMatrix& m);

ScanResult sphericity_classification_scan(const ScanOptions& options);

}  // namespace coxl2
