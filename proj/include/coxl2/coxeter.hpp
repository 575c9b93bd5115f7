#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxl2/genset.hpp"

namespace coxl2 {

/// Entry value used for m_st = infinity.
inline constexpr int kInfinity = 0;

/// Symmetric Coxeter matrix over an ordered, uniquely named generating set.
///
/// Diagonal entries are 1; off-diagonal entries are >= 2, or kInfinity.
/// Construction validates every invariant and throws Error otherwise.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  CoxeterMatrix(std::vector<std::string> generators, const std::vector<std::vector<int>>& m);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generators() const { return names_; }
  int operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * rank() + j)]; }

  /// Diagram edge: m_ij >= 3 or infinite.
  bool is_edge(int i, int j) const { return i != j && (*this)(i, j) != 2; }
  GenSet neighbors(int i) const { return adjacency_[static_cast<std::size_t>(i)]; }
  GenSet all() const { return GenSet::full(rank()); }

  /// Throws Error for unknown names.
  int index_of(std::string_view name) const;
  GenSet subset(std::span<const std::string> names) const;
  std::vector<std::string> names(GenSet s) const;
  /// "{a,b}" in generator order.
  std::string label(GenSet s) const;

  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> entries_;
  std::vector<GenSet> adjacency_;
};

/// Generalized Cartan matrix: A_ii = 2, A_ij <= 0 off the diagonal, A_ij = 0 iff A_ji = 0.
class GeneralizedCartanMatrix {
 public:
  GeneralizedCartanMatrix(std::vector<std::string> index, std::vector<std::vector<int>> a);

  int size() const { return static_cast<int>(index_.size()); }
  const std::vector<std::string>& index() const { return index_; }
  int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

 private:
  std::vector<std::string> index_;
  std::vector<std::vector<int>> a_;
};

/// Line-oriented diagram text: one `nodes:` line, then `edge: a b [label|inf]` lines.
CoxeterMatrix parse_diagram(std::string_view text);
/// JSON object {"generators": [...], "m": [[...]]}, 0 meaning infinity.
CoxeterMatrix parse_matrix(std::string_view json);
/// JSON object {"index": [...], "cartan": [[...]]}.
GeneralizedCartanMatrix parse_cartan(std::string_view json);
/// Sniffs the first non-blank byte: '{' selects JSON (Coxeter or Cartan), anything else the diagram DSL.
CoxeterMatrix parse_system(std::string_view text);

/// Canonical compact JSON; parse_matrix(to_json(M)) == M.
std::string to_json(const CoxeterMatrix& m);
/// Canonical DSL text; parse_diagram(to_diagram(M)) == M.
std::string to_diagram(const CoxeterMatrix& m);

CoxeterMatrix cartan_to_coxeter(const GeneralizedCartanMatrix& a);

/// Principal submatrix on J, generator order inherited.
CoxeterMatrix restrict(const CoxeterMatrix& m, GenSet j);
CoxeterMatrix restrict(const CoxeterMatrix& m, std::span<const std::string> names);

/// Connected components of the diagram restricted to `within`, ordered by smallest index.
std::vector<GenSet> component_sets(const CoxeterMatrix& m, GenSet within);
bool is_connected(const CoxeterMatrix& m, GenSet within);

std::vector<std::pair<GenSet, CoxeterMatrix>> irreducible_components(const CoxeterMatrix& m);

enum class Family { ATilde2, BTilde8 };

Family parse_family(std::string_view name);
std::string family_name(Family f);
int family_minimum(Family f);

/// atilde2(n): s_0..s_n; btilde8(n): p_0..p_{n-1}, t.
CoxeterMatrix builtin_family(Family f, int n);

}  // namespace coxl2
