#include "coxl2/classify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <random>
#include <unordered_set>

namespace coxl2 {

namespace {

TypeTag finite(char series, int index) { return TypeTag{TypeKind::Finite, series, index, 0, true}; }
TypeTag affine(char series, int index) { return TypeTag{TypeKind::Affine, series, index, 0, true}; }
TypeTag indefinite() { return TypeTag{}; }

struct Subdiagram {
  const CoxeterMatrix& m;
  GenSet nodes;

  int degree(int i) const { return (m.neighbors(i) & nodes).size(); }

  /// Labels met walking from `from` through `next` until a node whose degree is not 2.
  std::vector<int> walk(int from, int next) const {
    std::vector<int> labels{m(from, next)};
    int prev = from;
    int cur = next;
    while (degree(cur) == 2) {
      const GenSet rest = (m.neighbors(cur) & nodes).without(prev);
      const int nxt = rest.lowest();
      labels.push_back(m(cur, nxt));
      prev = cur;
      cur = nxt;
    }
    return labels;
  }
};

TypeTag classify_path(const std::vector<int>& labels) {
  const int r = static_cast<int>(labels.size()) + 1;
  std::vector<int> odd;  // positions of labels other than 3
  for (int i = 0; i < r - 1; ++i)
    if (labels[static_cast<std::size_t>(i)] != 3) odd.push_back(i);
  if (odd.empty()) return finite('A', r);
  const auto at_end = [&](int p) { return p == 0 || p == r - 2; };
  if (odd.size() == 1) {
    const int p = odd[0];
    const int v = labels[static_cast<std::size_t>(p)];
    if (v == 4) {
      if (at_end(p)) return finite('B', r);
      if (r == 4) return finite('F', 4);
      if (r == 5 && (p == 1 || p == 2)) {
        // 3,4,3,3 and 3,3,4,3 are the same path read from either end.
        return affine('F', 4);
      }
      return indefinite();
    }
    if (v == 5 && at_end(p)) {
      if (r == 3) return finite('H', 3);
      if (r == 4) return finite('H', 4);
      return indefinite();
    }
    if (v == 6 && at_end(p) && r == 3) return affine('G', 2);
    return indefinite();
  }
  if (odd.size() == 2 && odd[0] == 0 && odd[1] == r - 2 && labels.front() == 4 && labels.back() == 4)
    return affine('C', r - 1);
  return indefinite();
}

TypeTag classify_star(const Subdiagram& d, int center) {
  std::vector<std::vector<int>> arms;
  (d.m.neighbors(center) & d.nodes).for_each([&](int nb) { arms.push_back(d.walk(center, nb)); });
  const int r = d.nodes.size();
  int non3 = 0;
  for (const auto& a : arms)
    for (int l : a)
      if (l != 3) ++non3;
  if (arms.size() == 4) return (non3 == 0 && r == 5) ? affine('D', 4) : indefinite();
  if (arms.size() != 3) return indefinite();
  std::array<int, 3> len{};
  for (std::size_t i = 0; i < 3; ++i) len[i] = static_cast<int>(arms[i].size());
  if (non3 == 0) {
    std::sort(len.begin(), len.end());
    if (len[0] == 1 && len[1] == 1) return finite('D', r);
    if (len[0] == 1 && len[1] == 2) {
      if (len[2] == 2) return finite('E', 6);
      if (len[2] == 3) return finite('E', 7);
      if (len[2] == 4) return finite('E', 8);
      if (len[2] == 5) return affine('E', 8);
      return indefinite();
    }
    if (len[0] == 1 && len[1] == 3 && len[2] == 3) return affine('E', 7);
    if (len[0] == 2 && len[1] == 2 && len[2] == 2) return affine('E', 6);
    return indefinite();
  }
  if (non3 != 1) return indefinite();
  // A single 4 on the outermost edge of one arm, the other two arms single nodes.
  for (std::size_t i = 0; i < 3; ++i) {
    if (arms[i].back() != 4) continue;
    const bool others_short = len[(i + 1) % 3] == 1 && len[(i + 2) % 3] == 1;
    return others_short ? affine('B', r - 1) : indefinite();
  }
  return indefinite();
}

TypeTag classify_kind(const CoxeterMatrix& m, GenSet comp) {
  const int r = comp.size();
  if (r == 1) return finite('A', 1);
  if (r == 2) {
    const auto idx = comp.indices();
    const int v = m(idx[0], idx[1]);
    if (v == 3) return finite('A', 2);
    if (v == 4) return finite('B', 2);
    if (v == kInfinity) return affine('A', 1);
    TypeTag t = finite('I', 2);
    t.dihedral_order = v;
    return t;
  }
  const Subdiagram d{m, comp};
  int edges = 0;
  bool has_inf = false;
  std::vector<int> branch;
  comp.for_each([&](int i) {
    const int deg = d.degree(i);
    edges += deg;
    if (deg >= 3) branch.push_back(i);
    (m.neighbors(i) & comp).for_each([&](int j) {
      if (m(i, j) == kInfinity) has_inf = true;
    });
  });
  edges /= 2;
  if (has_inf) return indefinite();
  if (edges >= r) {
    if (edges != r || !branch.empty()) return indefinite();
    bool all3 = true;
    comp.for_each([&](int i) {
      (m.neighbors(i) & comp).for_each([&](int j) { all3 = all3 && m(i, j) == 3; });
    });
    return all3 ? affine('A', r - 1) : indefinite();
  }
  if (branch.empty()) {
    int end = -1;
    comp.for_each([&](int i) {
      if (end < 0 && d.degree(i) == 1) end = i;
    });
    return classify_path(d.walk(end, (m.neighbors(end) & comp).lowest()));
  }
  if (branch.size() == 1) return classify_star(d, branch[0]);
  if (branch.size() == 2) {
    bool ok = true;
    for (int b : branch) {
      if (d.degree(b) != 3) ok = false;
      int leaves = 0;
      (m.neighbors(b) & comp).for_each([&](int j) {
        if (d.degree(j) == 1) ++leaves;
      });
      if (leaves < 2) ok = false;
    }
    comp.for_each([&](int i) {
      (m.neighbors(i) & comp).for_each([&](int j) { ok = ok && m(i, j) == 3; });
    });
    return ok ? affine('D', r - 1) : indefinite();
  }
  return indefinite();
}

bool all_maximal_proper_spherical(const CoxeterMatrix& m, GenSet comp) {
  bool ok = true;
  comp.for_each([&](int i) { ok = ok && is_spherical(m, comp.without(i)); });
  return ok;
}

}  // namespace

std::string TypeTag::name() const {
  if (kind == TypeKind::Indefinite) return "indefinite";
  std::string core;
  if (series == 'I')
    core = "I2(" + std::to_string(dihedral_order) + ")";
  else
    core = std::string(1, series) + std::to_string(index);
  return kind == TypeKind::Affine ? "~" + core : core;
}

std::string kind_name(TypeKind k) {
  switch (k) {
    case TypeKind::Finite:
      return "finite";
    case TypeKind::Affine:
      return "affine";
    case TypeKind::Indefinite:
      return "indefinite";
  }
  return "indefinite";
}

TypeTag classify_component(const CoxeterMatrix& m, GenSet component, bool with_parabolic_flag) {
  if (!is_connected(m, component)) throw Error("classification needs a nonempty irreducible system");
  TypeTag t = classify_kind(m, component);
  if (t.kind == TypeKind::Indefinite && with_parabolic_flag)
    t.all_proper_parabolics_finite = all_maximal_proper_spherical(m, component);
  return t;
}

TypeTag classify_irreducible(const CoxeterMatrix& m) {
  if (m.rank() == 0) throw Error("classification needs a nonempty irreducible system (rank is 0)");
  if (!is_connected(m, m.all())) throw Error("classification needs an irreducible system (diagram is disconnected)");
  return classify_component(m, m.all(), true);
}

bool is_spherical(const CoxeterMatrix& m, GenSet j) {
  if (!j.subset_of(m.all())) throw Error("subset references generators outside the system");
  for (GenSet c : component_sets(m, j))
    if (classify_kind(m, c).kind != TypeKind::Finite) return false;
  return true;
}

bool is_spherical(const CoxeterMatrix& m, std::span<const std::string> names) {
  return is_spherical(m, m.subset(names));
}

std::vector<GenSet> spherical_subsets(const CoxeterMatrix& m) {
  // Level-wise: a (k+1)-set is tested only when all of its k-subsets are spherical.
  std::vector<GenSet> out{GenSet{}};
  std::vector<GenSet> level{GenSet{}};
  const int n = m.rank();
  while (!level.empty()) {
    std::vector<GenSet> next;
    const std::unordered_set<GenSet> known(level.begin(), level.end());
    for (GenSet s : level) {
      // Extend only by generators above the current maximum to visit each set once.
      const int start = s.empty() ? 0 : 64 - std::countl_zero(s.bits());
      for (int i = start; i < n; ++i) {
        const GenSet t = s.with(i);
        bool faces_ok = true;
        t.for_each([&](int x) {
          if (faces_ok && x != i) faces_ok = known.count(t.without(x)) > 0;
        });
        if (faces_ok && is_spherical(m, t)) next.push_back(t);
      }
    }
    std::sort(next.begin(), next.end(), CanonicalLess{});
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::vector<GenSet> maximal_finite_parabolics(const CoxeterMatrix& m) {
  const auto all = spherical_subsets(m);
  const std::unordered_set<GenSet> sph(all.begin(), all.end());
  std::vector<GenSet> out;
  for (GenSet s : all) {
    bool maximal = true;
    for (int i = 0; i < m.rank() && maximal; ++i)
      if (!s.contains(i) && sph.count(s.with(i))) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

int sphericity(const CoxeterMatrix& m) {
  const int n = m.rank();
  for (int k = 1; k <= n; ++k) {
    // Gosper's hack over all k-subsets of n.
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = n >= 64 ? 0 : std::uint64_t{1} << n;
    while (true) {
      if (!is_spherical(m, GenSet(s))) return k - 1;
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t r = s + c;
      if (r == 0) break;
      s = (((r ^ s) >> 2) / c) | r;
      if (limit && s >= limit) break;
    }
  }
  return n;
}

bool all_proper_parabolics_finite(const CoxeterMatrix& m, GenSet within) {
  if (!is_connected(m, within)) throw Error("all_proper_parabolics_finite needs an irreducible system");
  return all_maximal_proper_spherical(m, within);
}

bool all_proper_parabolics_finite(const CoxeterMatrix& m) { return all_proper_parabolics_finite(m, m.all()); }

std::vector<SphAffPartition> find_sph_aff_partitions(const CoxeterMatrix& m) {
  if (!is_connected(m, m.all())) throw Error("find_sph_aff_partitions needs an irreducible system");
  std::vector<SphAffPartition> out;
  const std::uint64_t full = m.all().bits();
  for (std::uint64_t bits = full;; bits = (bits - 1) & full) {
    const GenSet aff(bits);
    if (aff.size() >= 2 && is_connected(m, aff) && classify_kind(m, aff).kind == TypeKind::Affine &&
        is_spherical(m, m.all() - aff))
      out.push_back({m.all() - aff, aff});
    if (bits == 0) break;
  }
  std::sort(out.begin(), out.end(),
            [](const SphAffPartition& a, const SphAffPartition& b) { return canonical_less(a.spherical, b.spherical); });
  return out;
}

CoxeterMatrix random_connected_diagram(std::uint64_t seed, std::uint64_t index, int min_rank, int max_rank) {
  if (min_rank < 1 || max_rank < min_rank || max_rank > kMaxRank) throw Error("invalid rank range for scan");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const auto span = static_cast<std::uint64_t>(max_rank - min_rank + 1);
  const int r = min_rank + static_cast<int>(rng() % span);
  std::vector<std::string> names;
  for (int i = 0; i < r; ++i) names.push_back("x_" + std::to_string(i));
  const auto size = static_cast<std::size_t>(r);
  while (true) {
    std::vector<std::vector<int>> rows(size, std::vector<int>(size, 1));
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) rows[i][j] = rows[j][i] = kScanLabels[rng() % std::size(kScanLabels)];
    CoxeterMatrix cand(names, rows);
    if (is_connected(cand, cand.all())) return cand;
  }
}

CoxeterMatrix random_sparse_diagram(std::uint64_t seed, std::uint64_t index, int min_rank, int max_rank) {
  if (min_rank < 2 || max_rank < min_rank || max_rank > kMaxRank) throw Error("invalid rank range for scan");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5u};
  std::mt19937_64 rng(seq);
  const auto span = static_cast<std::uint64_t>(max_rank - min_rank + 1);
  const int r = min_rank + static_cast<int>(rng() % span);
  const auto size = static_cast<std::size_t>(r);
  std::vector<std::vector<int>> rows(size, std::vector<int>(size, 2));
  for (std::size_t i = 0; i < size; ++i) rows[i][i] = 1;
  constexpr int heavy[] = {4, 5, 6, kInfinity};
  auto label = [&] { return rng() % 8 != 0 ? 3 : heavy[rng() % std::size(heavy)]; };
  auto join = [&](std::size_t i, std::size_t j) { rows[i][j] = rows[j][i] = label(); };

  switch (rng() % 4) {
    case 0:  // path
      for (std::size_t i = 1; i < size; ++i) join(i - 1, i);
      break;
    case 1:  // cycle
      for (std::size_t i = 1; i < size; ++i) join(i - 1, i);
      join(size - 1, 0);
      break;
    case 2:  // path with the last node moved onto a random interior node
      for (std::size_t i = 1; i + 1 < size; ++i) join(i - 1, i);
      join(1 + rng() % (size - 2), size - 1);
      break;
    default:  // random recursive tree
      for (std::size_t i = 1; i < size; ++i) join(rng() % i, i);
      break;
  }
  if (rng() % 4 == 0) {
    const std::size_t i = rng() % size;
    const std::size_t j = rng() % size;
    if (i != j) join(i, j);
  }
  std::vector<std::string> names;
  for (int i = 0; i < r; ++i) names.push_back("x_" + std::to_string(i));
  return CoxeterMatrix(std::move(names), rows);
}

bool violates_nine_spherical_dichotomy(const CoxeterMatrix& m) {
  if (!is_connected(m, m.all()) || sphericity(m) < 9) return false;
  return classify_kind(m, m.all()).kind == TypeKind::Indefinite;
}

ScanResult sphericity_classification_scan(const ScanOptions& options) {
  ScanResult result;
  result.samples = options.samples;
  for (std::size_t i = 0; i < options.samples; ++i) {
    const CoxeterMatrix m = options.sampler == ScanSampler::Uniform
                                ? random_connected_diagram(options.seed, i, options.min_rank, options.max_rank)
                                : random_sparse_diagram(options.seed, i, options.min_rank, options.max_rank);
    if (sphericity(m) < 9) continue;
    ++result.nine_spherical;
    const TypeKind k = classify_kind(m, m.all()).kind;
    if (k == TypeKind::Finite)
      ++result.finite;
    else if (k == TypeKind::Affine)
      ++result.affine;
    else
      result.counterexamples.push_back(m);
  }
  return result;
}

}  // namespace coxl2
