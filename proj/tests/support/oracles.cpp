#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

using coxl2::CoxeterMatrix;
using coxl2::GenSet;
using coxl2::Simplex;
using coxl2::TypeKind;

std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Simplex>> all_faces(const coxl2::SimplicialComplex& x) {
  std::vector<std::set<Simplex>> by_size(1);
  by_size[0].insert(Simplex{});
  for (const auto& f : x.facets()) {
    const std::size_t n = f.size();
    if (by_size.size() < n + 1) by_size.resize(n + 1);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      by_size[s.size()].insert(std::move(s));
    }
  }
  std::vector<std::vector<Simplex>> out;
  for (auto& s : by_size) out.emplace_back(s.begin(), s.end());
  return out;
}

std::map<int, std::int64_t> reduced_betti(const coxl2::SimplicialComplex& x) {
  const auto faces = all_faces(x);
  const std::size_t levels = faces.size();  // sizes 0..levels-1, i.e. degrees -1..levels-2
  // rank_of[s] = rank of the boundary from faces of size s to size s-1.
  std::vector<std::size_t> rank_of(levels + 1, 0);
  for (std::size_t s = 1; s < levels; ++s) {
    std::map<Simplex, std::size_t> row;
    for (std::size_t i = 0; i < faces[s - 1].size(); ++i) row[faces[s - 1][i]] = i;
    std::vector<std::vector<Rational>> m(faces[s - 1].size(), std::vector<Rational>(faces[s].size(), 0));
    for (std::size_t c = 0; c < faces[s].size(); ++c) {
      const auto& f = faces[s][c];
      for (std::size_t i = 0; i < f.size(); ++i) {
        Simplex g = f;
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
        m[row.at(g)][c] = (i % 2 == 0) ? 1 : -1;
      }
    }
    rank_of[s] = dense_rank(std::move(m));
  }
  std::map<int, std::int64_t> out;
  for (std::size_t s = 0; s < levels; ++s) {
    const auto b = static_cast<std::int64_t>(faces[s].size() - rank_of[s] - rank_of[s + 1]);
    if (b != 0) out[static_cast<int>(s) - 1] = b;
  }
  return out;
}

namespace {

double cosine(int m) {
  if (m == coxl2::kInfinity) return -1.0;
  return -std::cos(M_PI / m);
}

}  // namespace

TypeKind gram_kind(const CoxeterMatrix& m, GenSet j) {
  const auto idx = j.indices();
  const auto n = static_cast<Eigen::Index>(idx.size());
  if (n == 0) return TypeKind::Finite;
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      g(a, b) = a == b ? 1.0 : cosine(m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  constexpr double eps = 1e-9;
  if (ev(0) > eps) return TypeKind::Finite;
  if (ev(0) > -eps && (n == 1 || ev(1) > eps)) return TypeKind::Affine;
  return TypeKind::Indefinite;
}

TypeKind gram_kind(const CoxeterMatrix& m) { return gram_kind(m, m.all()); }

std::vector<GenSet> brute_spherical_subsets(const CoxeterMatrix& m) {
  std::vector<GenSet> out;
  const std::uint64_t full = m.all().bits();
  for (std::uint64_t b = 0; b <= full; ++b)
    if (gram_kind(m, GenSet(b)) == TypeKind::Finite) out.push_back(GenSet(b));
  std::sort(out.begin(), out.end(), coxl2::CanonicalLess{});
  return out;
}

int brute_sphericity(const CoxeterMatrix& m) {
  int worst = m.rank();
  const std::uint64_t full = m.all().bits();
  for (std::uint64_t b = 0; b <= full; ++b)
    if (gram_kind(m, GenSet(b)) != TypeKind::Finite) worst = std::min(worst, GenSet(b).size() - 1);
  return worst;
}

std::vector<std::uint64_t> dihedral_word_growth(int m, int n) {
  // (k, e) acts as x -> (-1)^e x + k.
  using Elt = std::pair<std::int64_t, int>;
  auto compose = [m](Elt x, Elt y) {
    std::int64_t k = x.first + (x.second ? -y.first : y.first);
    if (m > 0) k = ((k % m) + m) % m;
    return Elt{k, x.second ^ y.second};
  };
  const Elt gens[2] = {{0, 1}, {1, 1}};
  std::map<Elt, int> first;
  for (int len = 0; len <= n; ++len)
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
      Elt e{0, 0};
      for (int i = 0; i < len; ++i) e = compose(e, gens[w >> i & 1]);
      first.emplace(e, len);
    }
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [e, len] : first) ++out[static_cast<std::size_t>(len)];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::uint64_t classical_order(const coxl2::TypeTag& t) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  const int n = t.index;
  switch (t.series) {
    case 'A':
      return fact(n + 1);
    case 'B':
    case 'C':
      return (std::uint64_t{1} << n) * fact(n);
    case 'D':
      return (std::uint64_t{1} << (n - 1)) * fact(n);
    case 'E':
      return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case 'F':
      return 1152;
    case 'G':
      return 12;
    case 'H':
      return n == 3 ? 120 : 14400;
    case 'I':
      return 2 * static_cast<std::uint64_t>(t.dihedral_order);
    default:
      throw std::invalid_argument("no order for " + t.name());
  }
}

std::vector<CoxeterMatrix> irreducible_corpus(int max_rank) {
  constexpr int labels[] = {2, 3, 4, 6, coxl2::kInfinity};
  constexpr int L = 5;
  std::vector<CoxeterMatrix> out;
  for (int r = 1; r <= max_rank; ++r) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> pid(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), -1));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        pid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            pid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = static_cast<int>(pairs.size());
        pairs.emplace_back(i, j);
      }
    const std::size_t P = pairs.size();
    // perm_pairs[p][k] = index of the pair (pi(i), pi(j)) for pair k = (i, j).
    std::vector<std::vector<int>> perm_pairs;
    std::vector<int> pi(static_cast<std::size_t>(r));
    std::iota(pi.begin(), pi.end(), 0);
    do {
      std::vector<int> row(P);
      for (std::size_t k = 0; k < P; ++k)
        row[k] = pid[static_cast<std::size_t>(pi[static_cast<std::size_t>(pairs[k].first)])]
                    [static_cast<std::size_t>(pi[static_cast<std::size_t>(pairs[k].second)])];
      perm_pairs.push_back(std::move(row));
    } while (std::next_permutation(pi.begin(), pi.end()));

    std::vector<int> v(P, 0);
    std::vector<std::string> names;
    for (int i = 0; i < r; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    while (true) {
      // Connectivity over edges with label index > 0.
      std::uint32_t seen = 1, frontier = 1;
      while (frontier) {
        std::uint32_t next = 0;
        for (std::size_t k = 0; k < P; ++k) {
          if (v[k] == 0) continue;
          const auto [i, j] = pairs[k];
          if (frontier >> i & 1) next |= 1u << j;
          if (frontier >> j & 1) next |= 1u << i;
        }
        frontier = next & ~seen;
        seen |= next;
      }
      bool keep = seen == (1u << r) - 1;
      for (std::size_t p = 1; keep && p < perm_pairs.size(); ++p) {
        const auto& pp = perm_pairs[p];
        for (std::size_t k = 0; k < P; ++k) {
          const int a = v[k], b = v[static_cast<std::size_t>(pp[k])];
          if (b < a) {
            keep = false;
            break;
          }
          if (a < b) break;
        }
      }
      if (keep) {
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 1));
        for (std::size_t k = 0; k < P; ++k) {
          const auto [i, j] = pairs[k];
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = labels[v[k]];
        }
        out.emplace_back(names, rows);
      }
      std::size_t k = 0;
      while (k < P && v[k] == L - 1) v[k++] = 0;
      if (k == P) break;
      ++v[k];
    }
  }
  return out;
}

std::vector<CoxeterMatrix> full_corpus(int max_rank) {
  auto out = irreducible_corpus(max_rank);
  for (int n = 3; n <= 8; ++n) out.push_back(coxl2::builtin_family(coxl2::Family::ATilde2, n));
  for (int n = 9; n <= 12; ++n) out.push_back(coxl2::builtin_family(coxl2::Family::BTilde8, n));
  return out;
}

}  // namespace oracle
