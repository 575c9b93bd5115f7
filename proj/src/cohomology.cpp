#include "coxl2/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/gmp.hpp>

namespace coxl2 {

namespace {

/// Faces of one dimension, stored flat with a fixed stride and indexed by an open-addressing hash table.
struct FaceTable {
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;
  std::size_t stride = 0;
  std::vector<std::uint32_t> data;
  std::vector<std::uint32_t> slots;

  std::size_t size() const { return stride ? data.size() / stride : 0; }
  const std::uint32_t* at(std::size_t i) const { return data.data() + i * stride; }

  std::size_t hash(const std::uint32_t* f) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::size_t k = 0; k < stride; ++k) {
      h ^= f[k] + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }

  void grow() {
    slots.assign(std::max<std::size_t>(16, slots.size() * 2), kEmpty);
    const std::size_t mask = slots.size() - 1;
    for (std::size_t i = 0; i < size(); ++i) {
      std::size_t h = hash(at(i)) & mask;
      while (slots[h] != kEmpty) h = (h + 1) & mask;
      slots[h] = static_cast<std::uint32_t>(i);
    }
  }

  /// Index of `face`, or -1.
  std::ptrdiff_t find(const std::uint32_t* face) const {
    if (slots.empty()) return -1;
    const std::size_t mask = slots.size() - 1;
    for (std::size_t h = hash(face) & mask; slots[h] != kEmpty; h = (h + 1) & mask)
      if (std::equal(face, face + stride, at(slots[h]))) return slots[h];
    return -1;
  }

  /// Reorders faces lexicographically and rebuilds the index.
  void sort() {
    const std::size_t n = size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(at(a), at(a) + stride, at(b), at(b) + stride);
    });
    std::vector<std::uint32_t> out;
    out.reserve(data.size());
    for (auto i : order) out.insert(out.end(), at(i), at(i) + stride);
    data = std::move(out);
    slots.assign(slots.size() / 2, kEmpty);
    grow();
  }

  /// Adds `face` unless present; returns false if it was already there.
  bool insert(const std::uint32_t* face) {
    if (2 * (size() + 1) > slots.size()) grow();
    const std::size_t mask = slots.size() - 1;
    std::size_t h = hash(face) & mask;
    for (; slots[h] != kEmpty; h = (h + 1) & mask)
      if (std::equal(face, face + stride, at(slots[h]))) return false;
    slots[h] = static_cast<std::uint32_t>(size());
    data.insert(data.end(), face, face + stride);
    return true;
  }
};

BoundaryMatrix augmentation(std::size_t vertices) {
  BoundaryMatrix b;
  b.rows = 1;
  for (std::size_t v = 0; v < vertices; ++v) {
    b.index.push_back(0);
    b.coeff.push_back(1);
    b.offsets.push_back(b.index.size());
  }
  return b;
}

struct Overflow {};

/// int64 with overflow detection; mpz_int never overflows.
using BigInt = boost::multiprecision::mpz_int;

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline std::int64_t abs_of(std::int64_t a) { return a < 0 ? -a : a; }
inline BigInt abs_of(const BigInt& a) { return boost::multiprecision::abs(a); }

template <class T>
std::size_t rank_with(const BoundaryMatrix& m) {
  using Entry = std::pair<std::uint32_t, T>;
  using Column = std::vector<Entry>;
  std::vector<Column> pivots;
  std::vector<std::int64_t> owner(m.rows, -1);
  Column tmp;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Column col;
    for (std::size_t k = m.offsets[c]; k < m.offsets[c + 1]; ++k) col.emplace_back(m.index[k], T(m.coeff[k]));
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    while (!col.empty()) {
      const std::uint32_t low = col.back().first;
      const std::int64_t p = owner[low];
      if (p < 0) {
        owner[low] = static_cast<std::int64_t>(pivots.size());
        pivots.push_back(std::move(col));
        break;
      }
      const Column& piv = pivots[static_cast<std::size_t>(p)];
      // col <- (a_p / g) * col - (a_c / g) * piv, which cancels the entry at `low`.
      const T g = gcd_of(piv.back().second, col.back().second);
      const T fc = piv.back().second / g;
      const T fp = col.back().second / g;
      tmp.clear();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < col.size() || j < piv.size()) {
        if (j == piv.size() || (i < col.size() && col[i].first < piv[j].first)) {
          tmp.emplace_back(col[i].first, mul(col[i].second, fc));
          ++i;
        } else if (i == col.size() || piv[j].first < col[i].first) {
          tmp.emplace_back(piv[j].first, sub(T(0), mul(piv[j].second, fp)));
          ++j;
        } else {
          T v = sub(mul(col[i].second, fc), mul(piv[j].second, fp));
          if (v != 0) tmp.emplace_back(col[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      T content(0);
      for (const auto& e : tmp) content = gcd_of(content, abs_of(e.second));
      if (content > 1)
        for (auto& e : tmp) e.second /= content;
      col.swap(tmp);
    }
  }
  return pivots.size();
}

}  // namespace

CohomologyProfile::CohomologyProfile(std::map<int, std::int64_t> betti) {
  for (auto [d, b] : betti)
    if (b != 0) betti_.emplace(d, b);
}

std::int64_t CohomologyProfile::operator[](int degree) const {
  auto it = betti_.find(degree);
  return it == betti_.end() ? 0 : it->second;
}

bool CohomologyProfile::is_sphere(int degree) const {
  return betti_.size() == 1 && betti_.begin()->first == degree && betti_.begin()->second == 1;
}

std::int64_t CohomologyProfile::alternating_sum() const {
  std::int64_t s = 0;
  for (auto [d, b] : betti_)
    if (d >= 0) s += (d % 2 == 0) ? b : -b;
  return s;
}

std::string CohomologyProfile::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto [d, b] : betti_) {
    if (!first) out << ", ";
    first = false;
    out << d << ": " << b;
  }
  out << '}';
  return out.str();
}

std::size_t rational_rank(const BoundaryMatrix& m) {
  try {
    return rank_with<std::int64_t>(m);
  } catch (const Overflow&) {
    return rank_with<BigInt>(m);
  }
}

ChainComplex chain_complex(const SimplicialComplex& x) {
  ChainComplex c;
  const int top = x.dimension();
  c.cells.assign(static_cast<std::size_t>(top + 2), 0);
  c.cells[0] = 1;
  if (top < 0) return c;

  std::vector<FaceTable> faces(static_cast<std::size_t>(top + 1));
  std::vector<FaceTable> facets(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    faces[static_cast<std::size_t>(d)].stride = static_cast<std::size_t>(d + 1);
    facets[static_cast<std::size_t>(d)].stride = static_cast<std::size_t>(d + 1);
  }
  for (const auto& f : x.facets())
    if (!facets[f.size() - 1].insert(f.data())) throw Error("malformed complex: duplicate facet");
  std::vector<std::uint32_t> face;
  for (int d = top; d >= 0; --d) {
    const auto& own = facets[static_cast<std::size_t>(d)];
    auto& table = faces[static_cast<std::size_t>(d)];
    if (d < top) {
      const auto& up = faces[static_cast<std::size_t>(d + 1)];
      for (std::size_t k = 0; k < up.size(); ++k) {
        const std::uint32_t* s = up.at(k);
        for (std::size_t drop = 0; drop < up.stride; ++drop) {
          face.clear();
          for (std::size_t v = 0; v < up.stride; ++v)
            if (v != drop) face.push_back(s[v]);
          table.insert(face.data());
        }
      }
      for (std::size_t k = 0; k < own.size(); ++k)
        if (!table.insert(own.at(k))) throw Error("malformed complex: a facet is contained in another facet");
    } else {
      table = own;
    }
  }

  for (auto& t : faces) t.sort();
  c.boundary.reserve(static_cast<std::size_t>(top + 1));
  c.boundary.push_back(augmentation(faces[0].size()));
  c.cells[1] = faces[0].size();
  for (int d = 1; d <= top; ++d) {
    const auto& cur = faces[static_cast<std::size_t>(d)];
    const auto& low = faces[static_cast<std::size_t>(d - 1)];
    BoundaryMatrix b;
    b.rows = low.size();
    b.offsets.reserve(cur.size() + 1);
    b.index.reserve(cur.size() * cur.stride);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      const std::uint32_t* s = cur.at(k);
      for (std::size_t drop = 0; drop < cur.stride; ++drop) {
        face.clear();
        for (std::size_t v = 0; v < cur.stride; ++v)
          if (v != drop) face.push_back(s[v]);
        const auto idx = low.find(face.data());
        b.index.push_back(static_cast<std::uint32_t>(idx));
        b.coeff.push_back(drop % 2 == 0 ? 1 : -1);
      }
      b.offsets.push_back(b.index.size());
    }
    c.cells[static_cast<std::size_t>(d + 1)] = cur.size();
    c.boundary.push_back(std::move(b));
  }
  return c;
}

ChainComplex chain_complex(const CubicalComplex& x) {
  ChainComplex c;
  const int top = x.dimension();
  c.cells.assign(static_cast<std::size_t>(top + 2), 0);
  c.cells[0] = 1;
  if (top < 0) return c;

  std::vector<std::vector<Cube>> by_dim(static_cast<std::size_t>(top + 1));
  for (const Cube& q : x.cells()) by_dim[static_cast<std::size_t>(q.dimension())].push_back(q);
  struct Key {
    std::size_t operator()(const Cube& q) const noexcept {
      return std::hash<std::uint64_t>{}(q.lower.bits() * 0x9E3779B97F4A7C15ULL ^ q.upper.bits());
    }
  };
  std::vector<std::unordered_map<Cube, std::uint32_t, Key>> ids(static_cast<std::size_t>(top + 1));
  for (std::size_t d = 0; d < by_dim.size(); ++d) {
    auto& cells = by_dim[d];
    std::sort(cells.begin(), cells.end(), [](const Cube& a, const Cube& b) {
      return a.upper.bits() != b.upper.bits() ? a.upper.bits() < b.upper.bits() : a.lower.bits() < b.lower.bits();
    });
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    ids[d].reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) ids[d].emplace(cells[k], static_cast<std::uint32_t>(k));
    c.cells[d + 1] = cells.size();
  }

  c.boundary.push_back(augmentation(by_dim[0].size()));
  for (std::size_t d = 1; d < by_dim.size(); ++d) {
    BoundaryMatrix b;
    b.rows = by_dim[d - 1].size();
    auto lookup = [&](const Cube& q) {
      auto it = ids[d - 1].find(q);
      if (it == ids[d - 1].end()) throw Error("malformed cube complex: missing face");
      return it->second;
    };
    for (const Cube& q : by_dim[d]) {
      int pos = 0;
      (q.upper - q.lower).for_each([&](int g) {
        const int sign = pos % 2 == 0 ? 1 : -1;
        b.index.push_back(lookup({q.lower.with(g), q.upper}));
        b.coeff.push_back(sign);
        b.index.push_back(lookup({q.lower, q.upper.without(g)}));
        b.coeff.push_back(-sign);
        ++pos;
      });
      b.offsets.push_back(b.index.size());
    }
    c.boundary.push_back(std::move(b));
  }
  return c;
}

CohomologyProfile reduced_betti(const ChainComplex& c) {
  const int top = c.top_dimension();
  if (top < 0) return CohomologyProfile(std::map<int, std::int64_t>{{-1, 1}});

  // alive[d] for d = 0..top; coface counts for d = 0..top-1.
  std::vector<std::vector<char>> alive(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<std::uint32_t>> cofaces(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<std::size_t>> coface_off(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<int>> count(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    const auto n = c.cells[static_cast<std::size_t>(d + 1)];
    alive[static_cast<std::size_t>(d)].assign(n, 1);
    count[static_cast<std::size_t>(d)].assign(n, 0);
  }
  for (int d = 0; d < top; ++d) {
    const BoundaryMatrix& up = c.boundary[static_cast<std::size_t>(d + 1)];
    auto& cnt = count[static_cast<std::size_t>(d)];
    for (auto r : up.index) ++cnt[r];
    auto& off = coface_off[static_cast<std::size_t>(d)];
    off.assign(cnt.size() + 1, 0);
    for (std::size_t r = 0; r < cnt.size(); ++r) off[r + 1] = off[r] + static_cast<std::size_t>(cnt[r]);
    auto& cf = cofaces[static_cast<std::size_t>(d)];
    cf.assign(off.back(), 0);
    std::vector<std::size_t> fill(off.begin(), off.end() - 1);
    for (std::size_t col = 0; col < up.cols(); ++col)
      for (std::size_t k = up.offsets[col]; k < up.offsets[col + 1]; ++k)
        cf[fill[up.index[k]]++] = static_cast<std::uint32_t>(col);
  }

  // Elementary collapses: a cell with exactly one live coface is a free face.
  std::deque<std::pair<int, std::uint32_t>> queue;
  for (int d = 0; d < top; ++d)
    for (std::size_t i = 0; i < count[static_cast<std::size_t>(d)].size(); ++i)
      if (count[static_cast<std::size_t>(d)][i] == 1) queue.emplace_back(d, static_cast<std::uint32_t>(i));
  auto drop_faces = [&](int d, std::uint32_t cell, std::int64_t skip) {
    if (d == 0) return;
    const BoundaryMatrix& b = c.boundary[static_cast<std::size_t>(d)];
    for (std::size_t k = b.offsets[cell]; k < b.offsets[cell + 1]; ++k) {
      const auto f = b.index[k];
      if (static_cast<std::int64_t>(f) == skip) continue;
      auto& cnt = count[static_cast<std::size_t>(d - 1)][f];
      if (--cnt == 1 && alive[static_cast<std::size_t>(d - 1)][f]) queue.emplace_back(d - 1, f);
    }
  };
  while (!queue.empty()) {
    auto [d, s] = queue.front();
    queue.pop_front();
    const auto du = static_cast<std::size_t>(d);
    if (!alive[du][s] || count[du][s] != 1) continue;
    std::int64_t partner = -1;
    for (std::size_t k = coface_off[du][s]; k < coface_off[du][s + 1]; ++k) {
      const auto t = cofaces[du][k];
      if (alive[du + 1][t]) {
        partner = t;
        break;
      }
    }
    if (partner < 0) continue;
    const auto t = static_cast<std::uint32_t>(partner);
    if (d + 1 < top && count[du + 1][t] != 0) throw std::logic_error("free face paired with a non-maximal cell");
    alive[du][s] = 0;
    alive[du + 1][t] = 0;
    drop_faces(d + 1, t, s);
    drop_faces(d, s, -1);
  }

  // Restrict boundaries to the surviving cells and rank them.
  std::vector<std::vector<std::int64_t>> remap(static_cast<std::size_t>(top + 1));
  std::vector<std::size_t> live(static_cast<std::size_t>(top + 2), 0);
  live[0] = 1;
  for (int d = 0; d <= top; ++d) {
    auto& r = remap[static_cast<std::size_t>(d)];
    r.assign(alive[static_cast<std::size_t>(d)].size(), -1);
    std::size_t next = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (alive[static_cast<std::size_t>(d)][i]) r[i] = static_cast<std::int64_t>(next++);
    live[static_cast<std::size_t>(d + 1)] = next;
  }
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
  for (int d = 0; d <= top; ++d) {
    const BoundaryMatrix& b = c.boundary[static_cast<std::size_t>(d)];
    BoundaryMatrix sub;
    sub.rows = d == 0 ? 1 : live[static_cast<std::size_t>(d)];
    for (std::size_t col = 0; col < b.cols(); ++col) {
      if (!alive[static_cast<std::size_t>(d)][col]) continue;
      for (std::size_t k = b.offsets[col]; k < b.offsets[col + 1]; ++k) {
        std::int64_t row = d == 0 ? 0 : remap[static_cast<std::size_t>(d - 1)][b.index[k]];
        if (row < 0) throw std::logic_error("collapse removed a face of a live cell");
        sub.index.push_back(static_cast<std::uint32_t>(row));
        sub.coeff.push_back(b.coeff[k]);
      }
      sub.offsets.push_back(sub.index.size());
    }
    ranks[static_cast<std::size_t>(d)] = rational_rank(sub);
  }
  std::map<int, std::int64_t> betti;
  for (int d = -1; d <= top; ++d) {
    const auto idx = static_cast<std::size_t>(d + 1);
    const std::size_t rank_out = d >= 0 ? ranks[static_cast<std::size_t>(d)] : 0;
    const std::size_t rank_in = d + 1 <= top ? ranks[static_cast<std::size_t>(d + 1)] : 0;
    betti[d] = static_cast<std::int64_t>(live[idx]) - static_cast<std::int64_t>(rank_out) -
               static_cast<std::int64_t>(rank_in);
  }
  return CohomologyProfile(std::move(betti));
}

bool euler_consistent(std::int64_t euler, const CohomologyProfile& p, bool empty) {
  if (empty) return euler == 0 && p.nonzero() == std::map<int, std::int64_t>{{-1, 1}};
  return p[-1] == 0 && euler == 1 + p.alternating_sum();
}

namespace {

std::int64_t alternating_cells(const ChainComplex& c) {
  std::int64_t chi = 0;
  for (int d = 0; d <= c.top_dimension(); ++d) {
    const auto n = static_cast<std::int64_t>(c.cells[static_cast<std::size_t>(d + 1)]);
    chi += d % 2 == 0 ? n : -n;
  }
  return chi;
}

CohomologyProfile checked(const ChainComplex& c, bool empty) {
  CohomologyProfile p = reduced_betti(c);
  if (!euler_consistent(alternating_cells(c), p, empty))
    throw std::logic_error("Euler characteristic disagrees with Betti numbers: " + p.to_string());
  return p;
}

}  // namespace

CohomologyProfile reduced_cohomology(const SimplicialComplex& x) { return checked(chain_complex(x), x.empty()); }

CohomologyProfile reduced_cohomology(const CubicalComplex& x) { return checked(chain_complex(x), x.empty()); }

std::int64_t euler_characteristic(const SimplicialComplex& x) { return alternating_cells(chain_complex(x)); }

std::int64_t euler_characteristic(const CubicalComplex& x) { return alternating_cells(chain_complex(x)); }

}  // namespace coxl2
