#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxl2 {

/// Domain error: a violated precondition or malformed input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxRank = 64;

/// A subset of the generator indices of a Coxeter system, stored as a bitmask.
class GenSet {
 public:
  constexpr GenSet() = default;
  constexpr explicit GenSet(std::uint64_t bits) : bits_(bits) {}

  static GenSet of(std::initializer_list<int> indices) {
    GenSet s;
    for (int i : indices) s = s.with(i);
    return s;
  }
  static constexpr GenSet full(int n) {
    return GenSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr GenSet with(int i) const { return GenSet(bits_ | (std::uint64_t{1} << i)); }
  constexpr GenSet without(int i) const { return GenSet(bits_ & ~(std::uint64_t{1} << i)); }
  constexpr bool subset_of(GenSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(GenSet o) const { return (bits_ & o.bits_) != 0; }
  /// Index of the smallest element; -1 when empty.
  constexpr int lowest() const { return bits_ ? std::countr_zero(bits_) : -1; }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b; b &= b - 1) f(std::countr_zero(b));
  }
  std::vector<int> indices() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  friend constexpr GenSet operator|(GenSet a, GenSet b) { return GenSet(a.bits_ | b.bits_); }
  friend constexpr GenSet operator&(GenSet a, GenSet b) { return GenSet(a.bits_ & b.bits_); }
  friend constexpr GenSet operator-(GenSet a, GenSet b) { return GenSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(GenSet a, GenSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Canonical order on subsets: by size, then lexicographically on sorted indices.
constexpr bool canonical_less(GenSet a, GenSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  return (a.bits() >> std::countr_zero(diff)) & 1U;
}

struct CanonicalLess {
  constexpr bool operator()(GenSet a, GenSet b) const { return canonical_less(a, b); }
};

}  // namespace coxl2

template <>
struct std::hash<coxl2::GenSet> {
  std::size_t operator()(coxl2::GenSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
