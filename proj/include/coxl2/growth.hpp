#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "coxl2/classify.hpp"
#include "coxl2/coxeter.hpp"
#include "coxl2/l2.hpp"

namespace coxl2 {

using Rational = boost::multiprecision::mpq_rational;

/// Exact element a + b√2 + c√3 + d√6 of Q(√2, √3).
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(Rational a, Rational b = 0, Rational c = 0, Rational d = 0);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_zero() const;
  /// Exact sign: -1, 0 or 1.
  int sign() const;

  QuadNumber operator-() const;
  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y);
  friend bool operator==(const QuadNumber& x, const QuadNumber& y);

  /// Canonical text "a,b,c,d" with reduced fractions.
  std::string key() const;
  std::string to_string() const;

 private:
  Rational a_, b_, c_, d_;
};

/// Square matrix over QuadNumber, row-major.
class QuadMatrix {
 public:
  QuadMatrix() = default;
  explicit QuadMatrix(int n);
  static QuadMatrix identity(int n);

  int size() const { return n_; }
  QuadNumber& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const QuadNumber& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }

  QuadNumber trace() const;
  friend QuadMatrix operator*(const QuadMatrix& x, const QuadMatrix& y);
  friend bool operator==(const QuadMatrix& x, const QuadMatrix& y) { return x.n_ == y.n_ && x.e_ == y.e_; }

  std::string key() const;

 private:
  int n_ = 0;
  std::vector<QuadNumber> e_;
};

/// -2cos(pi/m) for m in {2, 3, 4, 6, infinity}; throws Error otherwise.
QuadNumber gram_entry(int m);

/// Geometric representation: one reflection matrix per generator, in the root basis.
std::vector<QuadMatrix> tits_generators(const CoxeterMatrix& m);

struct GrowthSeries {
  std::vector<std::uint64_t> coefficients;
  int truncation = 0;
  bool complete = false;

  std::uint64_t total() const;
  friend bool operator==(const GrowthSeries&, const GrowthSeries&) = default;
};

/// Element budget for a single enumeration; beyond it the call throws Error.
inline constexpr std::size_t kDefaultElementLimit = 4'000'000;

/// Counts elements by word length up to `n`. Stops early, with `complete`, once W is exhausted.
GrowthSeries enumerate_by_length(const CoxeterMatrix& m, int n, std::size_t element_limit = kDefaultElementLimit);

/// Exponents of a finite irreducible type; throws Error for other tags.
std::vector<int> exponents(const TypeTag& tag);

/// Coefficients of prod_i (1 + t + ... + t^{m_i}).
GrowthSeries finite_growth_polynomial(const TypeTag& tag);

struct CovolumeSums {
  std::vector<Rational> partial;  // s_0..s_N
  bool complete = false;
};

/// s_k = sum_{i<=k} c_i q^{-i}, exact.
CovolumeSums covolume_partial_sums(const CoxeterMatrix& m, int q, int n);
CovolumeSums covolume_partial_sums(const GrowthSeries& g, int q, int n);

/// Fixed-point rendering, rounded half away from zero.
std::string decimal_string(const Rational& x, int digits = 12);

struct KMFlag {
  bool ok = false;
  std::string criterion;
};

struct KMReport {
  int rank = 0;
  int q = 0;
  int sphericity = 0;
  TypeTag type;
  KMFlag lattice;
  KMFlag finitely_presented;
  KMFlag simple;
  KMFlag kazhdan;
  GrowthSeries growth_prefix;
  std::string covolume_partial;
  /// Present only when W is infinite and not affine.
  std::optional<BettiSupport> betti;
  std::set<int> lattice_degrees;
};

/// Throws Error for reducible input or q < 2. Growth is enumerated to min(n, 20).
KMReport km_report(const CoxeterMatrix& m, int q, int n);

}  // namespace coxl2
