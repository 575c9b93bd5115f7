#include "coxl2/growth.hpp"

#include <algorithm>
#include <unordered_set>

namespace coxl2 {

namespace {

int sgn(const Rational& x) { return x.sign() > 0 ? 1 : (x.sign() < 0 ? -1 : 0); }

/// Sign of x + y·√r for a non-square positive integer r.
int sign_with_root(int sx, int sy, const Rational& x2, const Rational& ry2) {
  if (sx == 0) return sy;
  if (sy == 0 || sx == sy) return sx;
  return x2 > ry2 ? sx : sy;
}

int sign_sqrt2(const Rational& x, const Rational& y) { return sign_with_root(sgn(x), sgn(y), x * x, 2 * y * y); }

}  // namespace

QuadNumber::QuadNumber(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

bool QuadNumber::is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }

int QuadNumber::sign() const {
  // (a + b√2) + (c + d√2)·√3
  const int sp = sign_sqrt2(a_, b_);
  const int sq = sign_sqrt2(c_, d_);
  if (sp == 0) return sq;
  if (sq == 0 || sp == sq) return sp;
  // Compare P^2 with 3Q^2 through the sign of P^2 - 3Q^2 in Q(√2).
  const Rational e = a_ * a_ + 2 * b_ * b_ - 3 * c_ * c_ - 6 * d_ * d_;
  const Rational f = 2 * a_ * b_ - 6 * c_ * d_;
  return sign_sqrt2(e, f) > 0 ? sp : sq;
}

QuadNumber QuadNumber::operator-() const { return QuadNumber(-a_, -b_, -c_, -d_); }

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
  return QuadNumber(x.a_ * y.a_ + 2 * x.b_ * y.b_ + 3 * x.c_ * y.c_ + 6 * x.d_ * y.d_,
                    x.a_ * y.b_ + x.b_ * y.a_ + 3 * (x.c_ * y.d_ + x.d_ * y.c_),
                    x.a_ * y.c_ + x.c_ * y.a_ + 2 * (x.b_ * y.d_ + x.d_ * y.b_),
                    x.a_ * y.d_ + x.d_ * y.a_ + x.b_ * y.c_ + x.c_ * y.b_);
}

bool operator==(const QuadNumber& x, const QuadNumber& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
}

std::string QuadNumber::key() const { return a_.str() + ',' + b_.str() + ',' + c_.str() + ',' + d_.str(); }

std::string QuadNumber::to_string() const {
  std::string out;
  const std::pair<const Rational*, const char*> terms[] = {{&a_, ""}, {&b_, "√2"}, {&c_, "√3"}, {&d_, "√6"}};
  for (const auto& [v, root] : terms) {
    if (*v == 0) continue;
    Rational mag = abs(*v);
    if (!out.empty()) out += v->sign() < 0 ? " - " : " + ";
    else if (v->sign() < 0) out += "-";
    if (*root == '\0' || mag != 1) out += mag.str();
    out += root;
  }
  return out.empty() ? "0" : out;
}

QuadMatrix::QuadMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n * n)) {}

QuadMatrix QuadMatrix::identity(int n) {
  QuadMatrix out(n);
  for (int i = 0; i < n; ++i) out(i, i) = QuadNumber(1);
  return out;
}

QuadNumber QuadMatrix::trace() const {
  QuadNumber t;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

QuadMatrix operator*(const QuadMatrix& x, const QuadMatrix& y) {
  if (x.n_ != y.n_) throw Error("matrix size mismatch");
  QuadMatrix out(x.n_);
  for (int i = 0; i < x.n_; ++i)
    for (int k = 0; k < x.n_; ++k) {
      if (x(i, k).is_zero()) continue;
      for (int j = 0; j < x.n_; ++j) out(i, j) += x(i, k) * y(k, j);
    }
  return out;
}

std::string QuadMatrix::key() const {
  std::string out;
  for (const auto& q : e_) {
    out += q.key();
    out += ';';
  }
  return out;
}

QuadNumber gram_entry(int m) {
  switch (m) {
    case 2:
      return QuadNumber(0);
    case 3:
      return QuadNumber(-1);
    case 4:
      return QuadNumber(0, -1);
    case 6:
      return QuadNumber(0, 0, -1);
    case kInfinity:
      return QuadNumber(-2);
    default:
      throw Error("unsupported ring: label " + std::to_string(m) +
                  " needs 2cos(pi/m) outside Q(√2,√3); only 2, 3, 4, 6 and inf are supported");
  }
}

namespace {

std::vector<QuadNumber> gram(const CoxeterMatrix& m) {
  const int n = m.rank();
  std::vector<QuadNumber> g(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i * n + j)] = i == j ? QuadNumber(2) : gram_entry(m(i, j));
  return g;
}

/// w -> w·σ_s, in place: column j loses G[s][j] times column s, then column s flips sign.
void right_multiply(QuadMatrix& w, const std::vector<QuadNumber>& g, int s) {
  const int n = w.size();
  for (int j = 0; j < n; ++j) {
    if (j == s) continue;
    const QuadNumber& c = g[static_cast<std::size_t>(s * n + j)];
    if (c.is_zero()) continue;
    for (int i = 0; i < n; ++i)
      if (!w(i, s).is_zero()) w(i, j) -= c * w(i, s);
  }
  for (int i = 0; i < n; ++i) w(i, s) = -w(i, s);
}

}  // namespace

std::vector<QuadMatrix> tits_generators(const CoxeterMatrix& m) {
  const auto g = gram(m);
  std::vector<QuadMatrix> out;
  for (int s = 0; s < m.rank(); ++s) {
    QuadMatrix r = QuadMatrix::identity(m.rank());
    right_multiply(r, g, s);
    out.push_back(std::move(r));
  }
  return out;
}

std::uint64_t GrowthSeries::total() const {
  std::uint64_t t = 0;
  for (auto c : coefficients) t += c;
  return t;
}

GrowthSeries enumerate_by_length(const CoxeterMatrix& m, int n, std::size_t element_limit) {
  if (n < 0) throw Error("truncation must be non-negative");
  const auto g = gram(m);
  GrowthSeries out;
  out.truncation = n;
  out.coefficients.push_back(1);

  std::vector<QuadMatrix> layer{QuadMatrix::identity(m.rank())};
  std::unordered_set<std::string> prev_keys;
  std::unordered_set<std::string> layer_keys{layer.front().key()};
  std::size_t seen = 1;

  for (int depth = 1; depth <= n; ++depth) {
    std::vector<QuadMatrix> next;
    std::unordered_set<std::string> next_keys;
    for (const auto& w : layer) {
      for (int s = 0; s < m.rank(); ++s) {
        QuadMatrix ws = w;
        right_multiply(ws, g, s);
        std::string k = ws.key();
        if (prev_keys.count(k) || layer_keys.count(k) || !next_keys.insert(std::move(k)).second) continue;
        next.push_back(std::move(ws));
        if (++seen > element_limit)
          throw Error("growth enumeration exceeded " + std::to_string(element_limit) + " elements at length " +
                      std::to_string(depth) + "; lower --N");
      }
    }
    if (next.empty()) {
      out.complete = true;
      return out;
    }
    out.coefficients.push_back(next.size());
    prev_keys = std::move(layer_keys);
    layer_keys = std::move(next_keys);
    layer = std::move(next);
  }

  // A single top element whose neighbours all lie one level down is the longest element.
  if (layer.size() == 1) {
    bool top = true;
    for (int s = 0; s < m.rank() && top; ++s) {
      QuadMatrix ws = layer.front();
      right_multiply(ws, g, s);
      top = prev_keys.count(ws.key()) > 0;
    }
    out.complete = top;
  }
  return out;
}

std::vector<int> exponents(const TypeTag& tag) {
  if (tag.kind != TypeKind::Finite) throw Error("exponents need a finite type, got " + tag.name());
  const int n = tag.index;
  std::vector<int> e;
  switch (tag.series) {
    case 'A':
      for (int i = 1; i <= n; ++i) e.push_back(i);
      break;
    case 'B':
    case 'C':
      for (int i = 1; i <= n; ++i) e.push_back(2 * i - 1);
      break;
    case 'D':
      for (int i = 1; i < n; ++i) e.push_back(2 * i - 1);
      e.push_back(n - 1);
      break;
    case 'E':
      if (n == 6) e = {1, 4, 5, 7, 8, 11};
      else if (n == 7) e = {1, 5, 7, 9, 11, 13, 17};
      else if (n == 8) e = {1, 7, 11, 13, 17, 19, 23, 29};
      break;
    case 'F':
      e = {1, 5, 7, 11};
      break;
    case 'G':
      e = {1, 5};
      break;
    case 'H':
      if (n == 3) e = {1, 5, 9};
      else if (n == 4) e = {1, 11, 19, 29};
      break;
    case 'I':
      e = {1, tag.dihedral_order - 1};
      break;
    default:
      break;
  }
  if (e.empty()) throw Error("no exponent table for " + tag.name());
  std::sort(e.begin(), e.end());
  return e;
}

GrowthSeries finite_growth_polynomial(const TypeTag& tag) {
  std::vector<std::uint64_t> poly{1};
  for (int mi : exponents(tag)) {
    std::vector<std::uint64_t> next(poly.size() + static_cast<std::size_t>(mi), 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (int j = 0; j <= mi; ++j) next[i + static_cast<std::size_t>(j)] += poly[i];
    poly = std::move(next);
  }
  GrowthSeries out;
  out.truncation = static_cast<int>(poly.size()) - 1;
  out.coefficients = std::move(poly);
  out.complete = true;
  return out;
}

CovolumeSums covolume_partial_sums(const GrowthSeries& g, int q, int n) {
  if (q < 2) throw Error("q must be at least 2");
  CovolumeSums out;
  out.complete = g.complete;
  Rational s = 0;
  Rational scale = 1;
  for (int k = 0; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    if (idx < g.coefficients.size()) s += Rational(g.coefficients[idx]) * scale;
    scale /= q;
    out.partial.push_back(s);
  }
  return out;
}

CovolumeSums covolume_partial_sums(const CoxeterMatrix& m, int q, int n) {
  if (q < 2) throw Error("q must be at least 2");
  return covolume_partial_sums(enumerate_by_length(m, n), q, n);
}

std::string decimal_string(const Rational& x, int digits) {
  using boost::multiprecision::mpz_int;
  mpz_int pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  const Rational scaled = abs(x) * pow10;
  mpz_int q = numerator(scaled) / denominator(scaled);
  const mpz_int r = numerator(scaled) % denominator(scaled);
  if (2 * r >= denominator(scaled)) ++q;
  std::string s = q.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  if (x.sign() < 0 && q != 0) s.insert(0, "-");
  return s;
}

KMReport km_report(const CoxeterMatrix& m, int q, int n) {
  if (!is_connected(m, m.all())) throw Error("KM report needs an irreducible system");
  if (q < 2) throw Error("q must be at least 2");
  KMReport r;
  r.rank = m.rank();
  r.q = q;
  r.sphericity = sphericity(m);
  r.type = classify_irreducible(m);
  const bool affine = r.type.kind == TypeKind::Affine;

  r.lattice = {q > r.rank, "q > |S|: covolume W(1/q) converges"};
  r.finitely_presented = {q >= 4 && r.sphericity >= 2, "q >= 4 and W 2-spherical"};
  r.simple = {!affine && r.lattice.ok, "W irreducible and non-affine, and q > |S|"};
  r.kazhdan = {r.sphericity >= 2, "W 2-spherical (property (T) for q large enough)"};

  const int len = std::min(n, 20);
  r.growth_prefix = enumerate_by_length(m, len);
  const auto sums = covolume_partial_sums(r.growth_prefix, q, len);
  r.covolume_partial = decimal_string(sums.partial.back());

  if (r.type.kind == TypeKind::Indefinite) {
    r.betti = betti_support(m);
    r.lattice_degrees = lattice_degrees(*r.betti);
  }
  return r;
}

}  // namespace coxl2
