// Runs every acceptance criterion and prints one [PASS]/[FAIL] line per criterion.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

#include "coxl2/classify.hpp"
#include "coxl2/cli.hpp"
#include "coxl2/cohomology.hpp"
#include "coxl2/davis.hpp"
#include "coxl2/growth.hpp"
#include "coxl2/l2.hpp"

using namespace coxl2;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

/// Euler bookkeeping for every complex built in this binary.
struct EulerLedger {
  std::size_t complexes = 0;
  std::size_t violations = 0;
} euler_ledger;

template <class Complex>
CohomologyProfile checked(const Complex& x) {
  const ChainComplex c = chain_complex(x);
  const CohomologyProfile p = reduced_betti(c);
  std::int64_t euler = 0;
  for (int d = 0; d <= c.top_dimension(); ++d)
    euler += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.cells[static_cast<std::size_t>(d + 1)]);
  ++euler_ledger.complexes;
  if (!euler_consistent(euler, p, x.empty())) ++euler_ledger.violations;
  return p;
}

/// Order complex within the facet budget, else the nerve and cubical models, which must agree.
struct DjResult {
  CohomologyProfile profile;
  bool order_complex = true;
  bool models_agree = true;
};

DjResult dj_cohomology(const CoxeterMatrix& m, GenSet j, std::size_t facet_limit = kDefaultFacetLimit) {
  try {
    return {checked(d_sigma(m, j, facet_limit)), true, true};
  } catch (const Error&) {
    const auto nerve = checked(d_sigma_nerve(m, j));
    const auto cube = checked(d_sigma_cubical(m, j));
    return {nerve, false, nerve == cube};
  }
}

GenSet names(const CoxeterMatrix& m, const std::vector<std::string>& v) { return m.subset(v); }

std::string set_text(const std::set<int>& s) {
  std::string out = "{";
  for (int k : s) out += (out.size() > 1 ? "," : "") + std::to_string(k);
  return out + "}";
}

const std::vector<CoxeterMatrix>& corpus() {
  static const std::vector<CoxeterMatrix> c = oracle::full_corpus(5);
  return c;
}

int criterion_1(Verdict& v) {
  std::size_t checked_sets = 0, fallbacks = 0;
  for (int n = 3; n <= 8; ++n) {
    const auto m = builtin_family(Family::ATilde2, n);
    std::vector<std::string> tail;
    for (int i = 3; i <= n; ++i) tail.push_back("s_" + std::to_string(i));
    const GenSet tail_set = names(m, tail);
    const GenSet s0 = names(m, {"s_0"});
    for (GenSet j : sigma_candidates(m)) {
      const auto r = dj_cohomology(m, j, 50'000);
      fallbacks += !r.order_complex;
      v.require(r.models_agree, "model disagreement");
      const std::string where = "atilde2(" + std::to_string(n) + ") J=" + m.label(j);
      if (j == s0 || j.empty()) {
        v.require(r.profile.is_sphere(n - 2), where + " expected one class in degree n-2, got " + r.profile.to_string());
      } else if (j == tail_set) {
        v.require(r.profile.is_sphere(1), where + " expected one class in degree 1, got " + r.profile.to_string());
      } else if (j.subset_of(tail_set)) {
        v.require(r.profile.acyclic(), where + " expected acyclic, got " + r.profile.to_string());
      } else {
        v.require(false, where + " is not in the table");
      }
      ++checked_sets;
    }
  }
  // The largest fallback complex, once as an order complex.
  const auto m8 = builtin_family(Family::ATilde2, 8);
  const auto big = checked(d_sigma(m8, GenSet{}));
  v.require(big.is_sphere(6), "atilde2(8) J={} order complex " + big.to_string());
  v.require(big == checked(d_sigma_cubical(m8, GenSet{})), "atilde2(8) J={} order complex differs from cubical");
  v.detail << checked_sets << " subsets over n=3..8, " << fallbacks
           << " above 50000 facets via nerve = cubical, atilde2(8) J={} also as order complex";
  return 60;
}

int criterion_2(Verdict& v) {
  for (int n = 3; n <= 8; ++n) {
    const auto b = betti_support(builtin_family(Family::ATilde2, n));
    const DegreeCoefficients expect = n == 3 ? DegreeCoefficients{{2, 3}} : DegreeCoefficients{{2, 1}, {n - 1, 2}};
    v.require(b.totals() == expect, "atilde2(" + std::to_string(n) + ") support");
    const auto lat = lattice_degrees(b);
    v.require(lat == std::set<int>{4, n + 1, 2 * n - 2}, "atilde2(" + std::to_string(n) + ") lattice " + set_text(lat));
  }
  v.detail << "n=3..8 supports and lattice degrees";
  return 0;
}

int criterion_3(Verdict& v) {
  for (int n = 9; n <= 12; ++n) {
    const auto m = builtin_family(Family::BTilde8, n);
    const std::string tag = "btilde8(" + std::to_string(n) + ")";
    v.require(sphericity(m) == 8, tag + " sphericity");
    v.require(oracle::brute_sphericity(m) == 8, tag + " brute sphericity");
    std::vector<std::string> e8{"t"};
    for (int i = 0; i <= 7; ++i) e8.push_back("p_" + std::to_string(i));
    const GenSet k = names(m, e8);
    v.require(oracle::gram_kind(m, k) == TypeKind::Affine, tag + " E8 nine-set is not affine");
    const GenSet j = m.all() - k;
    const auto r = dj_cohomology(m, j);
    v.require(r.models_agree, tag + " model disagreement");
    v.require(r.profile.is_sphere(7), tag + " D_tau = " + r.profile.to_string());
    const auto lat = lattice_degrees(m);
    v.require(lat == std::set<int>{16, n + 7, 2 * n - 2}, tag + " lattice " + set_text(lat));
    if (n == 12) v.detail << "n=12 D_tau " << r.profile.to_string() << (r.order_complex ? " (order complex)" : " (nerve = cubical)");
  }
  return 600;
}

int criterion_4(Verdict& v) {
  const auto dir = std::filesystem::temp_directory_path() / ("coxl2-acceptance-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const FamilyScan scan = scan_family(Family::ATilde2, 4, 8, dir);
  const auto p = scan.payload();
  std::set<std::vector<int>> distinct;
  for (const auto& mem : scan.members) distinct.insert(mem.lattice_degrees);
  v.require(distinct.size() == 5, "degree sets not pairwise distinct");
  v.require(p["pairs"].size() == 10, "expected 10 pairs");
  std::size_t dist = 0;
  for (const auto& pr : p["pairs"]) dist += pr["verdict"] == "distinguishable";
  v.require(dist == 10, "not all pairs distinguishable");
  const FamilyScan again = scan_family(Family::ATilde2, 4, 8, dir);
  v.require(again.computed == 0 && again.cache_hits == 5, "rerun was not served from the cache");
  v.require(again.payload() == p, "cached scan differs");
  std::filesystem::remove_all(dir);
  v.detail << dist << "/10 pairs distinguishable, rerun " << again.cache_hits << " cache hits";
  return 0;
}

int criterion_5(Verdict& v) {
  std::size_t candidates = 0, predicted = 0, mismatches = 0, fallbacks = 0;
  for (const auto& m : corpus())
    for (GenSet j : sigma_candidates(m)) {
      ++candidates;
      const FastPath fp = fast_path(m, j);
      if (fp.kind == FastPathKind::Unknown) continue;
      ++predicted;
      const auto r = dj_cohomology(m, j);
      fallbacks += !r.order_complex;
      v.require(r.models_agree, "model disagreement at " + to_diagram(m));
      const bool ok = fp.kind == FastPathKind::Contractible ? r.profile.acyclic() : r.profile.is_sphere(fp.sphere_dimension);
      if (!ok) {
        ++mismatches;
        v.require(false, "fast path mismatch at J=" + m.label(j));
      }
    }
  v.detail << corpus().size() << " systems, " << candidates << " candidates, " << predicted << " predicted, "
           << mismatches << " mismatches, " << fallbacks << " via nerve/cubical";
  return 0;
}

int criterion_6(Verdict& v) {
  std::size_t partitions = 0, violations = 0;
  for (const auto& m : corpus()) {
    const auto parts = find_sph_aff_partitions(m);
    if (parts.empty()) continue;
    const auto totals = betti_support(m).totals();
    for (const auto& p : parts) {
      ++partitions;
      const int k = p.affine.size() - 1;
      const auto it = totals.find(k);
      if (it == totals.end() || it->second <= 0) {
        ++violations;
        v.require(false, "no class in degree " + std::to_string(k) + " for " + to_diagram(m));
      }
    }
  }
  v.detail << partitions << " partitions, " << violations << " violations";
  return 0;
}

int criterion_7(Verdict& v) {
  const ScanResult uniform = sphericity_classification_scan({});
  v.require(uniform.samples == 1000, "expected 1000 samples");
  v.require(uniform.counterexamples.empty(), "uniform scan counterexample");
  ScanOptions opt;
  opt.sampler = ScanSampler::Sparse;
  const ScanResult sparse = sphericity_classification_scan(opt);
  v.require(sparse.counterexamples.empty(), "sparse scan counterexample");
  // Known 9-spherical diagrams of rank 10..12, plus the 8-spherical family as a negative control.
  std::size_t injected = 0;
  for (int r = 10; r <= 12; ++r) {
    std::string path = "nodes:";
    for (int i = 0; i < r; ++i) path += " v" + std::to_string(i);
    path += "\n";
    for (int i = 0; i + 1 < r; ++i) path += "edge: v" + std::to_string(i) + " v" + std::to_string(i + 1) + "\n";
    std::string affine = path + "edge: v" + std::to_string(r - 1) + " v0\n";
    for (const auto& text : {path, affine}) {
      const auto m = parse_diagram(text);
      v.require(sphericity(m) >= 9, "injected diagram is not 9-spherical");
      v.require(!violates_nine_spherical_dichotomy(m), "injected diagram violates the dichotomy");
      const TypeKind kind = oracle::gram_kind(m);
      v.require(kind == TypeKind::Finite || kind == TypeKind::Affine, "injected diagram is indefinite");
      ++injected;
    }
  }
  for (int n = 9; n <= 11; ++n) {
    const auto m = builtin_family(Family::BTilde8, n);
    v.require(sphericity(m) == 8 && oracle::gram_kind(m) == TypeKind::Indefinite, "control diagram");
  }
  v.detail << "uniform: " << uniform.nine_spherical << " of " << uniform.samples
           << " at least 9-spherical; sparse: " << sparse.nine_spherical << " (" << sparse.finite << " finite, "
           << sparse.affine << " affine); " << injected << " injected; 0 counterexamples required";
  return 300;
}

int criterion_8(Verdict& v) {
  std::size_t types = 0;
  for (const auto& m : oracle::irreducible_corpus(4)) {
    const TypeTag t = classify_irreducible(m);
    if (t.kind != TypeKind::Finite) continue;
    ++types;
    const auto bfs = enumerate_by_length(m, 100);
    v.require(bfs.complete, t.name() + " did not complete");
    v.require(bfs.coefficients == finite_growth_polynomial(t).coefficients, t.name() + " coefficients");
  }
  auto finite = [](const std::string& dsl) { return enumerate_by_length(parse_diagram(dsl), 100); };
  v.require(finite("nodes: a b c\nedge: a b\nedge: b c").total() == 24, "A3 total");
  v.require(finite("nodes: a b c\nedge: a b\nedge: b c 4").total() == 48, "B3 total");
  v.require(finite("nodes: a b\nedge: a b").coefficients == std::vector<std::uint64_t>{1, 2, 2, 1}, "A2 series");
  const auto sums = covolume_partial_sums(parse_diagram("nodes: a b\nedge: a b inf"), 2, 30);
  const double value = std::stod(decimal_string(sums.partial.back()));
  v.require(std::abs(value - 3.0) < 1e-6, "dihedral partial sum " + decimal_string(sums.partial.back()));
  v.detail << types << " finite types, dihedral W(1/2) to N=30: " << decimal_string(sums.partial.back());
  return 0;
}

int criterion_9(Verdict& v) {
  std::size_t chambers = 0, cubical = 0;
  for (const auto& m : corpus()) {
    try {
      v.require(checked(davis_chamber(m)).acyclic(), "chamber not acyclic: " + to_diagram(m));
    } catch (const Error&) {
      ++cubical;
    }
    v.require(checked(davis_chamber_cubical(m)).acyclic(), "cubical chamber not acyclic: " + to_diagram(m));
    ++chambers;
  }
  v.require(euler_ledger.violations == 0, std::to_string(euler_ledger.violations) + " Euler violations");

  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const std::vector<std::vector<std::string>> commands{
      {"classify", "--family", "btilde8", "--n", "10", "--format", "json"},
      {"sphericity", "--family", "btilde8", "--n", "12", "--format", "json"},
      {"davis", "--family", "atilde2", "--n", "5", "--J", "s_3,s_4,s_5", "--format", "json"},
      {"betti", "--family", "atilde2", "--n", "6", "--q", "100", "--format", "json"},
      {"lattice-report", "--family", "btilde8", "--n", "9", "--q", "11", "--format", "json"},
      {"growth", "--family", "atilde2", "--n", "4", "--N", "6", "--q", "3", "--format", "json"},
      {"compare", "--family", "btilde8", "--n", "9", "--n", "12", "--format", "json"},
      {"scan", "--seed", "7", "--samples", "50", "--sampler", "sparse", "--format", "json"}};
  std::size_t identical = 0;
  for (const auto& args : commands) {
    std::ostringstream a, b, err;
    const int ca = execute(args, a, err);
    const int cb = execute(args, b, err);
    v.require(ca == kExitOk && cb == kExitOk, args.front() + " failed: " + err.str());
    if (ca == kExitOk && a.str() == b.str()) ++identical;
  }
  ::unsetenv("SOURCE_DATE_EPOCH");
  v.require(identical == commands.size(), "reports differ between runs");
  v.detail << euler_ledger.complexes << " complexes Euler-checked, " << euler_ledger.violations << " violations; "
           << chambers << " chambers acyclic (" << cubical << " cubical only); " << identical << "/" << commands.size()
           << " reports byte-identical";
  return 0;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<int(Verdict&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "atilde2 D_J golden table", criterion_1},
      {2, "atilde2 betti supports and lattice degrees", criterion_2},
      {3, "btilde8 golden table", criterion_3},
      {4, "distinguishing matrix for atilde2(4..8)", criterion_4},
      {5, "fast-path soundness over the corpus", criterion_5},
      {6, "sphere/affine partition witnesses", criterion_6},
      {7, "9-spherical random scan", criterion_7},
      {8, "growth oracle", criterion_8},
      {9, "global invariants", criterion_9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    int budget = 0;
    try {
      budget = c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget > 0) v.require(seconds < budget, "runtime over " + std::to_string(budget) + " s");
    failures += !v.pass;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << v.detail.str() << " ("
              << std::fixed << std::setprecision(2) << seconds << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
