#include "coxl2/cli.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"

#include "coxl2/classify.hpp"
#include "coxl2/cohomology.hpp"
#include "coxl2/davis.hpp"
#include "coxl2/growth.hpp"
#include "coxl2/l2.hpp"

namespace coxl2 {

OrderedJson RunReport::to_json() const {
  OrderedJson j;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["payload"] = payload;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string input_digest(const std::string& command, const std::string& canonical_input, const std::string& params) {
  return sha256_hex(std::string("coxl2/") + kVersion + '\n' + command + '\n' + canonical_input + '\n' + params);
}

std::string input_digest(const std::string& command, const CoxeterMatrix& m, const std::string& params) {
  return input_digest(command, coxl2::to_json(m), params);
}

std::string report_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    long long v = 0;
    const char* end = epoch + std::char_traits<char>::length(epoch);
    if (auto [p, ec] = std::from_chars(epoch, end, v); ec == std::errc{} && p == end) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path cache_directory(const std::optional<std::string>& out) {
  if (out) return *out;
  if (const char* env = std::getenv("COXL2_CACHE"); env && *env) return env;
  return ".coxl2-cache";
}

void write_atomic(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto tmp = dir / (name + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream f(tmp, std::ios::binary);
    f << text;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp, ec);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, dir / name, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move report into " + (dir / name).string());
  }
}

namespace {

OrderedJson names_json(const CoxeterMatrix& m, GenSet s) { return OrderedJson(m.names(s)); }

OrderedJson degree_map(const std::map<int, std::int64_t>& c) {
  OrderedJson j = OrderedJson::object();
  for (auto [k, v] : c)
    if (v != 0) j[std::to_string(k)] = v;
  return j;
}

std::string degree_list(const std::set<int>& s) {
  std::string out = "{";
  for (int k : s) out += (out.size() > 1 ? ", " : "") + std::to_string(k);
  return out + "}";
}

std::string degree_list(const std::vector<int>& v) { return degree_list(std::set<int>(v.begin(), v.end())); }

std::string fast_path_name(const FastPath& fp) {
  switch (fp.kind) {
    case FastPathKind::Contractible:
      return "contractible";
    case FastPathKind::Sphere:
      return "sphere(" + std::to_string(fp.sphere_dimension) + ")";
    case FastPathKind::Unknown:
      break;
  }
  return "unknown";
}

OrderedJson complex_json(const SimplicialComplex& x) {
  OrderedJson j;
  j["vertices"] = x.labels();
  j["facets"] = x.facets();
  j["dimension"] = x.dimension();
  return j;
}

OrderedJson complex_json(const CoxeterMatrix& m, const CubicalComplex& x) {
  OrderedJson cells = OrderedJson::array();
  for (const Cube& c : x.cells()) cells.push_back({m.label(c.lower), m.label(c.upper)});
  OrderedJson j;
  j["cells"] = std::move(cells);
  j["dimension"] = x.dimension();
  return j;
}

OrderedJson supports_json(const BettiSupport& b) {
  OrderedJson j;
  j["q_threshold"] = b.q_threshold;
  j["G_support"] = degree_map(b.totals());
  j["GxG_support"] = degree_map(kunneth_square(b));
  const auto lat = lattice_degrees(b);
  j["lattice_degrees"] = std::vector<int>(lat.begin(), lat.end());
  return j;
}

}  // namespace

OrderedJson classify_payload(const CoxeterMatrix& m) {
  OrderedJson comps = OrderedJson::array();
  const auto sets = component_sets(m, m.all());
  for (GenSet c : sets) {
    const TypeTag t = classify_component(m, c, true);
    OrderedJson e;
    e["generators"] = names_json(m, c);
    e["type"] = t.name();
    e["kind"] = kind_name(t.kind);
    if (t.kind == TypeKind::Indefinite) e["all_proper_parabolics_finite"] = t.all_proper_parabolics_finite;
    comps.push_back(std::move(e));
  }
  OrderedJson j;
  j["rank"] = m.rank();
  j["irreducible"] = sets.size() == 1;
  j["components"] = std::move(comps);
  return j;
}

OrderedJson betti_payload(const CoxeterMatrix& m) {
  const BettiSupport b = betti_support(m);
  OrderedJson detail = OrderedJson::array();
  for (const auto& [k, list] : b.coefficients)
    for (const auto& c : list) {
      OrderedJson e;
      e["J"] = names_json(m, c.j);
      e["degree"] = c.degree;
      e["dim"] = c.dim;
      detail.push_back(std::move(e));
    }
  OrderedJson j;
  j["rank"] = b.rank;
  j["q_threshold"] = b.q_threshold;
  j["G_support"] = degree_map(b.totals());
  j["sigma_detail"] = std::move(detail);
  j["GxG_support"] = degree_map(kunneth_square(b));
  const auto lat = lattice_degrees(b);
  j["lattice_degrees"] = std::vector<int>(lat.begin(), lat.end());
  return j;
}

OrderedJson km_payload(const CoxeterMatrix& m, int q, int n) {
  const KMReport r = km_report(m, q, n);
  auto flag = [](const KMFlag& f) {
    OrderedJson j;
    j["value"] = f.ok;
    j["criterion"] = f.criterion;
    return j;
  };
  OrderedJson j;
  j["rank"] = r.rank;
  j["q"] = r.q;
  j["type"] = r.type.name();
  j["sphericity"] = r.sphericity;
  j["flags"]["lattice_ok"] = flag(r.lattice);
  j["flags"]["finitely_presented_ok"] = flag(r.finitely_presented);
  j["flags"]["simple_ok"] = flag(r.simple);
  j["flags"]["kazhdan_ok"] = flag(r.kazhdan);
  j["growth_prefix"] = r.growth_prefix.coefficients;
  j["growth_complete"] = r.growth_prefix.complete;
  j["covolume_partial"] = r.covolume_partial;
  j["supports"] = r.betti ? supports_json(*r.betti) : OrderedJson::object();
  return j;
}

OrderedJson FamilyScan::payload() const {
  OrderedJson rows = OrderedJson::array();
  for (const auto& mem : members) {
    OrderedJson r;
    r["n"] = mem.n;
    r["digest"] = mem.digest;
    r["lattice_degrees"] = mem.lattice_degrees;
    rows.push_back(std::move(r));
  }
  OrderedJson pairs = OrderedJson::array();
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const std::set<int> da(members[a].lattice_degrees.begin(), members[a].lattice_degrees.end());
      const std::set<int> db(members[b].lattice_degrees.begin(), members[b].lattice_degrees.end());
      OrderedJson p;
      p["a"] = members[a].n;
      p["b"] = members[b].n;
      p["verdict"] = verdict_name(me_compare(da, db));
      pairs.push_back(std::move(p));
    }
  OrderedJson j;
  j["family"] = family_name(family);
  j["members"] = std::move(rows);
  j["pairs"] = std::move(pairs);
  return j;
}

FamilyScan scan_family(Family f, int lo, int hi, const std::filesystem::path& dir) {
  if (lo > hi) throw UsageError("empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  if (lo < family_minimum(f))
    throw Error(family_name(f) + " needs n >= " + std::to_string(family_minimum(f)));
  FamilyScan scan;
  scan.family = f;
  for (int n = lo; n <= hi; ++n) {
    const CoxeterMatrix m = builtin_family(f, n);
    ScanMember mem;
    mem.n = n;
    mem.digest = input_digest("betti", m, "");
    const auto path = dir / (mem.digest + ".json");
    if (std::ifstream in(path); in) {
      const auto cached = OrderedJson::parse(in, nullptr, false);
      if (!cached.is_discarded() && cached.value("version", "") == kVersion && cached.value("command", "") == "betti" &&
          cached.contains("payload") && cached["payload"].contains("lattice_degrees")) {
        mem.lattice_degrees = cached["payload"]["lattice_degrees"].get<std::vector<int>>();
        mem.cached = true;
        ++scan.cache_hits;
        scan.members.push_back(std::move(mem));
        continue;
      }
    }
    RunReport r;
    r.command = "betti";
    r.input_digest = mem.digest;
    r.timestamp = report_timestamp();
    r.payload = betti_payload(m);
    mem.lattice_degrees = r.payload["lattice_degrees"].get<std::vector<int>>();
    write_atomic(dir, mem.digest + ".json", r.to_json().dump(2) + "\n");
    ++scan.computed;
    scan.members.push_back(std::move(mem));
  }
  return scan;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto num = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) throw UsageError("invalid range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = num(text);
    return {v, v};
  }
  const int lo = num(std::string_view(text).substr(0, dots));
  const int hi = num(std::string_view(text).substr(dots + 2));
  if (lo > hi) throw UsageError("invalid range '" + text + "'");
  return {lo, hi};
}

namespace {

struct Args {
  std::vector<std::string> in;
  std::string family;
  std::vector<std::string> n;
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 1;
  int N = 10;
  int q = 0;
  std::string j;
  std::string model = "order";
  std::size_t samples = 1000;
  std::string ranks = "10..12";
  std::string sampler = "uniform";
};

struct System {
  std::string label;
  CoxeterMatrix m;
};

int to_int(const std::string& s, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw UsageError(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<System> load_systems(const Args& a, std::size_t count) {
  std::vector<System> out;
  if (!a.in.empty() && !a.family.empty()) throw UsageError("--in and --family are mutually exclusive");
  if (!a.in.empty()) {
    if (a.in.size() != count) throw UsageError("expected " + std::to_string(count) + " --in value(s)");
    for (const auto& p : a.in) out.push_back({std::filesystem::path(p).stem().string(), parse_system(read_file(p))});
    return out;
  }
  if (a.family.empty()) throw UsageError("an input is required: --in <path> or --family <name> --n <int>");
  if (a.n.size() != count) throw UsageError("expected " + std::to_string(count) + " --n value(s)");
  Family f;
  try {
    f = parse_family(a.family);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  for (const auto& s : a.n) {
    const int n = to_int(s, "--n");
    out.push_back({family_name(f) + "(" + s + ")", builtin_family(f, n)});
  }
  return out;
}

struct Outcome {
  std::string input;
  std::string params;
  OrderedJson payload;
  std::string text;
};

Outcome run_classify(const Args& a) {
  const auto sys = load_systems(a, 1).front();
  Outcome o{to_json(sys.m), "", classify_payload(sys.m), ""};
  for (const auto& c : o.payload["components"]) {
    const auto type = c["type"].get<std::string>();
    const auto kind = c["kind"].get<std::string>();
    o.text += type == kind ? type : type + " (" + kind + ")";
    if (c.contains("all_proper_parabolics_finite") && c["all_proper_parabolics_finite"].get<bool>())
      o.text += ", every proper parabolic finite";
    o.text += ": ";
    for (const auto& g : c["generators"]) o.text += g.get<std::string>() + " ";
    o.text.back() = '\n';
  }
  return o;
}

Outcome run_sphericity(const Args& a) {
  const auto sys = load_systems(a, 1).front();
  const int k = sphericity(sys.m);
  OrderedJson maxima = OrderedJson::array();
  for (GenSet s : maximal_finite_parabolics(sys.m)) maxima.push_back(names_json(sys.m, s));
  OrderedJson p;
  p["rank"] = sys.m.rank();
  p["sphericity"] = k;
  p["maximal_finite_parabolics"] = std::move(maxima);
  return {to_json(sys.m), "", std::move(p), std::to_string(k) + "\n"};
}

GenSet parse_subset(const CoxeterMatrix& m, const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    if (!tok.empty()) names.push_back(tok);
  }
  return m.subset(names);
}

Outcome run_davis(const Args& a, bool has_j) {
  const auto sys = load_systems(a, 1).front();
  const auto& m = sys.m;
  const CohomologyModel model = parse_model(a.model);
  OrderedJson p;
  p["model"] = model_name(model);
  CohomologyProfile h;
  std::string what = "Davis chamber";
  if (!has_j) {
    if (model == CohomologyModel::Nerve) throw UsageError("the nerve model describes D_J only; pass --J");
    p["J"] = nullptr;
    if (model == CohomologyModel::Cubical) {
      const auto x = davis_chamber_cubical(m);
      p.update(complex_json(m, x));
      h = reduced_cohomology(x);
    } else {
      const auto x = davis_chamber(m);
      p.update(complex_json(x));
      h = reduced_cohomology(x);
    }
  } else {
    const GenSet j = parse_subset(m, a.j);
    const FastPath fp = fast_path(m, j);
    what = "D_J for J = " + m.label(j);
    p["J"] = names_json(m, j);
    p["fast_path"] = fast_path_name(fp);
    switch (model) {
      case CohomologyModel::Nerve: {
        const auto x = d_sigma_nerve(m, j);
        p.update(complex_json(x));
        h = reduced_cohomology(x);
        break;
      }
      case CohomologyModel::Cubical: {
        const auto x = d_sigma_cubical(m, j);
        p.update(complex_json(m, x));
        h = reduced_cohomology(x);
        break;
      }
      case CohomologyModel::OrderComplex: {
        const auto x = d_sigma(m, j);
        p.update(complex_json(x));
        h = reduced_cohomology(x);
        break;
      }
    }
  }
  p["reduced_cohomology"] = degree_map(h.nonzero());
  std::string text = what + " (" + model_name(model) + " model), dimension " + std::to_string(p["dimension"].get<int>()) +
                     "\nreduced cohomology: " + h.to_string() + "\n";
  if (p.contains("fast_path")) text += "fast path: " + p["fast_path"].get<std::string>() + "\n";
  return {to_json(m), "J=" + (has_j ? m.label(parse_subset(m, a.j)) : std::string("-")) + ";model=" + model_name(model),
          std::move(p), std::move(text)};
}

Outcome run_betti(const Args& a, bool has_q) {
  const auto sys = load_systems(a, 1).front();
  OrderedJson p = betti_payload(sys.m);
  if (has_q) {
    if (a.q < 2) throw Error("q must be at least 2");
    p["q"] = a.q;
    p["q_above_threshold"] = static_cast<std::uint64_t>(a.q) > p["q_threshold"].get<std::uint64_t>();
  }
  std::string text = "G support (degree: coefficient): " + p["G_support"].dump() + "\n";
  for (const auto& d : p["sigma_detail"]) {
    std::string js;
    for (const auto& g : d["J"]) js += (js.empty() ? "" : ",") + g.get<std::string>();
    text += "  J = {" + js + "}: degree " + std::to_string(d["degree"].get<int>()) + ", dim " +
            std::to_string(d["dim"].get<std::int64_t>()) + "\n";
  }
  text += "GxG support: " + p["GxG_support"].dump() + "\n";
  text += "lattice degrees: " + degree_list(p["lattice_degrees"].get<std::vector<int>>()) + "\n";
  text += "valid for q > " + std::to_string(p["q_threshold"].get<std::uint64_t>()) + "\n";
  return {to_json(sys.m), has_q ? "q=" + std::to_string(a.q) : "", std::move(p), std::move(text)};
}

Outcome run_lattice_report(const Args& a, bool has_q, bool has_n) {
  if (!has_q) throw UsageError("lattice-report requires --q");
  const auto sys = load_systems(a, 1).front();
  const int n = has_n ? a.N : 4;
  OrderedJson p = km_payload(sys.m, a.q, n);
  std::string text = p["type"].get<std::string>() + ", rank " + std::to_string(p["rank"].get<int>()) + ", q = " +
                     std::to_string(a.q) + ", sphericity " + std::to_string(p["sphericity"].get<int>()) + "\n";
  for (const auto& [name, f] : p["flags"].items())
    text += "  " + name + ": " + (f["value"].get<bool>() ? "yes" : "no") + "  [" + f["criterion"].get<std::string>() +
            "]\n";
  text += "growth prefix: " + p["growth_prefix"].dump() + "\ncovolume partial sum: " +
          p["covolume_partial"].get<std::string>() + "\n";
  if (p["supports"].contains("lattice_degrees"))
    text += "lattice degrees: " + degree_list(p["supports"]["lattice_degrees"].get<std::vector<int>>()) + "\n";
  return {to_json(sys.m), "q=" + std::to_string(a.q) + ";N=" + std::to_string(n), std::move(p), std::move(text)};
}

Outcome run_growth(const Args& a, bool has_q) {
  const auto sys = load_systems(a, 1).front();
  if (a.N < 0) throw UsageError("--N must be non-negative");
  const GrowthSeries g = enumerate_by_length(sys.m, a.N);
  OrderedJson p;
  p["truncation"] = a.N;
  p["coefficients"] = g.coefficients;
  p["complete"] = g.complete;
  if (g.complete) p["order"] = g.total();
  std::string text = "growth: " + p["coefficients"].dump() + (g.complete ? " (complete, |W| = " + std::to_string(g.total()) + ")" : " (truncated)") + "\n";
  if (has_q) {
    const auto sums = covolume_partial_sums(g, a.q, a.N);
    OrderedJson exact = OrderedJson::array();
    for (const auto& s : sums.partial) exact.push_back(s.str());
    p["covolume"]["q"] = a.q;
    p["covolume"]["partial_sums"] = std::move(exact);
    p["covolume"]["decimal"] = decimal_string(sums.partial.back());
    text += "W(1/" + std::to_string(a.q) + ") partial sum to length " + std::to_string(a.N) + ": " +
            sums.partial.back().str() + " = " + decimal_string(sums.partial.back()) + "\n";
  }
  return {to_json(sys.m), "N=" + std::to_string(a.N) + (has_q ? ";q=" + std::to_string(a.q) : ""), std::move(p),
          std::move(text)};
}

Outcome run_compare(const Args& a) {
  const auto sys = load_systems(a, 2);
  OrderedJson p;
  std::set<int> deg[2];
  for (int i = 0; i < 2; ++i) {
    const auto b = betti_support(sys[static_cast<std::size_t>(i)].m);
    deg[i] = lattice_degrees(b);
    OrderedJson side;
    side["system"] = sys[static_cast<std::size_t>(i)].label;
    side["lattice_degrees"] = std::vector<int>(deg[i].begin(), deg[i].end());
    p[i == 0 ? "left" : "right"] = std::move(side);
  }
  const MeVerdict v = me_compare(deg[0], deg[1]);
  p["verdict"] = verdict_name(v);
  std::string text = sys[0].label + " " + degree_list(deg[0]) + " vs " + sys[1].label + " " + degree_list(deg[1]) +
                     ": " + verdict_name(v) + "\n";
  return {to_json(sys[0].m) + "\n" + to_json(sys[1].m), "labels=" + sys[0].label + "," + sys[1].label, std::move(p),
          std::move(text)};
}

Outcome run_scan(const Args& a, bool has_out, std::ostream& err) {
  if (!a.family.empty()) {
    if (a.n.size() != 1) throw UsageError("scan expects one --n range such as 3..8");
    Family f;
    try {
      f = parse_family(a.family);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const auto [lo, hi] = parse_range(a.n.front());
    const auto dir = cache_directory(has_out ? std::optional<std::string>(a.out) : std::nullopt);
    const FamilyScan scan = scan_family(f, lo, hi, dir);
    err << "scan: " << scan.computed << " computed, " << scan.cache_hits << " cache hits in " << dir.string() << "\n";
    OrderedJson p = scan.payload();
    std::string text = "n   lattice degrees\n";
    for (const auto& mem : scan.members) text += std::to_string(mem.n) + "   " + degree_list(mem.lattice_degrees) + "\n";
    for (const auto& pr : p["pairs"])
      text += "  " + std::to_string(pr["a"].get<int>()) + " vs " + std::to_string(pr["b"].get<int>()) + ": " +
              pr["verdict"].get<std::string>() + "\n";
    return {family_name(f), "n=" + std::to_string(lo) + ".." + std::to_string(hi), std::move(p), std::move(text)};
  }
  if (!a.in.empty() || !a.n.empty()) throw UsageError("scan takes --family <name> --n a..b, or --seed for random diagrams");
  const auto [lo, hi] = parse_range(a.ranks);
  ScanOptions opt;
  opt.min_rank = lo;
  opt.max_rank = hi;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.sampler = a.sampler == "sparse" ? ScanSampler::Sparse : ScanSampler::Uniform;
  const ScanResult r = sphericity_classification_scan(opt);
  OrderedJson p;
  p["sampler"] = a.sampler;
  p["seed"] = opt.seed;
  p["samples"] = r.samples;
  p["ranks"] = {lo, hi};
  p["nine_spherical"] = r.nine_spherical;
  p["finite"] = r.finite;
  p["affine"] = r.affine;
  OrderedJson ce = OrderedJson::array();
  for (const auto& m : r.counterexamples) ce.push_back(OrderedJson::parse(to_json(m)));
  p["counterexamples"] = std::move(ce);
  std::string text = std::to_string(r.samples) + " samples, " + std::to_string(r.nine_spherical) +
                     " at least 9-spherical (" + std::to_string(r.finite) + " finite, " + std::to_string(r.affine) +
                     " affine), " + std::to_string(r.counterexamples.size()) + " counterexamples\n";
  return {"random", "seed=" + std::to_string(opt.seed) + ";sampler=" + a.sampler + ";samples=" + std::to_string(opt.samples) + ";ranks=" +
                        std::to_string(lo) + ".." + std::to_string(hi),
          std::move(p), std::move(text)};
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coxeter systems, Davis chambers and L2-Betti degree supports", "coxl2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Args a;

  struct Sub {
    CLI::App* app;
    CLI::Option* q = nullptr;
    CLI::Option* N = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* j = nullptr;
  };
  auto add = [&](const char* name, const char* help, bool multi) {
    Sub s{app.add_subcommand(name, help)};
    auto* in = s.app->add_option("--in", a.in, "Coxeter diagram or matrix file (DSL or JSON)");
    auto* n = s.app->add_option("--n", a.n, "family parameter");
    if (!multi) {
      in->expected(1);
      n->expected(1);
    }
    s.app->add_option("--family", a.family, "built-in family: atilde2 or btilde8");
    s.app->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s.out = s.app->add_option("--out", a.out, "directory for JSON reports");
    return s;
  };

  Sub classify = add("classify", "classify every irreducible component", false);
  Sub spher = add("sphericity", "largest k with every k-subset spherical", false);
  Sub davis = add("davis", "Davis chamber or D_J with its reduced cohomology", false);
  davis.j = davis.app->add_option("--J", a.j, "spherical subset, comma separated");
  davis.app->add_option("--model", a.model, "order, nerve or cubical")
      ->check(CLI::IsMember({"order", "nerve", "cubical"}));
  Sub betti = add("betti", "L2-Betti degree support", false);
  betti.q = betti.app->add_option("--q", a.q, "thickness parameter");
  Sub lattice = add("lattice-report", "lattice criteria and supports for a given q", false);
  lattice.q = lattice.app->add_option("--q", a.q, "thickness parameter")->required();
  lattice.N = lattice.app->add_option("--N", a.N, "growth truncation (default 4)");
  Sub growth = add("growth", "growth series by word length", false);
  growth.N = growth.app->add_option("--N", a.N, "growth truncation")->capture_default_str();
  growth.q = growth.app->add_option("--q", a.q, "also report partial sums of W(1/q)");
  Sub compare = add("compare", "compare lattice degree supports of two systems", true);
  Sub scan = add("scan", "family scan with cache, or random classification scan", false);
  scan.app->add_option("--seed", a.seed, "seed for the random scan");
  scan.app->add_option("--samples", a.samples, "random diagrams to draw");
  scan.app->add_option("--ranks", a.ranks, "rank range for random diagrams, a..b");
  scan.app->add_option("--sampler", a.sampler, "uniform or sparse")->check(CLI::IsMember({"uniform", "sparse"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Outcome o;
    std::string command;
    CLI::App* chosen = app.get_subcommands().front();
    command = chosen->get_name();
    if (chosen == classify.app) o = run_classify(a);
    else if (chosen == spher.app) o = run_sphericity(a);
    else if (chosen == davis.app) o = run_davis(a, davis.j->count() > 0);
    else if (chosen == betti.app) o = run_betti(a, betti.q->count() > 0);
    else if (chosen == lattice.app) o = run_lattice_report(a, true, lattice.N->count() > 0);
    else if (chosen == growth.app) o = run_growth(a, growth.q->count() > 0);
    else if (chosen == compare.app) o = run_compare(a);
    else o = run_scan(a, scan.out->count() > 0, err);

    RunReport r;
    r.command = command;
    r.input_digest = input_digest(command, o.input, o.params);
    r.timestamp = report_timestamp();
    r.payload = std::move(o.payload);
    const std::string json = r.to_json().dump(2) + "\n";
    const bool out_is_cache = chosen == scan.app && !a.family.empty();
    if (!a.out.empty() && !out_is_cache) write_atomic(a.out, r.input_digest + ".json", json);
    if (a.format == "json") out << json;
    else out << o.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace coxl2
