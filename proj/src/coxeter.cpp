#include "coxl2/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "json.hpp"

namespace coxl2 {

namespace {

using json = nlohmann::json;

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(std::string(what) + ": empty name");
    if (!seen.insert(n).second) throw Error(std::string(what) + ": duplicate name '" + n + "'");
  }
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::vector<int>> int_rows(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) throw Error(std::string("missing array '") + key + "'");
  std::vector<std::vector<int>> rows;
  for (const auto& row : doc[key]) {
    if (!row.is_array()) throw Error(std::string("'") + key + "' must be an array of arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(std::string("'") + key + "' entries must be integers");
      r.push_back(v.get<int>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> string_list(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) throw Error(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& v : doc[key]) {
    if (!v.is_string()) throw Error(std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json parse_json_object(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("JSON document must be an object");
  return doc;
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(std::vector<std::string> generators, const std::vector<std::vector<int>>& m)
    : names_(std::move(generators)) {
  const auto n = names_.size();
  if (n > static_cast<std::size_t>(kMaxRank)) throw Error("rank exceeds " + std::to_string(kMaxRank));
  check_unique(names_, "generators");
  if (m.size() != n) throw Error("matrix has " + std::to_string(m.size()) + " rows, expected " + std::to_string(n));
  entries_.resize(n * n);
  adjacency_.assign(n, GenSet{});
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error("matrix row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      const int v = m[i][j];
      if (i == j) {
        if (v != 1) throw Error("diagonal entry m[" + names_[i] + "][" + names_[i] + "] must be 1");
      } else {
        if (v < 0 || v == 1)
          throw Error("off-diagonal entry m[" + names_[i] + "][" + names_[j] + "] = " + std::to_string(v) +
                      " (must be >= 2, or 0 for infinity)");
        if (m[j][i] != v) throw Error("matrix is asymmetric at (" + names_[i] + ", " + names_[j] + ")");
        if (v != 2) adjacency_[i] = adjacency_[i].with(static_cast<int>(j));
      }
      entries_[i * n + j] = v;
    }
  }
}

int CoxeterMatrix::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("unknown generator '" + std::string(name) + "'");
  return static_cast<int>(it - names_.begin());
}

GenSet CoxeterMatrix::subset(std::span<const std::string> names) const {
  GenSet s;
  for (const auto& n : names) s = s.with(index_of(n));
  return s;
}

std::vector<std::string> CoxeterMatrix::names(GenSet s) const {
  std::vector<std::string> out;
  s.for_each([&](int i) { out.push_back(names_[static_cast<std::size_t>(i)]); });
  return out;
}

std::string CoxeterMatrix::label(GenSet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int i) {
    if (!first) out += ',';
    first = false;
    out += names_[static_cast<std::size_t>(i)];
  });
  return out + "}";
}

std::vector<std::vector<int>> CoxeterMatrix::rows() const {
  std::vector<std::vector<int>> out(names_.size(), std::vector<int>(names_.size()));
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
  return out;
}

GeneralizedCartanMatrix::GeneralizedCartanMatrix(std::vector<std::string> index, std::vector<std::vector<int>> a)
    : index_(std::move(index)), a_(std::move(a)) {
  const auto n = index_.size();
  check_unique(index_, "Cartan index");
  if (a_.size() != n) throw Error("Cartan matrix has wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (a_[i].size() != n) throw Error("Cartan matrix row " + std::to_string(i) + " has wrong length");
    if (a_[i][i] != 2) throw Error("Cartan diagonal entry must be 2 at " + index_[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a_[i][j] > 0) throw Error("Cartan off-diagonal entry must be <= 0 at (" + index_[i] + ", " + index_[j] + ")");
      if ((a_[i][j] == 0) != (a_[j][i] == 0))
        throw Error("Cartan zero pattern is not symmetric at (" + index_[i] + ", " + index_[j] + ")");
    }
}

CoxeterMatrix parse_diagram(std::string_view text) {
  std::vector<std::string> nodes;
  bool have_nodes = false;
  std::vector<std::vector<int>> m;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    std::string head = tokens.front();
    // Allow "nodes:a" as well as "nodes: a".
    std::string keyword;
    if (auto colon = head.find(':'); colon != std::string::npos) {
      keyword = head.substr(0, colon);
      std::string rest = head.substr(colon + 1);
      tokens.erase(tokens.begin());
      if (!rest.empty()) tokens.insert(tokens.begin(), rest);
    } else {
      throw Error(where + "expected 'nodes:' or 'edge:'");
    }
    if (keyword == "nodes") {
      if (have_nodes) throw Error(where + "'nodes:' given more than once");
      have_nodes = true;
      nodes = tokens;
      check_unique(nodes, "nodes");
      m.assign(nodes.size(), std::vector<int>(nodes.size(), 2));
      for (std::size_t i = 0; i < nodes.size(); ++i) m[i][i] = 1;
    } else if (keyword == "edge") {
      if (!have_nodes) throw Error(where + "'edge:' before 'nodes:'");
      if (tokens.size() < 2 || tokens.size() > 3) throw Error(where + "edge needs two nodes and an optional label");
      auto find = [&](const std::string& name) {
        auto it = std::find(nodes.begin(), nodes.end(), name);
        if (it == nodes.end()) throw Error(where + "edge references unknown node '" + name + "'");
        return static_cast<std::size_t>(it - nodes.begin());
      };
      const auto a = find(tokens[0]);
      const auto b = find(tokens[1]);
      if (a == b) throw Error(where + "edge from a node to itself");
      int label = 3;
      if (tokens.size() == 3) {
        if (tokens[2] == "inf") {
          label = kInfinity;
        } else {
          const auto& t = tokens[2];
          auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), label);
          if (ec != std::errc{} || ptr != t.data() + t.size()) throw Error(where + "bad edge label '" + t + "'");
          if (label < 3) throw Error(where + "edge label below 3 (m = 2 is the no-edge default)");
        }
      }
      if (m[a][b] != 2 && m[a][b] != label)
        throw Error(where + "conflicting labels for pair (" + nodes[a] + ", " + nodes[b] + ")");
      m[a][b] = m[b][a] = label;
    } else {
      throw Error(where + "unknown keyword '" + keyword + "'");
    }
  }
  if (!have_nodes) throw Error("diagram has no 'nodes:' line");
  return CoxeterMatrix(std::move(nodes), m);
}

CoxeterMatrix parse_matrix(std::string_view text) {
  const json doc = parse_json_object(text);
  return CoxeterMatrix(string_list(doc, "generators"), int_rows(doc, "m"));
}

GeneralizedCartanMatrix parse_cartan(std::string_view text) {
  const json doc = parse_json_object(text);
  return GeneralizedCartanMatrix(string_list(doc, "index"), int_rows(doc, "cartan"));
}

CoxeterMatrix parse_system(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    const json doc = parse_json_object(text);
    if (doc.contains("cartan")) return cartan_to_coxeter(parse_cartan(text));
    return parse_matrix(text);
  }
  return parse_diagram(text);
}

std::string to_json(const CoxeterMatrix& m) {
  json doc;
  doc["generators"] = m.generators();
  doc["m"] = m.rows();
  return doc.dump();
}

std::string to_diagram(const CoxeterMatrix& m) {
  std::ostringstream out;
  out << "nodes:";
  for (const auto& n : m.generators()) out << ' ' << n;
  out << '\n';
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j) {
      if (!m.is_edge(i, j)) continue;
      out << "edge: " << m.generators()[static_cast<std::size_t>(i)] << ' '
          << m.generators()[static_cast<std::size_t>(j)];
      if (m(i, j) == kInfinity)
        out << " inf";
      else if (m(i, j) != 3)
        out << ' ' << m(i, j);
      out << '\n';
    }
  return out.str();
}

CoxeterMatrix cartan_to_coxeter(const GeneralizedCartanMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const long long p = static_cast<long long>(a(i, j)) * a(j, i);
      int v = kInfinity;
      if (p == 0)
        v = 2;
      else if (p == 1)
        v = 3;
      else if (p == 2)
        v = 4;
      else if (p == 3)
        v = 6;
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  return CoxeterMatrix(a.index(), m);
}

CoxeterMatrix restrict(const CoxeterMatrix& m, GenSet j) {
  if (!j.subset_of(m.all())) throw Error("subset references generators outside the system");
  const auto idx = j.indices();
  std::vector<std::vector<int>> rows(idx.size(), std::vector<int>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) rows[a][b] = m(idx[a], idx[b]);
  return CoxeterMatrix(m.names(j), rows);
}

CoxeterMatrix restrict(const CoxeterMatrix& m, std::span<const std::string> names) {
  return restrict(m, m.subset(names));
}

std::vector<GenSet> component_sets(const CoxeterMatrix& m, GenSet within) {
  std::vector<GenSet> out;
  GenSet left = within;
  while (!left.empty()) {
    GenSet comp = GenSet::of({left.lowest()});
    GenSet frontier = comp;
    while (!frontier.empty()) {
      GenSet next;
      frontier.for_each([&](int i) { next = next | (m.neighbors(i) & within); });
      frontier = next - comp;
      comp = comp | next;
    }
    out.push_back(comp);
    left = left - comp;
  }
  return out;
}

bool is_connected(const CoxeterMatrix& m, GenSet within) {
  return !within.empty() && component_sets(m, within).size() == 1;
}

std::vector<std::pair<GenSet, CoxeterMatrix>> irreducible_components(const CoxeterMatrix& m) {
  std::vector<std::pair<GenSet, CoxeterMatrix>> out;
  for (GenSet c : component_sets(m, m.all())) out.emplace_back(c, restrict(m, c));
  return out;
}

Family parse_family(std::string_view name) {
  if (name == "atilde2") return Family::ATilde2;
  if (name == "btilde8") return Family::BTilde8;
  throw Error("unknown family '" + std::string(name) + "' (expected atilde2 or btilde8)");
}

std::string family_name(Family f) { return f == Family::ATilde2 ? "atilde2" : "btilde8"; }

int family_minimum(Family f) { return f == Family::ATilde2 ? 3 : 9; }

CoxeterMatrix builtin_family(Family f, int n) {
  if (n < family_minimum(f))
    throw Error(family_name(f) + " requires n >= " + std::to_string(family_minimum(f)) + ", got " +
                std::to_string(n));
  if (n + 1 > kMaxRank) throw Error("family rank exceeds " + std::to_string(kMaxRank));
  const auto size = static_cast<std::size_t>(n + 1);
  std::vector<std::vector<int>> m(size, std::vector<int>(size, 2));
  for (std::size_t i = 0; i < size; ++i) m[i][i] = 1;
  auto set = [&](int a, int b, int v) {
    m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
    m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = v;
  };
  std::vector<std::string> names;
  if (f == Family::ATilde2) {
    for (int i = 0; i <= n; ++i) names.push_back("s_" + std::to_string(i));
    // s_1..s_n form a cycle; s_0 hangs on the adjacent pair s_1, s_2.
    for (int i = 1; i <= n; ++i) set(i, i == n ? 1 : i + 1, 3);
    set(0, 1, 3);
    set(0, 2, 3);
  } else {
    for (int i = 0; i < n; ++i) names.push_back("p_" + std::to_string(i));
    names.emplace_back("t");
    for (int i = 0; i + 1 <= n - 2; ++i) set(i, i + 1, 3);
    set(n - 2, n - 1, 4);
    set(n, 2, 3);
  }
  return CoxeterMatrix(std::move(names), m);
}

}  // namespace coxl2
