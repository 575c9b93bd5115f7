#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coxl2/coxeter.hpp"

namespace coxl2 {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kVersion = COXL2_VERSION;

/// Exit codes of execute().
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Malformed command line; execute() maps it to kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunReport {
  std::string command;
  std::string input_digest;
  std::string version = kVersion;
  std::string timestamp;
  OrderedJson payload;

  OrderedJson to_json() const;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Version-salted digest of (command, canonical input text, canonical parameter text).
std::string input_digest(const std::string& command, const std::string& canonical_input, const std::string& params);
std::string input_digest(const std::string& command, const CoxeterMatrix& m, const std::string& params);

/// ISO-8601 UTC; SOURCE_DATE_EPOCH pins it when set.
std::string report_timestamp();

/// --out if given, else $COXL2_CACHE, else ".coxl2-cache".
std::filesystem::path cache_directory(const std::optional<std::string>& out);

/// Writes `text` to dir/name through a temporary file and an atomic rename.
void write_atomic(const std::filesystem::path& dir, const std::string& name, const std::string& text);

/// Payload builders behind the commands; each is deterministic in its inputs.
OrderedJson classify_payload(const CoxeterMatrix& m);
OrderedJson betti_payload(const CoxeterMatrix& m);
OrderedJson km_payload(const CoxeterMatrix& m, int q, int n);

struct ScanMember {
  int n = 0;
  std::string digest;
  std::vector<int> lattice_degrees;
  bool cached = false;
};

struct FamilyScan {
  Family family = Family::ATilde2;
  std::vector<ScanMember> members;
  std::size_t computed = 0;
  std::size_t cache_hits = 0;

  /// Deterministic summary: excludes cache statistics.
  OrderedJson payload() const;
};

/// One betti RunReport per n in [lo, hi], stored in `dir` as <digest>.json.
/// Members whose file already holds a report of this version are not recomputed.
FamilyScan scan_family(Family f, int lo, int hi, const std::filesystem::path& dir);

/// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& text);

/// Runs one command line (without the program name). Never throws.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxl2
