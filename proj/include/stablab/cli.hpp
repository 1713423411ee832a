#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stablab/winding.hpp"
#include "stablab/zoo.hpp"

namespace stablab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kMathFailure = 2, kPartialSweep = 3 };

/// `key = value` lines with optional `[section]` headers; keys inside a
/// section are stored as "section.key". `#` starts a comment.
std::map<std::string, std::string> parse_config(std::string_view text);

enum class Format { csv, json };

struct SweepConfig {
  std::string family;
  int from = 3;
  int to = 3;
  int step = 1;
  FamilyParams fixed;  ///< n is overwritten per row
  bool spectral = true;
  bool sampled = true;
  std::string output;  ///< empty: standard output
  Format format = Format::csv;
  unsigned parallelism = 1;
  bool timing = false;
  SamplingOptions sampling;

  /// Throws DomainError on an empty range, unknown family, bad parallelism,
  /// or a dimension above the cap.
  void validate() const;
};

/// Applies config-file values (top level or a [sweep] section) to `cfg`.
void apply_config(SweepConfig& cfg, const std::map<std::string, std::string>& values);

struct SweepRow {
  int n = 0;
  std::size_t dim = 0;
  std::string relator;
  std::optional<double> defect;
  std::optional<int> wind_spectral;
  std::optional<int> wind_sampled;
  std::optional<std::string> verdict;
  std::optional<long> radius_den;
  std::optional<double> gap;
  std::optional<double> alt_defect;
  std::optional<double> wall_ms;
  std::string error;
};

/// One row per parameter value, in ascending order regardless of parallelism.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string render_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);
std::string render_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

/// Writes JSON with every floating-point number at 17 significant digits.
/// indent < 0 gives a single line.
std::string dump_json(const nlohmann::ordered_json& j, int indent = -1);

/// Formats a double at 17 significant digits.
std::string format_double(double x);

nlohmann::ordered_json to_json(const ObstructionReport& r);
nlohmann::ordered_json to_json(const WindingResult& r);

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stablab::cli
