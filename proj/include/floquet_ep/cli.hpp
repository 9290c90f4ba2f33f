#pragma once

// Command-line front end: configuration parsing, figure presets, command
// execution and CSV/JSON serialization.

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fep::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag, missing key or out-of-range value. The message starts with the
/// offending key.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

const char* to_string(Format f);

struct RunConfig {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::string output_path;  // empty: standard output
  Format format = Format::Csv;
  std::optional<std::uint64_t> seed;

  nlohmann::ordered_json echo() const;
};

struct Column {
  std::string name;
  std::string unit;
  std::vector<double> values;
};

struct Provenance {
  std::string build_id;
  std::string timestamp;  // UTC, ISO 8601
};

struct ResultEnvelope {
  int schema_version = kSchemaVersion;
  RunConfig config;
  std::vector<Column> columns;
  Provenance provenance;

  /// Throws std::logic_error if column lengths differ.
  void validate() const;
};

Provenance current_provenance();

/// Parses a command line (program name excluded). A --config INI file
/// supplies defaults, one [section] per subcommand, and flags override it.
/// Throws UsageError or HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);

/// Checks the parameters of a config against the command's schema and
/// ranges. Throws UsageError naming the key.
void validate_config(const RunConfig& config);

/// Names: fig1b, fig1c, fig2a, fig2b, fig3c, fig3d, fig3e, fig3f.
/// Throws UsageError for anything else.
RunConfig figure_preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// Runs the configured command. Throws UsageError for invalid configs and
/// other exceptions for runtime failures.
ResultEnvelope execute(const RunConfig& config);

/// 17 significant digits, locale-independent, exact round trip.
std::string format_double(double v);

std::string to_csv(const ResultEnvelope& env);
nlohmann::ordered_json to_json(const ResultEnvelope& env);
/// Envelope without column data, written next to CSV files.
nlohmann::ordered_json metadata_json(const ResultEnvelope& env);

/// Writes to env.config.output_path, or to `out` when the path is empty.
/// A CSV file gets a `<path>.meta.json` sidecar with the config echo and
/// provenance. Throws std::runtime_error when the path is not writable.
void write_result(const ResultEnvelope& env, std::ostream& out);

/// Inverse of to_csv for the column payload. Throws std::invalid_argument on
/// malformed input.
std::vector<Column> parse_csv(const std::string& text);

/// Entry point shared by the executable and the tests. Returns the exit
/// status: 0 success, 1 runtime or I/O failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fep::cli
