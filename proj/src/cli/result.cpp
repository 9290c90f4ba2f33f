#include "floquet_ep/cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#ifndef FLOQUET_EP_BUILD_ID
#define FLOQUET_EP_BUILD_ID "unknown"
#endif

namespace fep::cli {

using nlohmann::ordered_json;

void ResultEnvelope::validate() const {
  for (const auto& c : columns) {
    if (c.values.size() != columns.front().values.size()) {
      throw std::logic_error("result columns have unequal lengths");
    }
  }
}

Provenance current_provenance() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {FLOQUET_EP_BUILD_ID, buf};
}

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const ResultEnvelope& env) {
  env.validate();
  std::string out;
  for (std::size_t i = 0; i < env.columns.size(); ++i) {
    if (i) out += ',';
    out += env.columns[i].name + " [" + env.columns[i].unit + "]";
  }
  out += '\n';
  const std::size_t rows =
      env.columns.empty() ? 0 : env.columns.front().values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < env.columns.size(); ++i) {
      if (i) out += ',';
      out += format_double(env.columns[i].values[r]);
    }
    out += '\n';
  }
  return out;
}

namespace {

ordered_json provenance_json(const Provenance& p) {
  return {{"build_id", p.build_id}, {"timestamp", p.timestamp}};
}

}  // namespace

ordered_json metadata_json(const ResultEnvelope& env) {
  ordered_json j;
  j["schema_version"] = env.schema_version;
  j["config"] = env.config.echo();
  j["provenance"] = provenance_json(env.provenance);
  ordered_json cols = ordered_json::array();
  for (const auto& c : env.columns) {
    cols.push_back({{"name", c.name}, {"unit", c.unit}});
  }
  j["columns"] = cols;
  return j;
}

ordered_json to_json(const ResultEnvelope& env) {
  env.validate();
  ordered_json j = metadata_json(env);
  for (std::size_t i = 0; i < env.columns.size(); ++i) {
    j["columns"][i]["values"] = env.columns[i].values;
  }
  return j;
}

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("output: cannot open '" + path + "'");
  f << body;
  f.flush();
  if (!f) throw std::runtime_error("output: failed writing '" + path + "'");
}

}  // namespace

void write_result(const ResultEnvelope& env, std::ostream& out) {
  const bool csv = env.config.format == Format::Csv;
  const std::string body = csv ? to_csv(env) : to_json(env).dump(2) + "\n";
  const std::string& path = env.config.output_path;
  if (path.empty()) {
    out << body;
    return;
  }
  write_file(path, body);
  if (csv) write_file(path + ".meta.json", metadata_json(env).dump(2) + "\n");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<Column> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header");
  std::vector<Column> cols;
  for (const auto& field : split(line)) {
    const std::size_t open = field.rfind(" [");
    if (open == std::string::npos || field.empty() || field.back() != ']') {
      throw std::invalid_argument("csv: header field '" + field +
                                  "' lacks a [unit]");
    }
    cols.push_back({field.substr(0, open),
                    field.substr(open + 2, field.size() - open - 3), {}});
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const auto fields = split(line);
    if (fields.size() != cols.size()) {
      throw std::invalid_argument("csv: row " + std::to_string(row) +
                                  " has the wrong number of fields");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw std::invalid_argument("csv: bad number '" + f + "' in row " +
                                    std::to_string(row));
      }
      cols[i].values.push_back(v);
    }
  }
  return cols;
}

}  // namespace fep::cli
