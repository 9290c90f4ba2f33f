#include "floquet_ep/cli.hpp"

#include "specs.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numbers>
#include <regex>
#include <sstream>

namespace fep::cli {

namespace detail {

using nlohmann::ordered_json;

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"phase-diagram",
       "Heat map over the ((1-p)gamma_av/pJ_av, Omega/pJ_av) plane",
       {{"p", Kind::Real, 0.5, "Unitary fraction of the period, in (0, 1)"},
        {"j-av", Kind::Real, 1.0, "Average Rabi drive J_av > 0"},
        {"grid", Kind::Text, "400x400", "Cells as <gamma count>x<omega count>"},
        {"gamma-min", Kind::Real, 1e-2, "Lowest (1-p)gamma_av/pJ_av"},
        {"gamma-max", Kind::Real, 10.0, "Highest (1-p)gamma_av/pJ_av"},
        {"gamma-scale", Kind::Text, "log", "gamma axis spacing: linear|log"},
        {"omega-min", Kind::Real, 0.1, "Lowest Omega/pJ_av (> 0)"},
        {"omega-max", Kind::Real, 3.0, "Highest Omega/pJ_av"},
        {"omega-scale", Kind::Text, "linear", "omega axis spacing: linear|log"},
        {"quantity", Kind::Text, "inner-product",
         "Cell value: inner-product|discriminant|phase "
         "(phase: 0 symmetric, 1 EP, 2 broken)"},
        {"threads", Kind::Integer, 0,
         "Worker threads; 0 uses FLOQUET_EP_THREADS or all cores"}}},
      {"ep-contour",
       "Closed-form EP contours, resonance table or resonance slopes",
       {{"p", Kind::Real, 0.5, "Unitary fraction of the period, in (0, 1)"},
        {"j-av", Kind::Real, 1.0, "Average Rabi drive J_av > 0"},
        {"omega-min", Kind::Real, 0.1, "Lowest Omega/pJ_av (> 0)"},
        {"omega-max", Kind::Real, 3.0, "Highest Omega/pJ_av"},
        {"omega-scale", Kind::Text, "linear", "omega spacing: linear|log"},
        {"samples", Kind::Integer, 2000, "Number of Omega samples (>= 2)"},
        {"k-max", Kind::Integer, 5, "Highest resonance index (>= 1)"},
        {"table", Kind::Text, "contours",
         "Output table: contours|resonances|slopes"},
        {"slope-step", Kind::Real, 0.01,
         "|Omega - Omega_k|/pJ_av used for the secant slopes"}}},
      {"floquet-ham",
       "Floquet Hamiltonian, spectrum and DP proximity at one point",
       {{"p", Kind::Real, 0.5, "Unitary fraction of the period, in (0, 1)"},
        {"j-av", Kind::Real, 1.0, "Average Rabi drive J_av > 0"},
        {"gamma", Kind::Real, 0.5,
         "(1-p)gamma_av/pJ_av; ignored when --branch is plus or minus"},
        {"omega", Kind::Real, 3.5, "Omega/pJ_av (> 0)"},
        {"branch", Kind::Text, "none",
         "none|plus|minus: put gamma on that EP contour and use the "
         "closed form"}}},
      {"bloch-traj",
       "Post-selected Bloch trajectory with micromotion samples",
       {{"p", Kind::Real, 0.5, "Unitary fraction of the period, in (0, 1)"},
        {"j-av", Kind::Real, 1.0, "Average Rabi drive J_av > 0"},
        {"gamma", Kind::Real, 1.0, "(1-p)gamma_av/pJ_av"},
        {"omega", Kind::Real, 2.5 * std::numbers::pi, "Omega/pJ_av (> 0)"},
        {"periods", Kind::Integer, 20, "Number of drive periods (>= 0)"},
        {"substeps", Kind::Integer, 64, "Samples per segment (>= 1)"},
        {"init", Kind::Text, "fig2",
         "Initial state: fig2|plus-x|plus-y|minus-y|plus-z|minus-z"}}},
      {"two-qubit",
       "Concurrence and single-qubit entropies of the coupled pair",
       {{"j", Kind::Real, 1.0, "Rabi drive J >= 0 of the unitary qubit"},
        {"gamma", Kind::RealList, ordered_json::array({2.0}),
         "Gain-loss rate(s) gamma >= 0 of the thermal qubit"},
        {"kx", Kind::RealList, ordered_json::array({2.0}),
         "Coupling strength(s) k_x >= 0"},
        {"init", Kind::Text, "00", "Initial state: 00|bell|mixed|fig3f"},
        {"t-max", Kind::Real, 20.0, "Final time t >= 0"},
        {"steps", Kind::Integer, 400,
         "Time steps; samples are t = i t_max / steps, i = 0..steps"}}},
  };
  return specs;
}

const CommandSpec& command_spec(const std::string& name) {
  for (const auto& c : command_specs()) {
    if (c.name == name) return c;
  }
  throw UsageError("command: unknown command '" + name + "'");
}

ordered_json default_parameters(const std::string& command) {
  ordered_json out = ordered_json::object();
  for (const auto& p : command_spec(command).params) out[p.name] = p.fallback;
  return out;
}

}  // namespace detail

using detail::Kind;
using nlohmann::ordered_json;

const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

ordered_json RunConfig::echo() const {
  ordered_json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["output"] = output_path;
  j["format"] = to_string(format);
  j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  return j;
}

namespace {

[[noreturn]] void usage(const std::string& key, const std::string& what) {
  throw UsageError(key + ": " + what);
}

std::string show(const ordered_json& v) { return v.dump(); }

double real(const ordered_json& params, const std::string& key) {
  const auto& v = params.at(key);
  if (!v.is_number()) usage(key, "expected a number, got " + show(v));
  const double x = v.get<double>();
  if (!std::isfinite(x)) usage(key, "must be finite");
  return x;
}

long long integer(const ordered_json& params, const std::string& key) {
  const auto& v = params.at(key);
  if (!v.is_number_integer()) usage(key, "expected an integer, got " + show(v));
  return v.get<long long>();
}

std::string text(const ordered_json& params, const std::string& key) {
  const auto& v = params.at(key);
  if (!v.is_string()) usage(key, "expected a string, got " + show(v));
  return v.get<std::string>();
}

void one_of(const ordered_json& params, const std::string& key,
            std::initializer_list<const char*> choices) {
  const std::string v = text(params, key);
  for (const char* c : choices) {
    if (v == c) return;
  }
  std::string list;
  for (const char* c : choices) list += (list.empty() ? "" : "|") + std::string(c);
  usage(key, "must be one of " + list + ", got '" + v + "'");
}

void positive(const ordered_json& params, const std::string& key) {
  if (!(real(params, key) > 0.0)) usage(key, "must be > 0");
}

void unit_interval_open(const ordered_json& params, const std::string& key) {
  const double v = real(params, key);
  if (!(v > 0.0 && v < 1.0)) {
    usage(key, "must lie in (0, 1), got " + format_double(v));
  }
}

void at_least(const ordered_json& params, const std::string& key,
              long long lo) {
  if (integer(params, key) < lo) usage(key, "must be >= " + std::to_string(lo));
}

void range(const ordered_json& params, const std::string& lo,
           const std::string& hi) {
  if (!(real(params, lo) < real(params, hi))) {
    usage(lo, "must be smaller than " + hi);
  }
}

void log_ok(const ordered_json& params, const std::string& scale,
            const std::string& lo) {
  one_of(params, scale, {"linear", "log"});
  if (text(params, scale) == "log" && !(real(params, lo) > 0.0)) {
    usage(lo, "must be > 0 on a log axis");
  }
}

void non_negative_list(const ordered_json& params, const std::string& key) {
  const auto& v = params.at(key);
  if (!v.is_array() || v.empty()) usage(key, "expected a non-empty list");
  for (const auto& x : v) {
    if (!x.is_number() || !(x.get<double>() >= 0.0) ||
        !std::isfinite(x.get<double>())) {
      usage(key, "entries must be finite and >= 0, got " + show(x));
    }
  }
}

}  // namespace

void validate_config(const RunConfig& config) {
  const auto& spec = detail::command_spec(config.command);
  const ordered_json& p = config.parameters;
  if (!p.is_object()) usage("parameters", "expected a key-value object");
  for (const auto& [key, value] : p.items()) {
    const bool known = std::any_of(spec.params.begin(), spec.params.end(),
                                   [&](const auto& s) { return s.name == key; });
    if (!known) usage(key, "unknown key for " + config.command);
  }
  for (const auto& s : spec.params) {
    if (!p.contains(s.name)) usage(s.name, "missing required key");
  }

  const std::string& c = config.command;
  if (c == "phase-diagram") {
    unit_interval_open(p, "p");
    positive(p, "j-av");
    static const std::regex grid_re(R"((\d+)x(\d+))");
    std::smatch m;
    const std::string grid = text(p, "grid");
    if (!std::regex_match(grid, m, grid_re) || std::stol(m[1]) < 2 ||
        std::stol(m[2]) < 2) {
      usage("grid", "expected <n>x<m> with n, m >= 2, got '" + grid + "'");
    }
    range(p, "gamma-min", "gamma-max");
    log_ok(p, "gamma-scale", "gamma-min");
    positive(p, "omega-min");
    range(p, "omega-min", "omega-max");
    log_ok(p, "omega-scale", "omega-min");
    one_of(p, "quantity", {"inner-product", "discriminant", "phase"});
    at_least(p, "threads", 0);
  } else if (c == "ep-contour") {
    unit_interval_open(p, "p");
    positive(p, "j-av");
    positive(p, "omega-min");
    range(p, "omega-min", "omega-max");
    log_ok(p, "omega-scale", "omega-min");
    at_least(p, "samples", 2);
    at_least(p, "k-max", 1);
    one_of(p, "table", {"contours", "resonances", "slopes"});
    positive(p, "slope-step");
  } else if (c == "floquet-ham") {
    unit_interval_open(p, "p");
    positive(p, "j-av");
    real(p, "gamma");
    positive(p, "omega");
    one_of(p, "branch", {"none", "plus", "minus"});
  } else if (c == "bloch-traj") {
    unit_interval_open(p, "p");
    positive(p, "j-av");
    real(p, "gamma");
    positive(p, "omega");
    at_least(p, "periods", 0);
    at_least(p, "substeps", 1);
    one_of(p, "init",
           {"fig2", "plus-x", "plus-y", "minus-y", "plus-z", "minus-z"});
  } else if (c == "two-qubit") {
    if (!(real(p, "j") >= 0.0)) usage("j", "must be >= 0");
    non_negative_list(p, "gamma");
    non_negative_list(p, "kx");
    one_of(p, "init", {"00", "bell", "mixed", "fig3f"});
    if (!(real(p, "t-max") >= 0.0)) usage("t-max", "must be >= 0");
    at_least(p, "steps", 1);
  }
}

namespace {

struct Slot {
  double real = 0.0;
  long long integer = 0;
  std::string text;
  std::vector<double> list;
};

struct CommonFlags {
  std::string output;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonFlags& common) {
  sub->add_option("-o,--output", common.output,
                  "Output file; standard output when omitted");
  sub->add_option("--format", common.format, "Output format: csv|json")
      ->capture_default_str();
  sub->add_option("--seed", common.seed,
                  "Seed echoed into the output for randomized checks");
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  usage("format", "must be csv or json, got '" + f + "'");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Floquet exceptional-point simulations", "floquet-ep"};
  app.set_config("--config", "", "INI file with one [section] per command");
  app.require_subcommand(1);

  CommonFlags common;
  std::list<Slot> slots;
  std::vector<std::pair<CLI::App*, std::vector<Slot*>>> registered;

  for (const auto& spec : detail::command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    std::vector<Slot*> mine;
    for (const auto& ps : spec.params) {
      Slot& s = slots.emplace_back();
      mine.push_back(&s);
      const std::string flag = "--" + ps.name;
      CLI::Option* opt = nullptr;
      switch (ps.kind) {
        case Kind::Real:
          s.real = ps.fallback.get<double>();
          opt = sub->add_option(flag, s.real, ps.help);
          break;
        case Kind::Integer:
          s.integer = ps.fallback.get<long long>();
          opt = sub->add_option(flag, s.integer, ps.help);
          break;
        case Kind::Text:
          s.text = ps.fallback.get<std::string>();
          opt = sub->add_option(flag, s.text, ps.help);
          break;
        case Kind::RealList:
          s.list = ps.fallback.get<std::vector<double>>();
          opt = sub->add_option(flag, s.list, ps.help)->delimiter(',');
          break;
      }
      opt->capture_default_str();
    }
    add_common(sub, common);
    registered.emplace_back(sub, std::move(mine));
  }

  std::string preset_name;
  CLI::App* preset = app.add_subcommand(
      "preset", "Run the configuration behind a figure panel");
  preset->add_option("name", preset_name, "fig1b|fig1c|fig2a|fig2b|fig3c|fig3d|fig3e|fig3f")
      ->required();
  add_common(preset, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    if (code == 0) throw HelpRequested(out.str());
    throw UsageError(e.what());
  }

  RunConfig config;
  if (preset->parsed()) {
    config = figure_preset(preset_name);
  } else {
    for (const auto& [sub, mine] : registered) {
      if (!sub->parsed()) continue;
      const auto& spec = detail::command_spec(sub->get_name());
      config.command = spec.name;
      for (std::size_t i = 0; i < spec.params.size(); ++i) {
        const Slot& s = *mine[i];
        ordered_json v;
        switch (spec.params[i].kind) {
          case Kind::Real: v = s.real; break;
          case Kind::Integer: v = s.integer; break;
          case Kind::Text: v = s.text; break;
          case Kind::RealList: v = s.list; break;
        }
        config.parameters[spec.params[i].name] = v;
      }
    }
  }
  config.output_path = common.output;
  config.format = parse_format(common.format);
  config.seed = common.seed;
  validate_config(config);
  return config;
}

}  // namespace fep::cli
