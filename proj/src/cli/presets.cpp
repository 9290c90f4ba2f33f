#include "floquet_ep/cli.hpp"

#include "specs.hpp"

#include <numbers>

namespace fep::cli {

using nlohmann::ordered_json;

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig1b", "fig1c", "fig2a", "fig2b", "fig3c", "fig3d", "fig3e", "fig3f"};
  return names;
}

namespace {

RunConfig base(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.parameters = detail::default_parameters(command);
  return c;
}

RunConfig bloch(double gamma) {
  RunConfig c = base("bloch-traj");
  c.parameters["p"] = 0.5;
  c.parameters["j-av"] = 1.0;
  c.parameters["gamma"] = gamma;
  c.parameters["omega"] = 2.5 * std::numbers::pi;
  c.parameters["periods"] = 20;
  c.parameters["substeps"] = 64;
  c.parameters["init"] = "fig2";
  return c;
}

RunConfig pair(const std::string& init, ordered_json gamma, ordered_json kx,
               double t_max, int steps) {
  RunConfig c = base("two-qubit");
  c.parameters["j"] = 1.0;
  c.parameters["gamma"] = std::move(gamma);
  c.parameters["kx"] = std::move(kx);
  c.parameters["init"] = init;
  c.parameters["t-max"] = t_max;
  c.parameters["steps"] = steps;
  return c;
}

}  // namespace

RunConfig figure_preset(const std::string& name) {
  RunConfig c;
  if (name == "fig1b") {
    c = base("phase-diagram");
    c.parameters["grid"] = "400x400";
    c.parameters["gamma-min"] = 1e-2;
    c.parameters["gamma-max"] = 10.0;
    c.parameters["gamma-scale"] = "log";
    c.parameters["omega-min"] = 0.1;
    c.parameters["omega-max"] = 3.0;
    c.parameters["omega-scale"] = "linear";
    c.parameters["quantity"] = "inner-product";
  } else if (name == "fig1c") {
    // Five resonances Omega_k/pJ_av = 2/k, k = 1..5, on a log axis.
    c = base("ep-contour");
    c.parameters["omega-min"] = 0.3;
    c.parameters["omega-max"] = 3.0;
    c.parameters["omega-scale"] = "log";
    c.parameters["samples"] = 4000;
    c.parameters["k-max"] = 5;
    c.parameters["table"] = "contours";
  } else if (name == "fig2a") {
    c = bloch(1.0);
  } else if (name == "fig2b") {
    c = bloch(1.25);
  } else if (name == "fig3c") {
    c = pair("00", {1.5, 2.0, 2.5}, {2.0}, 10.0, 1000);
  } else if (name == "fig3d") {
    c = pair("bell", {1.5, 2.0, 2.5}, {2.0}, 10.0, 1000);
  } else if (name == "fig3e") {
    c = pair("mixed", {1.5}, {0.0, 1.5, 1.6}, 40.0, 2000);
  } else if (name == "fig3f") {
    c = pair("fig3f", {1.5}, {0.0, 1.5, 1.6}, 40.0, 2000);
  } else {
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : "|") + n;
    throw UsageError("name: unknown preset '" + name + "', expected " + list);
  }
  validate_config(c);
  return c;
}

}  // namespace fep::cli
