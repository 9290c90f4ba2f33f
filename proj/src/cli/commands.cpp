#include "floquet_ep/cli.hpp"

#include "floquet_ep/bloch.hpp"
#include "floquet_ep/floquet_qubit.hpp"
#include "floquet_ep/sweep.hpp"
#include "floquet_ep/two_qubit.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace fep::cli {

using nlohmann::ordered_json;

namespace {

constexpr const char* kScaledGamma = "pJ_av/(1-p)";
constexpr const char* kScaledOmega = "pJ_av";

double num(const RunConfig& c, const char* key) {
  return c.parameters.at(key).get<double>();
}
long long whole(const RunConfig& c, const char* key) {
  return c.parameters.at(key).get<long long>();
}
std::string word(const RunConfig& c, const char* key) {
  return c.parameters.at(key).get<std::string>();
}

sweep::Scale scale_of(const std::string& s) {
  return s == "log" ? sweep::Scale::Log : sweep::Scale::Linear;
}

std::vector<Column> run_phase_diagram(const RunConfig& c) {
  sweep::GridSpec grid;
  grid.p = num(c, "p");
  grid.j_av = num(c, "j-av");
  const std::string cells = word(c, "grid");
  const auto x = cells.find('x');
  grid.gamma_axis = {num(c, "gamma-min"), num(c, "gamma-max"),
                     std::stoi(cells.substr(0, x)),
                     scale_of(word(c, "gamma-scale"))};
  grid.omega_axis = {num(c, "omega-min"), num(c, "omega-max"),
                     std::stoi(cells.substr(x + 1)),
                     scale_of(word(c, "omega-scale"))};
  const std::string q = word(c, "quantity");
  const sweep::Quantity quantity =
      q == "phase"          ? sweep::Quantity::Phase
      : q == "discriminant" ? sweep::Quantity::Discriminant
                            : sweep::Quantity::InnerProduct;
  const auto map = sweep::compute_heatmap(
      grid, quantity, static_cast<unsigned>(whole(c, "threads")));

  Column g{"gamma", kScaledGamma, {}};
  Column w{"omega", kScaledOmega, {}};
  Column v{q == "inner-product" ? "inner_product" : q,
           q == "phase" ? "code" : "1", {}};
  for (std::size_t ig = 0; ig < map.gamma.size(); ++ig) {
    for (std::size_t iw = 0; iw < map.omega.size(); ++iw) {
      g.values.push_back(map.gamma[ig]);
      w.values.push_back(map.omega[iw]);
      v.values.push_back(map.at(ig, iw));
    }
  }
  return {g, w, v};
}

std::vector<Column> run_ep_contour(const RunConfig& c) {
  const double p = num(c, "p");
  const double j = num(c, "j-av");
  const double pj = p * j;
  const int k_max = static_cast<int>(whole(c, "k-max"));
  const std::string table = word(c, "table");

  if (table == "resonances") {
    Column k{"k", "1", {}}, wk{"omega_k", kScaledOmega, {}},
        node{"omega_node", kScaledOmega, {}};
    for (const auto& r : sweep::resonance_frequencies(p, j, k_max)) {
      k.values.push_back(r.k);
      wk.values.push_back(r.omega_k ? *r.omega_k / pj
                                    : std::numeric_limits<double>::quiet_NaN());
      node.values.push_back(r.omega_node / pj);
    }
    return {k, wk, node};
  }

  if (table == "slopes") {
    const double h = num(c, "slope-step") * pj;
    Column k{"k", "1", {}}, side{"side", "1", {}}, step{"step", kScaledOmega, {}},
        slope{"slope", "1", {}}, law{"slope_law", "1", {}},
        rel{"relative_error", "1", {}};
    for (int kk = 1; kk <= k_max; ++kk) {
      for (int s : {-1, 1}) {
        const auto m = sweep::contour_slope(p, j, kk, h, s);
        const double predicted = floquet::ep_slope_approx(kk, p, 1.0);
        const double value = m ? *m : std::numeric_limits<double>::quiet_NaN();
        k.values.push_back(kk);
        side.values.push_back(s);
        step.values.push_back(h / pj);
        slope.values.push_back(value);
        law.values.push_back(predicted);
        rel.values.push_back(std::abs(value - predicted) / predicted);
      }
    }
    return {k, side, step, slope, law, rel};
  }

  const sweep::Axis axis{num(c, "omega-min") * pj, num(c, "omega-max") * pj,
                         static_cast<int>(whole(c, "samples")),
                         scale_of(word(c, "omega-scale"))};
  Column branch{"branch", "1", {}}, k{"k", "1", {}},
      w{"omega", kScaledOmega, {}}, g{"gamma", kScaledGamma, {}};
  for (const auto& b : sweep::trace_contours(p, j, axis).branches) {
    for (const auto& pt : b.points) {
      branch.values.push_back(floquet::branch_sign(b.branch));
      k.values.push_back(b.k);
      w.values.push_back(pt.omega / pj);
      g.values.push_back((1.0 - p) * pt.gamma / pj);
    }
  }
  return {branch, k, w, g};
}

std::vector<Column> run_floquet_ham(const RunConfig& c) {
  const double p = num(c, "p");
  const double j = num(c, "j-av");
  const std::string branch = word(c, "branch");
  auto params = floquet::FloquetParams::from_scaled(p, j, num(c, "gamma"),
                                                    num(c, "omega"));
  floquet::FloquetHamiltonian h;
  if (branch == "none") {
    h = floquet::floquet_hamiltonian(params);
  } else {
    const auto g = floquet::ep_contour_gamma(
        params, branch == "plus" ? floquet::Branch::PlusOne
                                 : floquet::Branch::MinusOne);
    if (!g) {
      throw UsageError("branch: no " + branch +
                       " contour exists at this omega");
    }
    params = params.with_gamma(*g);
    h = floquet::floquet_hamiltonian_on_contour(params);
  }
  const auto label = floquet::classify_phase(params);
  const auto ev = floquet::floquet_eigenvalues(params);
  const auto dp = floquet::dp_proximity(params);

  std::vector<Column> cols;
  auto add = [&](const char* name, const char* unit, double v) {
    cols.push_back({name, unit, {v}});
  };
  add("gamma", kScaledGamma, params.gamma_scaled());
  add("omega", kScaledOmega, params.omega_scaled());
  add("discriminant", "1", label.discriminant);
  add("phase", "code",
      label.kind == floquet::PhaseKind::PTSymmetric   ? sweep::kPhaseSymmetric
      : label.kind == floquet::PhaseKind::PTBroken ? sweep::kPhaseBroken
                                                   : sweep::kPhaseEP);
  add("on_contour", "bool", h.on_contour ? 1.0 : 0.0);
  const auto& d = h.decomposition;
  const char* names[4][2] = {{"h0_re", "h0_im"},
                             {"hx_re", "hx_im"},
                             {"hy_re", "hy_im"},
                             {"hz_re", "hz_im"}};
  const cplx comps[4] = {d.scalar, d.vector[0], d.vector[1], d.vector[2]};
  for (int i = 0; i < 4; ++i) {
    add(names[i][0], "J_av", comps[i].real());
    add(names[i][1], "J_av", comps[i].imag());
  }
  add("lambda_plus_re", "1", ev.plus.real());
  add("lambda_plus_im", "1", ev.plus.imag());
  add("lambda_minus_re", "1", ev.minus.real());
  add("lambda_minus_im", "1", ev.minus.imag());
  add("dp_plus", "1", dp.plus);
  add("dp_minus", "1", dp.minus);
  add("inner_product", "1", floquet::eigenvector_overlap(params));
  return cols;
}

Vec2 bloch_initial(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "plus-x") return Vec2(r, r);
  if (name == "plus-y") return Vec2(r, kI * r);
  if (name == "minus-y") return Vec2(r, -kI * r);
  if (name == "plus-z") return Vec2(1.0, 0.0);
  if (name == "minus-z") return Vec2(0.0, 1.0);
  return bloch::figure2_initial_state();
}

std::vector<Column> run_bloch(const RunConfig& c) {
  const auto params = floquet::FloquetParams::from_scaled(
      num(c, "p"), num(c, "j-av"), num(c, "gamma"), num(c, "omega"));
  const auto traj =
      bloch::evolve_state(bloch_initial(word(c, "init")), params,
                          static_cast<int>(whole(c, "periods")),
                          static_cast<int>(whole(c, "substeps")));
  Column t{"t", "T", {}}, th{"theta", "rad", {}}, ph{"phi", "rad", {}},
      x{"x", "1", {}}, y{"y", "1", {}}, z{"z", "1", {}},
      seg{"segment", "0=unitary;1=thermal", {}};
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    const auto v = s.cartesian();
    t.values.push_back(traj.times[i]);
    th.values.push_back(s.theta);
    ph.values.push_back(s.phi);
    x.values.push_back(v[0]);
    y.values.push_back(v[1]);
    z.values.push_back(v[2]);
    seg.values.push_back(traj.segment_tags[i] == bloch::Segment::Unitary ? 0 : 1);
  }
  return {t, th, ph, x, y, z, seg};
}

twoqubit::DensityMatrix pair_initial(const std::string& name) {
  if (name == "bell") return twoqubit::state_bell();
  if (name == "mixed") return twoqubit::state_mixed();
  if (name == "fig3f") return twoqubit::state_fig3f();
  return twoqubit::state_00();
}

std::vector<Column> run_two_qubit(const RunConfig& c) {
  const double j = num(c, "j");
  const auto gammas = c.parameters.at("gamma").get<std::vector<double>>();
  const auto kxs = c.parameters.at("kx").get<std::vector<double>>();
  const double t_max = num(c, "t-max");
  const long long steps = whole(c, "steps");
  std::vector<double> grid(steps + 1);
  for (long long i = 0; i <= steps; ++i) grid[i] = t_max * i / steps;
  grid.back() = t_max;
  const auto rho0 = pair_initial(word(c, "init"));
  const bool labelled = gammas.size() * kxs.size() > 1;

  Column g{"gamma", "J", {}}, k{"kx", "J", {}}, jt{"Jt", "1", {}},
      conc{"concurrence", "1", {}}, su{"S_u", "bit", {}}, st{"S_t", "bit", {}};
  for (double gamma : gammas) {
    for (double kx : kxs) {
      const twoqubit::TwoQubitParams params(j, gamma, kx);
      for (const auto& r : twoqubit::entanglement_timeseries(rho0, params, grid)) {
        g.values.push_back(gamma);
        k.values.push_back(kx);
        jt.values.push_back(r.jt);
        conc.values.push_back(r.concurrence);
        su.values.push_back(r.s_u);
        st.values.push_back(r.s_t);
      }
    }
  }
  if (labelled) return {g, k, jt, conc, su, st};
  return {jt, conc, su, st};
}

}  // namespace

ResultEnvelope execute(const RunConfig& config) {
  validate_config(config);
  ResultEnvelope env;
  env.config = config;
  const std::string& cmd = config.command;
  if (cmd == "phase-diagram") {
    env.columns = run_phase_diagram(config);
  } else if (cmd == "ep-contour") {
    env.columns = run_ep_contour(config);
  } else if (cmd == "floquet-ham") {
    env.columns = run_floquet_ham(config);
  } else if (cmd == "bloch-traj") {
    env.columns = run_bloch(config);
  } else {
    env.columns = run_two_qubit(config);
  }
  env.provenance = current_provenance();
  env.validate();
  return env;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    const RunConfig config = parse_config(args);
    write_result(execute(config), out);
    return kExitOk;
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace fep::cli
