#include "floquet_ep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

namespace fep::sweep {

void Axis::validate() const {
  if (count < 2) throw std::invalid_argument("axis count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw std::invalid_argument("axis needs finite min < max");
  }
  if (scale == Scale::Log && !(min > 0.0)) {
    throw std::invalid_argument("log axis needs min > 0");
  }
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> out(count);
  const double n = count - 1;
  if (scale == Scale::Linear) {
    for (int i = 0; i < count; ++i) out[i] = min + (max - min) * (i / n);
  } else {
    const double lo = std::log(min);
    const double hi = std::log(max);
    for (int i = 0; i < count; ++i) out[i] = std::exp(lo + (hi - lo) * (i / n));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void GridSpec::validate() const {
  gamma_axis.validate();
  omega_axis.validate();
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  if (!(j_av > 0.0) || !std::isfinite(j_av)) {
    throw std::invalid_argument("j_av must be positive");
  }
  if (!(omega_axis.min > 0.0)) {
    throw std::invalid_argument("omega axis must be positive");
  }
}

floquet::FloquetParams GridSpec::params_at(double gamma_scaled,
                                           double omega_scaled) const {
  return floquet::FloquetParams::from_scaled(p, j_av, gamma_scaled,
                                             omega_scaled);
}

GridSpec GridSpec::figure1_preset(int n_gamma, int n_omega) {
  GridSpec g;
  g.gamma_axis = {1e-2, 10.0, n_gamma, Scale::Log};
  g.omega_axis = {0.1, 3.0, n_omega, Scale::Linear};
  g.p = 0.5;
  g.j_av = 1.0;
  return g;
}

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::InnerProduct: return "inner-product";
    case Quantity::Discriminant: return "discriminant";
    case Quantity::Phase: return "phase";
  }
  return "unknown";
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned cap = 0;
  if (const char* env = std::getenv("FLOQUET_EP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) cap = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // Malformed values fall back to all cores.
    }
  }
  if (cap == 0) cap = std::thread::hardware_concurrency();
  return std::max(1u, cap);
}

namespace {

double evaluate(const floquet::FloquetParams& params, Quantity q) {
  switch (q) {
    case Quantity::InnerProduct:
      return floquet::eigenvector_overlap(params);
    case Quantity::Discriminant:
      return floquet::discriminant(params);
    case Quantity::Phase:
      switch (floquet::classify_phase(params).kind) {
        case floquet::PhaseKind::PTSymmetric: return kPhaseSymmetric;
        case floquet::PhaseKind::ExceptionalPoint: return kPhaseEP;
        case floquet::PhaseKind::PTBroken: return kPhaseBroken;
      }
  }
  return 0.0;
}

}  // namespace

HeatMap compute_heatmap(const GridSpec& grid, Quantity quantity,
                        unsigned workers) {
  grid.validate();
  HeatMap map{grid, quantity, grid.gamma_axis.values(),
              grid.omega_axis.values(), {}};
  const std::size_t ng = map.gamma.size();
  const std::size_t nw = map.omega.size();
  map.values.assign(ng * nw, 0.0);

  std::atomic<std::size_t> next_row{0};
  auto work = [&] {
    for (std::size_t ig = next_row++; ig < ng; ig = next_row++) {
      for (std::size_t iw = 0; iw < nw; ++iw) {
        map.values[ig * nw + iw] =
            evaluate(grid.params_at(map.gamma[ig], map.omega[iw]), quantity);
      }
    }
  };

  const unsigned n = std::min<std::size_t>(resolve_workers(workers), ng);
  if (n <= 1) {
    work();
    return map;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return map;
}

ContourSet trace_contours(double p, double j_av, const Axis& omega_axis) {
  if (!(p > 0.0 && p < 1.0) || !(j_av > 0.0)) {
    throw std::invalid_argument("trace_contours: need 0 < p < 1, j_av > 0");
  }
  if (!(omega_axis.min > 0.0)) {
    throw std::invalid_argument("trace_contours: omega range must be positive");
  }
  const double pj = p * j_av;
  std::map<std::pair<int, int>, ContourBranch> groups;
  for (double omega : omega_axis.values()) {
    const auto params = floquet::FloquetParams::from_omega(p, omega, j_av, 0.0);
    const int k = static_cast<int>(std::floor(2.0 * pj / omega));
    for (auto branch : {floquet::Branch::PlusOne, floquet::Branch::MinusOne}) {
      const auto gamma = floquet::ep_contour_gamma(params, branch);
      if (!gamma) continue;
      auto key = std::make_pair(k, branch == floquet::Branch::PlusOne ? 0 : 1);
      auto [it, inserted] = groups.try_emplace(key, ContourBranch{branch, k, {}});
      it->second.points.push_back({*gamma, omega});
    }
  }
  ContourSet out;
  for (auto& [key, b] : groups) out.branches.push_back(std::move(b));
  return out;
}

std::vector<Resonance> resonance_frequencies(double p, double j_av,
                                             int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const double pj = p * j_av;
  std::vector<Resonance> out;
  for (int k = 0; k <= k_max; ++k) {
    Resonance r{k, std::nullopt, 2.0 * pj / (k + 0.5)};
    if (k > 0) r.omega_k = 2.0 * pj / k;
    out.push_back(r);
  }
  return out;
}

std::optional<double> contour_slope(double p, double j_av, int k, double h,
                                    int side) {
  if (k < 1 || !(h > 0.0) || (side != 1 && side != -1)) {
    throw std::invalid_argument("contour_slope: need k >= 1, h > 0, side = +-1");
  }
  const double omega_k = 2.0 * p * j_av / k;
  const double omega = omega_k + side * h;
  if (!(omega > 0.0)) return std::nullopt;
  const auto params = floquet::FloquetParams::from_omega(p, omega, j_av, 0.0);
  for (auto branch : {floquet::Branch::PlusOne, floquet::Branch::MinusOne}) {
    if (const auto g = floquet::ep_contour_gamma(params, branch)) return *g / h;
  }
  return std::nullopt;
}

}  // namespace fep::sweep
