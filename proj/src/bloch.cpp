#include "floquet_ep/bloch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fep::bloch {

BlochState BlochState::from_spinor(const Vec2& psi) {
  const double n2 = psi.squaredNorm();
  const cplx cross = std::conj(psi(0)) * psi(1) / n2;
  const double z = (std::norm(psi(0)) - std::norm(psi(1))) / n2;
  return from_cartesian(2.0 * cross.real(), 2.0 * cross.imag(), z);
}

BlochState BlochState::from_cartesian(double x, double y, double z) {
  const double rho = std::hypot(x, y);
  BlochState s;
  s.theta = std::atan2(rho, z);
  double phi = std::atan2(y, x);
  if (phi >= std::numbers::pi) phi -= 2.0 * std::numbers::pi;
  s.phi = phi;
  return s;
}

std::array<double, 3> BlochState::cartesian() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double distance(const BlochState& a, const BlochState& b) {
  const auto u = a.cartesian();
  const auto v = b.cartesian();
  return std::hypot(u[0] - v[0], u[1] - v[1], u[2] - v[2]);
}

Vec2 figure2_initial_state() {
  const double r = 1.0 / std::sqrt(2.0);
  const Vec2 plus_x(r, r);
  const Vec2 minus_y(r, -kI * r);
  const Vec2 plus_z(1.0, 0.0);
  return (plus_x + minus_y + plus_z).normalized();
}

Trajectory evolve_state(const Vec2& psi0, const floquet::FloquetParams& params,
                        int n_periods, int substeps) {
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("evolve_state: psi0 must be normalized");
  }
  if (substeps < 1) {
    throw std::invalid_argument("evolve_state: substeps must be >= 1");
  }
  if (n_periods < 0) {
    throw std::invalid_argument("evolve_state: n_periods must be >= 0");
  }

  const double p = params.p();
  const bool has_unitary = params.tau() > 0.0;
  const bool has_thermal = params.beta() > 0.0;
  const Mat2 unitary_step =
      floquet::rabi_rotation(params.rabi_phase() / substeps);
  const Mat2 thermal_step =
      floquet::thermal_boost(params.thermal_phase() / substeps);

  Trajectory traj;
  const std::size_t per_period =
      static_cast<std::size_t>(substeps) * ((has_unitary ? 1 : 0) + (has_thermal ? 1 : 0));
  traj.times.reserve(1 + per_period * n_periods);
  traj.states.reserve(traj.times.capacity());
  traj.segment_tags.reserve(traj.times.capacity());

  Vec2 psi = psi0;
  auto record = [&](double t, Segment tag) {
    traj.times.push_back(t);
    traj.states.push_back(BlochState::from_spinor(psi));
    traj.segment_tags.push_back(tag);
  };
  record(0.0, has_unitary ? Segment::Unitary : Segment::Thermal);

  for (int n = 0; n < n_periods; ++n) {
    const double start = n;
    if (has_unitary) {
      for (int k = 1; k <= substeps; ++k) {
        psi = (unitary_step * psi).normalized();
        const bool period_end = !has_thermal && k == substeps;
        record(period_end ? start + 1.0 : start + p * k / substeps,
               Segment::Unitary);
      }
    }
    if (has_thermal) {
      for (int k = 1; k <= substeps; ++k) {
        psi = (thermal_step * psi).normalized();
        const double t =
            k == substeps ? start + 1.0 : start + p + (1.0 - p) * k / substeps;
        record(t, Segment::Thermal);
      }
    }
  }
  return traj;
}

std::vector<BlochState> stroboscopic_slice(const Trajectory& traj) {
  std::vector<BlochState> out;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t > 0.0 && t == std::floor(t)) out.push_back(traj.states[i]);
  }
  return out;
}

std::optional<BlochState> steady_state_bloch(
    const floquet::FloquetParams& params) {
  if (floquet::classify_phase(params).kind != floquet::PhaseKind::PTBroken) {
    return std::nullopt;
  }
  const auto pairs = linalg::eig(floquet::floquet_operator(params).matrix);
  const auto& dominant =
      std::abs(pairs[0].value) >= std::abs(pairs[1].value) ? pairs[0] : pairs[1];
  return BlochState::from_spinor(dominant.vector);
}

}  // namespace fep::bloch
