#pragma once

// Post-selected single-qubit trajectories on the Bloch sphere under the
// alternating unitary/thermal protocol.

#include "floquet_ep/floquet_qubit.hpp"

#include <array>
#include <optional>
#include <vector>

namespace fep::bloch {

struct BlochState {
  double theta = 0.0;  // polar angle, [0, pi]
  double phi = 0.0;    // azimuth, [-pi, pi)

  static BlochState from_spinor(const Vec2& psi);
  static BlochState from_cartesian(double x, double y, double z);

  std::array<double, 3> cartesian() const;
};

/// Euclidean distance between Bloch vectors.
double distance(const BlochState& a, const BlochState& b);

enum class Segment { Unitary, Thermal };

struct Trajectory {
  std::vector<double> times;  // units of T
  std::vector<BlochState> states;
  std::vector<Segment> segment_tags;
};

inline constexpr int kDefaultSubsteps = 64;

/// (|+x> + |-y> + |+z>) normalized as a spinor.
Vec2 figure2_initial_state();

/// Samples the state at t = 0 and after every substep. Each substep applies
/// the exact partial propagator and renormalizes. Throws
/// std::invalid_argument for a non-normalized psi0, substeps < 1 or
/// n_periods < 0.
Trajectory evolve_state(const Vec2& psi0, const floquet::FloquetParams& params,
                        int n_periods, int substeps = kDefaultSubsteps);

/// Samples at t = 1, 2, ... (period boundaries), excluding t = 0.
std::vector<BlochState> stroboscopic_slice(const Trajectory& traj);

/// Dominant eigenvector of G_F in the PT-broken phase; empty otherwise.
std::optional<BlochState> steady_state_bloch(
    const floquet::FloquetParams& params);

}  // namespace fep::bloch
