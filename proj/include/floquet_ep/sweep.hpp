#pragma once

// Parameter sweeps over the dimensionless (gamma, Omega) plane and
// closed-form EP contour sampling.

#include "floquet_ep/floquet_qubit.hpp"

#include <optional>
#include <vector>

namespace fep::sweep {

enum class Scale { Linear, Log };

struct Axis {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Scale scale = Scale::Linear;

  /// Throws std::invalid_argument unless count >= 2, min < max (finite)
  /// and, for log scale, min > 0.
  void validate() const;
  /// Sample points; the first and last equal min and max exactly.
  std::vector<double> values() const;
};

/// Axes are dimensionless: gamma is (1-p) gamma_av / (p J_av) and omega is
/// Omega / (p J_av).
struct GridSpec {
  Axis gamma_axis;
  Axis omega_axis;
  double p = 0.5;
  double j_av = 1.0;

  void validate() const;
  floquet::FloquetParams params_at(double gamma_scaled,
                                   double omega_scaled) const;

  /// gamma log in [1e-2, 10], omega linear in [0.1, 3], p = 0.5, J_av = 1.
  static GridSpec figure1_preset(int n_gamma = 400, int n_omega = 400);
};

enum class Quantity { InnerProduct, Discriminant, Phase };

const char* to_string(Quantity q);

/// Phase quantity encoding.
inline constexpr double kPhaseSymmetric = 0.0;
inline constexpr double kPhaseEP = 1.0;
inline constexpr double kPhaseBroken = 2.0;

struct HeatMap {
  GridSpec grid;
  Quantity quantity;
  std::vector<double> gamma;  // axis samples
  std::vector<double> omega;
  std::vector<double> values;  // row-major, rows are gamma

  double at(std::size_t ig, std::size_t iw) const {
    return values[ig * omega.size() + iw];
  }
};

/// Worker count to use: `requested` if positive, otherwise the
/// FLOQUET_EP_THREADS environment variable, where 0 or unset means all
/// hardware threads. Never less than 1.
unsigned resolve_workers(unsigned requested = 0);

/// Rows are handed to workers dynamically; each cell depends only on its
/// own coordinates, so the output is identical for any worker count.
HeatMap compute_heatmap(const GridSpec& grid, Quantity quantity,
                        unsigned workers = 0);

struct ContourPoint {
  double gamma;  // gamma_av
  double omega;  // Omega
};

struct ContourBranch {
  floquet::Branch branch;
  int k;  // Omega lies in (Omega_{k+1}, Omega_k]
  std::vector<ContourPoint> points;
};

struct ContourSet {
  std::vector<ContourBranch> branches;
};

/// Samples the closed-form EP contour at each Omega on `omega_axis`
/// (absolute units). Branches are ordered by (k, branch) and their points
/// follow the axis order.
ContourSet trace_contours(double p, double j_av, const Axis& omega_axis);

struct Resonance {
  int k;
  std::optional<double> omega_k;  // 2 p J / k, absent for k = 0
  double omega_node;              // 2 p J / (k + 1/2)
};

/// Entries for k = 0..k_max. Throws std::invalid_argument if k_max < 1.
std::vector<Resonance> resonance_frequencies(double p, double j_av, int k_max);

/// Secant slope gamma_EP(Omega_k + side * h) / h of the exact contour next
/// to the k-th resonance, where gamma_EP(Omega_k) = 0. side is +1 or -1.
/// Empty if the contour does not exist at that point.
std::optional<double> contour_slope(double p, double j_av, int k, double h,
                                    int side);

}  // namespace fep::sweep
