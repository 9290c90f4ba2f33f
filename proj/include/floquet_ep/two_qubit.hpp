#pragma once

// Coupled thermal/unitary qubit pair with Hamiltonian
//   H_2 = J 1 (x) sigma_x + i gamma sigma_z (x) 1 + k_x sigma_x (x) sigma_x.
// The first tensor factor is the thermal qubit, the second the unitary one.

#include "floquet_ep/linalg.hpp"

#include <vector>

namespace fep::twoqubit {

class TwoQubitParams {
 public:
  /// Throws std::invalid_argument unless all three are finite and >= 0.
  TwoQubitParams(double j, double gamma, double k_x);

  double j() const noexcept { return j_; }
  double gamma() const noexcept { return gamma_; }
  double k_x() const noexcept { return k_x_; }

  /// k_x^2 - gamma^2, computed as (k_x - gamma)(k_x + gamma).
  double delta_sq() const noexcept { return delta_sq_; }
  /// sqrt(k_x^2 - gamma^2): real when k_x > gamma, imaginary when k_x < gamma.
  cplx delta() const;

  /// |k_x - gamma| <= tol * max(k_x, gamma).
  bool is_ep(double tol = 1e-12) const noexcept;

 private:
  double j_;
  double gamma_;
  double k_x_;
  double delta_sq_;
};

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2 or 4.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-11;
  static constexpr double kTraceTol = 1e-11;
  static constexpr double kEigenTol = 1e-10;

  /// Throws std::invalid_argument when any invariant is violated.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  cplx operator()(int r, int c) const { return entries_(r, c); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix maximally_mixed(int dim);

 private:
  Eigen::MatrixXcd entries_;
};

enum class Qubit { Unitary, Thermal };

struct EntanglementRecord {
  double time;
  double jt;
  double concurrence;
  double s_u;
  double s_t;
};

// Initial states used in the entanglement study.
DensityMatrix state_00();
/// (|00> + |11>) / sqrt(2)
DensityMatrix state_bell();
DensityMatrix state_mixed();
/// 0.25 1 + 0.19 1(x)sz + 0.23 sz(x)1 + 0.19 sz(x)sz
DensityMatrix state_fig3f();

Mat4 hamiltonian_two_qubit(const TwoQubitParams& params);

/// exp(-i H_2 t) in closed form. Since 1(x)sigma_x commutes with the rest
/// and K = i gamma sz(x)1 + k_x sx(x)sx squares to Delta^2, the propagator
/// is (1 (x) e^{-iJt sx}) [cos(Delta t) - i K sin(Delta t)/Delta], evaluated
/// through real functions of (Delta t)^2 so both phases and the EP share one
/// code path. Throws std::invalid_argument for t < 0.
Mat4 propagator_analytic(const TwoQubitParams& params, double t);

/// G rho0 G^dagger / Tr[...], with G rescaled to stay finite at long times.
DensityMatrix evolve_density(const DensityMatrix& rho0,
                             const TwoQubitParams& params, double t);

/// Wootters concurrence. The c_k are the singular values of W^T (sy(x)sy) W
/// for rho = W W^dagger, which equal the square roots of the spectrum of
/// rho (sy(x)sy) rho* (sy(x)sy). That spectrum is also checked: an
/// eigenvalue with |imag| > 1e-8 or real part < -1e-8 raises NumericError.
double concurrence(const DensityMatrix& rho);

/// Closed-form concurrence for the initial state |00>. Returns 0 at t = 0.
double concurrence_closed_form_00(const TwoQubitParams& params, double t);

/// |2 gt (1 + gt) / ((gt)^2 + (1 + gt)^2)| with gt = gamma t.
double concurrence_ep_00(double gamma, double t);

DensityMatrix reduced_density(const DensityMatrix& rho, Qubit which);

/// -sum p log2 p over the eigenvalues of a 2x2 density matrix.
double entropy(const DensityMatrix& rho);

/// Evaluates each time from scratch. Throws std::invalid_argument unless
/// t_grid is non-decreasing and non-negative.
std::vector<EntanglementRecord> entanglement_timeseries(
    const DensityMatrix& rho0, const TwoQubitParams& params,
    const std::vector<double>& t_grid);

}  // namespace fep::twoqubit
