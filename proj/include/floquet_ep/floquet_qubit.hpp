#pragma once

// Single-qubit Floquet physics for a protocol that alternates a Rabi segment
// exp(-i J_av tau sigma_x) with a thermal segment exp(+gamma_av beta sigma_z).

#include "floquet_ep/linalg.hpp"

#include <optional>

namespace fep::floquet {

/// Parameter point of the two-segment protocol. The unitary segment lasts
/// tau = p T and the thermal segment beta = (1 - p) T.
class FloquetParams {
 public:
  /// Throws std::invalid_argument unless p in [0, 1], period > 0,
  /// j_av >= 0 and gamma_av finite.
  FloquetParams(double p, double period, double j_av, double gamma_av);

  static FloquetParams from_omega(double p, double omega, double j_av,
                                  double gamma_av);
  /// Dimensionless coordinates used by the phase diagrams:
  /// gamma_scaled = (1-p) gamma_av / (p J_av), omega_scaled = Omega / (p J_av).
  static FloquetParams from_scaled(double p, double j_av, double gamma_scaled,
                                   double omega_scaled);

  double p() const noexcept { return p_; }
  double period() const noexcept { return period_; }
  double omega() const noexcept;
  double j_av() const noexcept { return j_av_; }
  double gamma_av() const noexcept { return gamma_av_; }
  double tau() const noexcept { return tau_; }
  double beta() const noexcept { return beta_; }

  /// p T J_av, the Rabi angle accumulated per period.
  double rabi_phase() const noexcept { return j_av_ * tau_; }
  /// (1 - p) T gamma_av, the thermal boost per period.
  double thermal_phase() const noexcept { return gamma_av_ * beta_; }

  // Throw std::domain_error when p J_av == 0 (or p == 1 for gamma_scaled).
  double gamma_scaled() const;
  double omega_scaled() const;

  FloquetParams with_gamma(double gamma_av) const;

 private:
  double p_;
  double period_;
  double j_av_;
  double gamma_av_;
  double tau_;
  double beta_;
};

enum class PhaseKind { PTSymmetric, PTBroken, ExceptionalPoint };

const char* to_string(PhaseKind kind);

struct PhaseLabel {
  PhaseKind kind;
  double discriminant;  // G.G = G_x^2 + G_y^2 + G_z^2 (real)
  double tol;
};

struct FloquetHamiltonian {
  linalg::PauliDecomposition decomposition;  // H_F = h_0 + h.sigma
  bool on_contour = false;

  Mat2 matrix() const { return decomposition.matrix(); }
};

struct FloquetOperator {
  Mat2 matrix;
  linalg::PauliDecomposition decomposition;
};

struct FloquetEigenvalues {
  cplx plus;
  cplx minus;
};

/// Eigenvalues of G_F^dagger G_F, descending.
struct DpProximity {
  double plus;
  double minus;
};

/// Which side of cos(pTJ) cosh[(1-p)T gamma] = +-1 an EP contour satisfies.
enum class Branch { PlusOne, MinusOne };

const char* to_string(Branch branch);
inline double branch_sign(Branch b) { return b == Branch::PlusOne ? 1.0 : -1.0; }

inline constexpr double kDefaultPhaseTol = 1e-10;
inline constexpr double kResonanceTol = 1e-12;
inline constexpr double kOnContourTol = 1e-8;

/// exp(-i angle sigma_x)
Mat2 rabi_rotation(double angle);
/// exp(+amount sigma_z)
Mat2 thermal_boost(double amount);

Mat2 propagator_unitary(const FloquetParams& params);
Mat2 propagator_thermal(const FloquetParams& params);
/// G_F(T) = G(beta) G(tau): the thermal segment acts after the unitary one.
FloquetOperator floquet_operator(const FloquetParams& params);

/// Closed-form G.G = cos^2(pTJ) cosh^2[(1-p)T gamma] - 1, evaluated as
/// (c S - s)(c S + s) to limit cancellation.
double discriminant(const FloquetParams& params);

/// lambda_+- = G_0 +- |G| with |G| the principal root of the discriminant.
FloquetEigenvalues floquet_eigenvalues(const FloquetParams& params);

PhaseLabel classify_phase(const FloquetParams& params,
                          double tol = kDefaultPhaseTol);

/// I_P = |<v_+|v_->| = min(r, 1/r), r = |sin(pTJ) / tanh[(1-p)T gamma]|.
/// Resonances (|sin(pTJ)| < 1e-12) and gamma_av = 0 give 0.
double eigenvector_overlap(const FloquetParams& params);

/// Closed-form inversion of the EP condition at fixed p, T, J_av; the
/// gamma_av stored in params is ignored. Empty when the branch has no
/// solution at this frequency. Throws std::invalid_argument if (1-p)T == 0.
std::optional<double> ep_contour_gamma(const FloquetParams& params,
                                       Branch branch);

/// Linear EP arms near the k-th resonance: k |dOmega| / (2 (1-p)).
double ep_slope_approx(int k, double p, double delta_omega);

/// Logarithmic asymptote of the EP contour near the node
/// Omega'_k = 2 p J_av / (k + 1/2):
///   -p J_av / (pi (k+1/2) (1-p)) ln[pi dOmega' / (p J_av)].
/// Throws std::invalid_argument when dOmega' <= 0.
double ep_node_asymptote(int k, double p, double j_av,
                         double delta_omega_prime);

/// H_F = +i ln G_F / T via the principal matrix logarithm. Throws
/// NearDefective close to an EP contour.
FloquetHamiltonian floquet_hamiltonian(const FloquetParams& params);

/// Closed form on an EP contour, where G_F = +-(1 - i h.sigma T):
///   h_x = sgn(tan pTJ) |sinh g| / T,  h_z = (i/T) tanh g,  h_y = T h_x h_z
/// with g = (1-p) T gamma_av. Throws std::invalid_argument when
/// |discriminant| > kOnContourTol.
FloquetHamiltonian floquet_hamiltonian_on_contour(const FloquetParams& params);

DpProximity dp_proximity(const FloquetParams& params);

}  // namespace fep::floquet
