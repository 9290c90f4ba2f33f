#include "floquet_ep/floquet_qubit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fep::floquet {

using linalg::PauliDecomposition;

FloquetParams::FloquetParams(double p, double period, double j_av,
                             double gamma_av)
    : p_(p), period_(period), j_av_(j_av), gamma_av_(gamma_av) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("FloquetParams: p must lie in [0, 1]");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("FloquetParams: period must be positive");
  }
  if (!(j_av >= 0.0) || !std::isfinite(j_av)) {
    throw std::invalid_argument("FloquetParams: j_av must be non-negative");
  }
  if (!std::isfinite(gamma_av)) {
    throw std::invalid_argument("FloquetParams: gamma_av must be finite");
  }
  tau_ = p_ * period_;
  beta_ = period_ - tau_;
}

FloquetParams FloquetParams::from_omega(double p, double omega, double j_av,
                                        double gamma_av) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("FloquetParams: omega must be positive");
  }
  return {p, 2.0 * std::numbers::pi / omega, j_av, gamma_av};
}

FloquetParams FloquetParams::from_scaled(double p, double j_av,
                                         double gamma_scaled,
                                         double omega_scaled) {
  if (!(p > 0.0 && p < 1.0) || !(j_av > 0.0)) {
    throw std::invalid_argument(
        "FloquetParams: scaled coordinates need 0 < p < 1 and j_av > 0");
  }
  const double pj = p * j_av;
  return from_omega(p, omega_scaled * pj, j_av, gamma_scaled * pj / (1.0 - p));
}

double FloquetParams::omega() const noexcept { return 2.0 * std::numbers::pi / period_; }

double FloquetParams::gamma_scaled() const {
  const double pj = p_ * j_av_;
  if (pj == 0.0) throw std::domain_error("gamma_scaled: p * j_av is zero");
  return (1.0 - p_) * gamma_av_ / pj;
}

double FloquetParams::omega_scaled() const {
  const double pj = p_ * j_av_;
  if (pj == 0.0) throw std::domain_error("omega_scaled: p * j_av is zero");
  return omega() / pj;
}

FloquetParams FloquetParams::with_gamma(double gamma_av) const {
  return {p_, period_, j_av_, gamma_av};
}

const char* to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::PTSymmetric: return "pt-symmetric";
    case PhaseKind::PTBroken: return "pt-broken";
    case PhaseKind::ExceptionalPoint: return "exceptional-point";
  }
  return "unknown";
}

const char* to_string(Branch branch) {
  return branch == Branch::PlusOne ? "+1" : "-1";
}

// ------------------------------------------------------------- propagators

Mat2 rabi_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat2 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 thermal_boost(double amount) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(amount);
  m(1, 1) = std::exp(-amount);
  return m;
}

Mat2 propagator_unitary(const FloquetParams& params) {
  return rabi_rotation(params.rabi_phase());
}

Mat2 propagator_thermal(const FloquetParams& params) {
  return thermal_boost(params.thermal_phase());
}

FloquetOperator floquet_operator(const FloquetParams& params) {
  FloquetOperator out;
  out.matrix = propagator_thermal(params) * propagator_unitary(params);
  out.decomposition = linalg::pauli_decompose(out.matrix);
  return out;
}

// ---------------------------------------------------------------- spectrum

double discriminant(const FloquetParams& params) {
  const double phi = params.rabi_phase();
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double sh = std::sinh(params.thermal_phase());
  return (c * sh - s) * (c * sh + s);
}

FloquetEigenvalues floquet_eigenvalues(const FloquetParams& params) {
  const double g0 =
      std::cos(params.rabi_phase()) * std::cosh(params.thermal_phase());
  const cplx root = std::sqrt(cplx(discriminant(params), 0.0));
  // det G_F = 1, so on the real axis the smaller eigenvalue is the inverse
  // of the larger one.
  if (root.imag() == 0.0) {
    const cplx plus = g0 + root;
    const cplx minus = g0 - root;
    if (std::abs(plus) >= std::abs(minus)) return {plus, 1.0 / plus};
    return {1.0 / minus, minus};
  }
  return {g0 + root, g0 - root};
}

PhaseLabel classify_phase(const FloquetParams& params, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("classify_phase: tol must be positive");
  }
  const double d = discriminant(params);
  PhaseKind kind = PhaseKind::ExceptionalPoint;
  if (d < -tol) {
    kind = PhaseKind::PTSymmetric;
  } else if (d > tol) {
    kind = PhaseKind::PTBroken;
  }
  return {kind, d, tol};
}

double eigenvector_overlap(const FloquetParams& params) {
  const double phi = params.rabi_phase();
  const double s = std::sin(phi);
  const double g = params.thermal_phase();
  if (std::abs(s) < kResonanceTol || g == 0.0) return 0.0;
  // r^2 = (s / tanh g)^2 = 1 - disc / sinh^2 g; this form keeps the peak
  // at r = 1 resolvable when |s| and tanh g both round to one.
  const double c = std::cos(phi);
  const double q = s / std::sinh(g);
  const double r2 = 1.0 - (c - q) * (c + q);
  if (!(r2 > 0.0)) return 0.0;
  const double r = std::sqrt(r2);
  return std::min(r, 1.0 / r);
}

// ---------------------------------------------------------------- contours

std::optional<double> ep_contour_gamma(const FloquetParams& params,
                                       Branch branch) {
  const double beta = params.beta();
  if (!(beta > 0.0)) {
    throw std::invalid_argument("ep_contour_gamma: (1 - p) T must be positive");
  }
  const double c = std::cos(params.rabi_phase());
  if (c == 0.0) return std::nullopt;
  const double target = branch_sign(branch) / c;
  if (!(target >= 1.0)) return std::nullopt;
  return std::acosh(target) / beta;
}

double ep_slope_approx(int k, double p, double delta_omega) {
  if (k < 1) throw std::invalid_argument("ep_slope_approx: k must be >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("ep_slope_approx: p must lie in (0, 1)");
  }
  return k * std::abs(delta_omega) / (2.0 * (1.0 - p));
}

double ep_node_asymptote(int k, double p, double j_av,
                         double delta_omega_prime) {
  if (k < 0) throw std::invalid_argument("ep_node_asymptote: k must be >= 0");
  if (!(p > 0.0 && p < 1.0) || !(j_av > 0.0)) {
    throw std::invalid_argument(
        "ep_node_asymptote: need 0 < p < 1 and j_av > 0");
  }
  if (!(delta_omega_prime > 0.0)) {
    throw std::invalid_argument(
        "ep_node_asymptote: delta_omega_prime must be positive");
  }
  const double pj = p * j_av;
  const double half_index = k + 0.5;
  return -pj / (std::numbers::pi * half_index * (1.0 - p)) *
         std::log(std::numbers::pi * delta_omega_prime / pj);
}

// ------------------------------------------------------ floquet hamiltonian

FloquetHamiltonian floquet_hamiltonian(const FloquetParams& params) {
  const FloquetOperator gf = floquet_operator(params);
  return {linalg::logm_2x2(gf.matrix, params.period()), false};
}

FloquetHamiltonian floquet_hamiltonian_on_contour(const FloquetParams& params) {
  const double d = discriminant(params);
  if (!(std::abs(d) <= kOnContourTol)) {
    std::ostringstream os;
    os << "floquet_hamiltonian_on_contour: point is off the EP contour "
          "(discriminant "
       << d << ")";
    throw std::invalid_argument(os.str());
  }
  const double period = params.period();
  const double phi = params.rabi_phase();
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double g = params.thermal_phase();
  const double sign_tan = (s * c < 0.0) ? -1.0 : 1.0;

  PauliDecomposition h;
  // G_F = +1 or -1 times (1 - i h.sigma T); exp(-i h_0 T) carries the sign.
  h.scalar = c < 0.0 ? std::numbers::pi / period : 0.0;
  h.vector[0] = sign_tan * std::abs(std::sinh(g)) / period;
  h.vector[2] = kI * std::tanh(g) / period;
  h.vector[1] = period * h.vector[0] * h.vector[2];
  return {h, true};
}

DpProximity dp_proximity(const FloquetParams& params) {
  const Mat2 full = floquet_operator(params).matrix;
  // Work with G_F / max|entry| so the Gram matrix cannot overflow.
  const double scale = linalg::max_abs(full);
  const Mat2 gf = full / scale;
  const Mat2 gram = gf.adjoint() * gf;
  const double a = gram(0, 0).real();
  const double d = gram(1, 1).real();
  const double b2 = std::norm(gram(0, 1));
  const double trace = a + d;
  const double det = std::norm(full.determinant());
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b2);
  const double plus = 0.5 * (trace + disc);
  const double lambda_plus = plus * scale * scale;
  return {lambda_plus, det / lambda_plus};
}

}  // namespace fep::floquet
