#include "floquet_ep/two_qubit.hpp"

#include "floquet_ep/floquet_qubit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fep::twoqubit {

using linalg::kron;
using linalg::sigma_x;
using linalg::sigma_y;
using linalg::sigma_z;

TwoQubitParams::TwoQubitParams(double j, double gamma, double k_x)
    : j_(j), gamma_(gamma), k_x_(k_x) {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("TwoQubitParams: ") + name +
                                  " must be finite and non-negative");
    }
  };
  check(j, "J");
  check(gamma, "gamma");
  check(k_x, "k_x");
  delta_sq_ = (k_x_ - gamma_) * (k_x_ + gamma_);
}

cplx TwoQubitParams::delta() const {
  return delta_sq_ >= 0.0 ? cplx(std::sqrt(delta_sq_), 0.0)
                          : cplx(0.0, std::sqrt(-delta_sq_));
}

bool TwoQubitParams::is_ep(double tol) const noexcept {
  return std::abs(k_x_ - gamma_) <= tol * std::max(k_x_, gamma_);
}

// ---------------------------------------------------------- density matrix

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n != entries_.cols() || (n != 2 && n != 4)) {
    throw std::invalid_argument("DensityMatrix: dimension must be 2 or 4");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("DensityMatrix: non-finite entry");
  }
  const double herm = linalg::max_abs(entries_ - entries_.adjoint());
  if (herm > kHermitianTol) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (residual " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  const cplx tr = entries_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr.real() << " is not 1";
    throw std::invalid_argument(os.str());
  }
  const double lowest = eigenvalues()(0);
  if (lowest < -kEigenTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << lowest;
    throw std::invalid_argument(os.str());
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  const Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
  if (dim() == 2) {
    // Closed form with the smaller eigenvalue as det / larger, which keeps
    // it relatively accurate for nearly pure states.
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double b2 = std::norm(h(0, 1));
    const double larger = 0.5 * (a + d) + std::hypot(0.5 * (a - d), std::sqrt(b2));
    const double smaller = larger > 0.0 ? (a * d - b2) / larger : 0.5 * (a + d);
    return Eigen::Vector2d(smaller, larger);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const Eigen::VectorXcd u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / double(dim));
}

DensityMatrix state_00() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = 1.0;
  return DensityMatrix::pure(psi);
}

DensityMatrix state_bell() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = 1.0;
  psi(3) = 1.0;
  return DensityMatrix::pure(psi);
}

DensityMatrix state_mixed() { return DensityMatrix::maximally_mixed(4); }

DensityMatrix state_fig3f() {
  const Mat2 id = linalg::identity2();
  const Mat4 m = 0.25 * Mat4::Identity() + 0.19 * kron(id, sigma_z()) +
                 0.23 * kron(sigma_z(), id) + 0.19 * kron(sigma_z(), sigma_z());
  return DensityMatrix(Eigen::MatrixXcd(m));
}

// -------------------------------------------------------------- propagator

namespace {

// cos(Delta t) and sin(Delta t)/Delta, optionally multiplied by
// exp(-|Delta| t) in the broken phase to avoid overflow.
struct KFactors {
  double cos_part;
  double sinc_part;
};

KFactors k_factors(const TwoQubitParams& params, double t, bool rescale) {
  const double z = params.delta_sq() * t * t;
  if (std::abs(z) < 1e-3) {
    const double cos_part = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
    const double sinc_part =
        t * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    return {cos_part, sinc_part};
  }
  const double x = std::sqrt(std::abs(z));
  if (z > 0.0) return {std::cos(x), t * std::sin(x) / x};
  if (!rescale) return {std::cosh(x), t * std::sinh(x) / x};
  const double e = std::exp(-2.0 * x);
  return {0.5 * (1.0 + e), t * 0.5 * (1.0 - e) / x};
}

Mat4 coupling_generator(const TwoQubitParams& params) {
  return kI * params.gamma() * kron(sigma_z(), linalg::identity2()) +
         params.k_x() * kron(sigma_x(), sigma_x());
}

Mat4 propagator(const TwoQubitParams& params, double t, bool rescale) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("propagator_analytic: t must be >= 0");
  }
  const Mat4 drive =
      kron(linalg::identity2(), floquet::rabi_rotation(params.j() * t));
  const double x = std::sqrt(-params.delta_sq()) * t;
  if (rescale && params.delta_sq() < 0.0 && x > 1.0) {
    // Spectral projectors of -iK / |Delta|: the decaying mode keeps its
    // relative accuracy instead of cancelling against the growing one.
    const Mat4 a = -kI * coupling_generator(params) / std::sqrt(-params.delta_sq());
    const Mat4 grow = 0.5 * (Mat4::Identity() + a);
    const Mat4 decay = 0.5 * (Mat4::Identity() - a);
    return drive * (grow + std::exp(-2.0 * x) * decay);
  }
  const KFactors f = k_factors(params, t, rescale);
  const Mat4 coupled = f.cos_part * Mat4::Identity() -
                       kI * f.sinc_part * coupling_generator(params);
  return drive * coupled;
}

const Mat4& sigma_yy() {
  static const Mat4 m = kron(sigma_y(), sigma_y());
  return m;
}

}  // namespace

Mat4 hamiltonian_two_qubit(const TwoQubitParams& params) {
  return params.j() * kron(linalg::identity2(), sigma_x()) +
         coupling_generator(params);
}

Mat4 propagator_analytic(const TwoQubitParams& params, double t) {
  return propagator(params, t, false);
}

DensityMatrix evolve_density(const DensityMatrix& rho0,
                             const TwoQubitParams& params, double t) {
  if (rho0.dim() != 4) {
    throw std::invalid_argument("evolve_density: rho0 must be 4x4");
  }
  Mat4 g = propagator(params, t, true);
  const double scale = linalg::max_abs(g);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw NumericError("evolve_density: propagator is not finite");
  }
  g /= scale;
  const Mat4 rho0m = rho0.entries();
  Mat4 rho = g * rho0m * g.adjoint();
  const double tr = rho.trace().real();
  if (!(tr > 1e-300) || !std::isfinite(tr)) {
    throw NumericError("evolve_density: vanishing trace under evolution");
  }
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(Eigen::MatrixXcd(rho));
}

// ------------------------------------------------------------ entanglement

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("concurrence: rho must be 4x4");
  }
  const Mat4 r = rho.entries();
  const Mat4& yy = sigma_yy();

  const Mat4 m = r * yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat4> spectrum(m, false);
  if (spectrum.info() != Eigen::Success) {
    throw NumericError("concurrence: eigensolver failed");
  }
  for (int i = 0; i < 4; ++i) {
    const cplx ev = spectrum.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-8 || ev.real() < -1e-8) {
      std::ostringstream os;
      os << "concurrence: eigenvalue " << ev.real() << " + " << ev.imag()
         << "i signals an invalid density matrix";
      throw NumericError(os.str());
    }
  }

  Eigen::SelfAdjointEigenSolver<Mat4> eig(0.5 * (r + r.adjoint()));
  Eigen::Vector4d weights = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat4 w = eig.eigenvectors() * weights.asDiagonal();
  const Mat4 tau = w.transpose() * yy * w;
  const Eigen::Vector4d c = Eigen::JacobiSVD<Mat4>(tau).singularValues();
  return std::clamp(c(0) - c(1) - c(2) - c(3), 0.0, 1.0);
}

double concurrence_ep_00(double gamma, double t) {
  const double gt = gamma * t;
  return std::abs(2.0 * gt * (1.0 + gt) / (gt * gt + (1.0 + gt) * (1.0 + gt)));
}

double concurrence_closed_form_00(const TwoQubitParams& params, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("concurrence_closed_form_00: t must be >= 0");
  }
  if (t == 0.0) return 0.0;
  const double kx = params.k_x();
  const double gamma = params.gamma();
  if (params.is_ep()) return concurrence_ep_00(gamma, t);
  if (params.delta_sq() < 0.0) {
    // Delta cot(Delta t) -> |Delta| coth(|Delta| t)
    const double d = std::sqrt(-params.delta_sq());
    const double a = d / std::tanh(d * t) + gamma;
    return std::abs(2.0 * kx * a / (kx * kx + a * a));
  }
  // Multiply numerator and denominator by (sin(Delta t)/Delta)^2 so that the
  // zeros of sin(Delta t) need no special case.
  const KFactors f = k_factors(params, t, false);
  const double a = f.cos_part + gamma * f.sinc_part;
  const double den = kx * kx * f.sinc_part * f.sinc_part + a * a;
  if (den == 0.0) return 0.0;
  return std::abs(2.0 * kx * a * f.sinc_part / den);
}

DensityMatrix reduced_density(const DensityMatrix& rho, Qubit which) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("reduced_density: rho must be 4x4");
  }
  const Eigen::MatrixXcd& m = rho.entries();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
  // Index 2 * thermal + unitary.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int k = 0; k < 2; ++k) {
        out(a, b) += which == Qubit::Unitary ? m(2 * k + a, 2 * k + b)
                                             : m(2 * a + k, 2 * b + k);
      }
    }
  }
  return DensityMatrix(out);
}

double entropy(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("entropy: rho must be 2x2");
  const Eigen::VectorXd ev = rho.eigenvalues();
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const double p = std::clamp(ev(i), 0.0, 1.0);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::clamp(s, 0.0, 1.0);
}

std::vector<EntanglementRecord> entanglement_timeseries(
    const DensityMatrix& rho0, const TwoQubitParams& params,
    const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      throw std::invalid_argument(
          "entanglement_timeseries: t_grid must be non-negative and "
          "non-decreasing");
    }
  }
  std::vector<EntanglementRecord> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const DensityMatrix rho = evolve_density(rho0, params, t);
    out.push_back({t, params.j() * t, concurrence(rho),
                   entropy(reduced_density(rho, Qubit::Unitary)),
                   entropy(reduced_density(rho, Qubit::Thermal))});
  }
  return out;
}

}  // namespace fep::twoqubit
