#include "floquet_ep/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <tuple>
#include <utility>

namespace fep {

NearDefective::NearDefective(double condition_number)
    : NumericError([condition_number] {
        std::ostringstream os;
        os << "matrix is near-defective (eigenvector condition number "
           << condition_number
           << "); use the on-contour closed form for the Floquet Hamiltonian";
        return os.str();
      }()),
      condition_number_(condition_number) {}

namespace linalg {

namespace {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite matrix entry");
  }
}

// Largest-magnitude component made real and positive.
template <int N>
void fix_phase(Eigen::Matrix<cplx, N, 1>& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(v(k));
  if (mag > 0.0) v *= std::conj(v(k)) / mag;
}

// Eigenvector of b.sigma for eigenvalue lambda, from whichever of the two
// row-derived candidates is better scaled. Zero when b == 0.
Vec2 pauli_eigenvector(const std::array<cplx, 3>& b, cplx lambda) {
  const cplx bm = b[0] - kI * b[1];
  const cplx bp = b[0] + kI * b[1];
  Vec2 first(bm, lambda - b[2]);
  Vec2 second(lambda + b[2], bp);
  Vec2 v = first.norm() >= second.norm() ? first : second;
  const double n = v.norm();
  if (n > 0.0) v /= n;
  return v;
}

// a + s and a - s, with the smaller one recomputed as det / larger to avoid
// cancellation when the two differ by many orders of magnitude.
std::pair<cplx, cplx> eigenvalue_pair(cplx a, cplx s, cplx det) {
  cplx plus = a + s;
  cplx minus = a - s;
  if (std::abs(plus) >= std::abs(minus)) {
    if (plus != 0.0) minus = det / plus;
  } else {
    plus = det / minus;
  }
  return {plus, minus};
}

}  // namespace

// ---------------------------------------------------------------- matrices

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  const auto r = entries_.rows();
  if (r != entries_.cols() || (r != 2 && r != 4)) {
    throw std::invalid_argument("ComplexMatrix: dimension must be 2 or 4");
  }
}

ComplexMatrix::ComplexMatrix(const Mat2& m) : entries_(m) {}
ComplexMatrix::ComplexMatrix(const Mat4& m) : entries_(m) {}

ComplexMatrix ComplexMatrix::identity(int dim) {
  return ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(dim, dim)));
}

ComplexMatrix ComplexMatrix::zero(int dim) {
  return ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(dim, dim)));
}

Mat2 ComplexMatrix::as_mat2() const {
  if (dim() != 2) throw std::invalid_argument("expected a 2x2 matrix");
  return entries_;
}

Mat4 ComplexMatrix::as_mat4() const {
  if (dim() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  return entries_;
}

double ComplexMatrix::unitarity_residual() const {
  const auto n = entries_.rows();
  return max_abs(entries_.adjoint() * entries_ -
                 Eigen::MatrixXcd::Identity(n, n));
}

double ComplexMatrix::hermiticity_residual() const {
  return max_abs(entries_ - entries_.adjoint());
}

double ComplexMatrix::anti_hermiticity_residual() const {
  return max_abs(entries_ + entries_.adjoint());
}

// ------------------------------------------------------------ pauli algebra

const Mat2& identity2() {
  static const Mat2 m = Mat2::Identity();
  return m;
}

const Mat2& sigma_x() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}

const Mat2& sigma_y() {
  static const Mat2 m = (Mat2() << 0, -kI, kI, 0).finished();
  return m;
}

const Mat2& sigma_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}

const Mat2& pauli(int k) {
  switch (k) {
    case 0: return identity2();
    case 1: return sigma_x();
    case 2: return sigma_y();
    case 3: return sigma_z();
    default: throw std::invalid_argument("pauli index must be 0..3");
  }
}

cplx PauliDecomposition::norm_sq() const {
  return vector[0] * vector[0] + vector[1] * vector[1] + vector[2] * vector[2];
}

cplx PauliDecomposition::norm() const { return std::sqrt(norm_sq()); }

Mat2 PauliDecomposition::matrix() const {
  Mat2 m;
  m << scalar + vector[2], vector[0] - kI * vector[1],
      vector[0] + kI * vector[1], scalar - vector[2];
  return m;
}

PauliDecomposition pauli_decompose(const Mat2& m) {
  PauliDecomposition d;
  d.scalar = 0.5 * (m(0, 0) + m(1, 1));
  d.vector[0] = 0.5 * (m(0, 1) + m(1, 0));
  d.vector[1] = 0.5 * kI * (m(0, 1) - m(1, 0));  // tr(sigma_y m) / 2
  d.vector[2] = 0.5 * (m(0, 0) - m(1, 1));
  return d;
}

PauliDecomposition pauli_decompose(const ComplexMatrix& m) {
  if (m.dim() != 2) {
    throw std::invalid_argument("pauli_decompose: expected a 2x2 matrix");
  }
  return pauli_decompose(m.as_mat2());
}

// ------------------------------------------------------------- exponential

cplx sinhc(cplx x) {
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

Mat2 expm(const Mat2& m) {
  require_finite(m, "expm");
  const PauliDecomposition d = pauli_decompose(m);
  const cplx s = d.norm();
  const cplx c = std::cosh(s);
  const cplx k = sinhc(s);
  PauliDecomposition out;
  const cplx ea = std::exp(d.scalar);
  out.scalar = ea * c;
  for (int i = 0; i < 3; ++i) out.vector[i] = ea * k * d.vector[i];
  return out.matrix();
}

Mat4 expm(const Mat4& m) {
  require_finite(m, "expm");
  // Higham (2005) degree-13 Padé coefficients.
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const Mat4 a = m / std::ldexp(1.0, squarings);
  const Mat4 id = Mat4::Identity();
  const Mat4 a2 = a * a;
  const Mat4 a4 = a2 * a2;
  const Mat4 a6 = a4 * a2;

  const Mat4 u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                       b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const Mat4 u = a * u_inner;
  const Mat4 v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                 b[4] * a4 + b[2] * a2 + b[0] * id;

  Mat4 r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  if (m.dim() == 2) return ComplexMatrix(expm(m.as_mat2()));
  return ComplexMatrix(expm(m.as_mat4()));
}

// --------------------------------------------------------------- logarithm

cplx fold_into_zone(cplx quasienergy, double omega) {
  const double half = 0.5 * omega;
  const double n = std::ceil((quasienergy.real() - half) / omega);
  return {quasienergy.real() - n * omega, quasienergy.imag()};
}

double eigenvector_condition(const Mat2& m) {
  const auto pairs = eig(m);
  const Vec2& u = pairs[0].vector;
  const Vec2& w = pairs[1].vector;
  const double overlap = std::abs(u.dot(w));
  const double det = std::abs(u(0) * w(1) - u(1) * w(0));
  if (det == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + overlap) / det;
}

PauliDecomposition logm_2x2(const Mat2& m, double period) {
  require_finite(m, "logm_2x2");
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("logm_2x2: period must be positive");
  }
  const double omega = 2.0 * std::numbers::pi / period;
  const PauliDecomposition d = pauli_decompose(m);
  const cplx a = d.scalar;
  const bool scalar_only =
      d.vector[0] == 0.0 && d.vector[1] == 0.0 && d.vector[2] == 0.0;

  auto quasienergy = [&](cplx lambda) {
    if (lambda == 0.0) {
      throw std::invalid_argument("logm_2x2: matrix is singular");
    }
    return fold_into_zone(kI * std::log(lambda) / period, omega);
  };

  PauliDecomposition h;
  if (scalar_only) {
    h.scalar = quasienergy(a);
    return h;
  }

  const double cond = eigenvector_condition(m);
  if (!(cond <= kNearDefectiveCondition)) throw NearDefective(cond);

  const cplx s = d.norm();
  const auto [lambda_plus, lambda_minus] = eigenvalue_pair(a, s, m.determinant());
  const cplx eps_plus = quasienergy(lambda_plus);
  const cplx eps_minus = quasienergy(lambda_minus);
  h.scalar = 0.5 * (eps_plus + eps_minus);

  cplx diff = eps_plus - eps_minus;
  if (std::abs(s) < 0.5 * std::abs(a)) {
    // log(l+) - log(l-) = 2 atanh(s/a) up to 2 pi i; avoids cancellation
    // when the two eigenvalues are close.
    const cplx stable = kI * 2.0 * std::atanh(s / a) / period;
    const double shift = std::round((diff - stable).real() / omega);
    diff = stable + shift * omega;
  }
  const cplx coeff = diff / (2.0 * s);
  for (int i = 0; i < 3; ++i) h.vector[i] = coeff * d.vector[i];
  return h;
}

// ------------------------------------------------------------- eigenpairs

std::array<EigenPair<2>, 2> eig(const Mat2& m) {
  require_finite(m, "eig");
  const PauliDecomposition d = pauli_decompose(m);
  const cplx s = d.norm();
  std::array<EigenPair<2>, 2> out;
  std::tie(out[0].value, out[1].value) =
      eigenvalue_pair(d.scalar, s, m.determinant());
  const bool scalar_only =
      d.vector[0] == 0.0 && d.vector[1] == 0.0 && d.vector[2] == 0.0;
  if (scalar_only) {
    out[0].vector = Vec2(1.0, 0.0);
    out[1].vector = Vec2(0.0, 1.0);
    return out;
  }
  out[0].vector = pauli_eigenvector(d.vector, s);
  out[1].vector = pauli_eigenvector(d.vector, -s);
  fix_phase(out[0].vector);
  fix_phase(out[1].vector);
  return out;
}

std::array<EigenPair<4>, 4> eig(const Mat4& m) {
  require_finite(m, "eig");
  Eigen::ComplexEigenSolver<Mat4> solver(m, true);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig: dense eigensolver did not converge");
  }
  std::array<EigenPair<4>, 4> out;
  const double scale = std::max(1.0, m.norm());
  for (int k = 0; k < 4; ++k) {
    out[k].value = solver.eigenvalues()(k);
    out[k].vector = solver.eigenvectors().col(k).normalized();
    fix_phase(out[k].vector);
    const double residual =
        (m * out[k].vector - out[k].value * out[k].vector).norm();
    if (residual > 1e-10 * scale) {
      std::ostringstream os;
      os << "eig: eigenpair residual " << residual << " exceeds tolerance";
      throw NumericError(os.str());
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
    return x.value.imag() > y.value.imag();
  });
  return out;
}

std::vector<EigenPair<Eigen::Dynamic>> eig(const ComplexMatrix& m) {
  std::vector<EigenPair<Eigen::Dynamic>> out;
  if (m.dim() == 2) {
    for (const auto& p : eig(m.as_mat2())) out.push_back({p.value, p.vector});
  } else {
    for (const auto& p : eig(m.as_mat4())) out.push_back({p.value, p.vector});
  }
  return out;
}

// ---------------------------------------------------------------- products

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(kron(a.as_mat2(), b.as_mat2()));
}

}  // namespace linalg
}  // namespace fep
